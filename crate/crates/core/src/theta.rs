//! Positive definite integral quadratic forms F(x) = x·B·xᵀ/2: level and
//! character, theta series, and constant terms of θ_F at cusps through the
//! exponential sums Σ_{x mod c} e^{2πi a F(x)/c}.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::characters::DirichletCharacter;
use crate::cusps::Cusp;
use crate::cyclotomic::{CycNumber, PowerSum, Rational};
use crate::error::{Error, Result};
use crate::numtheory::{divisors, factorize, fundamental_discriminant, gcd, inv_mod, kronecker};
use crate::qseries::QExpansion;

/// Default bound on the number of lattice points enumerated per prime power
/// in [`QuadraticForm::exp_sum`].
pub const DEFAULT_WORK_CAP: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticForm {
    gram: Vec<Vec<i64>>,
    #[serde(skip)]
    work_cap: u64,
}

impl QuadraticForm {
    /// Validates a Gram matrix B (B_ij = ∂²F/∂x_i∂x_j).
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 || n % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "dimension must be positive and even, got {n}"
            )));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!("row {i} has {} entries", row.len())));
            }
            if row[i] % 2 != 0 {
                return Err(Error::InvalidInput(format!("diagonal entry {i} is odd")));
            }
            for j in 0..n {
                if gram[j][i] != row[j] {
                    return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
                }
            }
        }
        let form = QuadraticForm {
            gram,
            work_cap: DEFAULT_WORK_CAP,
        };
        for m in 1..=n {
            if !form.leading_minor(m).is_positive() {
                return Err(Error::InvalidInput("form is not positive definite".into()));
            }
        }
        Ok(form)
    }

    /// Σ α_j x_j².
    pub fn diagonal(alphas: &[i64]) -> Result<Self> {
        let n = alphas.len();
        let gram = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 2 * alphas[i] } else { 0 }).collect())
            .collect();
        Self::new(gram)
    }

    /// "dim" on the first line, then dim rows of integers.
    pub fn parse_gram(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let dim: usize = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("empty Gram file".into()))?
            .parse()
            .map_err(|_| Error::InvalidInput("first line must be the dimension".into()))?;
        let rows = lines
            .map(|l| {
                l.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::InvalidInput(format!("bad Gram row '{l}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != dim {
            return Err(Error::InvalidInput(format!(
                "expected {dim} rows, found {}",
                rows.len()
            )));
        }
        Self::new(rows)
    }

    /// "1,1,3,3" for Σ α_j x_j².
    pub fn parse_diagonal(spec: &str) -> Result<Self> {
        let alphas = spec
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidInput(format!("bad diagonal spec '{spec}'")))?;
        Self::diagonal(&alphas)
    }

    pub fn with_work_cap(mut self, cap: u64) -> Self {
        self.work_cap = cap;
        self
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn weight(&self) -> u32 {
        (self.dim() / 2) as u32
    }

    /// F(x) = Σ_i (B_ii/2) x_i² + Σ_{i<j} B_ij x_i x_j.
    pub fn value(&self, x: &[i64]) -> i64 {
        let n = self.dim();
        let mut s = 0;
        for i in 0..n {
            s += self.gram[i][i] / 2 * x[i] * x[i];
            for j in i + 1..n {
                s += self.gram[i][j] * x[i] * x[j];
            }
        }
        s
    }

    fn leading_minor(&self, m: usize) -> BigInt {
        let rows: Vec<Vec<BigInt>> = self.gram[..m]
            .iter()
            .map(|r| r[..m].iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        bareiss_det(rows)
    }

    pub fn det(&self) -> BigInt {
        self.leading_minor(self.dim())
    }

    /// Smallest N with N·B⁻¹ integral with even diagonal, and the character
    /// n ↦ ((−1)^k det B | n) induced to N.
    pub fn level_character(&self) -> Result<(u64, DirichletCharacter)> {
        let det = self.det();
        let adj = adjugate(&self.gram, &det);
        let two_det = (&det * BigInt::from(2))
            .to_u64()
            .ok_or_else(|| Error::Capacity("determinant too large".into()))?;
        let level = divisors(two_det)
            .into_iter()
            .find(|&n| {
                let n = BigInt::from(n);
                adj.iter().enumerate().all(|(i, row)| {
                    row.iter().enumerate().all(|(j, a)| {
                        let t = a * &n;
                        t.is_multiple_of(&det) && (i != j || (t / &det).is_even())
                    })
                })
            })
            .expect("2·det always works");
        let k = self.weight();
        let signed = if k % 2 == 0 { det.clone() } else { -det.clone() };
        let disc = fundamental_discriminant(
            signed
                .to_i64()
                .ok_or_else(|| Error::Capacity("determinant too large".into()))?,
        );
        if level % disc.unsigned_abs() != 0 {
            return Err(Error::Inconsistent(format!(
                "conductor of chi_{disc} does not divide the level {level}"
            )));
        }
        let chi = DirichletCharacter::kronecker_character(disc)?.induce(level)?;
        Ok((level, chi))
    }

    /// Indices grouped into orthogonal blocks (connected components of the
    /// off-diagonal support of B).
    fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.dim();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut block = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < block.len() {
                let v = block[i];
                for w in 0..n {
                    if !seen[w] && self.gram[v][w] != 0 {
                        seen[w] = true;
                        block.push(w);
                    }
                }
                i += 1;
            }
            block.sort_unstable();
            out.push(block);
        }
        out
    }

    fn sub_gram(&self, idx: &[usize]) -> Vec<Vec<i64>> {
        idx.iter()
            .map(|&i| idx.iter().map(|&j| self.gram[i][j]).collect())
            .collect()
    }

    /// r_F(n) = #{x : F(x) = n} for n ≤ T.
    pub fn representation_numbers(&self, truncation: usize) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); truncation + 1];
        acc[0] = BigInt::one();
        for block in self.blocks() {
            let counts = enumerate_block(&self.sub_gram(&block), truncation);
            let mut next = vec![BigInt::zero(); truncation + 1];
            for (i, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, &b) in counts.iter().enumerate().take(truncation + 1 - i) {
                    if b != 0 {
                        next[i + j] += a * b;
                    }
                }
            }
            acc = next;
        }
        acc
    }

    pub fn theta_qexp(&self, truncation: usize) -> QExpansion {
        QExpansion::from_integers(&self.representation_numbers(truncation))
    }

    /// Σ_{x mod c} e^{2πi a F(x)/c}.
    pub fn exp_sum(&self, a: i64, c: u64) -> Result<CycNumber> {
        check_coprime(a, c)?;
        let mut acc = CycNumber::one();
        for block in self.blocks() {
            let g = self.sub_gram(&block);
            let v = if g.len() == 1 {
                diagonal_gauss_sum(&[g[0][0] / 2], a, c)?
            } else {
                exp_sum_crt(&g, a, c, self.work_cap)?
            };
            if v.is_zero() {
                return Ok(v);
            }
            acc = acc * v;
        }
        Ok(acc)
    }

    /// [0]_{a/c} θ_F = (−i)^k c^{−k} (det B)^{−1/2} Σ_{x mod c} e^{2πi a F(x)/c}.
    pub fn cusp_constant(&self, cusp: Cusp) -> Result<CycNumber> {
        let k = self.weight() as i64;
        let c = cusp.c;
        if c == 0 {
            return Ok(CycNumber::one());
        }
        let s = self.exp_sum(cusp.a, c)?;
        if s.is_zero() {
            return Ok(s);
        }
        let det = Rational::from_integer(self.det());
        let inv_root = CycNumber::sqrt_rational(&det.recip())?;
        let ck = Rational::from_integer(BigInt::from(c).pow(k as u32)).recip();
        let minus_i = -CycNumber::i();
        Ok((minus_i.pow(k)? * inv_root * s).scale(&ck))
    }
}

fn check_coprime(a: i64, c: u64) -> Result<()> {
    if c == 0 || gcd(a, c as i64) != 1 {
        return Err(Error::InvalidInput(format!("need gcd(a, c) = 1 and c ≥ 1, got {a}/{c}")));
    }
    Ok(())
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// det(B)·B⁻¹ via exact rational elimination.
fn adjugate(gram: &[Vec<i64>], det: &BigInt) -> Vec<Vec<BigInt>> {
    let n = gram.len();
    let mut m: Vec<Vec<Rational>> = gram
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x.into())).collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero()).expect("nonsingular");
        m.swap(col, p);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot.iter()) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    let d = Rational::from_integer(det.clone());
    m.into_iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| {
                    let v = x * &d;
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect()
}

/// Counts vectors of one block by value, via F(x) = Σ q_i (x_i + Σ_{j>i} μ_ij x_j)².
fn enumerate_block(gram: &[Vec<i64>], truncation: usize) -> Vec<u64> {
    let n = gram.len();
    // rational LDLᵀ of the coefficient matrix A = B/2
    let mut a: Vec<Vec<Rational>> = gram
        .iter()
        .map(|r| r.iter().map(|&x| Rational::new(x.into(), 2.into())).collect())
        .collect();
    let mut q = vec![Rational::zero(); n];
    let mut mu = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        q[i] = a[i][i].clone();
        for j in i + 1..n {
            mu[i][j] = &a[i][j] / &q[i];
        }
        for j in i + 1..n {
            for l in i + 1..n {
                let t = &mu[i][j] * &a[i][l];
                a[j][l] -= t;
            }
        }
    }
    let mut counts = vec![0u64; truncation + 1];
    let mut x = vec![0i64; n];
    let budget = Rational::from_integer(BigInt::from(truncation));
    descend(n, &q, &mu, &mut x, &budget, &budget, &mut counts);
    counts
}

fn descend(
    level: usize,
    q: &[Rational],
    mu: &[Vec<Rational>],
    x: &mut [i64],
    remaining: &Rational,
    total: &Rational,
    counts: &mut [u64],
) {
    if level == 0 {
        let used = total - remaining;
        let v = used.to_integer().to_usize().unwrap();
        debug_assert!(used.is_integer());
        counts[v] += 1;
        return;
    }
    let i = level - 1;
    let mut center = Rational::zero();
    for j in i + 1..x.len() {
        if x[j] != 0 {
            center += &mu[i][j] * Rational::from_integer(x[j].into());
        }
    }
    let fits = |xi: i64| -> Option<Rational> {
        let t = Rational::from_integer(xi.into()) + &center;
        let cost = &q[i] * &t * &t;
        if &cost <= remaining {
            Some(remaining - cost)
        } else {
            None
        }
    };
    let start = (-center.clone()).round().to_integer().to_i64().unwrap();
    // walk outward from the nearest integer to −center in both directions
    let mut xi = start;
    while let Some(rest) = fits(xi) {
        x[i] = xi;
        descend(i, q, mu, x, &rest, total, counts);
        xi += 1;
    }
    let mut xi = start - 1;
    while let Some(rest) = fits(xi) {
        x[i] = xi;
        descend(i, q, mu, x, &rest, total, counts);
        xi -= 1;
    }
    x[i] = 0;
}

/// Σ_{x mod c} e^{2πi a F(x)/c} for one block, multiplicatively over the
/// prime powers of c.
fn exp_sum_crt(gram: &[Vec<i64>], a: i64, c: u64, cap: u64) -> Result<CycNumber> {
    let mut acc = CycNumber::one();
    for &(p, e) in factorize(c).pairs() {
        let q = p.pow(e);
        let rest = c / q;
        // 1/c = u/q + v/rest with u·rest + v·q = 1
        let u = inv_mod(rest as i64, q as i64).unwrap_or(0);
        let part = exp_sum_prime_power(gram, a * u, q, cap).map_err(|e| match e {
            Error::Capacity(msg) => Error::Capacity(format!("cusp denominator c = {c}: {msg}")),
            other => other,
        })?;
        if part.is_zero() {
            return Ok(part);
        }
        acc = acc * part;
    }
    Ok(acc)
}

fn exp_sum_prime_power(gram: &[Vec<i64>], a: i64, q: u64, cap: u64) -> Result<CycNumber> {
    let n = gram.len() as u32;
    let work = (q as f64).powi(n as i32);
    if work > cap as f64 {
        return Err(Error::Capacity(format!(
            "exponential sum modulo {q} in dimension {n} needs {work:e} terms (cap {cap})"
        )));
    }
    let qi = q as i64;
    let hist = value_histogram(gram, qi);
    let mut ps = PowerSum::new(q);
    for (r, &cnt) in hist.iter().enumerate() {
        if cnt != 0 {
            ps.add_term(
                (a.rem_euclid(qi) * r as i64) % qi,
                &Rational::from_integer(BigInt::from(cnt)),
            );
        }
    }
    Ok(ps.finish())
}

/// #{x mod q : F(x) ≡ r} for each residue r.
fn value_histogram(gram: &[Vec<i64>], q: i64) -> Vec<u64> {
    let n = gram.len();
    let mut hist = vec![0u64; q as usize];
    let mut x = vec![0i64; n];
    loop {
        let mut s = 0i64;
        for i in 0..n {
            s += gram[i][i] / 2 * x[i] * x[i];
            for j in i + 1..n {
                s += gram[i][j] * x[i] * x[j];
            }
        }
        hist[s.rem_euclid(q) as usize] += 1;
        let mut i = 0;
        loop {
            if i == n {
                return hist;
            }
            x[i] += 1;
            if x[i] == q {
                x[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// g(α, β) = Σ_{x mod β} e^{2πi α x²/β} for gcd(α, β) = 1, by the classical
/// evaluation in five cases on β mod 4 and α mod 4.
pub fn quadratic_gauss_sum(alpha: i64, beta: u64) -> Result<CycNumber> {
    check_coprime(alpha, beta)?;
    if beta == 1 {
        return Ok(CycNumber::one());
    }
    let b = beta as i64;
    let alpha = alpha.rem_euclid(b);
    let root = CycNumber::sqrt_rational(&Rational::from_integer(BigInt::from(beta)))?;
    let one = CycNumber::one();
    let i = CycNumber::i();
    Ok(match b % 4 {
        2 => CycNumber::zero(),
        1 => root.scale(&Rational::from_integer(kronecker(alpha, b).into())),
        3 => (i * root).scale(&Rational::from_integer(kronecker(alpha, b).into())),
        _ => {
            // α is odd here; shift by β to make it positive for (β | α)
            let unit = if alpha % 4 == 1 { &one + &i } else { &one - &i };
            (unit * root).scale(&Rational::from_integer(kronecker(b, alpha).into()))
        }
    })
}

/// Σ_{x mod c} e^{2πi a Σ α_j x_j²/c} = Π_j gcd(α_j a, c)·g(α_j a/g, c/g).
pub fn diagonal_gauss_sum(alphas: &[i64], a: i64, c: u64) -> Result<CycNumber> {
    check_coprime(a, c)?;
    let mut acc = CycNumber::one();
    for &alpha in alphas {
        let t = alpha * a;
        let g = gcd(t, c as i64);
        let v = quadratic_gauss_sum(t / g, c / g as u64)?;
        if v.is_zero() {
            return Ok(v);
        }
        acc = (acc * v).scale(&Rational::from_integer(BigInt::from(g)));
    }
    Ok(acc)
}
