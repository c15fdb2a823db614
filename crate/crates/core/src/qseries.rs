//! Truncated q-expansions at i∞: arithmetic, generalized divisor sums,
//! Eisenstein series and eta quotients.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::characters::DirichletCharacter;
use crate::cyclotomic::{CycNumber, PowerSum, Rational};
use crate::error::{Error, Result};
use crate::numtheory::{divisors, factorize, gamma0_index};

/// Σ_{n ≤ T} c_n qⁿ with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    coeffs: Vec<CycNumber>,
}

impl QExpansion {
    pub fn new(coeffs: Vec<CycNumber>) -> Self {
        assert!(!coeffs.is_empty(), "a q-expansion needs at least c_0");
        QExpansion { coeffs }
    }

    pub fn zero(truncation: usize) -> Self {
        QExpansion {
            coeffs: vec![CycNumber::zero(); truncation + 1],
        }
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| CycNumber::from_int(c.clone())).collect())
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &CycNumber {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[CycNumber] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycNumber::is_zero)
    }

    pub fn truncate(&self, truncation: usize) -> Self {
        let t = truncation.min(self.truncation());
        Self::new(self.coeffs[..=t].to_vec())
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// q ↦ q^d.
    pub fn substitute(&self, d: usize) -> Self {
        assert!(d >= 1);
        let t = self.truncation();
        let mut out = vec![CycNumber::zero(); t + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            if n * d > t {
                break;
            }
            out[n * d] = c.clone();
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::zero(self.truncation());
        acc.coeffs[0] = CycNumber::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CycNumber, &CycNumber) -> CycNumber) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        )
    }
}

impl Add for &QExpansion {
    type Output = QExpansion;
    fn add(self, rhs: &QExpansion) -> QExpansion {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &QExpansion {
    type Output = QExpansion;
    fn sub(self, rhs: &QExpansion) -> QExpansion {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &QExpansion {
    type Output = QExpansion;
    fn mul(self, rhs: &QExpansion) -> QExpansion {
        let t = self.truncation().min(rhs.truncation());
        let mut out = vec![CycNumber::zero(); t + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(t + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(t + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        QExpansion::new(out)
    }
}

impl Serialize for QExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Record<'a> {
            truncation: usize,
            coeffs: &'a [CycNumber],
        }
        Record {
            truncation: self.truncation(),
            coeffs: &self.coeffs,
        }
        .serialize(s)
    }
}

/// σ_{k−1}(ε,ψ;n) = Σ_{d|n} ε(n/d)ψ(d)d^{k−1}, and 0 unless n is a positive
/// integer.
pub fn sigma(
    kminus1: u32,
    eps: &DirichletCharacter,
    psi: &DirichletCharacter,
    n: &Rational,
) -> CycNumber {
    if !n.is_integer() || !n.is_positive() {
        return CycNumber::zero();
    }
    match n.to_integer().to_u64() {
        Some(n) => sigma_int(kminus1, eps, psi, n),
        None => panic!("sigma argument {n} out of range"),
    }
}

pub fn sigma_int(
    kminus1: u32,
    eps: &DirichletCharacter,
    psi: &DirichletCharacter,
    n: u64,
) -> CycNumber {
    if n == 0 {
        return CycNumber::zero();
    }
    let order = eps.order().lcm(&psi.order());
    let (se, sp) = (order / eps.order(), order / psi.order());
    let mut ps = PowerSum::new(order);
    for d in divisors(n) {
        let (Some(a), Some(b)) = (eps.value_exponent((n / d) as i64), psi.value_exponent(d as i64))
        else {
            continue;
        };
        let w = Rational::from_integer(BigInt::from(d).pow(kminus1));
        ps.add_term((a * se + b * sp) as i64, &w);
    }
    ps.finish()
}

fn check_eisenstein_pair(k: u32, eps: &DirichletCharacter, psi: &DirichletCharacter) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidInput("Eisenstein weight must be positive".into()));
    }
    if !eps.is_primitive() || !psi.is_primitive() {
        return Err(Error::InvalidInput(format!(
            "Eisenstein characters must be primitive, got ({eps}, {psi})"
        )));
    }
    let sign = if k % 2 == 0 { 1 } else { -1 };
    if eps.parity() * psi.parity() != sign {
        return Err(Error::Parity(format!(
            "eps(-1)psi(-1) must be (-1)^{k} for ({eps}, {psi})"
        )));
    }
    Ok(())
}

/// The factor multiplying Σ σ_{k−1}(ε,ψ;n) q^{nd} in E_k(ε,ψ;dz):
/// (M_ω/M)^k · W(ψ̄)/W(ω) · (−2k/B_{k,ω̄}) · Π_{p | lcm(L,M)} p^k/(p^k − ω(p)).
pub fn eisenstein_normalization(
    k: u32,
    eps: &DirichletCharacter,
    psi: &DirichletCharacter,
) -> Result<CycNumber> {
    check_eisenstein_pair(k, eps, psi)?;
    let omega = eps.mul(&psi.conj()).primitize();
    let m_omega = omega.modulus();
    let m = psi.modulus();
    let ratio = Rational::new(BigInt::from(m_omega), BigInt::from(m)).pow(k as i32);
    // 1/W(ω) = conj(W(ω))/M_ω for primitive ω
    let w_omega_inv = omega
        .gauss_sum()?
        .conj()
        .scale(&Rational::new(BigInt::one(), BigInt::from(m_omega)));
    let bern = omega.conj().generalized_bernoulli(k);
    let bern_factor = CycNumber::from_int(-2 * k as i64).checked_div(&bern)?;
    let mut prod = CycNumber::one();
    let lcm = eps.modulus().lcm(&psi.modulus());
    for p in factorize(lcm).primes() {
        let pk = CycNumber::from_int(BigInt::from(p).pow(k));
        prod = prod * pk.checked_div(&(&pk - &omega.eval(p as i64)))?;
    }
    Ok(psi.conj().gauss_sum()? * w_omega_inv * bern_factor * prod.scale(&ratio))
}

/// E_k(ε,ψ;dz) through q^T. The pair (2, χ₁, χ₁) is allowed and gives the
/// quasimodular E₂.
pub fn eisenstein_qexp(
    k: u32,
    eps: &DirichletCharacter,
    psi: &DirichletCharacter,
    d: u64,
    truncation: usize,
) -> Result<QExpansion> {
    if d == 0 {
        return Err(Error::InvalidInput("d must be positive".into()));
    }
    let norm = eisenstein_normalization(k, eps, psi)?;
    let mut coeffs = vec![CycNumber::zero(); truncation + 1];
    if eps.modulus() == 1 {
        coeffs[0] = CycNumber::one();
    }
    let d = d as usize;
    for n in 1..=truncation / d {
        coeffs[n * d] = &norm * &sigma_int(k - 1, eps, psi, n as u64);
    }
    Ok(QExpansion::new(coeffs))
}

/// L_d = E₂(z) − d·E₂(dz), modular of weight 2 on Γ0(N) for d | N.
pub fn weight2_ld_qexp(d: u64, truncation: usize) -> Result<QExpansion> {
    if d <= 1 {
        return Err(Error::InvalidInput("L_d needs d > 1".into()));
    }
    let one = DirichletCharacter::trivial(1);
    let e2 = eisenstein_qexp(2, &one, &one, 1, truncation)?;
    let e2d = e2.substitute(d as usize).scale(&CycNumber::from_int(d as i64));
    Ok(&e2 - &e2d)
}

/// Integer coefficients of q^{Σ d·r_d/24} Π_d Π_n (1 − q^{dn})^{r_d} through q^T.
pub fn eta_product_coeffs(exponents: &[(u64, i64)], truncation: usize) -> Result<Vec<BigInt>> {
    let lead: i64 = exponents.iter().map(|&(d, r)| d as i64 * r).sum();
    if lead % 24 != 0 {
        return Err(Error::InvalidInput(format!(
            "eta quotient has fractional leading exponent {lead}/24"
        )));
    }
    if lead < 0 {
        return Err(Error::InvalidInput(format!(
            "eta quotient has a pole at infinity (leading exponent {}/24)",
            lead
        )));
    }
    let shift = (lead / 24) as usize;
    let mut out = vec![BigInt::zero(); truncation + 1];
    if shift > truncation {
        return Ok(out);
    }
    let len = truncation - shift + 1;
    let mut series = vec![BigInt::zero(); len];
    series[0] = BigInt::one();
    for &(d, r) in exponents {
        if d == 0 {
            return Err(Error::InvalidInput("eta divisor must be positive".into()));
        }
        let d = d as usize;
        for n in 1..=len / d {
            let step = d * n;
            if step >= len {
                break;
            }
            for _ in 0..r.unsigned_abs() {
                if r > 0 {
                    // multiply by (1 − q^step)
                    for i in (step..len).rev() {
                        let t = series[i - step].clone();
                        series[i] -= t;
                    }
                } else {
                    // divide by (1 − q^step)
                    for i in step..len {
                        let t = series[i - step].clone();
                        series[i] += t;
                    }
                }
            }
        }
    }
    out[shift..].clone_from_slice(&series);
    Ok(out)
}

pub fn eta_qexp(exponents: &[(u64, i64)], truncation: usize) -> Result<QExpansion> {
    Ok(QExpansion::from_integers(&eta_product_coeffs(
        exponents, truncation,
    )?))
}

/// ⌊k·[SL₂(ℤ):Γ0(N)]/12⌋.
pub fn sturm_bound(k: u32, level: u64) -> u64 {
    k as u64 * gamma0_index(level) / 12
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(d: i64) -> DirichletCharacter {
        DirichletCharacter::kronecker_character(d).unwrap()
    }

    fn ints(v: &[i64]) -> QExpansion {
        QExpansion::new(v.iter().map(|&x| CycNumber::from_int(x)).collect())
    }

    fn q(n: usize, t: usize) -> Vec<CycNumber> {
        let one = chi(1);
        eisenstein_qexp(2, &one, &one, 1, t).unwrap().coeffs()[..n].to_vec()
    }

    #[test]
    fn series_arithmetic() {
        assert_eq!(&ints(&[1, 1, 0]) * &ints(&[1, -1, 0]), ints(&[1, 0, -1]));
        assert_eq!(ints(&[1, 1, 0, 0]).substitute(2), ints(&[1, 0, 1, 0]));
        assert_eq!(&ints(&[1; 8]) * &ints(&[1, -1, 0, 0, 0, 0, 0, 0]), {
            let mut v = vec![0; 8];
            v[0] = 1;
            ints(&v)
        });
        assert_eq!(ints(&[1, 1, 0, 0]).pow(3), ints(&[1, 3, 3, 1]));
        assert_eq!((&ints(&[1, 2, 3]) * &ints(&[1, 1])).truncation(), 1);
    }

    #[test]
    fn sigma_examples() {
        let one = chi(1);
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(sigma(1, &one, &one, &r(6, 1)), CycNumber::from_int(12));
        assert_eq!(sigma(0, &one, &chi(-24), &r(1, 1)), CycNumber::one());
        assert_eq!(sigma(2, &chi(-4), &one, &r(2, 1)), CycNumber::from_int(4));
        assert!(sigma(1, &one, &one, &r(3, 2)).is_zero());
        assert!(sigma(1, &one, &one, &r(0, 1)).is_zero());
    }

    #[test]
    fn sigma_against_brute_force() {
        let chars: Vec<DirichletCharacter> = [1, 5, 8, 12]
            .into_iter()
            .flat_map(DirichletCharacter::primitive_characters)
            .collect();
        for e in &chars {
            for p in &chars {
                for n in 1..=200u64 {
                    let mut brute = CycNumber::zero();
                    for d in 1..=n {
                        if n % d == 0 {
                            brute += &(e.eval((n / d) as i64)
                                * p.eval(d as i64)
                                * CycNumber::from_int(d * d));
                        }
                    }
                    let s = sigma_int(2, e, p, n);
                    assert_eq!(s, brute);
                    for m in 1..=200 / n {
                        if m.gcd(&n) == 1 && n > 1 && m > 1 {
                            assert_eq!(sigma_int(2, e, p, n * m), s.clone() * sigma_int(2, e, p, m));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn classical_eisenstein() {
        assert_eq!(q(4, 5), ints(&[1, -24, -72, -96]).coeffs().to_vec());
        let one = chi(1);
        let e4 = eisenstein_qexp(4, &one, &one, 1, 3).unwrap();
        assert_eq!(e4, ints(&[1, 240, 2160, 6720]));
        let e4_2 = eisenstein_qexp(4, &one, &one, 2, 7).unwrap();
        for n in (1..=7).step_by(2) {
            assert!(e4_2.coeff(n).is_zero());
        }
        assert!(eisenstein_qexp(3, &one, &one, 1, 3).is_err());
        assert!(eisenstein_qexp(2, &chi(-4), &one, 1, 3).is_err());
    }

    #[test]
    fn odd_weight_normalization() {
        for k in 1..=3u32 {
            let w = 2 * k + 1;
            let b = chi(-24).generalized_bernoulli(w);
            let want = CycNumber::from_int(-2 * w as i64).checked_div(&b).unwrap();
            assert_eq!(eisenstein_normalization(w, &chi(1), &chi(-24)).unwrap(), want);
        }
    }

    #[test]
    fn ld_series() {
        let l2 = weight2_ld_qexp(2, 2).unwrap();
        assert_eq!(l2, ints(&[-1, -24, -24]));
        assert_eq!(weight2_ld_qexp(4, 0).unwrap(), ints(&[-3]));
        assert!(weight2_ld_qexp(1, 3).is_err());
    }

    #[test]
    fn eta_expansions() {
        let delta = eta_product_coeffs(&[(1, 24)], 3).unwrap();
        assert_eq!(delta, vec![0.into(), 1.into(), BigInt::from(-24), 252.into()]);
        assert!(eta_product_coeffs(&[(1, 1)], 3).is_err());
        assert!(eta_product_coeffs(&[(1, -24)], 3).is_err());
        assert_eq!(eta_product_coeffs(&[], 2).unwrap(), vec![1.into(), 0.into(), 0.into()]);
        // Fine's identity
        let fine = eta_qexp(&[(1, -1), (2, 1), (3, 1), (8, 1), (12, 1), (24, -1)], 50).unwrap();
        for n in 1..=50u64 {
            assert_eq!(*fine.coeff(n as usize), sigma_int(0, &chi(1), &chi(-24), n), "n={n}");
        }
        assert_eq!(*fine.coeff(0), CycNumber::one());
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_bound(12, 2), 3);
        assert_eq!(sturm_bound(2, 12), 4);
        assert_eq!(sturm_bound(4, 1), 0);
    }
}
