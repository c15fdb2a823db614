//! Exact arithmetic in cyclotomic fields ℚ(ζ_n).
//!
//! An element is stored as the remainder of a polynomial in ζ_n modulo the
//! n-th cyclotomic polynomial Φ_n, i.e. in the power basis 1, ζ, …, ζ^{φ(n)−1}.
//! Coefficients are kept as an integer vector over one positive common
//! denominator. After every operation the element is moved to the smallest
//! cyclotomic field containing it, so equal values have equal representations.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numtheory::{divisors, euler_phi, factorize, inv_mod, kronecker, square_split};

pub type Rational = BigRational;

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of Φ_n, lowest degree first (monic, degree φ(n)).
///
/// Obtained by dividing xⁿ − 1 by Φ_d for every proper divisor d of n.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1);
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            break;
        }
        let divisor = cyclotomic_polynomial(d);
        poly = exact_div_monic(&poly, &divisor);
    }
    debug_assert_eq!(poly.len() as u64, euler_phi(n) + 1);
    let poly = Arc::new(poly);
    phi_cache().lock().unwrap().insert(n, poly.clone());
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (t, &dc) in den.iter().enumerate() {
                rem[i + t] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Reduces a polynomial in ζ_n (any length) to its remainder mod Φ_n.
fn reduce_mod_phi(n: u64, mut full: Vec<BigInt>) -> Vec<BigInt> {
    let nn = n as usize;
    if full.len() > nn {
        let extra = full.split_off(nn);
        for (i, c) in extra.into_iter().enumerate() {
            if !c.is_zero() {
                full[i % nn] += c;
            }
        }
    }
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    if full.len() < deg {
        full.resize(deg, BigInt::zero());
        return full;
    }
    for i in (deg..full.len()).rev() {
        if full[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut full[i]);
        for (t, &pc) in phi[..deg].iter().enumerate() {
            if pc != 0 {
                full[i - deg + t] -= &c * pc;
            }
        }
    }
    full.truncate(deg);
    full
}

/// Exact element of ℚ(ζ_n).
#[derive(Clone)]
pub struct CycNumber {
    order: u64,
    /// Numerators in the power basis; length φ(order).
    num: Vec<BigInt>,
    /// Positive, coprime to the content of `num`.
    den: BigInt,
}

impl CycNumber {
    pub fn zero() -> Self {
        CycNumber {
            order: 1,
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        CycNumber {
            order: 1,
            num: vec![v.into()],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        CycNumber {
            order: 1,
            num: vec![r.numer().clone()],
            den: r.denom().clone(),
        }
        .normalized()
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rational(&Rational::new(n.into(), d.into()))
    }

    /// Builds an element from rational coefficients in the power basis of
    /// ζ_order; the slice may be longer than φ(order).
    pub fn from_coeffs(order: u64, coeffs: &[Rational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let full = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(order, full, den)
    }

    fn from_parts(order: u64, full: Vec<BigInt>, den: BigInt) -> Self {
        let num = reduce_mod_phi(order, full);
        CycNumber { order, num, den }.normalized().descend()
    }

    /// ζ_n^j.
    pub fn root_of_unity(n: u64, j: i64) -> Self {
        assert!(n >= 1, "root_of_unity: n must be positive");
        let j = j.rem_euclid(n as i64) as usize;
        let mut full = vec![BigInt::zero(); n as usize];
        full[j] = BigInt::one();
        Self::from_parts(n, full, BigInt::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::root_of_unity(4, 1)
    }

    /// e^{2πi·x} for a rational x.
    pub fn exp_2pi_i(x: &Rational) -> Self {
        let den = x.denom().to_u64().expect("phase denominator too large");
        let num = x.numer().mod_floor(x.denom());
        Self::root_of_unity(den, num.to_i64().unwrap())
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Rational coefficients in the power basis, length φ(order).
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.order == 1 {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalized(mut self) -> Self {
        if self.den.is_negative() {
            self.den = -self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            self.order = 1;
            self.num = vec![BigInt::zero()];
            return self;
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
        self
    }

    /// Moves the element to the smallest ℚ(ζ_m) that contains it.
    fn descend(mut self) -> Self {
        loop {
            if self.order == 1 {
                return self;
            }
            if self.num[1..].iter().all(Zero::is_zero) {
                self.num.truncate(1);
                self.order = 1;
                return self;
            }
            let mut changed = false;
            for p in factorize(self.order).primes().collect::<Vec<_>>() {
                if let Some(y) = self.descend_by(p) {
                    self = y;
                    changed = true;
                    break;
                }
            }
            if !changed {
                return self;
            }
        }
    }

    fn descend_by(&self, p: u64) -> Option<Self> {
        let n = self.order;
        let m = n / p;
        if m % p == 0 {
            // Φ_n(x) = Φ_m(x^p): only exponents divisible by p may occur.
            if self
                .num
                .iter()
                .enumerate()
                .any(|(j, c)| j as u64 % p != 0 && !c.is_zero())
            {
                return None;
            }
            let num = self.num.iter().step_by(p as usize).cloned().collect();
            return Some(CycNumber {
                order: m,
                num,
                den: self.den.clone(),
            });
        }
        // p ∥ n: project with the relative trace of ℚ(ζ_n)/ℚ(ζ_m) and check.
        // ζ_n^j = ζ_m^{j·p'}·ζ_p^{j·m'} where p·p' + m·m' = 1.
        let pinv = inv_mod(p as i64, m as i64).unwrap() as u64;
        let mut full = vec![BigInt::zero(); m as usize];
        let pm1 = BigInt::from(p - 1);
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = ((j as u64 * pinv) % m) as usize;
            if j as u64 % p == 0 {
                full[idx] += c * &pm1;
            } else {
                full[idx] -= c;
            }
        }
        let y = CycNumber {
            order: m,
            num: reduce_mod_phi(m, full),
            den: &self.den * &pm1,
        }
        .normalized();
        if p == 2 || y.promote(n).num == self.num {
            Some(y)
        } else {
            None
        }
    }

    /// Same value, represented in ℚ(ζ_target); `order` must divide `target`.
    fn promote(&self, target: u64) -> CycNumber {
        debug_assert_eq!(target % self.order, 0);
        if target == self.order {
            return self.clone();
        }
        let stride = (target / self.order) as usize;
        let mut full = vec![BigInt::zero(); target as usize];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                full[j * stride] = c.clone();
            }
        }
        CycNumber {
            order: target,
            num: reduce_mod_phi(target, full),
            den: self.den.clone(),
        }
    }

    fn scale_int(&self, k: &BigInt) -> CycNumber {
        CycNumber {
            order: self.order,
            num: self.num.iter().map(|c| c * k).collect(),
            den: self.den.clone(),
        }
        .normalized()
    }

    pub fn scale(&self, r: &Rational) -> CycNumber {
        if r.is_zero() {
            return CycNumber::zero();
        }
        CycNumber {
            order: self.order,
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        }
        .normalized()
    }

    fn add_impl(&self, other: &CycNumber, negate: bool) -> CycNumber {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let order = self.order.lcm(&other.order);
        let a = self.promote(order);
        let b = other.promote(order);
        let den = a.den.lcm(&b.den);
        let fa = &den / &a.den;
        let fb = &den / &b.den;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                if negate {
                    x * &fa - y * &fb
                } else {
                    x * &fa + y * &fb
                }
            })
            .collect();
        CycNumber { order, num, den }.normalized().descend()
    }

    fn mul_impl(&self, other: &CycNumber) -> CycNumber {
        if self.is_zero() || other.is_zero() {
            return CycNumber::zero();
        }
        if self.order == 1 {
            return other
                .scale_int(&self.num[0])
                .scale(&Rational::new(BigInt::one(), self.den.clone()));
        }
        if other.order == 1 {
            return other.mul_impl(self);
        }
        let order = self.order.lcm(&other.order);
        let a = self.promote(order);
        let b = other.promote(order);
        let mut full = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    full[i + j] += x * y;
                }
            }
        }
        let num = reduce_mod_phi(order, full);
        CycNumber {
            order,
            num,
            den: &a.den * &b.den,
        }
        .normalized()
        .descend()
    }

    /// Complex conjugate: ζ_n ↦ ζ_n^{−1}.
    pub fn conj(&self) -> CycNumber {
        if self.order == 1 {
            return self.clone();
        }
        let n = self.order as usize;
        let mut full = vec![BigInt::zero(); n];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                full[(n - j) % n] = c.clone();
            }
        }
        Self::from_parts(self.order, full, self.den.clone())
    }

    /// Multiplicative inverse, by solving (x·y = 1) as a linear system over ℚ.
    pub fn inv(&self) -> Result<CycNumber> {
        if self.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        if self.order == 1 {
            let r = Rational::new(self.den.clone(), self.num[0].clone());
            return Ok(CycNumber::from_rational(&r));
        }
        let n = self.order;
        let d = self.num.len();
        // column j of the multiplication matrix = x·ζ^j
        let mut mat: Vec<Vec<Rational>> = vec![vec![Rational::zero(); d + 1]; d];
        for j in 0..d {
            let mut full = vec![BigInt::zero(); d + j];
            for (i, c) in self.num.iter().enumerate() {
                full[i + j] = c.clone();
            }
            let col = reduce_mod_phi(n, full);
            for (row, c) in col.into_iter().enumerate() {
                mat[row][j] = Rational::new(c, self.den.clone());
            }
        }
        mat[0][d] = Rational::one();
        let sol = solve_linear(mat)
            .ok_or_else(|| Error::Inconsistent("singular multiplication matrix".into()))?;
        Ok(CycNumber::from_coeffs(n, &sol))
    }

    pub fn checked_div(&self, other: &CycNumber) -> Result<CycNumber> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycNumber> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNumber::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// |x|² = x·conj(x).
    pub fn norm_sq(&self) -> CycNumber {
        self * &self.conj()
    }

    /// Positive square root of a positive rational.
    pub fn sqrt_rational(r: &Rational) -> Result<CycNumber> {
        if !r.is_positive() {
            return Err(Error::Domain(format!("square root of non-positive {r}")));
        }
        // √(a/b) = √(ab)/b
        let ab = r.numer() * r.denom();
        let ab = ab
            .to_u64()
            .ok_or_else(|| Error::Capacity("square root argument too large".into()))?;
        let (m, s) = square_split(ab);
        let root = sqrt_cyclotomic(s)?;
        Ok(root.scale(&Rational::new(BigInt::from(m), r.denom().clone())))
    }

    /// Numerical value at ζ_n = e^{2πi/n}, accurate to 10^{−digits}
    /// (before the final rounding to f64).
    pub fn to_complex(&self, digits: u32) -> (f64, f64) {
        let (re, im, scale) = self.fixed_point(digits.max(1));
        let s = 10f64.powi(scale as i32);
        (fixed_to_f64(&re, s), fixed_to_f64(&im, s))
    }

    /// Decimal approximation "a+bi" with `digits` digits after the point.
    pub fn approx_string(&self, digits: u32) -> String {
        let (re, im, scale) = self.fixed_point(digits);
        let re = round_fixed(&re, scale, digits);
        let im = round_fixed(&im, scale, digits);
        let im_str = format_fixed(&im, digits);
        if im.is_negative() {
            format!("{}{}i", format_fixed(&re, digits), im_str)
        } else {
            format!("{}+{}i", format_fixed(&re, digits), im_str)
        }
    }

    fn fixed_point(&self, digits: u32) -> (BigInt, BigInt, u32) {
        let mag: u32 = self
            .num
            .iter()
            .map(|c| c.abs().to_string().len() as u32)
            .max()
            .unwrap_or(1);
        let scale = digits + 12 + mag + (self.num.len() as f64).log10().ceil() as u32;
        let one = BigInt::from(10).pow(scale);
        let pi = fixed_pi(&one);
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        let n = self.order as i64;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut jj = j as i64;
            if 2 * jj > n {
                jj -= n;
            }
            // θ = 2π·jj/n ∈ (−π, π]
            let theta = (&pi * BigInt::from(2 * jj)) / BigInt::from(n);
            let (cos, sin) = fixed_cos_sin(&theta, &one);
            re += c * cos;
            im += c * sin;
        }
        (re / &self.den, im / &self.den, scale)
    }
}

fn fixed_to_f64(v: &BigInt, scale: f64) -> f64 {
    v.to_f64().unwrap_or(f64::NAN) / scale
}

fn round_fixed(v: &BigInt, scale: u32, digits: u32) -> BigInt {
    let drop = BigInt::from(10).pow(scale - digits);
    let half = &drop / 2;
    if v.is_negative() {
        let t: BigInt = (-v + &half) / &drop;
        -t
    } else {
        (v + &half) / &drop
    }
}

fn format_fixed(v: &BigInt, digits: u32) -> String {
    let neg = v.is_negative();
    let s = v.abs().to_string();
    let d = digits as usize;
    let padded = if s.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = padded.split_at(padded.len() - d);
    let body = if d == 0 {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn fixed_arctan_inv(x: i64, one: &BigInt) -> BigInt {
    // arctan(1/x) = Σ (−1)^k / ((2k+1) x^{2k+1})
    let x2 = BigInt::from(x * x);
    let mut term = one / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: i64 = 0;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &x2;
        k += 1;
    }
    sum
}

fn fixed_pi(one: &BigInt) -> BigInt {
    BigInt::from(16) * fixed_arctan_inv(5, one) - BigInt::from(4) * fixed_arctan_inv(239, one)
}

fn fixed_cos_sin(theta: &BigInt, one: &BigInt) -> (BigInt, BigInt) {
    let mut cos = BigInt::zero();
    let mut sin = BigInt::zero();
    let mut term = one.clone();
    let mut k: u64 = 0;
    while !term.is_zero() {
        match k % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        k += 1;
        term = (term * theta) / one / BigInt::from(k);
    }
    (cos, sin)
}

fn solve_linear(mut m: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (top, rest) = if r < col {
                    let (a, b) = m.split_at_mut(col);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[col], &mut b[0])
                };
                for (x, y) in rest.iter_mut().zip(top.iter()) {
                    if !y.is_zero() {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// √s as an element of ℚ(ζ_{4s}), positive under ζ_n = e^{2πi/n}.
///
/// Built prime by prime: √2 = ζ₈ + ζ₈⁻¹ and, for odd p, the quadratic Gauss
/// sum Σ (a|p) ζ_p^a, which equals √p or i√p according to p mod 4.
pub fn sqrt_cyclotomic(s: u64) -> Result<CycNumber> {
    if s == 0 {
        return Err(Error::Domain("sqrt_cyclotomic of 0".into()));
    }
    let f = factorize(s);
    if !f.is_squarefree() {
        return Err(Error::InvalidInput(format!(
            "sqrt_cyclotomic expects a squarefree argument, got {s}"
        )));
    }
    let mut acc = CycNumber::one();
    for p in f.primes() {
        let root = if p == 2 {
            &CycNumber::root_of_unity(8, 1) + &CycNumber::root_of_unity(8, 7)
        } else {
            let mut full = vec![BigInt::zero(); p as usize];
            for a in 1..p {
                full[a as usize] = BigInt::from(kronecker(a as i64, p as i64));
            }
            let g = CycNumber::from_parts(p, full, BigInt::one());
            if p % 4 == 1 {
                g
            } else {
                -&(&CycNumber::i() * &g)
            }
        };
        acc = &acc * &root;
    }
    Ok(acc)
}

/// Accumulates Σ c_j ζ_n^j with rational c_j before a single reduction.
#[derive(Clone, Debug)]
pub struct PowerSum {
    order: u64,
    terms: Vec<Rational>,
}

impl PowerSum {
    pub fn new(order: u64) -> Self {
        PowerSum {
            order,
            terms: vec![Rational::zero(); order as usize],
        }
    }

    pub fn add_term(&mut self, j: i64, c: &Rational) {
        let idx = j.rem_euclid(self.order as i64) as usize;
        self.terms[idx] += c;
    }

    pub fn finish(self) -> CycNumber {
        CycNumber::from_coeffs(self.order, &self.terms)
    }
}

#[derive(Serialize, Deserialize)]
struct CycRecord {
    order: u64,
    coeffs: Vec<String>,
    #[serde(default, skip_deserializing)]
    decimal: String,
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycRecord {
            order: self.order,
            coeffs: self.coeffs().iter().map(|c| c.to_string()).collect(),
            decimal: self.approx_string(12),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rec = CycRecord::deserialize(deserializer)?;
        if rec.order == 0 {
            return Err(serde::de::Error::custom("order must be positive"));
        }
        let coeffs = rec
            .coeffs
            .iter()
            .map(|c| c.parse::<Rational>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CycNumber::from_coeffs(rec.order, &coeffs))
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let order = self.order.lcm(&other.order);
        let a = self.promote(order);
        let b = other.promote(order);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNumber {}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let mut parts = Vec::new();
        for (j, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match j {
                0 => format!("{c}"),
                1 => format!("({c})*z{}", self.order),
                _ => format!("({c})*z{}^{j}", self.order),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&CycNumber> for &CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                $body(self, rhs)
            }
        }
        impl $trait<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                $body(&self, &rhs)
            }
        }
        impl $trait<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycNumber, b: &CycNumber| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &CycNumber, b: &CycNumber| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &CycNumber, b: &CycNumber| a.mul_impl(b));

impl AddAssign<&CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: &CycNumber) {
        *self = self.add_impl(rhs, false);
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl std::iter::Sum for CycNumber {
    fn sum<I: Iterator<Item = CycNumber>>(iter: I) -> CycNumber {
        iter.fold(CycNumber::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for CycNumber {
    fn from(v: i64) -> Self {
        CycNumber::from_int(v)
    }
}
