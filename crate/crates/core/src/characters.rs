//! Dirichlet characters, Gauss sums and generalized Bernoulli numbers.
//!
//! A character mod N is an exponent vector on fixed generators of (ℤ/N)^*.
//! The generators come from the CRT splitting over prime powers: a primitive
//! root for odd p^e, −1 for 4, and −1 together with 5 for 2^e with e ≥ 3.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::cyclotomic::{CycNumber, PowerSum, Rational};
use crate::error::{Error, Result};
use crate::numtheory::{
    euler_phi, factorize, gcd, is_fundamental_discriminant, kronecker, pow_mod, vp,
};

#[derive(Debug)]
struct Generator {
    residue: u64,
    order: u64,
    /// Prime of the CRT component this generator lives in.
    prime: u64,
    /// Exponent of `prime` in the modulus.
    exponent: u32,
}

/// The unit group mod N with a discrete-log table for every residue.
#[derive(Debug)]
pub struct UnitGroup {
    modulus: u64,
    gens: Vec<Generator>,
    /// `logs[r * gens.len() + i]` is the log of r to base gens[i];
    /// `u32::MAX` marks non-units.
    logs: Vec<u32>,
}

fn group_cache() -> &'static Mutex<HashMap<u64, Arc<UnitGroup>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<UnitGroup>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn crt_lift(r: u64, q: u64, n: u64) -> u64 {
    // x ≡ r mod q, x ≡ 1 mod n/q
    let m = n / q;
    (0..q)
        .map(|t| 1 + t * m)
        .find(|x| x % q == r % q)
        .expect("coprime CRT components")
        % n.max(1)
}

fn primitive_root(p: u64, e: u32) -> u64 {
    let q = p.pow(e);
    let phi = euler_phi(q);
    let primes: Vec<u64> = factorize(phi).primes().collect();
    (2..q)
        .find(|&g| g % p != 0 && primes.iter().all(|&l| pow_mod(g, phi / l, q) != 1))
        .expect("odd prime powers are cyclic")
}

impl UnitGroup {
    pub fn get(modulus: u64) -> Arc<UnitGroup> {
        assert!(modulus >= 1);
        if let Some(g) = group_cache().lock().unwrap().get(&modulus) {
            return g.clone();
        }
        let group = Arc::new(Self::build(modulus));
        group_cache()
            .lock()
            .unwrap()
            .insert(modulus, group.clone());
        group
    }

    fn build(n: u64) -> UnitGroup {
        let mut gens = Vec::new();
        for &(p, e) in factorize(n).pairs() {
            let q = p.pow(e);
            let mut push = |r: u64, order: u64| {
                gens.push(Generator {
                    residue: crt_lift(r, q, n),
                    order,
                    prime: p,
                    exponent: e,
                })
            };
            match (p, e) {
                (2, 1) => {}
                (2, 2) => push(3, 2),
                (2, _) => {
                    push(q - 1, 2);
                    push(5, q / 4);
                }
                _ => push(primitive_root(p, e), euler_phi(q)),
            }
        }
        let k = gens.len();
        let mut logs = vec![u32::MAX; n as usize * k.max(1)];
        let mut elems: Vec<(u64, Vec<u32>)> = vec![(1 % n, vec![0; k])];
        for (i, g) in gens.iter().enumerate() {
            let mut next = Vec::with_capacity(elems.len() * g.order as usize);
            for (r, e) in &elems {
                let mut x = *r;
                for t in 0..g.order {
                    let mut v = e.clone();
                    v[i] = t as u32;
                    next.push((x, v));
                    x = x * g.residue % n;
                }
            }
            elems = next;
        }
        debug_assert_eq!(elems.len() as u64, euler_phi(n));
        if k > 0 {
            for (r, e) in elems {
                logs[r as usize * k..(r as usize + 1) * k].copy_from_slice(&e);
            }
        }
        UnitGroup {
            modulus: n,
            gens,
            logs,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator_orders(&self) -> Vec<u64> {
        self.gens.iter().map(|g| g.order).collect()
    }

    pub fn generators(&self) -> Vec<u64> {
        self.gens.iter().map(|g| g.residue).collect()
    }

    fn log(&self, n: i64) -> Option<&[u32]> {
        let r = n.rem_euclid(self.modulus as i64) as usize;
        let k = self.gens.len();
        if gcd(r as i64, self.modulus as i64) != 1 {
            return None;
        }
        Some(&self.logs[r * k..(r + 1) * k])
    }
}

/// A Dirichlet character mod N.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exps: Vec<u64>,
    order: u64,
    /// χ(g_i) = ζ_order^{weights[i]}.
    weights: Vec<u64>,
}

impl DirichletCharacter {
    pub fn from_exponents(modulus: u64, exps: &[i64]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("character modulus must be positive".into()));
        }
        let group = UnitGroup::get(modulus);
        if exps.len() != group.gens.len() {
            return Err(Error::InvalidInput(format!(
                "characters mod {modulus} need {} exponents, got {}",
                group.gens.len(),
                exps.len()
            )));
        }
        let exps = exps
            .iter()
            .zip(&group.gens)
            .map(|(&e, g)| e.rem_euclid(g.order as i64) as u64)
            .collect();
        Ok(Self::new(group, exps))
    }

    fn new(group: Arc<UnitGroup>, exps: Vec<u64>) -> Self {
        let order = exps
            .iter()
            .zip(&group.gens)
            .fold(1u64, |acc, (&e, g)| acc.lcm(&(g.order / e.gcd(&g.order))));
        let weights = exps
            .iter()
            .zip(&group.gens)
            .map(|(&e, g)| {
                let h = e.gcd(&g.order);
                (e / h) * (order / (g.order / h))
            })
            .collect();
        DirichletCharacter {
            group,
            exps,
            order,
            weights,
        }
    }

    pub fn trivial(modulus: u64) -> Self {
        let group = UnitGroup::get(modulus);
        let k = group.gens.len();
        Self::new(group, vec![0; k])
    }

    /// Builds the character mod `modulus` whose value at each generator is
    /// ζ_{o}^{j} with (o, j) = `value(generator)`.
    fn from_generator_values(modulus: u64, value: impl Fn(u64) -> (u64, u64)) -> Self {
        let group = UnitGroup::get(modulus);
        let exps = group
            .gens
            .iter()
            .map(|g| {
                let (o, j) = value(g.residue);
                // ζ_o^j must be a power of ζ_{ord g}
                debug_assert_eq!((j * g.order) % o, 0);
                (j * g.order / o) % g.order
            })
            .collect();
        Self::new(group, exps)
    }

    /// The Kronecker character n ↦ (d | n) mod |d| for a fundamental
    /// discriminant d (or d = 1).
    pub fn kronecker_character(d: i64) -> Result<Self> {
        if !is_fundamental_discriminant(d) {
            return Err(Error::InvalidInput(format!(
                "{d} is not a fundamental discriminant"
            )));
        }
        Ok(Self::from_generator_values(d.unsigned_abs(), |g| {
            if kronecker(d, g as i64) == 1 {
                (1, 0)
            } else {
                (2, 1)
            }
        }))
    }

    /// Parses "d" (Kronecker label, e.g. "-4") or "M:e1,e2,…".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix("chi_").unwrap_or(s);
        if let Some((m, e)) = s.split_once(':') {
            let m: u64 = m
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad modulus in character '{s}'")))?;
            let exps = if e.trim().is_empty() {
                Vec::new()
            } else {
                e.split(',')
                    .map(|x| x.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::InvalidInput(format!("bad exponents in '{s}'")))?
            };
            return Self::from_exponents(m, &exps);
        }
        let d: i64 = s
            .parse()
            .map_err(|_| Error::InvalidInput(format!("cannot parse character '{s}'")))?;
        Self::kronecker_character(d)
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    /// Order of χ in the character group.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// χ(n) = ζ_order^j; `None` when gcd(n, N) > 1.
    pub fn value_exponent(&self, n: i64) -> Option<u64> {
        if self.group.modulus == 1 {
            return Some(0);
        }
        let logs = self.group.log(n)?;
        let mut j = 0u64;
        for (&l, &w) in logs.iter().zip(&self.weights) {
            j = (j + l as u64 * w) % self.order;
        }
        Some(j)
    }

    pub fn eval(&self, n: i64) -> CycNumber {
        match self.value_exponent(n) {
            Some(j) => CycNumber::root_of_unity(self.order, j as i64),
            None => CycNumber::zero(),
        }
    }

    /// Value at −1, as ±1.
    pub fn parity(&self) -> i64 {
        match self.value_exponent(-1) {
            Some(0) => 1,
            _ => -1,
        }
    }

    pub fn conj(&self) -> Self {
        let exps = self
            .exps
            .iter()
            .zip(&self.group.gens)
            .map(|(&e, g)| (g.order - e) % g.order)
            .collect();
        Self::new(self.group.clone(), exps)
    }

    /// The character mod `modulus` (a multiple of N) induced by χ.
    pub fn induce(&self, modulus: u64) -> Result<Self> {
        if modulus % self.modulus() != 0 {
            return Err(Error::InvalidInput(format!(
                "cannot induce a character mod {} to modulus {modulus}",
                self.modulus()
            )));
        }
        if modulus == self.modulus() {
            return Ok(self.clone());
        }
        Ok(Self::from_generator_values(modulus, |g| {
            (self.order, self.value_exponent(g as i64).unwrap())
        }))
    }

    /// Pointwise product, taken mod lcm of the two moduli.
    pub fn mul(&self, other: &Self) -> Self {
        let m = self.modulus().lcm(&other.modulus());
        let a = self.induce(m).unwrap();
        let b = other.induce(m).unwrap();
        let exps = a
            .exps
            .iter()
            .zip(&b.exps)
            .zip(&a.group.gens)
            .map(|((x, y), g)| (x + y) % g.order)
            .collect();
        Self::new(a.group.clone(), exps)
    }

    /// Smallest f | N such that χ is trivial on units ≡ 1 mod f.
    pub fn conductor(&self) -> u64 {
        let mut f = 1u64;
        let gens = &self.group.gens;
        let mut i = 0;
        while i < gens.len() {
            let g = &gens[i];
            let p = g.prime;
            let comp_order = |idx: usize| {
                let o = gens[idx].order;
                o / self.exps[idx].gcd(&o)
            };
            if p == 2 && g.exponent >= 3 {
                // generators −1 and 5 sit next to each other
                let o_minus = comp_order(i);
                let o_five = comp_order(i + 1);
                if o_five > 1 {
                    f *= 4 * o_five;
                } else if o_minus > 1 {
                    f *= 4;
                }
                i += 2;
                continue;
            }
            let o = comp_order(i);
            if o > 1 {
                f *= if p == 2 {
                    4
                } else {
                    p.pow(1 + vp(p, o as i64).unwrap())
                };
            }
            i += 1;
        }
        f
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus()
    }

    /// The primitive character inducing χ.
    pub fn primitize(&self) -> Self {
        let f = self.conductor();
        if f == self.modulus() {
            return self.clone();
        }
        let n = self.modulus() as i64;
        Self::from_generator_values(f, |h| {
            // lift h mod f to a unit mod N
            let lift = (0..)
                .map(|t| h as i64 + t * f as i64)
                .find(|&x| gcd(x, n) == 1)
                .unwrap();
            (self.order, self.value_exponent(lift).unwrap())
        })
    }

    /// All φ(N) characters mod N.
    pub fn enumerate(modulus: u64) -> Vec<Self> {
        let group = UnitGroup::get(modulus);
        let mut out: Vec<Vec<u64>> = vec![Vec::new()];
        for g in &group.gens {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..g.order).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|e| Self::new(group.clone(), e))
            .collect()
    }

    /// Primitive characters of conductor exactly `m`.
    pub fn primitive_characters(m: u64) -> Vec<Self> {
        Self::enumerate(m)
            .into_iter()
            .filter(|c| c.is_primitive())
            .collect()
    }

    /// For a real primitive character, the discriminant d with χ = χ_d.
    pub fn kronecker_discriminant(&self) -> Option<i64> {
        if self.order > 2 || !self.is_primitive() {
            return None;
        }
        let m = self.modulus() as i64;
        let d = if self.parity() == 1 { m } else { -m };
        Some(d)
    }

    /// "chi_d" for real characters (with " mod N" when imprimitive), else
    /// "chi[N;e1,e2,…]".
    pub fn label(&self) -> String {
        if self.order <= 2 {
            let prim = self.primitize();
            if let Some(d) = prim.kronecker_discriminant() {
                return if prim.modulus() == self.modulus() {
                    format!("chi_{d}")
                } else {
                    format!("chi_{d} mod {}", self.modulus())
                };
            }
        }
        let e: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
        format!("chi[{};{}]", self.modulus(), e.join(","))
    }

    /// W(ψ) = Σ_{a=0}^{M−1} ψ(a) e^{2πia/M} for primitive ψ mod M.
    pub fn gauss_sum(&self) -> Result<CycNumber> {
        if !self.is_primitive() {
            return Err(Error::InvalidInput(format!(
                "Gauss sum needs a primitive character, {} is not",
                self.label()
            )));
        }
        let m = self.modulus();
        let order = m.lcm(&self.order);
        let mut ps = PowerSum::new(order);
        let one = Rational::one();
        for a in 0..m {
            if let Some(j) = self.value_exponent(a as i64) {
                let e = j * (order / self.order) + a * (order / m);
                ps.add_term(e as i64, &one);
            }
        }
        Ok(ps.finish())
    }

    /// B_{k,χ} from Σ_k B_{k,χ} t^k/k! = Σ_{a=1}^{M} χ(a) t e^{at}/(e^{Mt} − 1).
    pub fn generalized_bernoulli(&self, k: u32) -> CycNumber {
        let m = self.modulus();
        let k = k as usize;
        // (e^{Mt} − 1)/t = Σ M^{n+1} t^n/(n+1)!, inverted as a power series
        let mut fact = vec![BigInt::one()];
        for i in 1..=k + 1 {
            let f = &fact[i - 1] * BigInt::from(i);
            fact.push(f);
        }
        let mm = BigInt::from(m);
        let base: Vec<Rational> = (0..=k)
            .map(|n| Rational::new(mm.pow(n as u32 + 1), fact[n + 1].clone()))
            .collect();
        let inv = series_inverse(&base);
        let mut ps = PowerSum::new(self.order);
        for a in 1..=m {
            let Some(j) = self.value_exponent(a as i64) else {
                continue;
            };
            // [t^k] e^{at}·inv
            let aa = BigInt::from(a);
            let mut c = Rational::zero();
            for (i, inv_j) in inv.iter().enumerate().take(k + 1).rev() {
                let ii = k - i;
                c += Rational::new(aa.pow(ii as u32), fact[ii].clone()) * inv_j;
            }
            ps.add_term(j as i64, &(c * Rational::from_integer(fact[k].clone())));
        }
        ps.finish()
    }
}

fn series_inverse(a: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    let mut b = vec![Rational::zero(); n];
    b[0] = a[0].recip();
    for i in 1..n {
        let mut s = Rational::zero();
        for j in 1..=i {
            s += &a[j] * &b[i - j];
        }
        b[i] = -s * &b[0];
    }
    b
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exps == other.exps
    }
}

impl Eq for DirichletCharacter {}

impl Hash for DirichletCharacter {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.modulus().hash(state);
        self.exps.hash(state);
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for DirichletCharacter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Record<'a> {
            modulus: u64,
            exponents: &'a [u64],
            label: String,
        }
        Record {
            modulus: self.modulus(),
            exponents: &self.exps,
            label: self.label(),
        }
        .serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::divisors;

    fn chi(d: i64) -> DirichletCharacter {
        DirichletCharacter::kronecker_character(d).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let t = DirichletCharacter::trivial(1);
        assert_eq!(t.eval(17), CycNumber::one());
        assert_eq!(t.eval(0), CycNumber::one());
        assert_eq!(chi(-4).eval(3), CycNumber::from_int(-1));
        for c in DirichletCharacter::enumerate(12) {
            assert!(c.eval(6).is_zero());
        }
        let c12 = chi(12);
        assert_eq!(c12.eval(5), CycNumber::from_int(-1));
        assert_eq!(c12.eval(7), CycNumber::from_int(-1));
        assert_eq!(c12.eval(11), CycNumber::one());
        assert_eq!(c12.parity(), 1);
        assert_eq!(chi(-24).parity(), -1);
        assert!(DirichletCharacter::kronecker_character(12 * 4).is_err());
    }

    #[test]
    fn kronecker_characters_match_symbol() {
        for d in -60i64..=60 {
            if !is_fundamental_discriminant(d) {
                continue;
            }
            let c = chi(d);
            assert!(c.is_primitive(), "d = {d}");
            assert_eq!(c.kronecker_discriminant(), Some(d));
            for n in -100i64..=100 {
                assert_eq!(c.eval(n), CycNumber::from_int(kronecker(d, n)), "d={d} n={n}");
            }
        }
        assert_eq!(chi(-24).label(), "chi_-24");
        assert_eq!(chi(1).label(), "chi_1");
        assert_eq!(chi(-4).induce(12).unwrap().label(), "chi_-4 mod 12");
    }

    fn brute_conductor(c: &DirichletCharacter) -> u64 {
        let n = c.modulus() as i64;
        divisors(c.modulus())
            .into_iter()
            .find(|&f| {
                (0..n)
                    .filter(|&x| gcd(x, n) == 1 && x % f as i64 == 1 % f as i64)
                    .all(|x| c.value_exponent(x) == Some(0))
            })
            .unwrap()
    }

    #[test]
    fn conductor_and_primitize() {
        assert_eq!(DirichletCharacter::enumerate(24).len(), 8);
        assert_eq!(DirichletCharacter::trivial(12).conductor(), 1);
        assert_eq!(chi(-4).induce(12).unwrap().primitize(), chi(-4));
        assert_eq!(chi(-4).mul(&chi(-4)).primitize(), DirichletCharacter::trivial(1));
        for n in 1..=200u64 {
            let all = DirichletCharacter::enumerate(n);
            assert_eq!(all.len() as u64, euler_phi(n));
            for c in &all {
                assert_eq!(c.conductor(), brute_conductor(c), "{c:?}");
                let p = c.primitize();
                assert!(p.is_primitive());
                for x in 0..n as i64 {
                    if gcd(x, n as i64) == 1 {
                        assert_eq!(p.value_exponent(x).map(|j| (j, p.order())).map(
                            |(j, o)| j * c.order() / o
                        ), c.value_exponent(x));
                    }
                }
            }
        }
    }

    #[test]
    fn group_closure_and_real_conjugates() {
        for n in [1u64, 8, 15, 24, 27, 32, 60] {
            let all = DirichletCharacter::enumerate(n);
            for a in &all {
                assert!(all.contains(&a.conj()));
                if a.order() <= 2 {
                    assert_eq!(&a.conj(), a);
                }
                for b in &all {
                    assert!(all.contains(&a.mul(b)));
                }
            }
        }
    }

    #[test]
    fn character_orthogonality() {
        for c in 1..=48u64 {
            let prims: Vec<DirichletCharacter> = divisors(c)
                .into_iter()
                .flat_map(DirichletCharacter::primitive_characters)
                .collect();
            for p1 in &prims {
                for p2 in &prims {
                    let mut s = CycNumber::zero();
                    for a in 1..=c as i64 {
                        if gcd(a, c as i64) == 1 {
                            s += &(p1.conj().eval(a) * p2.eval(a));
                        }
                    }
                    let want = if p1 == p2 { euler_phi(c) as i64 } else { 0 };
                    assert_eq!(s, CycNumber::from_int(want), "c={c} {p1:?} {p2:?}");
                }
            }
        }
    }

    #[test]
    fn gauss_sums() {
        assert_eq!(DirichletCharacter::trivial(1).gauss_sum().unwrap(), CycNumber::one());
        assert_eq!(chi(-4).gauss_sum().unwrap(), CycNumber::i().scale(&Rational::from_integer(2.into())));
        assert!(DirichletCharacter::trivial(4).gauss_sum().is_err());
        let quartic: Vec<_> = DirichletCharacter::primitive_characters(5)
            .into_iter()
            .filter(|c| c.order() == 4)
            .collect();
        assert_eq!(quartic.len(), 2);
        for m in 1..=24u64 {
            for psi in DirichletCharacter::primitive_characters(m) {
                let w = psi.gauss_sum().unwrap();
                assert_eq!(w.norm_sq(), CycNumber::from_int(m as i64), "{psi:?}");
            }
        }
    }

    /// Classical Bernoulli numbers with B_1 = −1/2.
    fn bernoulli_numbers(n: usize) -> Vec<Rational> {
        let mut b = vec![Rational::one()];
        for m in 1..=n {
            let mut s = Rational::zero();
            let mut binom = BigInt::one();
            for (j, bj) in b.iter().enumerate() {
                s += Rational::from_integer(binom.clone()) * bj;
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
        }
        b
    }

    fn bernoulli_oracle(k: usize, c: &DirichletCharacter) -> CycNumber {
        let bn = bernoulli_numbers(k);
        let m = c.modulus() as i64;
        let mut total = CycNumber::zero();
        for a in 1..=m {
            let x = Rational::new(a.into(), m.into());
            let mut bk = Rational::zero();
            let mut binom = BigInt::one();
            for i in 0..=k {
                bk += Rational::from_integer(binom.clone()) * &bn[i] * x.pow((k - i) as i32);
                binom = binom * BigInt::from(k - i) / BigInt::from(i + 1);
            }
            total += &c.eval(a).scale(&bk);
        }
        total.scale(&Rational::from_integer(BigInt::from(m)).pow(k as i32 - 1))
    }

    #[test]
    fn bernoulli_examples() {
        let one = DirichletCharacter::trivial(1);
        assert_eq!(one.generalized_bernoulli(2), CycNumber::from_frac(1, 6));
        assert_eq!(one.generalized_bernoulli(4), CycNumber::from_frac(-1, 30));
        assert_eq!(chi(-4).generalized_bernoulli(1), CycNumber::from_frac(-1, 2));
        for m in 1..=24u64 {
            for c in DirichletCharacter::primitive_characters(m) {
                for k in 0..=8u32 {
                    let b = c.generalized_bernoulli(k);
                    assert_eq!(b, bernoulli_oracle(k as usize, &c), "k={k} {c:?}");
                    let parity_ok = c.parity() == if k % 2 == 0 { 1 } else { -1 };
                    if !parity_ok && !(k == 1 && m == 1) {
                        assert!(b.is_zero(), "k={k} {c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn parse_labels() {
        assert_eq!(DirichletCharacter::parse("-4").unwrap(), chi(-4));
        assert_eq!(DirichletCharacter::parse("chi_12").unwrap(), chi(12));
        let c = DirichletCharacter::parse("5:1").unwrap();
        assert_eq!(c.order(), 4);
        assert!(DirichletCharacter::parse("8:1").is_err());
        assert!(DirichletCharacter::parse("x").is_err());
    }
}
