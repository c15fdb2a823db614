//! Eta quotients Π_{m | N} η(mz)^{r_m}: weight and character, orders at
//! cusps, and exact constant terms at cusps.
//!
//! For the cusp a/c the constant term sets d = −a, completes (c, d) to a
//! matrix A = [[a', b], [c, d]], and for each m | N factors m·A through an
//! SL₂(ℤ) matrix L_m = [[x, y], [u, v]] whose eta multiplier is given by the
//! two-branch formula below.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::characters::DirichletCharacter;
use crate::cusps::Cusp;
use crate::cyclotomic::{CycNumber, Rational};
use crate::error::{Error, Result};
use crate::numtheory::{factorize, fundamental_discriminant, gcd, kronecker, vp};
use crate::qseries::{eta_qexp, QExpansion};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaQuotient {
    level: u64,
    exponents: BTreeMap<u64, i64>,
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl EtaQuotient {
    pub fn new(level: u64, exponents: &[(u64, i64)]) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidInput("level must be positive".into()));
        }
        let mut map = BTreeMap::new();
        for &(d, r) in exponents {
            if d == 0 || level % d != 0 {
                return Err(Error::InvalidInput(format!(
                    "eta factor {d} does not divide the level {level}"
                )));
            }
            *map.entry(d).or_insert(0) += r;
        }
        map.retain(|_, r| *r != 0);
        if map.is_empty() {
            return Err(Error::InvalidInput("eta quotient has no nonzero exponent".into()));
        }
        Ok(EtaQuotient {
            level,
            exponents: map,
        })
    }

    /// Parses "d:r,d:r,…".
    pub fn parse(level: u64, spec: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (d, r) = item
                .split_once(':')
                .ok_or_else(|| Error::InvalidInput(format!("expected d:r, got '{item}'")))?;
            let d = d
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("bad divisor in '{item}'")))?;
            let r = r
                .trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("bad exponent in '{item}'")))?;
            pairs.push((d, r));
        }
        Self::new(level, &pairs)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exponents(&self) -> Vec<(u64, i64)> {
        self.exponents.iter().map(|(&d, &r)| (d, r)).collect()
    }

    fn exponent_sum(&self) -> i64 {
        self.exponents.values().sum()
    }

    /// Weight k = Σr/2 and the character χ_D with D the discriminant of
    /// ℚ(√((−1)^k Π m^{r_m})), induced to the level.
    pub fn weight_character(&self) -> Result<(u32, DirichletCharacter)> {
        let total = self.exponent_sum();
        if total % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "half-integral weight {total}/2 is not supported"
            )));
        }
        if total <= 0 {
            return Err(Error::InvalidInput(format!(
                "weight {} is not positive",
                total / 2
            )));
        }
        let n = self.level as i64;
        let s1: i64 = self.exponents.iter().map(|(&d, &r)| d as i64 * r).sum();
        let s2: i64 = self.exponents.iter().map(|(&d, &r)| n / d as i64 * r).sum();
        if s1 % 24 != 0 {
            return Err(Error::InvalidInput(format!(
                "sum of d*r_d = {s1} is not divisible by 24"
            )));
        }
        if s2 % 24 != 0 {
            return Err(Error::InvalidInput(format!(
                "sum of (N/d)*r_d = {s2} is not divisible by 24"
            )));
        }
        let k = (total / 2) as u32;
        // squarefree part of Π m^{r_m}
        let mut core: i64 = if k % 2 == 0 { 1 } else { -1 };
        for &(p, _) in factorize(self.level).pairs() {
            let e: i64 = self
                .exponents
                .iter()
                .map(|(&d, &r)| vp(p, d as i64).unwrap() as i64 * r)
                .sum();
            if e.rem_euclid(2) == 1 {
                core *= p as i64;
            }
        }
        let disc = fundamental_discriminant(core);
        if self.level % disc.unsigned_abs() != 0 {
            return Err(Error::InvalidInput(format!(
                "character chi_{disc} is not defined modulo the level {}",
                self.level
            )));
        }
        Ok((k, DirichletCharacter::kronecker_character(disc)?.induce(self.level)?))
    }

    /// Σ_m gcd(c,m)²·r_m/(24m): positive means f vanishes at a/c, negative
    /// means a pole there.
    pub fn vanishing_order(&self, c: u64) -> Rational {
        self.exponents
            .iter()
            .map(|(&m, &r)| {
                let g = gcd(c as i64, m as i64);
                rat(g * g * r, 24 * m as i64)
            })
            .sum()
    }

    /// [0]_{a/c} f.
    pub fn constant_term(&self, cusp: Cusp) -> Result<CycNumber> {
        let c = cusp.c;
        if c == 0 || self.level % c != 0 {
            return Err(Error::InvalidInput(format!(
                "cusp denominator {c} must divide the level {}",
                self.level
            )));
        }
        let order = self.vanishing_order(c);
        if order.is_positive() {
            return Ok(CycNumber::zero());
        }
        if order.is_negative() {
            return Err(Error::NotHolomorphic { a: cusp.a, c });
        }
        let d = -cusp.a;
        let c = c as i64;
        let mut sign = 1i64;
        let mut phase = Rational::zero();
        let mut root = Rational::from_integer(1.into());
        for (&m, &r) in &self.exponents {
            let f = eta_factor(m as i64, d, c)?;
            if f.op1 * f.op2 == -1 && r % 2 != 0 {
                sign = -sign;
            }
            phase += (f.op3 + f.op4) * Rational::from_integer(r.into());
            root *= f.op5_sq.pow(r as i32);
        }
        let kk = self.exponent_sum() / 2;
        if kk % 2 != 0 {
            sign = -sign;
        }
        let value = CycNumber::exp_2pi_i(&phase) * CycNumber::sqrt_rational(&root)?;
        Ok(if sign < 0 { -value } else { value })
    }

    pub fn qexp(&self, truncation: usize) -> Result<QExpansion> {
        eta_qexp(&self.exponents(), truncation)
    }
}

/// Per-divisor data: OP1, OP2 are ±1, OP3 and OP4 are phases in units of 2πi,
/// OP5 = (gcd(c,m)/m)^{1/2} is kept as its square.
struct EtaFactor {
    op1: i64,
    op2: i64,
    op3: Rational,
    op4: Rational,
    op5_sq: Rational,
}

/// First [a, b, c, d] with 0 ≤ b < |dc|, gcd(b, d) = 1 and d | 1 + bc.
fn a_find(d: i64, c: i64) -> Result<[i64; 4]> {
    for b in 0..(d * c).abs() {
        if gcd(b, d) == 1 && (1 + b * c) % d == 0 {
            return Ok([(1 + b * c) / d, b, c, d]);
        }
    }
    Err(Error::Inconsistent(format!(
        "no SL2(Z) completion for bottom row ({c}, {d})"
    )))
}

/// [x, y, u, v] with x = md/g, u = −c/g, g = gcd(c, m), and the first
/// y ∈ [−|xu|, |xu|) with gcd(y, x) = 1 and x | 1 + yu.
fn l_constr(m: i64, d: i64, c: i64) -> Result<[i64; 4]> {
    let g = gcd(c, m);
    let x = m * d / g;
    let u = -c / g;
    let bound = (x * u).abs();
    for y in -bound..bound {
        if gcd(y, x) == 1 && (1 + y * u) % x == 0 {
            return Ok([x, y, u, (1 + y * u) / x]);
        }
    }
    Err(Error::Inconsistent(format!(
        "no matrix decomposition for m = {m}, d = {d}, c = {c}"
    )))
}

/// Eta multiplier of [[a, b], [c, d]], split as (Kronecker sign, sign, phase).
fn v_eta(a: i64, b: i64, c: i64, d: i64) -> Result<(i64, i64, Rational)> {
    let common = (a + d) * c - b * d * (c * c - 1);
    if c % 2 != 0 {
        return Ok((kronecker(d, c.abs()), 1, rat(common - 3 * c, 24)));
    }
    let e = (c.signum() - 1) * (d.signum() - 1);
    if e % 4 != 0 {
        return Err(Error::Inconsistent(format!(
            "eta multiplier sign undefined for c = {c}, d = {d}"
        )));
    }
    let op2 = if (e / 4) % 2 == 0 { 1 } else { -1 };
    Ok((
        kronecker(c, d.abs()),
        op2,
        rat(common + 3 * d - 3 - 3 * c * d, 24),
    ))
}

fn eta_factor(m: i64, d: i64, c: i64) -> Result<EtaFactor> {
    let [a, b, c, _] = a_find(d, c)?;
    let [x, y, u, v] = l_constr(m, d, c)?;
    let vv = -m * b * v - y * a;
    let g = gcd(c, m);
    let (op1, op2, op3) = v_eta(x, y, u, v)?;
    Ok(EtaFactor {
        op1,
        op2,
        op3,
        op4: rat(vv * g, 24 * m),
        op5_sq: rat(g, m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use crate::cusps::representatives;
    use crate::numtheory::{divisors, inv_mod};

    pub fn f_k(k: i64) -> EtaQuotient {
        let r = 2 * k + 1;
        EtaQuotient::new(24, &[(1, -r), (2, r), (3, r), (8, r), (12, r), (24, -r)]).unwrap()
    }

    fn g_k(k: i64) -> EtaQuotient {
        EtaQuotient::new(
            12,
            &[
                (1, 3 - 2 * k),
                (2, 2 - 2 * k),
                (3, 6 * k - 5),
                (4, 6 * k - 4),
                (6, 4 - 2 * k),
                (12, -2 * k),
            ],
        )
        .unwrap()
    }

    fn h_k(k: i64) -> EtaQuotient {
        EtaQuotient::new(27, &[(3, 1 - 2 * k), (9, 6 * k - 4), (27, 3)]).unwrap()
    }

    fn chi(d: i64) -> DirichletCharacter {
        DirichletCharacter::kronecker_character(d).unwrap()
    }

    #[test]
    fn weights_and_characters() {
        for k in 1..=5 {
            assert_eq!(
                f_k(k).weight_character().unwrap(),
                (2 * k as u32 + 1, chi(-24))
            );
            assert_eq!(g_k(k).weight_character().unwrap(), (2 * k as u32, chi(12)));
            assert_eq!(
                h_k(k).weight_character().unwrap(),
                (2 * k as u32, DirichletCharacter::trivial(27))
            );
        }
        assert!(EtaQuotient::new(1, &[(1, 1)]).unwrap().weight_character().is_err());
        assert!(EtaQuotient::new(2, &[(1, 2)]).unwrap().weight_character().is_err());
        assert!(EtaQuotient::new(24, &[(5, 2)]).is_err());
        assert!(EtaQuotient::new(4, &[(2, 0)]).is_err());
    }

    #[test]
    fn parse_exponent_list() {
        let e = EtaQuotient::parse(12, "1:-3, 2:-2,3:7,4:8,6:-4,12:-6").unwrap();
        assert_eq!(e.exponents().len(), 6);
        assert!(EtaQuotient::parse(12, "1-3").is_err());
        assert!(EtaQuotient::parse(12, "x:3").is_err());
    }

    #[test]
    fn vanishing_orders() {
        let f1 = f_k(1);
        assert!(f1.vanishing_order(2).is_positive());
        assert!(f1.vanishing_order(24).is_zero());
        let delta = EtaQuotient::new(1, &[(1, 24)]).unwrap();
        assert_eq!(delta.vanishing_order(1), rat(1, 1));
    }

    fn table_value(k: i64) -> CycNumber {
        // −i^{2k+1}√6 / (3^{k+1} 2^{3k+2})
        let i_pow = CycNumber::i().pow(2 * k + 1).unwrap();
        let den = 3i64.pow(k as u32 + 1) * 2i64.pow(3 * k as u32 + 2);
        -(i_pow * crate::cyclotomic::sqrt_cyclotomic(6).unwrap()).scale(&rat(1, den))
    }

    #[test]
    fn level_24_table() {
        for k in 1..=5 {
            let f = f_k(k);
            for cusp in representatives(24) {
                let v = f.constant_term(cusp).unwrap();
                match cusp.c {
                    1 => assert_eq!(v, table_value(k), "k={k}"),
                    24 => assert_eq!(v, CycNumber::one()),
                    _ => assert!(v.is_zero()),
                }
            }
        }
        assert_eq!(
            table_value(1),
            (CycNumber::i() * crate::cyclotomic::sqrt_cyclotomic(6).unwrap())
                .scale(&rat(1, 288))
        );
    }

    fn dedekind_sum(d: i64, c: i64) -> Rational {
        let saw = |x: Rational| -> Rational {
            if x.is_integer() {
                Rational::zero()
            } else {
                x.clone() - x.floor() - rat(1, 2)
            }
        };
        (1..c)
            .map(|r| rat(r, c) * saw(rat(d * r, c)))
            .sum()
    }

    /// Constant term at a/c straight from η(γz) = ε(γ)(−i(cz+d))^{1/2}η(z)
    /// with Rademacher's ε(γ) = exp(πi((a+d)/(12c) − s(d,c))), c > 0.
    fn oracle_constant(eq: &EtaQuotient, cusp: Cusp) -> CycNumber {
        let (a, c) = (cusp.a, cusp.c as i64);
        // complete to γ = [[a, b], [c, d]]
        let d = if c == 1 { 1 } else { inv_mod(a, c).unwrap() };
        assert_eq!((a * d - 1) % c, 0);
        let b = (a * d - 1) / c;
        let mut phase = Rational::zero();
        let mut root = rat(1, 1);
        for (m, r) in eq.exponents() {
            let m = m as i64;
            let g = gcd(c, m);
            // m·γ = γ_m · [[g, Y], [0, m/g]], γ_m = [[ma/g, β], [c/g, δ]]
            let (al, ga) = (m * a / g, c / g);
            let w = m / g;
            let (beta, delta) = {
                let e = al.extended_gcd(&ga);
                assert_eq!(e.gcd, 1);
                (-e.y, e.x)
            };
            // second column: (m b, d) = Y (al, ga) + w (β, δ)
            let y_num = d - w * delta;
            assert_eq!(y_num % ga, 0);
            let y = y_num / ga;
            assert_eq!(y * al + w * beta, m * b);
            let eps_phase = rat(al + delta, 24 * ga) - dedekind_sum(delta, ga) / rat(2, 1)
                - rat(1, 8);
            phase += (eps_phase + rat(y, 24 * w)) * rat(r, 1);
            root *= rat(g, m).pow(r as i32);
        }
        CycNumber::exp_2pi_i(&phase) * CycNumber::sqrt_rational(&root).unwrap()
    }

    #[test]
    fn dedekind_sum_values() {
        assert_eq!(dedekind_sum(1, 3), rat(1, 18));
        assert_eq!(dedekind_sum(1, 5), rat(1, 5));
    }

    fn holomorphic_quotients(level: u64, max_exp: i64) -> Vec<EtaQuotient> {
        let divs = divisors(level);
        let mut out = Vec::new();
        let mut exps = vec![-max_exp; divs.len()];
        loop {
            let pairs: Vec<(u64, i64)> = divs.iter().copied().zip(exps.iter().copied()).collect();
            if let Ok(eq) = EtaQuotient::new(level, &pairs) {
                let holo = divs
                    .iter()
                    .all(|&c| !eq.vanishing_order(c).is_negative());
                if holo && eq.weight_character().is_ok() {
                    out.push(eq);
                }
            }
            let mut i = 0;
            loop {
                if i == exps.len() {
                    return out;
                }
                exps[i] += 1;
                if exps[i] > max_exp {
                    exps[i] = -max_exp;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn port_agrees_with_rademacher_oracle() {
        let mut quotients = vec![f_k(1), f_k(2), g_k(1), g_k(2), h_k(1), h_k(2)];
        for level in [4u64, 6, 8, 9, 10, 12, 16, 18] {
            quotients.extend(holomorphic_quotients(level, 2));
        }
        let mut checked = 0;
        for eq in &quotients {
            for c in divisors(eq.level()) {
                if !eq.vanishing_order(c).is_zero() {
                    continue;
                }
                for a in 1..=c as i64 {
                    if gcd(a, c as i64) != 1 {
                        continue;
                    }
                    let cusp = Cusp::new(a, c);
                    let got = eq.constant_term(cusp).unwrap();
                    assert_eq!(got, oracle_constant(eq, cusp), "{eq:?} at {cusp}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 100, "only {checked} cusps exercised");
    }

    #[test]
    fn constant_term_at_infinity_matches_expansion() {
        for level in [4u64, 6, 8, 9, 12] {
            for eq in holomorphic_quotients(level, 2).into_iter().take(40) {
                let q0 = eq.qexp(0).unwrap();
                let c = eq.constant_term(Cusp::new(1, level)).unwrap();
                assert_eq!(&c, q0.coeff(0), "{eq:?}");
            }
        }
    }

    #[test]
    fn constants_have_rational_norm() {
        for eq in [f_k(1), g_k(1), h_k(1)] {
            for cusp in representatives(eq.level()) {
                let v = eq.constant_term(cusp).unwrap();
                if !v.is_zero() {
                    let n = v.norm_sq();
                    assert!(n.to_rational().unwrap().is_positive());
                }
            }
        }
    }

    #[test]
    fn twisted_constants_agree_on_equivalent_cusps() {
        use crate::cusps::equivalent;
        let f = f_k(1);
        // the pairs (ε, ψ) for weight 3, level 24, character χ_{−24}
        let pairs = [(1, -24), (-3, 8), (8, -3), (-24, 1)].map(|(e, p)| (chi(e), chi(p)));
        for (eps, psi) in &pairs {
            // c ranges over M·c₁ with c₁ | N/LM, so that both M | c and L·c | N
            for c in divisors(24) {
                if c % psi.modulus() != 0 || 24 % (c * eps.modulus()) != 0 {
                    continue;
                }
                let cusps: Vec<Cusp> = (1..=c as i64)
                    .filter(|&a| gcd(a, c as i64) == 1)
                    .map(|a| Cusp::new(a, c))
                    .collect();
                for &x in &cusps {
                    for &y in &cusps {
                        if equivalent(x, y, 24) {
                            assert_eq!(
                                psi.eval(x.a) * f.constant_term(x).unwrap(),
                                psi.eval(y.a) * f.constant_term(y).unwrap(),
                                "{psi:?} {x} {y}"
                            );
                        }
                    }
                }
            }
        }
        // without L·c | N the twist is off by ε: here ε = χ_{−24}, ψ = χ₁, c = 24
        let x = f.constant_term(Cusp::new(1, 24)).unwrap();
        let y = f.constant_term(Cusp::new(13, 24)).unwrap();
        assert_eq!(y, chi(-24).eval(13) * x);
    }

    #[test]
    fn poles_are_reported() {
        let eq = EtaQuotient::new(4, &[(1, 8), (4, -4)]).unwrap();
        assert!(matches!(
            eq.constant_term(Cusp::new(1, 4)),
            Err(Error::NotHolomorphic { .. })
        ));
    }
}
