//! Eisenstein part of f ∈ M_k(Γ0(N), χ) from its constant terms at cusps.
//!
//! With (ε, ψ) primitive of conductors L, M and LM | N,
//!
//! a_f(ε,ψ,d) = Π_{p|N} p^k/(p^k − ε(p)ψ̄(p)) · Σ_{c₁ | N/LM} R(d, c₁)·S_{N/LM}(d, c₁)·[0]_{c₁M,ψ} f
//!
//! where [0]_{c,ψ} f is the ψ-weighted average of [0]_{a/c} f over a mod c.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::characters::DirichletCharacter;
use crate::cusps::{representatives, Cusp};
use crate::cyclotomic::{CycNumber, Rational};
use crate::error::{Error, Result};
use crate::numtheory::{divisors, euler_phi, factorize, gcd, mobius, vp};
use crate::qseries::{eisenstein_qexp, QExpansion};

/// Returns [0]_{a/c} f for a reduced cusp with c | N.
pub type CuspOracle<'a> = dyn Fn(Cusp) -> Result<CycNumber> + 'a;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EisKey {
    pub eps: DirichletCharacter,
    pub psi: DirichletCharacter,
    pub d: u64,
}

impl EisKey {
    fn is_e2(&self, k: u32) -> bool {
        k == 2 && self.eps.modulus() == 1 && self.psi.modulus() == 1
    }
}

impl std::fmt::Display for EisKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.eps.label(), self.psi.label(), self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EisTerm {
    #[serde(flatten)]
    pub key: EisKey,
    pub coeff: CycNumber,
}

/// Coefficient of L_d = E₂(z) − d·E₂(dz).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LdTerm {
    pub d: u64,
    pub coeff: CycNumber,
}

/// E_f = Σ a_f(ε,ψ,d)·E_k(ε,ψ;dz). In weight 2 with trivial character the
/// (χ₁, χ₁) part is also given on the L_d basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EisCombination {
    pub weight: u32,
    pub level: u64,
    pub character: DirichletCharacter,
    pub terms: Vec<EisTerm>,
    #[serde(rename = "Ld_terms", skip_serializing_if = "Option::is_none")]
    pub ld_terms: Option<Vec<LdTerm>>,
}

impl EisCombination {
    pub fn coefficient(&self, eps: &DirichletCharacter, psi: &DirichletCharacter, d: u64) -> CycNumber {
        self.terms
            .iter()
            .find(|t| &t.key.eps == eps && &t.key.psi == psi && t.key.d == d)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(CycNumber::zero)
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = &EisTerm> {
        self.terms.iter().filter(|t| !t.coeff.is_zero())
    }

    /// Σ a_f(ε,ψ,d)·E_k(ε,ψ;dz) through q^T.
    pub fn to_qexp(&self, truncation: usize) -> Result<QExpansion> {
        let mut acc = QExpansion::zero(truncation);
        for t in self.nonzero_terms() {
            let e = eisenstein_qexp(self.weight, &t.key.eps, &t.key.psi, t.key.d, truncation)?;
            acc = &acc + &e.scale(&t.coeff);
        }
        Ok(acc)
    }

    /// [0]_{a/c} E_f, using the L_d form for the E₂ family.
    pub fn constant_at(&self, cusp: Cusp) -> Result<CycNumber> {
        let mut acc = CycNumber::zero();
        for t in self.nonzero_terms() {
            if t.key.is_e2(self.weight) {
                continue;
            }
            acc += &(&t.coeff * &eis_cusp_constant(self.weight, &t.key.eps, &t.key.psi, t.key.d, cusp)?);
        }
        if let Some(ld) = &self.ld_terms {
            let one = DirichletCharacter::trivial(1);
            for t in ld.iter().filter(|t| !t.coeff.is_zero()) {
                acc += &(&t.coeff * &eis_cusp_constant(2, &one, &one, t.d, cusp)?);
            }
        }
        Ok(acc)
    }
}

fn char_at(chi: &DirichletCharacter, n: u64) -> CycNumber {
    chi.eval(n as i64)
}

/// R_{k,ε,ψ}(d, c) = ε(−d/g)·ψ̄(c/g)·(g/c)^k with g = gcd(d, c).
pub fn r_value(k: u32, eps: &DirichletCharacter, psi: &DirichletCharacter, d: u64, c: u64) -> CycNumber {
    let g = gcd(d as i64, c as i64) as u64;
    let e = eps.eval(-((d / g) as i64));
    if e.is_zero() {
        return e;
    }
    let p = psi.conj().eval((c / g) as i64);
    if p.is_zero() {
        return p;
    }
    let ratio = Rational::new(BigInt::from(g), BigInt::from(c)).pow(k as i32);
    (e * p).scale(&ratio)
}

/// S_{k,N,ε,ψ}(d, c) = μ(dc/g²)·Π (p^k + ε(p)ψ̄(p))/p^k over p | g with
/// 0 < v_p(d) = v_p(c) < v_p(N).
pub fn s_value(
    k: u32,
    level: u64,
    eps: &DirichletCharacter,
    psi: &DirichletCharacter,
    d: u64,
    c: u64,
) -> CycNumber {
    let g = gcd(d as i64, c as i64) as u64;
    let mu = mobius(d / g * (c / g));
    if mu == 0 {
        return CycNumber::zero();
    }
    let mut acc = CycNumber::from_int(mu);
    for p in factorize(g).primes() {
        let v = vp(p, d as i64).unwrap();
        if v == vp(p, c as i64).unwrap() && v < vp(p, level as i64).unwrap() {
            let pk = BigInt::from(p).pow(k);
            let ep = &char_at(eps, p) * &char_at(&psi.conj(), p);
            let factor = (CycNumber::from_int(pk.clone()) + ep).scale(&Rational::new(1.into(), pk));
            acc = acc * factor;
        }
    }
    acc
}

/// 𝓔(k, N, χ): primitive (ε, ψ) with LM | N, ε(−1)ψ(−1) = (−1)^k and εψ = χ on
/// units mod N. Empty when χ(−1) ≠ (−1)^k.
pub fn eis_pairs(k: u32, level: u64, chi: &DirichletCharacter) -> Result<Vec<(DirichletCharacter, DirichletCharacter)>> {
    let chi = induce_to_level(chi, level)?;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    if chi.parity() != sign {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for m in divisors(level) {
        for psi in DirichletCharacter::primitive_characters(m) {
            let eps = chi.mul(&psi.conj()).primitize();
            if level % (eps.modulus() * m) == 0 {
                out.push((eps, psi));
            }
        }
    }
    Ok(out)
}

fn induce_to_level(chi: &DirichletCharacter, level: u64) -> Result<DirichletCharacter> {
    if level % chi.modulus() == 0 {
        return chi.induce(level);
    }
    let prim = chi.primitize();
    if level % prim.modulus() != 0 {
        return Err(Error::InvalidInput(format!(
            "character {} has conductor not dividing the level {level}",
            chi.label()
        )));
    }
    prim.induce(level)
}

/// All basis keys (ε, ψ, d) with d | N/LM. In weight 2 with trivial character
/// this includes (χ₁, χ₁, 1), i.e. the E₂(dz) family.
pub fn basis_keys(k: u32, level: u64, chi: &DirichletCharacter) -> Result<Vec<EisKey>> {
    Ok(eis_pairs(k, level, chi)?
        .into_iter()
        .flat_map(|(eps, psi)| {
            let nred = level / (eps.modulus() * psi.modulus());
            divisors(nred).into_iter().map(move |d| EisKey {
                eps: eps.clone(),
                psi: psi.clone(),
                d,
            })
        })
        .collect())
}

/// [0]_{a/c} E_k(ε,ψ;dz) = ψ̄(a)·R(c, Md); for (2, χ₁, χ₁) this is the
/// constant of L_d, R(c, 1) − d·R(c, d).
pub fn eis_cusp_constant(
    k: u32,
    eps: &DirichletCharacter,
    psi: &DirichletCharacter,
    d: u64,
    cusp: Cusp,
) -> Result<CycNumber> {
    let c = cusp.c;
    if c == 0 {
        return Err(Error::InvalidInput("use a cusp a/c with c | N in place of 1/0".into()));
    }
    if k == 2 && eps.modulus() == 1 && psi.modulus() == 1 {
        if d <= 1 {
            return Err(Error::InvalidInput("E_2 alone is not modular; use L_d with d > 1".into()));
        }
        let one = DirichletCharacter::trivial(1);
        let a = r_value(2, &one, &one, c, 1);
        let b = r_value(2, &one, &one, c, d).scale(&Rational::from_integer(BigInt::from(d)));
        return Ok(a - b);
    }
    let m = psi.modulus();
    Ok(psi.conj().eval(cusp.a) * r_value(k, eps, psi, c, m * d))
}

/// [0]_{c,ψ} f = (1/φ(c))·Σ_{a mod c, gcd(a,c)=1} ψ(a)·[0]_{a/c} f.
pub fn averaged_constant(oracle: &CuspOracle<'_>, c: u64, psi: &DirichletCharacter) -> Result<CycNumber> {
    averaged_with_cache(oracle, c, psi, &mut HashMap::new())
}

fn averaged_with_cache(
    oracle: &CuspOracle<'_>,
    c: u64,
    psi: &DirichletCharacter,
    cache: &mut HashMap<Cusp, CycNumber>,
) -> Result<CycNumber> {
    if c == 0 {
        return Err(Error::InvalidInput("c must be positive".into()));
    }
    let mut acc = CycNumber::zero();
    for a in 1..=c as i64 {
        if gcd(a, c as i64) != 1 {
            continue;
        }
        let w = psi.eval(a);
        if w.is_zero() {
            continue;
        }
        let cusp = Cusp::new(a, c);
        let v = match cache.get(&cusp) {
            Some(v) => v.clone(),
            None => {
                let v = oracle(cusp)?;
                cache.insert(cusp, v.clone());
                v
            }
        };
        if !v.is_zero() {
            acc += &(w * v);
        }
    }
    Ok(acc.scale(&Rational::new(1.into(), BigInt::from(euler_phi(c)))))
}

/// Π_{p|N} p^k/(p^k − ε(p)ψ̄(p)).
fn prefactor(k: u32, level: u64, eps: &DirichletCharacter, psi: &DirichletCharacter) -> Result<CycNumber> {
    let mut acc = CycNumber::one();
    for p in factorize(level).primes() {
        let pk = CycNumber::from_int(BigInt::from(p).pow(k));
        let ep = &char_at(eps, p) * &char_at(&psi.conj(), p);
        acc = acc * pk.checked_div(&(&pk - &ep))?;
    }
    Ok(acc)
}

/// E_f for f ∈ M_k(Γ0(N), χ) given only its constant terms at cusps.
pub fn project(k: u32, level: u64, chi: &DirichletCharacter, oracle: &CuspOracle<'_>) -> Result<EisCombination> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("weight {k} is not supported; need k ≥ 2")));
    }
    let chi = induce_to_level(chi, level)?;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    if chi.parity() != sign {
        return Err(Error::Parity(format!(
            "{}(-1) = {} but weight {k} needs {sign}",
            chi.label(),
            chi.parity()
        )));
    }
    let mut cache = HashMap::new();
    let mut terms = Vec::new();
    for (eps, psi) in eis_pairs(k, level, &chi)? {
        let m = psi.modulus();
        let nred = level / (eps.modulus() * m);
        let pre = prefactor(k, level, &eps, &psi)?;
        let c1s = divisors(nred);
        let mut averages = Vec::with_capacity(c1s.len());
        for &c1 in &c1s {
            averages.push(averaged_with_cache(oracle, c1 * m, &psi, &mut cache)?);
        }
        for d in divisors(nred) {
            let mut acc = CycNumber::zero();
            for (&c1, avg) in c1s.iter().zip(&averages) {
                if avg.is_zero() {
                    continue;
                }
                let w = r_value(k, &eps, &psi, d, c1) * s_value(k, nred, &eps, &psi, d, c1);
                if !w.is_zero() {
                    acc += &(w * avg);
                }
            }
            terms.push(EisTerm {
                key: EisKey {
                    eps: eps.clone(),
                    psi: psi.clone(),
                    d,
                },
                coeff: &pre * &acc,
            });
        }
    }
    let ld_terms = if k == 2 && chi.is_trivial() {
        Some(weight2_ld_terms(&terms)?)
    } else {
        None
    };
    Ok(EisCombination {
        weight: k,
        level,
        character: chi,
        terms,
        ld_terms,
    })
}

/// c_f(d) = −a_f(χ₁,χ₁,d)/d for d > 1, checking Σ_{d>1} c_f(d) = a_f(χ₁,χ₁,1).
fn weight2_ld_terms(terms: &[EisTerm]) -> Result<Vec<LdTerm>> {
    let e2: Vec<&EisTerm> = terms.iter().filter(|t| t.key.is_e2(2)).collect();
    let mut out = Vec::new();
    let mut total = CycNumber::zero();
    let mut a1 = CycNumber::zero();
    for t in e2 {
        if t.key.d == 1 {
            a1 = t.coeff.clone();
            continue;
        }
        let c = (-t.coeff.clone()).scale(&Rational::new(1.into(), BigInt::from(t.key.d)));
        total += &c;
        out.push(LdTerm { d: t.key.d, coeff: c });
    }
    if total != a1 {
        return Err(Error::Inconsistent(format!(
            "weight-2 coefficients disagree: sum of c_f(d) = {total} but a_f(1) = {a1}"
        )));
    }
    Ok(out)
}

/// f − E_f through the truncation of `f`.
pub fn residual(comb: &EisCombination, f: &QExpansion) -> Result<QExpansion> {
    Ok(f - &comb.to_qexp(f.truncation())?)
}

/// [0]_{a/c} f − [0]_{a/c} E_f at each cusp representative; all zero when the
/// projection is right.
pub fn residual_constants(comb: &EisCombination, oracle: &CuspOracle<'_>) -> Result<Vec<(Cusp, CycNumber)>> {
    representatives(comb.level)
        .into_iter()
        .map(|cusp| Ok((cusp, oracle(cusp)? - comb.constant_at(cusp)?)))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityReport {
    pub weight: u32,
    pub level: u64,
    pub eps: DirichletCharacter,
    pub psi: DirichletCharacter,
    pub cases: usize,
    pub violations: Vec<(u64, u64, CycNumber)>,
}

impl OrthogonalityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks Σ_{t|N} S_N(c,t)·R(c,t)·R(t,d) = δ_{cd}·Π_{p|N}(p^k − ε(p)ψ̄(p))/p^k
/// for all c, d | N.
pub fn orthogonality_check(
    k: u32,
    level: u64,
    eps: &DirichletCharacter,
    psi: &DirichletCharacter,
) -> OrthogonalityReport {
    let divs = divisors(level);
    let mut diag = CycNumber::one();
    for p in factorize(level).primes() {
        let pk = BigInt::from(p).pow(k);
        let ep = &char_at(eps, p) * &char_at(&psi.conj(), p);
        diag = diag * (CycNumber::from_int(pk.clone()) - ep).scale(&Rational::new(1.into(), pk));
    }
    let r: HashMap<(u64, u64), CycNumber> = divs
        .iter()
        .flat_map(|&x| divs.iter().map(move |&y| (x, y)))
        .map(|(x, y)| ((x, y), r_value(k, eps, psi, x, y)))
        .collect();
    let mut violations = Vec::new();
    for &c in &divs {
        let sr: Vec<CycNumber> = divs
            .iter()
            .map(|&t| s_value(k, level, eps, psi, c, t) * r[&(c, t)].clone())
            .collect();
        for &d in &divs {
            let mut sum = CycNumber::zero();
            for (&t, w) in divs.iter().zip(&sr) {
                if !w.is_zero() {
                    sum += &(w * &r[&(t, d)]);
                }
            }
            let want = if c == d { diag.clone() } else { CycNumber::zero() };
            if sum != want {
                violations.push((c, d, sum));
            }
        }
    }
    OrthogonalityReport {
        weight: k,
        level,
        eps: eps.clone(),
        psi: psi.clone(),
        cases: divs.len() * divs.len(),
        violations,
    }
}

/// Every valid (ε, ψ) and weight k with LM | N and the right parity.
pub fn orthogonality_grid(max_level: u64, weights: std::ops::RangeInclusive<u32>) -> Vec<OrthogonalityReport> {
    let mut out = Vec::new();
    for n in 1..=max_level {
        let mut pairs = Vec::new();
        for l in divisors(n) {
            for m in divisors(n / l) {
                for eps in DirichletCharacter::primitive_characters(l) {
                    for psi in DirichletCharacter::primitive_characters(m) {
                        pairs.push((eps.clone(), psi));
                    }
                }
            }
        }
        for k in weights.clone() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            for (eps, psi) in &pairs {
                if eps.parity() * psi.parity() == sign {
                    out.push(orthogonality_check(k, n, eps, psi));
                }
            }
        }
    }
    out
}

/// Sanity helper for callers holding an explicit expansion: the number of
/// leading coefficients on which `a` and `b` agree.
pub fn agreement_length(a: &QExpansion, b: &QExpansion) -> usize {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .take_while(|(x, y)| x == y)
        .count()
}
