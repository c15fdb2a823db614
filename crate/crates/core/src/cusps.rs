//! Cusps of Γ0(N): representatives and equivalence.

use serde::Serialize;

use crate::numtheory::{divisors, gcd, inv_mod};

/// A reduced fraction a/c with c ≥ 0; 1/0 stands for i∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cusp {
    pub a: i64,
    pub c: u64,
}

impl Cusp {
    pub fn new(a: i64, c: u64) -> Self {
        assert!(
            gcd(a, c as i64) == 1,
            "cusp {a}/{c} is not a reduced fraction"
        );
        Cusp { a, c }
    }
}

impl std::fmt::Display for Cusp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.a, self.c)
    }
}

/// One representative a/c per Γ0(N)-class: for each c | N, the smallest
/// positive a in every unit class mod gcd(c, N/c) that is coprime to c.
pub fn representatives(level: u64) -> Vec<Cusp> {
    let mut out = Vec::new();
    for c in divisors(level) {
        let g = gcd(c as i64, (level / c) as i64);
        let mut seen = vec![false; g as usize];
        for a in 1..=(c as i64 * g) {
            if gcd(a, c as i64) != 1 {
                continue;
            }
            let r = (a % g) as usize;
            if gcd(r as i64, g) == 1 && !seen[r] {
                seen[r] = true;
                out.push(Cusp::new(a, c));
            }
        }
    }
    out
}

/// Whether x and y lie in the same Γ0(N)-orbit.
///
/// With s_i·a_i ≡ 1 (mod c_i), the cusps are equivalent iff
/// s₁·c₂ ≡ s₂·c₁ (mod gcd(c₁c₂, N)).
pub fn equivalent(x: Cusp, y: Cusp, level: u64) -> bool {
    let n = level as i64;
    let (c1, c2) = (x.c as i64, y.c as i64);
    let s1 = inv_or_zero(x.a, c1);
    let s2 = inv_or_zero(y.a, c2);
    let g = gcd(c1 * c2, n);
    (s1 * c2 - s2 * c1).rem_euclid(g) == 0
}

fn inv_or_zero(a: i64, c: i64) -> i64 {
    if c == 0 {
        // a = ±1 and the congruence is vacuous
        return a.signum();
    }
    inv_mod(a, c).expect("reduced cusp")
}

/// The representative from [`representatives`] equivalent to x.
pub fn canonical(x: Cusp, level: u64) -> Cusp {
    representatives(level)
        .into_iter()
        .find(|&r| equivalent(x, r, level))
        .expect("every cusp has a representative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::euler_phi;

    /// Search γ ∈ Γ0(N) with entries bounded by `bound` and γ·x = y.
    fn brute_equivalent(x: Cusp, y: Cusp, n: i64, bound: i64) -> bool {
        let (a, c) = (x.a, x.c as i64);
        for sign in [1i64, -1] {
            let (a2, c2) = (sign * y.a, sign * y.c as i64);
            for g in -bound..=bound {
                if (c2 - n * g * a) % c != 0 {
                    continue;
                }
                let d = (c2 - n * g * a) / c;
                // α·a + β·c = a2 and α·d − β·N·g = 1, determinant −c2
                let det = -(n * g * a) - c * d;
                if det == 0 {
                    continue;
                }
                let an = -a2 * n * g - c;
                let bn = a - d * a2;
                if an % det == 0 && bn % det == 0 {
                    let (al, be) = (an / det, bn / det);
                    if al * a + be * c == a2 && al * d - be * n * g == 1 {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn level_24_representatives() {
        let reps = representatives(24);
        let want: Vec<Cusp> = [1, 2, 3, 4, 6, 8, 12, 24]
            .iter()
            .map(|&c| Cusp::new(1, c))
            .collect();
        assert_eq!(reps, want);
        assert_eq!(representatives(1).len(), 1);
        assert_eq!(representatives(12).len(), 6);
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(Cusp::new(1, 24), Cusp::new(5, 24), 24));
        assert!(!equivalent(Cusp::new(1, 2), Cusp::new(1, 3), 24));
        for n in 1..=30 {
            assert!(equivalent(Cusp::new(1, 1), Cusp::new(0, 1), n));
            assert!(equivalent(Cusp::new(1, n), Cusp::new(1, 0), n));
        }
    }

    #[test]
    fn counts() {
        for n in 1..=120u64 {
            let want: u64 = divisors(n)
                .into_iter()
                .map(|c| euler_phi(gcd(c as i64, (n / c) as i64) as u64))
                .sum();
            assert_eq!(representatives(n).len() as u64, want, "N = {n}");
        }
    }

    #[test]
    fn criterion_matches_matrix_search() {
        for n in [4u64, 8, 9, 12, 16, 18, 24, 27] {
            let cusps: Vec<Cusp> = divisors(n)
                .into_iter()
                .flat_map(|c| {
                    (1..=c as i64)
                        .filter(move |&a| gcd(a, c as i64) == 1)
                        .map(move |a| Cusp::new(a, c))
                })
                .collect();
            for &x in &cusps {
                for &y in &cusps {
                    assert_eq!(
                        equivalent(x, y, n),
                        brute_equivalent(x, y, n as i64, 2000),
                        "N={n} {x} {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn representatives_partition() {
        for n in 1..=60u64 {
            let reps = representatives(n);
            for (i, &x) in reps.iter().enumerate() {
                for &y in &reps[i + 1..] {
                    assert!(!equivalent(x, y, n), "N={n}: {x} ~ {y}");
                }
            }
            for c in divisors(n) {
                for a in 1..=c as i64 {
                    if gcd(a, c as i64) == 1 {
                        let x = Cusp::new(a, c);
                        let hits = reps.iter().filter(|&&r| equivalent(x, r, n)).count();
                        assert_eq!(hits, 1, "N={n} {x}");
                    }
                }
            }
        }
    }
}
