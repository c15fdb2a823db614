//! Elementary integer functions: factorization, divisors, Möbius, Euler phi,
//! p-adic valuation and the Kronecker symbol.
//!
//! Everything here is trial-division based. Inputs are levels, conductors and
//! their divisors, so nothing larger than about 10⁶ is expected.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    /// Multiplies the factors back together.
    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }
}

pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize: n must be positive");
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    Factorization(out)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let f = factorize(n);
    f.0.len() == 1 && f.0[0].1 == 1
}

/// All positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for &(p, e) in factorize(n).pairs() {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if !f.is_squarefree() {
        return 0;
    }
    if f.0.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .pairs()
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// Exponent of the prime `p` in `n`.
pub fn vp(p: u64, n: i64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Domain("p-adic valuation of 0 is undefined".into()));
    }
    if p < 2 {
        return Err(Error::Domain(format!("vp: {p} is not a prime")));
    }
    let mut m = n.unsigned_abs();
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    Ok(e)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Index of Γ0(N) in SL₂(ℤ): N·∏_{p | N}(1 + 1/p).
pub fn gamma0_index(n: u64) -> u64 {
    factorize(n)
        .pairs()
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p + 1))
        .product()
}

/// The Kronecker symbol (d | n), extended to n = 0, n < 0 and even n.
pub fn kronecker(d: i64, n: i64) -> i64 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if d < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    n >>= twos;
    if twos > 0 {
        if d % 2 == 0 {
            return 0;
        }
        // (d | 2) = 1 if d ≡ ±1 mod 8, −1 if d ≡ ±3 mod 8
        let r = d.rem_euclid(8);
        if (r == 3 || r == 5) && twos % 2 == 1 {
            result = -result;
        }
    }
    result * jacobi(d, n)
}

/// Jacobi symbol (a | n) for odd positive n.
fn jacobi(a: i64, n: i64) -> i64 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Splits a positive integer as `n = m²·s` with `s` squarefree; returns `(m, s)`.
pub fn square_split(n: u64) -> (u64, u64) {
    assert!(n >= 1);
    let mut m = 1;
    let mut s = 1;
    for &(p, e) in factorize(n).pairs() {
        m *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
    }
    (m, s)
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    if d == 0 {
        return false;
    }
    let a = d.unsigned_abs();
    match d.rem_euclid(4) {
        1 => factorize(a).is_squarefree(),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && factorize(m.unsigned_abs()).is_squarefree()
        }
        _ => false,
    }
}

/// Discriminant of ℚ(√D) for a nonzero integer D (1 when D is a square).
pub fn fundamental_discriminant(d: i64) -> i64 {
    assert!(d != 0, "fundamental_discriminant of 0");
    let (_, s) = square_split(d.unsigned_abs());
    let core = if d < 0 { -(s as i64) } else { s as i64 };
    if core.rem_euclid(4) == 1 {
        core
    } else {
        4 * core
    }
}

/// Modular exponentiation for small moduli.
pub fn pow_mod(base: u64, exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut result: u128 = 1;
    let mut b = base as u128 % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let m = m.abs();
    if m == 1 {
        return Some(0);
    }
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}
