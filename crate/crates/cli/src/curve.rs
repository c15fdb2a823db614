//! Point counts on E: y² + y = x³ − 7 over prime fields.

use modform::numtheory::is_prime;
use modform::{Error, Result};

/// #E(F_p) including the point at infinity, by a double loop over F_p².
pub fn count_points_e27a(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if p == 3 {
        return Err(Error::InvalidInput("E27A has bad reduction at 3".into()));
    }
    let seven = 7 % p;
    let mut count = 1;
    for x in 0..p {
        let rhs = (x * x % p * x % p + p - seven) % p;
        for y in 0..p {
            if (y * y + y) % p == rhs {
                count += 1;
            }
        }
    }
    Ok(count)
}
