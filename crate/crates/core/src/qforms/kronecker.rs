//! Kronecker symbol and the discriminant character χ_D.
//!
//! For a discriminant D < 0 the character χ_D(p) = (D|p) classifies the odd
//! primes: +1 split, −1 inert, 0 ramified (p | D).  At p = 2 the Kronecker
//! extension (D|2) is 0 for even D, +1 for D ≡ ±1 (mod 8), −1 for D ≡ ±3
//! (mod 8).

use crate::primes::is_prime;
use crate::{Error, Result};

/// Kronecker symbol (a|n), the full multiplicative extension of the Jacobi
/// symbol to all integer denominators, with (a|−1) = sign(a) for a ≠ 0 and
/// (a|2) given by the mod-8 rule.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut a = a;
    let mut n = n;
    let mut sign = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            sign = -sign;
        }
    }
    let twos = n.trailing_zeros();
    n >>= twos;
    if twos % 2 == 1 {
        // (a|2)^odd: a is odd here because the both-even case was dispatched.
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => sign = -sign,
            _ => unreachable!("a odd"),
        }
    }
    // Jacobi symbol (a|n) for odd n > 0 by binary reciprocity.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// χ_D(p) = (D|p) for a prime p: +1 split, −1 inert, 0 ramified.
///
/// Errors on composite p; callers iterating over sieve output should use
/// [`kronecker`] directly and skip the primality re-check.
pub fn chi_d(d: i64, p: i64) -> Result<i32> {
    if p < 2 || !is_prime(p as u64) {
        return Err(Error::NotPrime(p));
    }
    Ok(kronecker(d, p))
}
