//! Elementary arithmetic utilities: gcd, modular arithmetic, deterministic
//! primality for `u64`, Eratosthenes and segmented sieves, trial-division
//! factorization, and squarefree kernels.

/// Greatest common divisor of `|a|` and `|b|`; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended gcd: returns `(g, u, v)` with `u*a + v*b = g = gcd(a, b)`, g >= 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return if a < 0 { (-a, -1, 0) } else { (a, 1, 0) };
    }
    let (g, u, v) = ext_gcd(b, a % b);
    (g, v, u - (a / b) * v)
}

/// Extended gcd of three arguments: `(g, u, v, w)` with `u*a + v*b + w*c = g`.
pub fn ext_gcd3(a: i64, b: i64, c: i64) -> (i64, i64, i64, i64) {
    let (d, u0, v0) = ext_gcd(a, b);
    let (g, x, w) = ext_gcd(d, c);
    (g, x * u0, x * v0, w)
}

/// Floor of the integer square root.
pub fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r > 0 && r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a^e mod m` by binary exponentiation.
pub fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for `u64` (the 12 smallest prime bases cover
/// the full range).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `<= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity(if n > 16 { n / (n.ilog2() as usize) } else { 8 });
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

/// Visits every prime in `[lo, hi)` in increasing order using an
/// Eratosthenes sieve on fixed-size segments; memory is `O(sqrt(hi))`.
pub fn segmented_primes(lo: u64, hi: u64, mut visit: impl FnMut(u64)) {
    if hi <= lo {
        return;
    }
    let root = (hi as f64).sqrt() as u64 + 2;
    let base = primes_up_to(root);
    const SEG: u64 = 1 << 18;
    let mut start = lo.max(2);
    let mut marks = vec![false; SEG as usize];
    while start < hi {
        let end = (start + SEG).min(hi);
        let len = (end - start) as usize;
        marks[..len].fill(false);
        for &p in &base {
            if p * p >= end {
                break;
            }
            let mut q = (start + p - 1) / p * p;
            if q < p * p {
                q = p * p;
            }
            while q < end {
                marks[(q - start) as usize] = true;
                q += p;
            }
        }
        for i in 0..len {
            if !marks[i] {
                visit(start + i as u64);
            }
        }
        start = end;
    }
}

/// Prime factorization of `n > 0` by trial division, as `(p, exponent)`
/// pairs in increasing `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        if *n % p == 0 {
            let mut e = 0;
            while *n % p == 0 {
                *n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5;
    while p * p <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// True iff `n > 0` has no repeated prime factor.
pub fn is_squarefree(n: u64) -> bool {
    n > 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Squarefree kernel of a nonzero integer, keeping the sign: the product of
/// the primes with odd exponent, negated when `n < 0`.
pub fn squarefree_kernel(n: i64) -> i64 {
    assert!(n != 0, "squarefree kernel of 0 is undefined");
    let mut k: i64 = if n < 0 { -1 } else { 1 };
    for (p, e) in factorize(n.unsigned_abs()) {
        if e % 2 == 1 {
            k *= p as i64;
        }
    }
    k
}


/// Square root of `n` modulo an odd prime `p` by Tonelli–Shanks; `None` when
/// `n` is a non-residue.
pub fn sqrt_mod_prime(n: u64, p: u64) -> Option<u64> {
    debug_assert!(p >= 3 && p % 2 == 1);
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if powmod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(powmod(n, (p + 1) / 4, p));
    }
    // p ≡ 1 (mod 4): write p−1 = q·2^s with q odd and walk the 2-Sylow tower.
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(n, q, p);
    let mut r = powmod(n, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulmod(t2, t2, p);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

/// Euler's totient by trial-division factorization.
pub fn euler_phi(n: u64) -> u64 {
    let mut r = n;
    for (p, _) in factorize(n) {
        r = r / p * (p - 1);
    }
    r
}
