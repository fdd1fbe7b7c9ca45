//! Small-integer number theory: primality, factoring, Kronecker symbols, CRT.

use alloc::vec;
use alloc::vec::Vec;
use num_integer::{Integer, Roots};

use crate::error::{Error, Result};

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0u32);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_square_free(n: u64) -> bool {
    n > 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(mut n: i128, p: u64) -> u32 {
    debug_assert!(n != 0);
    let p = p as i128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Kronecker symbol `(a / p)` for a prime `p`.
pub fn kronecker(a: i64, p: u64) -> Result<i8> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        });
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// Returns `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = Integer::div_floor(&r0, &r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn inv_mod(a: i64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    (g == 1).then(|| x.rem_euclid(m as i128) as u64)
}

/// Combine residues `x = r_i (mod m_i)` for pairwise coprime moduli.
pub fn crt(parts: &[(i64, u64)]) -> (u64, u64) {
    let mut x: i128 = 0;
    let mut m: i128 = 1;
    for &(r, mi) in parts {
        let mi = mi as i128;
        let (_, u, _) = ext_gcd(m, mi);
        // x + m*k = r (mod mi)
        let k = ((r as i128 - x) * u).rem_euclid(mi);
        x += m * k;
        m *= mi;
        x = x.rem_euclid(m);
    }
    (x as u64, m as u64)
}

pub fn isqrt(n: u64) -> u64 {
    n.sqrt()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// All primes `<= bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &p)| p.then_some(k as u64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_values() {
        assert_eq!(kronecker(-4, 5).unwrap(), 1);
        assert_eq!(kronecker(-3, 2).unwrap(), -1);
        assert_eq!(kronecker(-20, 5).unwrap(), 0);
        assert_eq!(kronecker(-7, 2).unwrap(), 1);
        assert_eq!(kronecker(-4, 2).unwrap(), 0);
        assert_eq!(kronecker(-4, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn kronecker_matches_euler_criterion_by_search() {
        for p in primes_up_to(200).into_iter().filter(|&p| p > 2) {
            for a in -60i64..60 {
                let r = a.rem_euclid(p as i64) as u64;
                let expected = if r == 0 {
                    0
                } else if (1..p).any(|x| x * x % p == r) {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(a, p).unwrap(), expected, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn primality_and_factoring() {
        let primes = primes_up_to(1000);
        for n in 0..1000u64 {
            assert_eq!(is_prime(n), primes.contains(&n));
        }
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert!(is_square_free(30));
        assert!(!is_square_free(12));
    }

    #[test]
    fn crt_and_inverse() {
        let (x, m) = crt(&[(2, 3), (3, 5), (2, 7)]);
        assert_eq!((x, m), (23, 105));
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(6, 9), None);
        let (g, a, b) = ext_gcd(240, 46);
        assert_eq!(g, 2);
        assert_eq!(240 * a + 46 * b, 2);
    }
}
