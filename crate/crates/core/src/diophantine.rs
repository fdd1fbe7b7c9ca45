//! Primes of the form `x^2 + n y^2` with `x = 1`, `y = 0 (mod N)`.
//!
//! The criterion reads off representability from the Kronecker symbol and a root
//! of a real generator's minimal polynomial mod `p`; a brute-force search is kept
//! alongside as an independent oracle.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{inv_mod, is_prime, is_square_free, isqrt, kronecker, mul_mod, primes_up_to};
use crate::error::{Error, Result};
use crate::poly::{discriminant, PolyZ};

#[derive(Clone, Debug)]
pub struct DiophQuery<'a> {
    pub n: u64,
    pub modulus: u64,
    pub f: &'a PolyZ,
    pub p: u64,
}

/// A criterion with `disc(f_N)` computed once.
#[derive(Clone, Debug)]
pub struct Criterion {
    pub n: u64,
    pub modulus: u64,
    pub f: PolyZ,
    pub disc: BigInt,
}

impl Criterion {
    pub fn new(n: u64, modulus: u64, f: PolyZ) -> Result<Self> {
        if n == 0 || !is_square_free(n) {
            return Err(Error::NotSquareFree(n as i64));
        }
        if n % 4 != 1 && n % 4 != 2 {
            return Err(Error::Precondition(alloc::format!("-{n} must be 2 or 3 mod 4")));
        }
        if modulus == 0 {
            return Err(Error::ModulusTooSmall(modulus));
        }
        let disc = discriminant(&f);
        Ok(Criterion { n, modulus, f, disc })
    }

    /// Why `p` is outside the criterion, if it is.
    pub fn exclusion(&self, p: u64) -> Option<&'static str> {
        if p.is_multiple_of(2) {
            Some("even")
        } else if (self.n * self.modulus).is_multiple_of(p) {
            Some("divides nN")
        } else if (&self.disc % BigInt::from(p)).is_zero() {
            Some("divides disc(f_N)")
        } else {
            None
        }
    }

    pub fn check(&self, p: u64) -> Result<bool> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if let Some(reason) = self.exclusion(p) {
            return Err(Error::PreconditionExcluded { p, reason });
        }
        Ok(kronecker(-(self.n as i64), p)? == 1 && root_mod_p(&self.f, p).is_some())
    }
}

pub fn criterion(q: &DiophQuery<'_>) -> Result<bool> {
    Criterion::new(q.n, q.modulus, q.f.clone())?.check(q.p)
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db] as i64, p).expect("nonzero leading coefficient");
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + p - mul_mod(c, bi, p)) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    poly_rem(&out, m, p)
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead as i64, p).unwrap();
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

fn sub_x(a: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    if r.len() < 2 {
        r.resize(2, 0);
    }
    r[1] = (r[1] + p - 1) % p;
    trim(&mut r);
    r
}

/// Split a monic product of distinct linear factors until one root is exposed.
fn split_root(g: Vec<u64>, p: u64) -> u64 {
    let mut g = g;
    let mut shift = 0u64;
    while g.len() > 2 {
        // gcd(g, (X + shift)^((p-1)/2) - 1) separates residues from non-residues
        let mut h = poly_powmod(&[shift, 1], (p - 1) / 2, &g, p);
        if h.is_empty() {
            h.push(0);
        }
        h[0] = (h[0] + p - 1) % p;
        let d = poly_gcd(&g, &h, p);
        if d.len() > 1 && d.len() < g.len() {
            g = d;
        }
        shift += 1;
    }
    (p - g[0]) % p
}

fn scan_root(f: &[u64], p: u64) -> Option<u64> {
    (0..p).find(|&x| f.iter().rev().fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p) == 0)
}

/// Root of `f` mod `p` via `gcd(X^p - X, f)` and equal-degree splitting.
pub fn root_mod_p_gcd(f: &PolyZ, p: u64) -> Option<u64> {
    let mut fp = f.reduce_mod(p);
    trim(&mut fp);
    if fp.len() <= 1 {
        return if fp.is_empty() { Some(0) } else { None };
    }
    if fp[0] == 0 {
        return Some(0);
    }
    let xp = poly_powmod(&[0, 1], p, &fp, p);
    let g = poly_gcd(&fp, &sub_x(&xp, p), p);
    if g.len() < 2 {
        return None;
    }
    Some(split_root(g, p))
}

/// Some root of `f` in `[0, p)`, if one exists.
pub fn root_mod_p(f: &PolyZ, p: u64) -> Option<u64> {
    if p < 1_000_000 {
        let mut fp = f.reduce_mod(p);
        trim(&mut fp);
        if fp.is_empty() {
            return Some(0);
        }
        scan_root(&fp, p)
    } else {
        root_mod_p_gcd(f, p)
    }
}

/// First `(x, y)` in `(|y|, |x|)` order with `x^2 + n y^2 = p`, `x = 1`, `y = 0 (mod N)`.
pub fn brute_force_representation(n: u64, modulus: u64, p: u64) -> Option<(i64, u64)> {
    let m = modulus as i64;
    let mut y = 0u64;
    while n * y * y <= p {
        if y.is_multiple_of(modulus) {
            let rest = p - n * y * y;
            let x = isqrt(rest);
            if x * x == rest {
                let x = x as i64;
                let lifts = if x == 0 { vec![0] } else { vec![x, -x] };
                if let Some(&x) = lifts.iter().find(|&&x| (x - 1).rem_euclid(m.max(1)) == 0) {
                    return Some((x, y));
                }
            }
        }
        y += 1;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub p: u64,
    pub criterion: bool,
    pub representation: Option<(i64, u64)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiophReport {
    pub n: u64,
    pub modulus: u64,
    pub prime_bound: u64,
    /// Odd primes up to the bound dividing `disc(f_N)` but not `nN`.
    pub disc_excluded_primes: Vec<u64>,
    /// Odd primes up to the bound dividing `nN`.
    pub modulus_excluded_primes: Vec<u64>,
    pub checked: u64,
    pub representable: u64,
    pub mismatches: Vec<Mismatch>,
}

pub fn compare_prime(c: &Criterion, p: u64) -> Result<(bool, Option<(i64, u64)>)> {
    let crit = c.check(p)?;
    Ok((crit, brute_force_representation(c.n, c.modulus, p)))
}

/// Assemble a report from per-prime outcomes listed in increasing `p`.
/// Criterion value and brute-force representation of one prime; `None` when excluded.
pub type PrimeOutcome = (u64, Option<(bool, Option<(i64, u64)>)>);

pub fn assemble_report(c: &Criterion, bound: u64, outcomes: &[PrimeOutcome]) -> DiophReport {
    let mut rep = DiophReport { n: c.n, modulus: c.modulus, prime_bound: bound, ..Default::default() };
    for &(p, ref out) in outcomes {
        match out {
            None => {
                if (c.n * c.modulus).is_multiple_of(p) {
                    rep.modulus_excluded_primes.push(p);
                } else {
                    rep.disc_excluded_primes.push(p);
                }
            }
            Some((crit, repr)) => {
                rep.checked += 1;
                if repr.is_some() {
                    rep.representable += 1;
                }
                if *crit != repr.is_some() {
                    rep.mismatches.push(Mismatch { p, criterion: *crit, representation: *repr });
                }
            }
        }
    }
    rep
}

/// Odd primes up to `bound`.
pub fn odd_primes(bound: u64) -> Vec<u64> {
    primes_up_to(bound).into_iter().filter(|&p| p != 2).collect()
}

pub fn cross_validate(c: &Criterion, bound: u64) -> DiophReport {
    let outcomes: Vec<_> = odd_primes(bound)
        .into_iter()
        .map(|p| (p, compare_prime(c, p).ok()))
        .collect();
    assemble_report(c, bound, &outcomes)
}

/// Primes dividing `disc(f_N)` found by trial division up to `bound`.
pub fn small_disc_primes(c: &Criterion, bound: u64) -> Vec<u64> {
    odd_primes(bound)
        .into_iter()
        .filter(|&p| (&c.disc % BigInt::from(p)).is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> PolyZ {
        PolyZ::from_descending(&[1i64, 16, -12, 16, 38, -16, -12, -16, 1]).unwrap()
    }

    #[test]
    fn roots_mod_p() {
        let f = PolyZ::from_descending(&[1i64, 0, 1]).unwrap();
        let r = root_mod_p(&f, 5).unwrap();
        assert_eq!((r * r + 1) % 5, 0);
        assert_eq!(root_mod_p(&f, 7), None);
        for p in odd_primes(2000) {
            let a = root_mod_p(&f4(), p).is_some();
            let b = root_mod_p_gcd(&f4(), p);
            assert_eq!(a, b.is_some(), "p = {p}");
            if let Some(x) = b {
                let fp = f4().reduce_mod(p);
                assert_eq!(fp.iter().rev().fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p), 0);
            }
        }
        assert!(root_mod_p_gcd(&f, 1_000_003).is_none());
        let r = root_mod_p(&f, 1_000_033).unwrap();
        assert_eq!(mul_mod(r, r, 1_000_033), 1_000_032);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_representation(5, 4, 521), Some((21, 4)));
        assert_eq!(brute_force_representation(1, 9, 5), None);
        assert_eq!(brute_force_representation(5, 4, 3), None);
        assert_eq!(brute_force_representation(5, 4, 7), None);
        // x may be a negative lift: 3^2 + 5 * 4^2 = 89 with x = -3 = 1 mod 4
        assert_eq!(brute_force_representation(5, 4, 89), Some((-3, 4)));
    }

    #[test]
    fn criterion_examples() {
        let c = Criterion::new(5, 4, f4()).unwrap();
        assert!(c.check(521).unwrap());
        assert!(!c.check(7).unwrap());
        assert!(matches!(c.check(5), Err(Error::PreconditionExcluded { .. })));
        assert!(Criterion::new(3, 4, f4()).is_err());
        let rep = cross_validate(&c, 2);
        assert_eq!((rep.checked, rep.mismatches.len()), (0, 0));
        let rep = cross_validate(&c, 3000);
        assert!(rep.mismatches.is_empty());
        assert!(rep.representable > 0);
        assert_eq!(rep.modulus_excluded_primes, [5]);
    }
}
