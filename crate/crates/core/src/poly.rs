//! Exact integer polynomials: resultants, discriminants and best-effort
//! factorization of the discriminant.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::primes_up_to;
use crate::error::{Error, Result};

/// Monic integer polynomial, coefficients stored in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyZ {
    coeffs: Vec<BigInt>,
}

impl PolyZ {
    /// From coefficients in descending degree order, leading 1 first.
    pub fn from_descending<T: Into<BigInt> + Clone>(desc: &[T]) -> Result<Self> {
        let coeffs: Vec<BigInt> = desc.iter().rev().cloned().map(Into::into).collect();
        PolyZ::from_ascending(coeffs)
    }

    pub fn from_ascending(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() < 2 || !coeffs.last().is_some_and(|c| c.is_one()) {
            return Err(Error::Precondition("polynomial must be monic of degree >= 1".into()));
        }
        Ok(PolyZ { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ascending(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn descending(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Coefficient of `X^k`.
    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn constant(&self) -> &BigInt {
        &self.coeffs[0]
    }

    /// Coefficients reduced into `[0, p)`, ascending.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let m = BigInt::from(p);
        self.coeffs.iter().map(|c| c.mod_floor(&m).to_u64().unwrap()).collect()
    }

    pub fn derivative(&self) -> Vec<BigInt> {
        self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k).collect()
    }

    pub fn is_palindromic_up_to_sign(&self) -> bool {
        let n = self.coeffs.len();
        let same = (0..n).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k]);
        let anti = (0..n).all(|k| self.coeffs[k] == -&self.coeffs[n - 1 - k]);
        same || anti
    }
}

impl fmt::Display for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for k in (0..=n).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = !mag.is_one() || k == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{k}")?,
            }
        }
        Ok(())
    }
}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn deg(p: &[BigInt]) -> usize {
    p.len() - 1
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// `lc(b)^(deg a - deg b + 1) a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = deg(b);
    let lb = &b[db];
    let mut steps = deg(a) + 1 - db;
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = lb.pow(steps as u32);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Resultant by the subresultant algorithm.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let (ca, cb) = (content(&a), content(&b));
    for c in a.iter_mut() {
        *c /= &ca;
    }
    for c in b.iter_mut() {
        *c /= &cb;
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    let mut s = BigInt::one();
    let t = ca.pow(deg(&b) as u32) * cb.pow(deg(&a) as u32);
    if deg(&a) < deg(&b) {
        core::mem::swap(&mut a, &mut b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
    }
    loop {
        if deg(&b) == 0 {
            let da = deg(&a) as u32;
            let lb = b[0].clone();
            let h = if da == 0 { BigInt::one() } else { lb.pow(da) / h.pow(da - 1) };
            return s * t * h;
        }
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        a = b;
        let div = &g * h.pow(delta as u32);
        b = r.into_iter().map(|c| c / &div).collect();
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32) / h.pow(delta as u32 - 1)
        };
    }
}

/// `(-1)^{n(n-1)/2} Res(f, f')` for monic `f`.
pub fn discriminant(p: &PolyZ) -> BigInt {
    let n = p.degree();
    let r = resultant(p.ascending(), &p.derivative());
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Constant coefficient is `+-1`.
pub fn unit_check(p: &PolyZ) -> bool {
    p.constant().abs().is_one()
}

/// Trial-division factorization with a perfect-power test on the cofactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub negative: bool,
    pub primes: Vec<(u64, u32)>,
    /// Unfactored part `base^exponent`, if any.
    pub cofactor: Option<(BigInt, u32)>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_none()
    }

    pub fn primes_only(&self) -> Vec<u64> {
        self.primes.iter().map(|&(p, _)| p).collect()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .primes
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { alloc::format!("{p}^{e}") })
            .collect();
        if let Some((b, e)) = &self.cofactor {
            parts.push(if *e == 1 { b.to_string() } else { alloc::format!("{b}^{e}") });
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        if self.negative {
            write!(f, "-")?;
        }
        write!(f, "{}", parts.join(" * "))
    }
}

pub fn factor(n: &BigInt, trial_bound: u64) -> Factorization {
    let negative = n.is_negative();
    let mut m: BigUint = n.magnitude().clone();
    let mut primes = Vec::new();
    if m.is_zero() {
        return Factorization { negative, primes, cofactor: Some((BigInt::zero(), 1)) };
    }
    for p in primes_up_to(trial_bound) {
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            primes.push((p, e));
        }
    }
    let mut cofactor = None;
    if !m.is_one() {
        if m <= BigUint::from(trial_bound) * BigUint::from(trial_bound) {
            let p = m.to_u64().expect("cofactor below trial bound squared");
            primes.push((p, 1));
            primes.sort();
        } else {
            let (base, e) = perfect_power(&m);
            cofactor = Some((BigInt::from(base), e));
        }
    }
    Factorization { negative, primes, cofactor }
}

/// Largest `e` with `m = b^e`.
fn perfect_power(m: &BigUint) -> (BigUint, u32) {
    let bits = m.bits() as u32;
    for e in (2..=bits).rev() {
        let r = m.nth_root(e);
        if r.pow(e) == *m && r > BigUint::one() {
            return (r, e);
        }
    }
    (m.clone(), 1)
}

/// Evaluate at an integer, for tests.
pub fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// `(X - r_1)...(X - r_n)` exactly.
pub fn from_roots(roots: &[i64]) -> PolyZ {
    let mut c = vec![BigInt::one()];
    for &r in roots {
        let mut next = vec![BigInt::zero(); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        c = next;
    }
    PolyZ { coeffs: c }
}
