//! 2x2 matrices over `Z/nZ`.

use core::fmt;

use crate::arith::{gcd, inv_mod, mul_mod};
use crate::error::{Error, Result};

/// Row-major `[[a, b], [c, d]]` with entries in `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatModN {
    pub n: u64,
    pub e: [u64; 4],
}

impl MatModN {
    pub fn new(n: u64, a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |x: i64| x.rem_euclid(n as i64) as u64;
        MatModN { n, e: [r(a), r(b), r(c), r(d)] }
    }

    pub fn from_rows(n: u64, m: [[i64; 2]; 2]) -> Self {
        MatModN::new(n, m[0][0], m[0][1], m[1][0], m[1][1])
    }

    pub fn identity(n: u64) -> Self {
        MatModN::new(n, 1, 0, 0, 1)
    }

    pub fn scalar(n: u64, k: i64) -> Self {
        MatModN::new(n, k, 0, 0, k)
    }

    pub fn a(&self) -> u64 {
        self.e[0]
    }
    pub fn b(&self) -> u64 {
        self.e[1]
    }
    pub fn c(&self) -> u64 {
        self.e[2]
    }
    pub fn d(&self) -> u64 {
        self.e[3]
    }

    pub fn rows(&self) -> [[u64; 2]; 2] {
        [[self.e[0], self.e[1]], [self.e[2], self.e[3]]]
    }

    pub fn det(&self) -> u64 {
        let n = self.n;
        let ad = mul_mod(self.e[0], self.e[3], n);
        let bc = mul_mod(self.e[1], self.e[2], n);
        (ad + n - bc) % n
    }

    pub fn is_invertible(&self) -> bool {
        gcd(self.det() as i64, self.n as i64) == 1
    }

    pub fn mul(&self, o: &MatModN) -> MatModN {
        assert_eq!(self.n, o.n, "moduli differ");
        let n = self.n;
        let m = |x: u64, y: u64| mul_mod(x, y, n);
        let [a, b, c, d] = self.e;
        let [p, q, r, s] = o.e;
        MatModN {
            n,
            e: [
                (m(a, p) + m(b, r)) % n,
                (m(a, q) + m(b, s)) % n,
                (m(c, p) + m(d, r)) % n,
                (m(c, q) + m(d, s)) % n,
            ],
        }
    }

    pub fn neg(&self) -> MatModN {
        let n = self.n;
        MatModN { n, e: self.e.map(|x| (n - x) % n) }
    }

    pub fn transpose(&self) -> MatModN {
        MatModN { n: self.n, e: [self.e[0], self.e[2], self.e[1], self.e[3]] }
    }

    pub fn inverse(&self) -> Result<MatModN> {
        let n = self.n;
        let di = inv_mod(self.det() as i64, n).ok_or(Error::Singular { n })?;
        let [a, b, c, d] = self.e.map(|x| x as i64);
        let k = di as i64;
        Ok(MatModN::new(n, d * k % n as i64, -b * k % n as i64, -c * k % n as i64, a * k % n as i64))
    }

    pub fn pow(&self, mut k: u64) -> MatModN {
        let mut acc = MatModN::identity(self.n);
        let mut base = *self;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Reduce to a divisor `m` of the modulus.
    pub fn reduce(&self, m: u64) -> MatModN {
        assert_eq!(self.n % m, 0, "{m} does not divide {}", self.n);
        MatModN { n: m, e: self.e.map(|x| x % m) }
    }

    /// Signed entries in `(-n/2, n/2]`.
    pub fn centered(&self) -> [[i64; 2]; 2] {
        let n = self.n as i64;
        let c = |x: u64| {
            let x = x as i64;
            if 2 * x > n {
                x - n
            } else {
                x
            }
        };
        [[c(self.e[0]), c(self.e[1])], [c(self.e[2]), c(self.e[3])]]
    }
}

impl fmt::Display for MatModN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.e[0], self.e[1], self.e[2], self.e[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_power() {
        let m = MatModN::new(9, 8, 7, 1, 0);
        assert_eq!(m.det(), 2);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), MatModN::identity(9));
        assert_eq!(MatModN::scalar(9, 4).pow(3), MatModN::identity(9));
        assert!(MatModN::new(4, 2, 0, 0, 1).inverse().is_err());
        assert_eq!(MatModN::new(25, 2, 1, 0, 1).reduce(5), MatModN::new(5, 2, 1, 0, 1));
    }
}
