//! Exact roots of unity `e^{i pi x}` with rational `x` kept modulo 2.

use core::ops::{Add, Mul, Neg};

use num_rational::Ratio;
use num_traits::Zero;

use crate::mp::{Complex, PrecisionContext};

pub type Q = Ratio<i64>;

/// `e^{i pi x}`, with `x` normalized into `[0, 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase(Q);

impl Phase {
    pub fn new(x: Q) -> Self {
        let two = Q::from_integer(2);
        let mut r = x % two;
        if r < Q::zero() {
            r += two;
        }
        Phase(r)
    }

    pub fn one() -> Self {
        Phase(Q::zero())
    }

    pub fn minus_one() -> Self {
        Phase(Q::from_integer(1))
    }

    /// Exponent `x` in `[0, 2)`.
    pub fn angle(&self) -> Q {
        self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    pub fn pow(&self, k: i64) -> Self {
        Phase::new(self.0 * k)
    }

    pub fn to_complex(&self, ctx: &PrecisionContext) -> Complex {
        ctx.cis_pi(&self.0)
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase::new(self.0 + rhs.0)
    }
}

impl Add<Q> for Phase {
    type Output = Phase;
    fn add(self, rhs: Q) -> Phase {
        Phase::new(self.0 + rhs)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::new(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_mod_two() {
        assert_eq!(Phase::new(Q::new(-1, 2)).angle(), Q::new(3, 2));
        assert_eq!(Phase::new(Q::new(9, 4)).angle(), Q::new(1, 4));
        assert!(Phase::new(Q::from_integer(-4)).is_one());
        assert_eq!(Phase::minus_one() * Phase::minus_one(), Phase::one());
        assert_eq!(Phase::new(Q::new(1, 3)).pow(6), Phase::one());
    }
}
