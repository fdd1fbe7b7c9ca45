//! Named families of invariants and the level at which their conjugates are computed.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{beta_of_lemma, AlgebraicIntegerZTheta, RayModulus};
use crate::siegel::{m_exponent_theorem51, m_exponent_theorem62, modularity_check, IndexVector, InvariantSpec, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvariantKind {
    /// `g_{(s/N, t/N)}(theta)^{12N}`.
    SrInvariant { s: i64, t: i64 },
    /// `g_{(s/N, t/N)}^m / g_{(0, 1/N)}^m` with `m` from the quotient theorem.
    Quotient { s: i64, t: i64 },
    /// Quotient attached to `beta = 1 + (2N/p or 6N/p) sqrt(-d)`.
    BetaQuotient { p: u64 },
    /// Real quotient `g_{(0, s/N)}^m / g_{(0, 1/N)}^m`.
    RealQuotient { s: i64 },
    /// Real quotient `e^{2 t pi i/N} g_{(1/2, t/N)}^4 / g_{(0, 1/N)}^4`, or its square root when `4 | N`.
    RealHalfQuotient { t: i64 },
    /// Real quotient with `s = 1 + N/p` for `p^2 | N`.
    RealPrimeSquare { p: u64 },
}

fn idx(a: i64, b: i64, n: i64) -> Result<IndexVector> {
    IndexVector::over(a, b, n)
}

pub fn build_spec(m: &RayModulus, kind: InvariantKind) -> Result<InvariantSpec> {
    let n = m.n as i64;
    let base = || idx(0, 1, n);
    let quotient = |r: IndexVector, e: i64, phase: Q| -> Result<InvariantSpec> {
        Ok(InvariantSpec { numerator: vec![(r, 1)], denominator: vec![(base()?, 1)], exponent: e, phase })
    };
    match kind {
        InvariantKind::SrInvariant { s, t } => {
            let w = AlgebraicIntegerZTheta::new(s, t);
            if !w.is_prime_to(&m.field, m.n) {
                return Err(Error::NotPrimeToModulus { norm: w.norm(&m.field), n: m.n });
            }
            Ok(InvariantSpec { numerator: vec![(idx(s, t, n)?, 1)], denominator: Vec::new(), exponent: 12 * n, phase: Q::zero() })
        }
        InvariantKind::Quotient { s, t } => {
            let w = AlgebraicIntegerZTheta::new(s, t);
            if !w.is_prime_to(&m.field, m.n) {
                return Err(Error::NotPrimeToModulus { norm: w.norm(&m.field), n: m.n });
            }
            quotient(idx(s, t, n)?, m_exponent_theorem51(m.n) as i64, Q::zero())
        }
        InvariantKind::BetaQuotient { p } => {
            let beta = beta_of_lemma(m, p)?;
            let e = if p == 3 { 3 } else { 1 };
            quotient(idx(beta.s, beta.t, n)?, e, Q::zero())
        }
        InvariantKind::RealQuotient { s } => {
            if s.gcd(&n) != 1 || s.rem_euclid(n) == 0 {
                return Err(Error::Precondition(alloc::format!("s = {s} must be prime to N = {n}")));
            }
            quotient(idx(0, s, n)?, m_exponent_theorem62(m.n, s) as i64, Q::zero())
        }
        InvariantKind::RealHalfQuotient { t } => {
            if n % 2 != 0 {
                return Err(Error::Precondition("N must be even".into()));
            }
            let r = IndexVector::new(Q::new(1, 2), Q::new(t, n))?;
            if n % 4 == 0 {
                quotient(r, 2, Q::new(t, n))
            } else {
                quotient(r, 4, Q::new(2 * t, n))
            }
        }
        InvariantKind::RealPrimeSquare { p } => {
            let pi = p as i64;
            if p % 2 == 0 || n % (pi * pi) != 0 {
                return Err(Error::Precondition(alloc::format!("{p} must be odd with {p}^2 | N")));
            }
            let e = if n % 2 == 1 { pi } else { 2 * pi };
            quotient(idx(0, 1 + n / pi, n)?, e, Q::zero())
        }
    }
}

/// Constant `Y` with `h = e^{i pi Y} prod G_r^{w_r}`, where
/// `g_r = e^{i pi (1 + r2 (r1 - 1))} G_r` and `G_r` has rational-cyclotomic q-coefficients.
pub fn constant_phase(family: &[(IndexVector, i64)], phase: Q) -> Q {
    family
        .iter()
        .fold(phase, |acc, (r, w)| acc + (Q::one() + r.r2 * (r.r1 - Q::one())) * *w)
}

/// `e^{i pi Y}` lies in `Q(zeta_M)`.
pub fn phase_fits_level(y: Q, level: u64) -> bool {
    let my = y * level as i64;
    if !my.is_integer() {
        return false;
    }
    level % 2 == 1 || my.to_integer() % 2 == 0
}

/// Smallest multiple `M` of `N` at which the spec is a level-`M` function.
pub fn natural_level(spec: &InvariantSpec, n: u64) -> Result<u64> {
    let fam = spec.family();
    let base = n.lcm(&spec.index_level());
    let y = constant_phase(&fam, spec.phase);
    for k in 1..=24 * base {
        let level = base * k;
        if modularity_check(&fam, level)? && phase_fits_level(y, level) {
            return Ok(level);
        }
    }
    Err(Error::PhaseOutsideLevel { level: base })
}

/// Check a level chosen by the caller.
pub fn validate_level(spec: &InvariantSpec, level: u64) -> Result<()> {
    let fam = spec.family();
    if !modularity_check(&fam, level)? {
        return Err(Error::Precondition(alloc::format!("family is not of level {level}")));
    }
    if !phase_fits_level(constant_phase(&fam, spec.phase), level) {
        return Err(Error::PhaseOutsideLevel { level });
    }
    Ok(())
}
