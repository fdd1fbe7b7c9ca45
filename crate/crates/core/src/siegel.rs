//! Siegel functions `g_r(tau)` by their q-product, the modularity criterion
//! for products of them, and the invariants built from such products.

use alloc::vec::Vec;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{AlgebraicIntegerZTheta, ImagQuadField, RayModulus};
use crate::forms::{theta_of_form, QuadForm, QuadIrrational};
use crate::mp::{terms_for, Complex, Float, PrecisionContext};

pub type Q = Ratio<i64>;

/// Siegel index `r = (r1, r2)` in `Q^2 \ Z^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexVector {
    pub r1: Q,
    pub r2: Q,
}

impl IndexVector {
    pub fn new(r1: Q, r2: Q) -> Result<Self> {
        if r1.is_integer() && r2.is_integer() {
            return Err(Error::IntegralIndex);
        }
        Ok(IndexVector { r1, r2 })
    }

    /// `(a/n, b/n)`.
    pub fn over(a: i64, b: i64, n: i64) -> Result<Self> {
        IndexVector::new(Q::new(a, n), Q::new(b, n))
    }

    /// Least common denominator.
    pub fn level(&self) -> u64 {
        self.r1.denom().lcm(self.r2.denom()) as u64
    }

    pub fn is_reduced(&self) -> bool {
        let in_unit = |x: Q| x >= Q::zero() && x < Q::one();
        in_unit(self.r1) && in_unit(self.r2)
    }
}

impl core::fmt::Display for IndexVector {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({}, {})", self.r1, self.r2)
    }
}

/// `B_2(x) = x^2 - x + 1/6`.
pub fn bernoulli2(x: Q) -> Q {
    x * x - x + Q::new(1, 6)
}

fn frac(x: Q) -> Q {
    x - x.floor()
}

pub fn fractional_reduce(r: &IndexVector) -> Result<IndexVector> {
    IndexVector::new(frac(r.r1), frac(r.r2))
}

/// Reduce `r` to `<r>` and return `x` with `g_r = e^{i pi x} g_<r>`.
pub fn reduce_with_phase(r: &IndexVector) -> Result<(IndexVector, Q)> {
    let red = fractional_reduce(r)?;
    let k = (r.r1 - red.r1).to_integer();
    let l = (r.r2 - red.r2).to_integer();
    let x = Q::from_integer(k + l + k * l) - (red.r2 * k - red.r1 * l);
    Ok((red, x))
}

/// A point of the upper half-plane prepared for q-expansions.
#[derive(Clone, Debug)]
pub struct SiegelPoint {
    pub tau: Complex,
    /// Exact real part when known, which lets roots of unity be taken exactly.
    re_exact: Option<Q>,
    im_approx: f64,
    q: Complex,
}

impl SiegelPoint {
    pub fn new(tau: Complex) -> Result<Self> {
        if tau.im.is_negative() || tau.im.is_zero() {
            return Err(Error::NotInUpperHalfPlane);
        }
        let im_approx = tau.im.to_f64();
        let mut p = SiegelPoint { q: Complex::zero(tau.re.prec()), tau, re_exact: None, im_approx };
        p.q = p.exp_pi_i(Q::from_integer(2), None);
        Ok(p)
    }

    pub fn from_quadratic(x: &QuadIrrational, ctx: &PrecisionContext) -> Self {
        let tau = x.to_complex(ctx);
        let mut p = SiegelPoint { q: Complex::zero(ctx.bits()), tau, re_exact: Some(x.re), im_approx: x.imag_f64() };
        p.q = p.exp_pi_i(Q::from_integer(2), Some(ctx));
        p
    }

    pub fn from_form(q: &QuadForm, ctx: &PrecisionContext) -> Self {
        SiegelPoint::from_quadratic(&theta_of_form(q), ctx)
    }

    pub fn imag(&self) -> f64 {
        self.im_approx
    }

    /// `e^{i pi x tau}`.
    fn exp_pi_i(&self, x: Q, ctx: Option<&PrecisionContext>) -> Complex {
        let prec = self.tau.re.prec();
        let pi = match ctx {
            Some(c) => c.pi().clone(),
            None => PrecisionContext::pi_at(prec),
        };
        let xf = Float::from_ratio(*x.numer(), *x.denom(), prec);
        let scale = &pi * &xf;
        let modulus = crate::mp::exp(&-(&self.tau.im * &scale));
        let rot = match (self.re_exact, ctx) {
            (Some(re), Some(c)) => c.cis_pi(&(re * x)),
            _ => crate::mp::cis(&(&self.tau.re * &scale)),
        };
        rot.scale(&modulus)
    }
}

#[derive(Clone, Debug)]
pub struct SiegelValue {
    pub value: Complex,
    pub truncation_terms: usize,
}

/// `g_r(tau) = -q^{B_2(r1)/2} e^{i pi r2 (r1 - 1)} (1 - q_z) prod (1 - q^n q_z)(1 - q^n / q_z)`.
pub fn siegel_eval(r: &IndexVector, point: &SiegelPoint, ctx: &PrecisionContext) -> Result<SiegelValue> {
    if r.r1.is_integer() && r.r2.is_integer() {
        return Err(Error::IntegralIndex);
    }
    let exact = point.re_exact.map(|_| ctx);
    let lead = point.exp_pi_i(bernoulli2(r.r1), exact);
    let phase = ctx.cis_pi(&(Q::one() + r.r2 * (r.r1 - Q::one())));
    let qz = &point.exp_pi_i(r.r1 * 2, exact) * &ctx.cis_pi(&(r.r2 * 2));
    let shift = {
        let x = r.r1;
        libm::fabs(*x.numer() as f64 / *x.denom() as f64)
    };
    let terms = terms_for(ctx.total_digits(), point.imag(), shift);
    let one = ctx.one();
    let mut prod = &one - &qz;
    let qz_inv = qz.inv();
    let mut a = qz;
    let mut b = qz_inv;
    let q2 = &point.q * &point.q;
    let mut q2n = one.clone();
    for _ in 0..terms {
        a = &a * &point.q;
        b = &b * &point.q;
        q2n = &q2n * &q2;
        // (1 - a)(1 - b) with a b = q^{2n}
        let factor = &(&one - &a) - &(&b - &q2n);
        prod = &prod * &factor;
    }
    let value = &(&lead * &phase) * &prod;
    if value.log10_abs() < -2.0 * ctx.digits as f64 {
        return Err(Error::PrecisionUnderflow);
    }
    Ok(SiegelValue { value, truncation_terms: terms })
}

/// Congruence conditions for `prod g_r^{m(r)}` to be a function of level `n`.
pub fn modularity_check(family: &[(IndexVector, i64)], n: u64) -> Result<bool> {
    let nn = n as i128;
    let mut s1: i128 = 0;
    let mut s2: i128 = 0;
    let mut s12: i128 = 0;
    let mut weight: i128 = 0;
    for (r, m) in family {
        let a = r.r1 * n as i64;
        let b = r.r2 * n as i64;
        for x in [a, b] {
            if !x.is_integer() {
                return Err(Error::DenominatorMismatch { denominator: r.level() as i64, level: n });
            }
        }
        let (a, b, m) = (a.to_integer() as i128, b.to_integer() as i128, *m as i128);
        s1 += m * a * a;
        s2 += m * b * b;
        s12 += m * a * b;
        weight += m;
    }
    let quad = (2i128.gcd(&nn)) * nn;
    let g12 = 12i128.gcd(&nn);
    Ok(s1 % quad == 0 && s2 % quad == 0 && s12 % nn == 0 && (weight * g12) % 12 == 0)
}

/// `e^{i pi phase} * prod g_r^{exponent * mult}` over the numerator, divided by the denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantSpec {
    pub numerator: Vec<(IndexVector, i64)>,
    pub denominator: Vec<(IndexVector, i64)>,
    pub exponent: i64,
    /// Rational multiple of `pi`.
    pub phase: Q,
}

impl InvariantSpec {
    /// Signed exponents of every Siegel factor.
    pub fn family(&self) -> Vec<(IndexVector, i64)> {
        let num = self.numerator.iter().map(|&(r, k)| (r, k * self.exponent));
        let den = self.denominator.iter().map(|&(r, k)| (r, -k * self.exponent));
        num.chain(den).collect()
    }

    /// Least common denominator of the indices.
    pub fn index_level(&self) -> u64 {
        self.family().iter().fold(1u64, |acc, (r, _)| acc.lcm(&r.level()))
    }
}

/// Value of `e^{i pi phase} prod g_r^{w_r}` at one point.
pub fn product_value(
    terms: &[(IndexVector, i64)],
    phase: Q,
    point: &SiegelPoint,
    ctx: &PrecisionContext,
) -> Result<Complex> {
    let mut acc = ctx.cis_pi(&phase);
    for (r, w) in terms {
        if *w == 0 {
            continue;
        }
        let g = siegel_eval(r, point, ctx)?.value;
        acc = &acc * &g.powi(*w);
    }
    Ok(acc)
}

/// Evaluate a spec at `theta` of its field.
pub fn invariant_value(spec: &InvariantSpec, field: &ImagQuadField, ctx: &PrecisionContext) -> Result<SiegelValue> {
    let principal = QuadForm::new(1, field.b_theta, field.c_theta);
    let point = SiegelPoint::from_form(&principal, ctx);
    let value = product_value(&spec.family(), spec.phase, &point, ctx)?;
    let terms = terms_for(ctx.total_digits(), point.imag(), 1.0);
    Ok(SiegelValue { value, truncation_terms: terms })
}

/// `g_f([(omega)]) = g_{(s/N, t/N)}(theta)^{12N}`.
pub fn sr_invariant(m: &RayModulus, omega: AlgebraicIntegerZTheta, ctx: &PrecisionContext) -> Result<SiegelValue> {
    let field = &m.field;
    if !omega.is_prime_to(field, m.n) {
        return Err(Error::NotPrimeToModulus { norm: omega.norm(field), n: m.n });
    }
    let n = m.n as i64;
    let r = fractional_reduce(&IndexVector::over(omega.s, omega.t, n)?)?;
    let spec = InvariantSpec { numerator: alloc::vec![(r, 1)], denominator: Vec::new(), exponent: 12 * n, phase: Q::zero() };
    invariant_value(&spec, field, ctx)
}

/// `gcd(N, 3)` for odd `N`, `4 gcd(N/2, 3)` for even `N`.
pub fn m_exponent_theorem51(n: u64) -> u64 {
    if n % 2 == 1 {
        n.gcd(&3)
    } else {
        4 * (n / 2).gcd(&3)
    }
}

/// Least divisor `m` of `N` with `m (s^2 - 1) = 0 mod gcd(2, N) N` and `m = N mod 2`.
pub fn m_exponent_theorem62(n: u64, s: i64) -> u64 {
    let modulus = (2u64.gcd(&n) * n) as i128;
    let s2 = (s as i128 * s as i128 - 1).rem_euclid(modulus);
    (1..=n)
        .filter(|m| n.is_multiple_of(*m) && m % 2 == n % 2)
        .find(|&m| (m as i128 * s2) % modulus == 0)
        .unwrap_or(n)
}
