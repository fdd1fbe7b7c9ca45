//! Binary multiprecision floats and complex numbers on top of `num-bigint`.
//!
//! A [`Float`] is `mant * 2^exp` with `|mant| < 2^prec`. Every operation rounds
//! to nearest at the larger precision of its operands, so values built from one
//! [`PrecisionContext`] stay at that context's precision.

use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

const LOG2_10: f64 = core::f64::consts::LOG2_10;
const LN_10: f64 = core::f64::consts::LN_10;

/// Working precision shared by every value of one computation.
#[derive(Clone, Debug)]
pub struct PrecisionContext {
    /// Target accuracy in decimal digits.
    pub digits: u32,
    pub guard_digits: u32,
    bits: u32,
    pi: Float,
}

impl PrecisionContext {
    pub const DEFAULT_GUARD: u32 = 20;

    pub fn new(digits: u32) -> Self {
        Self::with_guard(digits, Self::DEFAULT_GUARD)
    }

    pub fn with_guard(digits: u32, guard_digits: u32) -> Self {
        let bits = libm::ceil((digits + guard_digits) as f64 * LOG2_10) as u32 + 16;
        let pi = machin_pi(bits);
        PrecisionContext { digits, guard_digits, bits, pi }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Digits carried including guard digits.
    pub fn total_digits(&self) -> u32 {
        self.digits + self.guard_digits
    }

    /// `pi` at an arbitrary binary precision, computed afresh.
    pub fn pi_at(bits: u32) -> Float {
        machin_pi(bits)
    }

    pub fn pi(&self) -> &Float {
        &self.pi
    }

    pub fn int(&self, v: i64) -> Float {
        Float::from_int(v, self.bits)
    }

    pub fn ratio(&self, r: &Ratio<i64>) -> Float {
        Float::from_ratio(*r.numer(), *r.denom(), self.bits)
    }

    pub fn zero(&self) -> Float {
        Float::zero(self.bits)
    }

    pub fn one(&self) -> Complex {
        Complex::from_real(self.int(1))
    }

    /// `e^{i pi x}` for an exact rational `x`.
    pub fn cis_pi(&self, x: &Ratio<i64>) -> Complex {
        let two = Ratio::from_integer(2);
        let mut x = *x % two;
        if x < Ratio::zero() {
            x += two;
        }
        // fold into [0, 1/4] with exact symmetries before touching the series
        let one = Ratio::one();
        let (x, flip) = if x > one { (x - one, true) } else { (x, false) };
        let half = Ratio::new(1, 2);
        let (x, neg_re) = if x > half { (one - x, true) } else { (x, false) };
        let quarter = Ratio::new(1, 4);
        let (x, swap) = if x > quarter { (half - x, true) } else { (x, false) };
        let z = cis(&(self.ratio(&x) * &self.pi));
        let (mut re, mut im) = if swap { (z.im, z.re) } else { (z.re, z.im) };
        if neg_re {
            re = -re;
        }
        if flip {
            re = -re;
            im = -im;
        }
        Complex { re, im }
    }
}

#[derive(Clone, Debug)]
pub struct Float {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn round_shift(mag: &BigUint, shift: u64) -> BigUint {
    if shift == 0 {
        return mag.clone();
    }
    let half = BigUint::one() << (shift - 1);
    (mag + half) >> shift
}

impl Float {
    pub fn zero(prec: u32) -> Self {
        Float { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Float::from_parts(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Float::from_parts(v.clone(), 0, prec)
    }

    pub fn from_ratio(num: i64, den: i64, prec: u32) -> Self {
        Float::from_int(num, prec) / Float::from_int(den, prec)
    }

    /// Build from `mant * 2^exp`, rounding to `prec` bits.
    pub fn from_parts(mant: BigInt, exp: i64, prec: u32) -> Self {
        let mut f = Float { mant, exp, prec };
        f.normalize();
        f
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let bits = self.mant.bits();
        if bits > self.prec as u64 {
            let shift = bits - self.prec as u64;
            let (sign, mag) = (self.mant.sign(), self.mant.magnitude());
            self.mant = BigInt::from_biguint(sign, round_shift(mag, shift));
            self.exp += shift as i64;
        }
        // strip trailing zero bits so equal values compare structurally
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Float::from_parts(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Float { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    /// Position of the leading bit: `2^(top-1) <= |x| < 2^top`.
    fn top(&self) -> i64 {
        self.mant.bits() as i64 + self.exp
    }

    /// `log2 |x|` to about double precision, `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits();
        let keep = bits.min(60);
        let lead = (self.mant.magnitude() >> (bits - keep)).to_u64().unwrap_or(u64::MAX);
        libm::log2(lead as f64) + (bits - keep) as f64 + self.exp as f64
    }

    pub fn log10_abs(&self) -> f64 {
        self.log2_abs() / LOG2_10
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let keep = bits.min(60);
        let lead = (self.mant.magnitude() >> (bits - keep)).to_u64().unwrap_or(u64::MAX) as f64;
        let e = (bits - keep) as i64 + self.exp;
        let v = lead * libm::exp2(e as f64);
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Float { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Float::from_parts(&self.mant * k, self.exp, self.prec)
    }

    pub fn div_int(&self, k: i64) -> Self {
        self / &Float::from_int(k, self.prec)
    }

    /// Nearest integer, ties away from zero.
    pub fn round(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as u64;
        }
        let shift = (-self.exp) as u64;
        let mag = round_shift(self.mant.magnitude(), shift);
        BigInt::from_biguint(self.mant.sign(), mag)
    }

    pub fn cmp_abs(&self, other: &Float) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ta, tb) = (self.top(), other.top());
        if ta != tb {
            return ta.cmp(&tb);
        }
        let e = self.exp.min(other.exp);
        let a = self.mant.magnitude() << (self.exp - e) as u64;
        let b = other.mant.magnitude() << (other.exp - e) as u64;
        a.cmp(&b)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of a negative float");
        if self.is_zero() {
            return self.clone();
        }
        let prec = self.prec as i64;
        let bits = self.mant.bits() as i64;
        let mut shift = (2 * prec + 4 - bits).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = self.mant.magnitude() << shift as u64;
        let r = m.sqrt();
        Float::from_parts(BigInt::from(r), (self.exp - shift) / 2, self.prec)
    }

    /// Scientific notation with `sig` significant digits, e.g. `-5.8014e16`.
    pub fn to_sci(&self, sig: u32) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut e10 = libm::floor(self.log10_abs()) as i64;
        let lo = BigInt::from(10u32).pow(sig - 1);
        let hi = BigInt::from(10u32).pow(sig);
        let digits = loop {
            let n = self.abs().scaled_round(sig as i64 - 1 - e10);
            if n >= hi {
                e10 += 1;
            } else if n < lo {
                e10 -= 1;
            } else {
                break n;
            }
        };
        let s = digits.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        if sig == 1 {
            format!("{sign}{s}e{e10}")
        } else {
            format!("{sign}{}.{}e{e10}", &s[..1], &s[1..])
        }
    }

    /// `round(x * 10^k)` computed exactly from the binary representation.
    fn scaled_round(&self, k: i64) -> BigInt {
        let ten = BigInt::from(10u32);
        let (mut num, mut den) = (self.mant.clone(), BigInt::one());
        if k >= 0 {
            num *= ten.pow(k as u32);
        } else {
            den *= ten.pow((-k) as u32);
        }
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        let (q, r) = num.div_mod_floor(&den);
        if r * 2 >= den {
            q + 1
        } else {
            q
        }
    }

    fn add_signed(&self, other: &Float, negate: bool) -> Float {
        let prec = self.prec.max(other.prec);
        let om = if negate { -&other.mant } else { other.mant.clone() };
        if self.is_zero() {
            return Float::from_parts(om, other.exp, prec);
        }
        if other.is_zero() {
            return self.with_prec(prec);
        }
        let (ta, tb) = (self.top(), other.top());
        let slack = prec as i64 + 4;
        if ta - tb > slack {
            return self.with_prec(prec);
        }
        if tb - ta > slack {
            return Float::from_parts(om, other.exp, prec);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = om << (other.exp - e) as u64;
        Float::from_parts(a + b, e, prec)
    }
}

impl Neg for Float {
    type Output = Float;
    fn neg(self) -> Float {
        Float { mant: -self.mant, exp: self.exp, prec: self.prec }
    }
}

impl Neg for &Float {
    type Output = Float;
    fn neg(self) -> Float {
        Float { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }
}

impl Add for &Float {
    type Output = Float;
    fn add(self, rhs: &Float) -> Float {
        self.add_signed(rhs, false)
    }
}

impl Sub for &Float {
    type Output = Float;
    fn sub(self, rhs: &Float) -> Float {
        self.add_signed(rhs, true)
    }
}

impl Mul for &Float {
    type Output = Float;
    fn mul(self, rhs: &Float) -> Float {
        let prec = self.prec.max(rhs.prec);
        Float::from_parts(&self.mant * &rhs.mant, self.exp + rhs.exp, prec)
    }
}

impl Div for &Float {
    type Output = Float;
    fn div(self, rhs: &Float) -> Float {
        assert!(!rhs.is_zero(), "division by zero");
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return Float::zero(prec);
        }
        let k = (prec as i64 + 2 + rhs.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let num = &self.mant << k as u64;
        let q = num / &rhs.mant;
        Float::from_parts(q, self.exp - rhs.exp - k, prec)
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty { (&self).$m(rhs) }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Float, Add add, Sub sub, Mul mul, Div div);

/// Fixed-point `pi * 2^bits` by Machin's formula.
fn machin_pi(bits: u32) -> Float {
    let w = bits as u64 + 32;
    let one = BigInt::one() << w;
    let arctan_inv = |x: u64| -> BigInt {
        let x2 = BigInt::from(x * x);
        let mut power = &one / BigInt::from(x);
        let mut sum = power.clone();
        let mut k = 1u64;
        loop {
            power /= &x2;
            if power.is_zero() {
                break;
            }
            let term = &power / BigInt::from(2 * k + 1);
            if k % 2 == 1 {
                sum -= term;
            } else {
                sum += term;
            }
            k += 1;
        }
        sum
    };
    let pi = (arctan_inv(5) * 16) - (arctan_inv(239) * 4);
    Float::from_parts(pi, -(w as i64), bits)
}

/// Fixed-point integer `round(x * 2^w)`.
fn to_fixed(x: &Float, w: u64) -> BigInt {
    x.mul_pow2(w as i64).round()
}

/// Real exponential.
pub fn exp(x: &Float) -> Float {
    let prec = x.prec;
    if x.is_zero() {
        return Float::from_int(1, prec);
    }
    if x.is_negative() && x.log2_abs() > 4.0 {
        // fixed point cannot hold e^{-|x|} for large |x|
        return &Float::from_int(1, prec) / &exp(&-x);
    }
    let mag = x.log2_abs().max(0.0);
    let r = (libm::sqrt(prec as f64) / 2.0) as u64 + 4;
    let s = libm::ceil(mag) as u64 + 1 + r;
    let w = prec as u64 + s + 24;
    let y = to_fixed(&x.mul_pow2(-(s as i64)), w);
    let one = BigInt::one() << w;
    let mut term = one.clone();
    let mut sum = one;
    let mut k = 1u64;
    loop {
        term = (&term * &y) >> w;
        term /= BigInt::from(k);
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    for _ in 0..s {
        sum = (&sum * &sum) >> w;
    }
    Float::from_parts(sum, -(w as i64), prec)
}

/// `e^{i theta}` for a real angle of moderate size.
pub fn cis(theta: &Float) -> Complex {
    let prec = theta.prec;
    if theta.is_zero() {
        return Complex::from_real(Float::from_int(1, prec));
    }
    let mag = theta.log2_abs().max(0.0);
    let r = (libm::sqrt(prec as f64) / 2.0) as u64 + 4;
    let s = libm::ceil(mag) as u64 + 1 + r;
    let w = prec as u64 + 2 * s + 24;
    let y = to_fixed(&theta.mul_pow2(-(s as i64)), w);
    let one = BigInt::one() << w;
    // cos and sin series together: term_k = y^k / k!
    let mut term = one.clone();
    let mut c = one;
    let mut sn = BigInt::zero();
    let mut k = 1u64;
    loop {
        term = (&term * &y) >> w;
        term /= BigInt::from(k);
        if term.is_zero() {
            break;
        }
        match k % 4 {
            1 => sn += &term,
            2 => c -= &term,
            3 => sn -= &term,
            _ => c += &term,
        }
        k += 1;
    }
    for _ in 0..s {
        let nc = (&c * &c - &sn * &sn) >> w;
        let ns = (&c * &sn) >> (w - 1);
        c = nc;
        sn = ns;
    }
    Complex {
        re: Float::from_parts(c, -(w as i64), prec),
        im: Float::from_parts(sn, -(w as i64), prec),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Complex { re, im }
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec;
        Complex { re, im: Float::zero(prec) }
    }

    pub fn zero(prec: u32) -> Self {
        Complex { re: Float::zero(prec), im: Float::zero(prec) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Complex {
        Complex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Float {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    /// Approximate `log10 |z|`.
    pub fn log10_abs(&self) -> f64 {
        let a = self.re.log2_abs();
        let b = self.im.log2_abs();
        let m = a.max(b);
        if m == f64::NEG_INFINITY {
            return m;
        }
        let l2 = m + 0.5 * libm::log2(libm::exp2(2.0 * (a - m)) + libm::exp2(2.0 * (b - m)));
        l2 / LOG2_10
    }

    pub fn scale(&self, k: &Float) -> Complex {
        Complex { re: &self.re * k, im: &self.im * k }
    }

    pub fn inv(&self) -> Complex {
        let n = self.norm_sqr();
        Complex { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn powi(&self, k: i64) -> Complex {
        let prec = self.re.prec.max(self.im.prec);
        let mut base = if k < 0 { self.inv() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Complex::from_real(Float::from_int(1, prec));
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Complex exponential.
    pub fn exp(&self) -> Complex {
        let m = exp(&self.re);
        cis(&self.im).scale(&m)
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        self * &rhs.inv()
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -&self.re, im: -&self.im }
    }
}

forward_owned!(Complex, Add add, Sub sub, Mul mul, Div div);

/// Number of q-product factors needed so that `|q|^(n - shift) < 10^-digits`
/// where `|q| = e^{-2 pi y}`.
pub fn terms_for(digits: u32, im_part: f64, shift: f64) -> usize {
    let per_term = 2.0 * core::f64::consts::PI * im_part / LN_10;
    libm::ceil(shift + 1.0 + digits as f64 / per_term) as usize
}

impl PartialEq for Float {
    fn eq(&self, other: &Float) -> bool {
        self.mant == other.mant && (self.mant.is_zero() || self.exp == other.exp)
    }
}

impl Float {
    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_50: &str = "3.1415926535897932384626433832795028841971693993751";

    #[test]
    fn pi_digits() {
        let ctx = PrecisionContext::new(60);
        assert_eq!(ctx.pi().to_sci(50), "3.1415926535897932384626433832795028841971693993751e0");
        let _ = PI_50;
    }

    #[test]
    fn exp_and_sqrt() {
        let ctx = PrecisionContext::new(50);
        // e = 2.71828182845904523536028747135266249775724709369995...
        assert_eq!(exp(&ctx.int(1)).to_sci(40), "2.718281828459045235360287471352662497757e0");
        // e^-10 = 4.539992976248485153559151556055061023791...e-5
        assert_eq!(exp(&ctx.int(-10)).to_sci(30), "4.53999297624848515355915155606e-5");
        // sqrt 2 = 1.41421356237309504880168872420969807856967187537694
        assert_eq!(ctx.int(2).sqrt().to_sci(45), "1.41421356237309504880168872420969807856967188e0");
        let x = ctx.ratio(&Ratio::new(7, 3));
        let back = &x.sqrt() * &x.sqrt();
        assert!((&back - &x).log10_abs() < -60.0);
    }

    #[test]
    fn roots_of_unity_are_exact_on_axes() {
        let ctx = PrecisionContext::new(50);
        for (n, d) in [(1i64, 2i64), (1, 1), (3, 2), (1, 3), (5, 4), (-7, 6), (13, 9)] {
            let z = ctx.cis_pi(&Ratio::new(n, d));
            let angle = ctx.ratio(&Ratio::new(n, d)) * ctx.pi().clone();
            let w = cis(&angle);
            assert!((&z - &w).log10_abs() < -65.0, "{n}/{d}");
            assert!((z.norm_sqr() - ctx.int(1)).log10_abs() < -65.0);
        }
        let i = ctx.cis_pi(&Ratio::new(1, 2));
        assert!(i.re.log10_abs() < -65.0);
        assert!((i.im - ctx.int(1)).log10_abs() < -65.0);
    }

    #[test]
    fn complex_powers_and_inverse() {
        let ctx = PrecisionContext::new(50);
        let z = Complex::new(ctx.ratio(&Ratio::new(3, 5)), ctx.ratio(&Ratio::new(-7, 4)));
        let a = z.powi(7);
        let b = z.powi(-3);
        let prod = &a * &b;
        let direct = z.powi(4);
        assert!((&prod - &direct).log10_abs() < -60.0);
        let one = &z * &z.inv();
        assert!((&one - &ctx.one()).log10_abs() < -65.0);
    }

    #[test]
    fn rounding_and_scientific_output() {
        let ctx = PrecisionContext::new(50);
        let x = ctx.ratio(&Ratio::new(-58014, 1)).mul_int(1_000_000_000_000);
        assert_eq!(x.to_sci(5), "-5.8014e16");
        assert_eq!(ctx.ratio(&Ratio::new(5, 2)).round(), BigInt::from(3));
        assert_eq!(ctx.ratio(&Ratio::new(-5, 2)).round(), BigInt::from(-3));
        assert_eq!(ctx.ratio(&Ratio::new(7, 3)).round(), BigInt::from(2));
        assert_eq!(ctx.int(2).to_sci(5), "2.0000e0");
        assert_eq!(ctx.ratio(&Ratio::new(999_999, 1_000_000)).to_sci(3), "1.00e0");
    }
}
