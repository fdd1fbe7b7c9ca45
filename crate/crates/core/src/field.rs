//! Imaginary quadratic fields `K = Q(sqrt(-d))`, the moduli `N O_K`, and the
//! counting functions behind the ray class degree formula.

use alloc::vec::Vec;

use crate::arith::{factorize, gcd, inv_mod, is_prime, is_square_free, kronecker};
use crate::error::{Error, Result};
use crate::forms::enumerate_reduced_forms;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ImagQuadField {
    pub d: i64,
    /// Field discriminant `d_K`.
    pub disc: i64,
    /// `theta` is a root of `X^2 + b_theta X + c_theta`.
    pub b_theta: i64,
    pub c_theta: i64,
    pub omega_k: u32,
    pub class_number: u32,
}

/// Element `s theta + t` of `O_K = Z[theta]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraicIntegerZTheta {
    pub s: i64,
    pub t: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeLocal {
    pub p: u64,
    pub splitting: Splitting,
    /// `ord_p(N)`.
    pub n_p: u32,
}

/// The modulus `f = N O_K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RayModulus {
    pub field: ImagQuadField,
    pub n: u64,
    pub primes: Vec<PrimeLocal>,
}

/// A power `P^k` of one prime ideal of `O_K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdealPower {
    pub p: u64,
    pub splitting: Splitting,
    pub k: u32,
    /// For split `p`: `theta = root (mod P^k)`, a root of the minimal
    /// polynomial of `theta` modulo `p^k`.
    pub root: u64,
}

/// One row of the small-`|G_i|` self-test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GiCheck {
    pub p: u64,
    pub order: u64,
    pub matches_table: bool,
}

pub fn make_field(d: i64) -> Result<ImagQuadField> {
    if d <= 0 {
        return Err(Error::NonPositive(d));
    }
    if !is_square_free(d as u64) {
        return Err(Error::NotSquareFree(d));
    }
    let disc = if (-d).rem_euclid(4) == 1 { -d } else { -4 * d };
    let (b_theta, c_theta) = if disc.rem_euclid(4) == 0 {
        (0, -disc / 4)
    } else {
        (1, (1 - disc) / 4)
    };
    let omega_k = match disc {
        -4 => 4,
        -3 => 6,
        _ => 2,
    };
    let class_number = enumerate_reduced_forms(disc)?.forms.len() as u32;
    Ok(ImagQuadField { d, disc, b_theta, c_theta, omega_k, class_number })
}

impl ImagQuadField {
    pub fn is_gaussian(&self) -> bool {
        self.disc == -4
    }

    pub fn is_eisenstein(&self) -> bool {
        self.disc == -3
    }

    pub fn splitting(&self, p: u64) -> Result<Splitting> {
        Ok(match kronecker(self.disc, p)? {
            1 => Splitting::Split,
            -1 => Splitting::Inert,
            _ => Splitting::Ramified,
        })
    }

    /// All roots of unity of `K` as elements `s theta + t`.
    pub fn units(&self) -> Vec<AlgebraicIntegerZTheta> {
        let u = |s, t| AlgebraicIntegerZTheta { s, t };
        let mut out = alloc::vec![u(0, 1), u(0, -1)];
        if self.is_gaussian() {
            out.extend([u(1, 0), u(-1, 0)]);
        }
        if self.is_eisenstein() {
            // theta^2 = -theta - 1
            out.extend([u(1, 0), u(-1, 0), u(-1, -1), u(1, 1)]);
        }
        out
    }

    pub fn mul(&self, x: AlgebraicIntegerZTheta, y: AlgebraicIntegerZTheta) -> AlgebraicIntegerZTheta {
        let su = x.s * y.s;
        AlgebraicIntegerZTheta {
            s: x.s * y.t + x.t * y.s - self.b_theta * su,
            t: x.t * y.t - self.c_theta * su,
        }
    }
}

impl AlgebraicIntegerZTheta {
    pub fn new(s: i64, t: i64) -> Self {
        AlgebraicIntegerZTheta { s, t }
    }

    pub fn norm(&self, field: &ImagQuadField) -> i64 {
        self.t * self.t - field.b_theta * self.s * self.t + field.c_theta * self.s * self.s
    }

    pub fn is_prime_to(&self, field: &ImagQuadField, n: u64) -> bool {
        gcd(self.norm(field), n as i64) == 1
    }
}

impl RayModulus {
    pub fn new(field: &ImagQuadField, n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::ModulusTooSmall(n));
        }
        let primes = factorize(n)
            .into_iter()
            .map(|(p, e)| Ok(PrimeLocal { p, splitting: field.splitting(p)?, n_p: e }))
            .collect::<Result<Vec<_>>>()?;
        Ok(RayModulus { field: field.clone(), n, primes })
    }

    pub fn local(&self, p: u64) -> Result<PrimeLocal> {
        self.primes
            .iter()
            .copied()
            .find(|l| l.p == p)
            .ok_or(Error::PrimeDoesNotDivide { p, n: self.n })
    }

    /// Prime ideal factorization of `N O_K`.
    pub fn prime_ideal_powers(&self) -> Vec<PrimeIdealPower> {
        let f = &self.field;
        let mut out = Vec::new();
        for l in &self.primes {
            match l.splitting {
                Splitting::Inert => out.push(PrimeIdealPower { p: l.p, splitting: l.splitting, k: l.n_p, root: 0 }),
                Splitting::Ramified => {
                    out.push(PrimeIdealPower { p: l.p, splitting: l.splitting, k: 2 * l.n_p, root: 0 })
                }
                Splitting::Split => {
                    for r in split_roots(f, l.p, l.n_p) {
                        out.push(PrimeIdealPower { p: l.p, splitting: l.splitting, k: l.n_p, root: r });
                    }
                }
            }
        }
        out
    }
}

/// Both roots of `X^2 + B X + C` modulo `p^k` for a split prime `p`, lifted by Newton iteration.
fn split_roots(f: &ImagQuadField, p: u64, k: u32) -> [u64; 2] {
    let (b, c) = (f.b_theta as i128, f.c_theta as i128);
    let poly = |x: i128, m: i128| (x * x + b * x + c).rem_euclid(m);
    let r0 = (0..p as i128).find(|&x| poly(x, p as i128) == 0).expect("split prime has a root");
    let pk = (p as i128).pow(k);
    let lift = |mut x: i128| {
        for _ in 0..k {
            let deriv = (2 * x + b).rem_euclid(pk);
            let inv = inv_mod(deriv as i64, pk as u64).expect("simple root") as i128;
            x = (x - poly(x, pk) * inv).rem_euclid(pk);
        }
        x as u64
    };
    let other = (-b - r0).rem_euclid(p as i128);
    [lift(r0), lift(other)]
}

impl PrimeIdealPower {
    /// `|(O_K / P^k)^x|`.
    pub fn phi(&self) -> u64 {
        let (p, k) = (self.p, self.k);
        match self.splitting {
            Splitting::Inert => p.pow(2 * k) - p.pow(2 * k - 2),
            _ => p.pow(k) - p.pow(k - 1),
        }
    }

    pub fn contains(&self, f: &ImagQuadField, x: AlgebraicIntegerZTheta) -> bool {
        let (p, k) = (self.p as i128, self.k);
        match self.splitting {
            Splitting::Inert => {
                let pk = p.pow(k);
                (x.s as i128) % pk == 0 && (x.t as i128) % pk == 0
            }
            Splitting::Ramified => {
                let n = x.norm(f) as i128;
                n % p.pow(k) == 0
            }
            Splitting::Split => {
                let pk = p.pow(k);
                (x.t as i128 + x.s as i128 * self.root as i128) % pk == 0
            }
        }
    }
}

/// Number of roots of unity `u` with `u = 1` modulo every ideal in `part`.
pub fn omega_of(f: &ImagQuadField, part: &[PrimeIdealPower]) -> u32 {
    f.units()
        .into_iter()
        .filter(|u| {
            let diff = AlgebraicIntegerZTheta::new(u.s, u.t - 1);
            part.iter().all(|q| q.contains(f, diff))
        })
        .count() as u32
}

/// `phi(f) = |(O_K / N O_K)^x|`.
pub fn euler_phi_ideal(m: &RayModulus) -> u64 {
    m.primes
        .iter()
        .map(|l| {
            let (p, n) = (l.p, l.n_p);
            match l.splitting {
                Splitting::Inert => p.pow(2 * n) - p.pow(2 * n - 2),
                Splitting::Split => (p.pow(n) - p.pow(n - 1)).pow(2),
                Splitting::Ramified => p.pow(2 * n) - p.pow(2 * n - 1),
            }
        })
        .product()
}

/// Roots of unity congruent to 1 modulo `N O_K`, by direct enumeration.
pub fn omega_f(m: &RayModulus) -> u32 {
    let n = m.n as i64;
    m.field
        .units()
        .into_iter()
        .filter(|u| u.s.rem_euclid(n) == 0 && (u.t - 1).rem_euclid(n) == 0)
        .count() as u32
}

/// `[K_f : K] = h_K phi(f) omega(f) / omega_K`.
pub fn ray_class_degree(m: &RayModulus) -> u64 {
    let f = &m.field;
    let num = f.class_number as u64 * euler_phi_ideal(m) * omega_f(m) as u64;
    debug_assert_eq!(num % f.omega_k as u64, 0);
    num / f.omega_k as u64
}

/// `|G_i| = phi(P^n) omega(P^n) / omega_K` for a prime ideal above `p`.
pub fn g_i_order(m: &RayModulus, p: u64) -> Result<u64> {
    m.local(p)?;
    let q = m
        .prime_ideal_powers()
        .into_iter()
        .find(|q| q.p == p)
        .expect("p divides N");
    Ok(g_order_of(&m.field, &q))
}

fn g_order_of(f: &ImagQuadField, q: &PrimeIdealPower) -> u64 {
    q.phi() * omega_of(f, core::slice::from_ref(q)) as u64 / f.omega_k as u64
}

/// Membership in the table of prime powers with `|G_i| <= 2`.
pub fn small_gi_table(f: &ImagQuadField, p: u64, splitting: Splitting, n_i: u32) -> bool {
    if f.is_gaussian() {
        matches!((p, n_i), (2, 1..=4) | (3, 1) | (5, 1))
    } else if f.is_eisenstein() {
        matches!((p, n_i), (2, 1 | 2) | (3, 1 | 2) | (7, 1) | (13, 1))
    } else {
        splitting != Splitting::Inert && matches!((p, n_i), (2, 1..=3) | (3, 1) | (5, 1))
    }
}

/// Membership in the table of prime powers with `|G_i| = 3`.
pub fn three_gi_table(f: &ImagQuadField, p: u64, splitting: Splitting, n_i: u32) -> bool {
    if f.is_gaussian() {
        matches!((p, n_i), (13, 1))
    } else if f.is_eisenstein() {
        matches!((p, n_i), (3, 3) | (19, 1))
    } else {
        match (p, n_i) {
            (2, 1) => splitting == Splitting::Inert,
            (3, 2) | (7, 1) => splitting != Splitting::Inert,
            _ => false,
        }
    }
}

pub fn check_small_gi_table(m: &RayModulus) -> Vec<GiCheck> {
    let f = &m.field;
    let mut out: Vec<GiCheck> = Vec::new();
    for q in m.prime_ideal_powers() {
        if out.iter().any(|c| c.p == q.p) {
            continue;
        }
        let order = g_order_of(f, &q);
        let small = small_gi_table(f, q.p, q.splitting, q.k);
        let three = three_gi_table(f, q.p, q.splitting, q.k);
        out.push(GiCheck { p: q.p, order, matches_table: (order <= 2) == small && (order == 3) == three });
    }
    out
}

/// True iff removing any prime ideal power from `f` strictly lowers the degree.
pub fn degree_drop_test(m: &RayModulus) -> bool {
    let f = &m.field;
    let parts = m.prime_ideal_powers();
    let omega_full = omega_of(f, &parts) as u64;
    (0..parts.len()).all(|i| {
        let rest: Vec<_> = parts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| *q).collect();
        let omega_rest = omega_of(f, &rest) as u64;
        omega_rest < parts[i].phi() * omega_full
    })
}

/// Order of the ray class of the element built in [`beta_of_lemma`].
pub fn k_p(m: &RayModulus, p: u64) -> Result<u64> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::Precondition(alloc::format!("{p} must be an odd prime")));
    }
    let l = m.local(p)?;
    let f = &m.field;
    if f.disc % p as i64 != 0 && l.n_p == 1 {
        let chi = kronecker(f.disc, p)? as i64;
        let num = (p as i64 - chi) as u64;
        let den = if m.n == p { f.omega_k as u64 } else { 2 };
        return Ok(num / den);
    }
    Ok(p)
}

/// `beta = 1 + (2N/p or 6N/p) sqrt(-d)` written as `s theta + t`.
pub fn beta_of_lemma(m: &RayModulus, p: u64) -> Result<AlgebraicIntegerZTheta> {
    let f = &m.field;
    let l = m.local(p)?;
    if p.is_multiple_of(2) {
        return Err(Error::Precondition(alloc::format!("{p} must be odd")));
    }
    let pp = (p * p) as i128;
    if (m.n as i128 * f.disc as i128) % pp != 0 {
        return Err(Error::Precondition(alloc::format!("{p}^2 does not divide N d_K")));
    }
    let _ = l;
    let n = m.n as i64;
    let p = p as i64;
    let k = if p == 3 { 2 * n / 3 } else { 6 * n / p };
    Ok(if f.disc.rem_euclid(4) == 0 {
        AlgebraicIntegerZTheta::new(k, 1)
    } else {
        AlgebraicIntegerZTheta::new(2 * k, k + 1)
    })
}
