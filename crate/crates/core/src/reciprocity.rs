//! Galois groups of ray class fields as matrix groups.
//!
//! `Gal(K_(N)/K)` is enumerated as pairs (coset of `W_N` modulo the image of
//! the roots of unity, reduced form `Q`). Each pair acts on a level-`N`
//! function through `alpha * beta_Q`, evaluated at `theta_Q`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::arith::{ext_gcd, gcd, inv_mod};
use crate::error::{Error, Result};
use crate::field::{AlgebraicIntegerZTheta, ImagQuadField, RayModulus};
use crate::forms::{beta_q_matrix, theta_of_form, FormClassGroup, QuadForm, QuadIrrational};
use crate::matrix::MatModN;
use crate::siegel::{fractional_reduce, IndexVector, Q};

/// `W_N = { [[t - B s, -C s], [s, t]] invertible mod N }` with its kernel cosets.
#[derive(Clone, Debug)]
pub struct WGroup {
    pub n: u64,
    pub b_theta: i64,
    pub c_theta: i64,
    /// Every invertible element, in lexicographic `(s, t)` order.
    pub elements: Vec<MatModN>,
    /// Image of the roots of unity of `K`.
    pub kernel: Vec<MatModN>,
    /// One representative per coset: the element with smallest `(s, t)`.
    pub cosets: Vec<MatModN>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SL2Lift {
    /// Integer matrix of determinant exactly 1.
    pub matrix: [[i64; 2]; 2],
    pub target: MatModN,
    /// `det(target)` in `[0, N)`.
    pub det_part: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisElement {
    pub alpha: MatModN,
    pub form: QuadForm,
    /// `alpha * beta_Q` at the orbit level.
    pub gamma: MatModN,
    pub lift: SL2Lift,
    pub theta: QuadIrrational,
}

pub fn w_matrix(n: u64, b: i64, c: i64, s: i64, t: i64) -> MatModN {
    MatModN::new(n, t - b * s, -c * s, s, t)
}

pub fn build_w_group(field: &ImagQuadField, n: u64) -> Result<WGroup> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    let (b, c) = (field.b_theta, field.c_theta);
    let kernel = kernel_matrices(field, n);
    let mut elements = Vec::new();
    let mut assigned = vec![false; (n * n) as usize];
    let mut cosets = Vec::new();
    for s in 0..n as i64 {
        for t in 0..n as i64 {
            let m = w_matrix(n, b, c, s, t);
            if !m.is_invertible() {
                continue;
            }
            elements.push(m);
            let slot = (s as u64 * n + t as u64) as usize;
            if assigned[slot] {
                continue;
            }
            cosets.push(m);
            for k in &kernel {
                let g = m.mul(k);
                assigned[(g.c() * n + g.d()) as usize] = true;
            }
        }
    }
    Ok(WGroup { n, b_theta: b, c_theta: c, elements, kernel, cosets })
}

/// Images of the roots of unity: `{+-I}`, plus the order-4 or order-6 rotations.
fn kernel_matrices(field: &ImagQuadField, n: u64) -> Vec<MatModN> {
    let mut raw = vec![[1, 0, 0, 1]];
    if field.is_gaussian() {
        raw.push([0, -1, 1, 0]);
    }
    if field.is_eisenstein() {
        raw.push([-1, -1, 1, 0]);
        raw.push([0, 1, -1, -1]);
    }
    let mut out: Vec<MatModN> = Vec::new();
    for [a, b, c, d] in raw {
        for m in [MatModN::new(n, a, b, c, d), MatModN::new(n, -a, -b, -c, -d)] {
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

impl WGroup {
    pub fn in_kernel(&self, m: &MatModN) -> bool {
        self.kernel.contains(m)
    }

    /// Representative of the coset containing `m`.
    pub fn coset_of(&self, m: &MatModN) -> MatModN {
        self.kernel
            .iter()
            .map(|k| m.mul(k))
            .min_by_key(|g| (g.c(), g.d()))
            .expect("kernel contains the identity")
    }
}

/// Matrix of the principal ray class `[(s theta + t)]`.
pub fn principal_class_matrix(field: &ImagQuadField, omega: AlgebraicIntegerZTheta, n: u64) -> Result<MatModN> {
    if !omega.is_prime_to(field, n) {
        return Err(Error::NotPrimeToModulus { norm: omega.norm(field), n });
    }
    Ok(w_matrix(n, field.b_theta, field.c_theta, omega.s, omega.t))
}

/// Order of `[(omega)]` in the principal part of the ray class group.
pub fn ray_class_order(omega: AlgebraicIntegerZTheta, m: &RayModulus) -> Result<u64> {
    let mat = principal_class_matrix(&m.field, omega, m.n)?;
    let kernel = kernel_matrices(&m.field, m.n);
    let mut acc = mat;
    let mut k = 1;
    while !kernel.contains(&acc) {
        acc = acc.mul(&mat);
        k += 1;
    }
    Ok(k)
}

/// Write `alpha = diag(1, det alpha) * alpha'` with `alpha'` lifted to `SL_2(Z)`.
pub fn decompose_gl2(alpha: &MatModN) -> Result<SL2Lift> {
    let n = alpha.n;
    let det = alpha.det();
    let dinv = inv_mod(det as i64, n).ok_or(Error::Singular { n })? as i64;
    let ni = n as i64;
    let [a, b, c, d] = alpha.e.map(|x| x as i64);
    let (c, d) = ((c * dinv).rem_euclid(ni), (d * dinv).rem_euclid(ni));
    let c = if c == 0 { ni } else { c };
    let mut d = d;
    while gcd(c, d) != 1 {
        d += ni;
    }
    // x d - y c = 1
    let (_, x, y) = ext_gcd(d as i128, c as i128);
    let (x0, y0) = (x, -y);
    // j c = a - x0, j d = b - y0 (mod n)
    let j = y * (a as i128 - x0) + x * (b as i128 - y0);
    let j = j.rem_euclid(ni as i128);
    let a2 = x0 + j * c as i128;
    let b2 = y0 + j * d as i128;
    let matrix = [[a2 as i64, b2 as i64], [c, d]];
    debug_assert_eq!(a2 * d as i128 - b2 * c as i128, 1);
    Ok(SL2Lift { matrix, target: *alpha, det_part: det })
}

impl SL2Lift {
    /// `diag(1, det_part) * matrix` reduced mod `N`.
    pub fn recompose(&self) -> MatModN {
        let n = self.target.n;
        let m = MatModN::from_rows(n, self.matrix);
        MatModN::new(n, 1, 0, 0, self.det_part as i64).mul(&m)
    }
}

/// Action of `alpha` on a Siegel index together with the sign `a(r)`.
pub fn act_on_index(r: &IndexVector, alpha: &MatModN, m: i64, level: u64) -> Result<(IndexVector, i8)> {
    let lvl = level as i64;
    for x in [r.r1, r.r2] {
        if !(x * lvl).is_integer() {
            return Err(Error::DenominatorMismatch { denominator: r.level() as i64, level });
        }
    }
    let lift = decompose_gl2(alpha)?;
    let d = lift.det_part as i64;
    let (r1, r2) = (r.r1, r.r2 * d);
    let [[a, b], [c, dd]] = lift.matrix;
    let moved = IndexVector::new(r1 * a + r2 * c, r1 * b + r2 * dd)?;
    let x = r.r2 * (r.r1 - Q::one()) * (m * lvl);
    let odd = x.is_integer() && x.to_integer().rem_euclid(2) == 1;
    let sign = if odd && d % 2 == 0 { -1 } else { 1 };
    Ok((fractional_reduce(&moved)?, sign))
}

/// All `(coset, form)` pairs at level `M`.
pub fn galois_orbit(field: &ImagQuadField, level: u64, fcg: &FormClassGroup) -> Result<Vec<GaloisElement>> {
    let w = build_w_group(field, level)?;
    let mut out = Vec::with_capacity(w.cosets.len() * fcg.forms.len());
    for form in &fcg.forms {
        let beta = beta_q_matrix(form, level);
        let theta = theta_of_form(form);
        for alpha in &w.cosets {
            let gamma = alpha.mul(&beta);
            let lift = decompose_gl2(&gamma)?;
            out.push(GaloisElement { alpha: *alpha, form: *form, gamma, lift, theta });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, ray_class_degree};
    use crate::forms::enumerate_reduced_forms;

    #[test]
    fn cosets_for_small_fields() {
        let w = build_w_group(&make_field(7).unwrap(), 9).unwrap();
        assert_eq!(w.cosets.len(), 36);
        assert!(w.cosets.contains(&MatModN::new(9, 8, 7, 1, 0)));
        assert!(w.cosets.contains(&MatModN::new(9, 2, 0, 0, 2)));
        let w = build_w_group(&make_field(1).unwrap(), 9).unwrap();
        assert_eq!(w.cosets.len(), 18);
        assert_eq!(w.kernel.len(), 4);
        let w = build_w_group(&make_field(5).unwrap(), 4).unwrap();
        let expected = [
            MatModN::new(4, 1, 0, 0, 1),
            MatModN::new(4, 1, 2, 2, 1),
            MatModN::new(4, 0, 3, 1, 0),
            MatModN::new(4, 2, 3, 1, 2),
        ];
        let mut got = w.cosets.clone();
        got.sort();
        let mut want = expected.to_vec();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn principal_classes() {
        let f1 = make_field(1).unwrap();
        let f5 = make_field(5).unwrap();
        let f7 = make_field(7).unwrap();
        let four = AlgebraicIntegerZTheta::new(0, 4);
        assert_eq!(principal_class_matrix(&f1, four, 9).unwrap(), MatModN::scalar(9, 4));
        let w = AlgebraicIntegerZTheta::new(3, 2);
        assert_eq!(principal_class_matrix(&f5, w, 4).unwrap(), MatModN::new(4, 2, 1, 3, 2));
        let b = AlgebraicIntegerZTheta::new(12, 13);
        assert_eq!(principal_class_matrix(&f7, b, 5).unwrap(), MatModN::new(5, 1, 1, 2, 3));
        assert!(principal_class_matrix(&f7, AlgebraicIntegerZTheta::new(0, 5), 5).is_err());
        assert_eq!(ray_class_order(four, &RayModulus::new(&f1, 9).unwrap()).unwrap(), 3);
        assert_eq!(ray_class_order(w, &RayModulus::new(&f5, 4).unwrap()).unwrap(), 2);
        assert_eq!(ray_class_order(b, &RayModulus::new(&f7, 5).unwrap()).unwrap(), 3);
    }

    #[test]
    fn decomposition_round_trip() {
        for n in 2..=12u64 {
            for code in 0..n.pow(4) {
                let e = [code % n, code / n % n, code / n / n % n, code / n / n / n];
                let m = MatModN { n, e };
                if !m.is_invertible() {
                    assert!(decompose_gl2(&m).is_err());
                    continue;
                }
                let lift = decompose_gl2(&m).unwrap();
                let [[a, b], [c, d]] = lift.matrix;
                assert_eq!(a as i128 * d as i128 - b as i128 * c as i128, 1);
                assert_eq!(lift.recompose(), m);
            }
        }
        let lift = decompose_gl2(&MatModN::identity(9)).unwrap();
        assert_eq!(lift.det_part, 1);
        assert_eq!(MatModN::from_rows(9, lift.matrix), MatModN::identity(9));
        let lift = decompose_gl2(&MatModN::new(9, 8, 7, 1, 0)).unwrap();
        assert_eq!(lift.det_part, 2);
        assert_eq!(MatModN::from_rows(9, lift.matrix), MatModN::new(9, 8, 7, 5, 0));
    }

    #[test]
    fn index_action() {
        let r = IndexVector::over(5, 3, 4).unwrap();
        let (s, sign) = act_on_index(&r, &MatModN::identity(4), 2, 4).unwrap();
        assert_eq!((s, sign), (IndexVector::over(1, 3, 4).unwrap(), 1));
        // the sign needs an even determinant, so an odd level
        let r = IndexVector::over(0, 1, 9).unwrap();
        let even = MatModN::new(9, 1, 0, 0, 2);
        let (s, sign) = act_on_index(&r, &even, 1, 9).unwrap();
        assert_eq!((s, sign), (IndexVector::over(0, 2, 9).unwrap(), -1));
        assert_eq!(act_on_index(&r, &MatModN::identity(9), 1, 9).unwrap().1, 1);
        let odd = MatModN::new(4, 1, 1, 0, 3);
        assert!(act_on_index(&IndexVector::over(0, 1, 5).unwrap(), &odd, 1, 4).is_err());
    }

    #[test]
    fn orbit_sizes_match_degree() {
        for d in [1, 2, 3, 5, 7] {
            let f = make_field(d).unwrap();
            let fcg = enumerate_reduced_forms(f.disc).unwrap();
            for n in 2..=12 {
                let orbit = galois_orbit(&f, n, &fcg).unwrap();
                let deg = ray_class_degree(&RayModulus::new(&f, n).unwrap());
                assert_eq!(orbit.len() as u64, deg, "d={d} N={n}");
            }
        }
        let f = make_field(5).unwrap();
        let fcg = enumerate_reduced_forms(f.disc).unwrap();
        assert_eq!(galois_orbit(&f, 8, &fcg).unwrap().len(), 32);
        assert_eq!(galois_orbit(&f, 25, &fcg).unwrap().len(), 500);
    }

    #[test]
    fn class_orders_divide_group_order() {
        for d in [1, 2, 3, 5, 7] {
            let f = make_field(d).unwrap();
            for n in 2..=12 {
                let m = RayModulus::new(&f, n).unwrap();
                let cosets = build_w_group(&f, n).unwrap().cosets.len() as u64;
                for s in 0..n as i64 {
                    for t in 0..n as i64 {
                        let w = AlgebraicIntegerZTheta::new(s, t);
                        if w.is_prime_to(&f, n) {
                            assert_eq!(cosets % ray_class_order(w, &m).unwrap(), 0);
                        }
                    }
                }
            }
        }
    }
}
