//! Galois conjugates of an invariant and exact recovery of its minimal polynomial.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::RayModulus;
use crate::forms::{enumerate_reduced_forms, QuadForm};
use crate::invariants::{constant_phase, validate_level};
use crate::mp::{Complex, Float, PrecisionContext};
use crate::poly::PolyZ;
use crate::reciprocity::{galois_orbit, GaloisElement};
use crate::siegel::{reduce_with_phase, siegel_eval, IndexVector, InvariantSpec, SiegelPoint, Q};

#[derive(Clone, Debug)]
pub struct OrbitValues {
    pub values: Vec<Complex>,
    /// Append complex conjugates before expanding (minimal polynomial over `Q`).
    pub include_conjugates: bool,
    pub declared_field_degree: u64,
}

/// `e^{i pi phase} prod g_r(theta_Q)^{w_r}` with reduced indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugate {
    pub terms: Vec<(IndexVector, i64)>,
    pub phase: Q,
    pub form: QuadForm,
}

/// Everything needed to evaluate each orbit element independently.
#[derive(Clone, Debug)]
pub struct OrbitPlan {
    pub level: u64,
    pub elements: Vec<GaloisElement>,
    family: Vec<(IndexVector, i64)>,
    y: Q,
    forms: Vec<QuadForm>,
}

impl OrbitPlan {
    pub fn new(spec: &InvariantSpec, m: &RayModulus, level: u64) -> Result<Self> {
        validate_level(spec, level)?;
        let family = spec.family();
        let y = constant_phase(&family, spec.phase);
        let fcg = enumerate_reduced_forms(m.field.disc)?;
        let elements = galois_orbit(&m.field, level, &fcg)?;
        Ok(OrbitPlan { level, elements, family, y, forms: fcg.forms })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn conjugate(&self, i: usize) -> Result<Conjugate> {
        conjugate_of(&self.family, self.y, self.level, &self.elements[i])
    }

    /// One CM point per reduced form, in form order.
    pub fn points(&self, ctx: &PrecisionContext) -> Vec<SiegelPoint> {
        self.forms.iter().map(|q| SiegelPoint::from_form(q, ctx)).collect()
    }

    pub fn evaluate(&self, i: usize, points: &[SiegelPoint], ctx: &PrecisionContext) -> Result<Complex> {
        let c = self.conjugate(i)?;
        let k = self.forms.iter().position(|q| *q == c.form).expect("form of the orbit");
        evaluate_conjugate(&c, &points[k], ctx)
    }
}

/// Transport `h = e^{i pi Y} prod G_r^{w_r}` by `gamma = diag(1, d) alpha'`.
pub fn conjugate_of(family: &[(IndexVector, i64)], y: Q, level: u64, elem: &GaloisElement) -> Result<Conjugate> {
    let d = elem.lift.det_part as i64;
    let my = y * level as i64;
    if !my.is_integer() {
        return Err(Error::PhaseOutsideLevel { level });
    }
    let mut phase = if my.to_integer() % 2 == 0 {
        y * d
    } else if level % 2 == 1 {
        (y + 1) * d + 1
    } else {
        return Err(Error::PhaseOutsideLevel { level });
    };
    let [[a, b], [c, dd]] = elem.lift.matrix;
    let mut merged: BTreeMap<IndexVector, i64> = BTreeMap::new();
    for &(r, w) in family {
        let r2 = r.r2 * d;
        phase -= (Q::from_integer(1) + r2 * (r.r1 - 1)) * w;
        let moved = IndexVector::new(r.r1 * a + r2 * c, r.r1 * b + r2 * dd)?;
        let (red, shift) = reduce_with_phase(&moved)?;
        phase += shift * w;
        *merged.entry(red).or_insert(0) += w;
    }
    let terms = merged.into_iter().filter(|&(_, w)| w != 0).collect();
    let two = Q::from_integer(2);
    let mut phase = phase % two;
    if phase < Q::from_integer(0) {
        phase += two;
    }
    Ok(Conjugate { terms, phase, form: elem.form })
}

pub fn evaluate_conjugate(c: &Conjugate, point: &SiegelPoint, ctx: &PrecisionContext) -> Result<Complex> {
    let mut acc = ctx.cis_pi(&c.phase);
    for (r, w) in &c.terms {
        let g = siegel_eval(r, point, ctx)?.value;
        acc = &acc * &g.powi(*w);
    }
    Ok(acc)
}

/// Value of one Galois conjugate, computed from scratch.
pub fn evaluate_element(spec: &InvariantSpec, level: u64, elem: &GaloisElement, ctx: &PrecisionContext) -> Result<Complex> {
    let family = spec.family();
    let y = constant_phase(&family, spec.phase);
    let c = conjugate_of(&family, y, level, elem)?;
    evaluate_conjugate(&c, &SiegelPoint::from_form(&elem.form, ctx), ctx)
}

/// All conjugates over `K`, evaluated sequentially.
pub fn evaluate_orbit(spec: &InvariantSpec, m: &RayModulus, level: u64, ctx: &PrecisionContext) -> Result<OrbitValues> {
    let plan = OrbitPlan::new(spec, m, level)?;
    let points = plan.points(ctx);
    let values = (0..plan.len()).map(|i| plan.evaluate(i, &points, ctx)).collect::<Result<Vec<_>>>()?;
    Ok(OrbitValues::new(values, m))
}

impl OrbitValues {
    /// Values over `K`; conjugates are appended only when some value is not real.
    pub fn new(values: Vec<Complex>, m: &RayModulus) -> Self {
        let declared_field_degree = crate::field::ray_class_degree(m);
        OrbitValues { values, include_conjugates: false, declared_field_degree }
    }

    /// Every value has `|Im| < 10^{tol_log10} max(1, |z|)`.
    pub fn all_real(&self, tol_log10: f64) -> bool {
        self.values.iter().all(|v| v.im.log10_abs() < tol_log10 + v.log10_abs().max(0.0))
    }

    /// Largest `log10 |Im z| - log10 max(1, |z|)` over the orbit.
    pub fn max_imag_log10(&self) -> f64 {
        self.values
            .iter()
            .map(|v| v.im.log10_abs() - v.log10_abs().max(0.0))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// The multiset of values is stable under complex conjugation, so the
    /// product over the orbit already has real coefficients.
    pub fn closed_under_conjugation(&self, tol_log10: f64) -> bool {
        let (roots, counts) = distinct_values(&self.values, tol_log10);
        roots.iter().zip(&counts).all(|(r, c)| {
            let conj = r.conj();
            let scale = r.log10_abs().max(0.0);
            roots
                .iter()
                .zip(&counts)
                .any(|(s, d)| d == c && (s - &conj).log10_abs() < tol_log10 + scale)
        })
    }

    /// Append conjugates exactly when the orbit is not closed under conjugation.
    pub fn with_conjugates_if_needed(mut self, tol_log10: f64) -> Self {
        self.include_conjugates = !self.closed_under_conjugation(tol_log10);
        self
    }

    pub fn expanded(&self) -> Vec<Complex> {
        let mut out = self.values.clone();
        if self.include_conjugates {
            out.extend(self.values.iter().map(Complex::conj));
        }
        out
    }
}

/// Distinct values and how often each occurs.
pub fn distinct_values(values: &[Complex], tol_log10: f64) -> (Vec<Complex>, Vec<usize>) {
    let mut reps: Vec<Complex> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for v in values {
        let scale = v.log10_abs().max(0.0);
        match reps.iter().position(|r| (r - v).log10_abs() < tol_log10 + scale) {
            Some(i) => counts[i] += 1,
            None => {
                reps.push(v.clone());
                counts.push(1);
            }
        }
    }
    (reps, counts)
}

fn poly_mul(a: &[Complex], b: &[Complex]) -> Vec<Complex> {
    let prec = a[0].re.prec();
    let mut out = vec![Complex::zero(prec); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// `prod (X - r)` by a balanced product tree, ascending coefficients.
pub fn expand_roots(roots: &[Complex], ctx: &PrecisionContext) -> Vec<Complex> {
    if roots.is_empty() {
        return vec![ctx.one()];
    }
    let mut layer: Vec<Vec<Complex>> = roots.iter().map(|r| vec![-r, ctx.one()]).collect();
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        let mut it = layer.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(poly_mul(&a, &b)),
                None => next.push(a),
            }
        }
        layer = next;
    }
    layer.pop().unwrap()
}

/// Tolerances as powers of ten relative to the working digits `P`.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    pub dedup_log10: f64,
    pub integrality_log10: f64,
}

impl Tolerances {
    pub fn for_digits(p: u32) -> Self {
        Tolerances { dedup_log10: -(p as f64) / 3.0, integrality_log10: -(p as f64) / 4.0 }
    }
}

pub fn reconstruct_polynomial(orbit: &OrbitValues, ctx: &PrecisionContext) -> Result<PolyZ> {
    reconstruct_with(orbit, ctx, Tolerances::for_digits(ctx.digits))
}

pub fn reconstruct_with(orbit: &OrbitValues, ctx: &PrecisionContext, tol: Tolerances) -> Result<PolyZ> {
    if orbit.values.is_empty() {
        return Err(Error::EmptyOrbit);
    }
    let (roots, counts) = distinct_values(&orbit.expanded(), tol.dedup_log10);
    if counts.iter().any(|&c| c != counts[0]) {
        let mut counts = counts;
        counts.sort_unstable();
        counts.dedup();
        return Err(Error::MultiplicityMismatch { counts });
    }
    let coeffs = expand_roots(&roots, ctx);
    let mut exact = Vec::with_capacity(coeffs.len());
    for (k, c) in coeffs.iter().enumerate() {
        let r = c.re.round();
        let err_re = (&c.re - &Float::from_bigint(&r, c.re.prec())).log10_abs();
        let err = err_re.max(c.im.log10_abs());
        if err > tol.integrality_log10 {
            return Err(Error::IntegralityFailure { index: k, distance_log10: err });
        }
        exact.push(r);
    }
    PolyZ::from_ascending(exact)
}

/// Monic expansion over all orbit values, coefficients in descending degree.
pub fn approx_polynomial(orbit: &OrbitValues, ctx: &PrecisionContext) -> Vec<Complex> {
    let mut c = expand_roots(&orbit.expanded(), ctx);
    c.reverse();
    c
}

/// Real parts of [`approx_polynomial`] as `d.dddde±k` strings.
pub fn format_coefficients(coeffs: &[Complex], sig: u32) -> Vec<String> {
    coeffs.iter().map(|c| c.re.to_sci(sig)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::invariants::{build_spec, InvariantKind};

    #[test]
    fn integer_roots_give_exact_polynomial() {
        let ctx = PrecisionContext::new(50);
        let m = RayModulus::new(&make_field(7).unwrap(), 3).unwrap();
        let vals = [3i64, -2, 3, -2].iter().map(|&x| Complex::from_real(ctx.int(x))).collect();
        let orbit = OrbitValues::new(vals, &m);
        let p = reconstruct_polynomial(&orbit, &ctx).unwrap();
        assert_eq!(p, PolyZ::from_descending(&[1, -1, -6]).unwrap());
        let single = OrbitValues::new(vec![Complex::from_real(ctx.int(2))], &m);
        assert_eq!(reconstruct_polynomial(&single, &ctx).unwrap(), PolyZ::from_descending(&[1, -2]).unwrap());
        assert_eq!(format_coefficients(&approx_polynomial(&single, &ctx), 5), ["1.0000e0", "-2.0000e0"]);
        let uneven = [1i64, 1, 2].iter().map(|&x| Complex::from_real(ctx.int(x))).collect();
        assert!(matches!(
            reconstruct_polynomial(&OrbitValues::new(uneven, &m), &ctx),
            Err(Error::MultiplicityMismatch { .. })
        ));
        let half = OrbitValues::new(vec![Complex::from_real(ctx.ratio(&Q::new(1, 2)))], &m);
        assert!(matches!(reconstruct_polynomial(&half, &ctx), Err(Error::IntegralityFailure { .. })));
    }

    #[test]
    fn conjugates_keep_identity_element_fixed() {
        let ctx = PrecisionContext::new(50);
        let m = RayModulus::new(&make_field(5).unwrap(), 4).unwrap();
        let spec = build_spec(&m, InvariantKind::RealHalfQuotient { t: 1 }).unwrap();
        let plan = OrbitPlan::new(&spec, &m, 4).unwrap();
        let c = plan.conjugate(0).unwrap();
        assert_eq!(plan.elements[0].gamma, crate::matrix::MatModN::identity(4));
        let direct = crate::siegel::invariant_value(&spec, &m.field, &ctx).unwrap().value;
        let via = evaluate_conjugate(&c, &SiegelPoint::from_form(&c.form, &ctx), &ctx).unwrap();
        assert!((&direct - &via).log10_abs() < -60.0);
    }
}
