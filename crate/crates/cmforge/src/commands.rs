//! The four pipeline stages exposed by the binary.

use anyhow::{bail, Result};
use cmforge_core::diophantine::Criterion;
use cmforge_core::field::{make_field, ray_class_degree, RayModulus};
use cmforge_core::forms::{beta_q_matrix, enumerate_reduced_forms};
use cmforge_core::invariants::{build_spec, natural_level, validate_level};
use cmforge_core::minpoly::{approx_polynomial, format_coefficients, reconstruct_polynomial};
use cmforge_core::poly::{discriminant, factor, unit_check};
use cmforge_core::reciprocity::build_w_group;
use cmforge_core::{Error, InvariantSpec, PolyZ, PrecisionContext};

use crate::config::{InvariantName, JobConfig, DEFAULT_PRECISION, MAX_AUTO_PRECISION};
use crate::parallel::{cross_validate_par, evaluate_orbit_par, with_threads};
use crate::report::*;

/// Trial-division bound for discriminant factorizations.
const DISC_TRIAL_BOUND: u64 = 1_000_000;

pub fn cmd_field(d: i64) -> Result<FieldReport> {
    let f = make_field(d)?;
    let theta = if f.disc % 4 == 0 { format!("sqrt({})", -f.d) } else { format!("(-1 + sqrt({}))/2", -f.d) };
    let fcg = enumerate_reduced_forms(f.disc)?;
    Ok(FieldReport {
        schema: SCHEMA,
        d,
        disc: f.disc,
        theta,
        theta_min_poly: [f.b_theta, f.c_theta],
        omega_k: f.omega_k,
        class_number: f.class_number,
        forms: fcg.forms.iter().map(|q| [q.a, q.b, q.c]).collect(),
    })
}

pub fn cmd_orbit(d: i64, n: u64, level: Option<u64>) -> Result<OrbitReport> {
    let f = make_field(d)?;
    let level = level.unwrap_or(n);
    if !level.is_multiple_of(n) {
        bail!("level {level} is not a multiple of N = {n}");
    }
    let m = RayModulus::new(&f, level)?;
    let w = build_w_group(&f, level)?;
    let fcg = enumerate_reduced_forms(f.disc)?;
    Ok(OrbitReport {
        schema: SCHEMA,
        d,
        n,
        level,
        ray_class_degree: ray_class_degree(&m),
        orbit_size: w.cosets.len() * fcg.forms.len(),
        kernel: w.kernel.iter().map(|k| k.rows()).collect(),
        cosets: w.cosets.iter().map(|k| k.rows()).collect(),
        forms: fcg
            .forms
            .iter()
            .map(|q| FormBeta { form: [q.a, q.b, q.c], beta: beta_q_matrix(q, level).rows() })
            .collect(),
    })
}

struct Prepared {
    m: RayModulus,
    spec: InvariantSpec,
    level: u64,
}

fn prepare(cfg: &JobConfig) -> Result<Prepared> {
    cfg.validate()?;
    let m = cfg.modulus()?;
    let spec = build_spec(&m, cfg.invariant()?)?;
    let level = match cfg.level {
        Some(l) => {
            validate_level(&spec, l)?;
            l
        }
        None => natural_level(&spec, m.n)?,
    };
    Ok(Prepared { m, spec, level })
}

fn big_strings(p: &PolyZ) -> Vec<String> {
    p.descending().iter().map(|c| c.to_string()).collect()
}

/// Exact minimal polynomial; without an explicit precision, digits double until
/// the coefficients round cleanly.
pub fn cmd_minpoly(cfg: &JobConfig) -> Result<MinpolyReport> {
    let prep = prepare(cfg)?;
    let mut digits = cfg.precision.unwrap_or(DEFAULT_PRECISION);
    loop {
        let ctx = PrecisionContext::new(digits);
        let orbit = with_threads(cfg.threads, || evaluate_orbit_par(&prep.spec, &prep.m, prep.level, &ctx))??
            .with_conjugates_if_needed(-(digits as f64) / 3.0);
        match reconstruct_polynomial(&orbit, &ctx) {
            Ok(poly) => {
                let total = orbit.expanded().len();
                let over_q = orbit.include_conjugates;
                let base = ray_class_degree(&prep.m) as usize;
                let disc = discriminant(&poly);
                let fac = factor(&disc, DISC_TRIAL_BOUND);
                return Ok(MinpolyReport {
                    schema: SCHEMA,
                    job: cfg.clone(),
                    level: prep.level,
                    precision: digits,
                    orbit_size: orbit.values.len(),
                    multiplicity: total / poly.degree(),
                    over: if over_q { "Q" } else { "K" },
                    degree: poly.degree(),
                    generates: poly.degree() == if over_q { 2 * base } else { base },
                    coefficients: big_strings(&poly),
                    discriminant: disc.to_string(),
                    discriminant_factorization: fac.to_string(),
                    discriminant_fully_factored: fac.is_complete(),
                    unit: unit_check(&poly),
                });
            }
            Err(Error::IntegralityFailure { .. } | Error::MultiplicityMismatch { .. })
                if cfg.precision.is_none() && digits * 2 <= MAX_AUTO_PRECISION =>
            {
                digits *= 2;
            }
            Err(e) => return Err(e.into()),
        }
    }
}

/// Floating expansion of the orbit product, five significant digits.
pub fn cmd_minpoly_approx(cfg: &JobConfig) -> Result<ApproxReport> {
    let prep = prepare(cfg)?;
    let digits = cfg.precision.unwrap_or(DEFAULT_PRECISION);
    let ctx = PrecisionContext::new(digits);
    let orbit = with_threads(cfg.threads, || evaluate_orbit_par(&prep.spec, &prep.m, prep.level, &ctx))??;
    let coeffs = approx_polynomial(&orbit, &ctx);
    Ok(ApproxReport {
        schema: SCHEMA,
        job: cfg.clone(),
        level: prep.level,
        precision: digits,
        orbit_size: orbit.values.len(),
        degree: coeffs.len() - 1,
        coefficients: format_coefficients(&coeffs, 5),
    })
}

/// Real generator used by `dioph` when no polynomial file is given.
pub fn default_generator(n: u64, modulus: u64) -> Result<JobConfig> {
    let d = n as i64;
    if modulus.is_multiple_of(2) {
        let mut c = JobConfig::new(d, modulus, InvariantName::Thm62Real);
        c.t = Some(1);
        return Ok(c);
    }
    let square = (3..=modulus).step_by(2).find(|&p| cmforge_core::arith::is_prime(p) && modulus.is_multiple_of(p * p));
    match square {
        Some(p) => {
            let mut c = JobConfig::new(d, modulus, InvariantName::Cor63);
            c.p = Some(p);
            Ok(c)
        }
        None => bail!("no built-in real generator for N = {modulus}; pass --minpoly-file"),
    }
}

pub fn cmd_dioph(n: u64, modulus: u64, bound: u64, poly: Option<PolyZ>, precision: Option<u32>, threads: usize) -> Result<DiophReportOut> {
    let f = match poly {
        Some(p) => p,
        None => {
            let mut cfg = default_generator(n, modulus)?;
            cfg.precision = precision;
            cfg.threads = threads;
            let rep = cmd_minpoly(&cfg)?;
            if rep.over != "K" {
                bail!("generator is not real; its minimal polynomial over K is not rational");
            }
            PolyZ::from_descending(
                &rep.coefficients.iter().map(|c| c.parse::<num_bigint::BigInt>()).collect::<Result<Vec<_>, _>>()?,
            )?
        }
    };
    let crit = Criterion::new(n, modulus, f)?;
    let rep = with_threads(threads, || cross_validate_par(&crit, bound))?;
    Ok(DiophReportOut {
        schema: SCHEMA,
        n,
        modulus,
        prime_bound: bound,
        polynomial: big_strings(&crit.f),
        disc_excluded_primes: rep.disc_excluded_primes,
        modulus_excluded_primes: rep.modulus_excluded_primes,
        checked: rep.checked,
        representable: rep.representable,
        mismatches: rep
            .mismatches
            .iter()
            .map(|m| MismatchEntry { p: m.p, criterion: m.criterion, representation: m.representation })
            .collect(),
    })
}
