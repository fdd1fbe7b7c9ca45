//! Rayon versions of the orbit and prime-range loops.
//!
//! Results are collected in index order, so output never depends on the
//! number of threads.

use anyhow::Result;
use cmforge_core::diophantine::{assemble_report, compare_prime, odd_primes, Criterion, DiophReport};
use cmforge_core::minpoly::{OrbitPlan, OrbitValues};
use cmforge_core::{InvariantSpec, PrecisionContext, RayModulus};
use rayon::prelude::*;

pub fn evaluate_orbit_par(
    spec: &InvariantSpec,
    m: &RayModulus,
    level: u64,
    ctx: &PrecisionContext,
) -> cmforge_core::Result<OrbitValues> {
    let plan = OrbitPlan::new(spec, m, level)?;
    let points = plan.points(ctx);
    let values = (0..plan.len())
        .into_par_iter()
        .map(|i| plan.evaluate(i, &points, ctx))
        .collect::<cmforge_core::Result<Vec<_>>>()?;
    Ok(OrbitValues::new(values, m))
}

pub fn cross_validate_par(c: &Criterion, bound: u64) -> DiophReport {
    let outcomes: Vec<_> = odd_primes(bound)
        .into_par_iter()
        .map(|p| (p, compare_prime(c, p).ok()))
        .collect();
    assemble_report(c, bound, &outcomes)
}

/// Run `f` on a pool with `threads` workers, or the global pool when 0.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    Ok(pool.install(f))
}
