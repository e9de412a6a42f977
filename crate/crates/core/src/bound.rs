//! Maximal shrink factor over the no-signaling family, subject to positivity.
//!
//! Two independent routes:
//!
//! * [`max_eta_closed_form`] solves the boundary equations symbolically in any
//!   ordered field, so it runs on exact rationals as well as floats.
//! * [`max_eta_grid`] scans `(t, t_xy) ∈ [−1, 1]²`, puts η at the ceiling
//!   `(1 + t)/2` set by the first eigenvalue pair, and keeps the best point
//!   whose four eigenvalues are all non-negative.

use rayon::prelude::*;
use serde::Serialize;

use crate::cloner::{positivity_eigenvalues, ClonerParams};
use crate::error::{Error, Result};
use crate::scalar::{Field, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    ClosedForm,
    Grid,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundResult<T> {
    pub eta_max: T,
    pub t_star: T,
    pub t_xy_star: T,
    pub fidelity_max: T,
    pub method: BoundMethod,
    /// Grid points per axis; `None` for the closed form.
    pub resolution: Option<usize>,
}

impl<T: Real> BoundResult<T> {
    pub fn params(&self) -> ClonerParams<T> {
        ClonerParams {
            eta: self.eta_max,
            t: self.t_star,
            t_xy: self.t_xy_star,
        }
    }
}

/// True iff every closed-form eigenvalue of ρ_out(↑) is ≥ −`feasibility_tol`.
pub fn feasible<T: Real>(p: &ClonerParams<T>) -> bool {
    positivity_eigenvalues(p).min() >= -T::feasibility_tol()
}

/// Exact maximizer of η.
///
/// For fixed `(t, t_xy)` the pair `(1 ± 2η + t)/4 ≥ 0` caps η at `(1 + t)/2`,
/// increasing in `t`. The pair `(1 − t ± 2√(t² + t_xy²))/4 ≥ 0` bounds `t`;
/// since `√(t² + t_xy²) ≥ |t|` with equality iff `t_xy = 0`, the admissible
/// `t`-range is widest at `t_xy = 0`, where the binding constraint becomes
/// piecewise linear: `1 − 3t ≥ 0` for `t ≥ 0` and `1 + t ≥ 0` for `t < 0`.
pub fn max_eta_closed_form<F: Field>() -> BoundResult<F> {
    let one = F::one();
    let two = F::two();
    let zero = F::zero();

    let t_xy_star = zero;
    // Root of 1 − t − 2t = 0 on the t ≥ 0 branch.
    let t_upper = one / (one + two);
    // The t < 0 branch is bounded above by 0, whose ceiling 1/2 is dominated.
    let ceiling = |t: F| (one + t) / two;
    let t_star = if ceiling(t_upper) >= ceiling(zero) {
        t_upper
    } else {
        zero
    };
    let eta_max = ceiling(t_star);
    BoundResult {
        eta_max,
        t_star,
        t_xy_star,
        fidelity_max: (one + eta_max) / two,
        method: BoundMethod::ClosedForm,
        resolution: None,
    }
}

/// The optimal cloning fidelity, (1 + η_max)/2.
pub fn fidelity_bound<F: Field>() -> F {
    max_eta_closed_form::<F>().fidelity_max
}

/// `−1 + 2i/(n−1)`.
pub fn grid_coordinate<T: Real>(i: usize, resolution: usize) -> T {
    -T::one() + T::lit(2.0) * T::lit(i as f64) / T::lit((resolution - 1) as f64)
}

/// Higher η wins; among equal η the larger margin on the `(t, t_xy)`
/// eigenvalue pair wins; remaining ties go to the lexicographically smaller
/// `(t, t_xy)`.
fn better<T: Real>(a: Candidate<T>, b: Candidate<T>) -> Candidate<T> {
    use std::cmp::Ordering;
    let key = |c: &Candidate<T>| (c.params.eta, c.margin);
    match key(&a).partial_cmp(&key(&b)) {
        Some(Ordering::Greater) => a,
        Some(Ordering::Less) => b,
        _ => {
            if (a.params.t, a.params.t_xy) <= (b.params.t, b.params.t_xy) {
                a
            } else {
                b
            }
        }
    }
}

#[derive(Clone, Copy)]
struct Candidate<T> {
    params: ClonerParams<T>,
    feasible: bool,
    /// Smallest eigenvalue of the pair that does not involve η.
    margin: T,
}

/// Brute-force scan of `(t, t_xy)` on a `resolution × resolution` grid.
/// Rows are searched in parallel; the result does not depend on scheduling.
pub fn max_eta_grid<T: Real>(resolution: usize) -> Result<BoundResult<T>> {
    if resolution < 3 {
        return Err(Error::InvalidResolution(resolution));
    }
    let half = T::lit(0.5);
    let best = (0..resolution)
        .into_par_iter()
        .filter_map(|i| {
            let t = grid_coordinate::<T>(i, resolution);
            let eta = (T::one() + t) * half;
            (0..resolution)
                .map(|j| {
                    let params = ClonerParams {
                        eta,
                        t,
                        t_xy: grid_coordinate(j, resolution),
                    };
                    let eig = positivity_eigenvalues(&params);
                    Candidate {
                        params,
                        feasible: eig.min() >= -T::feasibility_tol(),
                        margin: eig.lam3.min(eig.lam4),
                    }
                })
                .filter(|c| c.feasible)
                .reduce(better)
        })
        .reduce_with(better)
        .ok_or(Error::InvalidResolution(resolution))?
        .params;
    Ok(BoundResult {
        eta_max: best.eta,
        t_star: best.t,
        t_xy_star: best.t_xy,
        fidelity_max: (T::one() + best.eta) * half,
        method: BoundMethod::Grid,
        resolution: Some(resolution),
    })
}
