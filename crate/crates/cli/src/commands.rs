use clone_bound::bound::{feasible, max_eta_closed_form, max_eta_grid};
use clone_bound::buzek_hillery::bh_clone;
use clone_bound::cloner::{
    axial_covariance_residual, clone_fidelity, covariance_constraint_residual,
    max_no_signaling_residual, positivity_eigenvalues, ClonerParams, CovariantCloner,
    DEFAULT_AXIAL_ANGLES,
};
use clone_bound::linalg::Mat4;
use clone_bound::rotation::random_unit_vector;
use clone_bound::signaling::monte_carlo_signal;
use clone_bound::state::{bloch_to_density, overlap_fidelity, partial_trace, Qubit};
use clone_bound::{AnyParams, Bloch, Bound, Rational64, Report};
use num_traits::ToPrimitive;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{
    defaults, CloneArgs, Method, OptimizeArgs, SignalArgs, SweepArgs, Triple, VerifyArgs,
};

/// Threshold for the structural residuals (covariance, axial, no-signaling).
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Threshold for trace, positivity and fidelity checks in `clone`.
pub const CLONE_TOL: f64 = 1e-9;
/// Allowed amount by which a grid optimum may exceed the closed form.
pub const DISCREPANCY_TOL: f64 = 1e-12;

/// A serializable report and whether its checks passed.
pub struct Outcome {
    pub records: Records,
    pub pass: bool,
}

pub enum Records {
    One(serde_json::Value),
    Many(Vec<SweepRow>),
}

fn one<S: Serialize>(report: &S) -> Result<Records, String> {
    serde_json::to_value(report)
        .map(Records::One)
        .map_err(|e| e.to_string())
}

fn bloch(t: Triple) -> Bloch {
    let [x, y, z] = t.0;
    Bloch::new(x, y, z)
}

fn family_fields(p: &AnyParams) -> (Option<f64>, Option<f64>) {
    match p {
        AnyParams::Family(f) => (Some(f.t), Some(f.t_xy)),
        AnyParams::General(_) => (None, None),
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub eta: f64,
    pub t: Option<f64>,
    pub t_xy: Option<f64>,
    pub t_matrix: [[f64; 3]; 3],
    pub eigenvalues: [f64; 4],
    pub min_eigenvalue: f64,
    pub fidelity: f64,
    pub covariance_residual: f64,
    pub axial_residual: f64,
    pub no_signaling_residual: f64,
    pub axis_pairs: usize,
    pub residual_tol: f64,
    pub positivity_tol: f64,
    pub covariance_pass: bool,
    pub axial_pass: bool,
    pub no_signaling_pass: bool,
    pub positivity_pass: bool,
    pub pass: bool,
}

/// Coordinate axes in every pairing, then `n` seeded random pairs.
pub fn verify_axis_pairs(seed: u64, n: usize) -> Vec<(Bloch, Bloch)> {
    let (x, y, z) = (Bloch::unit_x(), Bloch::unit_y(), Bloch::unit_z());
    let mut pairs = vec![(z, x), (z, y), (x, y)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n {
        let a = random_unit_vector(&mut rng);
        let b = random_unit_vector(&mut rng);
        pairs.push((a, b));
    }
    pairs
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, String> {
    let p = args.params.resolve()?;
    let err = |e: clone_bound::Error| e.to_string();
    let t_matrix = p.correlation_tensor_z();
    let eigenvalues = match &p {
        AnyParams::Family(f) => positivity_eigenvalues(f).sorted_desc(),
        AnyParams::General(_) => p.output_z().map_err(err)?.eigenvalues(),
    };
    let min_eigenvalue = eigenvalues[3];

    let covariance_residual = covariance_constraint_residual(&t_matrix);
    let pairs = verify_axis_pairs(args.seed, defaults::VERIFY_PAIRS);
    let mut axial_residual = 0.0f64;
    for m in [Bloch::unit_z(), Bloch::unit_x(), Bloch::unit_y()]
        .into_iter()
        .chain(pairs.iter().take(8).map(|&(a, _)| a))
    {
        let rho = p.output(m).map_err(err)?;
        axial_residual =
            axial_residual.max(axial_covariance_residual(&rho, m, DEFAULT_AXIAL_ANGLES));
    }
    let no_signaling_residual = max_no_signaling_residual(&p, &pairs).map_err(err)?;

    let covariance_pass = covariance_residual <= RESIDUAL_TOL;
    let axial_pass = axial_residual <= RESIDUAL_TOL;
    let no_signaling_pass = no_signaling_residual <= RESIDUAL_TOL;
    let positivity_pass = min_eigenvalue >= -args.tol;
    let (t, t_xy) = family_fields(&p);
    let report = VerifyReport {
        eta: p.eta(),
        t,
        t_xy,
        t_matrix,
        eigenvalues,
        min_eigenvalue,
        fidelity: (1.0 + p.eta()) / 2.0,
        covariance_residual,
        axial_residual,
        no_signaling_residual,
        axis_pairs: pairs.len(),
        residual_tol: RESIDUAL_TOL,
        positivity_tol: args.tol,
        covariance_pass,
        axial_pass,
        no_signaling_pass,
        positivity_pass,
        pass: covariance_pass && axial_pass && no_signaling_pass && positivity_pass,
    };
    Ok(Outcome {
        pass: report.pass,
        records: one(&report)?,
    })
}

#[derive(Serialize)]
pub struct OptimizeReport {
    pub method: &'static str,
    pub closed_form_eta_max: Option<f64>,
    pub closed_form_eta_max_exact: Option<String>,
    pub closed_form_t_star: Option<f64>,
    pub closed_form_t_star_exact: Option<String>,
    pub closed_form_t_xy_star: Option<f64>,
    pub closed_form_t_xy_star_exact: Option<String>,
    pub closed_form_fidelity_max: Option<f64>,
    pub closed_form_fidelity_max_exact: Option<String>,
    pub grid_resolution: Option<usize>,
    pub grid_eta_max: Option<f64>,
    pub grid_t_star: Option<f64>,
    pub grid_t_xy_star: Option<f64>,
    pub grid_fidelity_max: Option<f64>,
    pub grid_feasible: Option<bool>,
    /// Closed-form η_max minus grid η_max.
    pub discrepancy: Option<f64>,
    pub pass: bool,
}

fn rational_f64(q: Rational64) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn optimize(args: &OptimizeArgs) -> Result<Outcome, String> {
    let exact = max_eta_closed_form::<Rational64>();
    let run_closed = args.method != Method::Grid;
    let grid: Option<Bound> = if args.method == Method::ClosedForm {
        None
    } else {
        Some(max_eta_grid::<f64>(args.resolution).map_err(|e| e.to_string())?)
    };
    let closed = |q: Rational64| run_closed.then(|| rational_f64(q));
    let closed_exact = |q: Rational64| run_closed.then(|| q.to_string());
    let discrepancy = grid.map(|g| rational_f64(exact.eta_max) - g.eta_max);
    let grid_feasible = grid.map(|g| feasible(&g.params()));
    let report = OptimizeReport {
        method: match args.method {
            Method::Both => "both",
            Method::ClosedForm => "closed_form",
            Method::Grid => "grid",
        },
        closed_form_eta_max: closed(exact.eta_max),
        closed_form_eta_max_exact: closed_exact(exact.eta_max),
        closed_form_t_star: closed(exact.t_star),
        closed_form_t_star_exact: closed_exact(exact.t_star),
        closed_form_t_xy_star: closed(exact.t_xy_star),
        closed_form_t_xy_star_exact: closed_exact(exact.t_xy_star),
        closed_form_fidelity_max: closed(exact.fidelity_max),
        closed_form_fidelity_max_exact: closed_exact(exact.fidelity_max),
        grid_resolution: grid.and_then(|g| g.resolution),
        grid_eta_max: grid.map(|g| g.eta_max),
        grid_t_star: grid.map(|g| g.t_star),
        grid_t_xy_star: grid.map(|g| g.t_xy_star),
        grid_fidelity_max: grid.map(|g| g.fidelity_max),
        grid_feasible,
        discrepancy,
        pass: discrepancy.is_none_or(|d| d >= -DISCREPANCY_TOL) && grid_feasible.unwrap_or(true),
    };
    Ok(Outcome {
        pass: report.pass,
        records: one(&report)?,
    })
}

#[derive(Serialize)]
pub struct CloneReport {
    pub input: Bloch,
    /// ρ_out as rows of [re, im] pairs, basis |00⟩, |01⟩, |10⟩, |11⟩.
    pub output: Mat4<f64>,
    pub trace: f64,
    pub eigenvalues: [f64; 4],
    pub min_eigenvalue: f64,
    pub pauli_c00: f64,
    pub pauli_a: [f64; 3],
    pub pauli_b: [f64; 3],
    pub pauli_t: [[f64; 3]; 3],
    pub clone_a_bloch: Bloch,
    pub clone_b_bloch: Bloch,
    pub fidelity_a: f64,
    pub fidelity_b: f64,
    pub fidelity_bound: f64,
    pub fidelity_bound_exact: String,
    pub pass: bool,
}

pub fn clone(args: &CloneArgs) -> Result<Outcome, String> {
    let err = |e: clone_bound::Error| e.to_string();
    let input = bloch(args.input);
    let psi = bloch_to_density(input).map_err(err)?;
    let out = bh_clone(&psi);
    let c = out.pauli();
    let clone_a = partial_trace(&out, Qubit::First).map_err(err)?;
    let clone_b = partial_trace(&out, Qubit::Second).map_err(err)?;
    let fidelity_a = overlap_fidelity(&psi, &clone_a).map_err(err)?;
    let fidelity_b = overlap_fidelity(&psi, &clone_b).map_err(err)?;
    let bound = clone_bound::bound::fidelity_bound::<Rational64>();
    let bound_f = rational_f64(bound);
    let eigenvalues = out.eigenvalues();
    let trace = out.matrix().trace().re;
    let pass = (trace - 1.0).abs() <= CLONE_TOL
        && eigenvalues[3] >= -CLONE_TOL
        && (fidelity_a - bound_f).abs() <= CLONE_TOL
        && (fidelity_b - bound_f).abs() <= CLONE_TOL;
    let report = CloneReport {
        input,
        output: *out.matrix(),
        trace,
        eigenvalues,
        min_eigenvalue: eigenvalues[3],
        pauli_c00: c.c00,
        pauli_a: c.a,
        pauli_b: c.b,
        pauli_t: c.t,
        clone_a_bloch: clone_a.bloch(),
        clone_b_bloch: clone_b.bloch(),
        fidelity_a,
        fidelity_b,
        fidelity_bound: bound_f,
        fidelity_bound_exact: bound.to_string(),
        pass,
    };
    Ok(Outcome {
        pass,
        records: one(&report)?,
    })
}

#[derive(Serialize)]
pub struct SignalOutput {
    pub eta: f64,
    pub t: Option<f64>,
    pub t_xy: Option<f64>,
    pub t_matrix: [[f64; 3]; 3],
    #[serde(flatten)]
    pub report: Report,
    /// Binomial standard error of the Monte-Carlo estimate.
    pub mc_standard_error: Option<f64>,
    pub residual_tol: f64,
    pub pass: bool,
}

pub fn signal(args: &SignalArgs) -> Result<Outcome, String> {
    let p = args.params.resolve()?;
    let shots = usize::try_from(args.shots).map_err(|e| e.to_string())?;
    let report = monte_carlo_signal(&p, bloch(args.axis_a), bloch(args.axis_b), shots, args.seed)
        .map_err(|e| e.to_string())?;
    let mc_standard_error = report
        .mc_estimate
        .map(|q| (q * (1.0 - q) / report.mc_shots as f64).sqrt());
    let pass = report.physical && report.no_signaling_residual <= RESIDUAL_TOL;
    let (t, t_xy) = family_fields(&p);
    let output = SignalOutput {
        eta: p.eta(),
        t,
        t_xy,
        t_matrix: p.correlation_tensor_z(),
        report,
        mc_standard_error,
        residual_tol: RESIDUAL_TOL,
        pass,
    };
    Ok(Outcome {
        pass,
        records: one(&output)?,
    })
}

/// Column order is the CSV header:
/// `eta,t,t_xy,lambda1,lambda2,lambda3,lambda4,min_eigenvalue,feasible,fidelity`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SweepRow {
    pub eta: f64,
    pub t: f64,
    pub t_xy: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub lambda4: f64,
    pub min_eigenvalue: f64,
    pub feasible: bool,
    pub fidelity: f64,
}

/// `−1 + 2i/(n−1)`, rounded once from the exact fraction.
fn sweep_coordinate(i: usize, resolution: usize) -> f64 {
    let n = (resolution - 1) as i64;
    rational_f64(Rational64::new(2 * i as i64 - n, n))
}

/// Rows ordered with η outermost and t_xy innermost.
pub fn sweep_rows(resolution: usize) -> Vec<SweepRow> {
    let coords: Vec<f64> = (0..resolution)
        .map(|i| sweep_coordinate(i, resolution))
        .collect();
    let mut rows = Vec::with_capacity(resolution.pow(3));
    for &eta in &coords {
        for &t in &coords {
            for &t_xy in &coords {
                let p = ClonerParams { eta, t, t_xy };
                let lam = positivity_eigenvalues(&p);
                rows.push(SweepRow {
                    eta,
                    t,
                    t_xy,
                    lambda1: lam.lam1,
                    lambda2: lam.lam2,
                    lambda3: lam.lam3,
                    lambda4: lam.lam4,
                    min_eigenvalue: lam.min(),
                    feasible: feasible(&p),
                    fidelity: clone_fidelity(&p),
                });
            }
        }
    }
    rows
}

pub fn sweep(args: &SweepArgs) -> Result<Outcome, String> {
    Ok(Outcome {
        records: Records::Many(sweep_rows(args.resolution)),
        pass: true,
    })
}
