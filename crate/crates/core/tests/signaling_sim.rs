mod common;

use clone_bound::buzek_hillery::bh_family_point;
use clone_bound::cloner::{ClonerParams, GeneralClonerParams};
use clone_bound::signaling::{
    averaged_clone_output, monte_carlo_signal, remote_mixture, signaling_advantage, singlet,
};
use clone_bound::state::{partial_trace, BlochVector, Qubit};
use common::*;
use rand::Rng;

fn violator() -> GeneralClonerParams<f64> {
    GeneralClonerParams::diagonal(0.0, [0.0, 0.0, 1.0 / 3.0]).unwrap()
}

#[test]
fn remote_preparation_leaves_bob_unchanged() {
    let mut rng = rng(40);
    let bob = partial_trace(&singlet::<f64>(), Qubit::Second).unwrap();
    for _ in 0..50 {
        let axis = random_axis(&mut rng);
        let avg = remote_mixture(axis).unwrap().average_density().unwrap();
        assert!((*avg.matrix() - *bob.matrix()).max_abs() < 1e-14);
    }
}

#[test]
fn family_members_give_no_signal_for_random_axes() {
    let mut rng = rng(41);
    for _ in 0..100 {
        let p = ClonerParams::new(
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
        )
        .unwrap();
        let (a, b) = (random_axis(&mut rng), random_axis(&mut rng));
        let r = signaling_advantage(&p, a, b).unwrap();
        assert!(r.trace_distance < 1e-12);
        assert!(r.no_signaling_residual < 1e-12);
        assert!((r.helstrom_probability - 0.5).abs() < 1e-12);
    }
}

#[test]
fn diagonal_tensors_signal_by_half_the_anisotropy() {
    let mut rng = rng(42);
    let (z, x) = (BlochVector::unit_z(), BlochVector::unit_x());
    for _ in 0..100 {
        let d: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
        let p = GeneralClonerParams::diagonal(0.0, d).unwrap();
        let r = signaling_advantage(&p, z, x).unwrap();
        let gap = (d[2] - d[0]).abs();
        assert!((r.trace_distance - gap / 2.0).abs() < 1e-12);
        assert!((r.no_signaling_residual - gap).abs() < 1e-12);
        assert!((r.helstrom_probability - 0.5 - gap / 4.0).abs() < 1e-12);
    }
}

#[test]
fn averaged_outputs_have_unit_trace() {
    let avg = averaged_clone_output(&violator(), BlochVector::unit_x()).unwrap();
    assert!((avg.matrix().trace().re - 1.0).abs() < 1e-15);
}

#[test]
fn monte_carlo_is_unbiased_across_seeds() {
    let p = violator();
    let (z, x) = (BlochVector::unit_z(), BlochVector::unit_x());
    let shots = 10_000;
    let seeds = 50;
    let mean: f64 = (0..seeds)
        .map(|s| {
            monte_carlo_signal(&p, z, x, shots, s)
                .unwrap()
                .mc_estimate
                .unwrap()
        })
        .sum::<f64>()
        / seeds as f64;
    let want = 7.0 / 12.0;
    let sigma = (want * (1.0 - want) / shots as f64).sqrt() / (seeds as f64).sqrt();
    assert!((mean - want).abs() < 4.0 * sigma, "mean {mean}");
}

#[test]
fn monte_carlo_matches_helstrom_probability() {
    let (z, x) = (BlochVector::unit_z(), BlochVector::unit_x());
    let shots = 100_000;
    let bh = bh_family_point::<f64>().unwrap();
    for (report, want) in [
        (monte_carlo_signal(&bh, z, x, shots, 3).unwrap(), 0.5),
        (
            monte_carlo_signal(&violator(), z, x, shots, 3).unwrap(),
            7.0 / 12.0,
        ),
    ] {
        assert!(report.physical);
        assert!((report.helstrom_probability - want).abs() < 1e-12);
        let sigma = (want * (1.0 - want) / shots as f64).sqrt();
        let est = report.mc_estimate.unwrap();
        assert!((est - want).abs() < 4.0 * sigma, "{est} vs {want}");
    }
}

#[test]
fn transcript_depends_only_on_seed_and_shots() {
    let (z, x) = (BlochVector::unit_z(), BlochVector::unit_x());
    let p = violator();
    let a = monte_carlo_signal(&p, z, x, 30_000, 11).unwrap();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let b = pool.install(|| monte_carlo_signal(&p, z, x, 30_000, 11).unwrap());
    assert_eq!(a, b);
    let c = monte_carlo_signal(&p, z, x, 30_000, 12).unwrap();
    assert_ne!(a.mc_estimate, c.mc_estimate);
}
