//! The remote-preparation experiment that turns a too-good cloner into a
//! signaling device.
//!
//! Alice and Bob share a singlet. Alice measures her qubit along axis `a` or
//! axis `b`, which leaves Bob's qubit in `±axis` with probability ½ each; the
//! average is always 𝟙/2. Bob runs his qubit through a cloner and measures the
//! clone pair to guess which axis Alice used. For cloners in the no-signaling
//! family the two averaged outputs coincide and Bob learns nothing.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use num_complex::Complex;

use crate::cloner::{no_signaling_residual, CovariantCloner};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, Mat4};
use crate::scalar::Real;
use crate::state::{bloch_to_density, BlochVector, OneQubitState, TwoQubitState};

/// Shots per independent ChaCha8 stream in [`monte_carlo_signal`].
pub const SHOTS_PER_STREAM: usize = 8192;

/// A preparation ensemble on Bob's side: `(probability, Bloch direction)` pairs.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Real")]
pub struct RemoteEnsemble<T> {
    pub axis: BlochVector<T>,
    pub components: Vec<(T, BlochVector<T>)>,
}

impl<T: Real> RemoteEnsemble<T> {
    pub fn average_density(&self) -> Result<OneQubitState<T>> {
        let mut m = crate::linalg::Mat2::<T>::zeros();
        for &(p, dir) in &self.components {
            m = m + bloch_to_density(dir)?.matrix().scale(p);
        }
        OneQubitState::new(m)
    }
}

/// |Ψ⁻⟩⟨Ψ⁻| with |Ψ⁻⟩ = (|↑↓⟩ − |↓↑⟩)/√2.
pub fn singlet<T: Real>() -> TwoQubitState<T> {
    let h = T::FRAC_1_SQRT_2();
    let z = Complex::new(T::zero(), T::zero());
    TwoQubitState::pure([
        z,
        Complex::new(h, T::zero()),
        Complex::new(-h, T::zero()),
        z,
    ])
    .expect("singlet is a valid state")
}

/// Bob's ensemble after Alice measures `axis·σ` on her half of the singlet.
pub fn remote_mixture<T: Real>(axis: BlochVector<T>) -> Result<RemoteEnsemble<T>> {
    let axis = axis.require_unit()?;
    let half = T::lit(0.5);
    Ok(RemoteEnsemble {
        axis,
        components: vec![(half, axis), (half, -axis)],
    })
}

/// ½ (ρ_out(axis) + ρ_out(−axis)).
pub fn averaged_clone_output<T: Real, C: CovariantCloner<T> + ?Sized>(
    p: &C,
    axis: BlochVector<T>,
) -> Result<TwoQubitState<T>> {
    let axis = axis.require_unit()?;
    let plus = p.output(axis)?;
    let minus = p.output(-axis)?;
    TwoQubitState::new((*plus.matrix() + *minus.matrix()).scale(T::lit(0.5)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Real")]
pub struct SignalReport<T> {
    pub axis_a: BlochVector<T>,
    pub axis_b: BlochVector<T>,
    /// ½‖ρ̄_a − ρ̄_b‖₁ between the two averaged clone-pair outputs.
    pub trace_distance: T,
    /// ½ + D/2: optimal single-shot probability of guessing Alice's axis.
    pub helstrom_probability: T,
    /// Trace distance between the unnormalized sums ρ(a)+ρ(−a) and ρ(b)+ρ(−b).
    pub no_signaling_residual: T,
    /// Smallest eigenvalue among the four prepared outputs ρ_out(±a), ρ_out(±b).
    pub min_output_eigenvalue: T,
    /// False if some prepared output is non-positive beyond round-off; the
    /// Monte-Carlo fields are then left empty.
    pub physical: bool,
    pub mc_estimate: Option<T>,
    pub mc_shots: usize,
    pub seed: Option<u64>,
}

/// Projector onto the strictly positive eigenspace of ρ̄_a − ρ̄_b.
fn helstrom_projector<T: Real>(
    rho_a: &TwoQubitState<T>,
    rho_b: &TwoQubitState<T>,
) -> Result<Mat4<T>> {
    let eig = hermitian_eigen(&(*rho_a.matrix() - *rho_b.matrix()))?;
    let cut = T::exact_tol();
    Ok(eig.reconstruct_with(|l| if l > cut { T::one() } else { T::zero() }))
}

/// Analytic fields of the report.
pub fn signaling_advantage<T: Real, C: CovariantCloner<T> + ?Sized>(
    p: &C,
    axis_a: BlochVector<T>,
    axis_b: BlochVector<T>,
) -> Result<SignalReport<T>> {
    let rho_a = averaged_clone_output(p, axis_a)?;
    let rho_b = averaged_clone_output(p, axis_b)?;
    let d = crate::state::trace_distance(&rho_a, &rho_b);
    let min_output_eigenvalue = [axis_a, -axis_a, axis_b, -axis_b]
        .into_iter()
        .map(|m| p.output(m).map(|s| s.min_eigenvalue()))
        .try_fold(T::infinity(), |acc, v| v.map(|v| acc.min(v)))?;
    Ok(SignalReport {
        axis_a,
        axis_b,
        trace_distance: d,
        helstrom_probability: T::lit(0.5) + d * T::lit(0.5),
        no_signaling_residual: no_signaling_residual(p, axis_a, axis_b)?,
        min_output_eigenvalue,
        physical: min_output_eigenvalue >= -T::state_tol(),
        mc_estimate: None,
        mc_shots: 0,
        seed: None,
    })
}

/// Clips round-off negativity (down to −`state_tol`) and renormalizes.
fn clipped<T: Real>(rho: &TwoQubitState<T>) -> Result<Mat4<T>> {
    let eig = hermitian_eigen(rho.matrix())?;
    let min = eig.values[3];
    if min < -T::state_tol() {
        return Err(Error::NotPhysical {
            min_eigenvalue: min.as_f64(),
        });
    }
    let total: T = eig.values.iter().map(|&l| l.max(T::zero())).sum();
    Ok(eig.reconstruct_with(|l| l.max(T::zero()) / total))
}

/// Uniform in [0, 1) from the top 53 bits of a word.
fn unit_interval(word: u64) -> f64 {
    (word >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Simulates the distinguishing game for `shots` rounds.
///
/// Random stream: ChaCha8 seeded with `seed`; shots are split into batches of
/// [`SHOTS_PER_STREAM`], batch `k` using stream `k`. Each shot consumes two
/// `u64` words: bit 63 of the first picks Alice's axis (0 → a, 1 → b) and bit 62
/// her outcome (0 → +, 1 → −); the second word, as a 53-bit uniform `u`, yields
/// Bob's Helstrom outcome "a" when `u < Tr(P ρ_out)`. The transcript depends
/// only on `(seed, shots)`, not on thread count.
///
/// If a prepared output is non-positive beyond round-off the report comes back
/// with `physical = false` and no Monte-Carlo estimate.
pub fn monte_carlo_signal<T: Real, C: CovariantCloner<T> + ?Sized>(
    p: &C,
    axis_a: BlochVector<T>,
    axis_b: BlochVector<T>,
    shots: usize,
    seed: u64,
) -> Result<SignalReport<T>> {
    if shots == 0 {
        return Err(Error::InvalidShots);
    }
    let mut report = signaling_advantage(p, axis_a, axis_b)?;
    report.mc_shots = shots;
    report.seed = Some(seed);

    let projector = helstrom_projector(
        &averaged_clone_output(p, axis_a)?,
        &averaged_clone_output(p, axis_b)?,
    )?;
    // Order: a+, a−, b+, b−.
    let mut guess_a = [0.0f64; 4];
    for (k, m) in [axis_a, -axis_a, axis_b, -axis_b].into_iter().enumerate() {
        let rho = match clipped(&p.output(m)?) {
            Ok(rho) => rho,
            Err(Error::NotPhysical { .. }) => {
                report.physical = false;
                return Ok(report);
            }
            Err(e) => return Err(e),
        };
        guess_a[k] = (projector * rho).trace().re.as_f64().clamp(0.0, 1.0);
    }

    let batches = shots.div_ceil(SHOTS_PER_STREAM);
    let correct: u64 = (0..batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(batch as u64);
            let n = SHOTS_PER_STREAM.min(shots - batch * SHOTS_PER_STREAM);
            let mut hits = 0u64;
            for _ in 0..n {
                let w = rng.next_u64();
                let alice_b = (w >> 63) & 1 == 1;
                let minus = (w >> 62) & 1 == 1;
                let idx = 2 * usize::from(alice_b) + usize::from(minus);
                let bob_says_a = unit_interval(rng.next_u64()) < guess_a[idx];
                if bob_says_a != alice_b {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    report.mc_estimate = Some(T::lit(correct as f64 / shots as f64));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cloner::{ClonerParams, GeneralClonerParams};
    use crate::linalg::Mat2;
    use crate::state::{partial_trace, Qubit};
    use approx::assert_abs_diff_eq;

    fn violator() -> GeneralClonerParams<f64> {
        GeneralClonerParams::diagonal(0.0, [0.0, 0.0, 1.0 / 3.0]).unwrap()
    }

    #[test]
    fn singlet_reduces_to_half_identity() {
        let s = singlet::<f64>();
        for keep in [Qubit::First, Qubit::Second] {
            let r = partial_trace(&s, keep).unwrap();
            assert!((*r.matrix() - Mat2::identity().scale(0.5)).max_abs() < 1e-15);
        }
        let eig = s.eigenvalues();
        assert_abs_diff_eq!(eig[0], 1.0, epsilon = 1e-15);
        assert!(eig[1..].iter().all(|v| v.abs() < 1e-15));
        let c = s.pauli();
        assert_eq!(c.a, [0.0; 3]);
        for j in 0..3 {
            for k in 0..3 {
                let want = if j == k { -1.0 } else { 0.0 };
                assert_abs_diff_eq!(c.t[j][k], want, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn remote_mixtures_average_to_half_identity() {
        for axis in [
            BlochVector::unit_z(),
            BlochVector::unit_x(),
            BlochVector::new(0.0, 0.6, 0.8),
        ] {
            let e = remote_mixture::<f64>(axis).unwrap();
            assert_eq!(e.components, vec![(0.5, axis), (0.5, -axis)]);
            let avg = e.average_density().unwrap();
            assert!((*avg.matrix() - Mat2::identity().scale(0.5)).max_abs() < 1e-15);
        }
        assert!(remote_mixture(BlochVector::new(0.0, 0.0, 0.5)).is_err());
    }

    #[test]
    fn family_average_is_axis_independent() {
        let p = ClonerParams::new(0.5, 0.2, 0.3).unwrap();
        let expected = ClonerParams::new(0.0, 0.2, 0.0).unwrap();
        let expected = crate::cloner::output_state_z(&expected);
        for axis in [
            BlochVector::unit_z(),
            BlochVector::unit_x(),
            BlochVector::new(0.48, 0.6, 0.64),
        ] {
            let avg = averaged_clone_output(&p, axis).unwrap();
            assert!(avg.max_abs_diff(&expected) < 1e-15);
        }
    }

    #[test]
    fn violator_averages_are_rotated_templates() {
        let zz = averaged_clone_output(&violator(), BlochVector::unit_z())
            .unwrap()
            .pauli();
        assert_abs_diff_eq!(zz.t[2][2], 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            zz.max_abs_diff(&crate::pauli::PauliCoefficients {
                c00: 1.0,
                t: [[0.0; 3], [0.0; 3], [0.0, 0.0, 1.0 / 3.0]],
                ..Default::default()
            }),
            0.0,
            epsilon = 1e-15
        );
        let xx = averaged_clone_output(&violator(), BlochVector::unit_x())
            .unwrap()
            .pauli();
        assert_abs_diff_eq!(
            xx.max_abs_diff(&crate::pauli::PauliCoefficients {
                c00: 1.0,
                t: [[1.0 / 3.0, 0.0, 0.0], [0.0; 3], [0.0; 3]],
                ..Default::default()
            }),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn violator_is_distinguishable() {
        let r =
            signaling_advantage(&violator(), BlochVector::unit_z(), BlochVector::unit_x()).unwrap();
        assert_abs_diff_eq!(r.no_signaling_residual, 1.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.trace_distance, 1.0 / 6.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.helstrom_probability, 7.0 / 12.0, epsilon = 1e-14);
        assert!(r.physical);
    }

    #[test]
    fn equal_axes_give_no_signal() {
        let r =
            signaling_advantage(&violator(), BlochVector::unit_y(), BlochVector::unit_y()).unwrap();
        assert_eq!(r.trace_distance, 0.0);
        assert_eq!(r.helstrom_probability, 0.5);
    }

    #[test]
    fn single_shot_estimate_is_zero_or_one() {
        for seed in 0..10 {
            let r = monte_carlo_signal(
                &violator(),
                BlochVector::unit_z(),
                BlochVector::unit_x(),
                1,
                seed,
            )
            .unwrap();
            let e = r.mc_estimate.unwrap();
            assert!(e == 0.0 || e == 1.0);
        }
    }

    #[test]
    fn zero_shots_is_an_error() {
        let err = monte_carlo_signal(
            &violator(),
            BlochVector::unit_z(),
            BlochVector::unit_x(),
            0,
            1,
        );
        assert_eq!(err.unwrap_err(), Error::InvalidShots);
    }

    #[test]
    fn unphysical_cloner_skips_sampling() {
        let p = ClonerParams::new(0.9, 1.0 / 3.0, 0.0).unwrap();
        let r =
            monte_carlo_signal(&p, BlochVector::unit_z(), BlochVector::unit_x(), 100, 3).unwrap();
        assert!(!r.physical);
        assert_eq!(r.mc_estimate, None);
        assert_abs_diff_eq!(r.helstrom_probability, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn seed_fixes_transcript() {
        let run = |seed| {
            monte_carlo_signal(
                &violator(),
                BlochVector::unit_z(),
                BlochVector::unit_x(),
                20_000,
                seed,
            )
            .unwrap()
            .mc_estimate
        };
        assert_eq!(run(11), run(11));
        assert_ne!(run(11), run(12));
    }
}
