mod common;

use clone_bound::buzek_hillery::{bh_clone, bh_isometry};
use clone_bound::linalg::{half_trace_norm, kron2, Mat4, Matrix};
use clone_bound::pauli::{sigmas, tensor, PauliCoefficients};
use clone_bound::signaling::singlet;
use clone_bound::state::{
    bloch_to_density, hermitian_eigenvalues4, partial_trace, pauli_decompose, pauli_reconstruct,
    trace_distance, BlochVector, Qubit, TwoQubitState,
};
use common::*;
use num_complex::Complex;
use proptest::prelude::*;

type C = Complex<f64>;

/// Coefficients of det(λ𝟙 − A) = Σ c_k λ^k by Faddeev–LeVerrier, c_4 = 1.
fn characteristic_polynomial(a: &Mat4<f64>) -> [C; 5] {
    let mut c = [C::new(0.0, 0.0); 5];
    c[4] = C::new(1.0, 0.0);
    let mut m = Mat4::<f64>::zeros();
    for k in 1..=4 {
        m = *a * m + Mat4::identity().scale_complex(c[5 - k]);
        c[4 - k] = -(*a * m).trace() / (k as f64);
    }
    c
}

/// Durand–Kerner roots of a monic quartic, then sorted by real part, descending.
fn quartic_roots(c: &[C; 5]) -> [f64; 4] {
    let eval = |z: C| {
        c.iter()
            .rev()
            .fold(C::new(0.0, 0.0), |acc, &ck| acc * z + ck)
    };
    let seed = C::new(0.4, 0.9);
    let mut z: [C; 4] = std::array::from_fn(|k| seed.powu(k as u32));
    for _ in 0..2000 {
        let prev = z;
        for i in 0..4 {
            let mut denom = C::new(1.0, 0.0);
            for j in 0..4 {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            z[i] -= eval(z[i]) / denom;
        }
        if (0..4).all(|i| (z[i] - prev[i]).norm() < 1e-16) {
            break;
        }
    }
    let mut roots = z.map(|r| r.re);
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    roots
}

#[test]
fn eigenvalues_match_characteristic_polynomial_roots() {
    let mut rng = rng(101);
    for _ in 0..200 {
        let h = random_hermitian::<4>(&mut rng);
        let got = hermitian_eigenvalues4(&h).unwrap();
        let want = quartic_roots(&characteristic_polynomial(&h));
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-8, "{got:?} vs {want:?}");
        }
        let trace: f64 = got.iter().sum();
        assert!((trace - h.trace().re).abs() < 1e-10);
    }
}

#[test]
fn optimal_point_eigenvalues() {
    let z = clone_bound::cloner::output_state_z(
        &clone_bound::Params::new(2.0 / 3.0, 1.0 / 3.0, 0.0).unwrap(),
    );
    let eig = hermitian_eigenvalues4(z.matrix()).unwrap();
    for (g, w) in eig.iter().zip([2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0]) {
        assert!((g - w).abs() < 1e-15);
    }
}

#[test]
fn decompose_singlet() {
    let c = pauli_decompose(&singlet::<f64>());
    let mut want = PauliCoefficients::<f64> {
        c00: 1.0,
        ..Default::default()
    };
    for j in 0..3 {
        want.t[j][j] = -1.0;
    }
    assert!(c.max_abs_diff(&want) < 1e-15);
    assert!(pauli_reconstruct(&c).unwrap().max_abs_diff(&singlet()) < 1e-15);
}

#[test]
fn decompose_bh_output_built_from_isometry() {
    // Build the output directly from the isometry's action on |↑⟩, independent of bh_clone.
    let v = bh_isometry::<f64>();
    let psi = v.apply([Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)]);
    let reduced: Mat4<f64> =
        Matrix::from_fn(|i, j| (0..2).map(|a| psi[2 * i + a] * psi[2 * j + a].conj()).sum());
    let rho = TwoQubitState::new(reduced).unwrap();
    let c = pauli_decompose(&rho);
    let third = 1.0 / 3.0;
    let want = PauliCoefficients {
        c00: 1.0,
        a: [0.0, 0.0, 2.0 / 3.0],
        b: [0.0, 0.0, 2.0 / 3.0],
        t: [[third, 0.0, 0.0], [0.0, third, 0.0], [0.0, 0.0, third]],
    };
    assert!(c.max_abs_diff(&want) < 1e-15);
    let up = bloch_to_density(BlochVector::unit_z()).unwrap();
    assert!(rho.max_abs_diff(&bh_clone(&up)) < 1e-15);
    assert!(pauli_reconstruct(&c).unwrap().max_abs_diff(&rho) < 1e-15);
}

#[test]
fn round_trip_on_random_hermitian_matrices() {
    let mut rng = rng(7);
    for _ in 0..1000 {
        let h = random_hermitian::<4>(&mut rng);
        let back = PauliCoefficients::decompose(&h).to_matrix();
        assert!(max_abs4(&back, &h) < 1e-12);
    }
}

#[test]
fn partial_trace_examples() {
    let s = singlet::<f64>();
    let r = partial_trace(&s, Qubit::First).unwrap();
    assert!(r.bloch().norm() < 1e-15);
    let up = bloch_to_density(BlochVector::unit_z()).unwrap();
    let clone = partial_trace(&bh_clone(&up), Qubit::Second).unwrap();
    assert!(
        clone
            .bloch()
            .max_abs_diff(&BlochVector::new(0.0, 0.0, 2.0 / 3.0))
            < 1e-15
    );
}

#[test]
fn partial_trace_of_random_products() {
    let mut rng = rng(8);
    for _ in 0..500 {
        let a = random_density2(&mut rng);
        let b = random_density2(&mut rng);
        let ab = TwoQubitState::product(&a, &b);
        let first = partial_trace(&ab, Qubit::First).unwrap();
        let second = partial_trace(&ab, Qubit::Second).unwrap();
        assert!((*first.matrix() - *a.matrix()).max_abs() < 1e-12);
        assert!((*second.matrix() - *b.matrix()).max_abs() < 1e-12);
        assert!((first.matrix().trace().re - 1.0).abs() < 1e-12);
    }
}

#[test]
fn trace_distance_between_sides_of_no_signaling_identity() {
    // t_zz = 1/3, t_xx = t_yy = 0, η = 0: the two sides differ by ½·(1/3)(σzσz − σxσx).
    let s = sigmas::<f64>();
    let third = 1.0 / 3.0;
    let id = Mat4::<f64>::identity();
    let side_z = (id + kron2(&s[2], &s[2]).scale(third)).scale(0.5);
    let side_x = (id + kron2(&s[0], &s[0]).scale(third)).scale(0.5);
    assert!((half_trace_norm(&(side_z - side_x)).unwrap() - third).abs() < 1e-14);
}

#[test]
fn trace_distance_is_a_metric_on_random_states() {
    let mut rng = rng(9);
    for _ in 0..300 {
        let a = random_density4(&mut rng);
        let b = random_density4(&mut rng);
        let c = random_density4(&mut rng);
        let ab = trace_distance(&a, &b);
        assert!((ab - trace_distance(&b, &a)).abs() < 1e-12);
        assert!((0.0..=1.0 + 1e-12).contains(&ab));
        assert!(trace_distance(&a, &a) < 1e-14);
        assert!(ab <= trace_distance(&a, &c) + trace_distance(&c, &b) + 1e-10);
    }
}

#[test]
fn states_keep_hermiticity_and_trace_through_operations() {
    let mut rng = rng(10);
    for _ in 0..200 {
        let rho = random_density4(&mut rng);
        let rebuilt = pauli_reconstruct(&pauli_decompose(&rho)).unwrap();
        assert!(rebuilt.matrix().hermitian_residual() < 1e-12);
        assert!((rebuilt.matrix().trace().re - 1.0).abs() < 1e-12);
        for keep in [Qubit::First, Qubit::Second] {
            let r = partial_trace(&rho, keep).unwrap();
            assert!(r.matrix().hermitian_residual() < 1e-12);
            assert!((r.matrix().trace().re - 1.0).abs() < 1e-12);
        }
    }
}

fn complex2() -> impl Strategy<Value = [[(f64, f64); 2]; 2]> {
    let entry = (-1.0f64..1.0, -1.0f64..1.0);
    [[entry.clone(), entry.clone()], [entry.clone(), entry]]
}

fn to_mat(v: [[(f64, f64); 2]; 2]) -> clone_bound::linalg::Mat2<f64> {
    Matrix::from_fn(|i, j| Complex::new(v[i][j].0, v[i][j].1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn tensor_mixed_product(a in complex2(), b in complex2(), c in complex2(), d in complex2()) {
        let (a, b, c, d) = (to_mat(a), to_mat(b), to_mat(c), to_mat(d));
        let lhs = tensor(&a, &b) * tensor(&c, &d);
        let rhs = tensor(&(a * c), &(b * d));
        prop_assert!(max_abs4(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn bloch_round_trip(x in -0.57f64..0.57, y in -0.57f64..0.57, z in -0.57f64..0.57) {
        let m = BlochVector::new(x, y, z);
        let rho = bloch_to_density(m).unwrap();
        prop_assert!(rho.bloch().max_abs_diff(&m) < 1e-15);
        let eig = clone_bound::linalg::hermitian_eigen(rho.matrix()).unwrap().values;
        prop_assert!((eig[0] - (1.0 + m.norm()) / 2.0).abs() < 1e-12);
        prop_assert!((eig[1] - (1.0 - m.norm()) / 2.0).abs() < 1e-12);
    }
}
