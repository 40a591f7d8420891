//! Property tests for the crate-wide invariants: unitarity, spectral
//! preservation, exact ancilla decoupling, magnetization conservation, and
//! norm conservation under time evolution.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;

use starxy::dynamics::{evolve, StateVector};
use starxy::lattice::{build_effective, Boundary, LatticeSpec};
use starxy::operator::{eig_hermitian, expm_antihermitian, similarity_transform, HermitianMatrix};
use starxy::spin::build_xy;
use starxy::star::{build_star_hamiltonian, dress_star, effective_coupling, StarParams};

fn hermitian_strategy(max_dim: usize) -> impl Strategy<Value = HermitianMatrix> {
    (1..=max_dim).prop_flat_map(|dim| {
        proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim).prop_map(move |vals| {
            let a = DMatrix::from_fn(dim, dim, |i, j| {
                let (re, im) = vals[i * dim + j];
                Complex64::new(re, im)
            });
            HermitianMatrix::new((&a + a.adjoint()).scale(0.5)).unwrap()
        })
    })
}

fn antihermitian_strategy(max_dim: usize) -> impl Strategy<Value = DMatrix<Complex64>> {
    (1..=max_dim).prop_flat_map(|dim| {
        proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim).prop_map(move |vals| {
            let a = DMatrix::from_fn(dim, dim, |i, j| {
                let (re, im) = vals[i * dim + j];
                Complex64::new(re, im)
            });
            (&a - a.adjoint()).scale(0.5)
        })
    })
}

proptest! {
    #[test]
    fn exponentials_are_unitary(m in antihermitian_strategy(8)) {
        let u = expm_antihermitian(&m).unwrap();
        let dim = u.dim();
        let gram = u.adjoint() * u.as_matrix();
        prop_assert!((gram - DMatrix::<Complex64>::identity(dim, dim)).norm() < 1e-12 * dim as f64);
    }

    #[test]
    fn similarity_preserves_spectrum_and_reconstruction_holds(
        h in hermitian_strategy(8),
        m in antihermitian_strategy(8),
    ) {
        let dim = h.dim().min(m.nrows());
        let h = HermitianMatrix::new(h.as_matrix().view((0, 0), (dim, dim)).into_owned()).unwrap();
        let g = m.view((0, 0), (dim, dim)).into_owned();
        let g = (&g - g.adjoint()).scale(0.5);
        let u = expm_antihermitian(&g).unwrap();
        let t = similarity_transform(&h, &u).unwrap();

        let before = eig_hermitian(&h);
        let after = eig_hermitian(&t);
        let scale = h.frobenius_norm().max(1.0);
        for (a, b) in before.eigenvalues().iter().zip(after.eigenvalues().iter()) {
            prop_assert!((a - b).abs() < 1e-10 * scale);
        }
        prop_assert!((before.reconstruct() - h.as_matrix()).norm() < 1e-10 * scale);
        prop_assert!((t.trace() - h.trace()).abs() < 1e-10 * scale);
    }

    #[test]
    fn stars_decouple_exactly(
        n in 1usize..=6,
        f in 0.01f64..0.3,
        delta in -1.0f64..1.0,
    ) {
        let omega_r = 5.0;
        let params = StarParams::uniform(n, omega_r, omega_r + delta, f).unwrap();
        let h = build_star_hamiltonian(&params);
        let (t, d) = dress_star(&params).unwrap();
        let scale = h.frobenius_norm();
        for p in 0..n {
            prop_assert!(t.entry(p, n).norm() < 1e-10 * scale);
        }
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    prop_assert!((t.entry(p, q).re - effective_coupling(n, f, delta)).abs() < 1e-12 * scale);
                }
            }
        }
        // The transformed ancilla slot stays the max-overlap image of the
        // original ancilla: |cos(sqrt(n) theta)| >= |sin(sqrt(n) theta)|/sqrt(n).
        let root_n = (n as f64).sqrt();
        let c = (root_n * d.theta).cos().abs();
        let s = ((root_n * d.theta).sin() / root_n).abs();
        prop_assert!(c >= s - 1e-12);
    }

    #[test]
    fn spin_models_conserve_magnetization(
        m in 2usize..=6,
        coupling in -0.5f64..0.5,
        field in -1.0f64..1.0,
        seed in 0u64..1000,
    ) {
        // Pseudo-random bond subset of the complete graph.
        let mut bonds = Vec::new();
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        for p in 0..m {
            for q in (p + 1)..m {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if state >> 63 == 1 {
                    bonds.push((p, q));
                }
            }
        }
        let h = build_xy(m, &bonds, coupling, field).unwrap();
        let dim = h.dim();
        let sz = |s: usize| (s as u64).count_ones() as f64 - m as f64 / 2.0;
        let scale = h.matrix().frobenius_norm().max(1.0);
        for i in 0..dim {
            for j in 0..dim {
                let violation = (h.matrix().entry(i, j) * (sz(j) - sz(i))).norm();
                prop_assert!(violation < 1e-12 * scale);
            }
        }
    }

    #[test]
    fn evolution_conserves_norm_and_populations(
        n_sites in 2usize..=8,
        hop in -0.5f64..-0.01,
        site in 0usize..8,
        t_max in 0.1f64..200.0,
    ) {
        let site = site % n_sites;
        let model = build_effective(&LatticeSpec::chain(n_sites, Boundary::Open), hop, 0.7).unwrap();
        let psi0 = StateVector::basis_state(n_sites, site).unwrap();
        let times: Vec<f64> = (0..12).map(|i| t_max * i as f64 / 11.0).collect();
        let trace = evolve(&model.hamiltonian, &psi0, &times).unwrap();
        for k in 0..times.len() {
            prop_assert!((trace.norms[k] - 1.0).abs() < 1e-10);
            prop_assert!((trace.excitations[k] - 1.0).abs() < 1e-10);
            let total: f64 = trace.populations[k].iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn random_states_keep_unit_norm(
        amps in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2..10),
        t in 0.0f64..50.0,
    ) {
        let raw = DVector::from_fn(amps.len(), |i, _| Complex64::new(amps[i].0, amps[i].1));
        prop_assume!(raw.norm() > 1e-3);
        let normalized = raw.clone().scale(1.0 / raw.norm());
        let psi0 = StateVector::new(normalized).unwrap();
        let model = build_effective(
            &LatticeSpec::chain(amps.len(), Boundary::Open),
            -0.2,
            0.0,
        )
        .unwrap();
        let trace = evolve(&model.hamiltonian, &psi0, &[t]).unwrap();
        prop_assert!((trace.norms[0] - 1.0).abs() < 1e-10);
    }
}
