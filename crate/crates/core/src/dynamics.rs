//! Unitary time evolution of single-excitation states by spectral
//! propagation, observable extraction, and full-vs-effective comparison.
//!
//! `psi(t) = V exp(-i diag(lambda) t) V^dag psi(0)`; the propagation is exact
//! up to eigensolver tolerance, so norm and excitation number are conserved
//! to the same accuracy at arbitrary times. Time is in units where
//! `omega t` is dimensionless (ns against angular rad/ns frequencies).

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{self, LatticeSpec};
use crate::operator::{eig_hermitian, HermitianMatrix, Spectrum};
use crate::star::StarParams;

/// A normalized state vector over a model's site basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes, requiring unit norm within 1e-12.
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "state norm {norm} is not 1 within 1e-12"
            )));
        }
        Ok(Self { amplitudes })
    }

    /// The basis state concentrated on one site.
    pub fn basis_state(dim: usize, site: usize) -> Result<Self> {
        if site >= dim {
            return Err(Error::InvalidParameter(format!(
                "site {site} outside dimension {dim}"
            )));
        }
        let mut v = DVector::zeros(dim);
        v[site] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes: v })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Per-sample observables of an evolution: site populations, norm, and the
/// excitation-number expectation (each basis state carries one excitation,
/// so the latter equals the squared norm).
#[derive(Debug, Clone)]
pub struct ObservableTrace {
    pub times: Vec<f64>,
    /// `populations[t][site]`.
    pub populations: Vec<Vec<f64>>,
    pub norms: Vec<f64>,
    pub excitations: Vec<f64>,
}

/// Precomputed spectral propagator of one Hamiltonian.
pub struct Propagator {
    spectrum: Spectrum,
}

impl Propagator {
    pub fn new(h: &HermitianMatrix) -> Self {
        Self {
            spectrum: eig_hermitian(h),
        }
    }

    pub fn dim(&self) -> usize {
        self.spectrum.dim()
    }

    /// State at time `t`.
    pub fn state_at(&self, psi0: &StateVector, t: f64) -> Result<StateVector> {
        if psi0.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: psi0.dim(),
                right: self.dim(),
            });
        }
        let v = self.spectrum.eigenvectors();
        let coeffs = v.adjoint() * psi0.amplitudes();
        let rotated = DVector::from_fn(self.dim(), |i, _| {
            coeffs[i] * Complex64::from_polar(1.0, -self.spectrum.eigenvalues()[i] * t)
        });
        Ok(StateVector {
            amplitudes: v * rotated,
        })
    }

    /// Observable trace over a list of sample times.
    pub fn evolve(&self, psi0: &StateVector, times: &[f64]) -> Result<ObservableTrace> {
        if times.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidParameter("times must be finite".into()));
        }
        let mut populations = Vec::with_capacity(times.len());
        let mut norms = Vec::with_capacity(times.len());
        let mut excitations = Vec::with_capacity(times.len());
        for &t in times {
            let psi = self.state_at(psi0, t)?;
            let norm = psi.amplitudes().norm();
            populations.push(psi.populations());
            norms.push(norm);
            excitations.push(norm * norm);
        }
        Ok(ObservableTrace {
            times: times.to_vec(),
            populations,
            norms,
            excitations,
        })
    }
}

/// One-shot spectral evolution of `psi0` under `h`.
pub fn evolve(h: &HermitianMatrix, psi0: &StateVector, times: &[f64]) -> Result<ObservableTrace> {
    Propagator::new(h).evolve(psi0, times)
}

/// Side-by-side evolution of a full lattice model and its effective
/// reduction, with the per-time L2 distance between resonator populations.
#[derive(Debug, Clone)]
pub struct ComparisonTrace {
    pub times: Vec<f64>,
    /// Full-model populations restricted to resonator sites.
    pub full_resonator_populations: Vec<Vec<f64>>,
    /// Effective-model site populations (same site order).
    pub effective_populations: Vec<Vec<f64>>,
    /// Full-model state norm per sample.
    pub full_norms: Vec<f64>,
    /// L2 distance between the two population vectors per sample.
    pub deviations: Vec<f64>,
}

impl ComparisonTrace {
    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().cloned().fold(0.0, f64::max)
    }
}

/// Evolves `psi0` (supported on resonator sites of the full model) under
/// both the full and the derived effective model and records the population
/// deviation trace.
pub fn compare_full_effective(
    spec: &LatticeSpec,
    params: &StarParams,
    psi0: &StateVector,
    times: &[f64],
) -> Result<ComparisonTrace> {
    let full = lattice::build_full(spec, params)?;
    let effective = lattice::effective_from_full(&full)?;
    if psi0.dim() != full.dim() {
        return Err(Error::DimensionMismatch {
            left: psi0.dim(),
            right: full.dim(),
        });
    }
    let resonators = full.resonator_indices();
    let support: f64 = psi0
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| !resonators.contains(i))
        .map(|(_, a)| a.norm_sqr())
        .sum();
    if support > 1e-24 {
        return Err(Error::AncillaSupport { support });
    }

    let psi0_eff = StateVector::new(DVector::from_fn(resonators.len(), |i, _| {
        psi0.amplitudes()[resonators[i]]
    }))?;

    let full_trace = Propagator::new(&full.hamiltonian).evolve(psi0, times)?;
    let eff_trace = Propagator::new(&effective.hamiltonian).evolve(&psi0_eff, times)?;

    let mut full_res = Vec::with_capacity(times.len());
    let mut deviations = Vec::with_capacity(times.len());
    for (pf, pe) in full_trace.populations.iter().zip(&eff_trace.populations) {
        let restricted: Vec<f64> = resonators.iter().map(|&r| pf[r]).collect();
        let dev = restricted
            .iter()
            .zip(pe)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        full_res.push(restricted);
        deviations.push(dev);
    }

    Ok(ComparisonTrace {
        times: times.to_vec(),
        full_resonator_populations: full_res,
        effective_populations: eff_trace.populations,
        full_norms: full_trace.norms,
        deviations,
    })
}

/// Uniformly spaced sample times from 0 to `t_max` inclusive.
pub fn linspace(t_max: f64, samples: usize) -> Vec<f64> {
    if samples <= 1 {
        return vec![0.0];
    }
    (0..samples)
        .map(|i| t_max * i as f64 / (samples - 1) as f64)
        .collect()
}
