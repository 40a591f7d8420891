//! The n-resonator + ancilla star in the single-excitation sector: exact
//! construction, the rotation that decouples the ancilla, and the dressed
//! parameters (effective coupling `J_n`, level energies, derived
//! tight-binding frequencies).
//!
//! Basis order: state `p` (0-based, `p < n`) has one photon in resonator `p`
//! and the ancilla down; state `n` has no photons and the ancilla up. Every
//! basis state carries exactly one excitation, so the excitation-number
//! operator restricted to this sector is the identity.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{self, HermitianMatrix, UnitaryMatrix};

/// Residual tolerance (relative to the Frobenius norm of the input) for the
/// ancilla row/column of the transformed star Hamiltonian.
const DECOUPLING_TOL: f64 = 1e-10;

/// Physical parameters of one ancilla qubit coupled to `n` resonators.
///
/// Frequencies are angular (hbar = 1); couplings are non-negative.
#[derive(Debug, Clone, PartialEq)]
pub struct StarParams {
    n: usize,
    omega_r: f64,
    omega_a: f64,
    couplings: Vec<f64>,
}

impl StarParams {
    /// Identical resonators with a common resonator-ancilla coupling `f`.
    pub fn uniform(n: usize, omega_r: f64, omega_a: f64, f: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter(
                "resonator count must be >= 1".into(),
            ));
        }
        Self::with_couplings(omega_r, omega_a, vec![f; n])
    }

    /// Per-resonator couplings `f_p`; the resonator count is the list length.
    /// Only the numerical diagonalization path accepts nonuniform values.
    pub fn with_couplings(omega_r: f64, omega_a: f64, couplings: Vec<f64>) -> Result<Self> {
        if couplings.is_empty() {
            return Err(Error::InvalidParameter(
                "resonator count must be >= 1".into(),
            ));
        }
        if !omega_r.is_finite() || !omega_a.is_finite() {
            return Err(Error::InvalidParameter("frequencies must be finite".into()));
        }
        if couplings.iter().any(|f| !f.is_finite() || *f < 0.0) {
            return Err(Error::InvalidParameter(
                "couplings must be finite and non-negative".into(),
            ));
        }
        Ok(Self {
            n: couplings.len(),
            omega_r,
            omega_a,
            couplings,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega_r(&self) -> f64 {
        self.omega_r
    }

    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }

    /// Detuning `delta = omega_a - omega_r`.
    pub fn delta(&self) -> f64 {
        self.omega_a - self.omega_r
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    /// The common coupling value, if all `f_p` are identical.
    pub fn uniform_coupling(&self) -> Option<f64> {
        let f = self.couplings[0];
        self.couplings.iter().all(|&g| g == f).then_some(f)
    }
}

/// The ordered single-excitation basis of a star: `n` one-photon states with
/// the ancilla down, then the zero-photon state with the ancilla up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleExcitationBasis {
    n: usize,
}

impl SingleExcitationBasis {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the ancilla-up state.
    pub fn ancilla_index(&self) -> usize {
        self.n
    }

    /// Photon occupation numbers `N_rp` of basis state `i`.
    pub fn photon_occupations(&self, i: usize) -> Vec<u8> {
        (0..self.n).map(|p| u8::from(p == i)).collect()
    }

    /// Ancilla spin projection `s_az` of basis state `i`.
    pub fn ancilla_sz(&self, i: usize) -> f64 {
        if i == self.n {
            0.5
        } else {
            -0.5
        }
    }

    /// Total excitation number of basis state `i`; equal to 1 for every state
    /// in this sector.
    pub fn excitation_number(&self, i: usize) -> u32 {
        let photons: u32 = self.photon_occupations(i).iter().map(|&x| x as u32).sum();
        photons + if self.ancilla_sz(i) > 0.0 { 1 } else { 0 }
    }
}

/// Derived quantities of a decoupled star.
///
/// `eps_r` and `eps_a` are read from the exact transformed diagonal, which is
/// the authoritative source. `omega_r_prime` / `omega_a_prime` exist only for
/// `n >= 2` (the defining relations are singular at `n = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct DressedStar {
    pub n: usize,
    pub delta: f64,
    pub theta: f64,
    pub j: f64,
    pub eps_r: f64,
    pub eps_a: f64,
    pub omega_r_prime: Option<f64>,
    pub omega_a_prime: Option<f64>,
}

/// Sign convention used throughout the closed forms: `sgn(0) = +1`, so the
/// resonant coupling comes out as `J_n = -f/sqrt(n)`.
fn sgn(delta: f64) -> f64 {
    if delta < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Star Hamiltonian in the single-excitation basis: diagonal
/// `omega_r - omega_a/2` on resonator states and `+omega_a/2` on the ancilla
/// state, with `-f_p` coupling resonator `p` to the ancilla.
pub fn build_star_hamiltonian(params: &StarParams) -> HermitianMatrix {
    let n = params.n();
    let dim = n + 1;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for p in 0..n {
        m[(p, p)] = Complex64::new(params.omega_r() - params.omega_a() / 2.0, 0.0);
        let f = Complex64::new(-params.couplings()[p], 0.0);
        m[(p, n)] = f;
        m[(n, p)] = f;
    }
    m[(n, n)] = Complex64::new(params.omega_a() / 2.0, 0.0);
    HermitianMatrix::new(m).expect("star Hamiltonian is Hermitian by construction")
}

/// Excitation-number operator restricted to the single-excitation sector:
/// the identity on `n + 1` states. Provided so conservation reads
/// `[H, N_e] = 0`.
pub fn excitation_number_matrix(n: usize) -> HermitianMatrix {
    HermitianMatrix::identity(n + 1)
}

/// Rotation angle that decouples the ancilla: `tan(2 sqrt(n) theta) =
/// 2 sqrt(n) f / delta` on the branch `2 sqrt(n) theta` in `(-pi/2, pi/2]`.
///
/// The branch is tied to the detuning sign so that the transform reduces to
/// the identity as `f -> 0` for either sign: `theta > 0` for `delta >= 0`
/// (with `pi/(4 sqrt(n))` at resonance) and `theta < 0` for `delta < 0`.
pub fn decoupling_angle(n: usize, f: f64, delta: f64) -> f64 {
    let root_n = (n as f64).sqrt();
    sgn(delta) * (2.0 * root_n * f).atan2(delta.abs()) / (2.0 * root_n)
}

/// Anti-Hermitian generator of the decoupling transform in the
/// single-excitation basis: `-theta` couples each resonator state to the
/// ancilla state. `closed_form_u(n, theta)` equals `exp` of this matrix.
pub fn decoupling_generator(n: usize, theta: f64) -> DMatrix<Complex64> {
    let dim = n + 1;
    DMatrix::from_fn(dim, dim, |i, j| {
        if j == n && i < n {
            Complex64::new(-theta, 0.0)
        } else if i == n && j < n {
            Complex64::new(theta, 0.0)
        } else {
            Complex64::ZERO
        }
    })
}

/// Closed-form decoupling transformation, an `(n+1) x (n+1)` unitary:
/// resonator block `(n - 1 + cos(sqrt(n) theta))/n` on the diagonal and
/// `(cos(sqrt(n) theta) - 1)/n` off it, ancilla corner `cos(sqrt(n) theta)`,
/// and `-sin(sqrt(n) theta)/sqrt(n)` mixing each resonator with the ancilla.
pub fn closed_form_u(n: usize, theta: f64) -> UnitaryMatrix {
    let nf = n as f64;
    let root_n = nf.sqrt();
    let c = (root_n * theta).cos();
    let s = (root_n * theta).sin();
    let dim = n + 1;
    let m = DMatrix::from_fn(dim, dim, |i, j| {
        let v = if i < n && j < n {
            if i == j {
                (nf - 1.0 + c) / nf
            } else {
                (c - 1.0) / nf
            }
        } else if i < n && j == n {
            -s / root_n
        } else if i == n && j < n {
            s / root_n
        } else {
            c
        };
        Complex64::new(v, 0.0)
    });
    UnitaryMatrix::new(m).expect("closed-form transform is unitary by construction")
}

/// Effective resonator-resonator coupling
/// `J_n = (delta - sgn(delta) sqrt(delta^2 + 4 n f^2)) / (2n)`, `sgn(0) = +1`.
///
/// Negative for `delta >= 0`, positive for `delta < 0`, with maximal
/// magnitude `f/sqrt(n)` at resonance.
pub fn effective_coupling(n: usize, f: f64, delta: f64) -> f64 {
    let nf = n as f64;
    (delta - sgn(delta) * (delta * delta + 4.0 * nf * f * f).sqrt()) / (2.0 * nf)
}

/// Resonator level energy in the closed form quoted for identical resonators:
/// `-(delta + sgn(delta) sqrt(delta^2 + 4 n f^2))/(2n) + omega_r/2`.
///
/// Exact only for `n = 2`; for other `n` the transformed diagonal (see
/// [`dress_star`]) differs from this expression by `delta (2 - n) / (2n)`.
pub fn eps_r_closed_form(n: usize, f: f64, delta: f64, omega_r: f64) -> f64 {
    let nf = n as f64;
    -(delta + sgn(delta) * (delta * delta + 4.0 * nf * f * f).sqrt()) / (2.0 * nf) + omega_r / 2.0
}

/// Ancilla level energy
/// `sgn(delta) sqrt(delta^2 + 4 n f^2)/2 + omega_r/2`.
pub fn eps_a_closed_form(n: usize, f: f64, delta: f64, omega_r: f64) -> f64 {
    let nf = n as f64;
    sgn(delta) * (delta * delta + 4.0 * nf * f * f).sqrt() / 2.0 + omega_r / 2.0
}

/// Tight-binding frequencies `(omega_r', omega_a')` solving
/// `eps_r = -(n-2)/2 omega_r' - omega_a'/2` and
/// `eps_a = -n/2 omega_r' + omega_a'/2`.
pub fn derived_frequencies(eps_r: f64, eps_a: f64, n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "derived frequencies require n >= 2".into(),
        ));
    }
    let nf = n as f64;
    let omega_r_prime = -(eps_r + eps_a) / (nf - 1.0);
    let omega_a_prime = -(nf * eps_r - (nf - 2.0) * eps_a) / (nf - 1.0);
    Ok((omega_r_prime, omega_a_prime))
}

/// Applies the exact decoupling transform to a uniform star and extracts the
/// dressed parameters.
///
/// Returns the transformed Hamiltonian (ancilla row/column off-diagonals
/// vanish to within `1e-10 |H|_F`) together with the [`DressedStar`] summary.
/// Nonuniform couplings have no closed-form transform and are rejected; use
/// [`build_star_hamiltonian`] plus [`operator::eig_hermitian`] for those.
pub fn dress_star(params: &StarParams) -> Result<(HermitianMatrix, DressedStar)> {
    let f = params
        .uniform_coupling()
        .ok_or(Error::NonuniformCouplings)?;
    let n = params.n();
    let delta = params.delta();
    let h = build_star_hamiltonian(params);
    let theta = decoupling_angle(n, f, delta);
    let u = closed_form_u(n, theta);
    let transformed = operator::similarity_transform(&h, &u)?;

    let scale = h.frobenius_norm();
    let mut residual = 0.0_f64;
    for p in 0..n {
        residual = residual.max(transformed.entry(p, n).norm());
    }
    if residual > DECOUPLING_TOL * scale {
        return Err(Error::DecouplingResidual {
            residual,
            tolerance: DECOUPLING_TOL * scale,
        });
    }

    let j = effective_coupling(n, f, delta);
    let eps_r = transformed.entry(0, 0).re;
    let eps_a = transformed.entry(n, n).re;
    let (omega_r_prime, omega_a_prime) = if n >= 2 {
        let (wr, wa) = derived_frequencies(eps_r, eps_a, n)?;
        (Some(wr), Some(wa))
    } else {
        (None, None)
    };

    Ok((
        transformed,
        DressedStar {
            n,
            delta,
            theta,
            j,
            eps_r,
            eps_a,
            omega_r_prime,
            omega_a_prime,
        },
    ))
}
