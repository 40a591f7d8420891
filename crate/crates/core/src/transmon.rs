//! Flux control of the ancilla: the chain
//! `flux -> E_J -> omega_a -> J_n` and its numerical inversion, realizing
//! in-situ tunability of the effective resonator-resonator coupling.
//!
//! The qubit frequency uses the leading transmon form
//! `omega_a = sqrt(8 E_J E_C)` with `E_J = E_J,max |cos(pi flux / flux_0)|`;
//! no anharmonicity correction. Energies are angular, like everything else
//! in this crate.

use crate::error::{Error, Result};
use crate::star::effective_coupling;

/// Transmon ancilla parameters. Flux is kept in the canonical half-period
/// `[0, flux_quantum / 2]`, on which the qubit frequency is monotone
/// decreasing from `sqrt(8 E_J,max E_C)` to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmonParams {
    ej_max: f64,
    ec: f64,
    flux: f64,
    flux_quantum: f64,
}

impl TransmonParams {
    pub fn new(ej_max: f64, ec: f64, flux: f64, flux_quantum: f64) -> Result<Self> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(ej_max) || !positive(ec) || !positive(flux_quantum) {
            return Err(Error::InvalidParameter(
                "E_J,max, E_C, and the flux quantum must be positive".into(),
            ));
        }
        let reduced = flux / flux_quantum;
        if !(0.0..=0.5).contains(&reduced) {
            return Err(Error::InvalidParameter(format!(
                "flux/flux_quantum = {reduced} outside the canonical range [0, 1/2]"
            )));
        }
        Ok(Self {
            ej_max,
            ec,
            flux,
            flux_quantum,
        })
    }

    pub fn ej_max(&self) -> f64 {
        self.ej_max
    }

    pub fn ec(&self) -> f64 {
        self.ec
    }

    pub fn flux(&self) -> f64 {
        self.flux
    }

    pub fn flux_quantum(&self) -> f64 {
        self.flux_quantum
    }

    /// Same transmon at a different flux bias.
    pub fn at_flux(&self, flux: f64) -> Result<Self> {
        Self::new(self.ej_max, self.ec, flux, self.flux_quantum)
    }
}

/// Josephson energy `E_J,max |cos(pi flux / flux_quantum)|`.
pub fn josephson_energy(params: &TransmonParams) -> f64 {
    params.ej_max
        * (std::f64::consts::PI * params.flux / params.flux_quantum)
            .cos()
            .abs()
}

/// Qubit frequency `sqrt(8 E_J E_C)`.
pub fn qubit_frequency(params: &TransmonParams) -> f64 {
    (8.0 * josephson_energy(params) * params.ec).sqrt()
}

/// Forward control chain: the effective coupling the star reaches when the
/// ancilla is biased at `flux`.
pub fn coupling_at_flux(
    n: usize,
    f: f64,
    omega_r: f64,
    params: &TransmonParams,
    flux: f64,
) -> Result<f64> {
    let biased = params.at_flux(flux)?;
    Ok(effective_coupling(n, f, qubit_frequency(&biased) - omega_r))
}

/// Inverts the control chain: the flux in `[0, flux_quantum / 2]` at which
/// the star's coupling equals `target_j`.
///
/// The coupling changes sign where `omega_a` crosses `omega_r`, so the
/// search is restricted to the branch whose sign matches the target
/// (`J <= 0` on the `delta >= 0` branch, `J > 0` on `delta < 0`). Targets
/// outside the branch's achievable interval, and any nonzero target at
/// `f = 0`, yield a range error carrying that interval.
///
/// ```
/// use starxy::transmon::{self, TransmonParams};
///
/// let tau = std::f64::consts::TAU;
/// // omega_a(0) = sqrt(8 E_J,max E_C) = 2 pi x 10 GHz.
/// let transmon = TransmonParams::new(tau * 50.0, tau * 0.25, 0.0, 1.0)?;
/// let target = -tau * 0.03;
/// let flux = transmon::flux_for_coupling(target, 3, tau * 0.1, tau * 9.0, &transmon)?;
/// let achieved = transmon::coupling_at_flux(3, tau * 0.1, tau * 9.0, &transmon, flux)?;
/// assert!((achieved - target).abs() < 1e-10 * target.abs());
/// # Ok::<(), starxy::Error>(())
/// ```
pub fn flux_for_coupling(
    target_j: f64,
    n: usize,
    f: f64,
    omega_r: f64,
    params: &TransmonParams,
) -> Result<f64> {
    let omega_r_ok = omega_r.is_finite() && omega_r > 0.0;
    let f_ok = f.is_finite() && f >= 0.0;
    if !omega_r_ok || !f_ok {
        return Err(Error::InvalidParameter(
            "inversion requires omega_r > 0 and f >= 0".into(),
        ));
    }
    if f == 0.0 {
        if target_j == 0.0 {
            return Ok(0.0);
        }
        return Err(Error::TargetOutOfRange {
            target: target_j,
            lo: 0.0,
            hi: 0.0,
        });
    }

    let half = params.flux_quantum / 2.0;
    let omega_a0 = qubit_frequency(&params.at_flux(0.0)?);
    let delta0 = omega_a0 - omega_r;

    // Flux where the ancilla crosses the resonator, if the crossing exists.
    let resonant_flux = if delta0 >= 0.0 {
        let cos_val = omega_r * omega_r / (8.0 * params.ej_max * params.ec);
        Some(params.flux_quantum / std::f64::consts::PI * cos_val.clamp(0.0, 1.0).acos())
    } else {
        None
    };

    // J is monotone decreasing in flux on each fixed-sign branch.
    let (flux_lo, flux_hi) = if target_j <= 0.0 {
        match resonant_flux {
            Some(fr) => (0.0, fr),
            // omega_a never reaches omega_r from above: no J <= 0 branch.
            None => {
                let (lo, hi) = achievable(n, f, omega_r, params, 0.0, half)?;
                return Err(Error::TargetOutOfRange {
                    target: target_j,
                    lo,
                    hi,
                });
            }
        }
    } else {
        (resonant_flux.unwrap_or(0.0), half)
    };

    let j_at = |flux: f64| -> Result<f64> { coupling_at_flux(n, f, omega_r, params, flux) };
    let j_lo = j_at(flux_lo)?;
    let j_hi = j_at(flux_hi)?;
    // Positive-branch supremum f/sqrt(n) sits just past the crossing, where
    // sgn flips; use it as the inclusive upper endpoint.
    let (branch_min, branch_max) = if target_j > 0.0 && resonant_flux.is_some() {
        (j_hi, f / (n as f64).sqrt())
    } else {
        (j_hi.min(j_lo), j_hi.max(j_lo))
    };
    if target_j < branch_min - 1e-15 || target_j > branch_max + 1e-15 {
        return Err(Error::TargetOutOfRange {
            target: target_j,
            lo: branch_min,
            hi: branch_max,
        });
    }

    // Bisection on the monotone branch (J decreasing in flux).
    let (mut lo, mut hi) = (flux_lo, flux_hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if j_at(mid)? > target_j {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let flux = if (j_at(lo)? - target_j).abs() <= (j_at(hi)? - target_j).abs() {
        lo
    } else {
        hi
    };
    Ok(flux)
}

/// Achievable coupling interval over a flux window (inclusive endpoints).
fn achievable(
    n: usize,
    f: f64,
    omega_r: f64,
    params: &TransmonParams,
    flux_lo: f64,
    flux_hi: f64,
) -> Result<(f64, f64)> {
    let a = coupling_at_flux(n, f, omega_r, params, flux_lo)?;
    let b = coupling_at_flux(n, f, omega_r, params, flux_hi)?;
    Ok((a.min(b), a.max(b)))
}
