//! Simulator for lattices of circuit-QED resonators coupled through ancilla
//! qubits.
//!
//! An ancilla qubit coupled to `n` resonators (a "star") can be rotated out of
//! the single-excitation dynamics exactly; what remains is an all-to-all
//! hopping `J_n` between the resonators. Tiling stars into a chain (`n = 2`)
//! or a Kagome lattice (`n = 3`) yields photon tight-binding models that map
//! onto xy spin models, with `J_n` tunable in situ through the flux-controlled
//! frequency of a transmon ancilla.
//!
//! Module map:
//! - [`operator`]: dense complex-Hermitian linear algebra primitives.
//! - [`star`]: the n-resonator star, its exact decoupling transform, and the
//!   dressed parameters (`J_n`, level energies, derived frequencies).
//! - [`lattice`]: chain and Kagome models, full (resonators + ancillas) and
//!   effective (resonators only), real-space and Bloch forms.
//! - [`spin`]: xy-model spin Hamiltonians and the single-excitation sector
//!   equivalence with the tight-binding models.
//! - [`dynamics`]: spectral time evolution and full-vs-effective comparison.
//! - [`transmon`]: flux -> E_J -> omega_a -> J_n control chain and its
//!   inversion.
//!
//! All frequencies in this crate are angular (hbar = 1); conversion from
//! linear GHz happens at the CLI boundary.
//!
//! ```
//! use starxy::star::{self, StarParams};
//!
//! // Three resonators at 5 GHz, ancilla at 6 GHz, 100 MHz coupling.
//! let tau = std::f64::consts::TAU;
//! let params = StarParams::uniform(3, tau * 5.0, tau * 6.0, tau * 0.1)?;
//! let (transformed, dressed) = star::dress_star(&params)?;
//!
//! // The ancilla decouples exactly; a dispersive hopping J_3 < 0 remains.
//! assert!(transformed.entry(0, 3).norm() < 1e-12);
//! assert!(dressed.j < 0.0 && dressed.j.abs() < tau * 0.1 / 3f64.sqrt());
//! # Ok::<(), starxy::Error>(())
//! ```

pub mod dynamics;
pub mod error;
pub mod lattice;
pub mod operator;
pub mod spin;
pub mod star;
pub mod transmon;

pub use error::Error;
pub use lattice::{Boundary, Flavor, LatticeModel, LatticeSpec};
pub use operator::{HermitianMatrix, Spectrum, UnitaryMatrix};
pub use star::{DressedStar, StarParams};
pub use transmon::TransmonParams;
