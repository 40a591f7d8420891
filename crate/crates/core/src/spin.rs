//! xy-model spin Hamiltonians on the full `2^m` spin space and their
//! single-excitation equivalence with the effective tight-binding models.
//!
//! Basis convention: site `p` is bit `p` of the basis index, `up = 1`. The
//! pseudo-spin maps the one-photon state of resonator `p` to spin-up, so the
//! single-up sector of the spin model mirrors the single-excitation sector of
//! the photon lattice. `sigma^z` is the projector difference
//! `|1><1| - |0><0|`.
//!
//! Bond convention: the exchange is `J (s+_p s-_q + s-_p s+_q)` per
//! unordered bond, so the hopping element between bonded sites is exactly the
//! tight-binding `J_n` (an ordered double-counted sum would double it).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{Flavor, LatticeModel, ModelParams};
use crate::operator::HermitianMatrix;

/// Dense-matrix guard: `2^14 x 2^14` is the largest spin space we will
/// materialize.
pub const MAX_SPINS: usize = 14;

/// xy-model Hamiltonian
/// `H = (omega_r'/2) sum_p sigma^z_p + J sum_bonds (s+_p s-_q + s-_p s+_q)`
/// on `m` spins.
#[derive(Debug, Clone)]
pub struct SpinHamiltonian {
    m: usize,
    bonds: Vec<(usize, usize)>,
    coupling: f64,
    field: f64,
    matrix: HermitianMatrix,
}

impl SpinHamiltonian {
    pub fn num_spins(&self) -> usize {
        self.m
    }

    /// Bonds with their common exchange amplitude.
    pub fn bonds(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.bonds.iter().map(move |&(p, q)| (p, q, self.coupling))
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// Longitudinal field `omega_r'` multiplying `sigma^z / 2` per site.
    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        1 << self.m
    }
}

/// Projection of a spin Hamiltonian onto a fixed-magnetization sector.
#[derive(Debug, Clone)]
pub struct SectorProjection {
    /// Number of up spins in the sector.
    pub k_up: usize,
    /// Spin-space index of each sector basis state, ascending.
    pub basis_map: Vec<usize>,
    pub matrix: HermitianMatrix,
}

/// Builds the xy Hamiltonian. Bonds are unordered site pairs; out-of-range
/// and duplicate bonds are rejected, as is `m` beyond the dense-matrix guard.
pub fn build_xy(
    m: usize,
    bonds: &[(usize, usize)],
    coupling: f64,
    omega_r_prime: f64,
) -> Result<SpinHamiltonian> {
    if m < 1 {
        return Err(Error::InvalidParameter("spin count must be >= 1".into()));
    }
    if m > MAX_SPINS {
        return Err(Error::TooManySpins { m, max: MAX_SPINS });
    }
    let mut seen = std::collections::HashSet::new();
    for &(p, q) in bonds {
        if p >= m || q >= m {
            return Err(Error::InvalidParameter(format!(
                "bond ({p}, {q}) references a site outside 0..{m}"
            )));
        }
        if p == q {
            return Err(Error::InvalidParameter(format!(
                "bond ({p}, {q}) is a self-loop"
            )));
        }
        if !seen.insert((p.min(q), p.max(q))) {
            return Err(Error::InvalidParameter(format!(
                "duplicate bond ({p}, {q})"
            )));
        }
    }

    let dim = 1usize << m;
    let mut mat = DMatrix::<Complex64>::zeros(dim, dim);
    for s in 0..dim {
        let ups = (s as u64).count_ones() as i64;
        let sz_total = 2 * ups - m as i64;
        mat[(s, s)] = Complex64::new(omega_r_prime / 2.0 * sz_total as f64, 0.0);
    }
    for &(p, q) in bonds {
        let (bp, bq) = (1usize << p, 1usize << q);
        for s in 0..dim {
            // One hop direction per state; the conjugate entry is set too.
            if s & bp != 0 && s & bq == 0 {
                let t = s ^ bp ^ bq;
                mat[(t, s)] += Complex64::new(coupling, 0.0);
                mat[(s, t)] += Complex64::new(coupling, 0.0);
            }
        }
    }

    Ok(SpinHamiltonian {
        m,
        bonds: bonds.to_vec(),
        coupling,
        field: omega_r_prime,
        matrix: HermitianMatrix::new(mat)?,
    })
}

/// Spin Hamiltonian with the same bonds, hopping, and field as an effective
/// lattice model (the xy image of the tight-binding model).
pub fn xy_from_lattice(model: &LatticeModel, omega_r_prime: f64) -> Result<SpinHamiltonian> {
    if model.flavor != Flavor::Effective {
        return Err(Error::InvalidParameter(
            "spin mapping applies to effective models".into(),
        ));
    }
    let ModelParams::Effective { hopping, .. } = model.params else {
        return Err(Error::InvalidParameter(
            "spin mapping applies to effective models".into(),
        ));
    };
    let bonds: Vec<(usize, usize)> = model.bonds.iter().map(|b| (b.i, b.j)).collect();
    build_xy(model.dim(), &bonds, hopping, omega_r_prime)
}

/// Projects onto the sector with `k_up` up spins; the result has dimension
/// `C(m, k_up)`.
pub fn project_sector(h: &SpinHamiltonian, k_up: usize) -> Result<SectorProjection> {
    if k_up > h.num_spins() {
        return Err(Error::InvalidParameter(format!(
            "sector {k_up} exceeds spin count {}",
            h.num_spins()
        )));
    }
    let basis_map: Vec<usize> = (0..h.dim())
        .filter(|s| (*s as u64).count_ones() as usize == k_up)
        .collect();
    let d = basis_map.len();
    let m = DMatrix::from_fn(d, d, |i, j| h.matrix().entry(basis_map[i], basis_map[j]));
    Ok(SectorProjection {
        k_up,
        basis_map,
        matrix: HermitianMatrix::new(m)?,
    })
}

/// Maximum absolute deviation between the single-up sector of a spin
/// Hamiltonian and an effective tight-binding model, after removing the
/// constant `sigma^z` background of the `m - 1` down spins.
///
/// The spin bonds must match the tight-binding bonds; the contract for
/// matched constructions is a deviation below `1e-10 |H_tb|_F`.
pub fn sector_equivalence(h_spin: &SpinHamiltonian, h_tb: &LatticeModel) -> Result<f64> {
    let m = h_spin.num_spins();
    if m != h_tb.dim() {
        return Err(Error::DimensionMismatch {
            left: m,
            right: h_tb.dim(),
        });
    }
    let ModelParams::Effective { onsite, .. } = h_tb.params else {
        return Err(Error::InvalidParameter(
            "sector equivalence compares against effective models".into(),
        ));
    };
    let spin_bonds: std::collections::HashSet<(usize, usize)> = h_spin
        .bonds
        .iter()
        .map(|&(p, q)| (p.min(q), p.max(q)))
        .collect();
    let tb_bonds: std::collections::HashSet<(usize, usize)> = h_tb
        .bonds
        .iter()
        .map(|b| (b.i.min(b.j), b.i.max(b.j)))
        .collect();
    if spin_bonds != tb_bonds {
        return Err(Error::InvalidParameter(
            "spin bonds do not match tight-binding bonds".into(),
        ));
    }

    let projection = project_sector(h_spin, 1)?;
    // Single-up states ordered by index are ordered by site: state 1 << p.
    let spin_diag = h_spin.field() / 2.0 * (2.0 - m as f64);
    let offset = spin_diag - onsite;
    let mut deviation = 0.0_f64;
    for i in 0..m {
        for j in 0..m {
            let want = h_tb.hamiltonian.entry(i, j)
                + if i == j {
                    Complex64::new(offset, 0.0)
                } else {
                    Complex64::ZERO
                };
            deviation = deviation.max((projection.matrix.entry(i, j) - want).norm());
        }
    }
    Ok(deviation)
}
