//! Real-space and Bloch Hamiltonians for the resonator chain and the Kagome
//! lattice, in the full flavor (resonators + ancilla qubits, single-excitation
//! sector) and the effective flavor (resonators only, hopping `J_n`).
//!
//! Geometry conventions (positions are documentation; the physics only uses
//! connectivity and cell translations):
//! - Chain: resonator `i` at `(i, 0)`, ancilla between `i` and `i+1` at
//!   `(i + 1/2, 0)`.
//! - Kagome: Bravais vectors `a1 = (1, 0)`, `a2 = (1/2, sqrt(3)/2)` in units
//!   where one lattice constant spans two bonds. Resonator sublattices sit at
//!   offsets `a = (0, 0)`, `b = (1/4, -sqrt(3)/4)`, `c = (-1/4, -sqrt(3)/4)`;
//!   each cell carries two ancillas on the dual honeycomb sites, one per
//!   corner-sharing triangle. The second triangle of cell `(i, j)` joins
//!   `a(i+1, j-1)`, `c(i+1, j)`, `b(i, j)`.
//!
//! Full-flavor diagonals use the per-state values `omega_r - omega_a/2`
//! (resonator excited) and `+omega_a/2` (ancilla excited); the constant
//! `-(A-1) omega_a/2` from the remaining A-1 ancilla qubits is dropped, so a
//! single star embeds in a lattice with no shift.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::operator::HermitianMatrix;
use crate::star::{self, StarParams};

const SQRT3_4: f64 = 0.433_012_701_892_219_3;
const SQRT3_6: f64 = 0.288_675_134_594_812_9;
const SQRT3_3: f64 = 0.577_350_269_189_625_8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    Chain { n_sites: usize },
    Kagome { l1: usize, l2: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Open,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSpec {
    pub kind: LatticeKind,
    pub boundary: Boundary,
}

impl LatticeSpec {
    pub fn chain(n_sites: usize, boundary: Boundary) -> Self {
        Self {
            kind: LatticeKind::Chain { n_sites },
            boundary,
        }
    }

    pub fn kagome(l1: usize, l2: usize, boundary: Boundary) -> Self {
        Self {
            kind: LatticeKind::Kagome { l1, l2 },
            boundary,
        }
    }

    fn validate(&self) -> Result<()> {
        match (self.kind, self.boundary) {
            (LatticeKind::Chain { n_sites }, Boundary::Open) if n_sites >= 1 => Ok(()),
            (LatticeKind::Chain { n_sites }, Boundary::Periodic) if n_sites >= 3 => Ok(()),
            (LatticeKind::Chain { .. }, Boundary::Periodic) => Err(Error::InvalidParameter(
                "periodic chain needs at least 3 sites to avoid doubled bonds".into(),
            )),
            (LatticeKind::Chain { .. }, _) => Err(Error::InvalidParameter(
                "chain needs at least 1 site".into(),
            )),
            (LatticeKind::Kagome { l1, l2 }, Boundary::Open) if l1 >= 1 && l2 >= 1 => Ok(()),
            (LatticeKind::Kagome { l1, l2 }, Boundary::Periodic) if l1 >= 2 && l2 >= 2 => Ok(()),
            (LatticeKind::Kagome { .. }, Boundary::Periodic) => Err(Error::InvalidParameter(
                "periodic Kagome needs L1, L2 >= 2 to avoid doubled bonds".into(),
            )),
            (LatticeKind::Kagome { .. }, _) => Err(Error::InvalidParameter(
                "Kagome extents must be >= 1".into(),
            )),
        }
    }

    /// Unit-cell extents: chain maps to `(N, 1)`.
    fn extents(&self) -> (usize, usize) {
        match self.kind {
            LatticeKind::Chain { n_sites } => (n_sites, 1),
            LatticeKind::Kagome { l1, l2 } => (l1, l2),
        }
    }

    /// Resonator count of the star each ancilla forms with its neighbors.
    pub fn star_size(&self) -> usize {
        match self.kind {
            LatticeKind::Chain { .. } => 2,
            LatticeKind::Kagome { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Full,
    Effective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiteRole {
    Resonator,
    Ancilla,
}

/// One lattice site: its role, owning unit cell, sublattice label, and a
/// Cartesian position for plotting / inspection.
#[derive(Debug, Clone, PartialEq)]
pub struct Site {
    pub role: SiteRole,
    pub cell: (usize, usize),
    pub sublattice: &'static str,
    pub position: (f64, f64),
}

/// Undirected bond between two distinct sites with its Hamiltonian amplitude
/// (`-f` for resonator-ancilla bonds, `J` for effective hopping).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bond {
    pub i: usize,
    pub j: usize,
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelParams {
    Full(StarParams),
    Effective { hopping: f64, onsite: f64 },
}

/// A concrete lattice model: site table, bond list, and the Hermitian
/// Hamiltonian they generate.
#[derive(Debug, Clone)]
pub struct LatticeModel {
    pub spec: LatticeSpec,
    pub flavor: Flavor,
    pub sites: Vec<Site>,
    pub bonds: Vec<Bond>,
    pub hamiltonian: HermitianMatrix,
    pub params: ModelParams,
}

impl LatticeModel {
    pub fn dim(&self) -> usize {
        self.sites.len()
    }

    pub fn resonator_indices(&self) -> Vec<usize> {
        self.sites
            .iter()
            .enumerate()
            .filter(|(_, s)| s.role == SiteRole::Resonator)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn n_resonators(&self) -> usize {
        self.resonator_indices().len()
    }

    pub fn n_ancillas(&self) -> usize {
        self.dim() - self.n_resonators()
    }

    pub fn degree(&self, site: usize) -> usize {
        self.bonds
            .iter()
            .filter(|b| b.i == site || b.j == site)
            .count()
    }
}

/// Intra-cell site of the periodic template.
struct CellSite {
    role: SiteRole,
    label: &'static str,
    offset: (f64, f64),
}

/// Directed template hop owned by cell `(i, j)`: matrix element `amp`
/// between sublattice `mu` in cell `(i, j) + dmu` and sublattice `nu` in
/// cell `(i, j) + dnu`. The owning cell matters at open boundaries, where a
/// bond is generated only if both displaced endpoints exist; anchoring each
/// star's bonds to the cell of its mediating ancilla keeps the effective
/// and full geometries consistent.
struct CellHop {
    mu: usize,
    dmu: (i64, i64),
    nu: usize,
    dnu: (i64, i64),
    amp: f64,
}

impl CellHop {
    fn local(mu: usize, nu: usize, dnu: (i64, i64), amp: f64) -> Self {
        Self {
            mu,
            dmu: (0, 0),
            nu,
            dnu,
            amp,
        }
    }

    /// Net cell displacement from the `mu` endpoint to the `nu` endpoint.
    fn displacement(&self) -> (i64, i64) {
        (self.dnu.0 - self.dmu.0, self.dnu.1 - self.dmu.1)
    }
}

struct CellTemplate {
    sites: Vec<CellSite>,
    hops: Vec<CellHop>,
    onsite: Vec<f64>,
    bravais: [(f64, f64); 2],
}

fn chain_template(flavor: Flavor, params: &ModelParams) -> Result<CellTemplate> {
    match (flavor, params) {
        (Flavor::Full, ModelParams::Full(p)) => {
            let f = p.uniform_coupling().ok_or(Error::NonuniformCouplings)?;
            Ok(CellTemplate {
                sites: vec![
                    CellSite {
                        role: SiteRole::Resonator,
                        label: "r",
                        offset: (0.0, 0.0),
                    },
                    CellSite {
                        role: SiteRole::Ancilla,
                        label: "anc",
                        offset: (0.5, 0.0),
                    },
                ],
                hops: vec![
                    CellHop::local(1, 0, (0, 0), -f),
                    CellHop::local(1, 0, (1, 0), -f),
                ],
                onsite: vec![p.omega_r() - p.omega_a() / 2.0, p.omega_a() / 2.0],
                bravais: [(1.0, 0.0), (0.0, 1.0)],
            })
        }
        (Flavor::Effective, ModelParams::Effective { hopping, onsite }) => Ok(CellTemplate {
            sites: vec![CellSite {
                role: SiteRole::Resonator,
                label: "r",
                offset: (0.0, 0.0),
            }],
            hops: vec![CellHop::local(0, 0, (1, 0), *hopping)],
            onsite: vec![*onsite],
            bravais: [(1.0, 0.0), (0.0, 1.0)],
        }),
        _ => Err(Error::InvalidParameter(
            "flavor does not match model parameters".into(),
        )),
    }
}

fn kagome_template(flavor: Flavor, params: &ModelParams) -> Result<CellTemplate> {
    let bravais = [(1.0, 0.0), (0.5, 2.0 * SQRT3_4)];
    let resonators = vec![
        CellSite {
            role: SiteRole::Resonator,
            label: "a",
            offset: (0.0, 0.0),
        },
        CellSite {
            role: SiteRole::Resonator,
            label: "b",
            offset: (0.25, -SQRT3_4),
        },
        CellSite {
            role: SiteRole::Resonator,
            label: "c",
            offset: (-0.25, -SQRT3_4),
        },
    ];
    match (flavor, params) {
        (Flavor::Full, ModelParams::Full(p)) => {
            let f = p.uniform_coupling().ok_or(Error::NonuniformCouplings)?;
            let mut sites = resonators;
            sites.push(CellSite {
                role: SiteRole::Ancilla,
                label: "x",
                offset: (0.0, -SQRT3_6),
            });
            sites.push(CellSite {
                role: SiteRole::Ancilla,
                label: "y",
                offset: (0.5, -SQRT3_3),
            });
            let hops = vec![
                // First triangle: ancilla x with a, b, c of its own cell.
                CellHop::local(3, 0, (0, 0), -f),
                CellHop::local(3, 1, (0, 0), -f),
                CellHop::local(3, 2, (0, 0), -f),
                // Second triangle: ancilla y with a(i+1, j-1), c(i+1, j), b(i, j).
                CellHop::local(4, 0, (1, -1), -f),
                CellHop::local(4, 2, (1, 0), -f),
                CellHop::local(4, 1, (0, 0), -f),
            ];
            let res_onsite = p.omega_r() - p.omega_a() / 2.0;
            let anc_onsite = p.omega_a() / 2.0;
            Ok(CellTemplate {
                sites,
                hops,
                onsite: vec![res_onsite, res_onsite, res_onsite, anc_onsite, anc_onsite],
                bravais,
            })
        }
        (Flavor::Effective, ModelParams::Effective { hopping, onsite }) => {
            let j = *hopping;
            let hops = vec![
                // First triangle.
                CellHop::local(0, 1, (0, 0), j),
                CellHop::local(1, 2, (0, 0), j),
                CellHop::local(2, 0, (0, 0), j),
                // Second triangle, anchored to the cell whose ancilla
                // mediates it: pairs among a(i+1, j-1), c(i+1, j), b(i, j).
                CellHop::local(1, 0, (1, -1), j),
                CellHop::local(1, 2, (1, 0), j),
                CellHop {
                    mu: 0,
                    dmu: (1, -1),
                    nu: 2,
                    dnu: (1, 0),
                    amp: j,
                },
            ];
            Ok(CellTemplate {
                sites: resonators,
                hops,
                onsite: vec![*onsite; 3],
                bravais,
            })
        }
        _ => Err(Error::InvalidParameter(
            "flavor does not match model parameters".into(),
        )),
    }
}

fn template(spec: &LatticeSpec, flavor: Flavor, params: &ModelParams) -> Result<CellTemplate> {
    match spec.kind {
        LatticeKind::Chain { .. } => chain_template(flavor, params),
        LatticeKind::Kagome { .. } => kagome_template(flavor, params),
    }
}

/// Maps a template cell displacement onto a concrete cell, respecting the
/// boundary. Returns None when the target falls off an open lattice.
fn resolve_cell(
    cell: (usize, usize),
    dcell: (i64, i64),
    extents: (usize, usize),
    boundary: Boundary,
) -> Option<(usize, usize)> {
    let (l1, l2) = (extents.0 as i64, extents.1 as i64);
    let ti = cell.0 as i64 + dcell.0;
    let tj = cell.1 as i64 + dcell.1;
    match boundary {
        Boundary::Periodic => Some(((ti.rem_euclid(l1)) as usize, (tj.rem_euclid(l2)) as usize)),
        Boundary::Open => {
            if (0..l1).contains(&ti) && (0..l2).contains(&tj) {
                Some((ti as usize, tj as usize))
            } else {
                None
            }
        }
    }
}

fn build_model(spec: &LatticeSpec, flavor: Flavor, params: ModelParams) -> Result<LatticeModel> {
    spec.validate()?;
    let tpl = template(spec, flavor, &params)?;
    let (l1, l2) = spec.extents();

    // Resonators first, then ancillas; both cell-major. The effective model's
    // site i is therefore the full model's resonator i.
    let mut sites = Vec::new();
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for pass in [SiteRole::Resonator, SiteRole::Ancilla] {
        for i in 0..l1 {
            for j in 0..l2 {
                for (s, cs) in tpl.sites.iter().enumerate() {
                    if cs.role != pass {
                        continue;
                    }
                    if pass == SiteRole::Ancilla && spec.boundary == Boundary::Open {
                        // An ancilla only exists where it can mediate a bond:
                        // at least two of its resonator partners must be on
                        // the lattice.
                        let partners = tpl
                            .hops
                            .iter()
                            .filter(|h| h.mu == s && h.dmu == (0, 0))
                            .filter(|h| {
                                resolve_cell((i, j), h.dnu, (l1, l2), spec.boundary).is_some()
                            })
                            .count();
                        if partners < 2 {
                            continue;
                        }
                    }
                    let origin = (
                        i as f64 * tpl.bravais[0].0 + j as f64 * tpl.bravais[1].0,
                        i as f64 * tpl.bravais[0].1 + j as f64 * tpl.bravais[1].1,
                    );
                    index.insert((i, j, s), sites.len());
                    sites.push(Site {
                        role: cs.role,
                        cell: (i, j),
                        sublattice: cs.label,
                        position: (origin.0 + cs.offset.0, origin.1 + cs.offset.1),
                    });
                }
            }
        }
    }

    let mut bonds = Vec::new();
    for i in 0..l1 {
        for j in 0..l2 {
            for hop in &tpl.hops {
                let Some(mu_cell) = resolve_cell((i, j), hop.dmu, (l1, l2), spec.boundary) else {
                    continue;
                };
                let Some(nu_cell) = resolve_cell((i, j), hop.dnu, (l1, l2), spec.boundary) else {
                    continue;
                };
                let Some(&src) = index.get(&(mu_cell.0, mu_cell.1, hop.mu)) else {
                    continue;
                };
                let Some(&dst) = index.get(&(nu_cell.0, nu_cell.1, hop.nu)) else {
                    continue;
                };
                bonds.push(Bond {
                    i: src,
                    j: dst,
                    amplitude: hop.amp,
                });
            }
        }
    }

    let dim = sites.len();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for (idx, site) in sites.iter().enumerate() {
        let s = tpl
            .sites
            .iter()
            .position(|cs| cs.label == site.sublattice)
            .expect("site label comes from the template");
        m[(idx, idx)] = Complex64::new(tpl.onsite[s], 0.0);
    }
    for b in &bonds {
        m[(b.i, b.j)] += Complex64::new(b.amplitude, 0.0);
        m[(b.j, b.i)] += Complex64::new(b.amplitude, 0.0);
    }

    Ok(LatticeModel {
        spec: *spec,
        flavor,
        sites,
        bonds,
        hamiltonian: HermitianMatrix::new(m)?,
        params,
    })
}

/// Full model: resonators plus ancilla qubits in the single-excitation
/// sector, with `-f` bonds from each ancilla to the resonators of its star.
pub fn build_full(spec: &LatticeSpec, params: &StarParams) -> Result<LatticeModel> {
    build_model(spec, Flavor::Full, ModelParams::Full(params.clone()))
}

/// Effective model with an explicit hopping amplitude and uniform onsite
/// energy (handy for zero-diagonal spectra in tests and sweeps).
pub fn build_effective(spec: &LatticeSpec, hopping: f64, onsite: f64) -> Result<LatticeModel> {
    if !hopping.is_finite() || !onsite.is_finite() {
        return Err(Error::InvalidParameter(
            "hopping and onsite energies must be finite".into(),
        ));
    }
    build_model(
        spec,
        Flavor::Effective,
        ModelParams::Effective { hopping, onsite },
    )
}

/// Chain model of the requested flavor. The effective flavor dresses one
/// two-resonator star and uses its `J_2` and exact level energy.
pub fn build_chain(
    spec: &LatticeSpec,
    flavor: Flavor,
    params: &StarParams,
) -> Result<LatticeModel> {
    let LatticeKind::Chain { .. } = spec.kind else {
        return Err(Error::InvalidParameter("lattice kind is not chain".into()));
    };
    build_flavored(spec, flavor, params)
}

/// Kagome model of the requested flavor. The effective flavor dresses one
/// three-resonator star and uses its `J_3` and exact level energy.
pub fn build_kagome(
    spec: &LatticeSpec,
    flavor: Flavor,
    params: &StarParams,
) -> Result<LatticeModel> {
    let LatticeKind::Kagome { .. } = spec.kind else {
        return Err(Error::InvalidParameter("lattice kind is not Kagome".into()));
    };
    build_flavored(spec, flavor, params)
}

fn build_flavored(spec: &LatticeSpec, flavor: Flavor, params: &StarParams) -> Result<LatticeModel> {
    match flavor {
        Flavor::Full => build_full(spec, params),
        Flavor::Effective => {
            let dressed = dress_for(spec, params)?;
            build_effective(spec, dressed.j, dressed.eps_r)
        }
    }
}

fn dress_for(spec: &LatticeSpec, params: &StarParams) -> Result<star::DressedStar> {
    let f = params
        .uniform_coupling()
        .ok_or(Error::NonuniformCouplings)?;
    let star_params = StarParams::uniform(spec.star_size(), params.omega_r(), params.omega_a(), f)?;
    star::dress_star(&star_params).map(|(_, d)| d)
}

/// Reduces a full model to its effective resonator-only model: hopping
/// `J_n` from the dressed star of the lattice's triangle size, onsite from
/// the dressed resonator energy, geometry mapped star by star.
pub fn effective_from_full(full: &LatticeModel) -> Result<LatticeModel> {
    if full.flavor != Flavor::Full {
        return Err(Error::InvalidParameter(
            "model is not a full-flavor model".into(),
        ));
    }
    let ModelParams::Full(params) = &full.params else {
        return Err(Error::InvalidParameter(
            "model is not a full-flavor model".into(),
        ));
    };
    let dressed = dress_for(&full.spec, params)?;
    build_effective(&full.spec, dressed.j, dressed.eps_r)
}

/// Bloch (momentum-space) form of a periodic lattice model: intra-cell
/// blocks indexed by lattice translations,`H(k)` assembled with cell-level
/// phases `exp(i k . t)`, `k` in fractional reciprocal coordinates.
#[derive(Debug, Clone)]
pub struct BlochModel {
    labels: Vec<&'static str>,
    onsite: Vec<f64>,
    hops: Vec<(usize, usize, (i64, i64), f64)>,
    reciprocal: [(f64, f64); 2],
}

impl BlochModel {
    pub fn from_model(model: &LatticeModel) -> Result<Self> {
        if model.spec.boundary != Boundary::Periodic {
            return Err(Error::OpenBoundary);
        }
        let tpl = template(&model.spec, model.flavor, &model.params)?;
        let [a1, a2] = tpl.bravais;
        // b_i . a_j = 2 pi delta_ij.
        let det = a1.0 * a2.1 - a1.1 * a2.0;
        let tau = std::f64::consts::TAU;
        let reciprocal = [
            (tau * a2.1 / det, -tau * a2.0 / det),
            (-tau * a1.1 / det, tau * a1.0 / det),
        ];
        Ok(Self {
            labels: tpl.sites.iter().map(|s| s.label).collect(),
            onsite: tpl.onsite,
            hops: tpl
                .hops
                .iter()
                .map(|h| (h.mu, h.nu, h.displacement(), h.amp))
                .collect(),
            reciprocal,
        })
    }

    pub fn cell_dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[&'static str] {
        &self.labels
    }

    /// Reciprocal basis vectors; a fractional momentum `(k1, k2)` maps to
    /// the Cartesian `k1/(2 pi) b1 + k2/(2 pi) b2`.
    pub fn reciprocal_vectors(&self) -> [(f64, f64); 2] {
        self.reciprocal
    }

    /// Translation vectors with a nonzero block, the zero vector included.
    pub fn translations(&self) -> Vec<(i64, i64)> {
        let mut ts = vec![(0, 0)];
        for (_, _, d, _) in &self.hops {
            for t in [*d, (-d.0, -d.1)] {
                if !ts.contains(&t) {
                    ts.push(t);
                }
            }
        }
        ts.sort_unstable();
        ts
    }

    /// Hopping block `B(t)[mu][nu] = <mu, cell 0 | H | nu, cell t>`.
    /// Satisfies `B(-t) = B(t)^dag`.
    pub fn block(&self, t: (i64, i64)) -> DMatrix<Complex64> {
        let d = self.cell_dim();
        let mut m = DMatrix::<Complex64>::zeros(d, d);
        if t == (0, 0) {
            for i in 0..d {
                m[(i, i)] = Complex64::new(self.onsite[i], 0.0);
            }
        }
        for (mu, nu, dcell, amp) in &self.hops {
            if *dcell == t {
                m[(*mu, *nu)] += Complex64::new(*amp, 0.0);
            }
            if (-dcell.0, -dcell.1) == t {
                m[(*nu, *mu)] += Complex64::new(*amp, 0.0);
            }
        }
        m
    }

    /// Bloch Hamiltonian at `k = (k1, k2)`, fractional reciprocal
    /// coordinates (`k . t = k1 t1 + k2 t2`).
    pub fn hamiltonian(&self, k: (f64, f64)) -> HermitianMatrix {
        let d = self.cell_dim();
        let mut m = DMatrix::<Complex64>::zeros(d, d);
        for i in 0..d {
            m[(i, i)] = Complex64::new(self.onsite[i], 0.0);
        }
        for (mu, nu, dcell, amp) in &self.hops {
            let phase = Complex64::from_polar(1.0, k.0 * dcell.0 as f64 + k.1 * dcell.1 as f64);
            m[(*mu, *nu)] += phase * *amp;
            m[(*nu, *mu)] += phase.conj() * *amp;
        }
        HermitianMatrix::new(m).expect("Bloch Hamiltonian is Hermitian by construction")
    }
}

/// Bloch Hamiltonian of a periodic model at one momentum.
pub fn bloch_hamiltonian(model: &LatticeModel, k: (f64, f64)) -> Result<HermitianMatrix> {
    Ok(BlochModel::from_model(model)?.hamiltonian(k))
}

/// One row of a band-structure table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandPoint {
    pub k: (f64, f64),
    pub band: usize,
    pub energy: f64,
}

/// Ascending bands over a k-grid, row order: k-grid order, then band index.
pub fn band_structure(model: &LatticeModel, k_grid: &[(f64, f64)]) -> Result<Vec<BandPoint>> {
    if k_grid.is_empty() {
        return Err(Error::InvalidParameter("empty k-grid".into()));
    }
    let bloch = BlochModel::from_model(model)?;
    let mut out = Vec::with_capacity(k_grid.len() * bloch.cell_dim());
    for &k in k_grid {
        let spec = crate::operator::eig_hermitian(&bloch.hamiltonian(k));
        for (band, energy) in spec.eigenvalues().iter().enumerate() {
            out.push(BandPoint {
                k,
                band,
                energy: *energy,
            });
        }
    }
    Ok(out)
}

/// Uniform fractional k-grid `(2 pi m1 / n1, 2 pi m2 / n2)`, m-major in the
/// second index.
pub fn uniform_k_grid(n1: usize, n2: usize) -> Vec<(f64, f64)> {
    let mut grid = Vec::with_capacity(n1 * n2);
    for m1 in 0..n1 {
        for m2 in 0..n2 {
            grid.push((
                2.0 * std::f64::consts::PI * m1 as f64 / n1 as f64,
                2.0 * std::f64::consts::PI * m2 as f64 / n2 as f64,
            ));
        }
    }
    grid
}

/// Per-band (min, max) energies of a band table.
pub fn band_ranges(points: &[BandPoint]) -> Vec<(f64, f64)> {
    let n_bands = points.iter().map(|p| p.band).max().map_or(0, |b| b + 1);
    let mut ranges = vec![(f64::INFINITY, f64::NEG_INFINITY); n_bands];
    for p in points {
        ranges[p.band].0 = ranges[p.band].0.min(p.energy);
        ranges[p.band].1 = ranges[p.band].1.max(p.energy);
    }
    ranges
}
