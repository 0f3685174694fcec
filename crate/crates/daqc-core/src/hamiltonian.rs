//! Two-body Hamiltonians, canonical coupling order, and problem vectors.
//!
//! A two-body Hamiltonian is a coupling map
//!
//!   H = Σ_{i<j} Σ_{μν} h_{ij}^{μν} σ_i^μ σ_j^ν
//!
//! and a scheduling problem is the elementwise ratio b = T · h_P ⊘ h_S over
//! the couplings retained after removal of pairs that are zero on both sides.
//! Qubit indices are 1-based everywhere, including file formats.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the three Pauli axes; ordered x < y < z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PauliAxis::X => write!(f, "x"),
            PauliAxis::Y => write!(f, "y"),
            PauliAxis::Z => write!(f, "z"),
        }
    }
}

/// Which coupling structure and gate alphabet a system uses.
///
/// `Zz` restricts couplings to μ = ν = z and layers to {I, X} per qubit;
/// `General` allows all nine axis pairs and layers in {I, X, Y, Z}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Zz,
    General,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Zz => write!(f, "zz"),
            ModelKind::General => write!(f, "general"),
        }
    }
}

/// Identifies one coupling h_{ij}^{μν} with 1 ≤ i < j ≤ n.
///
/// The derived order — (i, j) first, then (μ, ν) row-major with x < y < z —
/// is the canonical row order of sign matrices and problem vectors.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct CouplingKey {
    pub i: usize,
    pub j: usize,
    pub mu: PauliAxis,
    pub nu: PauliAxis,
}

impl CouplingKey {
    /// A ZZ coupling between qubits `i < j`.
    pub fn zz(i: usize, j: usize) -> Self {
        CouplingKey {
            i,
            j,
            mu: PauliAxis::Z,
            nu: PauliAxis::Z,
        }
    }

    pub fn new(i: usize, j: usize, mu: PauliAxis, nu: PauliAxis) -> Self {
        CouplingKey { i, j, mu, nu }
    }

    fn validate(&self, n: usize, model: ModelKind) -> Result<()> {
        if !(1 <= self.i && self.i < self.j && self.j <= n) {
            return Err(Error::InvalidInput(format!(
                "coupling ({}, {}) violates 1 <= i < j <= {n}",
                self.i, self.j
            )));
        }
        if model == ModelKind::Zz && (self.mu != PauliAxis::Z || self.nu != PauliAxis::Z) {
            return Err(Error::InvalidInput(format!(
                "coupling {self} has non-z axes in a zz-model Hamiltonian"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for CouplingKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{}{})", self.i, self.j, self.mu, self.nu)
    }
}

/// The canonical ordered list of coupling keys for `n` qubits.
///
/// ZZ: n(n−1)/2 keys sorted by (i, j). General: nine keys per pair, row-major
/// over (μ, ν): xx, xy, xz, yx, yy, yz, zx, zy, zz.
pub fn coupling_index(n: usize, model: ModelKind) -> Result<Vec<CouplingKey>> {
    if n < 2 {
        return Err(Error::InvalidSize { n });
    }
    let mut keys = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            match model {
                ModelKind::Zz => keys.push(CouplingKey::zz(i, j)),
                ModelKind::General => {
                    for mu in PauliAxis::ALL {
                        for nu in PauliAxis::ALL {
                            keys.push(CouplingKey::new(i, j, mu, nu));
                        }
                    }
                }
            }
        }
    }
    Ok(keys)
}

/// Human-readable statement of the canonical coupling order, embedded in
/// output files that carry coupling-indexed vectors.
pub const COUPLING_ORDER_NOTE: &str =
    "pairs (i<j) lexicographic; axis pairs row-major xx,xy,xz,yx,yy,yz,zx,zy,zz";

/// A sparse two-body coupling map. Absent keys are zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoBodyHamiltonian {
    pub n: usize,
    pub model: ModelKind,
    couplings: BTreeMap<CouplingKey, f64>,
}

impl TwoBodyHamiltonian {
    pub fn new(n: usize, model: ModelKind) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize { n });
        }
        Ok(TwoBodyHamiltonian {
            n,
            model,
            couplings: BTreeMap::new(),
        })
    }

    /// All couplings set to `value` (an all-to-all map).
    pub fn uniform(n: usize, model: ModelKind, value: f64) -> Result<Self> {
        let mut h = TwoBodyHamiltonian::new(n, model)?;
        for key in coupling_index(n, model)? {
            h.couplings.insert(key, value);
        }
        Ok(h)
    }

    /// Set one coupling coefficient. Setting an exact zero removes the key.
    pub fn set(&mut self, key: CouplingKey, value: f64) -> Result<()> {
        key.validate(self.n, self.model)?;
        if !value.is_finite() {
            return Err(Error::InvalidInput(format!(
                "coupling {key} has non-finite value {value}"
            )));
        }
        if value == 0.0 {
            self.couplings.remove(&key);
        } else {
            self.couplings.insert(key, value);
        }
        Ok(())
    }

    /// The coefficient at `key`, zero when absent.
    pub fn get(&self, key: CouplingKey) -> f64 {
        self.couplings.get(&key).copied().unwrap_or(0.0)
    }

    /// Nonzero couplings in canonical order.
    pub fn couplings(&self) -> impl Iterator<Item = (CouplingKey, f64)> + '_ {
        self.couplings.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_compatible_with(&self, other: &TwoBodyHamiltonian) -> bool {
        self.n == other.n && self.model == other.model
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: HamiltonianFile = serde_json::from_str(&text)?;
        file.into_hamiltonian()
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let file = HamiltonianFile::from_hamiltonian(self);
        std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
        Ok(())
    }
}

/// On-disk form: `{n, model, couplings: [{i, j, mu, nu, value}]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct HamiltonianFile {
    pub n: usize,
    pub model: ModelKind,
    pub couplings: Vec<CouplingEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CouplingEntry {
    pub i: usize,
    pub j: usize,
    pub mu: PauliAxis,
    pub nu: PauliAxis,
    pub value: f64,
}

impl HamiltonianFile {
    pub fn from_hamiltonian(h: &TwoBodyHamiltonian) -> Self {
        HamiltonianFile {
            n: h.n,
            model: h.model,
            couplings: h
                .couplings()
                .map(|(k, value)| CouplingEntry {
                    i: k.i,
                    j: k.j,
                    mu: k.mu,
                    nu: k.nu,
                    value,
                })
                .collect(),
        }
    }

    pub fn into_hamiltonian(self) -> Result<TwoBodyHamiltonian> {
        let mut h = TwoBodyHamiltonian::new(self.n, self.model)?;
        for entry in &self.couplings {
            let key = CouplingKey::new(entry.i, entry.j, entry.mu, entry.nu);
            if h.couplings.contains_key(&key) {
                return Err(Error::InvalidInput(format!(
                    "duplicate coupling entry {key}"
                )));
            }
            h.set(key, entry.value)?;
        }
        Ok(h)
    }
}

/// The vector b = T · h_P ⊘ h_S over the retained coupling index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemVector {
    pub n: usize,
    pub model: ModelKind,
    /// Retained couplings, strictly increasing in canonical order.
    pub index: Vec<CouplingKey>,
    pub values: Vec<f64>,
    /// Target evolution time folded into `values`.
    #[serde(rename = "T")]
    pub t_target: f64,
}

impl ProblemVector {
    /// A problem vector over the full canonical index (no removals).
    pub fn dense(n: usize, model: ModelKind, values: Vec<f64>, t_target: f64) -> Result<Self> {
        let index = coupling_index(n, model)?;
        if index.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} values for n = {n} {model}, got {}",
                index.len(),
                values.len()
            )));
        }
        Ok(ProblemVector {
            n,
            model,
            index,
            values,
            t_target,
        })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// Build b = T · h_P ⊘ h_S with the coupling removal rule.
///
/// Couplings that are zero in both Hamiltonians are dropped from the index.
/// A coupling with zero source but nonzero problem coefficient makes the
/// system unsolvable and is reported as [`Error::IncompatiblePair`].
pub fn build_problem_vector(
    hp: &TwoBodyHamiltonian,
    hs: &TwoBodyHamiltonian,
    t_target: f64,
) -> Result<ProblemVector> {
    build_problem_vector_with_threshold(hp, hs, t_target, 0.0)
}

/// As [`build_problem_vector`], treating coefficients with |h| <= `zero_tol`
/// as missing. The default threshold is zero: only literal zeros are missing.
pub fn build_problem_vector_with_threshold(
    hp: &TwoBodyHamiltonian,
    hs: &TwoBodyHamiltonian,
    t_target: f64,
    zero_tol: f64,
) -> Result<ProblemVector> {
    if !hp.is_compatible_with(hs) {
        return Err(Error::DimensionMismatch(format!(
            "problem is n = {} {}, source is n = {} {}",
            hp.n, hp.model, hs.n, hs.model
        )));
    }
    if !(t_target >= 0.0 && t_target.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "target time must be a nonnegative real, got {t_target}"
        )));
    }
    let mut index = Vec::new();
    let mut values = Vec::new();
    for key in coupling_index(hp.n, hp.model)? {
        let p = hp.get(key);
        let s = hs.get(key);
        let p_zero = p.abs() <= zero_tol;
        let s_zero = s.abs() <= zero_tol;
        match (p_zero, s_zero) {
            (true, true) => {} // removed
            (false, true) => return Err(Error::IncompatiblePair { key }),
            _ => {
                index.push(key);
                values.push(if p_zero { 0.0 } else { t_target * p / s });
            }
        }
    }
    if index.is_empty() {
        return Err(Error::EmptyProblem);
    }
    Ok(ProblemVector {
        n: hp.n,
        model: hp.model,
        index,
        values,
        t_target,
    })
}

/// The 1-, 2-, and ∞-norms of a problem vector's values.
pub fn norms(b: &ProblemVector) -> (f64, f64, f64) {
    vector_norms(&b.values)
}

pub(crate) fn vector_norms(values: &[f64]) -> (f64, f64, f64) {
    let l1 = values.iter().map(|v| v.abs()).sum();
    let l2 = values.iter().map(|v| v * v).sum::<f64>().sqrt();
    let linf = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    (l1, l2, linf)
}
