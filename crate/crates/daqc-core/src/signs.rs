//! Gate layers, Pauli-sandwich sign flips, and the ±1 sign matrix M.
//!
//! Sandwiching an analog block with single-qubit Pauli gates flips the sign
//! of every coupling whose axis anticommutes with the gate on either
//! endpoint. Column k of M holds the effective signs of all couplings under
//! gate layer k, so the schedule equation becomes M t = b.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{coupling_index, CouplingKey, ModelKind, PauliAxis};

/// Gate columns above this count are refused; 4^n growth in the general
/// model makes an explicit guard necessary.
pub const DEFAULT_COLUMN_CAP: usize = 1 << 14;

/// A single-qubit gate from the Pauli alphabet, ordered I < X < Y < Z so
/// that lexicographic layer order starts at the identity layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c.to_ascii_uppercase() {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::InvalidInput(format!("unknown gate '{other}'"))),
        }
    }

    fn axis_pauli(axis: PauliAxis) -> Pauli {
        match axis {
            PauliAxis::X => Pauli::X,
            PauliAxis::Y => Pauli::Y,
            PauliAxis::Z => Pauli::Z,
        }
    }
}

/// One digital layer: a Pauli gate per qubit, written as a string like "IXZI".
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GateLayer {
    pub gates: Vec<Pauli>,
}

impl GateLayer {
    pub fn identity(n: usize) -> Self {
        GateLayer {
            gates: vec![Pauli::I; n],
        }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.gates.iter().all(|&g| g == Pauli::I)
    }
}

impl fmt::Display for GateLayer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            write!(f, "{}", g.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for GateLayer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let gates = s.chars().map(Pauli::from_char).collect::<Result<_>>()?;
        Ok(GateLayer { gates })
    }
}

impl Serialize for GateLayer {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GateLayer {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Effective sign of a single coupling endpoint under one gate: +1 when the
/// gate is the identity or matches the coupling axis, −1 otherwise
/// (anticommutation).
pub fn single_sign(gate: Pauli, axis: PauliAxis) -> i8 {
    if gate == Pauli::I || gate == Pauli::axis_pauli(axis) {
        1
    } else {
        -1
    }
}

/// Effective sign of coupling `c` under `layer`: the product of the two
/// endpoint signs.
pub fn layer_sign(layer: &GateLayer, c: CouplingKey) -> i8 {
    debug_assert!(c.j <= layer.len());
    single_sign(layer.gates[c.i - 1], c.mu) * single_sign(layer.gates[c.j - 1], c.nu)
}

/// All gate layers for `n` qubits in lexicographic order, identity first.
///
/// ZZ layers are {I, X} per qubit with I pinned on qubit 1: complementing
/// every gate of a layer leaves all coupling signs unchanged, so only
/// 2^(n−1) layers produce distinct columns. General layers are the full
/// {I, X, Y, Z}^n.
pub fn enumerate_layers(n: usize, model: ModelKind) -> Result<Vec<GateLayer>> {
    enumerate_layers_with_cap(n, model, DEFAULT_COLUMN_CAP)
}

pub fn enumerate_layers_with_cap(
    n: usize,
    model: ModelKind,
    cap: usize,
) -> Result<Vec<GateLayer>> {
    if n < 2 {
        return Err(Error::InvalidSize { n });
    }
    let alphabet: &[Pauli] = match model {
        ModelKind::Zz => &[Pauli::I, Pauli::X],
        ModelKind::General => &[Pauli::I, Pauli::X, Pauli::Y, Pauli::Z],
    };
    let free = match model {
        ModelKind::Zz => n - 1, // qubit 1 pinned to I
        ModelKind::General => n,
    };
    let count = alphabet
        .len()
        .checked_pow(free as u32)
        .filter(|&c| c <= cap)
        .ok_or(Error::SizeCapExceeded {
            columns: usize::MAX,
            cap,
        })?;
    if count > cap {
        return Err(Error::SizeCapExceeded { columns: count, cap });
    }

    let mut layers = Vec::with_capacity(count);
    let mut current = vec![0usize; free];
    loop {
        let mut gates = Vec::with_capacity(n);
        if model == ModelKind::Zz {
            gates.push(Pauli::I);
        }
        gates.extend(current.iter().map(|&g| alphabet[g]));
        layers.push(GateLayer { gates });

        // Odometer increment, last qubit fastest, so the order is
        // lexicographic with qubit 1 most significant.
        let mut pos = free;
        loop {
            if pos == 0 {
                return Ok(layers);
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < alphabet.len() {
                break;
            }
            current[pos] = 0;
        }
    }
}

/// The d×d' matrix of effective coupling signs: rows follow the canonical
/// coupling order, columns follow [`enumerate_layers`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix {
    pub n: usize,
    pub model: ModelKind,
    pub index: Vec<CouplingKey>,
    pub layers: Vec<GateLayer>,
    /// Row-major d×d' entries, each ±1.
    entries: Vec<i8>,
}

impl SignMatrix {
    pub fn nrows(&self) -> usize {
        self.index.len()
    }

    pub fn ncols(&self) -> usize {
        self.layers.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.ncols() + col]
    }

    /// Column `col` as a ±1 vector over the row index.
    pub fn column(&self, col: usize) -> Vec<i8> {
        (0..self.nrows()).map(|r| self.entry(r, col)).collect()
    }

    pub fn row(&self, row: usize) -> &[i8] {
        let w = self.ncols();
        &self.entries[row * w..(row + 1) * w]
    }

    /// Columns as integer points, the vertex set of the schedule polytope.
    pub fn column_points(&self) -> Vec<Vec<i64>> {
        (0..self.ncols())
            .map(|k| (0..self.nrows()).map(|r| self.entry(r, k) as i64).collect())
            .collect()
    }

    fn from_layers(
        n: usize,
        model: ModelKind,
        index: Vec<CouplingKey>,
        layers: Vec<GateLayer>,
    ) -> Self {
        let mut entries = Vec::with_capacity(index.len() * layers.len());
        for &key in &index {
            for layer in &layers {
                entries.push(layer_sign(layer, key));
            }
        }
        SignMatrix {
            n,
            model,
            index,
            layers,
            entries,
        }
    }

    /// CSV dump: header of layer strings, one row per coupling key.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> Result<()> {
        write!(w, "coupling")?;
        for layer in &self.layers {
            write!(w, ",{layer}")?;
        }
        writeln!(w)?;
        for (r, key) in self.index.iter().enumerate() {
            write!(w, "{}.{}.{}{}", key.i, key.j, key.mu, key.nu)?;
            for c in 0..self.ncols() {
                write!(w, ",{:+}", self.entry(r, c))?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Build M directly from the layer enumeration.
pub fn build_sign_matrix(n: usize, model: ModelKind) -> Result<SignMatrix> {
    build_sign_matrix_with_cap(n, model, DEFAULT_COLUMN_CAP)
}

pub fn build_sign_matrix_with_cap(n: usize, model: ModelKind, cap: usize) -> Result<SignMatrix> {
    let index = coupling_index(n, model)?;
    let layers = enumerate_layers_with_cap(n, model, cap)?;
    Ok(SignMatrix::from_layers(n, model, index, layers))
}

/// The block decomposition of the final recursion step that produced an
/// n-qubit sign matrix from the (n−1)-qubit one: one L block per gate choice
/// on the new qubit (2 for ZZ, 4 for General), each giving the signs of the
/// new couplings across the base columns.
#[derive(Debug, Clone)]
pub struct RecursionBlocks {
    /// Row-major blocks, one per new-qubit gate, each (new couplings) × d'(base).
    pub l_blocks: Vec<Vec<i8>>,
    /// The gate applied to the new qubit in each block, in column-group order.
    pub block_gates: Vec<Pauli>,
    /// Number of rows in each L block (= number of new couplings).
    pub new_rows: usize,
    /// The sign matrix the recursion extended.
    pub base: SignMatrix,
}

/// Build M by the recursion that appends one qubit at a time:
///
///   M(n+1) = ( L(n+1) L'(n+1) ... ; M(n) M(n) ... )
///
/// with one column group per gate on the new qubit. Rows are restored to
/// canonical coupling order before returning, so the result matches the
/// direct construction up to a column permutation.
pub fn build_sign_matrix_recursive(
    n: usize,
    model: ModelKind,
) -> Result<(SignMatrix, RecursionBlocks)> {
    build_sign_matrix_recursive_with_cap(n, model, DEFAULT_COLUMN_CAP)
}

pub fn build_sign_matrix_recursive_with_cap(
    n: usize,
    model: ModelKind,
    cap: usize,
) -> Result<(SignMatrix, RecursionBlocks)> {
    if n < 3 {
        return Err(Error::InvalidSize { n });
    }
    let mut matrix = build_sign_matrix_with_cap(2, model, cap)?;
    let mut blocks = None;
    for _ in 3..=n {
        let (next, step) = extend_by_one_qubit(&matrix, cap)?;
        matrix = next;
        blocks = Some(step);
    }
    Ok((matrix, blocks.expect("n >= 3 runs at least one step")))
}

/// One recursion step: extend `base` (m qubits) to m+1 qubits.
fn extend_by_one_qubit(base: &SignMatrix, cap: usize) -> Result<(SignMatrix, RecursionBlocks)> {
    let m = base.n;
    let new_n = m + 1;
    let gate_choices: &[Pauli] = match base.model {
        ModelKind::Zz => &[Pauli::I, Pauli::X],
        ModelKind::General => &[Pauli::I, Pauli::X, Pauli::Y, Pauli::Z],
    };
    let new_cols = base.ncols() * gate_choices.len();
    if new_cols > cap {
        return Err(Error::SizeCapExceeded {
            columns: new_cols,
            cap,
        });
    }

    // Couplings gained by adding qubit new_n, in canonical order.
    let new_keys: Vec<CouplingKey> = coupling_index(new_n, base.model)?
        .into_iter()
        .filter(|k| k.j == new_n)
        .collect();

    // Columns grouped by the new qubit's gate; within a group the first m
    // gates are the base layer, so the lower blocks are copies of the base.
    let mut layers = Vec::with_capacity(new_cols);
    let mut l_blocks = Vec::with_capacity(gate_choices.len());
    for &gate in gate_choices {
        let mut block = Vec::with_capacity(new_keys.len() * base.ncols());
        for &key in &new_keys {
            for layer in &base.layers {
                let endpoint = single_sign(layer.gates[key.i - 1], key.mu);
                block.push(endpoint * single_sign(gate, key.nu));
            }
        }
        l_blocks.push(block);
        for layer in &base.layers {
            let mut gates = layer.gates.clone();
            gates.push(gate);
            layers.push(GateLayer { gates });
        }
    }

    // Assemble rows in block order (new couplings on top), then restore the
    // canonical row order.
    let mut index: Vec<CouplingKey> = new_keys.clone();
    index.extend_from_slice(&base.index);
    let ncols = new_cols;
    let mut entries = vec![0i8; index.len() * ncols];
    for (r, _) in new_keys.iter().enumerate() {
        for (g, block) in l_blocks.iter().enumerate() {
            for c in 0..base.ncols() {
                entries[r * ncols + g * base.ncols() + c] = block[r * base.ncols() + c];
            }
        }
    }
    for r in 0..base.nrows() {
        for g in 0..gate_choices.len() {
            for c in 0..base.ncols() {
                entries[(new_keys.len() + r) * ncols + g * base.ncols() + c] = base.entry(r, c);
            }
        }
    }

    let stacked = SignMatrix {
        n: new_n,
        model: base.model,
        index,
        layers,
        entries,
    };
    let blocks = RecursionBlocks {
        l_blocks,
        block_gates: gate_choices.to_vec(),
        new_rows: new_keys.len(),
        base: base.clone(),
    };
    Ok((reorder_rows_canonical(stacked)?, blocks))
}

fn reorder_rows_canonical(m: SignMatrix) -> Result<SignMatrix> {
    let canonical = coupling_index(m.n, m.model)?;
    let ncols = m.ncols();
    let mut entries = Vec::with_capacity(canonical.len() * ncols);
    for key in &canonical {
        let r = m
            .index
            .iter()
            .position(|k| k == key)
            .ok_or_else(|| Error::DimensionMismatch(format!("missing row {key}")))?;
        entries.extend_from_slice(m.row(r));
    }
    Ok(SignMatrix {
        n: m.n,
        model: m.model,
        index: canonical,
        layers: m.layers,
        entries,
    })
}

/// Restrict M to a subset of coupling rows, merging columns that become
/// identical (keeping the first occurrence).
pub fn restrict_rows(m: &SignMatrix, kept: &[CouplingKey]) -> Result<SignMatrix> {
    if kept.is_empty() {
        return Err(Error::EmptySelection);
    }
    let rows: Vec<usize> = kept
        .iter()
        .map(|key| {
            m.index
                .iter()
                .position(|k| k == key)
                .ok_or_else(|| Error::DimensionMismatch(format!("coupling {key} not in matrix")))
        })
        .collect::<Result<_>>()?;

    let mut seen = std::collections::HashSet::new();
    let mut cols = Vec::new();
    for c in 0..m.ncols() {
        let col: Vec<i8> = rows.iter().map(|&r| m.entry(r, c)).collect();
        if seen.insert(col) {
            cols.push(c);
        }
    }

    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    for &r in &rows {
        for &c in &cols {
            entries.push(m.entry(r, c));
        }
    }
    Ok(SignMatrix {
        n: m.n,
        model: m.model,
        index: kept.to_vec(),
        layers: cols.iter().map(|&c| m.layers[c].clone()).collect(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::PauliAxis::{X, Y, Z};

    fn sorted_columns(m: &SignMatrix) -> Vec<Vec<i8>> {
        let mut cols: Vec<Vec<i8>> = (0..m.ncols()).map(|c| m.column(c)).collect();
        cols.sort();
        cols
    }

    #[test]
    fn single_sign_table() {
        assert_eq!(single_sign(Pauli::X, Z), -1);
        assert_eq!(single_sign(Pauli::I, X), 1);
        assert_eq!(single_sign(Pauli::Y, X), -1);
        assert_eq!(single_sign(Pauli::X, X), 1);
        assert_eq!(single_sign(Pauli::Z, Z), 1);
        assert_eq!(single_sign(Pauli::Z, Y), -1);
    }

    #[test]
    fn layer_sign_examples() {
        let layer: GateLayer = "IXI".parse().unwrap();
        assert_eq!(layer_sign(&layer, CouplingKey::zz(1, 2)), -1);
        let layer: GateLayer = "IXX".parse().unwrap();
        assert_eq!(layer_sign(&layer, CouplingKey::zz(2, 3)), 1);
        let layer: GateLayer = "YI".parse().unwrap();
        assert_eq!(layer_sign(&layer, CouplingKey::new(1, 2, X, Z)), -1);
    }

    #[test]
    fn enumerate_layers_zz3() {
        let layers = enumerate_layers(3, ModelKind::Zz).unwrap();
        let strings: Vec<String> = layers.iter().map(|l| l.to_string()).collect();
        assert_eq!(strings, vec!["III", "IIX", "IXI", "IXX"]);
    }

    #[test]
    fn enumerate_layers_counts() {
        assert_eq!(enumerate_layers(2, ModelKind::Zz).unwrap().len(), 2);
        assert_eq!(enumerate_layers(2, ModelKind::General).unwrap().len(), 16);
        assert_eq!(enumerate_layers(6, ModelKind::Zz).unwrap().len(), 32);
    }

    #[test]
    fn enumerate_layers_identity_first_lexicographic() {
        for model in [ModelKind::Zz, ModelKind::General] {
            let layers = enumerate_layers(3, model).unwrap();
            assert!(layers[0].is_identity());
            assert!(layers.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn enumerate_layers_rejects_small_n() {
        assert!(matches!(
            enumerate_layers(1, ModelKind::Zz),
            Err(Error::InvalidSize { n: 1 })
        ));
    }

    #[test]
    fn column_cap_enforced() {
        assert!(matches!(
            enumerate_layers_with_cap(4, ModelKind::General, 100),
            Err(Error::SizeCapExceeded { columns: 256, cap: 100 })
        ));
    }

    #[test]
    fn sign_matrix_zz3_is_the_known_tetrahedron_matrix() {
        let m = build_sign_matrix(3, ModelKind::Zz).unwrap();
        assert_eq!(m.row(0), &[1, 1, -1, -1]);
        assert_eq!(m.row(1), &[1, -1, 1, -1]);
        assert_eq!(m.row(2), &[1, -1, -1, 1]);
    }

    #[test]
    fn sign_matrix_zz2() {
        let m = build_sign_matrix(2, ModelKind::Zz).unwrap();
        assert_eq!(m.nrows(), 1);
        assert_eq!(m.row(0), &[1, -1]);
    }

    #[test]
    fn identity_column_is_all_plus_one() {
        for (n, model) in [(4, ModelKind::Zz), (3, ModelKind::General)] {
            let m = build_sign_matrix(n, model).unwrap();
            assert!(m.column(0).iter().all(|&s| s == 1));
        }
    }

    #[test]
    fn columns_sum_to_zero_and_are_distinct() {
        for (n, model) in [(5, ModelKind::Zz), (3, ModelKind::General)] {
            let m = build_sign_matrix(n, model).unwrap();
            for r in 0..m.nrows() {
                let sum: i32 = m.row(r).iter().map(|&s| s as i32).sum();
                assert_eq!(sum, 0, "row {r} does not sum to zero");
            }
            let mut cols = sorted_columns(&m);
            cols.dedup();
            assert_eq!(cols.len(), m.ncols(), "columns are not pairwise distinct");
        }
    }

    #[test]
    fn rows_are_orthogonal_with_squared_norm_dprime() {
        // M Mᵀ = d'·I exactly, which pins every singular value at √d' and
        // certifies full row rank without any tolerance.
        for (n, model) in [(6, ModelKind::Zz), (4, ModelKind::General)] {
            let m = build_sign_matrix(n, model).unwrap();
            let dp = m.ncols() as i64;
            for r in 0..m.nrows() {
                for s in r..m.nrows() {
                    let dot: i64 = (0..m.ncols())
                        .map(|c| (m.entry(r, c) as i64) * (m.entry(s, c) as i64))
                        .sum();
                    assert_eq!(dot, if r == s { dp } else { 0 });
                }
            }
        }
    }

    #[test]
    fn zz_complement_symmetry() {
        // Flipping X <-> I on every qubit leaves every coupling sign unchanged.
        let n = 5;
        let keys = coupling_index(n, ModelKind::Zz).unwrap();
        for layer in enumerate_layers(n, ModelKind::Zz).unwrap() {
            let flipped = GateLayer {
                gates: layer
                    .gates
                    .iter()
                    .map(|&g| if g == Pauli::I { Pauli::X } else { Pauli::I })
                    .collect(),
            };
            for &key in &keys {
                assert_eq!(layer_sign(&layer, key), layer_sign(&flipped, key));
            }
        }
    }

    #[test]
    fn recursive_matches_direct_zz4() {
        let direct = build_sign_matrix(4, ModelKind::Zz).unwrap();
        let (recursive, blocks) = build_sign_matrix_recursive(4, ModelKind::Zz).unwrap();
        assert_eq!(recursive.index, direct.index);
        assert_eq!(sorted_columns(&recursive), sorted_columns(&direct));
        // L'(4) = -L(4) exactly.
        assert_eq!(blocks.l_blocks.len(), 2);
        let l: Vec<i8> = blocks.l_blocks[0].iter().map(|&s| -s).collect();
        assert_eq!(l, blocks.l_blocks[1]);
        assert_eq!(blocks.new_rows, 3);
        assert_eq!(blocks.base.n, 3);
    }

    #[test]
    fn recursive_matches_direct_general3() {
        let direct = build_sign_matrix(3, ModelKind::General).unwrap();
        let (recursive, blocks) = build_sign_matrix_recursive(3, ModelKind::General).unwrap();
        assert_eq!(recursive.ncols(), 64);
        assert_eq!(sorted_columns(&recursive), sorted_columns(&direct));
        assert_eq!(blocks.l_blocks.len(), 4);
    }

    #[test]
    fn restrict_rows_identity() {
        let m = build_sign_matrix(3, ModelKind::Zz).unwrap();
        let kept = m.index.clone();
        let r = restrict_rows(&m, &kept).unwrap();
        assert_eq!(r, m);
    }

    #[test]
    fn restrict_rows_to_triangle_recovers_small_matrix() {
        let m = build_sign_matrix(4, ModelKind::Zz).unwrap();
        let kept = vec![
            CouplingKey::zz(1, 2),
            CouplingKey::zz(1, 3),
            CouplingKey::zz(2, 3),
        ];
        let r = restrict_rows(&m, &kept).unwrap();
        assert_eq!(r.ncols(), 4);
        let small = build_sign_matrix(3, ModelKind::Zz).unwrap();
        assert_eq!(sorted_columns(&r), sorted_columns(&small));
    }

    #[test]
    fn restrict_rows_single_row() {
        let m = build_sign_matrix(4, ModelKind::Zz).unwrap();
        let r = restrict_rows(&m, &[CouplingKey::zz(2, 4)]).unwrap();
        assert_eq!(r.ncols(), 2);
        let mut cols = sorted_columns(&r);
        cols.sort();
        assert_eq!(cols, vec![vec![-1], vec![1]]);
    }

    #[test]
    fn restrict_rows_empty_selection() {
        let m = build_sign_matrix(3, ModelKind::Zz).unwrap();
        assert!(matches!(restrict_rows(&m, &[]), Err(Error::EmptySelection)));
    }

    #[test]
    fn csv_dump_has_layer_header_and_coupling_rows() {
        let m = build_sign_matrix(3, ModelKind::Zz).unwrap();
        let mut out = Vec::new();
        m.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "coupling,III,IIX,IXI,IXX");
        assert_eq!(lines.next().unwrap(), "1.2.zz,+1,+1,-1,-1");
    }

    #[test]
    fn gate_layer_parse_display_round_trip() {
        let layer: GateLayer = "IXYZ".parse().unwrap();
        assert_eq!(layer.to_string(), "IXYZ");
        assert_eq!(layer.gates, vec![Pauli::I, Pauli::X, Pauli::Y, Pauli::Z]);
        assert!("IQ".parse::<GateLayer>().is_err());
    }

    #[test]
    fn general_layer_sign_consistency_with_spec_vector() {
        // The n=2 general matrix must carry (1,1,1,...) in the identity
        // column and resolve the diagonal axis pairs independently.
        let m = build_sign_matrix(2, ModelKind::General).unwrap();
        assert_eq!(m.nrows(), 9);
        assert_eq!(m.ncols(), 16);
        let xx = m.index.iter().position(|k| (k.mu, k.nu) == (X, X)).unwrap();
        let yy = m.index.iter().position(|k| (k.mu, k.nu) == (Y, Y)).unwrap();
        let zz = m.index.iter().position(|k| (k.mu, k.nu) == (Z, Z)).unwrap();
        assert_eq!((xx, yy, zz), (0, 4, 8));
    }
}
