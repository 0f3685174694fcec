//! Independent verification of compiled schedules.
//!
//! Three oracles check the same identity T·H_P = Σ_k t_k · V_k H_S V_k
//! through code paths that never touch the sign-matrix construction:
//! per-coupling signs come from explicit 2×2 Pauli conjugation, the dense
//! oracle conjugates full 2^n-dimensional Hamiltonians, and the ZZ unitary
//! oracle compares the exact product of commuting exponentials.

use num_complex::Complex64;
use serde::Serialize;

use crate::compiler::Schedule;
use crate::error::{Error, Result};
use crate::hamiltonian::{coupling_index, PauliAxis, ModelKind, TwoBodyHamiltonian};
use crate::signs::Pauli;

/// Dense oracles refuse systems above this qubit count (2^n matrices).
pub const DEFAULT_DENSE_CAP: usize = 10;

/// Relative Frobenius tolerance of the dense matrix oracle.
pub const MATRIX_TOL: f64 = 1e-8;

/// Operator-distance tolerance of the exact ZZ unitary oracle.
pub const UNITARY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CheckResult {
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    fn new(residual: f64, tolerance: f64) -> Self {
        CheckResult {
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }
}

/// Residuals and pass flags for whichever checks were run.
#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    pub coupling: Option<CheckResult>,
    pub matrix: Option<CheckResult>,
    pub unitary: Option<CheckResult>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        [self.coupling, self.matrix, self.unitary]
            .iter()
            .flatten()
            .all(|c| c.pass)
    }

    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.coupling = other.coupling.or(self.coupling);
        self.matrix = other.matrix.or(self.matrix);
        self.unitary = other.unitary.or(self.unitary);
        self
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn pauli_2x2(p: Pauli) -> [[Complex64; 2]; 2] {
    match p {
        Pauli::I => [[ONE, ZERO], [ZERO, ONE]],
        Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
        Pauli::Y => [
            [ZERO, Complex64::new(0.0, -1.0)],
            [Complex64::new(0.0, 1.0), ZERO],
        ],
        Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

fn axis_2x2(axis: PauliAxis) -> [[Complex64; 2]; 2] {
    match axis {
        PauliAxis::X => pauli_2x2(Pauli::X),
        PauliAxis::Y => pauli_2x2(Pauli::Y),
        PauliAxis::Z => pauli_2x2(Pauli::Z),
    }
}

fn mul_2x2(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut c = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn dagger_2x2(a: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut c = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[j][i].conj();
        }
    }
    c
}

/// Sign of g σ_axis g† relative to σ_axis, found by actually conjugating the
/// 2×2 matrices (Pauli conjugation always yields ±σ_axis).
fn conjugation_sign(gate: Pauli, axis: PauliAxis) -> f64 {
    let g = pauli_2x2(gate);
    let sigma = axis_2x2(axis);
    let conj = mul_2x2(&mul_2x2(&g, &sigma), &dagger_2x2(&g));
    let mut plus = true;
    let mut minus = true;
    for i in 0..2 {
        for j in 0..2 {
            if (conj[i][j] - sigma[i][j]).norm() > 1e-12 {
                plus = false;
            }
            if (conj[i][j] + sigma[i][j]).norm() > 1e-12 {
                minus = false;
            }
        }
    }
    debug_assert!(plus ^ minus, "Pauli conjugation must give exactly ±σ");
    if plus {
        1.0
    } else {
        -1.0
    }
}

fn check_instance(
    schedule: &Schedule,
    hs: &TwoBodyHamiltonian,
    hp: &TwoBodyHamiltonian,
) -> Result<()> {
    if !hp.is_compatible_with(hs) {
        return Err(Error::DimensionMismatch(
            "problem and source Hamiltonians differ in size or model".into(),
        ));
    }
    if schedule.n != hp.n || schedule.model != hp.model {
        return Err(Error::DimensionMismatch(
            "schedule does not match the Hamiltonians' size or model".into(),
        ));
    }
    for block in &schedule.blocks {
        if block.layer.len() != schedule.n {
            return Err(Error::DimensionMismatch(format!(
                "layer {} has wrong length for n = {}",
                block.layer, schedule.n
            )));
        }
        if !(block.time >= 0.0 && block.time.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "block time {} is not a nonnegative real",
                block.time
            )));
        }
    }
    Ok(())
}

/// Check Σ_k t_k · sign_k(c) · h_S(c) = T · h_P(c) for every retained
/// coupling, with signs recomputed by 2×2 conjugation.
pub fn verify_couplings(
    schedule: &Schedule,
    hs: &TwoBodyHamiltonian,
    hp: &TwoBodyHamiltonian,
    tol: f64,
) -> Result<VerificationReport> {
    check_instance(schedule, hs, hp)?;
    let mut residual = 0.0_f64;
    let mut scale = 0.0_f64;
    for key in coupling_index(hp.n, hp.model)? {
        let p = hp.get(key);
        let s = hs.get(key);
        if s == 0.0 {
            if p != 0.0 {
                return Err(Error::IncompatiblePair { key });
            }
            continue;
        }
        let target = schedule.t_target * p;
        let mut acc = 0.0;
        for block in &schedule.blocks {
            let sign = conjugation_sign(block.layer.gates[key.i - 1], key.mu)
                * conjugation_sign(block.layer.gates[key.j - 1], key.nu);
            acc += block.time * sign * s;
        }
        residual = residual.max((acc - target).abs());
        scale = scale.max(target.abs());
    }
    Ok(VerificationReport {
        coupling: Some(CheckResult::new(residual, tol * (1.0 + scale))),
        ..Default::default()
    })
}

/// Dense complex matrix, row-major.
struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Build the 2^n-dimensional matrix of a two-body Hamiltonian from Pauli
/// tensor products; qubit 1 is the leftmost kron factor.
fn dense_hamiltonian(h: &TwoBodyHamiltonian) -> CMatrix {
    let n = h.n;
    let dim = 1usize << n;
    let mut out = CMatrix::zeros(dim);
    for (key, coeff) in h.couplings() {
        let mut factors: Vec<[[Complex64; 2]; 2]> = vec![pauli_2x2(Pauli::I); n];
        factors[key.i - 1] = axis_2x2(key.mu);
        factors[key.j - 1] = axis_2x2(key.nu);
        // kron of the factor list, expanding left to right
        let mut term: Vec<Complex64> = vec![ONE];
        let mut td = 1usize;
        for f in &factors {
            let mut next = vec![ZERO; (td * 2) * (td * 2)];
            for r in 0..td {
                for c in 0..td {
                    let v = term[r * td + c];
                    if v == ZERO {
                        continue;
                    }
                    for fr in 0..2 {
                        for fc in 0..2 {
                            let fv = f[fr][fc];
                            if fv != ZERO {
                                next[(r * 2 + fr) * (td * 2) + (c * 2 + fc)] = v * fv;
                            }
                        }
                    }
                }
            }
            term = next;
            td *= 2;
        }
        for (o, t) in out.data.iter_mut().zip(&term) {
            *o += coeff * t;
        }
    }
    out
}

/// Basis-state action of a Pauli tensor layer: V |a⟩ = phase(a) |perm(a)⟩,
/// read off entrywise from the 2×2 gate matrices.
fn layer_permutation(layer: &[Pauli], n: usize) -> (Vec<usize>, Vec<Complex64>) {
    let dim = 1usize << n;
    let mut perm = vec![0usize; dim];
    let mut phase = vec![ONE; dim];
    for a in 0..dim {
        let mut image = 0usize;
        let mut ph = ONE;
        for (q, &g) in layer.iter().enumerate() {
            let bit = (a >> (n - 1 - q)) & 1;
            let m = pauli_2x2(g);
            // exactly one nonzero entry per column of a Pauli matrix
            let (out_bit, factor) = if m[0][bit] != ZERO {
                (0usize, m[0][bit])
            } else {
                (1usize, m[1][bit])
            };
            image |= out_bit << (n - 1 - q);
            ph *= factor;
        }
        perm[a] = image;
        phase[a] = ph;
    }
    (perm, phase)
}

/// Compare Σ_k t_k · V_k H_S V_k† with T·H_P as dense 2^n matrices
/// (Frobenius norm, relative tolerance [`MATRIX_TOL`]).
pub fn matrix_oracle(
    schedule: &Schedule,
    hs: &TwoBodyHamiltonian,
    hp: &TwoBodyHamiltonian,
    cap: usize,
) -> Result<VerificationReport> {
    check_instance(schedule, hs, hp)?;
    let n = schedule.n;
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "dense oracle needs 2^{n} dimensions, cap is n <= {cap}"
        )));
    }
    let dim = 1usize << n;
    let hs_dense = dense_hamiltonian(hs);
    let hp_dense = dense_hamiltonian(hp);

    let mut acc = CMatrix::zeros(dim);
    for block in &schedule.blocks {
        let (perm, phase) = layer_permutation(&block.layer.gates, n);
        let t = Complex64::new(block.time, 0.0);
        for a in 0..dim {
            for b in 0..dim {
                let v = hs_dense.data[a * dim + b];
                if v != ZERO {
                    acc.data[perm[a] * dim + perm[b]] += t * phase[a] * phase[b].conj() * v;
                }
            }
        }
    }

    let target = Complex64::new(schedule.t_target, 0.0);
    let mut diff = CMatrix::zeros(dim);
    let mut target_norm = CMatrix::zeros(dim);
    for i in 0..dim * dim {
        diff.data[i] = acc.data[i] - target * hp_dense.data[i];
        target_norm.data[i] = target * hp_dense.data[i];
    }
    let residual = diff.frobenius();
    let tol = MATRIX_TOL * (1.0 + target_norm.frobenius());
    Ok(VerificationReport {
        matrix: Some(CheckResult::new(residual, tol)),
        ..Default::default()
    })
}

/// Exact unitary check for the ZZ model, where every term commutes: the
/// ordered product of conjugated exponentials is diagonal and must equal
/// e^{−iT H_P} within operator distance [`UNITARY_TOL`].
pub fn zz_unitary_oracle(
    schedule: &Schedule,
    hs: &TwoBodyHamiltonian,
    hp: &TwoBodyHamiltonian,
    cap: usize,
) -> Result<VerificationReport> {
    check_instance(schedule, hs, hp)?;
    if schedule.model != ModelKind::Zz {
        return Err(Error::WrongModel(
            "unitary oracle requires the zz model; general-model terms do not commute".into(),
        ));
    }
    let n = schedule.n;
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "unitary oracle needs 2^{n} dimensions, cap is n <= {cap}"
        )));
    }
    for block in &schedule.blocks {
        if block.layer.gates.iter().any(|&g| g == Pauli::Y || g == Pauli::Z) {
            return Err(Error::WrongModel(format!(
                "zz-model layer {} may only contain I and X gates",
                block.layer
            )));
        }
    }

    let dim = 1usize << n;
    // Diagonal of a ZZ Hamiltonian in the computational basis.
    let diag = |h: &TwoBodyHamiltonian| -> Vec<f64> {
        let mut d = vec![0.0; dim];
        for (key, coeff) in h.couplings() {
            for (s, entry) in d.iter_mut().enumerate() {
                let zi = 1.0 - 2.0 * (((s >> (n - key.i)) & 1) as f64);
                let zj = 1.0 - 2.0 * (((s >> (n - key.j)) & 1) as f64);
                *entry += coeff * zi * zj;
            }
        }
        d
    };
    let ds = diag(hs);
    let dp = diag(hp);

    let masks: Vec<usize> = schedule
        .blocks
        .iter()
        .map(|b| {
            b.layer
                .gates
                .iter()
                .enumerate()
                .filter(|(_, &g)| g == Pauli::X)
                .fold(0usize, |m, (q, _)| m | (1 << (n - 1 - q)))
        })
        .collect();

    let mut distance = 0.0_f64;
    for s in 0..dim {
        let mut angle = 0.0;
        for (block, &mask) in schedule.blocks.iter().zip(&masks) {
            angle += block.time * ds[s ^ mask];
        }
        let have = Complex64::new(0.0, -angle).exp();
        let want = Complex64::new(0.0, -schedule.t_target * dp[s]).exp();
        distance = distance.max((have - want).norm());
    }
    Ok(VerificationReport {
        unitary: Some(CheckResult::new(distance, UNITARY_TOL)),
        ..Default::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::ScheduleBlock;
    use crate::hamiltonian::ModelKind;

    fn worst_case_zz3() -> (Schedule, TwoBodyHamiltonian, TwoBodyHamiltonian) {
        let hs = TwoBodyHamiltonian::uniform(3, ModelKind::Zz, 1.0).unwrap();
        let hp = TwoBodyHamiltonian::uniform(3, ModelKind::Zz, -1.0).unwrap();
        let schedule = Schedule {
            n: 3,
            model: ModelKind::Zz,
            t_target: 1.0,
            blocks: vec![
                ScheduleBlock {
                    layer: "IIX".parse().unwrap(),
                    time: 1.0,
                },
                ScheduleBlock {
                    layer: "IXI".parse().unwrap(),
                    time: 1.0,
                },
                ScheduleBlock {
                    layer: "IXX".parse().unwrap(),
                    time: 1.0,
                },
            ],
        };
        (schedule, hs, hp)
    }

    #[test]
    fn conjugation_sign_matches_anticommutation() {
        use crate::signs::single_sign;
        for gate in [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z] {
            for axis in PauliAxis::ALL {
                assert_eq!(conjugation_sign(gate, axis), single_sign(gate, axis) as f64);
            }
        }
    }

    #[test]
    fn identity_schedule_verifies_exactly() {
        let h = TwoBodyHamiltonian::uniform(3, ModelKind::Zz, 0.5).unwrap();
        let schedule = Schedule {
            n: 3,
            model: ModelKind::Zz,
            t_target: 1.0,
            blocks: vec![ScheduleBlock {
                layer: "III".parse().unwrap(),
                time: 1.0,
            }],
        };
        let r = verify_couplings(&schedule, &h, &h, 1e-8).unwrap();
        assert_eq!(r.coupling.unwrap().residual, 0.0);
        let r = matrix_oracle(&schedule, &h, &h, DEFAULT_DENSE_CAP).unwrap();
        assert_eq!(r.matrix.unwrap().residual, 0.0);
        let r = zz_unitary_oracle(&schedule, &h, &h, DEFAULT_DENSE_CAP).unwrap();
        assert_eq!(r.unitary.unwrap().residual, 0.0);
    }

    #[test]
    fn worst_case_schedule_passes_all_oracles() {
        let (schedule, hs, hp) = worst_case_zz3();
        assert!(verify_couplings(&schedule, &hs, &hp, 1e-8).unwrap().all_pass());
        assert!(matrix_oracle(&schedule, &hs, &hp, 10).unwrap().all_pass());
        assert!(zz_unitary_oracle(&schedule, &hs, &hp, 10).unwrap().all_pass());
    }

    #[test]
    fn corrupted_time_fails_every_oracle() {
        let (mut schedule, hs, hp) = worst_case_zz3();
        schedule.blocks[1].time += 0.1;
        let c = verify_couplings(&schedule, &hs, &hp, 1e-8).unwrap();
        assert!(!c.all_pass());
        let m = matrix_oracle(&schedule, &hs, &hp, 10).unwrap();
        assert!(!m.all_pass());
        let u = zz_unitary_oracle(&schedule, &hs, &hp, 10).unwrap();
        assert!(!u.all_pass());
        // The coupling and matrix oracles test the same identity and must
        // agree on the verdict.
        assert_eq!(c.coupling.unwrap().pass, m.matrix.unwrap().pass);
    }

    #[test]
    fn unitary_oracle_is_block_order_invariant() {
        let (mut schedule, hs, hp) = worst_case_zz3();
        let before = zz_unitary_oracle(&schedule, &hs, &hp, 10)
            .unwrap()
            .unitary
            .unwrap()
            .residual;
        schedule.blocks.reverse();
        let after = zz_unitary_oracle(&schedule, &hs, &hp, 10)
            .unwrap()
            .unitary
            .unwrap()
            .residual;
        assert_eq!(before, after);
    }

    #[test]
    fn unitary_oracle_rejects_general_model() {
        let h = TwoBodyHamiltonian::uniform(2, ModelKind::General, 1.0).unwrap();
        let schedule = Schedule {
            n: 2,
            model: ModelKind::General,
            t_target: 1.0,
            blocks: vec![ScheduleBlock {
                layer: "II".parse().unwrap(),
                time: 1.0,
            }],
        };
        assert!(matches!(
            zz_unitary_oracle(&schedule, &h, &h, 10),
            Err(Error::WrongModel(_))
        ));
    }

    #[test]
    fn dense_cap_is_enforced() {
        let h = TwoBodyHamiltonian::uniform(4, ModelKind::Zz, 1.0).unwrap();
        let schedule = Schedule {
            n: 4,
            model: ModelKind::Zz,
            t_target: 1.0,
            blocks: vec![ScheduleBlock {
                layer: "IIII".parse().unwrap(),
                time: 1.0,
            }],
        };
        assert!(matches!(
            matrix_oracle(&schedule, &h, &h, 3),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn general_model_matrix_oracle_on_y_layers() {
        // A single general-model block with a Y gate: effective signs flip
        // on x and z couplings of qubit 1; verify via the dense path against
        // a consistent problem Hamiltonian.
        let mut hs = TwoBodyHamiltonian::new(2, ModelKind::General).unwrap();
        let mut hp = TwoBodyHamiltonian::new(2, ModelKind::General).unwrap();
        use crate::hamiltonian::CouplingKey;
        use crate::hamiltonian::PauliAxis::{X, Y, Z};
        hs.set(CouplingKey::new(1, 2, X, Z), 2.0).unwrap();
        hs.set(CouplingKey::new(1, 2, Y, Y), 1.0).unwrap();
        // Under a (Y, I) layer: the xz coupling flips, the yy coupling does not.
        hp.set(CouplingKey::new(1, 2, X, Z), -2.0).unwrap();
        hp.set(CouplingKey::new(1, 2, Y, Y), 1.0).unwrap();
        let schedule = Schedule {
            n: 2,
            model: ModelKind::General,
            t_target: 1.0,
            blocks: vec![ScheduleBlock {
                layer: "YI".parse().unwrap(),
                time: 1.0,
            }],
        };
        assert!(verify_couplings(&schedule, &hs, &hp, 1e-8).unwrap().all_pass());
        assert!(matrix_oracle(&schedule, &hs, &hp, 10).unwrap().all_pass());
    }
}
