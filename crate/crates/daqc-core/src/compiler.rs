//! End-to-end schedule synthesis, time bounds, and worst-case instances.
//!
//! The pipeline is: vectorize the Hamiltonian pair into b = T·h_P ⊘ h_S,
//! restrict the sign matrix to the retained couplings, minimize total analog
//! time with the LP core, and emit the supported layers as a schedule. The
//! bound formulas and the saturating 3-sparse problem families live here too.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::{sample_values, Distribution, DistributionKind};
use crate::hamiltonian::{
    build_problem_vector, coupling_index, norms, CouplingKey, ModelKind, PauliAxis,
    ProblemVector, TwoBodyHamiltonian,
};
use crate::lp::{solve_min_time, LpStatus};
use crate::signs::{build_sign_matrix_with_cap, restrict_rows, GateLayer, DEFAULT_COLUMN_CAP};
use crate::verify::verify_couplings;

/// Largest n accepted by the worst-direction enumeration (4·C(n,3) growth).
pub const DEFAULT_WORST_CAP: usize = 16;

/// One digital-analog block: a gate layer and its analog evolution time.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScheduleBlock {
    pub layer: GateLayer,
    pub time: f64,
}

/// A compiled schedule: apply each layer's gates, evolve under the source
/// Hamiltonian for the block time, undo the gates, repeat.
#[derive(Debug, Clone)]
pub struct Schedule {
    pub n: usize,
    pub model: ModelKind,
    /// Target evolution time T.
    pub t_target: f64,
    pub blocks: Vec<ScheduleBlock>,
}

impl Schedule {
    /// Total analog time Σ t_k.
    pub fn total_time(&self) -> f64 {
        self.blocks.iter().map(|b| b.time).sum()
    }

    pub fn read_json(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: ScheduleFile = serde_json::from_str(&text)?;
        Ok(Schedule {
            n: file.n,
            model: file.model,
            t_target: file.t_target,
            blocks: file.blocks,
        })
    }

    pub fn write_json(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(&self.to_file())? + "\n")?;
        Ok(())
    }

    pub fn to_file(&self) -> ScheduleFile {
        ScheduleFile {
            n: self.n,
            model: self.model,
            t_target: self.t_target,
            total_time: self.total_time(),
            blocks: self.blocks.clone(),
        }
    }
}

/// On-disk schedule: `{n, model, T, total_time, blocks: [{layer, time}]}`.
/// `total_time` is informational and recomputed from the blocks on load.
#[derive(Debug, Serialize, Deserialize)]
pub struct ScheduleFile {
    pub n: usize,
    pub model: ModelKind,
    #[serde(rename = "T")]
    pub t_target: f64,
    pub total_time: f64,
    pub blocks: Vec<ScheduleBlock>,
}

/// The four time bounds evaluated on one problem vector (T already folded
/// into b), plus the solved total when available.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundsReport {
    /// ‖b‖_∞ — no schedule can beat the largest single coupling ratio.
    pub lower: f64,
    /// √3·‖b‖₂ — the tight upper bound.
    pub upper: f64,
    /// 2·‖b‖₁ — the earlier, looser bound this pipeline improves on.
    pub legacy: f64,
    /// ‖b‖_∞ · (n for odd n, n−1 for even n) — the conjectured bound kept
    /// as a comparator.
    pub conjecture: f64,
    pub achieved: Option<f64>,
}

/// Evaluate the bound formulas on b's norms.
pub fn bounds_report(b: &ProblemVector) -> BoundsReport {
    let (l1, l2, linf) = norms(b);
    let parity_factor = if b.n % 2 == 1 { b.n } else { b.n - 1 } as f64;
    BoundsReport {
        lower: linf,
        upper: 3.0_f64.sqrt() * l2,
        legacy: 2.0 * l1,
        conjecture: linf * parity_factor,
        achieved: None,
    }
}

/// Compile a minimal-total-time schedule realizing e^{−iT H_P} with H_S.
pub fn compile(
    hp: &TwoBodyHamiltonian,
    hs: &TwoBodyHamiltonian,
    t_target: f64,
) -> Result<Schedule> {
    compile_with_cap(hp, hs, t_target, DEFAULT_COLUMN_CAP)
}

pub fn compile_with_cap(
    hp: &TwoBodyHamiltonian,
    hs: &TwoBodyHamiltonian,
    t_target: f64,
    column_cap: usize,
) -> Result<Schedule> {
    let b = build_problem_vector(hp, hs, t_target)?;
    let full = build_sign_matrix_with_cap(b.n, b.model, column_cap)?;
    let m = if b.index == full.index {
        full
    } else {
        restrict_rows(&full, &b.index)?
    };
    let sol = solve_min_time(&m, &b)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::NumericalFailure(format!(
            "solver returned {:?} on a problem that must be feasible",
            sol.status
        )));
    }
    let schedule = Schedule {
        n: b.n,
        model: b.model,
        t_target,
        blocks: sol
            .support
            .iter()
            .map(|&k| ScheduleBlock {
                layer: m.layers[k].clone(),
                time: sol.t[k],
            })
            .collect(),
    };

    let report = verify_couplings(&schedule, hs, hp, 1e-8)?;
    if !report.all_pass() {
        return Err(Error::NumericalFailure(format!(
            "compiled schedule failed the independent coupling check: {:?}",
            report.coupling
        )));
    }
    let upper = bounds_report(&b).upper;
    if schedule.total_time() > upper + 1e-6 {
        return Err(Error::NumericalFailure(format!(
            "total time {} exceeds the guaranteed bound {upper}",
            schedule.total_time()
        )));
    }
    Ok(schedule)
}

/// The four sign patterns that saturate the bound on any 3-coupling support.
pub const WORST_SIGN_PATTERNS: [[i8; 3]; 4] =
    [[-1, -1, -1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]];

/// The six axis triples on one qubit pair whose facet centers saturate the
/// bound in the general model.
pub const WORST_AXIS_TRIPLES: [[(PauliAxis, PauliAxis); 3]; 6] = {
    use PauliAxis::{X, Y, Z};
    [
        [(X, X), (Y, Y), (Z, Z)],
        [(X, X), (Y, Z), (Z, Y)],
        [(Y, Y), (X, Z), (Z, X)],
        [(Z, Z), (X, Y), (Y, X)],
        [(X, Y), (Y, Z), (Z, X)],
        [(X, Z), (Z, Y), (Y, X)],
    ]
};

/// Support of a worst-case problem: a qubit triangle (ZZ) or a qubit pair
/// with one of the six axis triples (general).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WorstCaseSupport {
    Triangle(usize, usize, usize),
    PairTriple {
        i: usize,
        j: usize,
        triple: [(PauliAxis, PauliAxis); 3],
    },
}

/// Build the 3-sparse problem vector ±α on the chosen support. Solving it
/// yields total time 3α = √3·‖b‖₂.
pub fn worst_case_problem(
    n: usize,
    model: ModelKind,
    support: WorstCaseSupport,
    signs: [i8; 3],
    alpha: f64,
) -> Result<ProblemVector> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "scale must be a positive real, got {alpha}"
        )));
    }
    if !WORST_SIGN_PATTERNS.contains(&signs) {
        return Err(Error::InvalidInput(format!(
            "sign pattern {signs:?} is not one of the four saturating patterns"
        )));
    }
    let keys: [CouplingKey; 3] = match (model, support) {
        (ModelKind::Zz, WorstCaseSupport::Triangle(a, b, c)) => {
            let mut q = [a, b, c];
            q.sort_unstable();
            if q[0] < 1 || q[2] > n || q[0] == q[1] || q[1] == q[2] {
                return Err(Error::InvalidInput(format!(
                    "triangle ({a}, {b}, {c}) needs three distinct qubits in 1..={n}"
                )));
            }
            [
                CouplingKey::zz(q[0], q[1]),
                CouplingKey::zz(q[0], q[2]),
                CouplingKey::zz(q[1], q[2]),
            ]
        }
        (ModelKind::General, WorstCaseSupport::PairTriple { i, j, triple }) => {
            if !(1 <= i && i < j && j <= n) {
                return Err(Error::InvalidInput(format!(
                    "pair ({i}, {j}) needs 1 <= i < j <= {n}"
                )));
            }
            if !WORST_AXIS_TRIPLES.contains(&triple) {
                return Err(Error::InvalidInput(format!(
                    "{triple:?} is not one of the six saturating axis triples"
                )));
            }
            [
                CouplingKey::new(i, j, triple[0].0, triple[0].1),
                CouplingKey::new(i, j, triple[1].0, triple[1].1),
                CouplingKey::new(i, j, triple[2].0, triple[2].1),
            ]
        }
        (ModelKind::Zz, WorstCaseSupport::PairTriple { .. }) => {
            return Err(Error::WrongModel(
                "axis-triple supports only exist in the general model".into(),
            ))
        }
        (ModelKind::General, WorstCaseSupport::Triangle(..)) => {
            return Err(Error::WrongModel(
                "use a pair-with-axis-triple support in the general model".into(),
            ))
        }
    };

    let index = coupling_index(n, model)?;
    let mut values = vec![0.0; index.len()];
    for (key, &sign) in keys.iter().zip(&signs) {
        let pos = index
            .iter()
            .position(|k| k == key)
            .expect("validated keys are canonical");
        values[pos] = (sign as f64) * alpha;
    }
    ProblemVector::dense(n, model, values, 1.0)
}

/// All 4·C(n,3) ZZ worst directions at scale α = 1, triangles in
/// lexicographic order and sign patterns in their listed order.
pub fn enumerate_worst_directions(n: usize, model: ModelKind) -> Result<Vec<ProblemVector>> {
    enumerate_worst_directions_with_cap(n, model, DEFAULT_WORST_CAP)
}

pub fn enumerate_worst_directions_with_cap(
    n: usize,
    model: ModelKind,
    n_cap: usize,
) -> Result<Vec<ProblemVector>> {
    if model != ModelKind::Zz {
        return Err(Error::WrongModel(
            "worst-direction enumeration is defined for the zz model".into(),
        ));
    }
    if n < 3 {
        return Err(Error::InvalidSize { n });
    }
    if n > n_cap {
        return Err(Error::CapExceeded(format!(
            "n = {n} exceeds the worst-direction cap {n_cap}"
        )));
    }
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                for signs in WORST_SIGN_PATTERNS {
                    out.push(worst_case_problem(
                        n,
                        model,
                        WorstCaseSupport::Triangle(i, j, k),
                        signs,
                        1.0,
                    )?);
                }
            }
        }
    }
    Ok(out)
}

/// One observation from the conjecture comparison.
#[derive(Debug, Clone, Serialize)]
pub struct GapRecord {
    /// Where the problem came from (worst-case family or sampled distribution).
    pub source: String,
    pub achieved: f64,
    pub conjecture_bound: f64,
    /// achieved / conjecture_bound; above 1 means the conjectured bound is
    /// exceeded.
    pub ratio: f64,
    pub violation: bool,
}

/// Solve deterministic worst-case problems plus seeded random samples and
/// report each achieved total against the conjectured bound. Violations are
/// flagged, never asserted.
pub fn conjecture_gap_search(
    n: usize,
    model: ModelKind,
    samples: usize,
    seed: u64,
) -> Result<Vec<GapRecord>> {
    let m = build_sign_matrix_with_cap(n, model, DEFAULT_COLUMN_CAP)?;
    let d = m.nrows();
    let parity_factor = if n % 2 == 1 { n } else { n - 1 } as f64;

    let mut problems: Vec<(String, ProblemVector)> = Vec::new();
    match model {
        ModelKind::Zz => {
            if n >= 3 && n <= DEFAULT_WORST_CAP {
                for (t, b) in enumerate_worst_directions(n, model)?.into_iter().enumerate() {
                    problems.push((format!("worst_direction[{t}]"), b));
                }
            }
        }
        ModelKind::General => {
            for (t, triple) in WORST_AXIS_TRIPLES.iter().enumerate() {
                for (p, signs) in WORST_SIGN_PATTERNS.iter().enumerate() {
                    problems.push((
                        format!("worst_triple[{t}][{p}]"),
                        worst_case_problem(
                            n,
                            model,
                            WorstCaseSupport::PairTriple {
                                i: 1,
                                j: 2,
                                triple: *triple,
                            },
                            *signs,
                            1.0,
                        )?,
                    ));
                }
            }
        }
    }
    let radius = (d as f64).sqrt();
    for kind in [
        DistributionKind::UniformSphere,
        DistributionKind::AxesPerturbed,
        DistributionKind::SparseAxes,
    ] {
        let dist = Distribution::new(kind, radius);
        for k in 0..samples {
            let values = sample_values(&dist, d, seed, n, k);
            problems.push((
                format!("{kind}[{k}]"),
                ProblemVector::dense(n, model, values, 1.0)?,
            ));
        }
    }

    let mut out = Vec::with_capacity(problems.len());
    for (source, b) in problems {
        let sol = solve_min_time(&m, &b)?;
        let (_, _, linf) = norms(&b);
        let conjecture_bound = linf * parity_factor;
        let ratio = sol.objective / conjecture_bound;
        out.push(GapRecord {
            source,
            achieved: sol.objective,
            conjecture_bound,
            ratio,
            violation: ratio > 1.0 + 1e-9,
        });
    }
    Ok(out)
}
