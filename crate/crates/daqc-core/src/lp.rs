//! Minimal-total-time solves: min ‖t‖₁ subject to M t = b, t ≥ 0.
//!
//! Because every column of M is a ±1 vector, the problem is always feasible
//! and bounded, and the optimum is attained at a basic solution with at most
//! d nonzero block times. The solver is a dense two-phase revised simplex;
//! [`enumerate_basic_solutions`] is an independent brute-force oracle used to
//! cross-check it.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hamiltonian::ProblemVector;
use crate::signs::SignMatrix;

/// Pivot elements smaller than this are treated as zero.
const PIVOT_TOL: f64 = 1e-10;
/// Optimality (reduced cost) and feasibility tolerance.
const OPT_TOL: f64 = 1e-9;
/// Consecutive non-improving pivots before switching to Bland's rule.
const STALL_LIMIT: usize = 50;
/// Pivots between basis refactorizations.
const REFRESH_EVERY: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    /// Defensive: cannot occur for full-row-rank sign matrices, whose
    /// column polytopes contain the origin.
    Infeasible,
    NumericalFailure,
}

/// Result of one min-time solve.
#[derive(Debug, Clone)]
pub struct LpSolution {
    /// Per-column block times, length d'.
    pub t: Vec<f64>,
    /// Σ t_k, the total analog time.
    pub objective: f64,
    /// Columns with t_k above the support tolerance; at most d entries.
    pub support: Vec<usize>,
    pub status: LpStatus,
    /// ‖M t − b‖_∞ against the original system.
    pub residual: f64,
}

/// Solve min Σ t_k subject to M t = b, t ≥ 0.
///
/// The optimum is certified by nonnegative reduced costs after a fresh basis
/// refactorization; ties in the entering rule break to the lowest column
/// index so schedules are reproducible.
pub fn solve_min_time(m: &SignMatrix, b: &ProblemVector) -> Result<LpSolution> {
    if b.index != m.index {
        return Err(Error::DimensionMismatch(format!(
            "problem has {} couplings, matrix has {} (or ordering differs)",
            b.index.len(),
            m.index.len()
        )));
    }
    solve_min_time_raw(m, &b.values)
}

pub(crate) fn solve_min_time_raw(m: &SignMatrix, b: &[f64]) -> Result<LpSolution> {
    let d = m.nrows();
    let ncols = m.ncols();
    if b.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "rhs has {} entries, matrix has {d} rows",
            b.len()
        )));
    }

    let b_scale = b.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    if b_scale == 0.0 {
        return Ok(LpSolution {
            t: vec![0.0; ncols],
            objective: 0.0,
            support: Vec::new(),
            status: LpStatus::Optimal,
            residual: 0.0,
        });
    }

    let mut simplex = Simplex::new(m, b);
    let status = simplex.run()?;
    if status == LpStatus::Infeasible {
        return Ok(LpSolution {
            t: Vec::new(),
            objective: f64::NAN,
            support: Vec::new(),
            status,
            residual: f64::NAN,
        });
    }

    let mut t = vec![0.0; ncols];
    for (i, &col) in simplex.basis.iter().enumerate() {
        if col < ncols {
            t[col] = simplex.x_b[i].max(0.0);
        }
    }
    let objective: f64 = t.iter().sum();

    // Residual against the original, unflipped system.
    let mut residual = 0.0_f64;
    for r in 0..d {
        let row = m.row(r);
        let mut acc = 0.0;
        for (k, &s) in row.iter().enumerate() {
            if t[k] != 0.0 {
                acc += (s as f64) * t[k];
            }
        }
        residual = residual.max((acc - b[r]).abs());
    }
    if residual > 1e-8 * b_scale.max(1.0) {
        return Err(Error::NumericalFailure(format!(
            "solution residual {residual:.3e} exceeds tolerance"
        )));
    }

    let t_max = t.iter().fold(0.0_f64, |a, &v| a.max(v));
    let support: Vec<usize> = (0..ncols)
        .filter(|&k| t[k] > OPT_TOL * t_max.max(1.0))
        .collect();

    Ok(LpSolution {
        t,
        objective,
        support,
        status: LpStatus::Optimal,
        residual,
    })
}

struct Simplex {
    d: usize,
    ncols: usize,
    /// Column-major real columns after row flips, d × ncols.
    cols: Vec<f64>,
    /// Right-hand side after row flips; nonnegative.
    rhs: Vec<f64>,
    rhs_scale: f64,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    /// Dense basis inverse, row-major d × d.
    binv: Vec<f64>,
    x_b: Vec<f64>,
    pivots: usize,
    pivot_cap: usize,
    bland: bool,
    stall: usize,
    last_obj: f64,
}

impl Simplex {
    fn new(m: &SignMatrix, b: &[f64]) -> Self {
        let d = m.nrows();
        let ncols = m.ncols();
        let flip: Vec<f64> = b.iter().map(|&v| if v < 0.0 { -1.0 } else { 1.0 }).collect();
        let mut cols = vec![0.0; d * ncols];
        for k in 0..ncols {
            for r in 0..d {
                cols[k * d + r] = flip[r] * (m.entry(r, k) as f64);
            }
        }
        let rhs: Vec<f64> = b.iter().zip(&flip).map(|(v, f)| v * f).collect();
        let rhs_scale = rhs.iter().fold(1.0_f64, |a, &v| a.max(v));
        let mut binv = vec![0.0; d * d];
        for i in 0..d {
            binv[i * d + i] = 1.0;
        }
        // Artificial variables occupy indices ncols..ncols+d.
        let basis: Vec<usize> = (0..d).map(|i| ncols + i).collect();
        let in_basis = vec![false; ncols];
        let x_b = rhs.clone();
        let pivot_cap = 200 * (d + ncols) + 1000;
        Simplex {
            d,
            ncols,
            cols,
            rhs,
            rhs_scale,
            basis,
            in_basis,
            binv,
            x_b,
            pivots: 0,
            pivot_cap,
            bland: false,
            stall: 0,
            last_obj: f64::INFINITY,
        }
    }

    fn col(&self, j: usize) -> &[f64] {
        &self.cols[j * self.d..(j + 1) * self.d]
    }

    /// Cost of variable `j` in the given phase.
    fn cost(&self, j: usize, phase1: bool) -> f64 {
        if phase1 {
            if j >= self.ncols {
                1.0
            } else {
                0.0
            }
        } else {
            1.0 // only real columns are priced in phase 2
        }
    }

    fn run(&mut self) -> Result<LpStatus> {
        self.iterate(true)?;
        let phase1_obj: f64 = self
            .basis
            .iter()
            .zip(&self.x_b)
            .filter(|(&j, _)| j >= self.ncols)
            .map(|(_, &x)| x)
            .sum();
        if phase1_obj > OPT_TOL * self.rhs_scale {
            return Ok(LpStatus::Infeasible);
        }
        self.drive_out_artificials()?;
        self.bland = false;
        self.stall = 0;
        self.last_obj = f64::INFINITY;
        self.iterate(false)?;
        Ok(LpStatus::Optimal)
    }

    fn iterate(&mut self, phase1: bool) -> Result<()> {
        let mut resumes = 0;
        loop {
            let entering = self.price(phase1);
            match entering {
                Some(j) => self.pivot(j, phase1)?,
                None => {
                    // Certify on a freshly refactorized basis; resume if the
                    // accumulated inverse had drifted.
                    self.refactorize()?;
                    if self.price(phase1).is_none() {
                        return Ok(());
                    }
                    resumes += 1;
                    if resumes > 3 {
                        return Err(Error::NumericalFailure(
                            "optimality certification kept failing after refactorization".into(),
                        ));
                    }
                }
            }
        }
    }

    /// Reduced-cost pricing. Returns the entering column or None at optimum.
    fn price(&self, phase1: bool) -> Option<usize> {
        let mut y = vec![0.0; self.d];
        for (i, &j) in self.basis.iter().enumerate() {
            let c = self.cost(j, phase1);
            if c != 0.0 {
                for k in 0..self.d {
                    y[k] += c * self.binv[i * self.d + k];
                }
            }
        }
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.ncols {
            if self.in_basis[j] {
                continue;
            }
            let col = self.col(j);
            let mut dot = 0.0;
            for k in 0..self.d {
                dot += y[k] * col[k];
            }
            let r = self.cost(j, phase1) - dot;
            if r < -OPT_TOL {
                if self.bland {
                    return Some(j); // lowest index wins outright
                }
                match best {
                    Some((_, r_best)) if r >= r_best => {}
                    _ => best = Some((j, r)),
                }
            }
        }
        best.map(|(j, _)| j)
    }

    fn pivot(&mut self, entering: usize, phase1: bool) -> Result<()> {
        self.pivots += 1;
        if self.pivots > self.pivot_cap {
            return Err(Error::NumericalFailure(format!(
                "pivot cap {} exhausted",
                self.pivot_cap
            )));
        }
        if self.pivots % REFRESH_EVERY == 0 {
            self.refactorize()?;
        }

        // w = B⁻¹ a_e
        let col = self.col(entering).to_vec();
        let mut w = vec![0.0; self.d];
        for i in 0..self.d {
            let mut acc = 0.0;
            for k in 0..self.d {
                acc += self.binv[i * self.d + k] * col[k];
            }
            w[i] = acc;
        }

        // Ratio test; ties break to the smallest leaving variable index.
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..self.d {
            if w[i] > PIVOT_TOL {
                let ratio = self.x_b[i].max(0.0) / w[i];
                match leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - PIVOT_TOL
                            || (ratio < lr + PIVOT_TOL && self.basis[i] < self.basis[li])
                        {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let (p, theta) = leave.ok_or_else(|| {
            Error::NumericalFailure("unbounded direction in a bounded problem".into())
        })?;

        self.apply_pivot(p, entering, theta, &w);

        // Stall detection: engage Bland's rule to break potential cycles.
        let obj: f64 = self
            .basis
            .iter()
            .zip(&self.x_b)
            .map(|(&j, &x)| self.cost(j, phase1) * x)
            .sum();
        if obj < self.last_obj - 1e-12 * (1.0 + obj.abs()) {
            self.stall = 0;
            self.bland = false;
        } else {
            self.stall += 1;
            if self.stall >= STALL_LIMIT {
                self.bland = true;
            }
        }
        self.last_obj = obj;
        Ok(())
    }

    fn apply_pivot(&mut self, p: usize, entering: usize, theta: f64, w: &[f64]) {
        let leaving = self.basis[p];
        if leaving < self.ncols {
            self.in_basis[leaving] = false;
        }
        self.basis[p] = entering;
        self.in_basis[entering] = true;

        let wp = w[p];
        for k in 0..self.d {
            self.binv[p * self.d + k] /= wp;
        }
        for i in 0..self.d {
            if i != p && w[i] != 0.0 {
                let f = w[i];
                for k in 0..self.d {
                    self.binv[i * self.d + k] -= f * self.binv[p * self.d + k];
                }
            }
        }
        for i in 0..self.d {
            if i == p {
                self.x_b[i] = theta;
            } else {
                self.x_b[i] -= theta * w[i];
                if self.x_b[i] < 0.0 && self.x_b[i] > -OPT_TOL * self.rhs_scale {
                    self.x_b[i] = 0.0;
                }
            }
        }
    }

    /// Replace basic artificials (necessarily at zero level) with real
    /// columns so phase 2 prices a purely real basis.
    fn drive_out_artificials(&mut self) -> Result<()> {
        for p in 0..self.d {
            if self.basis[p] < self.ncols {
                continue;
            }
            let row: Vec<f64> = self.binv[p * self.d..(p + 1) * self.d].to_vec();
            let mut found = None;
            for j in 0..self.ncols {
                if self.in_basis[j] {
                    continue;
                }
                let col = self.col(j);
                let mut v = 0.0;
                for k in 0..self.d {
                    v += row[k] * col[k];
                }
                if v.abs() > PIVOT_TOL {
                    found = Some(j);
                    break;
                }
            }
            let j = found.ok_or_else(|| {
                Error::NumericalFailure(
                    "could not drive an artificial variable out of the basis".into(),
                )
            })?;
            let col = self.col(j).to_vec();
            let mut w = vec![0.0; self.d];
            for i in 0..self.d {
                let mut acc = 0.0;
                for k in 0..self.d {
                    acc += self.binv[i * self.d + k] * col[k];
                }
                w[i] = acc;
            }
            let theta = self.x_b[p].max(0.0) / w[p];
            self.apply_pivot(p, j, theta, &w);
        }
        Ok(())
    }

    /// Rebuild B⁻¹ and x_B from scratch (Gauss–Jordan with partial pivoting).
    fn refactorize(&mut self) -> Result<()> {
        let d = self.d;
        let mut a = vec![0.0; d * d]; // basis matrix, row-major
        for (bi, &j) in self.basis.iter().enumerate() {
            if j < self.ncols {
                let col = self.col(j);
                for r in 0..d {
                    a[r * d + bi] = col[r];
                }
            } else {
                a[(j - self.ncols) * d + bi] = 1.0;
            }
        }
        let mut inv = vec![0.0; d * d];
        for i in 0..d {
            inv[i * d + i] = 1.0;
        }
        for c in 0..d {
            let mut p = c;
            for r in (c + 1)..d {
                if a[r * d + c].abs() > a[p * d + c].abs() {
                    p = r;
                }
            }
            if a[p * d + c].abs() < PIVOT_TOL {
                return Err(Error::NumericalFailure("singular basis".into()));
            }
            if p != c {
                for k in 0..d {
                    a.swap(c * d + k, p * d + k);
                    inv.swap(c * d + k, p * d + k);
                }
            }
            let piv = a[c * d + c];
            for k in 0..d {
                a[c * d + k] /= piv;
                inv[c * d + k] /= piv;
            }
            for r in 0..d {
                if r != c && a[r * d + c] != 0.0 {
                    let f = a[r * d + c];
                    for k in 0..d {
                        a[r * d + k] -= f * a[c * d + k];
                        inv[r * d + k] -= f * inv[c * d + k];
                    }
                }
            }
        }
        self.binv = inv;
        for i in 0..d {
            let mut acc = 0.0;
            for k in 0..d {
                acc += self.binv[i * d + k] * self.rhs[k];
            }
            self.x_b[i] = if acc < 0.0 && acc > -OPT_TOL * self.rhs_scale {
                0.0
            } else {
                acc
            };
        }
        Ok(())
    }
}

/// Exact minimum of Σ t over all feasible nonnegative basic solutions,
/// found by solving every d×d column subsystem.
///
/// Deliberately shares no code with the simplex path: square systems are
/// solved by plain Gaussian elimination here.
pub fn enumerate_basic_solutions(m: &SignMatrix, b: &ProblemVector, cap: usize) -> Result<f64> {
    if b.index != m.index {
        return Err(Error::DimensionMismatch(
            "problem and matrix coupling indices differ".into(),
        ));
    }
    let d = m.nrows();
    let k = m.ncols();
    let combos = binomial(k, d);
    if combos > cap as u128 {
        return Err(Error::CapExceeded(format!(
            "C({k}, {d}) = {combos} basic solutions exceeds cap {cap}"
        )));
    }

    let b_scale = b.values.iter().fold(1.0_f64, |a, &v| a.max(v.abs()));
    let mut best: Option<f64> = None;
    for combo in (0..k).combinations(d) {
        let mut a = vec![0.0_f64; d * d];
        for (c, &col) in combo.iter().enumerate() {
            for r in 0..d {
                a[r * d + c] = m.entry(r, col) as f64;
            }
        }
        let mut x = b.values.clone();
        if solve_square(&mut a, &mut x, d).is_none() {
            continue;
        }
        if x.iter().all(|&v| v >= -1e-9 * b_scale) {
            let obj: f64 = x.iter().map(|&v| v.max(0.0)).sum();
            best = Some(match best {
                Some(cur) => cur.min(obj),
                None => obj,
            });
        }
    }
    best.ok_or_else(|| Error::NumericalFailure("no feasible basic solution found".into()))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// In-place Gaussian elimination with partial pivoting; `None` if singular.
fn solve_square(a: &mut [f64], b: &mut [f64], d: usize) -> Option<()> {
    for c in 0..d {
        let mut p = c;
        for r in (c + 1)..d {
            if a[r * d + c].abs() > a[p * d + c].abs() {
                p = r;
            }
        }
        if a[p * d + c].abs() < 1e-9 {
            return None;
        }
        if p != c {
            for k in c..d {
                a.swap(c * d + k, p * d + k);
            }
            b.swap(c, p);
        }
        for r in (c + 1)..d {
            let f = a[r * d + c] / a[c * d + c];
            if f != 0.0 {
                for k in c..d {
                    a[r * d + k] -= f * a[c * d + k];
                }
                b[r] -= f * b[c];
            }
        }
    }
    for c in (0..d).rev() {
        let mut acc = b[c];
        for k in (c + 1)..d {
            acc -= a[c * d + k] * b[k];
        }
        b[c] = acc / a[c * d + c];
    }
    Some(())
}
