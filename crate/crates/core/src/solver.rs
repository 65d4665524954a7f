//! Linear quantile regression solved exactly as a linear program.
//!
//! The fit minimizes `tau * sum(u) + (1 - tau) * sum(v)` subject to
//! `X beta + u - v = y`, `u, v >= 0`, `beta` free. Every basic solution
//! interpolates `p` observations (the basis rows), so the simplex is run on a
//! reduced representation: the basis rows `h`, the inverse `B = X_h^-1`, the
//! product `G = X B` and a sign label per non-basis row telling whether its
//! `u` or its `v` is the basic variable.
//!
//! Each iteration prices the `2p` edges leaving the current vertex (one per
//! basis row and direction) and, along the chosen edge, performs an exact line
//! search over the residual breakpoints, passing through breakpoints while the
//! directional derivative stays negative. Runs of degenerate pivots switch to
//! Bland's rule with an ordinary ratio test, which cannot cycle.

use std::fmt;
use std::str::FromStr;

use crate::dataset::SupervisedSet;
use crate::error::{Error, Result};
use crate::linalg::{dot, HouseholderQr, Lu, Matrix};
use crate::metrics::PriceTags;

/// Quantile level, strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tau(f64);

impl Tau {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value < 1.0 {
            Ok(Tau(value))
        } else {
            Err(Error::InvalidTau(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `tau = p_plus / (p_plus + p_minus)`.
pub fn tau_from_prices(prices: PriceTags) -> Result<Tau> {
    if !(prices.p_plus() > 0.0 && prices.p_minus() > 0.0) {
        return Err(Error::NonPositivePrice {
            p_plus: prices.p_plus(),
            p_minus: prices.p_minus(),
        });
    }
    Tau::new(prices.p_plus() / prices.total())
}

/// Which optimal vertex is reported when the optimum is not unique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// The first optimal vertex reached by the deterministic pivot sequence
    /// starting from the lowest-index well-conditioned basis.
    #[default]
    LowestVertex,
}

impl TieBreak {
    pub fn label(self) -> &'static str {
        match self {
            TieBreak::LowestVertex => "lowest-vertex",
        }
    }
}

impl FromStr for TieBreak {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lowest-vertex" => Ok(TieBreak::LowestVertex),
            other => Err(Error::InvalidArgument(format!("unknown tie-break rule `{}`", other))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub feasibility_tolerance: f64,
    /// `None` means `100 * (N + p)`.
    pub max_pivots: Option<usize>,
    pub tie_break: TieBreak,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            feasibility_tolerance: 1e-9,
            max_pivots: None,
            tie_break: TieBreak::LowestVertex,
        }
    }
}

impl SolverOptions {
    fn validate(&self) -> Result<()> {
        if !(self.feasibility_tolerance > 0.0 && self.feasibility_tolerance.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "feasibility tolerance must be positive, got {}",
                self.feasibility_tolerance
            )));
        }
        if self.max_pivots == Some(0) {
            return Err(Error::InvalidArgument("max_pivots must be positive".into()));
        }
        Ok(())
    }

    pub fn pivot_limit(&self, n: usize, p: usize) -> usize {
        self.max_pivots.unwrap_or(100 * (n + p))
    }
}

/// Fitted linear quantile model.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantileModel {
    pub coefficients: Vec<f64>,
    pub tau: Tau,
    pub feature_names: Vec<String>,
    /// Minimized pinball total over the training rows.
    pub objective_value: f64,
    pub options: SolverOptions,
    /// Simplex pivots spent on the fit.
    pub pivots: usize,
}

impl QuantileModel {
    pub fn predict(&self, design: &Matrix) -> Result<Vec<f64>> {
        predict(&self.coefficients, design)
    }
}

/// `tau * sum of positive residuals + (1 - tau) * sum of |negative residuals|`.
pub fn pinball_sum(residuals: &[f64], tau: Tau) -> f64 {
    let (mut pos, mut neg) = (0.0, 0.0);
    for &r in residuals {
        if r > 0.0 {
            pos += r;
        } else if r < 0.0 {
            neg -= r;
        }
    }
    tau.0 * pos + (1.0 - tau.0) * neg
}

/// Pinball total of `targets - design * beta`.
pub fn pinball_objective(targets: &[f64], design: &Matrix, beta: &[f64], tau: Tau) -> Result<f64> {
    if design.rows() != targets.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} targets for {} design rows",
            targets.len(),
            design.rows()
        )));
    }
    let fitted = design.mul_vec(beta)?;
    if !fitted.iter().chain(targets).all(|v| v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite value in pinball objective".into()));
    }
    let resid: Vec<f64> = targets.iter().zip(&fitted).map(|(y, f)| y - f).collect();
    Ok(pinball_sum(&resid, tau))
}

/// Row-wise inner products `design * coefficients`.
pub fn predict(coefficients: &[f64], design: &Matrix) -> Result<Vec<f64>> {
    design.mul_vec(coefficients)
}

/// Fits the `tau` quantile of the targets as a linear function of the design.
pub fn fit_quantile(set: &SupervisedSet, tau: Tau, options: &SolverOptions) -> Result<QuantileModel> {
    options.validate()?;
    let x = set.design();
    let y = set.targets();
    let (n, p) = (x.rows(), x.cols());
    if n == 0 || p == 0 {
        return Err(Error::InvalidArgument(format!(
            "need at least one row and one feature, got {}x{}",
            n, p
        )));
    }
    HouseholderQr::new(x, set.feature_names())?;

    let mut simplex = Simplex::new(x, y, tau.0, options)?;
    let pivots = simplex.run(options.pivot_limit(n, p))?;
    let coefficients = simplex.beta;
    let objective_value = pinball_objective(y, x, &coefficients, tau)?;
    if !objective_value.is_finite() {
        return Err(Error::Numerical("objective is not finite".into()));
    }
    Ok(QuantileModel {
        coefficients,
        tau,
        feature_names: set.feature_names().to_vec(),
        objective_value,
        options: *options,
        pivots,
    })
}

/// Pivots between refactorizations of the basis.
const REFACTOR_EVERY: usize = 50;

/// Consecutive degenerate pivots before Bland's rule takes over.
fn bland_threshold(p: usize) -> usize {
    2 * p + 8
}

#[derive(Debug, Clone, Copy)]
struct Edge {
    slot: usize,
    // +1 raises x_k' beta above y_k (residual goes negative), -1 lowers it
    sign: f64,
}

struct Simplex<'a> {
    x: &'a Matrix,
    y: &'a [f64],
    tau: f64,
    n: usize,
    p: usize,
    /// Residuals within this distance of zero count as zero.
    zero_tol: f64,
    opt_tol: f64,
    bland_after: usize,
    basis: Vec<usize>,
    slot_of: Vec<Option<usize>>,
    binv: Matrix,
    g: Matrix,
    beta: Vec<f64>,
    resid: Vec<f64>,
    positive: Vec<bool>,
}

impl<'a> Simplex<'a> {
    fn new(x: &'a Matrix, y: &'a [f64], tau: f64, options: &SolverOptions) -> Result<Self> {
        let (n, p) = (x.rows(), x.cols());
        let yscale = y.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let basis = initial_basis(x)?;
        let mut slot_of = vec![None; n];
        for (k, &i) in basis.iter().enumerate() {
            slot_of[i] = Some(k);
        }
        let mut s = Simplex {
            x,
            y,
            tau,
            n,
            p,
            zero_tol: options.feasibility_tolerance * yscale,
            opt_tol: options.feasibility_tolerance,
            bland_after: bland_threshold(p),
            basis,
            slot_of,
            binv: Matrix::zeros(p, p),
            g: Matrix::zeros(n, p),
            beta: vec![0.0; p],
            resid: vec![0.0; n],
            positive: vec![true; n],
        };
        s.refactor(true)?;
        Ok(s)
    }

    /// Recomputes the basis inverse, `G`, `beta` and residuals from scratch.
    fn refactor(&mut self, relabel_all: bool) -> Result<()> {
        let p = self.p;
        let rows: Vec<&[f64]> = self.basis.iter().map(|&i| self.x.row(i)).collect();
        let xh = Matrix::from_rows(&rows)?;
        let lu = Lu::new(&xh, 1e-14)
            .ok_or_else(|| Error::Numerical("basis matrix became singular".into()))?;
        self.binv = lu.inverse();
        let yh: Vec<f64> = self.basis.iter().map(|&i| self.y[i]).collect();
        self.beta = lu.solve(&yh);
        for i in 0..self.n {
            let xi = self.x.row(i);
            let gi = self.g.row_mut(i);
            for (k, gk) in gi.iter_mut().enumerate() {
                *gk = (0..p).map(|j| xi[j] * self.binv.get(j, k)).sum();
            }
            let r = self.y[i] - dot(xi, &self.beta);
            if self.slot_of[i].is_some() {
                self.resid[i] = 0.0;
                continue;
            }
            self.resid[i] = r;
            if relabel_all {
                self.positive[i] = r >= 0.0;
            } else if r > self.zero_tol {
                self.positive[i] = true;
            } else if r < -self.zero_tol {
                self.positive[i] = false;
            }
        }
        Ok(())
    }

    fn weight(&self, i: usize) -> f64 {
        if self.positive[i] {
            -self.tau
        } else {
            1.0 - self.tau
        }
    }

    /// Directional derivatives of the objective along every edge, with the
    /// scale used to judge them against the optimality tolerance.
    fn reduced_costs(&self) -> Vec<(Edge, f64, f64)> {
        let p = self.p;
        let mut s = vec![0.0; p];
        let mut scale = vec![1.0; p];
        for i in 0..self.n {
            if self.slot_of[i].is_some() {
                continue;
            }
            let w = self.weight(i);
            for (k, &gk) in self.g.row(i).iter().enumerate() {
                s[k] += w * gk;
                scale[k] += gk.abs();
            }
        }
        let mut out = Vec::with_capacity(2 * p);
        for k in 0..p {
            out.push((Edge { slot: k, sign: 1.0 }, (1.0 - self.tau) + s[k], scale[k]));
            out.push((Edge { slot: k, sign: -1.0 }, self.tau - s[k], scale[k]));
        }
        out
    }

    /// LP column index of the variable that enters when moving along `e`.
    fn entering_index(&self, e: Edge) -> usize {
        let row = self.basis[e.slot];
        if e.sign > 0.0 {
            self.n + row
        } else {
            row
        }
    }

    fn leaving_index(&self, i: usize) -> usize {
        if self.positive[i] {
            i
        } else {
            self.n + i
        }
    }

    fn choose_edge(&self, bland: bool) -> Option<(Edge, f64, f64)> {
        let candidates = self
            .reduced_costs()
            .into_iter()
            .filter(|&(_, d, scale)| d < -self.opt_tol * scale);
        if bland {
            candidates.min_by_key(|&(e, _, _)| self.entering_index(e))
        } else {
            // first most-negative wins ties
            candidates.fold(None, |best, cur| match best {
                Some((_, bd, _)) if bd <= cur.1 => best,
                _ => Some(cur),
            })
        }
    }

    /// Breakpoints `(t, row)` where a non-basis residual reaches zero along `e`.
    fn breakpoints(&self, e: Edge) -> Vec<(f64, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            if self.slot_of[i].is_some() {
                continue;
            }
            let gi = e.sign * self.g.get(i, e.slot);
            let hits = if self.positive[i] { gi > 0.0 } else { gi < 0.0 };
            if hits {
                out.push(((self.resid[i] / gi).max(0.0), i));
            }
        }
        out
    }

    /// Runs to optimality and returns the number of pivots.
    fn run(&mut self, limit: usize) -> Result<usize> {
        let mut pivots = 0;
        let mut since_refactor = 0;
        let mut degenerate_run = 0;
        loop {
            let bland = degenerate_run >= self.bland_after;
            let Some((edge, d0, slope_scale)) = self.choose_edge(bland) else {
                if since_refactor == 0 {
                    return Ok(pivots);
                }
                // confirm optimality on freshly computed quantities
                self.refactor(false)?;
                since_refactor = 0;
                continue;
            };
            if pivots >= limit {
                return Err(Error::PivotLimit { limit });
            }

            let mut bps = self.breakpoints(edge);
            let (leave, step, crossed) = if bland {
                let tmin = bps
                    .iter()
                    .map(|b| b.0)
                    .fold(f64::INFINITY, f64::min);
                if !tmin.is_finite() {
                    return Err(Error::Numerical("unbounded edge in quantile program".into()));
                }
                let tie = 1e-12 * (1.0 + tmin);
                let &(t, i) = bps
                    .iter()
                    .filter(|b| b.0 <= tmin + tie)
                    .min_by_key(|b| self.leaving_index(b.1))
                    .expect("at least one breakpoint attains the minimum");
                (i, t, Vec::new())
            } else {
                bps.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                let mut slope = d0;
                let mut stop = None;
                // stop at the first breakpoint where the slope is no longer
                // negative, up to rounding: the lowest vertex of a flat face
                let flat = self.opt_tol * slope_scale;
                for (pos, &(t, i)) in bps.iter().enumerate() {
                    slope += self.g.get(i, edge.slot).abs();
                    if slope >= -flat {
                        stop = Some((pos, t, i));
                        break;
                    }
                }
                let Some((pos, t, i)) = stop else {
                    return Err(Error::Numerical("unbounded edge in quantile program".into()));
                };
                let crossed: Vec<usize> = bps[..pos].iter().map(|b| b.1).collect();
                (i, t, crossed)
            };

            self.pivot(edge, leave, step, &crossed);
            pivots += 1;
            since_refactor += 1;
            if step <= self.zero_tol {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            if since_refactor >= REFACTOR_EVERY {
                self.refactor(false)?;
                since_refactor = 0;
            }
        }
    }

    fn pivot(&mut self, edge: Edge, leave: usize, step: f64, crossed: &[usize]) {
        let (p, k) = (self.p, edge.slot);
        let sign = edge.sign;

        for j in 0..p {
            self.beta[j] += step * sign * self.binv.get(j, k);
        }
        for i in 0..self.n {
            self.resid[i] -= step * sign * self.g.get(i, k);
        }
        for &i in crossed {
            self.positive[i] = !self.positive[i];
        }

        let old = self.basis[k];
        self.slot_of[old] = None;
        self.positive[old] = sign < 0.0;
        self.resid[old] = -sign * step;
        self.basis[k] = leave;
        self.slot_of[leave] = Some(k);
        self.resid[leave] = 0.0;

        // rank-one update replacing basis row `old` by row `leave`
        let piv = self.g.get(leave, k);
        let grow: Vec<f64> = self.g.row(leave).to_vec();
        let bk: Vec<f64> = (0..p).map(|j| self.binv.get(j, k)).collect();
        for r in 0..p {
            let b = bk[r];
            for j in 0..p {
                let v = if j == k {
                    b / piv
                } else {
                    self.binv.get(r, j) - b * grow[j] / piv
                };
                self.binv.set(r, j, v);
            }
        }
        for i in 0..self.n {
            let row = self.g.row_mut(i);
            let gik = row[k];
            if gik == 0.0 {
                continue;
            }
            for j in 0..p {
                if j == k {
                    row[j] = gik / piv;
                } else {
                    row[j] -= gik * grow[j] / piv;
                }
            }
        }
    }
}

/// Picks `p` rows forming a nonsingular square submatrix, by Gaussian
/// elimination with partial pivoting over rows (lowest index wins ties).
fn initial_basis(x: &Matrix) -> Result<Vec<usize>> {
    let (n, p) = (x.rows(), x.cols());
    let mut work = x.clone();
    let mut used = vec![false; n];
    let mut basis = Vec::with_capacity(p);
    for j in 0..p {
        let colmax = (0..n).fold(0.0f64, |m, i| m.max(x.get(i, j).abs()));
        let mut best: Option<(usize, f64)> = None;
        for (i, _) in used.iter().enumerate().filter(|(_, u)| !**u) {
            let v = work.get(i, j).abs();
            if best.map_or(true, |(_, bv)| v > bv) {
                best = Some((i, v));
            }
        }
        let (piv, pval) = best.ok_or(Error::Underdetermined { rows: n, cols: p })?;
        if pval == 0.0 || pval <= 1e-12 * colmax {
            return Err(Error::RankDeficient {
                column: j,
                name: format!("x{}", j),
            });
        }
        used[piv] = true;
        basis.push(piv);
        let prow: Vec<f64> = work.row(piv).to_vec();
        for i in 0..n {
            if used[i] {
                continue;
            }
            let f = work.get(i, j) / prow[j];
            if f != 0.0 {
                let r = work.row_mut(i);
                for c in j..p {
                    r[c] -= f * prow[c];
                }
            }
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[&[f64]], y: &[f64]) -> SupervisedSet {
        SupervisedSet::from_xy(Matrix::from_rows(rows).unwrap(), y.to_vec()).unwrap()
    }

    fn tau(v: f64) -> Tau {
        Tau::new(v).unwrap()
    }

    #[test]
    fn tau_bounds() {
        assert!(Tau::new(0.0).is_err());
        assert!(Tau::new(1.0).is_err());
        assert!(Tau::new(f64::NAN).is_err());
        assert_eq!(Tau::new(0.3).unwrap().value(), 0.3);
    }

    #[test]
    fn tau_from_price_examples() {
        let t = |a, b| tau_from_prices(PriceTags::new(a, b).unwrap()).unwrap().value();
        assert_eq!(t(7.0, 3.0), 0.7);
        assert_eq!(t(1.0, 1.0), 0.5);
        assert_eq!(t(9.0, 1.0), 0.9);
        // price ratio so extreme that tau rounds to 1
        assert!(tau_from_prices(PriceTags::new(1.0, 1e-20).unwrap()).is_err());
    }

    #[test]
    fn pinball_examples() {
        let x = Matrix::from_rows(&[[1.0], [1.0]]).unwrap();
        assert_eq!(pinball_objective(&[0.0, 0.0], &x, &[0.0], tau(0.3)).unwrap(), 0.0);
        let v = pinball_objective(&[2.0, -1.0], &x, &[0.0], tau(0.7)).unwrap();
        assert!((v - 1.7).abs() < 1e-15);
        // tau = 0.5 is half the absolute residual sum
        let v = pinball_objective(&[2.0, -1.0], &x, &[0.5], tau(0.5)).unwrap();
        assert!((v - 0.5 * 3.0).abs() < 1e-15);
        assert!(matches!(
            pinball_objective(&[1.0], &x, &[0.0], tau(0.5)),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(pinball_objective(&[1.0, 2.0], &x, &[0.0, 1.0], tau(0.5)).is_err());
    }

    #[test]
    fn intercept_only_lowest_vertex() {
        let rows: Vec<[f64; 1]> = vec![[1.0]; 10];
        let y: Vec<f64> = (1..=10).map(f64::from).collect();
        let s = SupervisedSet::from_xy(Matrix::from_rows(&rows).unwrap(), y).unwrap();
        let m = fit_quantile(&s, tau(0.7), &SolverOptions::default()).unwrap();
        assert_eq!(m.coefficients, vec![7.0]);
        // every constant in [7, 8] costs 0.7 * 6 + 0.3 * 21
        assert!((m.objective_value - 10.5).abs() < 1e-12);
    }

    #[test]
    fn interpolates_two_points() {
        let s = set(&[&[0.0, 1.0], &[1.0, 1.0]], &[0.0, 1.0]);
        for t in [0.1, 0.5, 0.9] {
            let m = fit_quantile(&s, tau(t), &SolverOptions::default()).unwrap();
            assert!((m.coefficients[0] - 1.0).abs() < 1e-12);
            assert!(m.coefficients[1].abs() < 1e-12);
            assert!(m.objective_value.abs() < 1e-12);
        }
    }

    #[test]
    fn median_of_three() {
        let s = set(&[&[1.0], &[1.0], &[1.0]], &[1.0, 2.0, 100.0]);
        let m = fit_quantile(&s, tau(0.5), &SolverOptions::default()).unwrap();
        assert_eq!(m.coefficients, vec![2.0]);
        assert!((m.objective_value - 0.5 * 99.0).abs() < 1e-12);
    }

    #[test]
    fn rank_deficient_is_an_error() {
        let s = set(&[&[1.0, 2.0], &[2.0, 4.0], &[3.0, 6.0]], &[1.0, 2.0, 3.0]);
        assert!(matches!(
            fit_quantile(&s, tau(0.5), &SolverOptions::default()),
            Err(Error::RankDeficient { column: 1, .. })
        ));
        let wide = set(&[&[1.0, 2.0]], &[1.0]);
        assert!(fit_quantile(&wide, tau(0.5), &SolverOptions::default()).is_err());
    }

    #[test]
    fn pivot_limit_surfaces() {
        let rows: Vec<[f64; 1]> = vec![[1.0]; 10];
        let y: Vec<f64> = (1..=10).map(f64::from).collect();
        let s = SupervisedSet::from_xy(Matrix::from_rows(&rows).unwrap(), y).unwrap();
        let opts = SolverOptions {
            max_pivots: Some(1),
            ..Default::default()
        };
        // starting at y = 1 needs exactly one long step to reach y = 7
        assert!(fit_quantile(&s, tau(0.7), &opts).is_ok());
        let rows: Vec<[f64; 3]> = (0..40)
            .map(|i| {
                let t = i as f64;
                [(0.7 * t).sin(), (1.3 * t + 0.4).cos(), 1.0]
            })
            .collect();
        let y: Vec<f64> = (0..40).map(|i| ((i * 37 % 11) as f64) - 3.0).collect();
        let s2 = SupervisedSet::from_xy(Matrix::from_rows(&rows).unwrap(), y).unwrap();
        let full = fit_quantile(&s2, tau(0.2), &SolverOptions::default()).unwrap();
        assert!(full.pivots >= 2, "needs a multi-pivot instance, got {}", full.pivots);
        let tight = SolverOptions {
            max_pivots: Some(full.pivots - 1),
            ..Default::default()
        };
        assert!(matches!(
            fit_quantile(&s2, tau(0.2), &tight),
            Err(Error::PivotLimit { .. })
        ));
        let bad = SolverOptions {
            feasibility_tolerance: 0.0,
            ..Default::default()
        };
        assert!(fit_quantile(&s2, tau(0.2), &bad).is_err());
    }

    #[test]
    fn predict_examples() {
        let x = Matrix::from_rows(&[[3.0, 1.0], [2.0, 5.0]]).unwrap();
        assert_eq!(predict(&[0.0, 0.0], &x).unwrap(), vec![0.0, 0.0]);
        assert_eq!(predict(&[0.0, 1.0], &x).unwrap(), vec![1.0, 5.0]);
        let one = Matrix::from_rows(&[[3.0, 1.0]]).unwrap();
        assert_eq!(predict(&[1.0, 0.0], &one).unwrap(), vec![3.0]);
        assert!(matches!(predict(&[1.0], &x), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn tie_break_label_roundtrip() {
        let t: TieBreak = "lowest-vertex".parse().unwrap();
        assert_eq!(t.label(), "lowest-vertex");
        assert!("random".parse::<TieBreak>().is_err());
    }

    #[test]
    fn bland_rule_reaches_same_optimum() {
        // small-integer data has many ties, so degenerate pivots are common
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 7) as f64 - 3.0
        };
        let opts = SolverOptions::default();
        let mut compared = 0;
        while compared < 200 {
            let n = 4 + (next() as i64 + 3) as usize;
            let rows: Vec<[f64; 3]> = (0..n).map(|_| [next(), next(), 1.0]).collect();
            let y: Vec<f64> = (0..n).map(|_| next()).collect();
            let x = Matrix::from_rows(&rows).unwrap();
            if HouseholderQr::new(&x, &[]).is_err() {
                continue;
            }
            let t = (next() + 4.0) / 8.0;
            let mut dantzig = Simplex::new(&x, &y, t, &opts).unwrap();
            dantzig.run(10_000).unwrap();
            let mut bland = Simplex::new(&x, &y, t, &opts).unwrap();
            bland.bland_after = 0;
            bland.run(10_000).unwrap();
            let obj = |b: &[f64]| pinball_objective(&y, &x, b, Tau(t)).unwrap();
            assert!((obj(&dantzig.beta) - obj(&bland.beta)).abs() < 1e-9);
            compared += 1;
        }
    }
}
