//! Perron-Frobenius point of the fiber over `Q > 0`.
//!
//! `M_sigma = sum_w M_{sigma_w}` is nonnegative with positive diagonal.  Its
//! positive eigenvector `mu`, scaled so the `sigma_{w_0}` coefficient is 1,
//! carries the Schubert values `sigma_w(p_0) = mu[PD(w)]`.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::affine::affine_positivity_certificate;
use crate::matrix::ExactMatrix;
use crate::poly::{charpoly_multimodular, Poly};
use crate::qchev::{recover_structure_constants, ChevalleyRule, QuotientAlgebra};
use crate::rat::{self, Rat};
use crate::weyl::{WeylElement, WeylGroup};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct PfConfig {
    /// Relative residual tolerance.
    pub tol: f64,
    pub max_iter: usize,
    /// Relative gap `(lambda_PF - max |other|) / lambda_PF` below which dominance is ambiguous.
    pub gap_threshold: f64,
    /// Largest `|W^P|` for which simplicity is certified with the exact characteristic polynomial.
    pub exact_limit: usize,
}

impl Default for PfConfig {
    fn default() -> Self {
        PfConfig { tol: 1e-9, max_iter: 100_000, gap_threshold: 1e-9, exact_limit: 24 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Simplicity {
    Exact,
    Numerical,
    NotSimple,
    Inconclusive,
}

impl Simplicity {
    pub fn is_simple(self) -> bool {
        matches!(self, Simplicity::Exact | Simplicity::Numerical)
    }
}

#[derive(Clone, Debug)]
pub struct PfSolution {
    pub q: Vec<Rat>,
    pub basis: Vec<WeylElement>,
    pub pf_eigenvalue: f64,
    /// Eigenvector with the `sigma_{w_0^P}` coefficient equal to 1.
    pub mu: Vec<f64>,
    /// `sigma_w(p_0)` in basis order.
    pub sigma_values: Vec<f64>,
    /// Relative residual of `M_{sigma_v} mu = sigma_v(p_0) mu` per basis element `v`.
    pub residuals: Vec<f64>,
    pub eigenvalue_gap: f64,
    /// Number of eigenvalues numerically equal to `lambda_PF`.
    pub cluster_size: usize,
    /// Independent sign-definite eigenvectors found over the whole spectrum.
    pub sign_definite_count: usize,
    pub multiplicity_flag: bool,
    pub simplicity: Simplicity,
    pub iterations: usize,
}

impl PfSolution {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn sigma_map(&self) -> HashMap<WeylElement, f64> {
        self.basis.iter().cloned().zip(self.sigma_values.iter().copied()).collect()
    }

    pub fn sigma_of(&self, w: &WeylElement) -> Option<f64> {
        self.basis.iter().position(|x| x == w).map(|k| self.sigma_values[k])
    }
}

pub fn build_m_sigma(alg: &QuotientAlgebra) -> ExactMatrix {
    let n = alg.dim();
    alg.mult.iter().fold(ExactMatrix::zeros(n, n), |acc, m| &acc + m)
}

/// Strong connectivity of the support digraph of a square matrix.
pub fn irreducibility_check(m: &ExactMatrix) -> bool {
    let n = m.nrows();
    if n == 0 || !m.is_square() {
        return false;
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                let e = if forward { &m[(i, j)] } else { &m[(j, i)] };
                if !seen[j] && !e.is_zero() {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

fn inf_norm_vec(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

fn inf_norm_mat(m: &DMatrix<f64>) -> f64 {
    m.row_iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
}

fn rel_residual(m: &DMatrix<f64>, x: &DVector<f64>, lambda: f64) -> f64 {
    let r = m * x - x * lambda;
    let scale = inf_norm_mat(m).max(lambda.abs()) * inf_norm_vec(x);
    if scale == 0.0 {
        0.0
    } else {
        inf_norm_vec(&r) / scale
    }
}

/// Perron vector of a nonnegative irreducible matrix by Noda iteration on
/// the rescaled matrix `B = D^{-1} M D`, `D = diag(x)`.
///
/// The row sums of `B` are the Collatz-Wielandt ratios `(Mx)_i / x_i`, which
/// bracket `lambda_PF`; being sums of nonnegative terms they stay accurate
/// however badly `M` is scaled.  Returns `(lambda, x, B, steps)`.
fn perron_vector(m: &DMatrix<f64>, cfg: &PfConfig) -> Result<(f64, DVector<f64>, DMatrix<f64>, usize)> {
    let n = m.nrows();
    let rescale = |x: &DVector<f64>| DMatrix::from_fn(n, n, |i, j| m[(i, j)] * (x[j] / x[i]));
    let bounds = |b: &DMatrix<f64>| {
        let r: Vec<f64> = b.row_iter().map(|row| row.iter().sum()).collect();
        let lo = r.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = r.iter().copied().fold(0.0, f64::max);
        (lo, hi, r)
    };
    let mut x = DVector::from_element(n, 1.0);
    let mut best = (f64::INFINITY, x.clone(), 0.0);
    let mut stale = 0;
    let mut steps = 0;
    while steps < cfg.max_iter {
        let b = rescale(&x);
        let (lo, hi, rows) = bounds(&b);
        if !(lo > 0.0 && hi.is_finite()) {
            return Err(Error::Numerical("Collatz-Wielandt ratios left (0, inf)".into()));
        }
        let width = (hi - lo) / hi;
        if width < best.0 {
            best = (width, x.clone(), (lo + hi) / 2.0);
            stale = 0;
        } else {
            stale += 1;
        }
        if width <= 4.0 * f64::EPSILON || stale >= 4 {
            break;
        }
        steps += 1;
        let s = hi * (1.0 + (width * 1e-3).max(4.0 * f64::EPSILON));
        let shifted = DMatrix::identity(n, n) * s - &b;
        let ones = DVector::from_element(n, 1.0);
        let y = match shifted.lu().solve(&ones) {
            Some(y) if y.iter().all(|v| *v > 0.0 && v.is_finite()) => y,
            // power step
            _ => DVector::from_vec(rows),
        };
        let next = x.component_mul(&y);
        let top = next.iter().copied().fold(0.0, f64::max);
        x = next / top;
        if x.iter().any(|v| v.is_nan() || *v <= 0.0) {
            return Err(Error::Numerical("Perron vector underflowed".into()));
        }
    }
    if best.0 > cfg.tol {
        return Err(Error::Budget(format!("Perron iteration stalled at relative width {:e}", best.0)));
    }
    let (_, x, lambda) = best;
    let b = rescale(&x);
    Ok((lambda, x, b, steps))
}

/// Basis of the numerical nullspace of `a`.
fn null_basis(a: &DMatrix<f64>, rel: f64) -> Vec<DVector<f64>> {
    let n = a.ncols();
    let svd = a.clone().svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max).max(1.0);
    (0..n)
        .filter(|&k| svd.singular_values[k] <= rel * smax)
        .map(|k| vt.row(k).transpose())
        .collect()
}

fn sign_definite(v: &DVector<f64>, rel: f64) -> bool {
    let scale = inf_norm_vec(v);
    let pos = v.iter().all(|&x| x > -rel * scale);
    let neg = v.iter().all(|&x| x < rel * scale);
    pos || neg
}

struct SpectrumReport {
    gap: f64,
    cluster_size: usize,
    sign_definite_count: usize,
}

fn spectrum_check(m: &DMatrix<f64>, lambda: f64, left: &DVector<f64>) -> SpectrumReport {
    let n = m.nrows();
    let eig = m.clone().complex_eigenvalues();
    let cluster_tol = 1e-7 * lambda.abs().max(1.0);
    let cluster_size = eig.iter().filter(|z| (z.re - lambda).abs() <= cluster_tol && z.im.abs() <= cluster_tol).count();
    let others = eig
        .iter()
        .filter(|z| !((z.re - lambda).abs() <= cluster_tol && z.im.abs() <= cluster_tol))
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let gap = lambda - others;
    // real eigenvalues, grouped
    let mut reals: Vec<f64> = eig.iter().filter(|z| z.im.abs() <= cluster_tol).map(|z| z.re).collect();
    reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut groups: Vec<f64> = Vec::new();
    for r in reals {
        if groups.last().is_none_or(|g| (r - g).abs() > cluster_tol) {
            groups.push(r);
        }
    }
    let mut sign_definite_count = 0;
    let scale = inf_norm_mat(m).max(1.0);
    let left_unit = left / left.norm();
    for g in groups {
        let shifted = m - DMatrix::identity(n, n) * g;
        let basis = null_basis(&shifted, 1e-9);
        let is_pf = (g - lambda).abs() <= cluster_tol;
        if basis.len() <= 1 {
            if basis.first().is_some_and(|v| sign_definite(v, 1e-9)) {
                sign_definite_count += 1;
            }
            continue;
        }
        if is_pf {
            sign_definite_count += basis.len();
            continue;
        }
        // larger eigenspace off the PF value: every vector in it is
        // orthogonal to the positive left PF vector
        let orthogonal = basis.iter().all(|v| left_unit.dot(v).abs() <= 1e-8 * scale.sqrt());
        if !orthogonal {
            sign_definite_count += basis.len();
        }
    }
    SpectrumReport { gap, cluster_size, sign_definite_count }
}

/// Exact test that the characteristic polynomial of `m` has a simple root
/// within `radius` of `lambda`.
///
/// Success means a rational interval around `lambda` on which `p` changes
/// sign while `|p'|` is bounded away from zero, so it holds exactly one root
/// and that root is simple.
pub fn exact_simplicity(m: &ExactMatrix, lambda: f64, radius: f64) -> Simplicity {
    let p = charpoly_multimodular(m);
    let dp = p.derivative();
    let d2 = dp.derivative();
    let abs_d2 = Poly::new(d2.coeffs().iter().map(|c| c.abs()).collect());
    let mut r = radius;
    for _ in 0..40 {
        let (Some(a), Some(b)) = (Rat::from_float(lambda - r), Rat::from_float(lambda + r)) else { break };
        if a >= b {
            break;
        }
        if (p.eval(&a) * p.eval(&b)).is_negative() {
            let c = (&a + &b) / rat::int(2);
            let big = a.abs().max(b.abs());
            let slack = abs_d2.eval(&big) * (&b - &a) / rat::int(2);
            if dp.eval(&c).abs() > slack {
                return Simplicity::Exact;
            }
        }
        r /= 4.0;
    }
    let (Some(a), Some(b)) = (Rat::from_float(lambda - radius), Rat::from_float(lambda + radius)) else {
        return Simplicity::Inconclusive;
    };
    let g = p.gcd(&dp);
    if g.degree().unwrap_or(0) > 0 && g.count_roots(&a, &b) > 0 {
        Simplicity::NotSimple
    } else {
        Simplicity::Inconclusive
    }
}

fn certify(
    m_exact: &ExactMatrix,
    lambda: f64,
    gap: f64,
    cluster_size: usize,
    cfg: &PfConfig,
) -> Simplicity {
    let n = m_exact.nrows();
    if n == 1 {
        return Simplicity::Exact;
    }
    if gap <= cfg.gap_threshold * lambda {
        return Simplicity::Inconclusive;
    }
    if n <= cfg.exact_limit {
        return exact_simplicity(m_exact, lambda, gap / 2.0);
    }
    if cluster_size == 1 {
        Simplicity::Numerical
    } else {
        Simplicity::Inconclusive
    }
}

pub fn pf_solve(alg: &QuotientAlgebra, cfg: &PfConfig) -> Result<PfSolution> {
    let n = alg.dim();
    let exact = build_m_sigma(alg);
    if !irreducibility_check(&exact) {
        return Err(Error::Precondition("M_sigma is not irreducible".into()));
    }
    let m = exact.to_f64();
    let (lambda, x, balanced, iterations) = perron_vector(&m, cfg)?;
    let (_, left, _, _) = perron_vector(&balanced.transpose(), cfg)?;
    let top = alg.cosets.index_of(&alg.cosets.w0_p).unwrap();
    let mu: DVector<f64> = &x / x[top];
    let sigma_values: Vec<f64> = (0..n).map(|w| mu[alg.cosets.pd_table[w]]).collect();
    let residuals: Vec<f64> = (0..n).map(|v| rel_residual(&alg.mult[v].to_f64(), &mu, sigma_values[v])).collect();
    let spec = if n == 1 {
        SpectrumReport { gap: lambda, cluster_size: 1, sign_definite_count: 1 }
    } else {
        spectrum_check(&balanced, lambda, &left)
    };
    let simplicity = certify(&exact, lambda, spec.gap, spec.cluster_size, cfg);
    let sol = PfSolution {
        q: alg.q.clone(),
        basis: alg.cosets.min_reps.clone(),
        pf_eigenvalue: lambda,
        mu: mu.iter().copied().collect(),
        sigma_values,
        residuals,
        eigenvalue_gap: spec.gap,
        cluster_size: spec.cluster_size,
        sign_definite_count: spec.sign_definite_count,
        multiplicity_flag: simplicity.is_simple(),
        simplicity,
        iterations,
    };
    if sol.max_residual() > cfg.tol {
        return Err(Error::Numerical(format!("eigenvector residual {:e} above tolerance {:e}", sol.max_residual(), cfg.tol)));
    }
    if spec.gap <= cfg.gap_threshold * lambda {
        return Err(Error::Numerical(format!("lambda_PF = {lambda} is not strictly dominant (gap {:e})", spec.gap)));
    }
    Ok(sol)
}

/// Same verdict as stored in the solution; recomputed from the algebra.
pub fn simplicity_certificate(alg: &QuotientAlgebra, sol: &PfSolution, cfg: &PfConfig) -> Simplicity {
    certify(&build_m_sigma(alg), sol.pf_eigenvalue, sol.eigenvalue_gap, sol.cluster_size, cfg)
}

/// Log-uniform sample in `[1e-3, 1e3]` per coordinate, snapped to 6 significant digits.
pub fn sample_q(rng: &mut impl Rng, k: usize) -> Vec<Rat> {
    (0..k).map(|_| rat::snap_positive(10f64.powf(rng.gen_range(-3.0..=3.0)))).collect()
}

pub fn sample_qs(seed: u64, count: usize, k: usize) -> Vec<Vec<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_q(&mut rng, k)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub q: Vec<String>,
    pub lambda_pf: f64,
    pub sigma: Vec<f64>,
    pub max_residual: f64,
    pub gap: f64,
    pub simplicity: Simplicity,
    pub sign_definite: usize,
    pub affine_positive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub type_name: String,
    pub seed: u64,
    pub samples: usize,
    pub basis: Vec<String>,
    pub rows: Vec<SweepRow>,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs one sampled `Q` through recovery, the PF solve, and every assertion.
pub fn check_point(rule: &ChevalleyRule, q: &[Rat], cfg: &PfConfig) -> std::result::Result<SweepRow, String> {
    let qs: Vec<String> = q.iter().map(rat::format).collect();
    let fail = |e: String| format!("Q=[{}]: {e}", qs.join(","));
    let alg = recover_structure_constants(rule, q).map_err(|e| fail(e.to_string()))?;
    let sol = pf_solve(&alg, cfg).map_err(|e| fail(e.to_string()))?;
    let qf: Vec<f64> = q.iter().map(rat::to_f64).collect();
    let affine_positive = affine_positivity_certificate(rule.weyl_group(), &sol.sigma_map(), &qf).map_err(|e| fail(e.to_string()))?;
    let row = SweepRow {
        q: qs.clone(),
        lambda_pf: sol.pf_eigenvalue,
        sigma: sol.sigma_values.clone(),
        max_residual: sol.max_residual(),
        gap: sol.eigenvalue_gap,
        simplicity: sol.simplicity,
        sign_definite: sol.sign_definite_count,
        affine_positive,
    };
    let mut problems = Vec::new();
    if !sol.sigma_values.iter().all(|&s| s > 0.0) {
        problems.push("non-positive sigma value".to_string());
    }
    if !row.simplicity.is_simple() {
        problems.push(format!("simplicity {:?}", row.simplicity));
    }
    if row.sign_definite != 1 {
        problems.push(format!("{} sign-definite eigenvectors", row.sign_definite));
    }
    if !affine_positive {
        problems.push("affine positivity certificate failed".to_string());
    }
    if (sol.sigma_values[0] - 1.0).abs() > cfg.tol {
        problems.push(format!("sigma_e = {}", sol.sigma_values[0]));
    }
    if problems.is_empty() {
        Ok(row)
    } else {
        Err(fail(problems.join("; ")))
    }
}

/// Existence and uniqueness of the positive point over sampled `Q` (P = B).
pub fn bijectivity_sweep(wg: Arc<WeylGroup>, samples: usize, seed: u64, cfg: &PfConfig) -> SweepReport {
    let rule = ChevalleyRule::borel(wg.clone());
    let qs = sample_qs(seed, samples, wg.rank());
    let results: Vec<std::result::Result<SweepRow, String>> = qs.par_iter().map(|q| check_point(&rule, q, cfg)).collect();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => failures.push(e),
        }
    }
    SweepReport {
        type_name: wg.root_system().name(),
        seed,
        samples,
        basis: rule.cosets().min_reps.iter().map(|w| w.label()).collect(),
        rows,
        failures,
    }
}

/// `lambda_PF` is nondecreasing along `Q <= Q'`; returns the violating pairs.
pub fn monotonicity_check(wg: Arc<WeylGroup>, pairs: usize, seed: u64, cfg: &PfConfig) -> Result<Vec<String>> {
    let rule = ChevalleyRule::borel(wg.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..pairs {
        let q = sample_q(&mut rng, wg.rank());
        let bump: Vec<Rat> = q
            .iter()
            .map(|x| x * rat::snap_positive(1.0 + rng.gen_range(0.0..2.0)))
            .collect();
        let l0 = pf_solve(&recover_structure_constants(&rule, &q)?, cfg)?.pf_eigenvalue;
        let l1 = pf_solve(&recover_structure_constants(&rule, &bump)?, cfg)?.pf_eigenvalue;
        if l1 < l0 * (1.0 - 1e-12) {
            bad.push(format!("lambda({:?}) = {l0} > lambda({:?}) = {l1}", q.iter().map(rat::format).collect::<Vec<_>>(), bump.iter().map(rat::format).collect::<Vec<_>>()));
        }
    }
    Ok(bad)
}

/// The PF point of `qH^*(G/B)` at `Q`.
pub fn solve_at(wg: Arc<WeylGroup>, q: &[Rat], cfg: &PfConfig) -> Result<PfSolution> {
    let rule = ChevalleyRule::borel(wg);
    pf_solve(&recover_structure_constants(&rule, q)?, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{RootSystem, TypeLetter};

    fn group(t: TypeLetter, n: usize) -> Arc<WeylGroup> {
        Arc::new(WeylGroup::new(Arc::new(RootSystem::new(t, n).unwrap())))
    }

    #[test]
    fn a1_closed_form() {
        let wg = group(TypeLetter::A, 1);
        let rule = ChevalleyRule::borel(wg.clone());
        let alg = recover_structure_constants(&rule, &[rat::int(4)]).unwrap();
        assert_eq!(build_m_sigma(&alg), ExactMatrix::from_i64(&[vec![1, 4], vec![1, 1]]));
        let sol = pf_solve(&alg, &PfConfig::default()).unwrap();
        assert!((sol.pf_eigenvalue - 3.0).abs() < 1e-12);
        assert!((sol.sigma_of(&wg.simple(0)).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(sol.sigma_values[0], 1.0);
        assert_eq!(sol.simplicity, Simplicity::Exact);
        let sol = solve_at(wg.clone(), &[rat::int(1)], &PfConfig::default()).unwrap();
        assert!((sol.sigma_values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn irreducibility() {
        assert!(irreducibility_check(&ExactMatrix::from_i64(&[vec![1, 3], vec![1, 1]])));
        assert!(!irreducibility_check(&ExactMatrix::identity(3)));
        let wg = group(TypeLetter::A, 2);
        let alg = recover_structure_constants(&ChevalleyRule::borel(wg), &[rat::int(1), rat::int(1)]).unwrap();
        let m = build_m_sigma(&alg);
        assert!(irreducibility_check(&m));
        for i in 0..m.nrows() {
            assert!(m[(i, i)] >= rat::int(1));
        }
    }

    #[test]
    fn trivial_quotient() {
        let wg = group(TypeLetter::A, 2);
        let p = wg.root_system().parabolic(&[0, 1]).unwrap();
        let rule = ChevalleyRule::new(wg, p);
        let alg = recover_structure_constants(&rule, &[]).unwrap();
        let sol = pf_solve(&alg, &PfConfig::default()).unwrap();
        assert_eq!(sol.mu, vec![1.0]);
        assert_eq!(sol.pf_eigenvalue, 1.0);
        assert_eq!(sol.simplicity, Simplicity::Exact);
    }

    #[test]
    fn a2_symmetry() {
        let wg = group(TypeLetter::A, 2);
        let sol = solve_at(wg.clone(), &[rat::int(1), rat::int(1)], &PfConfig::default()).unwrap();
        for w in wg.elements() {
            let flipped: Vec<usize> = w.word().iter().map(|&i| 1 - i).collect();
            let v = wg.from_word(&flipped).unwrap();
            assert!((sol.sigma_of(w).unwrap() - sol.sigma_of(&v).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn exact_simplicity_detects_double_root() {
        let m = ExactMatrix::from_i64(&[vec![1, 4], vec![1, 1]]);
        assert_eq!(exact_simplicity(&m, 3.0, 0.5), Simplicity::Exact);
        let d = ExactMatrix::from_i64(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(exact_simplicity(&d, 2.0, 0.5), Simplicity::NotSimple);
        let p = Poly::from_i64(&[-3, -2, 1]);
        assert_eq!(p.count_roots(&rat::int(2), &rat::int(4)), 1);
    }

    #[test]
    fn small_sweeps() {
        let cfg = PfConfig::default();
        let rep = bijectivity_sweep(group(TypeLetter::A, 1), 20, 7, &cfg);
        assert!(rep.passed(), "{:?}", rep.failures);
        for row in &rep.rows {
            let q = rat::to_f64(&rat::parse(&row.q[0]).unwrap());
            assert!((row.sigma[1] - q.sqrt()).abs() <= 1e-10 * q.sqrt().max(1.0));
        }
        let rep = bijectivity_sweep(group(TypeLetter::B, 2), 10, 7, &cfg);
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn monotone_in_q() {
        assert!(monotonicity_check(group(TypeLetter::A, 2), 10, 3, &PfConfig::default()).unwrap().is_empty());
    }
}
