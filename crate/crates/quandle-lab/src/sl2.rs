//! Numerical counting of conjugacy classes of nonabelian SL(2,C)
//! representations of two-generator presentations.
//!
//! Gauge: A = [[alpha, 1], [0, alpha^-1]], B = [[beta, 0], [gamma, beta^-1]].
//! Fixing A's off-diagonal entry to 1 uses up the diagonal conjugation
//! freedom, so isolated irreducible classes appear as isolated solutions
//! of the relator equations in (alpha, beta, gamma). The reducible
//! nonabelian stratum is invisible in that chart (it forces gamma = 0 and
//! trace coordinates stop separating classes), so it is searched
//! separately with B upper triangular, B = [[beta, b], [0, beta^-1]].
//!
//! Each seed runs a damped Gauss-Newton iteration on the matrix relator
//! equations, differentiated exactly with dual numbers. Converged points
//! are filtered by residual, split into irreducible versus reducible by
//! tr(ABA^-1B^-1) = 2, which characterizes reducibility in SL(2), and
//! deduplicated by the trace coordinates (tr A, tr B, tr AB). Counts are
//! certified only heuristically: re-verified residuals plus stability
//! under seed refinement, not exact elimination.

use std::sync::OnceLock;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::fp::{GroupError, Presentation};
use crate::suciu;
use crate::words::Word;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("representation search needs exactly 2 generators, found {0}")]
    WrongGeneratorCount(usize),
    #[error("stage {stage} failed for k = {k}: {message}")]
    Stage {
        stage: &'static str,
        k: u64,
        message: String,
    },
}

/// Residual tolerance below which a converged point counts as a solution.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Two points whose trace coordinates agree within this radius are one class.
pub const DEDUP_RADIUS: f64 = 1e-6;
/// Commutator-trace margin separating irreducible from reducible points.
pub const IRREDUCIBLE_MARGIN: f64 = 1e-6;

/// Multistart configuration. Sampling is deterministic in `rng_seed`.
#[derive(Clone, Debug, Serialize)]
pub struct SeedSpec {
    pub seeds: usize,
    pub min_modulus: f64,
    pub max_modulus: f64,
    pub rng_seed: u64,
}

impl Default for SeedSpec {
    fn default() -> Self {
        SeedSpec {
            seeds: 10_000,
            min_modulus: 0.2,
            max_modulus: 5.0,
            rng_seed: 0x5eed_ab1e,
        }
    }
}

impl SeedSpec {
    pub fn with_seeds(seeds: usize) -> Self {
        SeedSpec { seeds, ..Self::default() }
    }
}

// Forward-mode dual number over C with three partials; relator entries
// are holomorphic in the parameters, so this is an exact Jacobian.
#[derive(Clone, Copy, Debug)]
struct Dual {
    v: Complex64,
    d: [Complex64; 3],
}

impl Dual {
    const ZERO: Dual = Dual { v: Complex64::new(0.0, 0.0), d: [Complex64::new(0.0, 0.0); 3] };
    const ONE: Dual = Dual { v: Complex64::new(1.0, 0.0), d: [Complex64::new(0.0, 0.0); 3] };

    fn var(v: Complex64, i: usize) -> Dual {
        let mut d = [Complex64::new(0.0, 0.0); 3];
        d[i] = Complex64::new(1.0, 0.0);
        Dual { v, d }
    }

    fn add(self, o: Dual) -> Dual {
        Dual {
            v: self.v + o.v,
            d: [self.d[0] + o.d[0], self.d[1] + o.d[1], self.d[2] + o.d[2]],
        }
    }

    fn mul(self, o: Dual) -> Dual {
        Dual {
            v: self.v * o.v,
            d: [
                self.d[0] * o.v + self.v * o.d[0],
                self.d[1] * o.v + self.v * o.d[1],
                self.d[2] * o.v + self.v * o.d[2],
            ],
        }
    }

    fn neg(self) -> Dual {
        Dual { v: -self.v, d: [-self.d[0], -self.d[1], -self.d[2]] }
    }

    // 1/v with d(1/v) = -dv / v^2
    fn inv(self) -> Dual {
        let iv = Complex64::new(1.0, 0.0) / self.v;
        let m = -iv * iv;
        Dual { v: iv, d: [m * self.d[0], m * self.d[1], m * self.d[2]] }
    }
}

type M2 = [[Dual; 2]; 2];

fn m2_mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[Dual::ZERO; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0].mul(b[0][c]).add(a[r][1].mul(b[1][c]));
        }
    }
    out
}

fn m2_identity() -> M2 {
    [[Dual::ONE, Dual::ZERO], [Dual::ZERO, Dual::ONE]]
}

/// Which chart the solver works in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ansatz {
    /// B lower triangular with corner gamma; can reach every irreducible class.
    LowerB,
    /// B upper triangular with corner b; covers the reducible stratum.
    UpperB,
}

struct LetterMats {
    a: M2,
    a_inv: M2,
    b: M2,
    b_inv: M2,
}

// A = [[x, 1], [0, 1/x]]; B = [[y, 0], [z, 1/y]] or [[y, z], [0, 1/y]].
// The inverses are exact closed forms, so no numeric inversion happens.
fn letter_mats(ansatz: Ansatz, p: [Dual; 3]) -> LetterMats {
    let [x, y, z] = p;
    let xi = x.inv();
    let yi = y.inv();
    let a = [[x, Dual::ONE], [Dual::ZERO, xi]];
    let a_inv = [[xi, Dual::ONE.neg()], [Dual::ZERO, x]];
    let (b, b_inv) = match ansatz {
        Ansatz::LowerB => (
            [[y, Dual::ZERO], [z, yi]],
            [[yi, Dual::ZERO], [z.neg(), y]],
        ),
        Ansatz::UpperB => (
            [[y, z], [Dual::ZERO, yi]],
            [[yi, z.neg()], [Dual::ZERO, y]],
        ),
    };
    LetterMats { a, a_inv, b, b_inv }
}

/// The matrix relator equations of a two-generator presentation, ready
/// for evaluation at numerical parameter points.
pub struct RelatorSystem {
    relators: Vec<Word>,
    first_gen: crate::words::Generator,
}

/// Extracts the equation system. The presentation must have exactly two
/// generators; relators may be empty (free group: every point solves).
pub fn relator_equations(p: &Presentation) -> Result<RelatorSystem, RepError> {
    let gens = p.generators();
    if gens.len() != 2 {
        return Err(RepError::WrongGeneratorCount(gens.len()));
    }
    Ok(RelatorSystem {
        relators: p.relators().to_vec(),
        first_gen: gens[0].clone(),
    })
}

impl RelatorSystem {
    pub fn equation_count(&self) -> usize {
        4 * self.relators.len()
    }

    // F(p) stacked as entries of M(relator) - I, with the Jacobian rows.
    fn eval(&self, ansatz: Ansatz, p: [Complex64; 3]) -> (Vec<Complex64>, Vec<[Complex64; 3]>) {
        let duals = [Dual::var(p[0], 0), Dual::var(p[1], 1), Dual::var(p[2], 2)];
        let mats = letter_mats(ansatz, duals);
        let mut f = Vec::with_capacity(self.equation_count());
        let mut jac = Vec::with_capacity(self.equation_count());
        for rel in &self.relators {
            let mut m = m2_identity();
            for l in rel.letters() {
                let factor = if l.gen == self.first_gen {
                    if l.exp == 1 { &mats.a } else { &mats.a_inv }
                } else if l.exp == 1 {
                    &mats.b
                } else {
                    &mats.b_inv
                };
                m = m2_mul(&m, factor);
            }
            for r in 0..2 {
                for c in 0..2 {
                    let target = if r == c { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
                    f.push(m[r][c].v - target);
                    jac.push(m[r][c].d);
                }
            }
        }
        (f, jac)
    }

    /// Largest relator-entry defect at a parameter point.
    pub fn residual(&self, ansatz: Ansatz, p: [Complex64; 3]) -> f64 {
        let (f, _) = self.eval(ansatz, p);
        f.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

// (H + lambda I) delta = -g for 3x3 complex H, by partial-pivot elimination.
fn solve3(mut m: [[Complex64; 3]; 3], mut rhs: [Complex64; 3]) -> Option<[Complex64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| {
            m[i][col].norm().partial_cmp(&m[j][col].norm()).unwrap()
        })?;
        if m[pivot][col].norm() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..3 {
            let factor = m[row][col] / m[col][col];
            for c in col..3 {
                let sub = factor * m[col][c];
                m[row][c] -= sub;
            }
            let sub = factor * rhs[col];
            rhs[row] -= sub;
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); 3];
    for row in (0..3).rev() {
        let mut acc = rhs[row];
        for c in row + 1..3 {
            acc -= m[row][c] * x[c];
        }
        x[row] = acc / m[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// One converged parameter point.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RepPoint {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    /// gamma in the LowerB chart, the upper corner b in UpperB.
    pub corner: [f64; 2],
    pub residual: f64,
    pub ansatz_upper: bool,
}

fn refine(sys: &RelatorSystem, ansatz: Ansatz, start: [Complex64; 3]) -> Option<([Complex64; 3], f64)> {
    let max_norm = |f: &[Complex64]| f.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut p = start;
    let (mut f, mut jac) = sys.eval(ansatz, p);
    let mut res = max_norm(&f);
    let mut lambda = 1e-3;
    for _ in 0..120 {
        if res < 1e-13 {
            break;
        }
        // normal equations H = J^H J, g = J^H F
        let mut h = [[Complex64::new(0.0, 0.0); 3]; 3];
        let mut g = [Complex64::new(0.0, 0.0); 3];
        for (row, fv) in jac.iter().zip(f.iter()) {
            for i in 0..3 {
                let ci = row[i].conj();
                for j in 0..3 {
                    h[i][j] += ci * row[j];
                }
                g[i] += ci * fv;
            }
        }
        let mut stepped = false;
        for _ in 0..14 {
            let mut damped = h;
            for i in 0..3 {
                damped[i][i] += Complex64::new(lambda, 0.0);
            }
            let Some(delta) = solve3(damped, [-g[0], -g[1], -g[2]]) else {
                lambda *= 10.0;
                continue;
            };
            let cand = [p[0] + delta[0], p[1] + delta[1], p[2] + delta[2]];
            let sane = cand.iter().all(|z| z.is_finite() && z.norm() < 1e9)
                && cand[0].norm() > 1e-9
                && cand[1].norm() > 1e-9;
            if sane {
                let (cf, cj) = sys.eval(ansatz, cand);
                let cres = max_norm(&cf);
                if cres < res {
                    p = cand;
                    f = cf;
                    jac = cj;
                    res = cres;
                    lambda = (lambda / 4.0).max(1e-14);
                    stepped = true;
                    break;
                }
            }
            lambda *= 10.0;
            if lambda > 1e12 {
                break;
            }
        }
        if !stepped {
            break;
        }
    }
    (res.is_finite() && p.iter().all(|z| z.is_finite())).then_some((p, res))
}

// concrete 2x2 images at a parameter point
fn concrete_pair(ansatz: Ansatz, p: [Complex64; 3]) -> ([[Complex64; 2]; 2], [[Complex64; 2]; 2]) {
    let zero = Complex64::new(0.0, 0.0);
    let a = [[p[0], Complex64::new(1.0, 0.0)], [zero, 1.0 / p[0]]];
    let b = match ansatz {
        Ansatz::LowerB => [[p[1], zero], [p[2], 1.0 / p[1]]],
        Ansatz::UpperB => [[p[1], p[2]], [zero, 1.0 / p[1]]],
    };
    (a, b)
}

fn cmul(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

// det 1 matrices invert by the adjugate
fn cinv(a: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

/// A deduplicated conjugacy class, identified by trace coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct RepClass {
    #[serde(rename = "trA")]
    pub tr_a: [f64; 2],
    #[serde(rename = "trB")]
    pub tr_b: [f64; 2],
    #[serde(rename = "trAB")]
    pub tr_ab: [f64; 2],
    pub residual: f64,
    #[serde(skip)]
    pub point: RepPoint,
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct Diagnostics {
    pub seeds_per_stratum: usize,
    pub converged_irreducible: usize,
    pub converged_reducible_chart: usize,
    pub abelian_discarded: usize,
    pub reducible_discarded_in_lower_chart: usize,
    pub residual_tol: f64,
    pub dedup_radius: f64,
}

/// Counts for one presentation: isolated irreducible classes plus the
/// separately listed reducible-nonabelian stratum.
#[derive(Clone, Debug, Serialize)]
pub struct RepCountReport {
    #[serde(rename = "count")]
    pub class_count: usize,
    pub classes: Vec<RepClass>,
    pub reducible_nonabelian: Vec<RepClass>,
    pub diagnostics: Diagnostics,
}

impl RepCountReport {
    /// Irreducible plus reducible-nonabelian classes.
    pub fn total_count(&self) -> usize {
        self.classes.len() + self.reducible_nonabelian.len()
    }
}

fn run_parallel<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    static POOL: OnceLock<Option<rayon::ThreadPool>> = OnceLock::new();
    let pool = POOL.get_or_init(|| {
        std::env::var("QUANDLE_LAB_THREADS")
            .ok()
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&n| n >= 1)
            .map(|n| {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .expect("thread pool construction")
            })
    });
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

fn trace_coords(
    ansatz: Ansatz,
    p: [Complex64; 3],
) -> (Complex64, Complex64, Complex64, f64, f64) {
    let (a, b) = concrete_pair(ansatz, p);
    let ab = cmul(&a, &b);
    let tr_a = a[0][0] + a[1][1];
    let tr_b = b[0][0] + b[1][1];
    let tr_ab = ab[0][0] + ab[1][1];
    let comm = cmul(&ab, &cinv(&cmul(&b, &a)));
    let comm_trace_defect = (comm[0][0] + comm[1][1] - Complex64::new(2.0, 0.0)).norm();
    let ba = cmul(&b, &a);
    let noncomm = (0..2)
        .flat_map(|r| (0..2).map(move |c| (ab[r][c] - ba[r][c]).norm()))
        .fold(0.0, f64::max);
    (tr_a, tr_b, tr_ab, comm_trace_defect, noncomm)
}

fn dedup_push(classes: &mut Vec<RepClass>, cand: RepClass) {
    let close = |u: [f64; 2], v: [f64; 2]| {
        (u[0] - v[0]).hypot(u[1] - v[1]) < DEDUP_RADIUS
    };
    for existing in classes.iter_mut() {
        if close(existing.tr_a, cand.tr_a)
            && close(existing.tr_b, cand.tr_b)
            && close(existing.tr_ab, cand.tr_ab)
        {
            if cand.residual < existing.residual {
                *existing = cand;
            }
            return;
        }
    }
    classes.push(cand);
}

/// Multistart solve of the relator equations over both charts. Classes
/// are deduplicated by trace coordinates; every kept class re-verifies
/// below the residual tolerance by construction.
pub fn count_nonabelian_classes(p: &Presentation, spec: &SeedSpec) -> Result<RepCountReport, RepError> {
    let sys = relator_equations(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let ln_lo = spec.min_modulus.ln();
    let ln_hi = spec.max_modulus.ln();
    let sample = |rng: &mut ChaCha8Rng| {
        let r = (rng.gen_range(ln_lo..ln_hi)).exp();
        let th = rng.gen_range(0.0..std::f64::consts::TAU);
        Complex64::from_polar(r, th)
    };
    let starts: Vec<[Complex64; 3]> = (0..spec.seeds)
        .map(|_| [sample(&mut rng), sample(&mut rng), sample(&mut rng)])
        .collect();

    let solve_stratum = |ansatz: Ansatz| -> Vec<([Complex64; 3], f64)> {
        run_parallel(|| {
            starts
                .par_iter()
                .filter_map(|s| refine(&sys, ansatz, *s))
                .filter(|(_, res)| *res < RESIDUAL_TOL)
                .collect()
        })
    };

    let mut diagnostics = Diagnostics {
        seeds_per_stratum: spec.seeds,
        residual_tol: RESIDUAL_TOL,
        dedup_radius: DEDUP_RADIUS,
        ..Diagnostics::default()
    };

    let mut classes = Vec::new();
    for (pt, res) in solve_stratum(Ansatz::LowerB) {
        diagnostics.converged_irreducible += 1;
        let (tr_a, tr_b, tr_ab, comm_defect, noncomm) = trace_coords(Ansatz::LowerB, pt);
        if noncomm <= IRREDUCIBLE_MARGIN {
            diagnostics.abelian_discarded += 1;
            continue;
        }
        if comm_defect <= IRREDUCIBLE_MARGIN {
            // reducible point that wandered into the lower chart; the
            // upper-chart pass owns that stratum
            diagnostics.reducible_discarded_in_lower_chart += 1;
            continue;
        }
        dedup_push(
            &mut classes,
            RepClass {
                tr_a: [tr_a.re, tr_a.im],
                tr_b: [tr_b.re, tr_b.im],
                tr_ab: [tr_ab.re, tr_ab.im],
                residual: res,
                point: RepPoint {
                    alpha: [pt[0].re, pt[0].im],
                    beta: [pt[1].re, pt[1].im],
                    corner: [pt[2].re, pt[2].im],
                    residual: res,
                    ansatz_upper: false,
                },
            },
        );
    }

    let mut reducible_nonabelian = Vec::new();
    for (pt, res) in solve_stratum(Ansatz::UpperB) {
        diagnostics.converged_reducible_chart += 1;
        let (tr_a, tr_b, tr_ab, _, noncomm) = trace_coords(Ansatz::UpperB, pt);
        if noncomm <= IRREDUCIBLE_MARGIN {
            diagnostics.abelian_discarded += 1;
            continue;
        }
        dedup_push(
            &mut reducible_nonabelian,
            RepClass {
                tr_a: [tr_a.re, tr_a.im],
                tr_b: [tr_b.re, tr_b.im],
                tr_ab: [tr_ab.re, tr_ab.im],
                residual: res,
                point: RepPoint {
                    alpha: [pt[0].re, pt[0].im],
                    beta: [pt[1].re, pt[1].im],
                    corner: [pt[2].re, pt[2].im],
                    residual: res,
                    ansatz_upper: true,
                },
            },
        );
    }

    let class_count = classes.len();
    Ok(RepCountReport {
        class_count,
        classes,
        reducible_nonabelian,
        diagnostics,
    })
}

/// One row of a family-distinction run.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyEntry {
    pub k: u64,
    pub count: usize,
    pub report: RepCountReport,
}

/// Pairwise-distinction summary across parameters.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyDistinction {
    pub entries: Vec<FamilyEntry>,
    pub all_pairwise_distinct: bool,
}

/// Runs the full pipeline per k: two-fold branched kernel presentation,
/// simplification, then class counting; reports whether the counts
/// separate every pair. Stage failures name the stage.
pub fn distinguish_family(ks: &[u64], spec: &SeedSpec) -> Result<FamilyDistinction, RepError> {
    assert!(!ks.is_empty(), "at least one parameter required");
    let mut entries = Vec::with_capacity(ks.len());
    for &k in ks {
        let kp = suciu::kernel_pipeline(k, suciu::SIMPLIFY_BUDGET).map_err(|e: GroupError| {
            RepError::Stage { stage: "kernel_presentation", k, message: e.to_string() }
        })?;
        let report = count_nonabelian_classes(&kp, spec).map_err(|e| RepError::Stage {
            stage: "count_nonabelian_classes",
            k,
            message: e.to_string(),
        })?;
        entries.push(FamilyEntry { k, count: report.total_count(), report });
    }
    let mut all_pairwise_distinct = true;
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            if entries[i].k != entries[j].k && entries[i].count == entries[j].count {
                all_pairwise_distinct = false;
            }
        }
    }
    Ok(FamilyDistinction { entries, all_pairwise_distinct })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dual_arithmetic_differentiates_correctly() {
        let x = Dual::var(c(2.0, 1.0), 0);
        // d/dx (x * 1/x) = 0
        let prod = x.mul(x.inv());
        assert!((prod.v - c(1.0, 0.0)).norm() < 1e-15);
        assert!(prod.d[0].norm() < 1e-15);
        // d/dx x^2 = 2x
        let sq = x.mul(x);
        assert!((sq.d[0] - c(4.0, 2.0)).norm() < 1e-15);
        // a constant in slot 1 contributes no partials
        let y = Dual::var(c(0.5, -0.3), 1);
        let mix = x.mul(y);
        assert!((mix.d[0] - y.v).norm() < 1e-15);
        assert!((mix.d[1] - x.v).norm() < 1e-15);
        assert!(mix.d[2].norm() < 1e-15);
    }

    #[test]
    fn relator_equations_need_two_generators() {
        let p1 = Presentation::parse("< a | a^3 >").unwrap();
        assert!(matches!(relator_equations(&p1), Err(RepError::WrongGeneratorCount(1))));
        let p3 = Presentation::parse("< a, b, c | >").unwrap();
        assert!(matches!(relator_equations(&p3), Err(RepError::WrongGeneratorCount(3))));
    }

    #[test]
    fn free_group_has_an_empty_system() {
        let free = Presentation::parse("< a, b | >").unwrap();
        let sys = relator_equations(&free).unwrap();
        assert_eq!(sys.equation_count(), 0);
        assert_eq!(sys.residual(Ansatz::LowerB, [c(1.3, 0.2), c(0.4, -1.0), c(2.0, 0.0)]), 0.0);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let p = Presentation::parse("< a, b | b a b a^-2, a b a b^-2 >").unwrap();
        let sys = relator_equations(&p).unwrap();
        let base = [c(1.1, 0.3), c(0.8, -0.4), c(0.5, 0.9)];
        let (f0, jac) = sys.eval(Ansatz::LowerB, base);
        let h = 1e-7;
        for i in 0..3 {
            let mut stepped = base;
            stepped[i] += c(h, 0.0);
            let (f1, _) = sys.eval(Ansatz::LowerB, stepped);
            for (row, (v1, v0)) in f1.iter().zip(&f0).enumerate() {
                let fd = (v1 - v0) / h;
                assert!(
                    (fd - jac[row][i]).norm() < 1e-5,
                    "row {row} var {i}: fd {fd} vs dual {}",
                    jac[row][i]
                );
            }
        }
    }

    #[test]
    fn commutator_presentation_has_no_nonabelian_classes() {
        let p = Presentation::parse("< a, b | a b a^-1 b^-1 >").unwrap();
        let report = count_nonabelian_classes(&p, &SeedSpec::with_seeds(400)).unwrap();
        assert_eq!(report.class_count, 0);
        assert!(report.reducible_nonabelian.is_empty());
        assert!(report.diagnostics.abelian_discarded > 0);
    }

    #[test]
    fn trefoil_calibration_lands_on_the_trace_curve() {
        // braid-relator group: irreducible classes satisfy
        // tr A = tr B and tr AB = 1, a classical trace computation
        let p = Presentation::parse("< a, b | a b a b^-1 a^-1 b^-1 >").unwrap();
        let sys = relator_equations(&p).unwrap();
        let spec = SeedSpec::with_seeds(300);
        let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
        let mut found = 0;
        for _ in 0..spec.seeds {
            let mut s = [c(0.0, 0.0); 3];
            for slot in s.iter_mut() {
                let r = rng.gen_range(spec.min_modulus.ln()..spec.max_modulus.ln()).exp();
                let th = rng.gen_range(0.0..std::f64::consts::TAU);
                *slot = Complex64::from_polar(r, th);
            }
            let Some((pt, res)) = refine(&sys, Ansatz::LowerB, s) else { continue };
            if res >= RESIDUAL_TOL {
                continue;
            }
            let (tr_a, tr_b, tr_ab, comm_defect, _) = trace_coords(Ansatz::LowerB, pt);
            if comm_defect > IRREDUCIBLE_MARGIN {
                found += 1;
                assert!((tr_a - tr_b).norm() < 1e-6, "trA {tr_a} vs trB {tr_b}");
                assert!((tr_ab - c(1.0, 0.0)).norm() < 1e-6, "trAB {tr_ab}");
            }
        }
        assert!(found > 10, "only {found} irreducible trefoil points converged");
    }

    #[test]
    fn corrected_family_presentation_counts_at_small_k() {
        // order-24 member: exactly one irreducible class, empty reducible
        // stratum (finite image forces complete reducibility to commute)
        let report =
            count_nonabelian_classes(&suciu::s_k(2), &SeedSpec::with_seeds(1200)).unwrap();
        assert_eq!(report.class_count, 1);
        assert!(report.reducible_nonabelian.is_empty());
        assert!(report.classes[0].residual < RESIDUAL_TOL);

        // order-360 member: two irreducible classes
        let report =
            count_nonabelian_classes(&suciu::s_k(3), &SeedSpec::with_seeds(1200)).unwrap();
        assert_eq!(report.class_count, 2);
        assert!(report.reducible_nonabelian.is_empty());
    }

    #[test]
    fn counts_are_stable_under_seed_doubling() {
        let a = count_nonabelian_classes(&suciu::s_k(2), &SeedSpec::with_seeds(600)).unwrap();
        let b = count_nonabelian_classes(&suciu::s_k(2), &SeedSpec::with_seeds(1200)).unwrap();
        assert_eq!(a.class_count, b.class_count);
    }

    #[test]
    fn distinct_classes_are_separated_well_beyond_dedup_radius() {
        let report =
            count_nonabelian_classes(&suciu::s_k(3), &SeedSpec::with_seeds(1200)).unwrap();
        for i in 0..report.classes.len() {
            for j in i + 1..report.classes.len() {
                let a = &report.classes[i];
                let b = &report.classes[j];
                let d = [
                    (a.tr_a[0] - b.tr_a[0]).hypot(a.tr_a[1] - b.tr_a[1]),
                    (a.tr_b[0] - b.tr_b[0]).hypot(a.tr_b[1] - b.tr_b[1]),
                    (a.tr_ab[0] - b.tr_ab[0]).hypot(a.tr_ab[1] - b.tr_ab[1]),
                ]
                .into_iter()
                .fold(0.0, f64::max);
                assert!(d > 10.0 * DEDUP_RADIUS, "classes {i} and {j} nearly collide: {d}");
            }
        }
    }

    #[test]
    fn pipeline_kernels_are_distinguished_by_class_counts() {
        // the count grows linearly along the family: k - 1 classes
        let spec = SeedSpec::with_seeds(2_000);
        let fam = distinguish_family(&[2, 3, 4, 5], &spec).unwrap();
        let counts: Vec<usize> = fam.entries.iter().map(|e| e.count).collect();
        assert_eq!(counts, vec![1, 2, 3, 4]);
        assert!(fam.all_pairwise_distinct);
        for e in &fam.entries {
            assert!(e.report.reducible_nonabelian.is_empty(), "k = {}", e.k);
        }
    }

    #[test]
    fn identical_parameters_are_indistinguishable() {
        let spec = SeedSpec::with_seeds(700);
        let fam = distinguish_family(&[2, 2], &spec).unwrap();
        assert_eq!(fam.entries[0].count, fam.entries[1].count);
        assert!(fam.all_pairwise_distinct, "equal k values are not counted as a collision");
    }

    #[test]
    fn report_serializes_with_the_agreed_shape() {
        let report =
            count_nonabelian_classes(&suciu::s_k(2), &SeedSpec::with_seeds(400)).unwrap();
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["count"], 1);
        let class = &v["classes"][0];
        assert_eq!(class["trA"].as_array().unwrap().len(), 2);
        assert_eq!(class["trB"].as_array().unwrap().len(), 2);
        assert_eq!(class["trAB"].as_array().unwrap().len(), 2);
        assert!(v["diagnostics"]["seeds_per_stratum"].is_number());
    }
}
