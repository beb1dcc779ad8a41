//! Drinfeld-center induction obstruction, computed from the fusion ring
//! alone.
//!
//! The forgetful functor `F` and its adjoint `I` are only visible through
//! multiplicities: `F(I(x)) = sum_T T x dual(T)`, and a center simple `s`
//! occurs in `I(x)` exactly `[F(s) : x]` times. The pipeline enumerates every
//! decomposition of the `I(x)` consistent with these counts and the formal
//! codegrees, then asks whether the twist traces
//! `Tr(theta_{I(1)}) = FPdim` and `Tr(theta_{I(x)}) = 0` admit roots of unity.
//!
//! Two standing assumptions: the trace formula is applied with FP
//! dimensions (pseudo-unitary spherical structure), and `I(1)` is
//! multiplicity free with one summand per codegree, which needs a
//! commutative ring.

mod twist;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::codegrees::{formal_codegrees, CodegreeSpectrum};
use crate::exactnum::QuadNum;
use crate::fusion::{Combination, FusionRing};

pub use twist::{find_witness, propagate, real_pair_sums, twist_feasible, Feasibility, Infeasibility, Rule, Twist, TwistEquation};

/// Node budget for the joint witness search of one branch.
pub const WITNESS_BUDGET: u64 = 1_000_000;

pub const ASSUMPTIONS: &[&str] = &[
    "twist traces use Frobenius-Perron dimensions (pseudo-unitary spherical structure assumed, not verified)",
    "I(1) is multiplicity free with one summand per formal codegree (commutative ring)",
    "Tr(theta_I(x)) = 0 for every non-unit x is taken as given",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CenterError {
    #[error("ring is not commutative; the unit-stage decomposition needs one summand per codegree")]
    NotCommutative,
    #[error("FP dimensions are not exact in a single quadratic field")]
    InexactDims,
    #[error("formal codegrees are not exact")]
    InexactCodegrees,
    #[error("no codegree gives a unit-dimensional summand of I(1)")]
    NonUnitEntry,
    #[error("H[1][1] = {0} but there are {1} codegrees; I(1) is not multiplicity free")]
    NotMultiplicityFree(u64, usize),
    #[error("{0}")]
    Other(String),
}

/// `fi[x][t]`: multiplicity of `t` in `F(I(x))`. By adjunction this is also
/// `H[x][t] = dim Hom(I(x), I(t))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductionProfile {
    pub fi: Vec<Vec<u64>>,
}

impl InductionProfile {
    pub fn h(&self, x: usize, y: usize) -> u64 {
        self.fi[x][y]
    }

    pub fn is_symmetric(&self) -> bool {
        let r = self.fi.len();
        (0..r).all(|x| (0..r).all(|y| self.fi[x][y] == self.fi[y][x]))
    }
}

pub fn induction_profile(ring: &FusionRing) -> InductionProfile {
    let r = ring.rank();
    let fi = (0..r)
        .map(|x| {
            (0..r)
                .map(|t| Combination::basis(r, t))
                .map(|t| {
                    let tx = ring.tensor_expand(&t, x);
                    let dual = ring.dual(t.support().next().expect("basis element"));
                    ring.tensor_expand(&tx, dual)
                })
                .fold(Combination::zero(r), |acc, c| acc.add(&c))
                .0
        })
        .collect();
    InductionProfile { fi }
}

/// Dimension `FPdim(R) / f` of the `I(1)` summand for each codegree `f`,
/// ascending.
pub fn unit_summand_dims(ring: &FusionRing, spectrum: &CodegreeSpectrum) -> Result<Vec<QuadNum>, CenterError> {
    let total = ring.fpdim().map_err(|e| CenterError::Other(e.to_string()))?;
    let total = total.exact_total().ok_or(CenterError::InexactDims)?.clone();
    let codegrees = spectrum.exact_values().ok_or(CenterError::InexactCodegrees)?;
    let mut dims = codegrees
        .iter()
        .map(|f| total.try_div(f))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CenterError::Other(e.to_string()))?;
    dims.sort_by(|a, b| crate::exactnum::quad_cmp(a, b).unwrap_or_else(|_| a.to_f64().total_cmp(&b.to_f64())));
    if !dims.first().is_some_and(QuadNum::is_one) {
        return Err(CenterError::NonUnitEntry);
    }
    Ok(dims)
}

// All quantities here live in the field of the FP dimensions.
fn add(a: &QuadNum, b: &QuadNum) -> QuadNum {
    a.try_add(b).expect("single quadratic field")
}

fn mul(a: &QuadNum, b: &QuadNum) -> QuadNum {
    a.try_mul(b).expect("single quadratic field")
}

/// Exact FP dimension of a combination.
fn fpdim_of(dims: &[QuadNum], v: &[u64]) -> QuadNum {
    v.iter().zip(dims).fold(QuadNum::zero(), |acc, (&c, d)| add(&acc, &d.scale_int(c as i64)))
}

/// All vectors `v <= bound` (componentwise) with `v[0] = 1` and
/// `FPdim(v) = dim`, in decreasing lexicographic order.
fn images_with_dim(dims: &[QuadNum], bound: &[u64], dim: &QuadNum) -> Vec<Vec<u64>> {
    let r = bound.len();
    let mut out = Vec::new();
    let mut v = vec![0u64; r];
    v[0] = 1;
    fn rec(k: usize, v: &mut Vec<u64>, bound: &[u64], dims: &[QuadNum], dim: &QuadNum, out: &mut Vec<Vec<u64>>) {
        if k == v.len() {
            if fpdim_of(dims, v) == *dim {
                out.push(v.clone());
            }
            return;
        }
        for c in (0..=bound[k]).rev() {
            v[k] = c;
            // dims are >= 1, so overshooting only grows
            if (fpdim_of(dims, v).try_sub(dim)).map(|d| !d.is_positive()).unwrap_or(true) {
                rec(k + 1, v, bound, dims, dim, out);
            }
        }
        v[k] = 0;
    }
    if bound[0] >= 1 {
        rec(1, &mut v, bound, dims, dim, &mut out);
    }
    out
}

/// Every assignment of forgetful images to the summands of `I(1)`: each
/// image contains the unit once, has the summand's dimension, and the
/// images add up to `F(I(1))`. Summands of equal dimension get images in
/// decreasing lexicographic order.
pub fn solve_forgetful_images(
    ring: &FusionRing,
    profile: &InductionProfile,
    summand_dims: &[QuadNum],
) -> Result<Vec<Vec<Combination>>, CenterError> {
    let dims = ring.fpdim().map_err(|e| CenterError::Other(e.to_string()))?.exact_dims().ok_or(CenterError::InexactDims)?;
    let mut out = Vec::new();
    fn rec(
        k: usize,
        remaining: &[u64],
        chosen: &mut Vec<Vec<u64>>,
        dims: &[QuadNum],
        sdims: &[QuadNum],
        out: &mut Vec<Vec<Combination>>,
    ) {
        if k == sdims.len() {
            if remaining.iter().all(|&c| c == 0) {
                out.push(chosen.iter().cloned().map(Combination).collect());
            }
            return;
        }
        for v in images_with_dim(dims, remaining, &sdims[k]) {
            if k > 0 && sdims[k - 1] == sdims[k] && v > chosen[k - 1] {
                continue;
            }
            let rest: Vec<u64> = remaining.iter().zip(&v).map(|(a, b)| a - b).collect();
            chosen.push(v);
            rec(k + 1, &rest, chosen, dims, sdims, out);
            chosen.pop();
        }
    }
    rec(0, &profile.fi[0], &mut Vec::new(), &dims, summand_dims, &mut out);
    Ok(out)
}

/// A simple object of the center, known through its forgetful image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterSummand {
    pub id: String,
    pub fdim: QuadNum,
    pub image: Combination,
    /// `appears_in[x]` is the multiplicity in `I(x)`, equal to `image[x]`.
    pub appears_in: Vec<u64>,
}

/// `I(stage) = sum m * summand`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub stage: usize,
    pub parts: Vec<(String, u64)>,
}

/// A complete, combinatorially consistent assignment of summands to every
/// induced object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub summands: Vec<CenterSummand>,
    pub decompositions: Vec<Decomposition>,
}

impl Branch {
    fn summand(&self, id: &str) -> &CenterSummand {
        self.summands.iter().find(|s| s.id == id).expect("known summand")
    }

    /// The trace equation of `I(stage)`; the center unit enters `known`.
    pub fn equation(&self, stage: usize, target: QuadNum) -> TwistEquation {
        let d = self.decompositions.iter().find(|d| d.stage == stage).expect("decomposed stage");
        let mut known = QuadNum::zero();
        let mut terms = Vec::new();
        for (id, m) in &d.parts {
            let c = self.summand(id).fdim.scale_int(*m as i64);
            if id == UNIT_ID {
                known = add(&known, &c);
            } else {
                terms.push((c, id.clone()));
            }
        }
        TwistEquation { stage, terms, known, target }
    }

    /// `sum fdim^2` over all summands.
    pub fn dim_square_total(&self) -> QuadNum {
        self.summands.iter().fold(QuadNum::zero(), |acc, s| add(&acc, &mul(&s.fdim, &s.fdim)))
    }
}

pub const UNIT_ID: &str = "s0.0";

/// The ways new summands can complete `I(x)`, each a list of
/// `(multiplicity, image)`; `Err` explains a combinatorial dead end.
fn stage_options(branch: &Branch, profile: &InductionProfile, x: usize) -> Result<Vec<Vec<(u64, Vec<u64>)>>, String> {
    let r = profile.fi.len();
    let mut rem: Vec<i64> = profile.fi[x].iter().map(|&c| c as i64).collect();
    for s in &branch.summands {
        let m = s.image.get(x) as i64;
        for (t, c) in rem.iter_mut().enumerate() {
            *c -= m * s.image.get(t) as i64;
        }
    }
    if let Some(t) = rem.iter().position(|&c| c < 0) {
        return Err(format!("known summands of I({x}) exceed F(I({x})) at basis element {t}"));
    }
    if let Some(t) = (0..x).find(|&t| rem[t] != 0) {
        return Err(format!("I({x}) needs a new summand whose image meets the earlier basis element {t}"));
    }
    let rem: Vec<u64> = rem.into_iter().map(|c| c as u64).collect();
    if rem[x] == 0 {
        return if rem.iter().all(|&c| c == 0) {
            Ok(vec![vec![]])
        } else {
            Err(format!("F(I({x})) has a remainder with no coefficient at {x}"))
        };
    }
    let mut out = Vec::new();
    for part in square_partitions(rem[x]) {
        let mut tails: Vec<Vec<u64>> = Vec::new();
        tail_choices(&part, 0, &rem[x + 1..], &mut tails, &mut |tails| {
            out.push(
                part.iter()
                    .zip(tails)
                    .map(|(&m, tail)| {
                        let mut v = vec![0u64; r];
                        v[x] = m;
                        v[x + 1..].copy_from_slice(tail);
                        (m, v)
                    })
                    .collect(),
            );
        });
    }
    Ok(out)
}

/// Non-increasing sequences `m_1 >= m_2 >= ...` with `sum m_k^2 = n`, in
/// decreasing lexicographic order.
pub(crate) fn square_partitions(n: u64) -> Vec<Vec<u64>> {
    fn rec(n: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for m in (1..=max).rev() {
            if m * m <= n {
                cur.push(m);
                rec(n - m * m, m, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    let max = (n as f64).sqrt() as u64 + 1;
    rec(n, max, &mut Vec::new(), &mut out);
    out
}

/// Tails `t_k` with `sum_k m_k t_k = rem`; consecutive equal multiplicities
/// get non-increasing tails.
fn tail_choices(part: &[u64], k: usize, rem: &[u64], chosen: &mut Vec<Vec<u64>>, f: &mut dyn FnMut(&[Vec<u64>])) {
    if k == part.len() {
        if rem.iter().all(|&c| c == 0) {
            f(chosen);
        }
        return;
    }
    let m = part[k];
    let bound: Vec<u64> = rem.iter().map(|&c| c / m).collect();
    let mut t = vec![0u64; rem.len()];
    // enumerate all t <= bound in decreasing lexicographic order
    fn each(i: usize, t: &mut Vec<u64>, bound: &[u64], g: &mut dyn FnMut(&[u64])) {
        if i == t.len() {
            g(t);
            return;
        }
        for c in (0..=bound[i]).rev() {
            t[i] = c;
            each(i + 1, t, bound, g);
        }
        t[i] = 0;
    }
    let mut cands = Vec::new();
    each(0, &mut t, &bound, &mut |t| cands.push(t.to_vec()));
    for t in cands {
        if k > 0 && part[k - 1] == m && t > chosen[k - 1] {
            continue;
        }
        // the last summand must absorb everything
        if k + 1 == part.len() && rem.iter().zip(&t).any(|(&c, &x)| c != m * x) {
            continue;
        }
        let rest: Vec<u64> = rem.iter().zip(&t).map(|(&c, &x)| c - m * x).collect();
        chosen.push(t);
        tail_choices(part, k + 1, &rest, chosen, f);
        chosen.pop();
    }
}

/// Adds the option's new summands and the decomposition of `I(x)`.
fn apply_option(branch: &Branch, dims: &[QuadNum], x: usize, option: &[(u64, Vec<u64>)]) -> Branch {
    let mut b = branch.clone();
    let mut parts: Vec<(String, u64)> =
        branch.summands.iter().filter(|s| s.image.get(x) > 0).map(|s| (s.id.clone(), s.image.get(x))).collect();
    for (k, (m, v)) in option.iter().enumerate() {
        let id = format!("s{x}.{k}");
        b.summands.push(CenterSummand { id: id.clone(), fdim: fpdim_of(dims, v), image: Combination(v.clone()), appears_in: v.clone() });
        parts.push((id, *m));
    }
    b.decompositions.push(Decomposition { stage: x, parts });
    b
}

fn unit_branch(dims: &[QuadNum], images: &[Combination]) -> Branch {
    let summands: Vec<CenterSummand> = images
        .iter()
        .enumerate()
        .map(|(k, v)| CenterSummand { id: format!("s0.{k}"), fdim: fpdim_of(dims, &v.0), image: v.clone(), appears_in: v.0.clone() })
        .collect();
    let parts = summands.iter().map(|s| (s.id.clone(), 1)).collect();
    Branch { summands, decompositions: vec![Decomposition { stage: 0, parts }] }
}

/// Every complete decomposition branch, without twist pruning. Stages run
/// in basis order, options in decreasing lexicographic order.
pub fn decomposition_branches(ring: &FusionRing, profile: &InductionProfile, unit_images: &[Combination]) -> Vec<Branch> {
    let Some(dims) = ring.fpdim().ok().and_then(|d| d.exact_dims()) else { return vec![] };
    let mut out = Vec::new();
    fn rec(b: Branch, x: usize, dims: &[QuadNum], profile: &InductionProfile, out: &mut Vec<Branch>) {
        if x == profile.fi.len() {
            out.push(b);
            return;
        }
        if let Ok(opts) = stage_options(&b, profile, x) {
            for o in opts {
                rec(apply_option(&b, dims, x, &o), x + 1, dims, profile, out);
            }
        }
    }
    rec(unit_branch(&dims, unit_images), 1, &dims, profile, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Obstructed,
    Undecided,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Obstructed => "obstructed",
            Verdict::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A trace equation has no root-of-unity solution.
    Twist(Infeasibility),
    /// No decomposition of the next induced object is consistent.
    Combinatorial { reason: String },
    /// `sum fdim^2` differs from `FPdim^2`.
    Dimension { total: QuadNum, expected: QuadNum },
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Twist(w) => {
                write!(f, "{}: {} [{}]; {}", w.rule, w.equation, w.equation.legend(), w.detail)
            }
            Witness::Combinatorial { reason } => write!(f, "combinatorial: {reason}"),
            Witness::Dimension { total, expected } => write!(f, "dimension sum {total} != {expected}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum BranchOutcome {
    Feasible { assignment: Vec<(String, Twist)> },
    /// Rejected while decomposing `I(stage)`.
    Infeasible { stage: usize, witness: Witness },
    Unknown { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchReport {
    /// Decompositions fixed so far; complete unless the branch was cut.
    pub branch: Branch,
    pub equations: Vec<TwistEquation>,
    pub outcome: BranchOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub ring: String,
    pub verdict: Verdict,
    pub assumptions: Vec<String>,
    pub diagnostics: Vec<String>,
    pub profile: InductionProfile,
    pub codegrees: Option<CodegreeSpectrum>,
    pub unit_dims: Vec<QuadNum>,
    pub fpdim: Option<QuadNum>,
    pub branches: Vec<BranchReport>,
    /// Dimensions of the center simples in the first passing branch.
    pub center_dims: Option<Vec<QuadNum>>,
    pub dim_square_total: Option<QuadNum>,
}

impl ObstructionReport {
    pub fn passing(&self) -> Option<&BranchReport> {
        self.branches.iter().find(|b| matches!(b.outcome, BranchOutcome::Feasible { .. }))
    }

    pub fn rejected(&self) -> impl Iterator<Item = &BranchReport> {
        self.branches.iter().filter(|b| matches!(b.outcome, BranchOutcome::Infeasible { .. }))
    }
}

/// Runs the whole pipeline.
pub fn obstruct(ring: &FusionRing) -> ObstructionReport {
    let profile = induction_profile(ring);
    let mut report = ObstructionReport {
        ring: ring.name().to_string(),
        verdict: Verdict::Undecided,
        assumptions: ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
        diagnostics: vec![],
        profile: profile.clone(),
        codegrees: None,
        unit_dims: vec![],
        fpdim: None,
        branches: vec![],
        center_dims: None,
        dim_square_total: None,
    };
    if let Err(e) = run(ring, &profile, &mut report) {
        report.diagnostics.push(e.to_string());
        report.verdict = Verdict::Undecided;
    }
    report
}

fn run(ring: &FusionRing, profile: &InductionProfile, report: &mut ObstructionReport) -> Result<(), CenterError> {
    let violations = ring.verify_axioms();
    if let Some(v) = violations.first() {
        return Err(CenterError::Other(format!("invalid ring: {v}")));
    }
    if !ring.is_commutative() {
        return Err(CenterError::NotCommutative);
    }
    let fp = ring.fpdim().map_err(|e| CenterError::Other(e.to_string()))?;
    let dims = fp.exact_dims().ok_or(CenterError::InexactDims)?;
    let total = fp.exact_total().ok_or(CenterError::InexactDims)?.clone();
    report.fpdim = Some(total.clone());
    let spectrum = formal_codegrees(ring).map_err(|e| CenterError::Other(e.to_string()))?;
    report.codegrees = Some(spectrum.clone());
    let sdims = unit_summand_dims(ring, &spectrum)?;
    report.unit_dims = sdims.clone();
    if profile.h(0, 0) != sdims.len() as u64 {
        return Err(CenterError::NotMultiplicityFree(profile.h(0, 0), sdims.len()));
    }
    let solutions = solve_forgetful_images(ring, profile, &sdims)?;
    if solutions.is_empty() {
        let branch = Branch { summands: vec![], decompositions: vec![] };
        report.branches.push(BranchReport {
            branch,
            equations: vec![],
            outcome: BranchOutcome::Infeasible {
                stage: 0,
                witness: Witness::Combinatorial { reason: "no forgetful images for the summands of I(1)".into() },
            },
        });
    }
    let expected = mul(&total, &total);
    for images in solutions {
        let b = unit_branch(&dims, &images);
        let eq = b.equation(0, total.clone());
        descend(b, vec![eq], HashMap::new(), 0, &dims, profile, &expected, &mut report.branches);
    }
    report.verdict = if report.passing().is_some() {
        Verdict::Pass
    } else if report.branches.iter().all(|b| matches!(b.outcome, BranchOutcome::Infeasible { .. })) {
        Verdict::Obstructed
    } else {
        Verdict::Undecided
    };
    if let Some(p) = report.passing().map(|p| p.branch.clone()) {
        report.center_dims = Some(p.summands.iter().map(|s| s.fdim.clone()).collect());
        report.dim_square_total = Some(p.dim_square_total());
    }
    Ok(())
}

/// Checks the equations of stages `0..=x` and continues with `x + 1`.
#[allow(clippy::too_many_arguments)]
fn descend(
    b: Branch,
    eqs: Vec<TwistEquation>,
    mut fixed: HashMap<String, i8>,
    x: usize,
    dims: &[QuadNum],
    profile: &InductionProfile,
    expected: &QuadNum,
    out: &mut Vec<BranchReport>,
) {
    if let Err(w) = propagate(&eqs, &mut fixed) {
        out.push(BranchReport { branch: b, equations: eqs, outcome: BranchOutcome::Infeasible { stage: x, witness: Witness::Twist(w) } });
        return;
    }
    let next = x + 1;
    if next == profile.fi.len() {
        let total = b.dim_square_total();
        let outcome = if total != *expected {
            BranchOutcome::Infeasible { stage: x, witness: Witness::Dimension { total, expected: expected.clone() } }
        } else {
            match find_witness(&eqs, &fixed, WITNESS_BUDGET) {
                Some(assignment) => BranchOutcome::Feasible { assignment },
                None => BranchOutcome::Unknown {
                    reason: "local rules found no contradiction and the witness search found no assignment".into(),
                },
            }
        };
        out.push(BranchReport { branch: b, equations: eqs, outcome });
        return;
    }
    match stage_options(&b, profile, next) {
        Err(reason) => out.push(BranchReport {
            branch: b,
            equations: eqs,
            outcome: BranchOutcome::Infeasible { stage: next, witness: Witness::Combinatorial { reason } },
        }),
        Ok(opts) => {
            for o in opts {
                let nb = apply_option(&b, dims, next, &o);
                let mut neqs = eqs.clone();
                neqs.push(nb.equation(next, QuadNum::zero()));
                descend(nb, neqs, fixed.clone(), next, dims, profile, expected, out);
            }
        }
    }
}
