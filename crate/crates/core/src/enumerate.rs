//! Exhaustive search for fusion rings with bounded coefficients.
//!
//! Unknowns are the entries `N[i][j][k]` with `i, j, k` all non-unit, grouped
//! into orbits of the two Frobenius symmetries so that each orbit is one
//! variable. Associativity equations are checked as soon as every entry
//! they mention is assigned. Survivors are filtered, then deduplicated by
//! [`canonical_form`].

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::center::{obstruct, Verdict};
use crate::fusion::{FusionRing, MAX_RANK};

pub const MAX_SEARCH_RANK: usize = 5;
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;
pub const BUDGET_ENV: &str = "FUSIONRING_NODE_BUDGET";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointedFilter {
    #[default]
    Any,
    Pointed,
    NonPointed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    pub rank: usize,
    pub max_coeff: u32,
    pub require_self_dual: bool,
    pub require_nontrivial_grading: bool,
    pub pointed: PointedFilter,
    /// Drop rings with a proper fusion subring that the center obstruction
    /// rules out; such a subring cannot be the Grothendieck ring of a
    /// (pseudo-unitary) fusion subcategory.
    pub require_unobstructed_subrings: bool,
    /// Drop rings that are themselves obstructed.
    pub require_unobstructed: bool,
    pub node_budget: u64,
}

impl SearchSpec {
    pub fn new(rank: usize, max_coeff: u32) -> Self {
        SearchSpec {
            rank,
            max_coeff,
            require_self_dual: false,
            require_nontrivial_grading: false,
            pointed: PointedFilter::Any,
            require_unobstructed_subrings: false,
            require_unobstructed: false,
            node_budget: node_budget_from_env(),
        }
    }

    pub fn self_dual(mut self) -> Self {
        self.require_self_dual = true;
        self
    }

    pub fn nontrivial_grading(mut self) -> Self {
        self.require_nontrivial_grading = true;
        self
    }

    pub fn pointed(mut self, f: PointedFilter) -> Self {
        self.pointed = f;
        self
    }

    pub fn unobstructed_subrings(mut self) -> Self {
        self.require_unobstructed_subrings = true;
        self
    }

    pub fn unobstructed(mut self) -> Self {
        self.require_unobstructed = true;
        self
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.node_budget = nodes;
        self
    }

    fn accepts(&self, ring: &FusionRing) -> bool {
        let pointed_ok = match self.pointed {
            PointedFilter::Any => true,
            PointedFilter::Pointed => ring.is_pointed(),
            PointedFilter::NonPointed => !ring.is_pointed(),
        };
        pointed_ok && (!self.require_nontrivial_grading || ring.has_nontrivial_grading())
    }

    /// The obstruction filters, run only on deduplicated rings.
    fn unobstructed_ok(&self, ring: &FusionRing) -> bool {
        let obstructed = |r: &FusionRing| obstruct(r).verdict == Verdict::Obstructed;
        if self.require_unobstructed_subrings
            && ring.proper_subrings().iter().any(|s| obstructed(&ring.restrict(s).expect("closed sub-basis")))
        {
            return false;
        }
        !(self.require_unobstructed && obstructed(ring))
    }
}

/// The budget from `FUSIONRING_NODE_BUDGET`, or the default.
pub fn node_budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_NODE_BUDGET)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Variable assignments tried.
    pub nodes: u64,
    /// Complete tensors satisfying every identity.
    pub valid: u64,
    /// Valid tensors passing the filters, before deduplication.
    pub before_dedup: u64,
    /// Distinct rings removed by the obstruction filters.
    pub obstructed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub spec: SearchSpec,
    /// Canonical forms, sorted.
    pub rings: Vec<FusionRing>,
    pub stats: SearchStats,
}

impl SearchResult {
    /// The search is exhaustive only up to the coefficient bound.
    pub fn completeness(&self) -> String {
        format!("complete within bound B = {}", self.spec.max_coeff)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("rank {0} outside 1..={MAX_SEARCH_RANK}")]
    Rank(usize),
    #[error("node budget of {0} exceeded; no partial result")]
    BudgetExceeded(u64),
}

/// One representative duality per conjugacy class: `k` swapped pairs
/// `(1 2)(3 4)...` followed by fixed points.
pub fn duality_patterns(rank: usize, self_dual_only: bool) -> Vec<Vec<usize>> {
    let max_pairs = if self_dual_only { 0 } else { (rank - 1) / 2 };
    (0..=max_pairs)
        .map(|pairs| {
            let mut d: Vec<usize> = (0..rank).collect();
            for p in 0..pairs {
                d.swap(2 * p + 1, 2 * p + 2);
            }
            d
        })
        .collect()
}

type Triple = (usize, usize, usize);

/// Orbits of non-unit triples under the Frobenius symmetries.
fn orbits(dual: &[usize]) -> Vec<Vec<Triple>> {
    let r = dual.len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for i in 1..r {
        for j in 1..r {
            for k in 1..r {
                if seen.contains(&(i, j, k)) {
                    continue;
                }
                let mut orbit = BTreeSet::from([(i, j, k)]);
                let mut stack = vec![(i, j, k)];
                while let Some((a, b, c)) = stack.pop() {
                    for t in [(dual[b], dual[a], dual[c]), (dual[a], c, b)] {
                        if orbit.insert(t) {
                            stack.push(t);
                        }
                    }
                }
                seen.extend(orbit.iter().copied());
                out.push(orbit.into_iter().collect());
            }
        }
    }
    // small indices first so associativity closes early; diagonals first within
    let key = |o: &Vec<Triple>| {
        let (a, b, c) = o[0];
        (a.max(b).max(c), !o.iter().any(|&(x, y, _)| x == y), o[0])
    };
    out.sort_by_key(key);
    out
}

struct Search {
    r: usize,
    bound: u32,
    orbits: Vec<Vec<Triple>>,
    /// Associativity quadruples to check right after variable `v` is set.
    checks: Vec<Vec<[usize; 4]>>,
    t: Vec<u32>,
    nodes: u64,
    budget: u64,
}

impl Search {
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.r + j) * self.r + k
    }

    fn assoc_holds(&self, [i, j, k, l]: [usize; 4]) -> bool {
        let r = self.r;
        let (mut lhs, mut rhs) = (0u64, 0u64);
        for m in 0..r {
            lhs += self.t[self.idx(i, j, m)] as u64 * self.t[self.idx(m, k, l)] as u64;
            rhs += self.t[self.idx(j, k, m)] as u64 * self.t[self.idx(i, m, l)] as u64;
        }
        lhs == rhs
    }

    fn run(&mut self, v: usize, f: &mut dyn FnMut(&[u32])) -> Result<(), EnumerateError> {
        if v == self.orbits.len() {
            f(&self.t);
            return Ok(());
        }
        for c in 0..=self.bound {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(EnumerateError::BudgetExceeded(self.budget));
            }
            for &(i, j, k) in &self.orbits[v] {
                let x = self.idx(i, j, k);
                self.t[x] = c;
            }
            if self.checks[v].iter().all(|&q| self.assoc_holds(q)) {
                self.run(v + 1, f)?;
            }
        }
        Ok(())
    }
}

/// Calls `f` on every valid tensor with the given duality and bound.
/// Returns the number of nodes used.
pub(crate) fn search_tensors(
    dual: &[usize],
    bound: u32,
    budget: u64,
    f: &mut dyn FnMut(&[u32]),
) -> Result<u64, EnumerateError> {
    let r = dual.len();
    let orbits = orbits(dual);
    let mut var_of = vec![usize::MAX; r * r * r];
    for (v, o) in orbits.iter().enumerate() {
        for &(i, j, k) in o {
            var_of[(i * r + j) * r + k] = v;
        }
    }
    let mut checks = vec![Vec::new(); orbits.len()];
    for i in 1..r {
        for j in 1..r {
            for k in 1..r {
                for l in 1..r {
                    let mut last = None;
                    for m in 1..r {
                        for (a, b, c) in [(i, j, m), (m, k, l), (j, k, m), (i, m, l)] {
                            let v = var_of[(a * r + b) * r + c];
                            last = last.max(Some(v));
                        }
                    }
                    if let Some(v) = last {
                        checks[v].push([i, j, k, l]);
                    }
                }
            }
        }
    }
    let mut t = vec![0u32; r * r * r];
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let fixed = if i == 0 {
                    (j == k) as u32
                } else if j == 0 {
                    (i == k) as u32
                } else if k == 0 {
                    (j == dual[i]) as u32
                } else {
                    continue;
                };
                t[(i * r + j) * r + k] = fixed;
            }
        }
    }
    let mut s = Search { r, bound, orbits, checks, t, nodes: 0, budget };
    s.run(0, f)?;
    Ok(s.nodes)
}

fn basis_names(r: usize) -> Vec<String> {
    (0..r).map(|i| if i == 0 { "1".to_string() } else { format!("x{i}") }).collect()
}

/// Key compared by [`canonical_form`]: the duality, then the tensor.
fn form_key(ring: &FusionRing) -> (Vec<usize>, Vec<u32>) {
    (ring.duals().to_vec(), ring.tensor().to_vec())
}

/// Visits every permutation of `0..r` fixing 0.
fn for_each_unit_fixing(r: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(k: usize, p: &mut Vec<usize>, used: &mut Vec<bool>, f: &mut dyn FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for x in 1..p.len() {
            if !used[x] {
                used[x] = true;
                p[k] = x;
                rec(k + 1, p, used, f);
                used[x] = false;
            }
        }
    }
    let mut p = vec![0; r];
    let mut used = vec![false; r];
    used[0] = true;
    rec(1, &mut p, &mut used, f);
}

/// The relabeling with the lexicographically smallest (duality, tensor)
/// among all relabelings fixing the unit. Names become `1, x1, x2, ...`;
/// the ring name is kept.
pub fn canonical_form(ring: &FusionRing) -> FusionRing {
    assert!(ring.rank() <= MAX_RANK);
    let mut best: Option<FusionRing> = None;
    for_each_unit_fixing(ring.rank(), &mut |p| {
        let cand = ring.permute(p);
        if best.as_ref().is_none_or(|b| form_key(&cand) < form_key(b)) {
            best = Some(cand);
        }
    });
    let best = best.expect("at least the identity");
    FusionRing::new(ring.name(), basis_names(ring.rank()), best.duals().to_vec(), best.tensor().to_vec())
        .expect("relabeling keeps the shape")
}

pub fn enumerate(spec: &SearchSpec) -> Result<SearchResult, EnumerateError> {
    let r = spec.rank;
    if !(1..=MAX_SEARCH_RANK).contains(&r) {
        return Err(EnumerateError::Rank(r));
    }
    let mut stats = SearchStats::default();
    let mut found: BTreeMap<(Vec<usize>, Vec<u32>), FusionRing> = BTreeMap::new();
    for dual in duality_patterns(r, spec.require_self_dual) {
        let budget = spec.node_budget.saturating_sub(stats.nodes);
        stats.nodes += search_tensors(&dual, spec.max_coeff, budget, &mut |t| {
            let ring = FusionRing::new("enum", basis_names(r), dual.clone(), t.to_vec()).expect("well shaped");
            if !ring.is_valid() {
                return;
            }
            stats.valid += 1;
            if !spec.accepts(&ring) {
                return;
            }
            stats.before_dedup += 1;
            let c = canonical_form(&ring);
            found.entry(form_key(&c)).or_insert(c);
        })
        .map_err(|_| EnumerateError::BudgetExceeded(spec.node_budget))?;
    }
    let total = found.len();
    found.retain(|_, ring| spec.unobstructed_ok(ring));
    stats.obstructed = (total - found.len()) as u64;
    let rings = found
        .into_values()
        .enumerate()
        .map(|(k, ring)| ring.with_name(format!("rank{r}_{}", k + 1)))
        .collect();
    Ok(SearchResult { spec: spec.clone(), rings, stats })
}
