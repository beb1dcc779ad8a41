//! Fusion rings: data model, axioms and ring-level algebra.
//!
//! Basis indices are the identity of simple objects; names are for display
//! only. Index 0 is always the unit.

mod fpdim;
mod grading;
mod iso;
mod pointed;
mod product;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::exactnum::ExactError;

pub use fpdim::FpDims;
pub use grading::{Grading, SubBasis};
pub use iso::Permutation;
pub use pointed::{InvertibleGroup, Stabilizer};

/// Largest rank accepted by the permutation-based operations.
pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("rank must be positive")]
    EmptyRing,
    #[error("expected {expected} {what}, found {found}")]
    Shape {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("basis label {0:?} is used twice")]
    DuplicateName(String),
    #[error("dual is not an involution fixing the unit: {0:?}")]
    BadDual(Vec<usize>),
    #[error("ring violates {} fusion-ring identities, first: {}", .0.len(), .0[0])]
    Invalid(Vec<Violation>),
    #[error("universal grading is inconsistent: {0}")]
    GradingInconsistent(String),
    #[error("index {0} out of range")]
    Index(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A failed fusion-ring identity, with the index tuple where it fails.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "identity", rename_all = "snake_case")]
pub enum Violation {
    /// `N[0][j][k] = d_jk` or `N[i][0][k] = d_ik` fails.
    UnitLaw { i: usize, j: usize, k: usize },
    /// `N[i][j][0] = d_{j, dual i}` fails.
    UnitInProduct { i: usize, j: usize },
    /// `N[i][j][k] = N[dual j][dual i][dual k]` fails.
    DualSymmetry { i: usize, j: usize, k: usize },
    /// `N[i][j][k] = N[dual i][k][j]` fails.
    Frobenius { i: usize, j: usize, k: usize },
    /// `(i j) k` and `i (j k)` disagree in the coefficient of `l`.
    Associativity { i: usize, j: usize, k: usize, l: usize, left: u64, right: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::UnitLaw { i, j, k } => write!(f, "unit law at N[{i}][{j}][{k}]"),
            Violation::UnitInProduct { i, j } => {
                write!(f, "duality N[i][j][0] = [j = dual(i)] at (i,j) = ({i},{j})")
            }
            Violation::DualSymmetry { i, j, k } => {
                write!(f, "[X,Y]=[X*,Y*]: N[{i}][{j}][{k}] != N[dual {j}][dual {i}][dual {k}]")
            }
            Violation::Frobenius { i, j, k } => {
                write!(f, "Frobenius reciprocity: N[{i}][{j}][{k}] != N[dual {i}][{k}][{j}]")
            }
            Violation::Associativity { i, j, k, l, left, right } => write!(
                f,
                "associativity at (i,j,k,l) = ({i},{j},{k},{l}): ((i j) k)_l = {left}, (i (j k))_l = {right}"
            ),
        }
    }
}

/// A based ring with a duality involution: `N[i][j][k]` is the multiplicity
/// of basis element `k` in `i (x) j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct FusionRing {
    name: String,
    names: Vec<String>,
    dual: Vec<usize>,
    n: Vec<u32>,
}

impl FusionRing {
    /// Builds a ring after shape checks only; see [`FusionRing::validate`].
    pub fn new(name: impl Into<String>, names: Vec<String>, dual: Vec<usize>, tensor: Vec<u32>) -> Result<Self, RingError> {
        let r = names.len();
        if r == 0 {
            return Err(RingError::EmptyRing);
        }
        if dual.len() != r {
            return Err(RingError::Shape { what: "dual entries", expected: r, found: dual.len() });
        }
        if tensor.len() != r * r * r {
            return Err(RingError::Shape { what: "tensor entries", expected: r * r * r, found: tensor.len() });
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(RingError::DuplicateName(n.clone()));
            }
        }
        if dual[0] != 0 || dual.iter().any(|&d| d >= r) || (0..r).any(|i| dual[dual[i]] != i) {
            return Err(RingError::BadDual(dual));
        }
        Ok(FusionRing { name: name.into(), names, dual, n: tensor })
    }

    /// Builds a ring from a coefficient function; unit rows are filled in.
    pub fn from_fn(
        name: impl Into<String>,
        names: Vec<String>,
        dual: Vec<usize>,
        f: impl Fn(usize, usize, usize) -> u32,
    ) -> Result<Self, RingError> {
        let r = names.len();
        let mut t = vec![0u32; r * r * r];
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    t[(i * r + j) * r + k] = if i == 0 {
                        (j == k) as u32
                    } else if j == 0 {
                        (i == k) as u32
                    } else {
                        f(i, j, k)
                    };
                }
            }
        }
        FusionRing::new(name, names, dual, t)
    }

    /// Runs [`FusionRing::verify_axioms`] and rejects the ring on failure.
    pub fn validate(self) -> Result<Self, RingError> {
        let v = self.verify_axioms();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(RingError::Invalid(v))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    #[inline]
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        let r = self.rank();
        self.n[(i * r + j) * r + k]
    }

    /// The coefficient vector of `i (x) j`.
    pub fn product(&self, i: usize, j: usize) -> &[u32] {
        let r = self.rank();
        &self.n[(i * r + j) * r..(i * r + j + 1) * r]
    }

    pub fn tensor(&self) -> &[u32] {
        &self.n
    }

    pub fn is_self_dual(&self) -> bool {
        self.dual.iter().enumerate().all(|(i, &d)| i == d)
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Matrix of left multiplication by `i`: column `j` holds `i (x) j`.
    pub fn left_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let r = self.rank();
        (0..r).map(|k| (0..r).map(|j| self.n(i, j, k) as i64).collect()).collect()
    }

    pub fn max_coeff(&self) -> u32 {
        self.n.iter().copied().max().unwrap_or(0)
    }

    /// Checks the unit law, the duality identities and associativity.
    pub fn verify_axioms(&self) -> Vec<Violation> {
        let r = self.rank();
        let d = &self.dual;
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    if self.n(0, j, k) != (j == k) as u32 && i == 0 {
                        out.push(Violation::UnitLaw { i: 0, j, k });
                    }
                    if j == 0 && self.n(i, 0, k) != (i == k) as u32 {
                        out.push(Violation::UnitLaw { i, j: 0, k });
                    }
                }
                if self.n(i, j, 0) != (j == d[i]) as u32 {
                    out.push(Violation::UnitInProduct { i, j });
                }
                for k in 0..r {
                    if self.n(i, j, k) != self.n(d[j], d[i], d[k]) {
                        out.push(Violation::DualSymmetry { i, j, k });
                    }
                    if self.n(i, j, k) != self.n(d[i], k, j) {
                        out.push(Violation::Frobenius { i, j, k });
                    }
                }
            }
        }
        out.extend(self.associativity_violations());
        out
    }

    fn associativity_violations(&self) -> Vec<Violation> {
        let r = self.rank();
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let left: u64 = (0..r).map(|m| self.n(i, j, m) as u64 * self.n(m, k, l) as u64).sum();
                        let right: u64 = (0..r).map(|m| self.n(j, k, m) as u64 * self.n(i, m, l) as u64).sum();
                        if left != right {
                            out.push(Violation::Associativity { i, j, k, l, left, right });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.verify_axioms().is_empty()
    }

    /// Relabels the basis: old element `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> FusionRing {
        let r = self.rank();
        let mut inv = vec![0; r];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let names = (0..r).map(|p| self.names[inv[p]].clone()).collect();
        let dual = (0..r).map(|p| perm[self.dual[inv[p]]]).collect();
        let mut t = vec![0u32; r * r * r];
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    t[(perm[i] * r + perm[j]) * r + perm[k]] = self.n(i, j, k);
                }
            }
        }
        FusionRing { name: self.name.clone(), names, dual, n: t }
    }

    /// Same structure constants and duality, ignoring names.
    pub fn same_structure(&self, other: &FusionRing) -> bool {
        self.dual == other.dual && self.n == other.n
    }

    /// Bilinear product of two formal combinations.
    pub fn multiply(&self, a: &Combination, b: &Combination) -> Combination {
        let r = self.rank();
        let mut out = vec![0u64; r];
        for (i, &ca) in a.0.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (j, &cb) in b.0.iter().enumerate().filter(|(_, c)| **c != 0) {
                for (k, o) in out.iter_mut().enumerate() {
                    *o += ca * cb * self.n(i, j, k) as u64;
                }
            }
        }
        Combination(out)
    }

    /// `expr (x) factor`, extended linearly.
    pub fn tensor_expand(&self, expr: &Combination, factor: usize) -> Combination {
        self.multiply(expr, &Combination::basis(self.rank(), factor))
    }

    /// Renders a combination with basis labels, e.g. `4*1 + 2*X`.
    pub fn render(&self, c: &Combination) -> String {
        let terms: Vec<String> = c
            .0
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(i, &m)| if m == 1 { self.names[i].clone() } else { format!("{m}*{}", self.names[i]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// A formal nonnegative integer combination of basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Combination(pub Vec<u64>);

impl Combination {
    pub fn zero(rank: usize) -> Self {
        Combination(vec![0; rank])
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Combination(c)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i)
    }

    pub fn add(&self, other: &Self) -> Self {
        Combination(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u64) -> Self {
        Combination(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise difference, if nonnegative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Combination)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl From<&[u32]> for Combination {
    fn from(v: &[u32]) -> Self {
        Combination(v.iter().map(|&x| x as u64).collect())
    }
}
