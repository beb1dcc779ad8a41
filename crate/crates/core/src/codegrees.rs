//! Formal codegrees: the eigenvalues of `sum_i L_i L_{dual i}`.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{char_poly, factor_small, roots_as_quadnum, ExactError, IntPoly, QuadNum, RealNumber};
use crate::fusion::FusionRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodegreeError {
    #[error("codegree matrix is not symmetric: sum L_i L_dual(i) differs from sum L_i L_i^T at ({0}, {1})")]
    DualTranspose(usize, usize),
    #[error("codegree {0} is not positive")]
    NonPositive(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The multiset of formal codegrees with the polynomial they came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodegreeSpectrum {
    /// Distinct values in decreasing order with their multiplicities.
    pub values: Vec<(RealNumber, usize)>,
    #[serde(serialize_with = "crate::format::serialize_display")]
    pub source_poly: IntPoly,
    pub exact: bool,
}

impl CodegreeSpectrum {
    /// The values repeated by multiplicity, decreasing.
    pub fn flat(&self) -> Vec<RealNumber> {
        self.values.iter().flat_map(|(v, m)| std::iter::repeat_n(v.clone(), *m)).collect()
    }

    pub fn exact_values(&self) -> Option<Vec<QuadNum>> {
        self.flat().iter().map(|v| v.as_exact().cloned()).collect()
    }

    /// Renders `v (xm), ...` in the canonical number grammar.
    pub fn render(&self) -> String {
        self.values
            .iter()
            .map(|(v, m)| if *m == 1 { v.to_string() } else { format!("{v} (x{m})") })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn mat_mul_acc(acc: &mut [Vec<i64>], a: &[Vec<i64>], b: &[Vec<i64>]) {
    let r = acc.len();
    for i in 0..r {
        for k in 0..r {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..r {
                acc[i][j] += a[i][k] * b[k][j];
            }
        }
    }
}

fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..m.len()).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

/// `sum_i L_i L_{dual i}`, cross-checked against `sum_i L_i L_i^T`.
pub fn codegree_matrix(ring: &FusionRing) -> Result<Vec<Vec<i64>>, CodegreeError> {
    let r = ring.rank();
    let mut via_dual = vec![vec![0i64; r]; r];
    let mut via_transpose = vec![vec![0i64; r]; r];
    for i in 0..r {
        let l = ring.left_matrix(i);
        mat_mul_acc(&mut via_dual, &l, &ring.left_matrix(ring.dual(i)));
        mat_mul_acc(&mut via_transpose, &l, &transpose(&l));
    }
    for a in 0..r {
        for b in 0..r {
            if via_dual[a][b] != via_transpose[a][b] || via_dual[a][b] != via_dual[b][a] {
                return Err(CodegreeError::DualTranspose(a, b));
            }
        }
    }
    Ok(via_dual)
}

pub fn formal_codegrees(ring: &FusionRing) -> Result<CodegreeSpectrum, CodegreeError> {
    let m = codegree_matrix(ring)?;
    let p = char_poly(&m)?;
    let f = factor_small(&p);
    let roots = roots_as_quadnum(&f)?;
    let mut values: Vec<(RealNumber, usize)> = Vec::new();
    for v in roots {
        if v.cmp_value(&RealNumber::Exact(QuadNum::zero())) != Ordering::Greater {
            return Err(CodegreeError::NonPositive(v.to_string()));
        }
        match values.last_mut() {
            Some((w, k)) if *w == v => *k += 1,
            _ => values.push((v, 1)),
        }
    }
    let exact = values.iter().all(|(v, _)| v.is_exact());
    Ok(CodegreeSpectrum { values, source_poly: p, exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use nalgebra::{DMatrix, SymmetricEigen};
    use rand::{Rng, SeedableRng};

    fn q(s: &str) -> RealNumber {
        RealNumber::Exact(s.parse().unwrap())
    }

    /// Multiply-accumulate straight from the structure constants.
    fn oracle_matrix(r: &FusionRing) -> Vec<Vec<i64>> {
        let n = r.rank();
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        // (L_i)[a][c] = N[i][c][a], (L_i^T)[c][b] = N[i][c][b]
                        m[a][b] += r.n(i, c, a) as i64 * r.n(i, c, b) as i64;
                    }
                }
            }
        }
        m
    }

    #[test]
    fn matrices() {
        assert_eq!(codegree_matrix(&catalog::z2()).unwrap(), vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(codegree_matrix(&catalog::fib()).unwrap(), vec![vec![2, 1], vec![1, 3]]);
        for r in catalog::all() {
            assert_eq!(codegree_matrix(&r).unwrap(), oracle_matrix(&r), "{}", r.name());
        }
        let k = codegree_matrix(&catalog::k12()).unwrap();
        assert_eq!((0..4).map(|i| k[i][i]).sum::<i64>(), 29);
    }

    #[test]
    fn fib_z2_spectrum() {
        let s = formal_codegrees(&catalog::fib_z2()).unwrap();
        assert_eq!(s.values, vec![(q("5+1*sqrt(5)"), 2), (q("5-1*sqrt(5)"), 2)]);
        assert_eq!(s.render(), "5+1*sqrt(5) (x2), 5-1*sqrt(5) (x2)");
        assert_eq!(s.source_poly, IntPoly::new(vec![20, -10, 1]).mul(&IntPoly::new(vec![20, -10, 1])));
        assert!(s.exact);
    }

    #[test]
    fn k12_spectrum() {
        let s = formal_codegrees(&catalog::k12()).unwrap();
        assert_eq!(s.values, vec![(q("12"), 2), (q("3"), 1), (q("2"), 1)]);
        assert_eq!(s.source_poly, IntPoly::from_roots(&[12, 12, 3, 2]));
    }

    #[test]
    fn trivial_spectrum() {
        let r = FusionRing::new("trivial", vec!["1".into()], vec![0], vec![1]).unwrap();
        assert_eq!(formal_codegrees(&r).unwrap().values, vec![(q("1"), 1)]);
    }

    #[test]
    fn largest_codegree_is_fpdim() {
        for r in catalog::all() {
            let s = formal_codegrees(&r).unwrap();
            assert_eq!(s.values[0].0, r.fpdim().unwrap().total, "{}", r.name());
            assert_eq!(s.flat().len(), r.rank());
        }
    }

    #[test]
    fn invariant_under_relabeling() {
        let r = catalog::k12();
        for p in [[0, 2, 1, 3], [0, 3, 2, 1], [0, 1, 3, 2]] {
            assert_eq!(formal_codegrees(&r.permute(&p)).unwrap(), formal_codegrees(&r).unwrap());
        }
    }

    /// Characters of a commutative self-dual ring from joint eigenvectors of
    /// the (symmetric) left-multiplication matrices; `f = sum_i chi(i)^2`.
    fn character_codegrees(r: &FusionRing, rng: &mut impl Rng) -> Vec<f64> {
        let n = r.rank();
        let l: Vec<DMatrix<f64>> =
            (0..n).map(|i| DMatrix::from_fn(n, n, |a, b| r.n(i, b, a) as f64)).collect();
        let mut generic = DMatrix::zeros(n, n);
        for m in &l {
            generic += m * rng.random_range(0.5..1.5);
        }
        let eig = SymmetricEigen::new(generic);
        let mut out: Vec<f64> = (0..n)
            .map(|c| {
                let v = eig.eigenvectors.column(c);
                (0..n).map(|i| (v.transpose() * &l[i] * v)[(0, 0)].powi(2)).sum::<f64>() / v.norm_squared().powi(2)
            })
            .collect();
        out.sort_by(|a, b| b.partial_cmp(a).unwrap());
        out
    }

    #[test]
    fn character_oracle_agrees() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for r in catalog::all() {
            assert!(r.is_self_dual() && r.is_commutative());
            let want = character_codegrees(&r, &mut rng);
            let got: Vec<f64> = formal_codegrees(&r).unwrap().flat().iter().map(|v| v.to_f64()).collect();
            for (a, b) in want.iter().zip(&got) {
                assert!((a - b).abs() < 1e-9, "{}: {want:?} vs {got:?}", r.name());
            }
        }
    }
}
