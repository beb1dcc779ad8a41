
use serde::Serialize;

use super::{FusionRing, RingError};
use num_traits::Zero;

use crate::exactnum::{char_poly, factor_small_bounded, real_roots, QuadNum, Rational, RealInterval, RealNumber};

const ENCLOSURE_BITS: u32 = 48;

/// Frobenius-Perron dimensions of the basis and of the whole ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FpDims {
    pub dims: Vec<RealNumber>,
    pub total: RealNumber,
    /// True when every entry and the total are exact quadratic values.
    pub exact: bool,
}

impl FpDims {
    /// Exact dims when they all live in one quadratic field.
    pub fn exact_dims(&self) -> Option<Vec<QuadNum>> {
        let v: Option<Vec<QuadNum>> = self.dims.iter().map(|d| d.as_exact().cloned()).collect();
        let v = v?;
        let d = v.iter().map(|q| q.radicand()).find(|&d| d != 1).unwrap_or(1);
        v.iter().all(|q| q.radicand() == 1 || q.radicand() == d).then_some(v)
    }

    pub fn exact_total(&self) -> Option<&QuadNum> {
        self.total.as_exact()
    }

    /// `dims[i] dims[j] = sum_k N[i][j][k] dims[k]`. Exact when possible,
    /// otherwise checked by enclosure overlap.
    pub fn homomorphism_holds(&self, ring: &FusionRing) -> bool {
        let r = ring.rank();
        if let Some(d) = self.exact_dims() {
            return (0..r).all(|i| {
                (0..r).all(|j| {
                    let rhs = (0..r).fold(QuadNum::zero(), |acc, k| acc + d[k].scale_int(ring.n(i, j, k) as i64));
                    &d[i] * &d[j] == rhs
                })
            });
        }
        let iv: Vec<RealInterval> = self.dims.iter().map(|d| d.enclosure(ENCLOSURE_BITS)).collect();
        (0..r).all(|i| {
            (0..r).all(|j| {
                let rhs = (0..r).fold(RealInterval::point(Rational::zero()), |acc, k| {
                    acc.add(&iv[k].scale(&Rational::from_integer(ring.n(i, j, k).into())))
                });
                iv[i].mul(&iv[j]).overlaps(&rhs)
            })
        })
    }

    /// The multiset of dims in decreasing order.
    pub fn sorted(&self) -> Vec<RealNumber> {
        let mut v = self.dims.clone();
        v.sort_by(|a, b| b.cmp_value(a));
        v
    }
}

/// Perron root of a left-multiplication matrix: its largest real eigenvalue.
pub(crate) fn perron_root(m: &[Vec<i64>]) -> Result<RealNumber, RingError> {
    let p = char_poly(m)?;
    // every eigenvalue is bounded by the largest column sum
    let bound = (0..m.len()).map(|j| m.iter().map(|row| row[j] as u128).sum::<u128>()).max().unwrap_or(0);
    let f = factor_small_bounded(&p, bound);
    let roots = real_roots(&f)?;
    Ok(roots.into_iter().next().expect("a nonnegative matrix has a real Perron root"))
}

/// Sum of squares, exact when all terms share a field.
pub(crate) fn sum_of_squares(dims: &[RealNumber]) -> RealNumber {
    sum_weighted(dims.iter().map(|d| (1, d, d)))
}

/// `sum c * x * y` over exact values when possible, else an enclosure.
pub(crate) fn sum_weighted<'a>(terms: impl Iterator<Item = (u64, &'a RealNumber, &'a RealNumber)> + Clone) -> RealNumber {
    let exact = terms.clone().try_fold(QuadNum::zero(), |acc, (c, x, y)| {
        let p = x.as_exact()?.try_mul(y.as_exact()?).ok()?;
        acc.try_add(&p.scale_int(c as i64)).ok()
    });
    match exact {
        Some(q) => RealNumber::Exact(q),
        None => RealNumber::Enclosed(terms.fold(RealInterval::point(Rational::zero()), |acc, (c, x, y)| {
            let p = x.enclosure(ENCLOSURE_BITS).mul(&y.enclosure(ENCLOSURE_BITS));
            acc.add(&p.scale(&Rational::from_integer(c.into())))
        })),
    }
}

impl FusionRing {
    /// Frobenius-Perron dimension of every basis element and of the ring.
    pub fn fpdim(&self) -> Result<FpDims, RingError> {
        let dims = (0..self.rank())
            .map(|i| if i == 0 { Ok(RealNumber::Exact(QuadNum::one())) } else { perron_root(&self.left_matrix(i)) })
            .collect::<Result<Vec<_>, _>>()?;
        let total = sum_of_squares(&dims);
        let exact = total.is_exact() && dims.iter().all(RealNumber::is_exact);
        Ok(FpDims { dims, total, exact })
    }

    /// FP dimension of a formal combination, `sum c_i d_i`.
    pub fn fpdim_of(&self, dims: &FpDims, coeffs: &[u64]) -> RealNumber {
        let one = RealNumber::Exact(QuadNum::one());
        sum_weighted(coeffs.iter().zip(&dims.dims).map(|(&c, d)| (c, d, &one)))
    }
}
