use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::ratpoly::{isolate_roots, refine_root, squarefree_decomposition, RatPoly};
use super::{ExactError, Factorization, IntPoly, QuadNum, RealInterval, Rational};

/// Default enclosure width for roots without a quadratic closed form.
pub(crate) fn default_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

/// A real root of a squarefree integer polynomial, pinned down by an
/// isolating interval that contains no other root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicRoot {
    poly: IntPoly,
    interval: RealInterval,
}

impl AlgebraicRoot {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn interval(&self) -> &RealInterval {
        &self.interval
    }

    /// An enclosure of width at most `width`.
    pub fn refine(&self, width: &Rational) -> RealInterval {
        if self.interval.width() <= *width {
            return self.interval.clone();
        }
        let (lo, hi) = refine_root(&RatPoly::from_int(&self.poly), self.interval.lo(), self.interval.hi(), width);
        RealInterval::new(lo, hi)
    }
}

/// A real number known either exactly in a quadratic field or as a
/// certified enclosure of an algebraic root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RealNumber {
    Exact(QuadNum),
    Approx(AlgebraicRoot),
    /// Enclosure of a derived quantity (a sum or product of inexact values)
    /// that cannot be refined further.
    Enclosed(RealInterval),
}

impl RealNumber {
    pub fn is_exact(&self) -> bool {
        matches!(self, RealNumber::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&QuadNum> {
        match self {
            RealNumber::Exact(q) => Some(q),
            _ => None,
        }
    }

    /// Enclosure of width roughly `2^-bits` (exactly a point for rationals).
    pub fn enclosure(&self, bits: u32) -> RealInterval {
        match self {
            RealNumber::Exact(q) => {
                let b = q.irrational_part();
                // widen precision by the size of b so the width really is ~2^-bits
                let extra = b.numer().bits().saturating_sub(b.denom().bits()) as u32;
                q.to_interval(bits + extra + 1)
            }
            RealNumber::Approx(r) => {
                let w = Rational::new(BigInt::one(), BigInt::one() << bits);
                r.refine(&w)
            }
            RealNumber::Enclosed(iv) => iv.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealNumber::Exact(q) => q.to_f64(),
            RealNumber::Approx(r) => {
                let iv = r.refine(&default_width());
                (iv.lo_f64() + iv.hi_f64()) / 2.0
            }
            RealNumber::Enclosed(iv) => (iv.lo_f64() + iv.hi_f64()) / 2.0,
        }
    }

    /// Total order on real values. Exact values in a common field compare
    /// exactly; otherwise enclosures are refined until they separate.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        if let (RealNumber::Exact(a), RealNumber::Exact(b)) = (self, other) {
            if let Ok(d) = a.try_sub(b) {
                return d.signum();
            }
        }
        // distinct algebraic numbers of this size separate long before 256 bits
        for bits in (16..=256).step_by(16) {
            if let Some(o) = self.enclosure(bits).try_cmp(&other.enclosure(bits)) {
                return o;
            }
        }
        Ordering::Equal
    }
}

impl From<QuadNum> for RealNumber {
    fn from(q: QuadNum) -> Self {
        RealNumber::Exact(q)
    }
}

impl fmt::Display for RealNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealNumber::Exact(q) => q.fmt(f),
            RealNumber::Approx(r) => r.refine(&default_width()).fmt(f),
            RealNumber::Enclosed(iv) => iv.fmt(f),
        }
    }
}

impl Serialize for RealNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for QuadNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Exact roots of degree <= 2 factors, with certified enclosures for the
/// roots of any remainder. Roots are repeated by multiplicity and returned
/// in decreasing order.
pub fn roots_as_quadnum(f: &Factorization) -> Result<Vec<RealNumber>, ExactError> {
    collect_roots(f, true)
}

/// The real roots only, silently skipping complex conjugate pairs.
pub fn real_roots(f: &Factorization) -> Result<Vec<RealNumber>, ExactError> {
    collect_roots(f, false)
}

fn collect_roots(f: &Factorization, all_real: bool) -> Result<Vec<RealNumber>, ExactError> {
    let mut out = Vec::new();
    for p in &f.factors {
        match p.degree() {
            1 => out.push(RealNumber::Exact(QuadNum::from_int(0).try_sub(&QuadNum::from_rational(
                Rational::new(p.coeff(0).into(), p.coeff(1).into()),
            ))?)),
            2 => {
                let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
                let disc = b * b - 4 * a * c;
                if disc < 0 {
                    if all_real {
                        return Err(ExactError::ComplexRoot(p.to_string()));
                    }
                    continue;
                }
                let half = Rational::new(BigInt::one(), BigInt::from(2 * a));
                let base = Rational::new(BigInt::from(-b), BigInt::from(2 * a));
                let disc = u64::try_from(disc).map_err(|_| ExactError::Overflow("discriminant"))?;
                out.push(RealNumber::Exact(QuadNum::new(base.clone(), half.clone(), disc)));
                out.push(RealNumber::Exact(QuadNum::new(base, -half, disc)));
            }
            0 => {}
            _ => return Err(ExactError::NotMonic(format!("factor {p} has degree > 2"))),
        }
    }
    if let Some(rem) = &f.remainder {
        let bound = Rational::from_integer(BigInt::from(rem.root_bound() + 1));
        for (part, mult) in squarefree_decomposition(&RatPoly::from_int(rem)) {
            let ip = part.to_int().ok_or(ExactError::Overflow("squarefree part"))?;
            let roots = isolate_roots(&part, &bound);
            if all_real && roots.len() < part.degree() {
                return Err(ExactError::ComplexRoot(ip.to_string()));
            }
            for (lo, hi) in roots {
                let (lo, hi) = refine_root(&part, &lo, &hi, &default_width());
                let root = if lo == hi {
                    RealNumber::Exact(QuadNum::from_rational(lo))
                } else {
                    RealNumber::Approx(AlgebraicRoot {
                        poly: ip.clone(),
                        interval: RealInterval::new(lo, hi),
                    })
                };
                out.extend(std::iter::repeat_n(root, mult));
            }
        }
    }
    out.sort_by(|a, b| b.cmp_value(a));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::factor_small;

    fn poly(c: &[i128]) -> IntPoly {
        IntPoly::new(c.to_vec())
    }

    fn exact(s: &str) -> RealNumber {
        RealNumber::Exact(s.parse().unwrap())
    }

    #[test]
    fn quadratic_roots() {
        let r = roots_as_quadnum(&factor_small(&poly(&[20, -10, 1]))).unwrap();
        assert_eq!(r, vec![exact("5+1*sqrt(5)"), exact("5-1*sqrt(5)")]);
    }

    #[test]
    fn linear_root() {
        assert_eq!(roots_as_quadnum(&factor_small(&poly(&[-2, 1]))).unwrap(), vec![exact("2")]);
    }

    #[test]
    fn sqrt_six() {
        let r = roots_as_quadnum(&factor_small(&poly(&[-6, 0, 1]))).unwrap();
        assert_eq!(r, vec![exact("0+1*sqrt(6)"), exact("0-1*sqrt(6)")]);
        let s = r[0].as_exact().unwrap();
        assert_eq!(s * s, QuadNum::from_int(6));
    }

    #[test]
    fn complex_roots_are_rejected() {
        let e = roots_as_quadnum(&factor_small(&poly(&[1, 0, 1])));
        assert!(matches!(e, Err(ExactError::ComplexRoot(_))));
        // a cubic remainder with one real root
        let e = roots_as_quadnum(&factor_small(&poly(&[-2, 0, 0, 1])));
        assert!(matches!(e, Err(ExactError::ComplexRoot(_))));
    }

    #[test]
    fn cubic_roots_are_enclosed() {
        let r = roots_as_quadnum(&factor_small(&poly(&[1, -2, -1, 1]))).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|x| !x.is_exact()));
        let top = 2.0 * (std::f64::consts::PI / 7.0).cos();
        assert!((r[0].to_f64() - top).abs() < 1e-12);
        if let RealNumber::Approx(a) = &r[0] {
            assert!(a.interval().width() <= default_width());
        }
    }

    #[test]
    fn mixed_field_comparison() {
        let a = exact("0+1*sqrt(2)");
        let b = exact("0+1*sqrt(3)");
        let c = exact("1/2+1/2*sqrt(5)");
        assert_eq!(a.cmp_value(&b), Ordering::Less);
        assert_eq!(c.cmp_value(&b), Ordering::Less);
        assert_eq!(c.cmp_value(&a), Ordering::Greater);
        assert_eq!(c.cmp_value(&c.clone()), Ordering::Equal);
    }
}
