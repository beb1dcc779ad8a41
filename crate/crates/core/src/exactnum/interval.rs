use std::cmp::Ordering;
use std::fmt;

use num_traits::ToPrimitive;

use super::quad::{parse_rational, render_rational};
use super::{ExactError, Rational};

/// Closed interval with rational endpoints, used when a value has no
/// quadratic closed form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealInterval {
    lo: Rational,
    hi: Rational,
}

impl RealInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RealInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RealInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Order of two disjoint intervals; `None` when they overlap.
    pub fn try_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && self == other {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RealInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RealInterval::new(lo, hi)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if a <= b {
            RealInterval::new(a, b)
        } else {
            RealInterval::new(b, a)
        }
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "~[{},{}]", render_rational(&self.lo), render_rational(&self.hi))
    }
}

impl std::str::FromStr for RealInterval {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ExactError::Parse(s.to_string());
        let body = s
            .trim()
            .strip_prefix("~[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(err)?;
        let (lo, hi) = body.split_once(',').ok_or_else(err)?;
        let (lo, hi) = (parse_rational(lo)?, parse_rational(hi)?);
        if lo > hi {
            return Err(err());
        }
        Ok(RealInterval::new(lo, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn arithmetic_encloses() {
        let a = RealInterval::new(r(-1, 1), r(2, 1));
        let b = RealInterval::new(r(3, 1), r(4, 1));
        assert_eq!(a.mul(&b), RealInterval::new(r(-4, 1), r(8, 1)));
        assert_eq!(a.add(&b), RealInterval::new(r(2, 1), r(6, 1)));
        assert_eq!(a.try_cmp(&b), Some(Ordering::Less));
        assert_eq!(a.try_cmp(&a), None);
    }

    #[test]
    fn render_and_parse() {
        let a = RealInterval::new(r(-1, 3), r(7, 2));
        assert_eq!(a.to_string(), "~[-1/3,7/2]");
        assert_eq!(a.to_string().parse::<RealInterval>().unwrap(), a);
        assert!("~[2,1]".parse::<RealInterval>().is_err());
    }
}
