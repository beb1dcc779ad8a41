//! Rational polynomials for squarefree decomposition and Sturm-sequence
//! root isolation.

use num_traits::{Signed, Zero};

use super::{IntPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RatPoly(Vec<Rational>);

impl RatPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        RatPoly(c)
    }

    pub fn from_int(p: &IntPoly) -> Self {
        RatPoly::new(p.coeffs().iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn monic(&self) -> Self {
        let l = self.lead().clone();
        RatPoly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn derivative(&self) -> Self {
        RatPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let mut rem = self.0.clone();
        if self.degree() < d.degree() || self.is_zero() {
            return (RatPoly::new(vec![]), self.clone());
        }
        let dd = d.degree();
        let mut quot = vec![Rational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / d.lead();
            for (j, dc) in d.0.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Converts a monic rational polynomial with integral coefficients back.
    pub fn to_int(&self) -> Option<IntPoly> {
        use num_traits::ToPrimitive;
        let mut out = Vec::with_capacity(self.0.len());
        for c in &self.0 {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer().to_i128()?);
        }
        Some(IntPoly::new(out))
    }
}

/// Yun's squarefree decomposition: `p = prod g_i^i` with each `g_i`
/// squarefree and monic.
pub(crate) fn squarefree_decomposition(p: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    let p = p.monic();
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = {
        let bd = b.derivative();
        RatPoly::new(sub(&c.0, &bd.0))
    };
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        if a.degree() > 0 {
            out.push((a, i));
        }
        let bd = b.derivative();
        d = RatPoly::new(sub(&c.0, &bd.0));
        i += 1;
    }
    out
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect()
}

pub(crate) struct Sturm {
    chain: Vec<RatPoly>,
}

impl Sturm {
    pub fn new(p: &RatPoly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            chain.push(RatPoly::new(r.0.into_iter().map(|c| -c).collect()));
        }
        chain.pop();
        Sturm { chain }
    }

    fn sign_changes(&self, x: &Rational) -> usize {
        let signs: Vec<bool> = self
            .chain
            .iter()
            .map(|p| p.eval(x))
            .filter(|v| !v.is_zero())
            .map(|v| v.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.sign_changes(a).saturating_sub(self.sign_changes(b))
    }
}

/// Isolating intervals `(lo, hi]` of the real roots of a squarefree
/// polynomial whose roots lie strictly inside `(-bound, bound)`.
pub(crate) fn isolate_roots(p: &RatPoly, bound: &Rational) -> Vec<(Rational, Rational)> {
    let sturm = Sturm::new(p);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound.clone())];
    let two = Rational::from_integer(2.into());
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort();
    out
}

/// Shrinks an isolating interval `(lo, hi]` of a simple root until its
/// width is at most `width`. Returns a closed enclosure.
pub(crate) fn refine_root(p: &RatPoly, lo: &Rational, hi: &Rational, width: &Rational) -> (Rational, Rational) {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let two = Rational::from_integer(2.into());
    let hi_val = p.eval(&hi);
    if hi_val.is_zero() {
        return (hi.clone(), hi);
    }
    let hi_pos = hi_val.is_positive();
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let v = p.eval(&mid);
        if v.is_zero() {
            return (mid.clone(), mid);
        }
        if v.is_positive() == hi_pos {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(c: &[i64]) -> RatPoly {
        RatPoly::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    #[test]
    fn yun_splits_multiplicities() {
        // (t-1)^2 (t+2)
        let p = rp(&[2, -3, 0, 1]);
        let parts = squarefree_decomposition(&p);
        assert_eq!(parts, vec![(rp(&[2, 1]), 1), (rp(&[-1, 1]), 2)]);
    }

    #[test]
    fn sturm_counts_cubic_roots() {
        // t^3 - t^2 - 2t + 1 has three real roots in (-2, 2)
        let p = rp(&[1, -2, -1, 1]);
        let b = Rational::from_integer(3.into());
        let iv = isolate_roots(&p, &b);
        assert_eq!(iv.len(), 3);
        // t^2 + 1 has none
        assert!(isolate_roots(&rp(&[1, 0, 1]), &b).is_empty());
    }
}
