use std::fmt;

use num_integer::Roots;

use super::ExactError;

/// Largest matrix dimension accepted by [`char_poly`].
pub const MAX_MATRIX_DIM: usize = 8;

/// Dense integer polynomial in `t`, coefficients in ascending degree order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<i128>,
}

impl IntPoly {
    /// Trailing zero coefficients are dropped; the zero polynomial has no
    /// coefficients.
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// `prod (t - r)` over the given integer roots.
    pub fn from_roots(roots: &[i128]) -> Self {
        roots.iter().fold(IntPoly::new(vec![1]), |acc, &r| acc.mul(&IntPoly::new(vec![-r, 1])))
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: i128) -> Option<i128> {
        self.coeffs
            .iter()
            .rev()
            .try_fold(0i128, |acc, &c| acc.checked_mul(x)?.checked_add(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(vec![]);
        }
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact quotient by a monic divisor, if it divides without remainder.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        debug_assert!(divisor.is_monic());
        let dd = divisor.degree();
        if self.degree() < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i128; self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd];
            quot[k] = c;
            if c != 0 {
                for (j, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].checked_sub(c.checked_mul(dc)?)?;
                }
            }
        }
        rem[..dd].iter().all(|&r| r == 0).then(|| IntPoly::new(quot))
    }

    /// Fujiwara bound on the moduli of the roots of a monic polynomial.
    pub fn root_bound(&self) -> u128 {
        let n = self.degree();
        let mut best = 0u128;
        for k in 1..=n {
            let c = self.coeff(n - k).unsigned_abs();
            let c = if k == n { c.div_ceil(2) } else { c };
            let r = c.nth_root(k as u32);
            let r = if r.checked_pow(k as u32) == Some(c) { r } else { r + 1 };
            best = best.max(r);
        }
        2 * best
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Monic characteristic polynomial `det(tI - M)` by the Faddeev-LeVerrier
/// recurrence in exact integer arithmetic.
pub fn char_poly(m: &[Vec<i64>]) -> Result<IntPoly, ExactError> {
    let n = m.len();
    if n > MAX_MATRIX_DIM {
        return Err(ExactError::RankTooLarge(n));
    }
    if m.iter().any(|row| row.len() != n) {
        return Err(ExactError::NotSquare);
    }
    let ovf = || ExactError::Overflow("characteristic polynomial");
    let a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
    let mut mk = vec![vec![0i128; n]; n];
    for k in 1..=n {
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i128;
                for l in 0..n {
                    s = s.checked_add(a[i][l].checked_mul(mk[l][j]).ok_or_else(ovf)?).ok_or_else(ovf)?;
                }
                next[i][j] = s;
            }
            next[i][i] = next[i][i].checked_add(coeffs[n - k + 1]).ok_or_else(ovf)?;
        }
        mk = next;
        let mut tr = 0i128;
        for i in 0..n {
            for l in 0..n {
                tr = tr.checked_add(a[i][l].checked_mul(mk[l][i]).ok_or_else(ovf)?).ok_or_else(ovf)?;
            }
        }
        debug_assert_eq!(tr % k as i128, 0);
        coeffs[n - k] = -tr / k as i128;
    }
    Ok(IntPoly::new(coeffs))
}

/// Factors of degree at most two plus whatever could not be split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Irreducible factors, repeated according to multiplicity.
    pub factors: Vec<IntPoly>,
    /// Monic part of degree >= 3 with no rational root and no integer
    /// quadratic factor within the searched bounds.
    pub remainder: Option<IntPoly>,
}

impl Factorization {
    /// Product of all factors and the remainder.
    pub fn product(&self) -> IntPoly {
        let base = self.remainder.clone().unwrap_or_else(|| IntPoly::new(vec![1]));
        self.factors.iter().fold(base, |acc, f| acc.mul(f))
    }

    pub fn is_complete(&self) -> bool {
        self.remainder.is_none()
    }
}

fn divisors_up_to(n: i128, bound: u128) -> Vec<i128> {
    let n = n.unsigned_abs();
    let lim = bound.min(n);
    (1..=lim).filter(|d| n % d == 0).map(|d| d as i128).collect()
}

/// Splits a monic integer polynomial into irreducible linear and quadratic
/// factors, using the Fujiwara root bound to limit the search.
pub fn factor_small(p: &IntPoly) -> Factorization {
    factor_small_bounded(p, u128::MAX)
}

/// As [`factor_small`], with an externally known bound on the root moduli
/// (for a nonnegative matrix, its maximal row sum).
pub fn factor_small_bounded(p: &IntPoly, root_bound: u128) -> Factorization {
    if !p.is_monic() {
        return Factorization {
            factors: vec![],
            remainder: (p.degree() > 0).then(|| p.clone()),
        };
    }
    let mut rest = p.clone();
    let mut linear = Vec::new();
    let mut quadratic = Vec::new();

    // rational roots of a monic integer polynomial are integers dividing p(0)
    loop {
        if rest.degree() == 0 {
            break;
        }
        let bound = rest.root_bound().min(root_bound);
        let c0 = rest.coeff(0);
        let candidates: Vec<i128> = if c0 == 0 {
            vec![0]
        } else {
            divisors_up_to(c0, bound).into_iter().flat_map(|d| [d, -d]).collect()
        };
        let found = candidates.into_iter().find_map(|r| {
            let f = IntPoly::new(vec![-r, 1]);
            rest.div_exact_monic(&f).map(|q| (f, q))
        });
        match found {
            Some((f, q)) => {
                linear.push(f);
                rest = q;
            }
            None => break,
        }
    }

    loop {
        match rest.degree() {
            0 => break,
            2 => {
                quadratic.push(rest.clone());
                rest = IntPoly::new(vec![1]);
                break;
            }
            1 | 3 => break,
            _ => {}
        }
        let bound = rest.root_bound().min(root_bound) as i128;
        let cs = divisors_up_to(rest.coeff(0), (bound as u128).saturating_mul(bound as u128));
        let found = cs.iter().flat_map(|&c| [c, -c]).find_map(|c| {
            (-2 * bound..=2 * bound).find_map(|b| {
                let f = IntPoly::new(vec![c, b, 1]);
                rest.div_exact_monic(&f).map(|q| (f, q))
            })
        });
        match found {
            Some((f, q)) => {
                quadratic.push(f);
                rest = q;
            }
            None => break,
        }
    }

    linear.sort();
    quadratic.sort_by_key(|f| (f.coeff(1), f.coeff(0)));
    let mut factors = linear;
    factors.extend(quadratic);
    Factorization {
        factors,
        remainder: (rest.degree() > 0).then_some(rest),
    }
}
