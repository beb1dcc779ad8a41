use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ExactError, RealInterval, Rational};

/// An exact element `a + b*sqrt(d)` of a real quadratic field, read in the
/// embedding where `sqrt(d) > 0`.
///
/// `d` is squarefree. `d == 1` encodes a plain rational and forces `b == 0`,
/// so structural equality coincides with numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: Rational,
    b: Rational,
    d: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Splits `n` into `(s, d)` with `n = s^2 * d` and `d` squarefree.
fn squarefree_split(mut n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    (square, free * n)
}

impl QuadNum {
    /// Builds `a + b*sqrt(radicand)`, pulling square factors out of the
    /// radicand.
    pub fn new(a: Rational, b: Rational, radicand: u64) -> Self {
        if radicand == 0 || b.is_zero() {
            return Self::from_rational(a);
        }
        let (s, d) = squarefree_split(radicand);
        let b = b * Rational::from_integer(BigInt::from(s));
        if d == 1 {
            Self::from_rational(a + b)
        } else {
            QuadNum { a, b, d }
        }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadNum {
            a,
            b: Rational::zero(),
            d: 1,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(p.into(), q.into()))
    }

    /// `sqrt(n)` for a nonnegative integer `n`.
    pub fn sqrt_int(n: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), n)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    /// Squarefree radicand; 1 for rationals.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 1
    }

    pub fn is_zero(&self) -> bool {
        self.d == 1 && self.a.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.d == 1 && self.a.is_one()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    /// Integer value, if this is one and it fits.
    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        let r = self.to_rational()?;
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conj(&self) -> Self {
        QuadNum {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Field norm `a^2 - b^2 d`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.into())
    }

    /// Common radicand of two operands, or `MixedRadicand`.
    pub fn common_radicand(&self, other: &Self) -> Result<u64, ExactError> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (d, e) if d == e => Ok(d),
            (d, e) => Err(ExactError::MixedRadicand(d, e)),
        }
    }

    fn assemble(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() || d == 1 {
            Self::from_rational(a)
        } else {
            QuadNum { a, b, d }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.common_radicand(other)?;
        Ok(Self::assemble(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.common_radicand(other)?;
        Ok(Self::assemble(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.common_radicand(other)?;
        let dr = Rational::from_integer(d.into());
        let a = &self.a * &other.a + &self.b * &other.b * dr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::assemble(a, b, d))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.common_radicand(other)?;
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        // x / y = x * conj(y) / N(y); N(y) != 0 since d is not a square.
        let n = other.norm();
        let num = self.try_mul(&other.conj())?;
        Ok(Self::assemble(&num.a / &n, &num.b / &n, num.d))
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        Self::one().try_div(self)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::assemble(&self.a * k, &self.b * k, self.d)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rational::from_integer(k.into()))
    }

    /// Exact sign in the positive embedding.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (s, t) if s == t => s,
            (s, t) => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * Rational::from_integer(self.d.into());
                if a2 > b2d {
                    s
                } else {
                    t
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Rational enclosure of the real value; the width is at most
    /// `|b| * 2^-bits`.
    pub fn to_interval(&self, bits: u32) -> RealInterval {
        if self.is_rational() {
            return RealInterval::point(self.a.clone());
        }
        let scale = BigInt::one() << bits;
        let s = (BigInt::from(self.d) * &scale * &scale).sqrt();
        let lo_root = Rational::new(s.clone(), scale.clone());
        let hi_root = Rational::new(s + 1, scale);
        let (lo, hi) = if self.b.is_positive() {
            (&self.b * lo_root, &self.b * hi_root)
        } else {
            (&self.b * hi_root, &self.b * lo_root)
        };
        RealInterval::new(&self.a + lo, &self.a + hi)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// True when the value is `1` or `-1`, the only real roots of unity.
    pub fn is_real_root_of_unity(&self) -> bool {
        self.is_rational() && self.a.abs().is_one()
    }
}

/// Field operation with the radicand and zero-division checks of the
/// individual `try_*` methods.
pub fn quad_arith(x: &QuadNum, y: &QuadNum, op: QuadOp) -> Result<QuadNum, ExactError> {
    match op {
        QuadOp::Add => x.try_add(y),
        QuadOp::Sub => x.try_sub(y),
        QuadOp::Mul => x.try_mul(y),
        QuadOp::Div => x.try_div(y),
    }
}

/// Exact comparison of real values.
pub fn quad_cmp(x: &QuadNum, y: &QuadNum) -> Result<Ordering, ExactError> {
    Ok(x.try_sub(y)?.signum())
}

// Operator impls panic on mixed radicands; callers use them only inside a
// single field and reach for the `try_*` methods otherwise.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&QuadNum> for &QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                self.$try(rhs).expect(concat!("QuadNum ", stringify!($method)))
            }
        }
        impl $tr<QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum::assemble(-self.a.clone(), -self.b.clone(), self.d)
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        -&self
    }
}

impl From<i64> for QuadNum {
    fn from(n: i64) -> Self {
        QuadNum::from_int(n)
    }
}

impl From<Rational> for QuadNum {
    fn from(r: Rational) -> Self {
        QuadNum::from_rational(r)
    }
}

/// `p` for integers, `p/q` otherwise.
pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let err = || ExactError::Parse(s.to_string());
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.trim().parse().map_err(|_| err())?;
    let q: BigInt = q.trim().parse().map_err(|_| err())?;
    if !q.is_positive() {
        return Err(err());
    }
    Ok(Rational::new(p, q))
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_rational(&self.a))?;
        if !self.is_rational() {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{}{}*sqrt({})", sign, render_rational(&self.b.abs()), self.d)?;
        }
        Ok(())
    }
}

impl FromStr for QuadNum {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ExactError::Parse(s.to_string());
        let s = s.trim();
        let Some(star) = s.find("*sqrt(") else {
            return parse_rational(s).map(QuadNum::from_rational);
        };
        if !s.ends_with(')') {
            return Err(err());
        }
        let d: u64 = s[star + 6..s.len() - 1].parse().map_err(|_| err())?;
        let head = &s[..star];
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(err)?;
        let a = parse_rational(&head[..split])?;
        let b = parse_rational(&head[split + 1..])?;
        let b = if &head[split..split + 1] == "-" { -b } else { b };
        Ok(QuadNum::new(a, b, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadNum {
        s.parse().unwrap()
    }

    fn phi() -> QuadNum {
        q("1/2+1/2*sqrt(5)")
    }

    #[test]
    fn golden_ratio_squares_to_phi_plus_one() {
        assert_eq!(&phi() * &phi(), q("3/2+1/2*sqrt(5)"));
        assert_eq!(&phi() * &phi(), &phi() + &QuadNum::one());
    }

    #[test]
    fn additive_identity() {
        assert_eq!(&phi() + &QuadNum::zero(), phi());
    }

    #[test]
    fn conjugate_product_is_norm() {
        // (a+b sqrt D)(a-b sqrt D) = a^2 - b^2 D = 25 - 5
        assert_eq!(&q("5+1*sqrt(5)") * &q("5-1*sqrt(5)"), QuadNum::from_int(20));
    }

    #[test]
    fn division_inverts_multiplication() {
        let x = q("5+1*sqrt(5)");
        let y = q("5-1*sqrt(5)");
        let r = x.try_div(&y).unwrap();
        assert_eq!(r, q("3/2+1/2*sqrt(5)"));
        assert_eq!(&r * &y, x);
    }

    #[test]
    fn mixed_radicands_are_rejected() {
        let e = QuadNum::sqrt_int(2).try_add(&QuadNum::sqrt_int(3));
        assert_eq!(e, Err(ExactError::MixedRadicand(2, 3)));
        // rationals mix with anything
        assert!(QuadNum::sqrt_int(2).try_add(&QuadNum::from_int(3)).is_ok());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(phi().try_div(&QuadNum::zero()), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn comparisons() {
        assert_eq!(quad_cmp(&phi(), &QuadNum::one()), Ok(Ordering::Greater));
        assert_eq!(quad_cmp(&phi(), &phi()), Ok(Ordering::Equal));
        // 5 - sqrt5 vs 3: sign of 2 - sqrt5, decided by 4 < 5
        assert_eq!(quad_cmp(&q("5-1*sqrt(5)"), &QuadNum::from_int(3)), Ok(Ordering::Less));
    }

    #[test]
    fn radicand_is_reduced() {
        assert_eq!(QuadNum::sqrt_int(12), q("0+2*sqrt(3)"));
        assert_eq!(QuadNum::sqrt_int(16), QuadNum::from_int(4));
        assert_eq!(QuadNum::sqrt_int(0), QuadNum::zero());
        assert_eq!(&QuadNum::sqrt_int(6) * &QuadNum::sqrt_int(6), QuadNum::from_int(6));
    }

    #[test]
    fn rendering_grammar() {
        assert_eq!(q("5+1*sqrt(5)").to_string(), "5+1*sqrt(5)");
        assert_eq!(q("5-1*sqrt(5)").to_string(), "5-1*sqrt(5)");
        assert_eq!(phi().to_string(), "1/2+1/2*sqrt(5)");
        assert_eq!(QuadNum::sqrt_int(6).to_string(), "0+1*sqrt(6)");
        assert_eq!(QuadNum::from_ratio(-3, 4).to_string(), "-3/4");
        assert_eq!(q("-1/4-1/4*sqrt(5)").to_string(), "-1/4-1/4*sqrt(5)");
    }

    #[test]
    fn malformed_numbers_fail_to_parse() {
        for bad in ["", "1/0", "abc", "1+2*sqrt(5", "1+*sqrt(5)", "1/-2"] {
            assert!(bad.parse::<QuadNum>().is_err(), "{bad}");
        }
    }

    #[test]
    fn interval_encloses_value() {
        let iv = phi().to_interval(60);
        assert!(iv.lo() < iv.hi());
        let f = phi().to_f64();
        assert!((iv.lo_f64() - f).abs() < 1e-15 && (iv.hi_f64() - f).abs() < 1e-15);
    }
}
