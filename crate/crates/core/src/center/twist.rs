//! Feasibility of twist trace equations `known + sum c_v theta_v = target`
//! where every `theta_v` is a root of unity.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactnum::{QuadNum, Rational};

/// `2 cos(2 pi k / n)` for every root of unity whose real part lies in a
/// quadratic field (n in 1, 2, 3, 4, 5, 6, 8, 10, 12), plus 0.
pub fn real_pair_sums() -> Vec<QuadNum> {
    let h = Rational::new(1.into(), 2.into());
    let mut v: Vec<QuadNum> = [-2, -1, 0, 1, 2].into_iter().map(QuadNum::from_int).collect();
    for d in [2u64, 3] {
        v.push(QuadNum::new(Rational::zero(), Rational::one(), d));
        v.push(QuadNum::new(Rational::zero(), -Rational::one(), d));
    }
    for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        v.push(QuadNum::new(&h * Rational::from_integer(a.into()), &h * Rational::from_integer(b.into()), 5));
    }
    v
}

fn is_pair_sum(s: &QuadNum) -> bool {
    real_pair_sums().contains(s)
}

/// One trace equation. `known` collects summands whose twist is already
/// fixed (the center unit, and anything forced later).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistEquation {
    /// Base element `x` whose induced object this equation traces.
    pub stage: usize,
    pub terms: Vec<(QuadNum, String)>,
    pub known: QuadNum,
    pub target: QuadNum,
}

impl TwistEquation {
    fn coeff_sum(&self) -> Result<QuadNum, ()> {
        self.terms.iter().try_fold(QuadNum::zero(), |acc, (c, _)| acc.try_add(c).map_err(|_| ()))
    }

    /// `target - known`.
    fn rhs(&self) -> Result<QuadNum, ()> {
        self.target.try_sub(&self.known).map_err(|_| ())
    }

    /// Moves variables with fixed real values into `known`.
    pub fn substitute(&self, fixed: &HashMap<String, i8>) -> TwistEquation {
        let mut known = self.known.clone();
        let mut terms = Vec::new();
        for (c, v) in &self.terms {
            match fixed.get(v) {
                Some(&s) => known = &known + &c.scale_int(s as i64),
                None => terms.push((c.clone(), v.clone())),
            }
        }
        TwistEquation { stage: self.stage, terms, known, target: self.target.clone() }
    }
}

impl fmt::Display for TwistEquation {
    /// `10 + t1 + t2 = 0`; variables are numbered in term order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.known.is_zero() || self.terms.is_empty() {
            parts.push(self.known.to_string());
        }
        for (k, (c, _)) in self.terms.iter().enumerate() {
            if c.is_one() {
                parts.push(format!("t{}", k + 1));
            } else if c.is_rational() {
                parts.push(format!("{c}*t{}", k + 1));
            } else {
                parts.push(format!("({c})*t{}", k + 1));
            }
        }
        write!(f, "{} = {}", parts.join(" + "), self.target)
    }
}

impl TwistEquation {
    /// Legend for the `t` variables of [`Display`](fmt::Display).
    pub fn legend(&self) -> String {
        self.terms.iter().enumerate().map(|(k, (_, v))| format!("t{} = theta({v})", k + 1)).collect::<Vec<_>>().join(", ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `|target - known|` exceeds the sum of coefficients.
    Triangle,
    /// One coefficient exceeds `|target - known|` plus all the others.
    Polygon,
    /// The single unknown is not a root of unity.
    SingleVariable,
    /// No pair of roots of unity satisfies a two-term equation.
    TwoVariable,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Triangle => "triangle bound",
            Rule::Polygon => "polygon bound",
            Rule::SingleVariable => "single variable",
            Rule::TwoVariable => "two variables",
        })
    }
}

/// Why an equation cannot hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Infeasibility {
    pub rule: Rule,
    /// The equation after substituting forced values.
    pub equation: TwistEquation,
    /// For a single unknown, the value it would need.
    pub value: Option<QuadNum>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Feasibility {
    /// Feasible; `forced` lists variables whose value is determined.
    Feasible { forced: Vec<(String, i8)> },
    Infeasible(Infeasibility),
    Unknown,
}

fn infeasible(rule: Rule, eq: &TwistEquation, value: Option<QuadNum>, detail: String) -> Feasibility {
    Feasibility::Infeasible(Infeasibility { rule, equation: eq.clone(), value, detail })
}

/// Decides a single equation with the sound local rules: saturation,
/// triangle bound, single unknown, two unknowns and the polygon bound.
pub fn twist_feasible(eq: &TwistEquation) -> Feasibility {
    let (Ok(t), Ok(s)) = (eq.rhs(), eq.coeff_sum()) else { return Feasibility::Unknown };
    let all = |v: i8| Feasibility::Feasible { forced: eq.terms.iter().map(|(_, n)| (n.clone(), v)).collect() };
    if eq.terms.is_empty() {
        return if t.is_zero() {
            all(1)
        } else {
            infeasible(Rule::Triangle, eq, None, format!("no unknowns but {} != {}", eq.known, eq.target))
        };
    }
    // saturation
    if t == s {
        return all(1);
    }
    if t == -&s {
        return all(-1);
    }
    let Ok(excess) = t.abs().try_sub(&s) else { return Feasibility::Unknown };
    if excess.is_positive() {
        return infeasible(Rule::Triangle, eq, None, format!("|{t}| > {s}"));
    }
    match eq.terms.len() {
        1 => {
            let Ok(v) = t.try_div(&eq.terms[0].0) else { return Feasibility::Unknown };
            if v.is_real_root_of_unity() {
                let sign = if v.is_positive() { 1 } else { -1 };
                Feasibility::Feasible { forced: vec![(eq.terms[0].1.clone(), sign)] }
            } else {
                infeasible(Rule::SingleVariable, eq, Some(v.clone()), format!("theta = {v} is not a root of unity"))
            }
        }
        2 => two_variables(eq, &t),
        _ => {
            for (j, (cj, _)) in eq.terms.iter().enumerate() {
                let others = eq.terms.iter().enumerate().filter(|(k, _)| *k != j).try_fold(t.abs(), |acc, (_, (c, _))| acc.try_add(c));
                let Ok(bound) = others else { return Feasibility::Unknown };
                if cj.try_sub(&bound).map(|d| d.is_positive()).unwrap_or(false) {
                    return infeasible(Rule::Polygon, eq, None, format!("{cj} > {bound}"));
                }
            }
            Feasibility::Feasible { forced: vec![] }
        }
    }
}

/// `c1 theta1 + c2 theta2 = t` with `t` real. Writing `theta2 = e^{ib}`,
/// `2 cos b = (t^2 + c2^2 - c1^2) / (t c2)`, and `theta1` is then fixed by
/// `2 Re theta1 = (2t - c2 2cos b) / c1`; both must be twice the real part
/// of a root of unity.
fn two_variables(eq: &TwistEquation, t: &QuadNum) -> Feasibility {
    let (c1, n1) = &eq.terms[0];
    let (c2, n2) = &eq.terms[1];
    if t.is_zero() {
        return if c1 == c2 {
            Feasibility::Feasible { forced: vec![] }
        } else {
            infeasible(Rule::TwoVariable, eq, None, format!("{c1} theta1 = -{c2} theta2 needs equal moduli"))
        };
    }
    let calc = || -> Result<(QuadNum, QuadNum), crate::exactnum::ExactError> {
        let num = t.try_mul(t)?.try_add(&c2.try_mul(c2)?)?.try_sub(&c1.try_mul(c1)?)?;
        let cos2 = num.try_div(&t.try_mul(c2)?)?;
        let re1 = t.scale_int(2).try_sub(&c2.try_mul(&cos2)?)?.try_div(c1)?;
        Ok((cos2, re1))
    };
    let Ok((cos2, re1)) = calc() else { return Feasibility::Unknown };
    if !is_pair_sum(&cos2) || !is_pair_sum(&re1) {
        let bad = if is_pair_sum(&cos2) { &re1 } else { &cos2 };
        return infeasible(Rule::TwoVariable, eq, None, format!("2cos = {bad} is not twice the real part of a root of unity"));
    }
    let two = QuadNum::from_int(2);
    let sign = |x: &QuadNum| if x.is_positive() { 1 } else { -1 };
    if cos2.abs() == two && re1.abs() == two {
        Feasibility::Feasible { forced: vec![(n1.clone(), sign(&re1)), (n2.clone(), sign(&cos2))] }
    } else {
        Feasibility::Feasible { forced: vec![] }
    }
}

/// Applies [`twist_feasible`] to every equation, substituting forced
/// values until nothing changes. Returns the forced values or the first
/// contradiction in equation order.
pub fn propagate(eqs: &[TwistEquation], fixed: &mut HashMap<String, i8>) -> Result<(), Infeasibility> {
    loop {
        let mut changed = false;
        for eq in eqs {
            let reduced = eq.substitute(fixed);
            match twist_feasible(&reduced) {
                Feasibility::Infeasible(w) => return Err(w),
                Feasibility::Feasible { forced } => {
                    for (v, s) in forced {
                        if fixed.insert(v, s).is_none() {
                            changed = true;
                        }
                    }
                }
                Feasibility::Unknown => {}
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

/// Exact element of the multi-quadratic field spanned by square roots of
/// squarefree integers: `sum_k c_k sqrt(k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct SqrtSum(BTreeMap<u64, Rational>);

impl SqrtSum {
    fn from_quad(q: &QuadNum) -> Self {
        let mut m = BTreeMap::new();
        m.insert(1, q.rational_part().clone());
        if !q.irrational_part().is_zero() {
            m.insert(q.radicand(), q.irrational_part().clone());
        }
        SqrtSum(m).trim()
    }

    fn trim(mut self) -> Self {
        self.0.retain(|_, c| !c.is_zero());
        self
    }

    fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, c) in &o.0 {
            *m.entry(*k).or_insert_with(Rational::zero) += c;
        }
        SqrtSum(m).trim()
    }

    fn mul(&self, o: &Self) -> Self {
        let mut m: BTreeMap<u64, Rational> = BTreeMap::new();
        for (a, x) in &self.0 {
            for (b, y) in &o.0 {
                let (g, s) = split_square(a * b);
                *m.entry(s).or_insert_with(Rational::zero) += x * y * Rational::from_integer(g.into());
            }
        }
        SqrtSum(m).trim()
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// `n = g^2 s` with `s` squarefree.
fn split_square(n: u64) -> (u64, u64) {
    let mut g = 1;
    let mut s = n;
    let mut p = 2;
    while p * p <= s {
        while s % (p * p) == 0 {
            s /= p * p;
            g *= p;
        }
        p += 1;
    }
    (g, s)
}

/// A concrete twist in a witness assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Twist {
    /// `theta = sign`.
    Real { sign: i8 },
    /// `theta` and `theta(partner)` are complex conjugates with the given
    /// sum; `upper` picks the one with positive imaginary part.
    Conjugate { partner: String, sum: QuadNum, upper: bool },
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Twist::Real { sign } => write!(f, "{sign}"),
            Twist::Conjugate { partner, sum, upper } => {
                write!(f, "{} root with theta + theta({partner}) = {sum}", if *upper { "upper" } else { "lower" })
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Slot {
    Real(i8),
    /// Member of a conjugate pair whose sum is contributed once, by the
    /// first member.
    PairHead(usize, QuadNum),
    PairTail(usize),
}

/// Searches for an explicit root-of-unity assignment satisfying every
/// equation. Each unknown is `+-1` or one half of a conjugate pair whose
/// members carry equal coefficients in every equation. Returns `None` when
/// no such witness exists or the node budget runs out.
pub fn find_witness(
    eqs: &[TwistEquation],
    fixed: &HashMap<String, i8>,
    budget: u64,
) -> Option<Vec<(String, Twist)>> {
    let mut vars: Vec<String> = Vec::new();
    for eq in eqs {
        for (_, v) in &eq.terms {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
    }
    let n = vars.len();
    // coefficient of each variable in each equation
    let coeff: Vec<Vec<Option<QuadNum>>> = eqs
        .iter()
        .map(|eq| vars.iter().map(|v| eq.terms.iter().find(|(_, w)| w == v).map(|(c, _)| c.clone())).collect())
        .collect();
    let last_use: Vec<usize> = eqs
        .iter()
        .map(|eq| eq.terms.iter().map(|(_, v)| vars.iter().position(|w| w == v).unwrap()).max().unwrap_or(0))
        .collect();
    let pairable = |a: usize, b: usize| coeff.iter().all(|row| row[a] == row[b]);
    let sums: Vec<QuadNum> = real_pair_sums().into_iter().filter(|s| s.abs() != QuadNum::from_int(2)).collect();

    struct Ctx<'a> {
        eqs: &'a [TwistEquation],
        coeff: &'a [Vec<Option<QuadNum>>],
        last_use: &'a [usize],
        nodes: u64,
        budget: u64,
    }
    impl Ctx<'_> {
        /// Equations whose last variable is `i` must hold exactly.
        fn check(&self, slots: &[Option<Slot>], i: usize) -> bool {
            self.eqs.iter().enumerate().filter(|(e, _)| self.last_use[*e] == i).all(|(e, eq)| {
                let mut total = SqrtSum::from_quad(&eq.known);
                for (v, c) in self.coeff[e].iter().enumerate() {
                    let Some(c) = c else { continue };
                    let val = match &slots[v] {
                        Some(Slot::Real(s)) => QuadNum::from_int(*s as i64),
                        Some(Slot::PairHead(_, sum)) => {
                            total = total.add(&SqrtSum::from_quad(c).mul(&SqrtSum::from_quad(sum)));
                            continue;
                        }
                        Some(Slot::PairTail(_)) => continue,
                        None => return true,
                    };
                    total = total.add(&SqrtSum::from_quad(&c.scale_int(val.to_i64().unwrap())));
                }
                total.add(&SqrtSum::from_quad(&-&eq.target)).is_zero()
            })
        }
    }

    let mut ctx = Ctx { eqs, coeff: &coeff, last_use: &last_use, nodes: 0, budget };
    let mut slots: Vec<Option<Slot>> = vec![None; n];

    fn rec(
        ctx: &mut Ctx,
        slots: &mut Vec<Option<Slot>>,
        i: usize,
        vars: &[String],
        fixed: &HashMap<String, i8>,
        sums: &[QuadNum],
        pairable: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let n = slots.len();
        if i == n {
            return true;
        }
        if slots[i].is_some() {
            return ctx.check(slots, i) && rec(ctx, slots, i + 1, vars, fixed, sums, pairable);
        }
        ctx.nodes += 1;
        if ctx.nodes > ctx.budget {
            return false;
        }
        let signs: Vec<i8> = match fixed.get(&vars[i]) {
            Some(&s) => vec![s],
            None => vec![1, -1],
        };
        for s in signs {
            slots[i] = Some(Slot::Real(s));
            if ctx.check(slots, i) && rec(ctx, slots, i + 1, vars, fixed, sums, pairable) {
                return true;
            }
        }
        if !fixed.contains_key(&vars[i]) {
            for j in i + 1..n {
                if slots[j].is_some() || fixed.contains_key(&vars[j]) || !pairable(i, j) {
                    continue;
                }
                for s in sums {
                    slots[i] = Some(Slot::PairHead(j, s.clone()));
                    slots[j] = Some(Slot::PairTail(i));
                    if ctx.check(slots, i) && rec(ctx, slots, i + 1, vars, fixed, sums, pairable) {
                        return true;
                    }
                    slots[j] = None;
                }
            }
        }
        slots[i] = None;
        false
    }

    if !rec(&mut ctx, &mut slots, 0, &vars, fixed, &sums, &pairable) {
        return None;
    }
    let mut out: Vec<(String, Twist)> = fixed
        .iter()
        .filter(|(v, _)| !vars.contains(v))
        .map(|(v, &s)| (v.clone(), Twist::Real { sign: s }))
        .collect();
    for (i, slot) in slots.into_iter().enumerate() {
        let t = match slot.expect("complete assignment") {
            Slot::Real(s) => Twist::Real { sign: s },
            Slot::PairHead(j, sum) => Twist::Conjugate { partner: vars[j].clone(), sum, upper: true },
            Slot::PairTail(j) => {
                let Twist::Conjugate { sum, .. } = pair_sum_of(&vars, &out, j) else { unreachable!() };
                Twist::Conjugate { partner: vars[j].clone(), sum, upper: false }
            }
        };
        out.push((vars[i].clone(), t));
    }
    out.sort_by(|a, b| cmp_labels(&a.0, &b.0));
    Some(out)
}

fn pair_sum_of(vars: &[String], out: &[(String, Twist)], j: usize) -> Twist {
    out.iter().find(|(v, _)| *v == vars[j]).map(|(_, t)| t.clone()).expect("pair head precedes its tail")
}

/// Orders labels like `s1.10` after `s1.9`.
pub(crate) fn cmp_labels(a: &str, b: &str) -> Ordering {
    let key = |s: &str| -> Vec<u64> { s.trim_start_matches('s').split('.').filter_map(|p| p.parse().ok()).collect() };
    key(a).cmp(&key(b)).then_with(|| a.cmp(b))
}
