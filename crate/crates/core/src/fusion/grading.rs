use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;

use super::fpdim::sum_of_squares;
use super::pointed::is_abelian;
use super::{FpDims, FusionRing, RingError};
use crate::exactnum::{Rational, RealNumber};

/// A sub-basis closed under duality and fusion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubBasis {
    pub indices: Vec<usize>,
    pub fpdim: RealNumber,
}

/// The universal grading of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grading {
    /// Components in order of their smallest index; `components[0]` holds the unit.
    pub components: Vec<Vec<usize>>,
    /// `group_table[a][b]` is the component containing products of `a` and `b`.
    pub group_table: Vec<Vec<usize>>,
    /// The adjoint sub-basis, which is also `components[0]`.
    pub adjoint_support: Vec<usize>,
    /// FP dimension of each component.
    pub component_fpdims: Vec<RealNumber>,
}

impl Grading {
    pub fn order(&self) -> usize {
        self.components.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.components.iter().position(|c| c.contains(&i)).expect("components partition the basis")
    }

    pub fn is_abelian(&self) -> bool {
        is_abelian(&self.group_table)
    }

    pub fn is_elementary_abelian_2(&self) -> bool {
        (0..self.order()).all(|a| self.group_table[a][a] == 0) && self.is_abelian()
    }
}

impl FusionRing {
    /// Closure of `seeds` and the unit under duality and fusion support.
    pub fn closure(&self, seeds: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut set: BTreeSet<usize> = seeds.into_iter().collect();
        set.insert(0);
        loop {
            let cur: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &a in &cur {
                set.insert(self.dual(a));
                for &b in &cur {
                    set.extend(self.product(a, b).iter().enumerate().filter(|(_, &c)| c > 0).map(|(k, _)| k));
                }
            }
            if set.len() == before {
                return set.into_iter().collect();
            }
        }
    }

    /// Every closed sub-basis other than the unit alone and the whole basis.
    pub fn proper_subrings(&self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << (r - 1).min(16)) {
            let seeds = (1..r).filter(|i| mask & (1 << (i - 1)) != 0);
            let c = self.closure(seeds);
            if c.len() < r {
                out.insert(c);
            }
        }
        out.into_iter().collect()
    }

    pub fn subring_generated(&self, seeds: &[usize]) -> Result<SubBasis, RingError> {
        if let Some(&s) = seeds.iter().find(|&&s| s >= self.rank()) {
            return Err(RingError::Index(s));
        }
        let indices = self.closure(seeds.iter().copied());
        let dims = self.fpdim()?;
        let fpdim = sum_of_squares(&indices.iter().map(|&i| dims.dims[i].clone()).collect::<Vec<_>>());
        Ok(SubBasis { indices, fpdim })
    }

    /// The induced ring on a closed sub-basis, with indices in sub-basis order.
    pub fn restrict(&self, indices: &[usize]) -> Result<FusionRing, RingError> {
        let r = indices.len();
        let pos = |k: usize| indices.iter().position(|&x| x == k);
        let names = indices.iter().map(|&i| self.names[i].clone()).collect();
        let dual = indices.iter().map(|&i| pos(self.dual(i)).ok_or(RingError::Index(i))).collect::<Result<_, _>>()?;
        let mut t = vec![0u32; r * r * r];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                for (k, &c) in self.product(i, j).iter().enumerate().filter(|(_, &c)| c > 0) {
                    let kk = pos(k).ok_or(RingError::Index(k))?;
                    t[(a * r + b) * r + kk] = c;
                }
            }
        }
        FusionRing::new(format!("{}_sub", self.name), names, dual, t)
    }

    pub fn adjoint_support(&self) -> Vec<usize> {
        let seeds: Vec<usize> = (0..self.rank())
            .flat_map(|i| {
                let p = self.product(i, self.dual(i));
                p.iter().enumerate().filter(|(_, &c)| c > 0).map(|(k, _)| k).collect::<Vec<_>>()
            })
            .collect();
        self.closure(seeds)
    }

    pub fn universal_grading(&self) -> Result<Grading, RingError> {
        let r = self.rank();
        let ad = self.adjoint_support();
        let in_ad = |k: usize| ad.contains(&k);
        // j ~ k iff j dual(k) meets the adjoint support
        let mut comp_of = vec![usize::MAX; r];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for j in 0..r {
            if comp_of[j] != usize::MAX {
                continue;
            }
            let c = components.len();
            let members: Vec<usize> = (j..r)
                .filter(|&k| comp_of[k] == usize::MAX)
                .filter(|&k| self.product(j, self.dual(k)).iter().enumerate().any(|(m, &n)| n > 0 && in_ad(m)))
                .collect();
            for &k in &members {
                comp_of[k] = c;
            }
            components.push(members);
        }
        if components[0] != ad {
            return Err(RingError::GradingInconsistent(format!(
                "unit component {:?} differs from the adjoint support {ad:?}",
                components[0]
            )));
        }
        // the relation must be transitive: recheck every pair against the partition
        for j in 0..r {
            for k in 0..r {
                let related = self.product(j, self.dual(k)).iter().enumerate().any(|(m, &n)| n > 0 && in_ad(m));
                if related != (comp_of[j] == comp_of[k]) {
                    return Err(RingError::GradingInconsistent(format!("relation is not an equivalence at ({j}, {k})")));
                }
            }
        }
        let g = components.len();
        let mut table = vec![vec![usize::MAX; g]; g];
        for a in 0..r {
            for b in 0..r {
                let (ca, cb) = (comp_of[a], comp_of[b]);
                for (k, _) in self.product(a, b).iter().enumerate().filter(|(_, &c)| c > 0) {
                    let t = &mut table[ca][cb];
                    if *t == usize::MAX {
                        *t = comp_of[k];
                    } else if *t != comp_of[k] {
                        return Err(RingError::GradingInconsistent(format!(
                            "product of components {ca} and {cb} meets components {} and {}",
                            *t, comp_of[k]
                        )));
                    }
                }
            }
        }
        check_group(&table).map_err(RingError::GradingInconsistent)?;

        let dims = self.fpdim()?;
        let component_fpdims: Vec<RealNumber> = components
            .iter()
            .map(|c| sum_of_squares(&c.iter().map(|&i| dims.dims[i].clone()).collect::<Vec<_>>()))
            .collect();
        check_dimension_equation(&dims, &component_fpdims)?;
        Ok(Grading { components, group_table: table, adjoint_support: ad, component_fpdims })
    }

    /// The grading exists and has more than one component.
    pub fn has_nontrivial_grading(&self) -> bool {
        self.universal_grading().map(|g| !g.is_trivial()).unwrap_or(false)
    }
}

fn check_group(t: &[Vec<usize>]) -> Result<(), String> {
    let g = t.len();
    for a in 0..g {
        if t[0][a] != a || t[a][0] != a {
            return Err(format!("component 0 is not an identity for component {a}"));
        }
        let mut row: Vec<usize> = t[a].clone();
        row.sort_unstable();
        if row != (0..g).collect::<Vec<_>>() {
            return Err(format!("row {a} of the component table is not a permutation"));
        }
        for b in 0..g {
            for c in 0..g {
                if t[t[a][b]][c] != t[a][t[b][c]] {
                    return Err(format!("component product is not associative at ({a}, {b}, {c})"));
                }
            }
        }
    }
    Ok(())
}

/// All components have equal FP dimension and the total is `|G|` times it.
fn check_dimension_equation(dims: &FpDims, comp: &[RealNumber]) -> Result<(), RingError> {
    let g = comp.len() as i64;
    let base = &comp[0];
    for (c, d) in comp.iter().enumerate() {
        if d.cmp_value(base) != Ordering::Equal {
            return Err(RingError::GradingInconsistent(format!("component {c} has FP dimension {d}, unit component {base}")));
        }
    }
    let ok = match (dims.total.as_exact(), base.as_exact()) {
        (Some(t), Some(b)) => t.try_sub(&b.scale_int(g)).map(|x| x.is_zero()).unwrap_or(false),
        _ => {
            let scaled = RealNumber::Enclosed(base.enclosure(48).scale(&Rational::from_integer(g.into())));
            dims.total.cmp_value(&scaled) == Ordering::Equal
        }
    };
    if ok {
        Ok(())
    } else {
        Err(RingError::GradingInconsistent(format!("total FP dimension {} is not {g} times {base}", dims.total)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactnum::QuadNum;

    fn names(r: &FusionRing, c: &[usize]) -> Vec<String> {
        c.iter().map(|&i| r.label(i).to_string()).collect()
    }

    #[test]
    fn fib_z2_grading() {
        let r = catalog::fib_z2();
        let g = r.universal_grading().unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(names(&r, &g.components[0]), ["1", "X"]);
        assert_eq!(names(&r, &g.components[1]), ["Y", "Z"]);
        assert!(g.is_elementary_abelian_2());
    }

    #[test]
    fn k12_grading() {
        let r = catalog::k12();
        let g = r.universal_grading().unwrap();
        assert_eq!(names(&r, &g.components[0]), ["1", "X", "Y"]);
        assert_eq!(names(&r, &g.components[1]), ["Z"]);
        assert_eq!(g.component_fpdims, vec![RealNumber::Exact(QuadNum::from_int(6)); 2]);
    }

    #[test]
    fn group_ring_grading() {
        let r = catalog::z2_z2();
        let g = r.universal_grading().unwrap();
        // oracle: for a group ring every x dual(x) is the unit, so the adjoint
        // support is the unit alone and each element is its own component
        for i in 0..4 {
            assert_eq!(r.product(i, r.dual(i)), &[1, 0, 0, 0][..]);
        }
        assert_eq!(g.adjoint_support, vec![0]);
        assert_eq!(g.components, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert!(g.is_elementary_abelian_2());
    }

    #[test]
    fn fib_is_trivially_graded() {
        let g = catalog::fib().universal_grading().unwrap();
        assert!(g.is_trivial());
        assert!(!catalog::fib().has_nontrivial_grading());
    }

    #[test]
    fn subrings() {
        let r = catalog::k12();
        let (x, y) = (r.index_of("X").unwrap(), r.index_of("Y").unwrap());
        let s = r.subring_generated(&[x]).unwrap();
        assert_eq!(s.indices, vec![0, x]);
        assert_eq!(s.fpdim, RealNumber::Exact(QuadNum::from_int(2)));
        let s = r.subring_generated(&[y]).unwrap();
        assert_eq!(s.indices, vec![0, x, y]);
        assert_eq!(s.fpdim, RealNumber::Exact(QuadNum::from_int(6)));
        assert!(r.restrict(&s.indices).unwrap().is_valid());
        assert_eq!(r.subring_generated(&[]).unwrap().indices, vec![0]);
        assert!(r.subring_generated(&[9]).is_err());
    }
}
