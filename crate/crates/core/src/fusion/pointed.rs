use serde::Serialize;

use super::FusionRing;

/// The group of invertible basis elements with its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvertibleGroup {
    /// Basis indices of the invertibles, ascending; `members[0] = 0`.
    pub members: Vec<usize>,
    /// `table[a][b]` is the position in `members` of `members[a] members[b]`.
    pub table: Vec<Vec<usize>>,
}

impl InvertibleGroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// True when the ring is pointed (every basis element is invertible).
    pub fn is_everything(&self, rank: usize) -> bool {
        self.members.len() == rank
    }

    /// Every element squares to the identity.
    pub fn is_elementary_abelian_2(&self) -> bool {
        (0..self.order()).all(|a| self.table[a][a] == 0) && is_abelian(&self.table)
    }
}

pub(crate) fn is_abelian(table: &[Vec<usize>]) -> bool {
    (0..table.len()).all(|a| (0..table.len()).all(|b| table[a][b] == table[b][a]))
}

/// Invertibles fixing a basis element under left multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilizer {
    pub element: usize,
    pub members: Vec<usize>,
    /// The invertible summands of `x dual(x)` are exactly the members, each
    /// with multiplicity one.
    pub relation_holds: bool,
}

impl FusionRing {
    fn is_invertible(&self, i: usize) -> bool {
        let p = self.product(i, self.dual(i));
        p[0] == 1 && p[1..].iter().all(|&c| c == 0)
    }

    pub fn invertibles(&self) -> InvertibleGroup {
        let members: Vec<usize> = (0..self.rank()).filter(|&i| self.is_invertible(i)).collect();
        let pos = |k: usize| members.iter().position(|&m| m == k);
        let table = members
            .iter()
            .map(|&a| {
                members
                    .iter()
                    .map(|&b| {
                        let p = self.product(a, b);
                        let k = p.iter().position(|&c| c != 0).expect("product of invertibles is nonzero");
                        pos(k).expect("invertibles are closed under products")
                    })
                    .collect()
            })
            .collect();
        InvertibleGroup { members, table }
    }

    pub fn is_pointed(&self) -> bool {
        (0..self.rank()).all(|i| self.is_invertible(i))
    }

    pub fn stabilizer(&self, x: usize) -> Stabilizer {
        let inv = self.invertibles();
        let members: Vec<usize> = inv.members.iter().copied().filter(|&g| self.n(g, x, x) == 1).collect();
        let xx = self.product(x, self.dual(x));
        let relation_holds = inv.members.iter().all(|&g| xx[g] == members.contains(&g) as u32);
        Stabilizer { element: x, members, relation_holds }
    }
}
