use std::collections::HashSet;

use super::FusionRing;

impl FusionRing {
    /// Deligne product. The pair `(a, b)` gets index `a + rank(A) * b`, so
    /// the basis of `A` comes first, then its translates by each element of `B`.
    pub fn deligne_product(a: &FusionRing, b: &FusionRing) -> FusionRing {
        let (ra, rb) = (a.rank(), b.rank());
        let r = ra * rb;
        let idx = |x: usize, y: usize| x + ra * y;
        let short = |x: usize, y: usize| match (x, y) {
            (_, 0) => a.names[x].clone(),
            (0, _) => b.names[y].clone(),
            _ => format!("{}.{}", a.names[x], b.names[y]),
        };
        let long = |x: usize, y: usize| if x == 0 && y == 0 { a.names[0].clone() } else { format!("{}.{}", a.names[x], b.names[y]) };
        let mut names: Vec<String> = (0..r).map(|p| short(p % ra, p / ra)).collect();
        if names.iter().collect::<HashSet<_>>().len() < r {
            names = (0..r).map(|p| long(p % ra, p / ra)).collect();
        }
        let dual = (0..r).map(|p| idx(a.dual(p % ra), b.dual(p / ra))).collect();
        let mut t = vec![0u32; r * r * r];
        for p in 0..r {
            for q in 0..r {
                for s in 0..r {
                    t[(p * r + q) * r + s] = a.n(p % ra, q % ra, s % ra) * b.n(p / ra, q / ra, s / ra);
                }
            }
        }
        FusionRing::new(format!("{}_{}", a.name, b.name), names, dual, t).expect("product of well-formed rings is well formed")
    }
}
