use super::FusionRing;
use crate::exactnum::char_poly;

/// `perm[i]` is the image of basis element `i`.
pub type Permutation = Vec<usize>;

/// Per-element data preserved by every based-ring isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Signature {
    self_dual: bool,
    row_total: u64,
    diagonal: Vec<u32>,
    char_poly: Vec<i128>,
}

impl FusionRing {
    pub(crate) fn signatures(&self) -> Vec<Signature> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                let mut diagonal: Vec<u32> = (0..r).map(|j| self.n(i, j, j)).collect();
                diagonal.sort_unstable();
                Signature {
                    self_dual: self.dual(i) == i,
                    row_total: self.product_totals(i),
                    diagonal,
                    char_poly: char_poly(&self.left_matrix(i)).map(|p| p.coeffs().to_vec()).unwrap_or_default(),
                }
            })
            .collect()
    }

    fn product_totals(&self, i: usize) -> u64 {
        (0..self.rank()).map(|j| self.product(i, j).iter().map(|&c| c as u64).sum::<u64>()).sum()
    }

    /// A unit-fixing basis bijection carrying `a` onto `b`, if one exists.
    pub fn isomorphic(a: &FusionRing, b: &FusionRing) -> Option<Permutation> {
        if a.rank() != b.rank() {
            return None;
        }
        let (sa, sb) = (a.signatures(), b.signatures());
        let (mut xa, mut xb) = (sa.clone(), sb.clone());
        xa.sort();
        xb.sort();
        if xa != xb {
            return None;
        }
        let mut found = None;
        search(a, b, &sa, &sb, &mut vec![usize::MAX; a.rank()], &mut vec![false; a.rank()], 0, &mut |p| {
            found = Some(p.to_vec());
            false
        });
        found
    }
}

/// Assigns `perm[i]` for `i` in order, checking every coefficient among the
/// already-assigned indices. Returns false once `f` asks to stop.
#[allow(clippy::too_many_arguments)]
fn search(
    a: &FusionRing,
    b: &FusionRing,
    sa: &[Signature],
    sb: &[Signature],
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    i: usize,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let r = a.rank();
    if i == r {
        return f(perm);
    }
    for c in 0..r {
        if used[c] || (i == 0) != (c == 0) || sa[i] != sb[c] {
            continue;
        }
        // the dual of i must go to the dual of c
        let di = a.dual(i);
        if di < i && perm[di] != b.dual(c) {
            continue;
        }
        if di == i && b.dual(c) != c {
            continue;
        }
        perm[i] = c;
        used[c] = true;
        let ok = (0..=i).all(|x| {
            (0..=i).all(|y| {
                (0..=i).all(|z| {
                    let (px, py, pz) = (perm[x], perm[y], perm[z]);
                    a.n(x, y, z) == b.n(px, py, pz)
                })
            })
        });
        if ok && !search(a, b, sa, sb, perm, used, i + 1, f) {
            return false;
        }
        used[c] = false;
        perm[i] = usize::MAX;
    }
    true
}

#[cfg(test)]
mod tests {
    use crate::catalog;
    use crate::fusion::FusionRing;

    #[test]
    fn identity_on_self() {
        for r in catalog::all() {
            let p = FusionRing::isomorphic(&r, &r).unwrap();
            assert!(r.permute(&p).same_structure(&r));
        }
        let r = catalog::k12();
        assert_eq!(FusionRing::isomorphic(&r, &r).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn fib_z2_vs_k12() {
        assert!(FusionRing::isomorphic(&catalog::fib_z2(), &catalog::k12()).is_none());
    }

    #[test]
    fn witness_maps_tensor() {
        let r = catalog::fib_z2();
        let q = r.permute(&[0, 3, 1, 2]);
        let p = FusionRing::isomorphic(&r, &q).unwrap();
        assert!(r.permute(&p).same_structure(&q));
    }

    #[test]
    fn products_commute_up_to_iso() {
        let cat = [catalog::fib(), catalog::z2(), catalog::k_n(2)];
        for a in &cat {
            for b in &cat {
                let ab = FusionRing::deligne_product(a, b);
                let ba = FusionRing::deligne_product(b, a);
                let p = FusionRing::isomorphic(&ab, &ba).unwrap();
                assert!(ab.permute(&p).same_structure(&ba));
            }
        }
    }
}
