//! The enumerator against a brute-force oracle: every duality involution,
//! every entry looped independently, no symmetry reduction, validity by
//! `verify_axioms` and deduplication by pairwise `isomorphic`.

use fusionring::catalog;
use fusionring::enumerate::{enumerate, PointedFilter, SearchSpec};
use fusionring::fusion::FusionRing;

fn involutions(r: usize) -> Vec<Vec<usize>> {
    fn rec(d: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
        if i == d.len() {
            out.push(d.clone());
            return;
        }
        if d[i] != usize::MAX {
            return rec(d, i + 1, out);
        }
        for j in i..d.len() {
            if d[j] == usize::MAX {
                d[i] = j;
                d[j] = i;
                rec(d, i + 1, out);
                d[i] = usize::MAX;
                d[j] = usize::MAX;
            }
        }
    }
    let mut d = vec![usize::MAX; r];
    d[0] = 0;
    let mut out = Vec::new();
    rec(&mut d, 1, &mut out);
    out
}

fn brute_force(r: usize, bound: u32, self_dual: bool) -> Vec<FusionRing> {
    let names: Vec<String> = (0..r).map(|i| format!("e{i}")).collect();
    let free: Vec<(usize, usize, usize)> =
        (1..r).flat_map(|i| (1..r).flat_map(move |j| (1..r).map(move |k| (i, j, k)))).collect();
    let mut classes: Vec<FusionRing> = Vec::new();
    for dual in involutions(r) {
        if self_dual && dual.iter().enumerate().any(|(i, &d)| i != d) {
            continue;
        }
        let mut values = vec![0u32; free.len()];
        loop {
            let ring = FusionRing::from_fn("oracle", names.clone(), dual.clone(), |i, j, k| {
                if k == 0 {
                    (j == dual[i]) as u32
                } else {
                    values[free.iter().position(|&t| t == (i, j, k)).unwrap()]
                }
            })
            .unwrap();
            if ring.verify_axioms().is_empty() && !classes.iter().any(|c| FusionRing::isomorphic(c, &ring).is_some()) {
                classes.push(ring);
            }
            // odometer
            let mut p = 0;
            while p < values.len() && values[p] == bound {
                values[p] = 0;
                p += 1;
            }
            if p == values.len() {
                break;
            }
            values[p] += 1;
        }
    }
    classes
}

fn same_classes(a: &[FusionRing], b: &[FusionRing]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| FusionRing::isomorphic(x, y).is_some()))
}

#[test]
fn agrees_with_brute_force_up_to_rank_3() {
    for r in 1..=3 {
        for bound in 0..=2 {
            for self_dual in [false, true] {
                let mut spec = SearchSpec::new(r, bound);
                spec.require_self_dual = self_dual;
                let fast = enumerate(&spec).unwrap().rings;
                let slow = brute_force(r, bound, self_dual);
                assert!(same_classes(&fast, &slow), "rank {r} B {bound} self-dual {self_dual}: {} vs {}", fast.len(), slow.len());
                for x in &fast {
                    assert!(x.is_valid());
                    assert!(x.max_coeff() <= bound.max(1));
                }
            }
        }
    }
}

#[test]
fn rank2_family_by_direct_associativity() {
    // X X = 1 + n X is associative for every n: (XX)X and X(XX) both equal
    // n 1 + (1 + n^2) X.
    for n in 0..=3u32 {
        let k = catalog::k_n(n);
        let xx = k.product(1, 1).to_vec();
        assert_eq!(xx, vec![1, n]);
        let left: Vec<u32> = (0..2).map(|c| (0..2).map(|m| xx[m] * k.n(m, 1, c)).sum()).collect();
        let right: Vec<u32> = (0..2).map(|c| (0..2).map(|m| xx[m] * k.n(1, m, c)).sum()).collect();
        assert_eq!(left, vec![n, 1 + n * n]);
        assert_eq!(left, right);
    }
    let res = enumerate(&SearchSpec::new(2, 3).self_dual()).unwrap();
    let want: Vec<FusionRing> = (0..=3).map(catalog::k_n).collect();
    assert!(same_classes(&res.rings, &want));
}

/// Order-4 groups with every element its own inverse, from their tables.
#[test]
fn pointed_rank4_against_group_tables() {
    let mut tables = Vec::new();
    let mut t = [[0usize; 4]; 4];
    for (i, row) in t.iter_mut().enumerate() {
        row[0] = i;
    }
    t[0] = [0, 1, 2, 3];
    fn fill(t: &mut [[usize; 4]; 4], cell: usize, out: &mut Vec<[[usize; 4]; 4]>) {
        if cell == 9 {
            let assoc = (0..4).all(|a| (0..4).all(|b| (0..4).all(|c| t[t[a][b]][c] == t[a][t[b][c]])));
            if assoc {
                out.push(*t);
            }
            return;
        }
        let (a, b) = (1 + cell / 3, 1 + cell % 3);
        for v in 0..4 {
            let latin = (1..b).all(|c| t[a][c] != v) && (1..a).all(|c| t[c][b] != v) && t[a][0] != v && t[0][b] != v;
            if latin && (a != b || v == 0) {
                t[a][b] = v;
                fill(t, cell + 1, out);
            }
        }
    }
    fill(&mut t, 0, &mut tables);
    let names: Vec<String> = ["1", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let rings: Vec<FusionRing> = tables
        .iter()
        .map(|t| FusionRing::from_fn("g", names.clone(), vec![0, 1, 2, 3], |i, j, k| (t[i][j] == k) as u32).unwrap())
        .collect();
    assert!(!rings.is_empty());
    for r in &rings {
        assert!(FusionRing::isomorphic(r, &catalog::z2_z2()).is_some());
    }
    let res = enumerate(&SearchSpec::new(4, 1).self_dual().pointed(PointedFilter::Pointed)).unwrap();
    assert!(same_classes(&res.rings, &rings[..1]));
}
