//! Built-in rings: the rank-2 family `K_n`, the rank-4 rings `K12` and
//! `Fib x Z[Z2]`, and a few products.

use crate::fusion::FusionRing;

pub const NAMES: &[&str] = &["fib", "z2", "k_n", "k12", "fib_z2", "fib_fib", "z2_z2"];

fn labels(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Rank-4 self-dual commutative ring from the upper triangle of its table
/// over the basis 1, X, Y, Z.
fn rank4(name: &str, xx: [u32; 4], xy: [u32; 4], xz: [u32; 4], yy: [u32; 4], yz: [u32; 4], zz: [u32; 4]) -> FusionRing {
    FusionRing::from_fn(name, labels(&["1", "X", "Y", "Z"]), vec![0, 1, 2, 3], |i, j, k| {
        let row = match (i.min(j), i.max(j)) {
            (1, 1) => xx,
            (1, 2) => xy,
            (1, 3) => xz,
            (2, 2) => yy,
            (2, 3) => yz,
            (3, 3) => zz,
            _ => unreachable!(),
        };
        row[k]
    })
    .and_then(FusionRing::validate)
    .expect("catalog ring is valid")
}

/// `K_n`: `X X = 1 + n X`.
pub fn k_n(n: u32) -> FusionRing {
    FusionRing::from_fn(format!("k_{n}"), labels(&["1", "X"]), vec![0, 1], |_, _, k| [1, n][k])
        .and_then(FusionRing::validate)
        .expect("K_n is valid")
}

/// The Fibonacci ring `K_1`.
pub fn fib() -> FusionRing {
    k_n(1).with_name("fib")
}

/// The group ring of `Z2`, `K_0`.
pub fn z2() -> FusionRing {
    k_n(0).with_name("z2")
}

pub fn k12() -> FusionRing {
    rank4("k12", [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 0], [0, 0, 0, 2], [1, 1, 2, 0])
}

pub fn fib_z2() -> FusionRing {
    rank4("fib_z2", [1, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 1], [1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0])
}

pub fn fib_fib() -> FusionRing {
    rank4("fib_fib", [1, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 1, 1, 1])
}

pub fn z2_z2() -> FusionRing {
    rank4("z2_z2", [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [1, 0, 0, 0])
}

/// Looks up a ring by name; `k_n` takes its parameter from `n`.
pub fn by_name(name: &str, n: Option<u32>) -> Option<FusionRing> {
    Some(match name {
        "fib" => fib(),
        "z2" => z2(),
        "k_n" => k_n(n?),
        "k12" => k12(),
        "fib_z2" => fib_z2(),
        "fib_fib" => fib_fib(),
        "z2_z2" => z2_z2(),
        _ => {
            // also accept k_3 style names
            let n: u32 = name.strip_prefix("k_")?.parse().ok()?;
            k_n(n)
        }
    })
}

/// Every fixed catalog ring plus `K_2` and `K_3`.
pub fn all() -> Vec<FusionRing> {
    vec![fib(), z2(), k_n(2), k_n(3), k12(), fib_z2(), fib_fib(), z2_z2()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fib_z2_is_a_product() {
        let p = FusionRing::deligne_product(&fib(), &z2());
        assert!(FusionRing::isomorphic(&p, &fib_z2()).is_some());
        let p = FusionRing::deligne_product(&fib(), &fib());
        assert!(FusionRing::isomorphic(&p, &fib_fib()).is_some());
        let p = FusionRing::deligne_product(&z2(), &z2());
        assert!(FusionRing::isomorphic(&p, &z2_z2()).is_some());
    }

    #[test]
    fn lookup() {
        for n in NAMES {
            assert!(by_name(n, Some(2)).is_some(), "{n}");
        }
        assert!(by_name("k_n", None).is_none());
        assert_eq!(by_name("k_4", None).unwrap(), k_n(4));
        assert!(by_name("nope", None).is_none());
    }
}
