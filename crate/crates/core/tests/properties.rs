use fusionring::catalog;
use fusionring::center::induction_profile;
use fusionring::enumerate::{canonical_form, enumerate, SearchSpec};
use fusionring::exactnum::{QuadNum, Rational};
use fusionring::format::{parse, parse_number, serialize};
use fusionring::fusion::{Combination, FusionRing};
use num_bigint::BigInt;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 1000, ..ProptestConfig::default() }
}

fn group_ring(name: &str, names: &[&str], mul: impl Fn(usize, usize) -> usize, inv: impl Fn(usize) -> usize) -> FusionRing {
    let r = names.len();
    FusionRing::from_fn(name, names.iter().map(|s| s.to_string()).collect(), (0..r).map(&inv).collect(), |i, j, k| {
        (mul(i, j) == k) as u32
    })
    .unwrap()
}

/// Catalog rings, a few products and some non-self-dual or non-commutative
/// group rings.
fn pool() -> Vec<FusionRing> {
    let mut v = catalog::all();
    v.push(FusionRing::deligne_product(&catalog::k_n(2), &catalog::z2()));
    v.push(FusionRing::deligne_product(&catalog::k_n(3), &catalog::fib()));
    v.push(group_ring("z3", &["1", "g", "g2"], |a, b| (a + b) % 3, |a| (3 - a) % 3));
    v.push(group_ring("z4", &["1", "g", "g2", "g3"], |a, b| (a + b) % 4, |a| (4 - a) % 4));
    let s3 = |x: usize, y: usize| {
        let (a, b, c, d) = (x % 3, x / 3, y % 3, y / 3);
        let a2 = if b == 0 { (a + c) % 3 } else { (a + 3 - c) % 3 };
        a2 + 3 * ((b + d) % 2)
    };
    let inv = move |x: usize| (0..6).find(|&y| s3(x, y) == 0).unwrap();
    v.push(group_ring("s3", &["1", "r", "r2", "s", "rs", "r2s"], s3, inv));
    v
}

/// A ring from the pool and a unit-fixing relabeling of it.
fn ring_and_perm() -> impl Strategy<Value = (FusionRing, Vec<usize>)> {
    let p = pool();
    (0..p.len()).prop_flat_map(move |k| {
        let ring = p[k].clone();
        let rest: Vec<usize> = (1..ring.rank()).collect();
        Just(rest).prop_shuffle().prop_map(move |rest| {
            let mut perm = vec![0];
            perm.extend(rest);
            (ring.clone(), perm)
        })
    })
}

fn combination(r: usize) -> impl Strategy<Value = Combination> {
    prop::collection::vec(0u64..4, r).prop_map(Combination)
}

fn ring_and_combinations() -> impl Strategy<Value = (FusionRing, Combination, Combination, Combination)> {
    let p = pool();
    (0..p.len()).prop_flat_map(move |k| {
        let ring = p[k].clone();
        let r = ring.rank();
        (Just(ring), combination(r), combination(r), combination(r))
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..8).prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

/// Three numbers in one field Q(sqrt d).
fn field_triple() -> impl Strategy<Value = (QuadNum, QuadNum, QuadNum)> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(6), Just(13)].prop_flat_map(|d| {
        let q = move || (rational(), rational()).prop_map(move |(a, b)| QuadNum::new(a, b, d));
        (q(), q(), q())
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn field_axioms((x, y, z) in field_triple()) {
        let add = |a: &QuadNum, b: &QuadNum| a.try_add(b).unwrap();
        let mul = |a: &QuadNum, b: &QuadNum| a.try_mul(b).unwrap();
        prop_assert_eq!(add(&x, &y), add(&y, &x));
        prop_assert_eq!(mul(&x, &y), mul(&y, &x));
        prop_assert_eq!(add(&add(&x, &y), &z), add(&x, &add(&y, &z)));
        prop_assert_eq!(mul(&mul(&x, &y), &z), mul(&x, &mul(&y, &z)));
        prop_assert_eq!(mul(&x, &add(&y, &z)), add(&mul(&x, &y), &mul(&x, &z)));
        prop_assert_eq!(add(&x, &QuadNum::zero()), x.clone());
        prop_assert_eq!(mul(&x, &QuadNum::one()), x.clone());
        prop_assert!(add(&x, &-&x).is_zero());
        prop_assert_eq!(x.try_sub(&y).unwrap(), add(&x, &-&y));
        if !x.is_zero() {
            prop_assert!(mul(&x, &x.recip().unwrap()).is_one());
            prop_assert_eq!(mul(&y, &x).try_div(&x).unwrap(), y.clone());
        }
        // ordering agrees with floating point away from ties
        let (fx, fy) = (x.to_f64(), y.to_f64());
        if (fx - fy).abs() > 1e-9 {
            prop_assert_eq!(fusionring::exactnum::quad_cmp(&x, &y).unwrap(), fx.total_cmp(&fy));
        }
        prop_assert_eq!(x.to_string().parse::<QuadNum>().unwrap(), x.clone());
        let parsed = parse_number(&x.to_string()).unwrap();
        prop_assert_eq!(parsed.as_exact().unwrap(), &x);
    }

    #[test]
    fn fpdim_is_a_homomorphism((ring, a, b, _) in ring_and_combinations()) {
        let fp = ring.fpdim().unwrap();
        let ab = ring.multiply(&a, &b);
        let da = ring.fpdim_of(&fp, a.coeffs());
        let db = ring.fpdim_of(&fp, b.coeffs());
        let dab = ring.fpdim_of(&fp, ab.coeffs());
        match (da.as_exact(), db.as_exact(), dab.as_exact()) {
            (Some(x), Some(y), Some(z)) => prop_assert_eq!(&x.try_mul(y).unwrap(), z),
            _ => prop_assert!((da.to_f64() * db.to_f64() - dab.to_f64()).abs() < 1e-6 * dab.to_f64().max(1.0)),
        }
    }

    #[test]
    fn tensor_products_associate((ring, a, b, c) in ring_and_combinations()) {
        let left = ring.multiply(&ring.multiply(&a, &b), &c);
        let right = ring.multiply(&a, &ring.multiply(&b, &c));
        prop_assert_eq!(&left, &right);
        // basis-by-basis expansion agrees with the bilinear product
        let r = ring.rank();
        let mut expanded = Combination::zero(r);
        for (k, &m) in c.coeffs().iter().enumerate() {
            expanded = expanded.add(&ring.tensor_expand(&ring.multiply(&a, &b), k).scale(m));
        }
        prop_assert_eq!(expanded, left);
    }

    #[test]
    fn grading_dimension_equation((ring, perm) in ring_and_perm()) {
        let ring = ring.permute(&perm);
        let g = ring.universal_grading().unwrap();
        let fp = ring.fpdim().unwrap();
        for d in &g.component_fpdims {
            prop_assert_eq!(d.cmp_value(&g.component_fpdims[0]), std::cmp::Ordering::Equal);
        }
        let order = QuadNum::from_int(g.order() as i64);
        match (g.component_fpdims[0].as_exact(), fp.total.as_exact()) {
            (Some(c), Some(t)) => prop_assert_eq!(&c.try_mul(&order).unwrap(), t),
            // mixed quadratic fields, e.g. K3 x Fib
            _ => {
                let (c, t) = (g.component_fpdims[0].to_f64(), fp.total.to_f64());
                prop_assert!((c * g.order() as f64 - t).abs() < 1e-9 * t);
            }
        }
    }

    #[test]
    fn induction_matrix_is_symmetric((ring, perm) in ring_and_perm()) {
        let ring = ring.permute(&perm);
        let h = induction_profile(&ring);
        prop_assert!(h.is_symmetric());
        for x in 0..ring.rank() {
            for y in 0..ring.rank() {
                prop_assert_eq!(h.h(x, y), h.h(ring.dual(x), ring.dual(y)));
            }
        }
    }

    #[test]
    fn canonical_form_is_an_invariant((ring, perm) in ring_and_perm()) {
        let c = canonical_form(&ring);
        prop_assert_eq!(&canonical_form(&c), &c);
        prop_assert_eq!(&canonical_form(&ring.permute(&perm)), &c);
        prop_assert!(FusionRing::isomorphic(&c, &ring).is_some());
    }

    #[test]
    fn documents_round_trip((ring, perm) in ring_and_perm(), suffix in "[a-z]{0,3}") {
        let ring = ring.permute(&perm).with_name(format!("{}{suffix}", ring.name()));
        let text = serialize(&ring);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &ring);
        prop_assert_eq!(serialize(&back), text);
    }
}

#[test]
fn pool_is_valid() {
    for r in pool() {
        assert!(r.is_valid(), "{}", r.name());
    }
}

#[test]
fn self_dual_outputs_have_exponent_two_groups() {
    for spec in [SearchSpec::new(3, 3).self_dual(), SearchSpec::new(4, 2).self_dual(), SearchSpec::new(5, 1).self_dual()] {
        let res = enumerate(&spec).unwrap();
        assert!(!res.rings.is_empty());
        for r in &res.rings {
            assert!(r.is_valid());
            assert!(r.universal_grading().unwrap().is_elementary_abelian_2(), "{}", serialize(r));
            assert!(r.invertibles().is_elementary_abelian_2(), "{}", serialize(r));
        }
    }
}
