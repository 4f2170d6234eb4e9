use pbr_core::classical::{
    brel_compose, compose_deformed_partition, is_in_subcategory_e_hat, is_phi1_image, partition_compose,
    partition_defect, phi1, phi2, psi, DeformedPartition,
};
use pbr_core::deform::{compose_deformed, frothy_class_count, frothy_pair};
use pbr_core::factor::{
    compose_blocks, decompose_blocks, double_compose, double_to_pure, factorize, is_left_polarized, is_pure,
    is_right_polarized, pure_closure_check, pure_to_double, PurePbr,
};
use pbr_core::format::{parse_pbr, pbr_to_json};
use pbr_core::oriented::{closure_partial_brauer, cycle_count_check, epsilon_check, is_planar, o_compose};
use pbr_core::random::{
    random_balanced_object, random_o_morphism, random_object, random_partial_brauer, random_partition, random_pbr,
    random_planar_partial_brauer, random_relation,
};
use pbr_core::{compose, compose_all, labels, AlephSequence, DeformedMorphism, Edge, Pbr, Side, Vertex};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `None` when `f(a,b) + f(ba,c) = f(a,b,c) = f(b,c) + f(a,cb)`, otherwise
/// the three values.
fn additivity(a: &Pbr, b: &Pbr, c: &Pbr) -> Option<(usize, usize, usize)> {
    let f = |p: &Pbr, q: &Pbr| frothy_pair(p, q).unwrap();
    let left = f(a, b) + f(&compose(b, a).unwrap(), c);
    let mid = frothy_class_count(&AlephSequence::new(vec![a.clone(), b.clone(), c.clone()]).unwrap());
    let right = f(b, c) + f(a, &compose(c, b).unwrap());
    (left != mid || mid != right).then_some((left, mid, right))
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(256)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn composition_is_associative(seed: u64, n in 0usize..4, m in 0usize..4, k in 0usize..4, l in 0usize..4, d in 0.1f64..0.6) {
        let mut r = rng(seed);
        let (w, x, y, z) = (labels("w", n), labels("x", m), labels("y", k), labels("z", l));
        let a = random_pbr(&mut r, &w, &x, d);
        let b = random_pbr(&mut r, &x, &y, d);
        let c = random_pbr(&mut r, &y, &z, d);
        let left = compose(&c, &compose(&b, &a).unwrap()).unwrap();
        let right = compose(&compose(&c, &b).unwrap(), &a).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(compose_all(&[a, b, c]).unwrap(), left);
    }

    #[test]
    fn identity_laws(seed: u64, n in 0usize..5, m in 0usize..5, d in 0.0f64..1.0) {
        let mut r = rng(seed);
        let (x, y) = (labels("x", n), labels("y", m));
        let a = random_pbr(&mut r, &x, &y, d);
        prop_assert_eq!(&compose(&Pbr::identity(&y).unwrap(), &a).unwrap(), &a);
        prop_assert_eq!(&compose(&a, &Pbr::identity(&x).unwrap()).unwrap(), &a);
    }

    #[test]
    fn star_reverses_composition(seed: u64, n in 0usize..4, m in 0usize..4, k in 0usize..4) {
        let mut r = rng(seed);
        let (x, y, z) = (labels("x", n), labels("y", m), labels("z", k));
        let a = random_pbr(&mut r, &x, &y, 0.3);
        let b = random_pbr(&mut r, &y, &z, 0.3);
        prop_assert_eq!(compose(&b, &a).unwrap().star(), compose(&a.star(), &b.star()).unwrap());
        prop_assert_eq!(a.star().star(), a);
    }

    #[test]
    fn tensor_is_functorial(seed: u64, n in 0usize..3, m in 0usize..3, k in 0usize..3) {
        let mut r = rng(seed);
        let (x, y, z) = (labels("x", n), labels("y", m), labels("z", k));
        let (x2, y2, z2) = (labels("p", k), labels("q", n), labels("s", m));
        let a = random_pbr(&mut r, &x, &y, 0.3);
        let b = random_pbr(&mut r, &y, &z, 0.3);
        let c = random_pbr(&mut r, &x2, &y2, 0.3);
        let e = random_pbr(&mut r, &y2, &z2, 0.3);
        prop_assert_eq!(
            compose(&b.tensor(&e), &a.tensor(&c)).unwrap(),
            compose(&b, &a).unwrap().tensor(&compose(&e, &c).unwrap())
        );
    }

    #[test]
    fn deformation_is_additive_on_partition_images(seed: u64, n in 0usize..4, m in 0usize..4, k in 0usize..4, l in 0usize..4) {
        let mut r = rng(seed);
        let (w, x, y, z) = (labels("w", n), labels("x", m), labels("y", k), labels("z", l));
        let a = psi(&random_partition(&mut r, &w, &x));
        let b = psi(&random_partition(&mut r, &x, &y));
        let c = psi(&random_partition(&mut r, &y, &z));
        prop_assert_eq!(additivity(&a, &b, &c), None);
    }

    #[test]
    fn deformation_is_additive_on_partial_brauer(seed: u64, n in 0usize..5, m in 0usize..5, k in 0usize..5, l in 0usize..5) {
        let mut r = rng(seed);
        let (w, x, y, z) = (labels("w", n), labels("x", m), labels("y", k), labels("z", l));
        let a = random_partial_brauer(&mut r, &w, &x, 0.9);
        let b = random_partial_brauer(&mut r, &x, &y, 0.9);
        let c = random_partial_brauer(&mut r, &y, &z, 0.9);
        prop_assert_eq!(additivity(&a, &b, &c), None);
    }

    #[test]
    fn identity_adds_no_deformation(seed: u64, n in 0usize..4, m in 0usize..4) {
        let mut r = rng(seed);
        let (x, y) = (labels("x", n), labels("y", m));
        let a = random_pbr(&mut r, &x, &y, 0.5);
        prop_assert_eq!(frothy_pair(&Pbr::identity(&x).unwrap(), &a).unwrap(), 0);
        prop_assert_eq!(frothy_pair(&a, &Pbr::identity(&y).unwrap()).unwrap(), 0);
    }

    #[test]
    fn embeddings_respect_composition(seed: u64, n in 0usize..4, m in 0usize..4, k in 0usize..4) {
        let mut r = rng(seed);
        let (x, y, z) = (labels("x", n), labels("y", m), labels("z", k));
        let a = random_relation(&mut r, &x, &y, 0.4);
        let b = random_relation(&mut r, &y, &z, 0.4);
        let ba = brel_compose(&b, &a).unwrap();
        prop_assert_eq!(compose(&phi1(&b), &phi1(&a)).unwrap(), phi1(&ba));
        prop_assert_eq!(compose(&phi2(&b), &phi2(&a)).unwrap(), phi2(&ba));
        prop_assert!(is_in_subcategory_e_hat(&phi1(&a)));
        let p = random_pbr(&mut r, &x, &y, 0.4);
        prop_assert_eq!(is_in_subcategory_e_hat(&p), is_phi1_image(&p));
    }

    #[test]
    fn partitions_match_their_pbr_images(seed: u64, n in 0usize..4, m in 0usize..4, k in 0usize..4) {
        let mut r = rng(seed);
        let (x, y, z) = (labels("x", n), labels("y", m), labels("z", k));
        let a = random_partition(&mut r, &x, &y);
        let b = random_partition(&mut r, &y, &z);
        prop_assert_eq!(compose(&psi(&b), &psi(&a)).unwrap(), psi(&partition_compose(&b, &a).unwrap()));
        prop_assert_eq!(partition_defect(&b, &a).unwrap(), frothy_pair(&psi(&a), &psi(&b)).unwrap());
        let da = DeformedPartition::new(a, 1);
        let db = DeformedPartition::new(b, 2);
        prop_assert_eq!(
            compose_deformed_partition(&db, &da).unwrap().psi_bar(),
            compose_deformed(&db.psi_bar(), &da.psi_bar()).unwrap()
        );
    }

    #[test]
    fn factorization_recomposes(seed: u64, n in 0usize..5, m in 0usize..5, d in 0.0f64..1.0) {
        let mut r = rng(seed);
        let (x, y) = (labels("x", n), labels("y", m));
        let a = random_pbr(&mut r, &x, &y, d);
        let f = factorize(&a);
        prop_assert!(is_left_polarized(&f.left));
        prop_assert!(is_right_polarized(&f.right));
        prop_assert!(is_pure(f.pure.as_pbr()));
        prop_assert_eq!(f.recompose(), a);
    }

    #[test]
    fn block_engine_agrees(seed: u64, n in 0usize..5, m in 0usize..5, k in 0usize..5, d in 0.05f64..0.7) {
        let mut r = rng(seed);
        let (x, y, z) = (labels("x", n), labels("y", m), labels("z", k));
        let a = random_pbr(&mut r, &x, &y, d);
        let b = random_pbr(&mut r, &y, &z, d);
        let blocks = compose_blocks(&decompose_blocks(&b), &decompose_blocks(&a)).unwrap();
        prop_assert_eq!(blocks.to_pbr(), compose(&b, &a).unwrap());
    }

    #[test]
    fn pure_pbrs_form_the_double(seed: u64, n in 0usize..4, m in 0usize..4, k in 0usize..4) {
        let mut r = rng(seed);
        let (x, y, z) = (labels("x", n), labels("y", m), labels("z", k));
        let pure = |r: &mut ChaCha8Rng, s: &[String], t: &[String]| {
            let f = factorize(&random_pbr(r, s, t, 0.4));
            f.pure
        };
        let a = pure(&mut r, &x, &y);
        let b = pure(&mut r, &y, &z);
        let ba = pure_closure_check(&b, &a).unwrap();
        prop_assert_eq!(frothy_pair(a.as_pbr(), b.as_pbr()).unwrap(), 0);
        prop_assert_eq!(&double_to_pure(&pure_to_double(&a)), &a);
        prop_assert_eq!(
            double_compose(&pure_to_double(&b), &pure_to_double(&a)).unwrap(),
            pure_to_double(&ba)
        );
        prop_assert!(PurePbr::new(Pbr::identity_bar(&x).unwrap()).is_none() || n == 0);
    }

    #[test]
    fn partial_brauer_closure_and_cycles(seed: u64, n in 0usize..6, m in 0usize..6, k in 0usize..6, d in 0.3f64..1.0) {
        let mut r = rng(seed);
        let (x, y, z) = (labels("x", n), labels("y", m), labels("z", k));
        let a = random_partial_brauer(&mut r, &x, &y, d);
        let b = random_partial_brauer(&mut r, &y, &z, d);
        closure_partial_brauer(&b, &a).unwrap();
        cycle_count_check(&b, &a).unwrap();
    }

    #[test]
    fn planar_diagrams_compose_to_planar(seed: u64, n in 0usize..7, m in 0usize..7, k in 0usize..7) {
        let mut r = rng(seed);
        let (x, y, z) = (labels("x", n), labels("y", m), labels("z", k));
        let a = random_planar_partial_brauer(&mut r, &x, &y, 0.9);
        let b = random_planar_partial_brauer(&mut r, &y, &z, 0.9);
        prop_assert!(is_planar(&compose(&b, &a).unwrap()).unwrap());
    }

    #[test]
    fn oriented_category_laws(seed: u64, n in 0usize..5, m in 0usize..5, k in 0usize..5, l in 0usize..5) {
        let mut r = rng(seed);
        let s0 = random_object(&mut r, "w", n);
        let objs = (
            random_balanced_object(&mut r, "x", m, &s0),
            random_balanced_object(&mut r, "y", k, &s0),
            random_balanced_object(&mut r, "z", l, &s0),
        );
        if let (Some(s1), Some(s2), Some(s3)) = objs {
            let a = random_o_morphism(&mut r, &s0, &s1).unwrap();
            let b = random_o_morphism(&mut r, &s1, &s2).unwrap();
            let c = random_o_morphism(&mut r, &s2, &s3).unwrap();
            let left = o_compose(&c, &o_compose(&b, &a).unwrap()).unwrap();
            let right = o_compose(&o_compose(&c, &b).unwrap(), &a).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(&o_compose(&epsilon_check(&s1), &a).unwrap(), &a);
            prop_assert_eq!(&o_compose(&a, &epsilon_check(&s0)).unwrap(), &a);
        }
    }

    #[test]
    fn json_round_trip(seed: u64, n in 0usize..5, m in 0usize..5, d in 0.0f64..1.0) {
        let mut r = rng(seed);
        let a = random_pbr(&mut r, &labels("x", n), &labels("y", m), d);
        prop_assert_eq!(parse_pbr(&pbr_to_json(&a)).unwrap(), a);
    }
}

#[test]
fn distinguished_idempotents_are_idempotent() {
    for n in 0..4 {
        let x = labels("x", n);
        for p in [Pbr::identity_bar(&x).unwrap(), Pbr::identity_hat(&x).unwrap()] {
            assert_eq!(compose(&p, &p).unwrap(), p);
        }
    }
}

fn edges(list: &[(&str, Side, &str, Side)]) -> Vec<Edge> {
    list.iter()
        .map(|&(a, sa, b, sb)| Edge::new(Vertex::new(a, sa), Vertex::new(b, sb)))
        .collect()
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

// A middle loop pair that sits on a boundary walk of (b, c) but is cut off
// once `a` makes `x` internal.
#[test]
fn deformation_is_not_additive_when_loops_are_absorbed() {
    use Side::{Codomain as C, Domain as D};
    let a = Pbr::empty(vec![], names(&["x"])).unwrap();
    let b = Pbr::from_edges(
        names(&["x"]),
        names(&["y"]),
        &edges(&[("x", D, "y", C), ("y", C, "x", D), ("y", C, "y", C)]),
    )
    .unwrap();
    let c = Pbr::from_edges(names(&["y"]), vec![], &edges(&[("y", D, "y", D)])).unwrap();
    assert_eq!(additivity(&a, &b, &c), Some((1, 1, 0)));
    let (da, db, dc) = (
        DeformedMorphism::new(a, 0),
        DeformedMorphism::new(b, 0),
        DeformedMorphism::new(c, 0),
    );
    let left = compose_deformed(&dc, &compose_deformed(&db, &da).unwrap()).unwrap();
    let right = compose_deformed(&compose_deformed(&dc, &db).unwrap(), &da).unwrap();
    assert_eq!(left.pbr, right.pbr);
    assert_eq!((left.exponent, right.exponent), (1, 0));
}

// An alternating cycle that lies on a walk between two vertices of Z, so the
// composite b∘a only keeps the edge z -> w.
#[test]
fn deformation_is_not_additive_when_a_cycle_is_absorbed() {
    use Side::{Codomain as C, Domain as D};
    let y = names(&["y1", "y2"]);
    let z = names(&["z", "w"]);
    let a = Pbr::from_edges(vec![], y.clone(), &edges(&[("y1", C, "y2", C)])).unwrap();
    let b = Pbr::from_edges(
        y,
        z.clone(),
        &edges(&[("z", C, "y1", D), ("y2", D, "y1", D), ("y2", D, "w", C)]),
    )
    .unwrap();
    let c = Pbr::empty(z, vec![]).unwrap();
    assert_eq!(additivity(&a, &b, &c), Some((0, 1, 1)));
}

fn all_pbrs(x: &[String], y: &[String]) -> Vec<Pbr> {
    let n = x.len() + y.len();
    (0u32..1 << (n * n))
        .map(|mask| {
            let edges = (0..n * n).filter(|c| mask >> c & 1 == 1).map(|c| (c / n, c % n));
            Pbr::from_indices(x.to_vec(), y.to_vec(), edges).unwrap()
        })
        .collect()
}

fn reflexive_transitive(p: &Pbr) -> bool {
    let n = p.len();
    (0..n).all(|i| p.has_edge(i, i))
        && (0..n).all(|i| (0..n).all(|j| !p.has_edge(i, j) || (0..n).all(|k| !p.has_edge(j, k) || p.has_edge(i, k))))
}

#[test]
fn bar_sandwiches_are_the_reflexive_transitive_pbrs() {
    use std::collections::HashSet;
    for n in 0..=2 {
        let (x, y) = (labels("x", n), labels("y", n));
        let (ex, ey) = (Pbr::identity_bar(&x).unwrap(), Pbr::identity_bar(&y).unwrap());
        let all = all_pbrs(&x, &y);
        let sandwiches: HashSet<Pbr> = all
            .iter()
            .map(|p| compose(&ey, &compose(p, &ex).unwrap()).unwrap())
            .collect();
        let closed: HashSet<Pbr> = all.into_iter().filter(reflexive_transitive).collect();
        assert_eq!(sandwiches, closed, "size {n}");
    }
}
