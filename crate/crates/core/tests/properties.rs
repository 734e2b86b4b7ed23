mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::*;
use orbita_core::certify::certify_descent;
use orbita_core::elliptic::torsion_group;
use orbita_core::orbit::{classify, classify_certified, enumerate_bounded, Fate};
use orbita_core::{emit, parse, ECPoint, EllipticCurve, EngineOptions, Morphism, ProjPoint};

fn pt(c: &[i64]) -> ProjPoint {
    ProjPoint::from_i64(c).unwrap()
}

fn sample_maps() -> Vec<(String, P1Map, Morphism)> {
    criterion_maps(8, 77)
        .into_iter()
        .map(|(n, m)| {
            let f = m.to_morphism().unwrap();
            (n, m, f)
        })
        .collect()
}

#[test]
fn preimages_match_brute_force() {
    for (name, oracle, f) in sample_maps() {
        let small = naive_p1(50);
        let mut targets: BTreeSet<Vec<BigInt>> = small.iter().filter_map(|p| oracle.eval(p)).collect();
        targets.extend(naive_p1(3));
        for q in targets.iter().take(400) {
            let got: BTreeSet<Vec<BigInt>> = f.preimages_p1(&to_point(q)).unwrap().iter().map(to_vec).collect();
            for p in &got {
                assert_eq!(oracle.eval(p).as_ref(), Some(q), "{name}: {p:?} is not a preimage of {q:?}");
            }
            for p in &small {
                if oracle.eval(p).as_ref() == Some(q) {
                    assert!(got.contains(p), "{name}: preimage {p:?} of {q:?} missing");
                }
            }
        }
    }
}

#[test]
fn escaping_points_keep_growing() {
    for (name, oracle, f) in sample_maps() {
        let (cert, c) = classify_certified(&f, &EngineOptions::default()).unwrap();
        let cap = cert.cap().clone();
        let pts = c.candidates.points();
        let mut checked = 0;
        for (i, fate) in c.fates.iter().enumerate() {
            let Fate::Escaping { steps } = *fate else { continue };
            let mut q = to_vec(&pts[i]);
            for _ in 0..steps {
                q = oracle.eval(&q).unwrap();
            }
            assert!(height(&q) > cap, "{name}: {} left after {steps} steps but H = {}", pts[i], height(&q));
            // A hundred further steps, or until the coordinates pass 2^14 bits.
            for _ in 0..100 {
                let next = oracle.eval(&q).unwrap();
                assert!(height(&next) > height(&q), "{name}: height stopped growing past the cap");
                q = next;
                if height(&q).bits() > 1 << 14 {
                    break;
                }
            }
            checked += 1;
            if checked == 200 {
                break;
            }
        }
    }
}

#[test]
fn cycles_close_and_fates_are_consistent() {
    for (name, oracle, f) in sample_maps() {
        let (_, c) = classify_certified(&f, &EngineOptions::default()).unwrap();
        let pts = c.candidates.points();
        for cycle in &c.cycles {
            for (k, &i) in cycle.iter().enumerate() {
                let j = cycle[(k + 1) % cycle.len()];
                assert_eq!(f.evaluate(&pts[i]).unwrap(), pts[j], "{name}: broken cycle edge");
                assert_eq!(oracle.eval(&to_vec(&pts[i])), Some(to_vec(&pts[j])));
            }
        }
        for (i, fate) in c.fates.iter().enumerate() {
            if let Fate::Preperiodic { cycle, tail } = *fate {
                let mut q = pts[i].clone();
                for _ in 0..tail {
                    q = f.evaluate(&q).unwrap();
                }
                assert!(c.cycles[cycle].iter().any(|&j| pts[j] == q), "{name}: tail of {} misses its cycle", pts[i]);
            }
            assert_ne!(*fate, Fate::Unresolved);
        }
    }
}

#[test]
fn classification_is_independent_of_thread_count() {
    let (_, _, f) = sample_maps().pop().unwrap();
    let cert = certify_descent(&f).unwrap();
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| classify(&f, enumerate_bounded(1, cert.cap(), u128::MAX).unwrap()).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one.fates, four.fates);
    assert_eq!(one.cycles, four.cycles);
}

#[test]
fn enumeration_is_ordered_by_height_then_coordinates() {
    for (n, m) in [(1usize, 30i64), (2, 6), (3, 3)] {
        let s = enumerate_bounded(n, &BigInt::from(m), u128::MAX).unwrap();
        let keys: Vec<(BigInt, Vec<BigInt>)> = s.points().iter().map(|p| (height(&to_vec(p)), to_vec(p))).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "P^{n}: order broken");
        assert_eq!(s.len(), naive_points(n, m).len());
    }
}

#[test]
fn torsion_orders_are_minimal() {
    for (a, b) in [(0, 1), (-1, 0), (0, -2), (-43, 166), (0, 4), (-4, 0), (-11, 14), (1, 0)] {
        let Ok(e) = EllipticCurve::from_i64(a, b) else { continue };
        let oc = Curve::new(a, b);
        let t = torsion_group(&e);
        for (p, &n) in &t.orders {
            let q = from_ec(p);
            for k in 1..n {
                assert!(oc.mul(k as i64, &q).is_some(), "[{k}]{p} = O before order {n}");
            }
            assert!(oc.mul(n as i64, &q).is_none(), "[{n}]{p} != O");
        }
        assert_eq!(t.len() % t.exponent() as usize, 0);
    }
}

#[test]
fn dot_output_parses() {
    let f = Morphism::p1_from_i64(&[1, 0, -1], &[0, 0, 1]).unwrap();
    let (_, c) = classify_certified(&f, &EngineOptions::default()).unwrap();
    let graph = emit::functional_graph_dot(&f, &c).unwrap();
    graphviz_rust::parse(&graph).unwrap();
    assert_eq!(graph.matches("cycle=true").count(), 3);

    let r = orbita_core::periodic_points(&f, &EngineOptions::default()).unwrap();
    graphviz_rust::parse(&emit::periodic_dot(&r)).unwrap();

    let sq = Morphism::p1_from_i64(&[1, 0, 0], &[0, 0, 1]).unwrap();
    let t = orbita_core::backward_tree(&sq, &pt(&[1, 1]), 4).unwrap();
    let tree = emit::backward_tree_dot(&t);
    graphviz_rust::parse(&tree).unwrap();
    assert!(tree.contains("peripheries=2"));
}

fn curve_with_point() -> impl Strategy<Value = (i64, i64, i64)> {
    // Curves through (1, 1) and (0, y0): b = y0^2, a = -b.
    (1i64..6, prop::bool::ANY).prop_map(|(y0, flip)| {
        let b = y0 * y0;
        (-b, b, if flip { -y0 } else { y0 })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_law_axioms((a, b, y0) in curve_with_point(), i in -3i64..4, j in -3i64..4, k in -3i64..4) {
        let Ok(e) = EllipticCurve::from_i64(a, b) else { return Ok(()) };
        let g1 = e.point_i64(0, y0).unwrap();
        let g2 = e.point_i64(1, 1).unwrap();
        let p = e.mul(i, &g1).unwrap();
        let q = e.mul(j, &g2).unwrap();
        let r = e.add(&e.mul(k, &g1).unwrap(), &g2).unwrap();
        let pq = e.add(&p, &q).unwrap();
        prop_assert_eq!(&pq, &e.add(&q, &p).unwrap());
        prop_assert_eq!(e.add(&pq, &r).unwrap(), e.add(&p, &e.add(&q, &r).unwrap()).unwrap());
        prop_assert_eq!(e.add(&p, &ECPoint::Infinity).unwrap(), p.clone());
        prop_assert_eq!(e.add(&p, &e.neg(&p)).unwrap(), ECPoint::Infinity);
        prop_assert!(e.contains(&pq));
        let oc = Curve::new(a, b);
        prop_assert_eq!(from_ec(&pq), oc.add(&from_ec(&p), &from_ec(&q)));
    }

    #[test]
    fn descent_inequality_on_random_maps(
        f in prop::collection::vec(-5i64..=5, 3..=4),
        g_seed in prop::collection::vec(-5i64..=5, 4),
        pts in prop::collection::vec((-10_000i64..=10_000, 1i64..=10_000), 20),
    ) {
        let g: Vec<i64> = g_seed[..f.len()].to_vec();
        prop_assume!(!sylvester_resultant(&f, &g).is_zero());
        let map = P1Map { f: f.clone(), g };
        let m = map.to_morphism().unwrap();
        prop_assert_eq!(m.resultant().cloned(), Some(sylvester_resultant(&map.f, &map.g)));
        let cert = certify_descent(&m).unwrap();
        for (a, b) in pts {
            let p = canon(vec![a.into(), b.into()]);
            let image = map.eval(&p).unwrap();
            prop_assert!(cert.bound() * height(&image) >= height(&p).pow(map.degree()));
            prop_assert_eq!(to_vec(&m.evaluate(&to_point(&p)).unwrap()), image);
        }
    }

    #[test]
    fn maps_round_trip_through_the_language(
        f in prop::collection::vec(-9i64..=9, 3),
        g in prop::collection::vec(-9i64..=9, 3),
    ) {
        prop_assume!(!sylvester_resultant(&f, &g).is_zero());
        let m = Morphism::p1_from_i64(&f, &g).unwrap();
        let src = format!("map f : P1 -> P1 = [{}, {}]", m.forms()[0], m.forms()[1]);
        let doc = parse(&src).unwrap();
        prop_assert_eq!(doc.map("f").unwrap(), &m);
        prop_assert_eq!(parse(&doc.to_string()).unwrap(), doc);
    }

    #[test]
    fn points_round_trip_through_text(c in prop::collection::vec(-1000i64..1000, 2..5)) {
        prop_assume!(c.iter().any(|&x| x != 0));
        let p = ProjPoint::from_i64(&c).unwrap();
        prop_assert_eq!(p.to_string().parse::<ProjPoint>().unwrap(), p.clone());
        let v = canon(c.iter().map(|&x| BigInt::from(x)).collect());
        prop_assert_eq!(to_vec(&p), v);
        prop_assert!(p.height().0 >= BigInt::one());
    }
}
