use std::collections::BTreeMap;
use std::sync::Arc;

use super::*;
use crate::algebra::{parse_element, Generator};
use crate::field::{RatLit, Rationals};

type Q = Rationals;

fn params_k(k: RatLit) -> BTreeMap<String, <Q as Field>::Elem> {
    let mut p = BTreeMap::new();
    p.insert("k".to_string(), k.in_field(&Rationals).unwrap());
    p
}

/// Lambda(a,b,e,f,g,h), |a|=|b|=2, |e|=|f|=|g|=3, |h|=4,
/// de = a^2, df = b^2, dh = k b g.
fn im_emb(truncation: u32, k: RatLit) -> (Arc<Algebra<Q>>, Differential<Q>) {
    let a = Algebra::graded_commutative(
        Rationals,
        vec![
            Generator::new("a", 2),
            Generator::new("b", 2),
            Generator::new("e", 3),
            Generator::new("f", 3),
            Generator::new("g", 3),
            Generator::new("h", 4),
        ],
        truncation,
    )
    .unwrap();
    let p = params_k(k);
    let images = BTreeMap::from([
        (2, parse_element(&a, "a^2", &p).unwrap()),
        (3, parse_element(&a, "b^2", &p).unwrap()),
        (5, parse_element(&a, "k*b*g", &p).unwrap()),
    ]);
    let d = Differential::new(&a, images).unwrap();
    (a, d)
}

/// Lambda(dab,e,f,g,v,h), degrees 2,3,3,3,3,4,
/// d e = dab^2, d h = -k dab g.
fn emb(truncation: u32, k: RatLit) -> (Arc<Algebra<Q>>, Differential<Q>) {
    let a = Algebra::graded_commutative(
        Rationals,
        vec![
            Generator::new("dab", 2),
            Generator::new("e", 3),
            Generator::new("f", 3),
            Generator::new("g", 3),
            Generator::new("v", 3),
            Generator::new("h", 4),
        ],
        truncation,
    )
    .unwrap();
    let p = params_k(k);
    let images = BTreeMap::from([
        (1, parse_element(&a, "dab^2", &p).unwrap()),
        (5, parse_element(&a, "-k*dab*g", &p).unwrap()),
    ]);
    let d = Differential::new(&a, images).unwrap();
    (a, d)
}

/// The relative model: im_emb generators extended by tt,xt,yt,wt of
/// degrees 1,1,1,2 with d xt = a, d yt = b, d wt = g.
fn relative(truncation: u32, k: RatLit) -> (Arc<Algebra<Q>>, Differential<Q>) {
    let a = Algebra::graded_commutative(
        Rationals,
        vec![
            Generator::new("a", 2),
            Generator::new("b", 2),
            Generator::new("e", 3),
            Generator::new("f", 3),
            Generator::new("g", 3),
            Generator::new("h", 4),
            Generator::new("tt", 1),
            Generator::new("xt", 1),
            Generator::new("yt", 1),
            Generator::new("wt", 2),
        ],
        truncation,
    )
    .unwrap();
    let p = params_k(k);
    let images = BTreeMap::from([
        (2, parse_element(&a, "a^2", &p).unwrap()),
        (3, parse_element(&a, "b^2", &p).unwrap()),
        (5, parse_element(&a, "k*b*g", &p).unwrap()),
        (7, parse_element(&a, "a", &p).unwrap()),
        (8, parse_element(&a, "b", &p).unwrap()),
        (9, parse_element(&a, "g", &p).unwrap()),
    ]);
    let d = Differential::new(&a, images).unwrap();
    (a, d)
}

// ---- leibniz extension -------------------------------------------------

#[test]
fn d_of_e_is_a_squared() {
    let (a, d) = im_emb(12, RatLit::ONE);
    let e = Element::generator(&a, 2);
    let expected = parse_element(&a, "a^2", &BTreeMap::new()).unwrap();
    assert_eq!(d.apply(&e).unwrap(), expected);
}

#[test]
fn d_of_gh_vanishes_by_sign_bookkeeping() {
    // d(gh) = dg h - g (k b g) = -k b g^2 = 0 since |g| is odd.
    let (a, d) = im_emb(12, RatLit::ONE);
    let gh = parse_element(&a, "g*h", &BTreeMap::new()).unwrap();
    assert!(d.apply(&gh).unwrap().is_zero());
}

#[test]
fn d_of_one_is_zero() {
    let (a, d) = im_emb(12, RatLit::ONE);
    assert!(d.apply(&Element::one(&a)).unwrap().is_zero());
}

#[test]
fn signed_leibniz_rule_on_samples() {
    let (a, d) = im_emb(12, RatLit::new(2, 1).unwrap());
    let samples = ["a*g", "b*e", "g", "a^2", "e*f", "b*h"];
    for (i, si) in samples.iter().enumerate() {
        for sj in &samples[i..] {
            let u = parse_element(&a, si, &BTreeMap::new()).unwrap();
            let v = parse_element(&a, sj, &BTreeMap::new()).unwrap();
            let du = u.homogeneous_degree().unwrap();
            if u.max_degree() + v.max_degree() + 1 > a.truncation() {
                continue;
            }
            let lhs = d.apply(&u.mul(&v).unwrap()).unwrap();
            let mut rhs = d.apply(&u).unwrap().mul(&v).unwrap();
            let udv = u.mul(&d.apply(&v).unwrap()).unwrap();
            rhs = if du % 2 == 1 {
                rhs.sub(&udv).unwrap()
            } else {
                rhs.add(&udv).unwrap()
            };
            assert_eq!(lhs, rhs, "leibniz fails on {si} * {sj}");
        }
    }
}

// ---- d^2 validation -----------------------------------------------------

#[test]
fn im_emb_differential_squares_to_zero() {
    let (_, d) = im_emb(12, RatLit::ONE);
    assert!(d.d_squared_witness().unwrap().is_none());
}

#[test]
fn mutated_dh_to_ag_still_squares_to_zero() {
    // d h := a g also has d^2 = 0 (homogeneous of the right degree, and
    // d(a g) = 0); soundness of d^2 alone does not pin the data.
    let (a, _) = im_emb(12, RatLit::ONE);
    let p = BTreeMap::new();
    let images = BTreeMap::from([
        (2, parse_element(&a, "a^2", &p).unwrap()),
        (3, parse_element(&a, "b^2", &p).unwrap()),
        (5, parse_element(&a, "a*g", &p).unwrap()),
    ]);
    assert!(Differential::new(&a, images).is_ok());
}

#[test]
fn wrong_degree_image_is_rejected_at_construction() {
    let (a, _) = im_emb(12, RatLit::ONE);
    let p = BTreeMap::new();
    let images = BTreeMap::from([(2, parse_element(&a, "a*b*g", &p).unwrap())]);
    assert!(matches!(
        Differential::new_unvalidated(&a, images),
        Err(Error::Differential(_))
    ));
    let inhomogeneous = BTreeMap::from([(2, parse_element(&a, "a^2 + g", &p).unwrap())]);
    assert!(Differential::new_unvalidated(&a, inhomogeneous).is_err());
}

#[test]
fn broken_differential_yields_a_witness() {
    // d e = a^2 together with d a = g forces d(d e) != 0.
    let a = Algebra::graded_commutative(
        Rationals,
        vec![
            Generator::new("a", 2),
            Generator::new("g", 3),
            Generator::new("e", 3),
        ],
        8,
    )
    .unwrap();
    let p = BTreeMap::new();
    let images = BTreeMap::from([
        (0, parse_element(&a, "g", &p).unwrap()),
        (2, parse_element(&a, "a^2", &p).unwrap()),
    ]);
    let d = Differential::new_unvalidated(&a, images).unwrap();
    let (gen, _) = d.d_squared_witness().unwrap().expect("witness");
    assert_eq!(a.generators()[gen].name, "e");
    assert!(Differential::new(
        &a,
        BTreeMap::from([
            (0, parse_element(&a, "g", &p).unwrap()),
            (2, parse_element(&a, "a^2", &p).unwrap()),
        ])
    )
    .is_err());
}

#[test]
fn zero_differential_is_fine() {
    let (a, _) = im_emb(12, RatLit::ONE);
    let d = Differential::zero(&a);
    assert!(d.d_squared_witness().unwrap().is_none());
}

// ---- cohomology -----------------------------------------------------------

#[test]
fn im_emb_betti_numbers_through_degree_seven() {
    let (a, d) = im_emb(9, RatLit::ONE);
    let report = cohomology(&a, &d, 7).unwrap();
    assert_eq!(report.betti_series().dims, vec![1, 0, 2, 1, 1, 1, 1, 1]);
}

#[test]
fn zero_differential_betti_equals_monomial_counts() {
    let a = Algebra::graded_commutative(
        Rationals,
        vec![
            Generator::new("t", 1),
            Generator::new("x", 3),
            Generator::new("y", 3),
            Generator::new("w", 4),
        ],
        9,
    )
    .unwrap();
    let report = cohomology(&a, &Differential::zero(&a), 8).unwrap();
    assert_eq!(report.betti_series().dims, vec![1, 1, 0, 2, 3, 1, 1, 3, 3]);
}

#[test]
fn emb_betti_numbers_through_degree_six() {
    let (a, d) = emb(8, RatLit::ONE);
    let report = cohomology(&a, &d, 6).unwrap();
    assert_eq!(report.betti_series().dims, vec![1, 0, 1, 3, 0, 2, 4]);
}

#[test]
fn betti_numbers_do_not_depend_on_k() {
    let expected = vec![1, 0, 2, 1, 1, 1, 1, 1, 1];
    for k in [RatLit::ONE, RatLit::new(2, 1).unwrap(), RatLit::new(-3, 1).unwrap(), RatLit::new(7, 2).unwrap()] {
        let (a, d) = im_emb(10, k);
        let report = cohomology(&a, &d, 8).unwrap();
        assert_eq!(report.betti_series().dims, expected, "k = {k}");
    }
}

#[test]
fn representatives_are_cocycles() {
    let (a, d) = im_emb(9, RatLit::new(7, 2).unwrap());
    let report = cohomology(&a, &d, 7).unwrap();
    for slice in report.slices() {
        for rep in &slice.representatives {
            assert!(d.apply(rep).unwrap().is_zero());
            assert_eq!(rep.homogeneous_degree(), Some(slice.degree).filter(|_| !rep.is_zero()));
        }
        assert_eq!(slice.representatives.len(), slice.betti);
    }
    let _ = a;
}

#[test]
fn cohomology_refuses_uncertifiable_degrees() {
    let (a, d) = im_emb(8, RatLit::ONE);
    assert!(matches!(
        cohomology(&a, &d, 8),
        Err(Error::InsufficientTruncation { .. })
    ));
}

// ---- cup products -----------------------------------------------------------

#[test]
fn cup_products_match_the_stated_relations() {
    let (a, d) = im_emb(9, RatLit::ONE);
    let report = cohomology(&a, &d, 7).unwrap();
    let f = Rationals;
    // Degree 2 has classes [a], [b] in echelon order.
    let a_class = (2, 0);
    let b_class = (2, 1);
    assert_eq!(report.representative(a_class).unwrap().display(), "a");
    assert_eq!(report.representative(b_class).unwrap().display(), "b");
    let g_class = (3, 0);
    assert_eq!(report.representative(g_class).unwrap().display(), "g");

    // [a][a] = 0: a^2 is exact via e.
    let aa = report.cup(a_class, a_class).unwrap();
    assert!(aa.iter().all(|c| f.is_zero(c)));
    // [b][g] = 0: bg is exact via h/k.
    let bg = report.cup(b_class, g_class).unwrap();
    assert!(bg.iter().all(|c| f.is_zero(c)));
    // [a][g] is the degree-5 class.
    let ag = report.cup(a_class, g_class).unwrap();
    assert_eq!(report.betti(5), 1);
    assert!(f.is_one(&ag[0]));
}

#[test]
fn cup_product_is_graded_commutative() {
    let (a, d) = im_emb(9, RatLit::ONE);
    let report = cohomology(&a, &d, 7).unwrap();
    let f = Rationals;
    let classes: Vec<ClassId> = report
        .slices()
        .iter()
        .flat_map(|s| (0..s.betti).map(move |i| (s.degree, i)))
        .collect();
    for &c1 in &classes {
        for &c2 in &classes {
            if c1.0 + c2.0 > report.n_max() {
                continue;
            }
            let uv = report.cup(c1, c2).unwrap();
            let vu = report.cup(c2, c1).unwrap();
            let flip = (c1.0 * c2.0) % 2 == 1;
            for (x, y) in uv.iter().zip(&vu) {
                let y = if flip { f.neg(y) } else { y.clone() };
                assert_eq!(*x, y);
            }
        }
    }
    let _ = a;
}

// ---- sullivan duality ----------------------------------------------------------

#[test]
fn duality_reads_off_the_quadratic_differential() {
    let a = Algebra::graded_commutative(
        Rationals,
        vec![
            Generator::new("a", 2),
            Generator::new("b", 2),
            Generator::new("e", 3),
            Generator::new("f", 3),
        ],
        8,
    )
    .unwrap();
    let p = BTreeMap::new();
    let table = WhiteheadTable::new(
        &a,
        vec![
            (0, 0, parse_element(&a, "e", &p).unwrap()),
            (1, 1, parse_element(&a, "f", &p).unwrap()),
            (0, 1, Element::zero(&a)),
        ],
    )
    .unwrap();
    let d = duality_differential(&a, &table).unwrap();
    assert_eq!(
        d.generator_image(2),
        parse_element(&a, "a^2", &p).unwrap()
    );
    assert_eq!(
        d.generator_image(3),
        parse_element(&a, "b^2", &p).unwrap()
    );
    assert!(d.generator_image(0).is_zero());
}

#[test]
fn empty_table_gives_zero_differential() {
    let a = Algebra::graded_commutative(Rationals, vec![Generator::new("a", 2)], 6).unwrap();
    let table = WhiteheadTable::new(&a, vec![]).unwrap();
    let d = duality_differential(&a, &table).unwrap();
    assert!(d.is_zero());
}

#[test]
fn emb_duality_with_coefficients() {
    // [dab, dab] = e + f + c4 v gives d e = d f = dab^2, d v = c4 dab^2.
    let a = Algebra::graded_commutative(
        Rationals,
        vec![
            Generator::new("dab", 2),
            Generator::new("e", 3),
            Generator::new("f", 3),
            Generator::new("v", 3),
        ],
        8,
    )
    .unwrap();
    let mut p = BTreeMap::new();
    p.insert("c4".to_string(), Rationals.from_int(5));
    let table = WhiteheadTable::new(
        &a,
        vec![(0, 0, parse_element(&a, "e + f + c4*v", &p).unwrap())],
    )
    .unwrap();
    let d = duality_differential(&a, &table).unwrap();
    let dab2 = parse_element(&a, "dab^2", &p).unwrap();
    assert_eq!(d.generator_image(1), dab2);
    assert_eq!(d.generator_image(2), dab2);
    assert_eq!(d.generator_image(3), dab2.scale(&Rationals.from_int(5)));
}

#[test]
fn whitehead_table_enforces_graded_symmetry() {
    let a = Algebra::graded_commutative(
        Rationals,
        vec![
            Generator::new("u", 1),
            Generator::new("x", 1),
            Generator::new("w", 1),
        ],
        6,
    )
    .unwrap();
    let p = BTreeMap::new();
    // |u| = |x| = 1: [x,u] must equal -[u,x].
    let w = parse_element(&a, "w", &p).unwrap();
    let bad = WhiteheadTable::new(
        &a,
        vec![(0, 1, w.clone()), (1, 0, w.clone())],
    );
    assert!(bad.is_err());
    let good = WhiteheadTable::new(&a, vec![(0, 1, w.clone()), (1, 0, w.neg())]);
    assert!(good.is_ok());
}

// ---- quotient CDGAs ---------------------------------------------------------------

#[test]
fn relative_model_quotient_is_free_on_four_generators() {
    let (a, d) = relative(9, RatLit::ONE);
    let killed: Vec<usize> = ["xt", "yt", "a", "b", "wt", "g"]
        .iter()
        .map(|n| a.generator_index(n).unwrap())
        .collect();
    let (q, dq) = quotient_cdga(&a, &d, &killed).unwrap();
    let names: Vec<&str> = q.generators().iter().map(|g| g.name.as_str()).collect();
    assert_eq!(names, vec!["e", "f", "h", "tt"]);
    assert!(dq.is_zero());
    let report = cohomology(&q, &dq, 8).unwrap();
    assert_eq!(report.betti_series().dims, vec![1, 1, 0, 2, 3, 1, 1, 3, 3]);
}

#[test]
fn quotient_by_nothing_is_identity() {
    let (a, d) = im_emb(8, RatLit::ONE);
    let (q, dq) = quotient_cdga(&a, &d, &[]).unwrap();
    assert_eq!(*q, *a);
    assert_eq!(dq.generator_image(2), d.generator_image(2));
}

#[test]
fn quotient_by_everything_is_the_base_field() {
    let (a, d) = im_emb(8, RatLit::ONE);
    let all: Vec<usize> = (0..a.generators().len()).collect();
    let (q, dq) = quotient_cdga(&a, &d, &all).unwrap();
    assert!(q.generators().is_empty());
    assert!(dq.is_zero());
    let report = cohomology(&q, &dq, 4).unwrap();
    assert_eq!(report.betti_series().dims, vec![1, 0, 0, 0, 0]);
}

#[test]
fn non_closed_ideal_is_rejected() {
    let (a, d) = im_emb(8, RatLit::ONE);
    // d(e) = a^2 is not inside the ideal generated by e alone.
    let e = a.generator_index("e").unwrap();
    assert!(matches!(
        quotient_cdga(&a, &d, &[e]),
        Err(Error::Differential(_))
    ));
}

// ---- presentation comparison ----------------------------------------------------------

#[test]
fn im_emb_series_comparison_passes() {
    let (a, d) = im_emb(9, RatLit::ONE);
    let report = cohomology(&a, &d, 7).unwrap();
    let target = PresentationTarget {
        expected: HilbertSeries::new(vec![1, 0, 2, 1, 1, 1, 1, 1]),
        candidates: vec![],
    };
    assert!(compare_presentation(&report, &target, 7).unwrap().passed());
}

#[test]
fn deliberate_mismatch_fails_at_degree_four() {
    let (a, d) = im_emb(9, RatLit::ONE);
    let report = cohomology(&a, &d, 7).unwrap();
    let target = PresentationTarget {
        expected: HilbertSeries::new(vec![1, 0, 2, 1, 2, 1, 1, 1]),
        candidates: vec![],
    };
    assert_eq!(
        compare_presentation(&report, &target, 7).unwrap(),
        ComparisonVerdict::SeriesMismatch {
            degree: 4,
            computed: 1,
            expected: 2
        }
    );
}

#[test]
fn relative_model_matches_the_free_algebra_with_candidates() {
    let (a, d) = relative(9, RatLit::ONE);
    let report = cohomology(&a, &d, 8).unwrap();
    let p = params_k(RatLit::ONE);
    // Corrected cocycle representatives for the four surviving
    // generators: tt, e - a xt, f - b yt, h - k b wt.
    let candidates = vec![
        ("tt".to_string(), parse_element(&a, "tt", &p).unwrap()),
        ("e1".to_string(), parse_element(&a, "e - a*xt", &p).unwrap()),
        ("f1".to_string(), parse_element(&a, "f - b*yt", &p).unwrap()),
        ("h1".to_string(), parse_element(&a, "h - k*b*wt", &p).unwrap()),
    ];
    let target = PresentationTarget {
        expected: HilbertSeries::new(vec![1, 1, 0, 2, 3, 1, 1, 3, 3]),
        candidates,
    };
    assert!(compare_presentation(&report, &target, 8).unwrap().passed());
}
