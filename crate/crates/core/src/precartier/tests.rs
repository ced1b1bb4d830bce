use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::families::{coradical_projection, FamilyKind, FamilySpec};
use crate::hochschild::cohomology;
use crate::quasitriangular::{build_r, registered_r, Lit, RSpec};
use crate::testutil::{en_sample, en_spec, fam, h8, random_tensor};

fn span(h: &HopfData, texts: &[String]) -> Subspace {
    let ts: Vec<Tensor2> = texts.iter().map(|t| h.parse::<2>(t).unwrap()).collect();
    Subspace::from_vectors(h.field(), h.dim() * h.dim(), ts.iter().map(|t| t.coeffs()))
}

fn en_gx_span(h: &HopfData, n: usize) -> Subspace {
    let mut v = Vec::new();
    for p in 1..=n {
        for q in 1..=n {
            v.push(format!("g*x{p} (x) x{q}"));
        }
    }
    span(h, &v)
}

fn en_antisymmetric_span(h: &HopfData, n: usize) -> Subspace {
    let mut v = Vec::new();
    for p in 1..=n {
        for q in p + 1..=n {
            v.push(format!("g*x{p} (x) x{q} - g*x{q} (x) x{p}"));
        }
    }
    span(h, &v)
}

#[test]
fn tags_round_trip() {
    for t in BlockTag::ALL {
        assert_eq!(t.as_str().parse::<BlockTag>().unwrap(), t);
    }
    assert!("cqtr4".parse::<BlockTag>().is_err());
}

#[test]
fn system_shapes() {
    let h = fam(FamilyKind::En(2));
    let r = build_r(&h, &en_spec(&[vec![0, 0], vec![0, 0]])).unwrap();
    let sys = build_system(&h, Some(&r)).unwrap();
    assert_eq!(sys.ncols(), 64);
    assert_eq!(sys.blocks().len(), 7);
    assert!(sys.blocks().iter().all(|(_, m)| m.ncols() == 64));
    let bare = build_system(&h, None).unwrap();
    assert!(bare.blocks().iter().all(|(t, _)| !t.needs_r()));
    assert!(bare.block(BlockTag::Cqtr2).is_none());

    let g = fam(FamilyKind::GroupAlgebra(vec![2, 2]));
    let sys = build_system(&g, None).unwrap();
    assert!(sys.block(BlockTag::Cqtr1).unwrap().is_zero());

    let bad = h.parse::<2>("1 (x) 1 + g (x) x1").unwrap();
    assert!(matches!(
        build_system(&h, Some(&bad)),
        Err(Error::NotQuasitriangular(_))
    ));
}

/// The block for `cqtr2` is `R₁₂` times the direct defect, and likewise `R₂₃` for `cqtr3`.
fn compare_blocks(h: &HopfData, r: &Tensor2, samples: usize, seed: u64) {
    let sys = build_system(h, Some(r)).unwrap();
    let checker = AxiomChecker::new(h, Some(r)).unwrap();
    let (r12, r23) = (h.leg(r, Leg::L12), h.leg(r, Leg::L23));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let t = random_tensor(h, &mut rng);
        for (tag, m) in sys.blocks() {
            let via_matrix = m.mul_vec(t.coeffs());
            let direct = checker.residual(*tag, &t);
            let direct = match tag {
                BlockTag::Cqtr2 => h.mul(&r12, &h.tensor_from_vec::<3>(direct).unwrap()).into_coeffs(),
                BlockTag::Cqtr3 => h.mul(&r23, &h.tensor_from_vec::<3>(direct).unwrap()).into_coeffs(),
                _ => direct,
            };
            assert_eq!(via_matrix, direct, "{tag} on {}", h.format(&t));
        }
    }
}

#[test]
fn blocks_agree_with_direct_evaluation() {
    let h = fam(FamilyKind::En(2));
    let r = build_r(&h, &en_spec(&[vec![1, 2], vec![0, -1]])).unwrap();
    compare_blocks(&h, &r, 20, 1);
    let h = fam(FamilyKind::AC2n(2));
    let r = build_r(&h, &RSpec::AC22 { q: 1, a: Lit::from(1) }).unwrap();
    compare_blocks(&h, &r, 20, 2);
    let h = h8();
    let r = build_r(&h, &RSpec::H8Omega(Lit("z8^3".into()))).unwrap();
    compare_blocks(&h, &r, 10, 3);
}

#[test]
fn stacked_kernel_equals_incremental_solve() {
    for (h, spec) in [
        (fam(FamilyKind::En(1)), en_spec(&[vec![1]])),
        (fam(FamilyKind::AC2n(2)), RSpec::AC22 { q: 0, a: Lit::from(1) }),
    ] {
        let r = build_r(&h, &spec).unwrap();
        let sys = build_system(&h, Some(&r)).unwrap();
        let stacked = sys.solve(&[BlockTag::Cqtr1, BlockTag::Cqtr2, BlockTag::Cqtr3]).unwrap();
        assert_eq!(stacked, solve_infinitesimal(&h, &r).unwrap());
        let rfree = sys
            .solve(&[BlockTag::Cqtr1, BlockTag::CounitLeft, BlockTag::CounitRight])
            .unwrap();
        assert_eq!(rfree, solve_rfree(&h).unwrap());
    }
}

#[test]
fn en_solutions_are_the_gx_span_for_every_a() {
    for n in 1..=2 {
        let h = fam(FamilyKind::En(n));
        let want = en_gx_span(&h, n);
        let z2 = cohomology(&h, 2).unwrap().z;
        let proj = coradical_projection(&h).unwrap();
        for (a, _) in en_sample(n) {
            let r = build_r(&h, &en_spec(&a)).unwrap();
            let chi = solve_infinitesimal(&h, &r).unwrap();
            assert_eq!(chi, want, "n={n} A={a:?}");
            assert!(chi.is_subspace_of(&z2).unwrap());
            for v in chi.basis() {
                let t = h.tensor_from_vec::<2>(v.clone()).unwrap();
                assert!(proj.apply2(&h, &t).is_zero());
            }
            let cart = cartier_subspace(&h, &r, &chi);
            assert_eq!(cart, en_antisymmetric_span(&h, n), "n={n} A={a:?}");
            assert!(cartier_coboundary_check(&h, &r, &chi).unwrap());
        }
        assert!(want.is_subspace_of(&solve_rfree(&h).unwrap()).unwrap());
    }
}

#[test]
fn ac22_one_parameter_family() {
    let h = fam(FamilyKind::AC2n(2));
    let want = span(&h, &["x (x) x*g".into()]);
    for spec in registered_r(&h).unwrap() {
        let r = build_r(&h, &spec).unwrap();
        let chi = solve_infinitesimal(&h, &r).unwrap();
        assert_eq!(chi, want, "{spec}");
        assert_eq!(cartier_subspace(&h, &r, &chi).dim(), 0, "{spec}");
    }
}

#[test]
fn h8_has_only_zero() {
    let h = h8();
    let specs = registered_r(&h).unwrap();
    assert_eq!(specs.len(), 8);
    for spec in specs {
        let r = build_r(&h, &spec).unwrap();
        assert_eq!(solve_infinitesimal(&h, &r).unwrap().dim(), 0, "{spec}");
    }
}

#[test]
fn r_free_bounds() {
    for (r, n) in [(2, 2), (2, 3), (3, 2)] {
        assert_eq!(
            solve_rfree(&fam(FamilyKind::Radford { r, n })).unwrap().dim(),
            0,
            "radford {r},{n}"
        );
    }
    // On a commutative algebra the commutation condition is empty; only the
    // counit conditions remain, leaving (dim H - 1)².
    for orders in [vec![2], vec![2, 2, 2]] {
        let h = fam(FamilyKind::GroupAlgebra(orders.clone()));
        let d = h.dim();
        assert_eq!(solve_rfree(&h).unwrap().dim(), (d - 1) * (d - 1), "{orders:?}");
        let one = h.one::<2>();
        assert_eq!(solve_infinitesimal(&h, &one).unwrap().dim(), 0, "{orders:?}");
    }
}

#[test]
fn casimir_elements() {
    let h = fam(FamilyKind::En(2));
    assert!(casimir(&h, &h.zero::<2>()).unwrap().is_zero());
    let chi = h.parse::<2>("2*g*x1 (x) x2 - 3*g*x2 (x) x1 + 5*g*x2 (x) x2").unwrap();
    assert_eq!(casimir(&h, &chi).unwrap(), h.parse::<1>("2*x1*x2 - 3*x2*x1").unwrap());
    assert!(casimir(&h, &h.parse::<2>("g*x1 (x) x1").unwrap()).unwrap().is_zero());
}

#[test]
fn classify_examples() {
    let en1 = FamilySpec::default_field(FamilyKind::En(1));
    let rep = classify(&en1, Some(&en_spec(&[vec![1]]))).unwrap();
    assert_eq!(
        (rep.dims.precartier, rep.dims.cartier, rep.dims.h2),
        (Some(1), Some(0), Some(1))
    );
    assert!(rep.flags.matches_paper_theorem, "{:?}", rep.mismatches);
    assert_eq!(rep.basis, vec!["g*x1 (x) x1".to_string()]);

    let ac4 = FamilySpec::default_field(FamilyKind::AC4Dual);
    let rep = classify(&ac4, Some(&RSpec::AC4Dual)).unwrap();
    assert_eq!(rep.dims.precartier, Some(0));
    assert!(rep.flags.matches_paper_theorem);

    let mut rep = classify(&en1, None).unwrap();
    assert_eq!(rep.dims.precartier, None);
    rep.apply_expected(vec![Expected {
        quantity: "h2".into(),
        value: 7,
        statement: "wrong".into(),
    }]);
    assert!(!rep.flags.matches_paper_theorem);
    assert_eq!(rep.mismatches.len(), 1);
}

#[test]
fn ac2n_partial_flag() {
    let h = fam(FamilyKind::AC2n(3));
    let rep = Classifier::new(&h)
        .without_cohomology()
        .classify(Some(&RSpec::AC22 { q: 0, a: Lit::from(1) }))
        .unwrap();
    assert!(rep.flags.paper_partial);
    assert_eq!(rep.flags.contains_known_solution, Some(true));
    assert!(rep.expected.iter().all(|e| e.quantity != "precartier"));
}

#[test]
fn infinitesimal_check_rejects_non_solutions() {
    let h = fam(FamilyKind::En(1));
    let r = build_r(&h, &en_spec(&[vec![0]])).unwrap();
    let good = h.parse::<2>("g*x1 (x) x1").unwrap();
    assert!(verify_infinitesimal(&h, &r, &good).unwrap().passed());
    let bad = h.parse::<2>("x1 (x) x1").unwrap();
    assert!(!verify_infinitesimal(&h, &r, &bad).unwrap().passed());
}

#[test]
fn report_json_is_stable() {
    let spec = FamilySpec::default_field(FamilyKind::En(1));
    let a = serde_json::to_string(&classify(&spec, Some(&en_spec(&[vec![2]]))).unwrap()).unwrap();
    let b = serde_json::to_string(&classify(&spec, Some(&en_spec(&[vec![2]]))).unwrap()).unwrap();
    assert_eq!(a, b);
    for key in [
        "\"family\":\"en\"",
        "\"precartier\":1",
        "\"rfree\":",
        "\"paper_partial\":false",
    ] {
        assert!(a.contains(key), "{key} missing from {a}");
    }
}
