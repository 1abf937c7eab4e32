//! Cross-checks between the brute-force solver and the constructive
//! pipeline: exact optima sit between the unconstrained tree bound and each
//! transform's output, loosen monotonically with the degree cap, and hit the
//! frozen values on the named point sets.

use bdst::constructions::{ConstructionName, NamedConstruction};
use bdst::{
    bottleneck, compute_emst, degree2_path, degree3_transform, degree4_transform, enforce_degree5,
    exact_bottleneck_tree, ratio, root_at_leaf,
};

const TOL: f64 = 1e-9;

#[test]
fn exact_values_sandwich_and_decrease() {
    for seed in 0..30u64 {
        let n = 5 + (seed as usize) % 7;
        let ps = bdst::constructions::random_point_set(n, seed);
        let t = enforce_degree5(&compute_emst(&ps).unwrap(), &ps).unwrap();
        let b = bottleneck(&t, &ps).0;
        let rt = root_at_leaf(&t, &ps, None).unwrap();

        let ex: Vec<f64> =
            [2u8, 3, 4, 5].iter().map(|&k| exact_bottleneck_tree(&ps, k).unwrap().value).collect();
        for w in ex.windows(2) {
            assert!(w[0] >= w[1] - 1e-12, "seed {seed}: exact values must not increase with K");
        }
        assert!((ex[3] - b).abs() <= 1e-12, "seed {seed}: degree-5 optimum equals tree bound");
        for &v in &ex {
            assert!(v >= b - 1e-12, "seed {seed}: exact below tree bound");
        }

        let d4 = degree4_transform(&rt, &ps).unwrap();
        let d3 = degree3_transform(&rt, &ps).unwrap();
        let d2 = degree2_path(&t, &ps);
        assert!(ex[2] <= d4.bottleneck * (1.0 + TOL), "seed {seed}: exact(4) beats transform");
        assert!(ex[1] <= d3.bottleneck * (1.0 + TOL), "seed {seed}: exact(3) beats transform");
        assert!(ex[0] <= d2.bottleneck * (1.0 + TOL), "seed {seed}: exact(2) beats path");
    }
}

#[test]
fn witnesses_respect_cap_and_value() {
    for seed in 100..115u64 {
        let ps = bdst::constructions::random_point_set(9, seed);
        for k in [2u8, 3, 4] {
            let res = exact_bottleneck_tree(&ps, k).unwrap();
            assert_eq!(res.witness.n(), 9);
            assert!(res.witness.max_degree() <= k as usize);
            let wb = bottleneck(&res.witness, &ps).0;
            assert!((wb - res.value).abs() <= 1e-12, "seed {seed} k {k}");
        }
    }
}

#[test]
fn square_profile_is_frozen() {
    let ps = NamedConstruction::new(ConstructionName::SquareCenter).generate().unwrap();
    let sqrt2 = std::f64::consts::SQRT_2;
    assert!((exact_bottleneck_tree(&ps, 2).unwrap().value - sqrt2).abs() < TOL);
    assert!((exact_bottleneck_tree(&ps, 3).unwrap().value - sqrt2).abs() < TOL);
    assert!((exact_bottleneck_tree(&ps, 4).unwrap().value - 1.0).abs() < TOL);
}

#[test]
fn pentagon_profile_is_frozen() {
    let ps = NamedConstruction::new(ConstructionName::PentagonCenter).generate().unwrap();
    let side = 2.0 * 36f64.to_radians().sin();
    for k in [2u8, 3, 4] {
        assert!((exact_bottleneck_tree(&ps, k).unwrap().value - side).abs() < TOL, "k {k}");
    }
    assert!((exact_bottleneck_tree(&ps, 5).unwrap().value - 1.0).abs() < TOL);
}

#[test]
fn triangle_profile_is_frozen() {
    let ps = NamedConstruction::new(ConstructionName::TriangleCenter).generate().unwrap();
    assert!((exact_bottleneck_tree(&ps, 2).unwrap().value - 3f64.sqrt()).abs() < TOL);
    assert!((exact_bottleneck_tree(&ps, 3).unwrap().value - 1.0).abs() < TOL);
}

#[test]
fn spider_profile_is_frozen() {
    let ps = NamedConstruction::new(ConstructionName::SpiderBeta2).generate().unwrap();
    assert!((exact_bottleneck_tree(&ps, 2).unwrap().value - 2.0).abs() < TOL);
    assert!((exact_bottleneck_tree(&ps, 3).unwrap().value - 1.0).abs() < TOL);
}

#[test]
fn hex_profile_is_all_ones() {
    let ps = NamedConstruction::new(ConstructionName::HexStar).generate().unwrap();
    for k in [2u8, 3, 4, 5] {
        assert!((exact_bottleneck_tree(&ps, k).unwrap().value - 1.0).abs() < TOL, "k {k}");
    }
}

#[test]
fn named_ratio_reports_match_expected() {
    for name in ConstructionName::ALL {
        let gen = NamedConstruction::new(name);
        let ps = match name {
            ConstructionName::Random => continue,
            ConstructionName::Lower19 => continue, // covered by the slow path test
            _ => gen.generate().unwrap(),
        };
        for (k, expected) in gen.expected_ratios() {
            let rep = ratio(&ps, k).unwrap();
            assert!(
                (rep.ratio - expected).abs() < TOL,
                "{name:?} k {k}: got {} expected {expected}",
                rep.ratio
            );
            assert!((rep.exact_value - rep.ratio * rep.bst_value).abs() < 1e-12);
        }
    }
}

#[test]
fn nineteen_point_set_needs_sqrt_seven_paths() {
    let ps = NamedConstruction::new(ConstructionName::Lower19).generate().unwrap();
    let t = compute_emst(&ps).unwrap();
    assert!((bottleneck(&t, &ps).0 - 1.0).abs() < 1e-12);
    let res = exact_bottleneck_tree(&ps, 2).unwrap();
    assert!((res.value - 7f64.sqrt()).abs() < TOL, "got {}", res.value);
    assert!(res.witness.max_degree() <= 2);
}
