use curvecraft_core::curve::{convex_combination_residual, point_path, ConeCheck};
use curvecraft_core::interp::{
    c1_feasible_solution, c1_interpolant, c1_s_bound, c2_feasible_solution_appendix, c2_feasible_solution_remark,
    c2_interpolant, c2_s_bound, random_monotone_dataset, remark_eta_bound, remark_zeta_bound,
};
use curvecraft_core::io::problem::{CurveDocument, InterpDocument, Mode, Reference, Strategy as Solver};
use curvecraft_core::io::{export_csv, parse_curve_problem, parse_interp_problem, parse_polyline_csv};
use curvecraft_core::{
    AuxKind, AuxiliaryFunction, BasisSpec, BlendingSystem, ControlPolygon, EnhancedBasis, Family, ParametricCurve,
    Polyline,
};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0f64, 2)
}

fn polygon(n: usize) -> impl Strategy<Value = ControlPolygon> {
    prop::collection::vec(point(), n + 1).prop_map(|p| ControlPolygon::new(p).unwrap())
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (1usize..7).prop_map(|degree| Family::Bernstein { degree }),
        (0.0..=1.0f64).prop_map(|gamma| Family::PBezier { gamma }),
        (0.0..20.0f64, 0.0..20.0f64).prop_map(|(lambda, mu)| Family::LambdaMu { lambda, mu }),
        (-1.0..=1.0f64).prop_map(|lambda| Family::YanCubic { lambda }),
    ]
}

fn strict_aux() -> impl Strategy<Value = AuxKind> {
    prop_oneof![
        Just(AuxKind::Cubic),
        Just(AuxKind::Quintic),
        Just(AuxKind::BernsteinTail { n: 5 }),
        Just(AuxKind::Trig { k: 1 }),
        Just(AuxKind::Trig { k: 3 }),
        Just(AuxKind::ExpoRational),
    ]
}

fn curve_for(family: Family, aux: AuxKind, sigma: f64, poly: ControlPolygon) -> ParametricCurve {
    let basis = BasisSpec {
        system: family,
        aux,
        sigma,
    }
    .build()
    .unwrap();
    ParametricCurve::new(basis, poly).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_and_nonnegativity(f in family(), aux in strict_aux(), sigma in 0.0..=1.0f64, t in 0.0..=1.0f64) {
        let basis = BasisSpec { system: f, aux, sigma }.build().unwrap();
        let v = basis.evaluate_all(t).unwrap();
        prop_assert!(v.iter().all(|&x| x >= -1e-12));
        prop_assert!((v.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        let d = basis.derivative_all(t, 1).unwrap();
        prop_assert!(d.iter().sum::<f64>().abs() <= 1e-9);
    }

    #[test]
    fn blend_of_the_two_extreme_curves(f in family(), aux in strict_aux(), sigma in 0.0..=1.0f64, t in 0.0..=1.0f64,
                                       seed in 0usize..1000) {
        let system = BlendingSystem::from_family(f).unwrap();
        let aux = AuxiliaryFunction::from_kind(aux).unwrap();
        let pts: Vec<Vec<f64>> = (0..=system.degree())
            .map(|i| vec![((seed * 31 + i * 17) % 23) as f64 / 3.0, ((seed * 7 + i * 29) % 19) as f64 / 2.0])
            .collect();
        let poly = ControlPolygon::new(pts).unwrap();
        prop_assert!(convex_combination_residual(&system, &aux, &poly, sigma, t).unwrap() <= 1e-12);
    }

    #[test]
    fn affine_invariance(aux in strict_aux(), sigma in 0.0..=1.0f64, poly in polygon(3),
                         a in prop::collection::vec(-3.0..3.0f64, 4), b in point(), t in 0.0..=1.0f64) {
        let m = vec![vec![a[0], a[1]], vec![a[2], a[3]]];
        let fam = Family::Bernstein { degree: 3 };
        let image = curve_for(fam, aux, sigma, poly.map_affine(&m, &b).unwrap()).evaluate(t).unwrap();
        let p = curve_for(fam, aux, sigma, poly).evaluate(t).unwrap();
        for k in 0..2 {
            let mapped = m[k][0] * p[0] + m[k][1] * p[1] + b[k];
            prop_assert!((image[k] - mapped).abs() <= 1e-9 * (1.0 + mapped.abs()));
        }
    }

    #[test]
    fn curve_stays_in_bounding_box(f in family(), aux in strict_aux(), sigma in 0.0..=1.0f64, t in 0.0..=1.0f64,
                                   poly in polygon(6)) {
        let system = BlendingSystem::from_family(f).unwrap();
        let pts: Vec<Vec<f64>> = poly.points()[..=system.degree()].to_vec();
        let c = curve_for(f, aux, sigma, ControlPolygon::new(pts.clone()).unwrap());
        let p = c.evaluate(t).unwrap();
        for k in 0..2 {
            let lo = pts.iter().map(|q| q[k]).fold(f64::INFINITY, f64::min);
            let hi = pts.iter().map(|q| q[k]).fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(p[k] >= lo - 1e-9 && p[k] <= hi + 1e-9);
        }
    }

    #[test]
    fn point_paths_are_straight(f in family(), aux in strict_aux(), t in 0.01..0.99f64, poly in polygon(6)) {
        let system = BlendingSystem::from_family(f).unwrap();
        let aux = AuxiliaryFunction::from_kind(aux).unwrap();
        let pts = ControlPolygon::new(poly.points()[..=system.degree()].to_vec()).unwrap();
        prop_assert!(point_path(&system, &aux, &pts, t, 11).unwrap().collinearity_residual <= 1e-12 * 100.0);
    }

    #[test]
    fn csv_round_trip(rows in prop::collection::vec(prop::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 3), 1..40)) {
        let p = Polyline {
            params: rows.iter().map(|r| r[0]).collect(),
            points: rows.iter().map(|r| r[1..].to_vec()).collect(),
        };
        let back = parse_polyline_csv(&export_csv(&p).unwrap()).unwrap();
        for (a, b) in back.params.iter().chain(back.points.iter().flatten())
            .zip(p.params.iter().chain(p.points.iter().flatten())) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn curve_documents_round_trip(f in family(), aux in strict_aux(), sigma in 0.0..=1.0f64, poly in polygon(6),
                                  samples in 2usize..300) {
        let system = BlendingSystem::from_family(f).unwrap();
        let doc = CurveDocument {
            basis: BasisSpec { system: f, aux, sigma },
            polygon: poly.points()[..=system.degree()].to_vec(),
            samples: Some(samples),
            sigmas: Some(vec![0.0, sigma, 1.0]),
        };
        let p = parse_curve_problem(&serde_json::to_vec(&doc).unwrap()).unwrap();
        prop_assert_eq!(&p.to_document(), &doc);
        let again = parse_curve_problem(&serde_json::to_vec(&p.to_document()).unwrap()).unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn interp_documents_round_trip(seed in 0u64..10_000, n in 2usize..10, sigma in 0.01..=1.0f64,
                                   remark in any::<bool>()) {
        let data = random_monotone_dataset(seed, n, true).unwrap();
        let doc = if remark {
            InterpDocument {
                dataset: data.clone().into(), mode: Mode::C2, solution_strategy: Some(Solver::Remark),
                s: None, zeta: Some(0.5 * remark_zeta_bound(&data)), eta: Some(0.5 * remark_eta_bound(&data)),
                sigma, aux: Some(AuxKind::Quintic), samples: Some(5), reference: None,
            }
        } else {
            InterpDocument {
                dataset: data.clone().into(), mode: Mode::C1, solution_strategy: Some(Solver::Sol1),
                s: Some(0.5 * c1_s_bound(&data)), zeta: None, eta: None,
                sigma, aux: Some(AuxKind::Cubic), samples: Some(7), reference: Some(Reference::Logistic),
            }
        };
        let p = parse_interp_problem(&serde_json::to_vec(&doc).unwrap()).unwrap();
        prop_assert_eq!(p.to_document(), doc);
    }

    #[test]
    fn continuity_does_not_depend_on_sigma(seed in 0u64..10_000, n in 2usize..9, sigma in 0.01..=1.0f64) {
        let data = random_monotone_dataset(seed, n, true).unwrap();
        let sol = c1_feasible_solution(&data, 0.7 * c1_s_bound(&data)).unwrap();
        let c = c1_interpolant(&data, &sol, &AuxiliaryFunction::cubic_smoothstep(), sigma).unwrap();
        for j in c.continuity_report(1).unwrap() {
            prop_assert!(j.jump <= 1e-8 * (1.0 + j.left.abs()), "{:?}", j);
        }
        let sol2 = c2_feasible_solution_appendix(&data, 0.7 * c2_s_bound(&data)).unwrap();
        let c2 = c2_interpolant(&data, &sol2, &AuxiliaryFunction::quintic_smoothstep(), sigma).unwrap();
        for j in c2.continuity_report(2).unwrap() {
            prop_assert!(j.jump <= 1e-6 * (1.0 + j.left.abs()), "{:?}", j);
        }
    }

    #[test]
    fn interpolants_are_monotone_functions(seed in 0u64..10_000, n in 2usize..9, sigma in 0.01..=1.0f64,
                                           strict in any::<bool>()) {
        let data = random_monotone_dataset(seed, n, strict).unwrap();
        let x = data.x();
        let sol = c1_feasible_solution(&data, 0.9 * c1_s_bound(&data)).unwrap();
        let c = c1_interpolant(&data, &sol, &AuxiliaryFunction::cubic_smoothstep(), sigma).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for k in 0..=60 {
            let xq = x[0] + (x[x.len() - 1] - x[0]) * k as f64 / 60.0;
            let y = c.evaluate_as_function(xq.min(x[x.len() - 1])).unwrap();
            prop_assert!(y >= prev - 1e-10);
            prev = y;
        }
        if strict {
            let sol = c2_feasible_solution_remark(&data, 0.9 * remark_zeta_bound(&data), 0.9 * remark_eta_bound(&data)).unwrap();
            let c = c2_interpolant(&data, &sol, &AuxiliaryFunction::quintic_smoothstep(), sigma).unwrap();
            prop_assert!(c.slope_summary(201).min_dy >= -1e-10);
        }
    }
}

#[test]
fn hodograph_lies_in_side_cone() {
    let poly = ControlPolygon::from_xy(&[[0.0, 0.0], [1.0, 2.0], [3.0, 2.5], [4.0, 3.0]]).unwrap();
    for sigma in [0.0, 0.3, 1.0] {
        let c = curve_for(Family::Bernstein { degree: 3 }, AuxKind::Cubic, sigma, poly.clone());
        match c.hodograph_cone_check(501) {
            ConeCheck::Checked { min_slack, .. } => assert!(min_slack >= -1e-12, "σ = {sigma}: {min_slack}"),
            other => panic!("{other:?}"),
        }
    }
    // A polygon folding back on itself spans no pointed cone.
    let zigzag = ControlPolygon::from_xy(&[[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [1.0, 0.0]]).unwrap();
    let c = curve_for(Family::Bernstein { degree: 3 }, AuxKind::Cubic, 1.0, zigzag);
    assert!(matches!(c.hodograph_cone_check(11), ConeCheck::NotChecked(_)));
}

#[test]
fn basis_matches_closed_form_oracle() {
    // T_0 = (1−σ)(1−φ) + σ B_0, T_i = σ B_i, T_3 = (1−σ)φ + σ B_3 with φ = 3t² − 2t³.
    let binom = [1.0, 3.0, 3.0, 1.0];
    for &sigma in &[0.0, 0.2, 0.7, 1.0] {
        let basis = EnhancedBasis::build(
            BlendingSystem::bernstein(3).unwrap(),
            AuxiliaryFunction::cubic_smoothstep(),
            sigma,
        )
        .unwrap();
        for k in 0..=20 {
            let t = k as f64 / 20.0;
            let phi = t * t * (3.0 - 2.0 * t);
            let b: Vec<f64> = (0..4)
                .map(|i| binom[i] * t.powi(i as i32) * (1.0 - t).powi(3 - i as i32))
                .collect();
            let expected = [
                (1.0 - sigma) * (1.0 - phi) + sigma * b[0],
                sigma * b[1],
                sigma * b[2],
                (1.0 - sigma) * phi + sigma * b[3],
            ];
            let got = basis.evaluate_all(t).unwrap();
            for i in 0..4 {
                assert!((got[i] - expected[i]).abs() <= 1e-14, "σ={sigma} t={t} i={i}");
            }
        }
    }
}
