mod common;

use common::{config, fixed_configs};
use kummer_core::curvebuild::{
    build_model, check_model, genus_from_branch, harvest_witnesses, named_intersection, CurveRecord,
};
use kummer_core::exactalg::{int, rat, Poly};
use kummer_core::lattice::representations;
use kummer_core::pencil::{named_section, section_from_quadruple, Quadruple};
use kummer_core::Error;

#[test]
fn every_small_model_passes_its_checks() {
    for cfg in fixed_configs() {
        for n in 1..=2 {
            for quad in representations(n).unwrap() {
                let model = build_model(&cfg, quad).unwrap_or_else(|e| panic!("{quad} at {cfg}: {e}"));
                assert_eq!(model.stats.deg_h1 as i64, 2 * n);
                assert_eq!(model.stats.sum_named, 6 * n - 2);
                assert_eq!(model.stats.total_d, int(8 * n - 2));
                assert_eq!(model.branch_count % 2, 0);
                assert!(model.genus >= 1 && model.genus <= 4 * n - 2);
                assert_eq!(model.genus_is_expected, model.genus == 4 * n - 2);
                check_model(&model).unwrap();
            }
        }
    }
}

#[test]
fn non_transverse_models_at_two_three() {
    // genus of y^2 = f checked independently with a CAS factorisation
    let cfg = config(2, 3);
    for quad in [[0, 0, 0, -1], [-1, 1, 1, 1]] {
        let model = build_model(&cfg, Quadruple::from(quad)).unwrap();
        assert_eq!(model.n, 2);
        assert_eq!(model.genus, 5);
        assert!(!model.genus_is_expected);
    }
}

#[test]
fn degenerate_sections_rejected() {
    for cfg in fixed_configs() {
        for quad in representations(0).unwrap() {
            assert_eq!(build_model(&cfg, quad).unwrap_err(), Error::DegenerateSection);
        }
    }
}

#[test]
fn self_intersection_is_refused() {
    let cfg = config(2, 3);
    let a23 = named_section(&cfg, 2, 3).unwrap();
    assert_eq!(named_intersection(&cfg, &a23, 2, 3), Err(Error::SelfIntersectionRequest(2, 3)));
    assert_eq!(named_intersection(&cfg, &a23, 2, 2), Ok(0));
}

#[test]
fn genus_of_known_branch_polynomials() {
    // y^2 = (x^2 - 2)^2 (x - 1): one branch point plus infinity
    let f = &Poly::from_ints(&[-2, 0, 1]).pow(2) * &Poly::from_ints(&[-1, 1]);
    assert_eq!(genus_from_branch(&f).unwrap(), (2, 0));
    let sextic = Poly::from_ints(&[1, 0, 0, 0, 0, 0, 1]);
    assert_eq!(genus_from_branch(&sextic).unwrap(), (6, 2));
    let quintic = Poly::from_ints(&[-1, 0, 0, 0, 0, 1]);
    assert_eq!(genus_from_branch(&quintic).unwrap(), (6, 2));
}

#[test]
fn harvest_on_genus_two_model() {
    let cfg = config(2, 3);
    let model = build_model(&cfg, Quadruple::new(0, 0, 1, 1)).unwrap();
    let records = harvest_witnesses(&model, 4);
    assert!(!records.is_empty());
    assert!(records.iter().any(|r| r.weierstrass));
    for r in &records {
        assert!(r.on_curves, "{:?}", r.point);
        if r.weierstrass {
            assert!(r.two_torsion, "{:?}", r.point);
        }
        assert_eq!(&r.point.y * &r.point.y, model.sf.eval(&r.point.x));
    }
    let xs: Vec<_> = records.iter().map(|r| r.point.x.clone()).collect();
    assert!(xs.contains(&int(2)));
}

#[test]
fn harvest_images_follow_the_maps() {
    let cfg = config(3, 5);
    let model = build_model(&cfg, Quadruple::new(0, 0, 1, 1)).unwrap();
    for r in harvest_witnesses(&model, 6) {
        assert!(r.on_curves);
        assert_eq!(Some(r.image_a.x.clone()), model.h1.eval(&r.point.x));
        assert_eq!(Some(r.image_b.x.clone()), model.h2.eval(&r.point.x));
    }
}

#[test]
fn curve_record_round_trips() {
    let cfg = config(2, 7);
    for quad in [[0, 0, 1, 1], [2, 0, 0, 0], [1, 1, 0, -1]] {
        let model = build_model(&cfg, Quadruple::from(quad)).unwrap();
        let record = CurveRecord::from(&model);
        let text = serde_json::to_string(&record).unwrap();
        let back: CurveRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, record);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

#[test]
fn models_at_rational_parameters() {
    let cfg = kummer_core::pencil::validate_config(rat(-1, 3), rat(5, 4)).unwrap();
    for quad in representations(1).unwrap() {
        let model = build_model(&cfg, quad).unwrap();
        assert!(model.genus >= 1 && model.genus <= 2);
        let section = section_from_quadruple(&cfg, quad).unwrap();
        assert_eq!(section.h1, model.h1);
    }
}
