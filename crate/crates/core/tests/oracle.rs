use std::sync::Arc;

use autexcl_core::algebra::{weil_validate, PrimePower};
use autexcl_core::criterion::{exclude, Verdict};
use autexcl_core::oracle::{
    charpoly_from_curve, count_points, ff_tower, parse_curve_file, verify_map, Budget, CurveMap,
    CurveModel, Fe, FiniteField, HyperellipticCurve, OracleError, PlaneQuartic, TernaryForm,
};
use autexcl_core::ring::Exact;
use autexcl_core::zeta::{point_count, NewPointSeries, PointCountSeries};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn budget() -> Budget {
    Budget::default()
}

/// Pairs `(x, y)` with `y^2 + h(x) y = f(x)`, plus one point at infinity.
fn naive_count(c: &HyperellipticCurve, n: u32) -> u64 {
    let emb = ff_tower(c.base(), n, budget()).unwrap();
    let l = emb.target();
    let f = emb.apply_all(c.f());
    let h = emb.apply_all(c.h());
    let ev = |p: &[Fe], x: Fe| p.iter().rev().fold(0, |acc, &a| l.add(l.mul(acc, x), a));
    let mut n_aff = 0;
    for x in l.elements() {
        let (fx, hx) = (ev(&f, x), ev(&h, x));
        for y in l.elements() {
            if l.add(l.mul(y, y), l.mul(hx, y)) == fx {
                n_aff += 1;
            }
        }
    }
    n_aff + 1
}

fn random_curve(rng: &mut ChaCha8Rng, p: u64, genus: usize) -> HyperellipticCurve {
    let base = FiniteField::canonical(p, 1, budget()).unwrap();
    loop {
        let mut f: Vec<Fe> = (0..=2 * genus + 1)
            .map(|_| rng.gen_range(0..p as Fe))
            .collect();
        f[2 * genus + 1] = rng.gen_range(1..p as Fe);
        let h: Vec<Fe> = if p == 2 {
            (0..=genus).map(|_| rng.gen_range(0..2)).collect()
        } else {
            Vec::new()
        };
        match HyperellipticCurve::new(base.clone(), f, h, budget()) {
            Ok(c) => return c,
            Err(OracleError::Singular(_)) => continue,
            Err(e) => panic!("{e}"),
        }
    }
}

/// 60 odd-characteristic curves and 24 over F_2, genus 2 and 3.
fn corpus() -> Vec<HyperellipticCurve> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for i in 0..60 {
        let p = if i % 2 == 0 { 3 } else { 5 };
        out.push(random_curve(&mut rng, p, 2 + i % 3 / 2));
    }
    for i in 0..24 {
        out.push(random_curve(&mut rng, 2, 2 + i % 2));
    }
    out
}

#[test]
fn y2_x5_plus_1_over_f3_matches_naive_enumeration() {
    let cf = parse_curve_file("curve hyperelliptic p=3 k=1 f=1,0,0,0,0,1 h=", budget()).unwrap();
    let CurveModel::Hyperelliptic(c) = &cf.model else {
        panic!()
    };
    for n in 1..=4 {
        assert_eq!(
            count_points(&cf.model, n, budget()).unwrap(),
            naive_count(c, n),
            "n={n}"
        );
    }
}

#[test]
fn random_genus_two_over_f5_match_naive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let c = random_curve(&mut rng, 5, 2);
        let model = CurveModel::Hyperelliptic(c.clone());
        for n in 1..=2 {
            assert_eq!(
                count_points(&model, n, budget()).unwrap(),
                naive_count(&c, n)
            );
        }
    }
}

#[test]
fn char2_counts_match_naive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let c = random_curve(&mut rng, 2, 2);
        let model = CurveModel::Hyperelliptic(c.clone());
        for n in 1..=5 {
            assert_eq!(
                count_points(&model, n, budget()).unwrap(),
                naive_count(&c, n)
            );
        }
    }
}

#[test]
fn oracle_and_zeta_agree_on_corpus() {
    for c in corpus() {
        let g = c.genus();
        let model = CurveModel::Hyperelliptic(c);
        let weil = charpoly_from_curve(&model, budget()).unwrap();
        assert!(weil_validate(&weil, 2 * g).is_ok());
        let q = model.q();
        let depth = (1..=2 * g as u32)
            .take_while(|&n| (q as u128).pow(n) <= budget().0 as u128)
            .last()
            .unwrap();
        let mut counts = Vec::new();
        for n in 1..=depth {
            let enumerated = count_points(&model, n, budget()).unwrap();
            assert_eq!(point_count(&weil, n as usize), BigInt::from(enumerated));
            counts.push(BigInt::from(enumerated));
        }
        // orbit sizes from the Weil polynomial well past the enumerated range
        let series = PointCountSeries::from_weil(Exact, &weil, 60);
        let r = NewPointSeries::from_counts(&series);
        for (i, v) in r.values().iter().enumerate() {
            assert!(!v.is_negative(), "R({}) = {v}", i + 1);
            assert!((v % BigInt::from(i + 1)).is_zero(), "R({}) = {v}", i + 1);
        }
        assert!(r.anomalies().is_empty());
        let enumerated =
            NewPointSeries::from_counts(&PointCountSeries::from_counts(Exact, q, counts));
        assert_eq!(enumerated.values(), &r.values()[..depth as usize]);
    }
}

#[test]
fn involution_keeps_criterion_inconclusive() {
    let pp = PrimePower::new(2, 1).unwrap();
    let curves = corpus();
    assert!(
        curves
            .iter()
            .filter(|c| c.base().characteristic() != 2)
            .count()
            >= 50
    );
    assert!(
        curves
            .iter()
            .filter(|c| c.base().characteristic() == 2)
            .count()
            >= 20
    );
    for c in curves {
        let g = c.genus() as u64;
        let inv = CurveMap::hyperelliptic_involution(&c);
        let model = CurveModel::Hyperelliptic(c);
        assert_eq!(verify_map(&model, &inv, 512), Ok(2));
        let weil = charpoly_from_curve(&model, budget()).unwrap();
        let report = exclude(&weil, pp, 40, None).unwrap();
        assert!(
            matches!(report.verdict, Verdict::Inconclusive { .. }),
            "{report:?}"
        );
        assert_eq!(report.n_scanned(), 40);
        assert!(report.partial_sums.iter().all(|&s| s <= 2 * g + 2));
    }
}

fn klein(base: &Arc<FiniteField>) -> TernaryForm {
    TernaryForm::new([([3, 1, 0], 1), ([0, 3, 1], 1), ([1, 0, 3], 1)], base)
}

#[test]
fn klein_quartic_over_f8() {
    let base = FiniteField::canonical(2, 3, budget()).unwrap();
    let curve =
        CurveModel::PlaneQuartic(PlaneQuartic::new(base.clone(), klein(&base), budget()).unwrap());
    assert_eq!(curve.warnings().len(), 1);
    assert_eq!(count_points(&curve, 1, budget()).unwrap(), 24);
    let weil = charpoly_from_curve(&curve, budget()).unwrap();
    // 24 = 8 + 1 + 3 * 2 * sqrt(8) rounded down: maximal over F_8
    assert_eq!(point_count(&weil, 1), BigInt::from(24));

    let zeta = (1..base.size() as Fe)
        .find(|&z| base.order(z) == Some(7))
        .unwrap();
    let diag = |a, b, c| CurveMap::Quartic {
        matrix: [[a, 0, 0], [0, b, 0], [0, 0, c]],
    };
    let map = diag(zeta, base.pow(zeta, 4), base.pow(zeta, 2));
    assert_eq!(verify_map(&curve, &map, 512), Ok(7));
    assert_eq!(
        verify_map(&curve, &diag(zeta, zeta, base.pow(zeta, 2)), 512),
        Err(OracleError::MapDoesNotPreserve)
    );

    let pp = PrimePower::new(7, 1).unwrap();
    let report = exclude(&weil, pp, 40, None).unwrap();
    assert_eq!(report.bound, 3);
    assert!(matches!(report.verdict, Verdict::Inconclusive { .. }));
    assert!(report.partial_sums.iter().all(|&s| s <= 3));
}

#[test]
fn klein_quartic_curve_file() {
    let text = "curve quartic p=2 k=3 F=3,1,0:1;0,3,1:1;1,0,3:1\nmap matrix=2,0,0,0,7,0,0,0,4\n";
    let cf = parse_curve_file(text, budget()).unwrap();
    assert_eq!(verify_map(&cf.model, &cf.maps[0], 512), Ok(7));
}

#[test]
fn fermat_quartic_over_f2_is_rejected_as_singular() {
    let base = FiniteField::canonical(2, 1, budget()).unwrap();
    let form = TernaryForm::new([([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)], &base);
    assert!(matches!(
        PlaneQuartic::new(base, form, budget()),
        Err(OracleError::Singular(_))
    ));
}

#[test]
fn budget_is_enforced() {
    let cf = parse_curve_file("curve hyperelliptic p=5 f=1,4,0,0,0,1", Budget(1000)).unwrap();
    assert!(count_points(&cf.model, 4, Budget(1000)).is_ok());
    assert!(matches!(
        count_points(&cf.model, 5, Budget(1000)),
        Err(OracleError::BudgetExceeded { .. })
    ));
}
