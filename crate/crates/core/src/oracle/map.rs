use super::curve::{CurveModel, HyperellipticCurve, PlaneQuartic, TernaryForm};
use super::field::{Fe, FiniteField};
use super::fpoly;
use super::OracleError;

pub const DEFAULT_ORDER_CAP: u64 = 512;

/// Automorphism candidates, coefficients in the base field.
///
/// `Hyperelliptic { matrix: [[a, b], [c, d]], e, w }` sends `(x, y)` to
/// `((ax + b)/(cx + d), (e y + w(x))/(cx + d)^(g+1))`. `Quartic` acts on
/// `(x : y : z)` by the matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveMap {
    Hyperelliptic {
        matrix: [[Fe; 2]; 2],
        e: Fe,
        w: Vec<Fe>,
    },
    Quartic {
        matrix: [[Fe; 3]; 3],
    },
}

impl CurveMap {
    /// `(x, y) -> (x, -y - h(x))`.
    pub fn hyperelliptic_involution(curve: &HyperellipticCurve) -> CurveMap {
        let f = curve.base();
        CurveMap::Hyperelliptic {
            matrix: [[1, 0], [0, 1]],
            e: f.neg(1),
            w: curve.h().iter().map(|&c| f.neg(c)).collect(),
        }
    }
}

/// `sum P_i (ax + b)^i (cx + d)^(D - i)`.
fn homogenize(f: &FiniteField, p: &[Fe], m: &[[Fe; 2]; 2], d: usize) -> Vec<Fe> {
    let num = fpoly::trim(vec![m[0][1], m[0][0]]);
    let den = fpoly::trim(vec![m[1][1], m[1][0]]);
    let mut out = Vec::new();
    for (i, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let t = fpoly::mul(
            f,
            &fpoly::pow(f, &num, i as u32),
            &fpoly::pow(f, &den, (d - i) as u32),
        );
        out = fpoly::add(f, &out, &fpoly::scale(f, &t, c));
    }
    out
}

fn mat2_mul(f: &FiniteField, a: &[[Fe; 2]; 2], b: &[[Fe; 2]; 2]) -> [[Fe; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = f.add(f.mul(a[i][0], b[0][j]), f.mul(a[i][1], b[1][j]));
        }
    }
    out
}

fn mat3_mul(f: &FiniteField, a: &[[Fe; 3]; 3], b: &[[Fe; 3]; 3]) -> [[Fe; 3]; 3] {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).fold(0, |acc, k| f.add(acc, f.mul(a[i][k], b[k][j])));
        }
    }
    out
}

fn det3(f: &FiniteField, a: &[[Fe; 3]; 3]) -> Fe {
    let minor = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        f.sub(
            f.mul(a[rows[0]][cols[0]], a[rows[1]][cols[1]]),
            f.mul(a[rows[0]][cols[1]], a[rows[1]][cols[0]]),
        )
    };
    let t = [minor(0, 0), minor(0, 1), minor(0, 2)];
    f.add(
        f.sub(f.mul(a[0][0], t[0]), f.mul(a[0][1], t[1])),
        f.mul(a[0][2], t[2]),
    )
}

fn scalar_of<const N: usize>(a: &[[Fe; N]; N]) -> Option<Fe> {
    let l = a[0][0];
    let ok = (0..N).all(|i| (0..N).all(|j| a[i][j] == if i == j { l } else { 0 }));
    (ok && l != 0).then_some(l)
}

/// Order of `map` as an automorphism of `curve`, found by iterating up to
/// `cap`. Fails if the map is degenerate or does not preserve the curve.
pub fn verify_map(curve: &CurveModel, map: &CurveMap, cap: u64) -> Result<u64, OracleError> {
    match (curve, map) {
        (CurveModel::Hyperelliptic(c), CurveMap::Hyperelliptic { matrix, e, w }) => {
            verify_hyperelliptic(c, matrix, *e, w, cap)
        }
        (CurveModel::PlaneQuartic(c), CurveMap::Quartic { matrix }) => {
            verify_quartic(c, matrix, cap)
        }
        _ => Err(OracleError::InvalidModel(
            "map type does not match the curve model".into(),
        )),
    }
}

fn verify_hyperelliptic(
    curve: &HyperellipticCurve,
    m: &[[Fe; 2]; 2],
    e: Fe,
    w: &[Fe],
    cap: u64,
) -> Result<u64, OracleError> {
    let f = curve.base();
    if [m[0][0], m[0][1], m[1][0], m[1][1], e]
        .iter()
        .chain(w)
        .any(|&c| !f.contains(c as u64))
    {
        return Err(OracleError::InvalidModel(
            "map coefficient outside the base field".into(),
        ));
    }
    let det = f.sub(f.mul(m[0][0], m[1][1]), f.mul(m[0][1], m[1][0]));
    if det == 0 || e == 0 {
        return Err(OracleError::NotInvertible);
    }
    let g = curve.genus();
    let d = g + 1;
    let w = fpoly::trim(w.to_vec());
    if w.len() > d + 1 {
        return Err(OracleError::InvalidModel(format!(
            "deg w must be at most {d}"
        )));
    }
    let hm = homogenize(f, curve.h(), m, d);
    let fm = homogenize(f, curve.f(), m, 2 * d);
    // (e y + w)^2 + H (e y + w) - F must equal e^2 (y^2 + h y - f)
    let lin = fpoly::add(f, &fpoly::scale(f, &w, f.add(1, 1)), &hm);
    let lin_ok = lin == fpoly::scale(f, curve.h(), e);
    let cst = fpoly::sub(
        f,
        &fpoly::add(f, &fpoly::mul(f, &w, &w), &fpoly::mul(f, &hm, &w)),
        &fm,
    );
    let cst_ok = cst == fpoly::scale(f, curve.f(), f.neg(f.mul(e, e)));
    if !(lin_ok && cst_ok) {
        return Err(OracleError::MapDoesNotPreserve);
    }

    let is_identity = |m: &[[Fe; 2]; 2], e: Fe, w: &[Fe]| {
        scalar_of(m).map_or(false, |l| w.is_empty() && e == f.pow(l, d as u64))
    };
    let (mut mk, mut ek, mut wk) = (*m, e, w.clone());
    for k in 1..=cap {
        if is_identity(&mk, ek, &wk) {
            return Ok(k);
        }
        // compose with the map once more: (m, e, w) after (mk, ek, wk)
        let next_w = fpoly::add(f, &fpoly::scale(f, &wk, e), &homogenize(f, &w, &mk, d));
        mk = mat2_mul(f, m, &mk);
        ek = f.mul(ek, e);
        wk = next_w;
    }
    Err(OracleError::OrderCapExceeded(cap))
}

/// `F(A v)` as a form in `v`.
fn substitute(f: &FiniteField, form: &TernaryForm, a: &[[Fe; 3]; 3]) -> TernaryForm {
    let lin: Vec<TernaryForm> = (0..3)
        .map(|i| {
            TernaryForm::new(
                (0..3).map(|j| {
                    let mut m = [0; 3];
                    m[j] = 1;
                    (m, a[i][j])
                }),
                f,
            )
        })
        .collect();
    let mut out = TernaryForm::new([], f);
    for (m, &c) in form.terms() {
        let mut t = TernaryForm::new([([0, 0, 0], c)], f);
        for (i, l) in lin.iter().enumerate() {
            for _ in 0..m[i] {
                t = t.mul(l, f);
            }
        }
        out = TernaryForm::new(out.terms().chain(t.terms()).map(|(m, &c)| (*m, c)), f);
    }
    out
}

fn verify_quartic(curve: &PlaneQuartic, a: &[[Fe; 3]; 3], cap: u64) -> Result<u64, OracleError> {
    let f = curve.base();
    if a.iter().flatten().any(|&c| !f.contains(c as u64)) {
        return Err(OracleError::InvalidModel(
            "map coefficient outside the base field".into(),
        ));
    }
    if det3(f, a) == 0 {
        return Err(OracleError::NotInvertible);
    }
    let form = curve.form();
    let image = substitute(f, form, a);
    let (m0, &c0) = form.terms().next().expect("nonzero form");
    let lambda = f.mul(image.coeff(m0), f.inv(c0).expect("nonzero"));
    let scaled = TernaryForm::new(form.terms().map(|(m, &c)| (*m, f.mul(c, lambda))), f);
    if lambda == 0 || image != scaled {
        return Err(OracleError::MapDoesNotPreserve);
    }
    let mut ak = *a;
    for k in 1..=cap {
        if scalar_of(&ak).is_some() {
            return Ok(k);
        }
        ak = mat3_mul(f, a, &ak);
    }
    Err(OracleError::OrderCapExceeded(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::field::Budget;

    #[test]
    fn involution_has_order_two() {
        for p in [2u64, 3, 5] {
            let base = FiniteField::canonical(p, 1, Budget::default()).unwrap();
            let (fx, h) = if p == 2 {
                (vec![0, 0, 0, 0, 0, 1], vec![1])
            } else {
                (vec![1, p as Fe - 1, 0, 0, 0, 1], vec![])
            };
            let c = HyperellipticCurve::new(base, fx, h, Budget::default()).unwrap();
            let inv = CurveMap::hyperelliptic_involution(&c);
            let curve = CurveModel::Hyperelliptic(c);
            assert_eq!(verify_map(&curve, &inv, 16), Ok(2));
        }
    }

    #[test]
    fn x_to_zeta_x_on_y2_x5_plus_1() {
        // over F_11, x -> 3x (3 has order 5) preserves y^2 = x^5 + 1
        let base = FiniteField::canonical(11, 1, Budget::default()).unwrap();
        let c = HyperellipticCurve::new(base, vec![1, 0, 0, 0, 0, 1], vec![], Budget::default())
            .unwrap();
        let curve = CurveModel::Hyperelliptic(c);
        let m = CurveMap::Hyperelliptic {
            matrix: [[3, 0], [0, 1]],
            e: 1,
            w: vec![],
        };
        assert_eq!(verify_map(&curve, &m, 64), Ok(5));
        let bad = CurveMap::Hyperelliptic {
            matrix: [[2, 0], [0, 1]],
            e: 1,
            w: vec![],
        };
        assert_eq!(
            verify_map(&curve, &bad, 64),
            Err(OracleError::MapDoesNotPreserve)
        );
        // the same x-map composed with y -> -y has order 10
        let m10 = CurveMap::Hyperelliptic {
            matrix: [[3, 0], [0, 1]],
            e: 10,
            w: vec![],
        };
        assert_eq!(verify_map(&curve, &m10, 64), Ok(10));
    }

    #[test]
    fn projective_scalars_are_trivial() {
        // [[2,0],[0,2]] with e = 2^3 is the identity in genus 2
        let base = FiniteField::canonical(5, 1, Budget::default()).unwrap();
        let c = HyperellipticCurve::new(base, vec![1, 4, 0, 0, 0, 1], vec![], Budget::default())
            .unwrap();
        let curve = CurveModel::Hyperelliptic(c);
        let m = CurveMap::Hyperelliptic {
            matrix: [[2, 0], [0, 2]],
            e: 3,
            w: vec![],
        };
        assert_eq!(verify_map(&curve, &m, 8), Ok(1));
    }
}
