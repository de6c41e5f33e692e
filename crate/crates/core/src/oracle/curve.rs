use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::field::{ff_tower, Budget, Embedding, Fe, FiniteField};
use super::fpoly;
use super::OracleError;

/// `y^2 + h(x) y = f(x)` with `deg f = 2g + 1` and `deg h <= g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticCurve {
    base: Arc<FiniteField>,
    f: Vec<Fe>,
    h: Vec<Fe>,
    genus: usize,
}

/// Exponent triple of a monomial `x^a y^b z^c`.
pub type Monomial = [u32; 3];

/// Homogeneous ternary form, zero coefficients omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm {
    terms: BTreeMap<Monomial, Fe>,
}

/// `F(x, y, z) = 0` for a smooth quartic form `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneQuartic {
    base: Arc<FiniteField>,
    form: TernaryForm,
    /// The singular-point search is bounded, so smoothness is not proven.
    heuristic_smoothness: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveModel {
    Hyperelliptic(HyperellipticCurve),
    PlaneQuartic(PlaneQuartic),
}

impl HyperellipticCurve {
    pub fn new(
        base: Arc<FiniteField>,
        f: Vec<Fe>,
        h: Vec<Fe>,
        budget: Budget,
    ) -> Result<Self, OracleError> {
        if f.iter().chain(&h).any(|&c| !base.contains(c as u64)) {
            return Err(OracleError::InvalidModel(
                "coefficient outside the base field".into(),
            ));
        }
        let f = fpoly::trim(f);
        let h = fpoly::trim(h);
        let df = fpoly::degree(&f).unwrap_or(0);
        if df % 2 == 0 || df < 5 {
            return Err(OracleError::InvalidModel(format!(
                "deg f must be odd and at least 5, got {df}"
            )));
        }
        let genus = (df - 1) / 2;
        if h.len() > genus + 1 {
            return Err(OracleError::InvalidModel(format!(
                "deg h must be at most {genus}"
            )));
        }
        let curve = HyperellipticCurve { base, f, h, genus };
        if curve.base.characteristic() == 2 {
            if curve.h.is_empty() {
                return Err(OracleError::Singular("h = 0 in characteristic 2".into()));
            }
            curve.check_char2_smooth(budget)?;
        } else {
            if !curve.h.is_empty() {
                return Err(OracleError::InvalidModel(
                    "odd characteristic models must have h = 0".into(),
                ));
            }
            let g = fpoly::gcd(
                &curve.base,
                &curve.f,
                &fpoly::derivative(&curve.base, &curve.f),
            );
            if fpoly::degree(&g) != Some(0) {
                return Err(OracleError::Singular("f is not squarefree".into()));
            }
        }
        Ok(curve)
    }

    /// A singular affine point sits over a root `x0` of `h`, with
    /// `y0 = sqrt(f(x0))` and `f'(x0) + h'(x0) y0 = 0`. Roots of `h` live in
    /// extensions of degree at most `deg h`.
    fn check_char2_smooth(&self, budget: Budget) -> Result<(), OracleError> {
        let dh = fpoly::degree(&self.h).unwrap_or(0);
        for d in 1..=dh as u32 {
            let emb = ff_tower(&self.base, d, budget)?;
            let l = emb.target();
            let f = emb.apply_all(&self.f);
            let h = emb.apply_all(&self.h);
            let df = fpoly::derivative(l, &f);
            let dh = fpoly::derivative(l, &h);
            for x in l.elements() {
                if fpoly::eval(l, &h, x) != 0 {
                    continue;
                }
                let y = l.sqrt_char2(fpoly::eval(l, &f, x));
                let gx = l.add(fpoly::eval(l, &df, x), l.mul(fpoly::eval(l, &dh, x), y));
                if gx == 0 {
                    return Err(OracleError::Singular(format!(
                        "singular point over F_(2^{}) at x = {x}",
                        l.degree()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<FiniteField> {
        &self.base
    }

    pub fn f(&self) -> &[Fe] {
        &self.f
    }

    pub fn h(&self) -> &[Fe] {
        &self.h
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Affine solutions over the target of `emb`, plus the point at infinity.
    fn count_over(&self, emb: &Embedding) -> u64 {
        let l = emb.target();
        let f = emb.apply_all(&self.f);
        let h = emb.apply_all(&self.h);
        let affine: u64 = if l.characteristic() == 2 {
            (0..l.size() as Fe)
                .into_par_iter()
                .map(|x| {
                    let a = fpoly::eval(l, &h, x);
                    let b = fpoly::eval(l, &f, x);
                    if a == 0 {
                        1
                    } else {
                        // y = a z turns y^2 + a y = b into z^2 + z = b / a^2
                        let inv = l.inv(a).expect("nonzero");
                        let c = l.mul(b, l.mul(inv, inv));
                        if l.trace_f2(c) == 0 {
                            2
                        } else {
                            0
                        }
                    }
                })
                .sum()
        } else {
            let mut roots = vec![0u8; l.size() as usize];
            for y in l.elements() {
                roots[l.mul(y, y) as usize] += 1;
            }
            (0..l.size() as Fe)
                .into_par_iter()
                .map(|x| roots[fpoly::eval(l, &f, x) as usize] as u64)
                .sum()
        };
        affine + 1
    }
}

impl TernaryForm {
    pub fn new(terms: impl IntoIterator<Item = (Monomial, Fe)>, field: &FiniteField) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            let e = map.entry(m).or_insert(0);
            *e = field.add(*e, c);
        }
        map.retain(|_, c| *c != 0);
        TernaryForm { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Fe)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.iter().sum())
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|m| Some(m.iter().sum()) == d)
    }

    pub fn coeff(&self, m: &Monomial) -> Fe {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn map_coeffs(&self, emb: &Embedding) -> TernaryForm {
        TernaryForm {
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (*m, emb.apply(c)))
                .collect(),
        }
    }

    pub fn eval(&self, f: &FiniteField, v: [Fe; 3]) -> Fe {
        self.terms.iter().fold(0, |acc, (m, &c)| {
            let t = (0..3).fold(c, |t, i| f.mul(t, f.pow(v[i], m[i] as u64)));
            f.add(acc, t)
        })
    }

    pub fn partial(&self, f: &FiniteField, var: usize) -> TernaryForm {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[var] > 0)
            .map(|(m, &c)| {
                let mut m2 = *m;
                m2[var] -= 1;
                (m2, f.mul(c, f.from_int(m[var] as i64)))
            });
        TernaryForm::new(terms, f)
    }

    /// Polynomial in `y` of `F(x0, y, 1)`.
    fn restrict_z1(&self, f: &FiniteField, x0: Fe) -> Vec<Fe> {
        let mut out = vec![0; 5];
        for (m, &c) in &self.terms {
            let j = m[1] as usize;
            if j >= out.len() {
                out.resize(j + 1, 0);
            }
            out[j] = f.add(out[j], f.mul(c, f.pow(x0, m[0] as u64)));
        }
        fpoly::trim(out)
    }

    /// Polynomial in `x` of `F(x, 1, 0)`.
    fn restrict_line_at_infinity(&self) -> Vec<Fe> {
        let mut out = vec![0; 5];
        for (m, &c) in &self.terms {
            if m[2] == 0 {
                let j = m[0] as usize;
                if j >= out.len() {
                    out.resize(j + 1, 0);
                }
                out[j] = c;
            }
        }
        fpoly::trim(out)
    }

    pub fn mul(&self, other: &TernaryForm, f: &FiniteField) -> TernaryForm {
        let mut terms = Vec::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                terms.push(([a[0] + b[0], a[1] + b[1], a[2] + b[2]], f.mul(ca, cb)));
            }
        }
        TernaryForm::new(terms, f)
    }
}

impl PlaneQuartic {
    pub fn new(
        base: Arc<FiniteField>,
        form: TernaryForm,
        budget: Budget,
    ) -> Result<Self, OracleError> {
        if form.is_zero() || !form.is_homogeneous() || form.degree() != Some(4) {
            return Err(OracleError::InvalidModel(
                "quartic must be a nonzero homogeneous form of degree 4".into(),
            ));
        }
        if form.terms().any(|(_, &c)| !base.contains(c as u64)) {
            return Err(OracleError::InvalidModel(
                "coefficient outside the base field".into(),
            ));
        }
        let curve = PlaneQuartic {
            base,
            form,
            heuristic_smoothness: true,
        };
        curve.singular_search(budget)?;
        Ok(curve)
    }

    /// Looks for singular points whose `x` (in the chart `z = 1`) lies in
    /// `F_{q^d}` for `d <= 6`, by taking for each such `x0` the gcd in `y` of
    /// `F, F_x, F_y, F_z` restricted to the line `x = x0`. The line at
    /// infinity is checked completely. Degrees 4, 5 and 6 contain every
    /// `F_{q^d}` with `d <= 6`; degrees beyond the budget are skipped.
    fn singular_search(&self, budget: Budget) -> Result<(), OracleError> {
        let base = &self.base;
        let partials: Vec<TernaryForm> = (0..3).map(|v| self.form.partial(base, v)).collect();
        let all: Vec<&TernaryForm> = std::iter::once(&self.form).chain(partials.iter()).collect();

        let at_infinity = all
            .iter()
            .map(|g| g.restrict_line_at_infinity())
            .fold(Vec::new(), |acc, p| fpoly::gcd(base, &acc, &p));
        if fpoly::degree(&at_infinity).map_or(true, |d| d > 0) {
            return Err(OracleError::Singular("singular point on z = 0".into()));
        }
        if all.iter().all(|g| g.eval(base, [1, 0, 0]) == 0) {
            return Err(OracleError::Singular("singular point at (1:0:0)".into()));
        }
        for d in [4u32, 5, 6] {
            let emb = match ff_tower(base, d, budget) {
                Ok(e) => e,
                Err(OracleError::BudgetExceeded { .. }) => {
                    log::warn!("quartic singular search skipped over F_(q^{d}): budget");
                    continue;
                }
                Err(e) => return Err(e),
            };
            let l = emb.target();
            let lifted: Vec<TernaryForm> = all.iter().map(|g| g.map_coeffs(&emb)).collect();
            let bad = (0..l.size() as Fe).into_par_iter().find_any(|&x0| {
                let g = lifted
                    .iter()
                    .map(|g| g.restrict_z1(l, x0))
                    .fold(Vec::new(), |acc, p| fpoly::gcd(l, &acc, &p));
                fpoly::degree(&g).map_or(true, |d| d > 0)
            });
            if let Some(x0) = bad {
                return Err(OracleError::Singular(format!(
                    "singular point with x = {x0} over F_(q^{d})"
                )));
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<FiniteField> {
        &self.base
    }

    pub fn form(&self) -> &TernaryForm {
        &self.form
    }

    pub fn heuristic_smoothness(&self) -> bool {
        self.heuristic_smoothness
    }

    fn count_over(&self, emb: &Embedding) -> u64 {
        let l = emb.target();
        let form = self.form.map_coeffs(emb);
        let affine: u64 = (0..l.size() as Fe)
            .into_par_iter()
            .map(|x0| fpoly::count_distinct_roots(l, &form.restrict_z1(l, x0)) as u64)
            .sum();
        let line = fpoly::count_distinct_roots(l, &form.restrict_line_at_infinity()) as u64;
        let corner = u64::from(form.eval(l, [1, 0, 0]) == 0);
        affine + line + corner
    }
}

impl CurveModel {
    pub fn genus(&self) -> usize {
        match self {
            CurveModel::Hyperelliptic(c) => c.genus,
            CurveModel::PlaneQuartic(_) => 3,
        }
    }

    pub fn base(&self) -> &Arc<FiniteField> {
        match self {
            CurveModel::Hyperelliptic(c) => &c.base,
            CurveModel::PlaneQuartic(c) => &c.base,
        }
    }

    pub fn q(&self) -> u64 {
        self.base().size()
    }

    pub fn warnings(&self) -> Vec<String> {
        match self {
            CurveModel::PlaneQuartic(c) if c.heuristic_smoothness => {
                vec!["quartic smoothness checked by bounded singular-point search only".into()]
            }
            _ => Vec::new(),
        }
    }
}

/// `|X(F_{q^n})|` by enumeration over `F_{q^n}`.
pub fn count_points(curve: &CurveModel, n: u32, budget: Budget) -> Result<u64, OracleError> {
    if n == 0 {
        return Err(OracleError::InvalidModel(
            "extension degree must be positive".into(),
        ));
    }
    let emb = ff_tower(curve.base(), n, budget)?;
    Ok(match curve {
        CurveModel::Hyperelliptic(c) => c.count_over(&emb),
        CurveModel::PlaneQuartic(c) => c.count_over(&emb),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, k: u32) -> Arc<FiniteField> {
        FiniteField::canonical(p, k, Budget::default()).unwrap()
    }

    #[test]
    fn fermat_quartic_over_f2_is_a_line() {
        let f2 = field(2, 1);
        let form = TernaryForm::new([([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)], &f2);
        // x^4 + y^4 + z^4 = (x + y + z)^4 is singular everywhere
        assert!(matches!(
            PlaneQuartic::new(f2.clone(), form.clone(), Budget::default()),
            Err(OracleError::Singular(_))
        ));
        // counting still works on the raw form: the 3 points of x + y + z = 0
        let curve = PlaneQuartic {
            base: f2.clone(),
            form,
            heuristic_smoothness: true,
        };
        let emb = ff_tower(&f2, 1, Budget::default()).unwrap();
        assert_eq!(curve.count_over(&emb), 3);
    }

    #[test]
    fn hyperelliptic_validation() {
        let f3 = field(3, 1);
        // y^2 = x^5 + 1 is smooth over F_3
        assert!(HyperellipticCurve::new(
            f3.clone(),
            vec![1, 0, 0, 0, 0, 1],
            vec![],
            Budget::default()
        )
        .is_ok());
        // x^2 (x^3 + 1) has a double root
        assert!(matches!(
            HyperellipticCurve::new(
                f3.clone(),
                vec![0, 0, 1, 0, 0, 1],
                vec![],
                Budget::default()
            ),
            Err(OracleError::Singular(_))
        ));
        assert!(matches!(
            HyperellipticCurve::new(f3.clone(), vec![1, 0, 0, 0, 1], vec![], Budget::default()),
            Err(OracleError::InvalidModel(_))
        ));
        let f2 = field(2, 1);
        assert!(matches!(
            HyperellipticCurve::new(
                f2.clone(),
                vec![1, 0, 0, 0, 0, 1],
                vec![],
                Budget::default()
            ),
            Err(OracleError::Singular(_))
        ));
        // y^2 + y = x^5 is smooth (h = 1 has no roots)
        assert!(
            HyperellipticCurve::new(f2, vec![0, 0, 0, 0, 0, 1], vec![1], Budget::default()).is_ok()
        );
    }

    #[test]
    fn char2_singular_over_root_of_h() {
        let f2 = field(2, 1);
        // h = x, f = x^5: at x0 = 0, y0 = 0 and f'(0) + h'(0) y0 = 0
        assert!(matches!(
            HyperellipticCurve::new(f2, vec![0, 0, 0, 0, 0, 1], vec![0, 1], Budget::default()),
            Err(OracleError::Singular(_))
        ));
    }
}
