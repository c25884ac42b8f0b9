//! Radial parts on the torus: the closed form of `γ`, the torus Laplacian,
//! the conjugated Casimir operator and its constant-coefficient polynomial.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::lie::{Parity, QuadraticForm, RootSystem};
use crate::polynomial::Polynomial;
use crate::scalar::GaussianRational;
use crate::smash::{SmashAlgebra, TorusElement};
use crate::torus::TorusRational;

/// `γ = 2^{|R₀|-|R₁|} i^{|R₀|} ∏_{R₀⁺} sinh²(α/2) / ∏_{R₁⁺} sinh²(β/2)` with
/// `sinh(ε/2) = (q^ε - q^{-ε})/2`.
pub fn gamma_closed_form(rs: &RootSystem) -> TorusRational {
    let t = rs.rank();
    let (r0, r1) = (rs.count(Parity::Even) as i64, rs.count(Parity::Odd) as i64);
    let two = GaussianRational::from_int(2).pow(r0 - r1).expect("nonzero");
    let i_pow = GaussianRational::i().pow(r0).expect("nonzero");
    let mut num = LaurentPoly::constant(t, &two * &i_pow);
    for root in rs.positive_roots(Parity::Even) {
        num = num.mul(&LaurentPoly::sinh_binomial(&root.weight).pow(2));
    }
    let mut den = LaurentPoly::one(t);
    for root in rs.positive_roots(Parity::Odd) {
        den = den.mul(&LaurentPoly::sinh_binomial(&root.weight).pow(2));
    }
    TorusRational::new(num, den).expect("nonzero denominator")
}

/// One sample of [`check_gamma_oracle`].
#[derive(Clone, Debug, PartialEq)]
pub struct GammaPoint {
    pub point: TorusElement,
    pub closed_form: Option<GaussianRational>,
    pub oracle: Option<GaussianRational>,
    /// Set when the point is singular and was skipped.
    pub notice: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaReport {
    pub points: Vec<GammaPoint>,
    /// `σ` with `σ · oracle = closed form` at every evaluated point.
    pub sign: Option<i64>,
    pub pass: bool,
}

/// Compares the closed form with the Berezinian of the Jacobian at every
/// point; passes iff a single global sign relates them at all nonsingular points.
pub fn check_gamma_oracle(h: &SmashAlgebra<'_>, form: &QuadraticForm, points: &[TorusElement]) -> Result<GammaReport> {
    let closed = gamma_closed_form(h.roots());
    let mut out = Vec::new();
    let mut sign: Option<i64> = None;
    let mut consistent = true;
    for a in points {
        let oracle = match h.gamma_via_sdet(form, a) {
            Ok(v) => v,
            Err(Error::SingularOddBlock) => {
                out.push(GammaPoint {
                    point: a.clone(),
                    closed_form: closed.eval(a.coords()),
                    oracle: None,
                    notice: Some("singular point: odd block not invertible".into()),
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let value = closed.eval(a.coords());
        let s = match &value {
            Some(v) if *v == oracle => Some(1),
            Some(v) if *v == -oracle.clone() => Some(-1),
            _ => None,
        };
        match (s, sign) {
            (None, _) => consistent = false,
            (Some(s), None) => sign = Some(s),
            (Some(s), Some(prev)) if s != prev && !oracle.is_zero() => consistent = false,
            _ => {}
        }
        out.push(GammaPoint { point: a.clone(), closed_form: value, oracle: Some(oracle), notice: None });
    }
    let pass = consistent && sign.is_some();
    Ok(GammaReport { points: out, sign, pass })
}

/// The constant `closed form / Ber(symbolic Jacobian)` as a field identity.
pub fn gamma_field_ratio(h: &SmashAlgebra<'_>, form: &QuadraticForm) -> Result<Option<GaussianRational>> {
    let ber = h.jacobian_symbolic(form)?.berezinian()?;
    let ratio = gamma_closed_form(h.roots()).div(&ber).ok_or(Error::ZeroDenominator)?;
    Ok(ratio.as_constant())
}

/// `Λ_A = Σ c_i ∂²/∂y_i²` with `c_i = b(θ(H_i), θ(H_i))`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusLaplacian {
    coeffs: Vec<GaussianRational>,
}

impl TorusLaplacian {
    pub fn new(coeffs: Vec<GaussianRational>) -> Self {
        TorusLaplacian { coeffs }
    }

    /// Requires the Cartan basis to be `b`-orthogonal.
    pub fn from_form(rs: &RootSystem, form: &QuadraticForm) -> Result<Self> {
        let cartan = rs.cartan();
        for (p, &h) in cartan.iter().enumerate() {
            for &k in &cartan[p + 1..] {
                if !form.entry(h, k).is_zero() || !form.entry(k, h).is_zero() {
                    return Err(Error::InvalidDefinition("Cartan basis is not orthogonal for the form".into()));
                }
            }
        }
        let theta = form.theta_dual()?;
        Ok(TorusLaplacian { coeffs: cartan.iter().map(|&h| form.eval(theta.row(h), theta.row(h))).collect() })
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn apply(&self, f: &TorusRational) -> TorusRational {
        let mut out = TorusRational::zero(f.num_vars());
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&f.derive(i).derive(i).scale(c));
            }
        }
        out
    }

    /// Eigenvalue `Σ c_i (λ_i/2)²` on the monomial `q^λ`.
    pub fn monomial_eigenvalue(&self, weight: &[i32]) -> GaussianRational {
        let mut s = GaussianRational::zero();
        for (c, &l) in self.coeffs.iter().zip(weight) {
            s += &(c * &GaussianRational::ratio((l as i64) * (l as i64), 4));
        }
        s
    }
}

/// `j` together with its certified eigenvalue `Λ_A(j) = c·j`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialOperator {
    pub j: TorusRational,
    /// `s` with `j² = s·γ`.
    pub j_scalar: GaussianRational,
    pub lambda: TorusLaplacian,
    pub eigenvalue_c: GaussianRational,
}

impl RadialOperator {
    /// Certifies that `Λ_A(j)/j` is constant.
    pub fn certify(j: TorusRational, j_scalar: GaussianRational, lambda: TorusLaplacian) -> Result<Self> {
        let ratio = lambda.apply(&j).div(&j).ok_or(Error::ZeroDenominator)?;
        match ratio.as_constant() {
            Some(c) => Ok(RadialOperator { j, j_scalar, lambda, eigenvalue_c: c }),
            None => Err(Error::NotEigenfunction(ratio.to_string())),
        }
    }

    /// `Δ(C₂) f = j⁻¹ Λ_A(j f) - c f`.
    pub fn apply_c2(&self, f: &TorusRational) -> TorusRational {
        let inner = self.lambda.apply(&self.j.mul(f));
        inner.div(&self.j).expect("j is nonzero").sub(&f.scale(&self.eigenvalue_c))
    }
}

/// `j` from the scalar-free square root of the closed form of `γ`.
pub fn build_radial(rs: &RootSystem, form: &QuadraticForm) -> Result<RadialOperator> {
    let (j, s) = gamma_closed_form(rs).sqrt_scalar_free()?;
    RadialOperator::certify(j, s, TorusLaplacian::from_form(rs, form)?)
}

/// Polynomial `p` with `j·Δ(C₂)(j⁻¹ q^λ) = p(λ) q^λ` at the sampled weights.
#[derive(Clone, Debug, PartialEq)]
pub struct PFit {
    pub values: Vec<(Vec<i32>, GaussianRational)>,
    pub polynomial: Polynomial,
    /// Every sampled value agrees with the fitted polynomial.
    pub consistent: bool,
}

fn exponents_up_to_degree(t: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; t]];
    for _ in 0..d {
        let mut next = Vec::new();
        for e in &out {
            next.push(e.clone());
            for k in 0..t {
                let mut f = e.clone();
                f[k] += 1;
                next.push(f);
            }
        }
        next.sort();
        next.dedup();
        out = next;
    }
    out
}

fn monomial_value(e: &[u32], weight: &[i32]) -> GaussianRational {
    let mut v = GaussianRational::one();
    for (&k, &l) in e.iter().zip(weight) {
        v = &v * &GaussianRational::from_int(l as i64).pow(k as i64).unwrap_or_else(GaussianRational::zero);
    }
    v
}

/// Reduced row echelon solve of `rows · x = rhs`. Returns the unique solution
/// and whether the whole system is consistent, or `None` if underdetermined.
fn solve_exact(mut rows: Vec<Vec<GaussianRational>>, mut rhs: Vec<GaussianRational>) -> Option<(Vec<GaussianRational>, bool)> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for c in 0..cols {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            return None;
        };
        rows.swap(pivot_row, p);
        rhs.swap(pivot_row, p);
        let inv = rows[pivot_row][c].inv().expect("nonzero pivot");
        rows[pivot_row] = rows[pivot_row].iter().map(|x| x * &inv).collect();
        rhs[pivot_row] = &rhs[pivot_row] * &inv;
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                let pr = rows[pivot_row].clone();
                for (a, b) in rows[r].iter_mut().zip(&pr) {
                    *a = &*a - &(&f * b);
                }
                rhs[r] = &rhs[r] - &(&f * &rhs[pivot_row]);
            }
        }
        pivot_row += 1;
    }
    let consistent = rhs[pivot_row..].iter().all(Zero::is_zero);
    Some((rhs[..cols].to_vec(), consistent))
}

/// Certifies that `j·Δ(C₂)·j⁻¹` acts on each `q^λ` by a scalar `p(λ)` and fits
/// `p` exactly as a polynomial of degree at most 2 in `λ`.
pub fn extract_p(op: &RadialOperator, weights: &[Vec<i32>]) -> Result<PFit> {
    let t = op.j.num_vars();
    for (k, w) in weights.iter().enumerate() {
        if w.len() != t {
            return Err(Error::DimensionMismatch(format!("weight {w:?} has length {}", w.len())));
        }
        if weights[..k].contains(w) {
            return Err(Error::DuplicateWeight(w.clone()));
        }
    }
    let j_inv = op.j.inv().ok_or(Error::ZeroDenominator)?;
    let mut values = Vec::with_capacity(weights.len());
    for w in weights {
        let q = TorusRational::monomial(w.clone(), GaussianRational::one());
        let image = op.j.mul(&op.apply_c2(&j_inv.mul(&q)));
        let ratio = image.div(&q).expect("monomial is invertible");
        let p = ratio.as_constant().ok_or_else(|| Error::NotConstantCoefficient { weight: w.clone() })?;
        values.push((w.clone(), p));
    }
    let basis = exponents_up_to_degree(t, 2);
    let rows: Vec<Vec<GaussianRational>> =
        weights.iter().map(|w| basis.iter().map(|e| monomial_value(e, w)).collect()).collect();
    let rhs: Vec<GaussianRational> = values.iter().map(|(_, p)| p.clone()).collect();
    let (solution, consistent) = solve_exact(rows, rhs).ok_or(Error::InsufficientWeights { degree: 2 })?;
    let mut polynomial = Polynomial::zero(t);
    for (e, c) in basis.into_iter().zip(&solution) {
        polynomial.add_term(e, c);
    }
    Ok(PFit { values, polynomial, consistent })
}

/// Leading homogeneous part of the Cartan projection of `C₂` under `H_i ↦ λ_i/2`.
pub fn cartan_leading_in_weights(cartan_projection: &Polynomial) -> Polynomial {
    let half = vec![GaussianRational::ratio(1, 2); cartan_projection.num_vars()];
    cartan_projection.leading_part().rescale_vars(&half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_gl;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn point(coords: &[i64]) -> TorusElement {
        TorusElement::new(coords.iter().map(|&c| g(c)).collect()).unwrap()
    }

    #[test]
    fn closed_form_gl11() {
        let gl = build_gl(1, 1).unwrap();
        let gamma = gamma_closed_form(&gl.roots);
        let s = TorusRational::from_poly(LaurentPoly::sinh_binomial(&[1, -1]));
        let expected = s.mul(&s).inv().unwrap().scale(&GaussianRational::ratio(1, 4));
        assert_eq!(gamma, expected);
        assert_eq!(gamma.eval(&[g(2), g(1)]), Some(GaussianRational::ratio(4, 9)));
    }

    #[test]
    fn closed_form_gl21() {
        let gl = build_gl(2, 1).unwrap();
        let gamma = gamma_closed_form(&gl.roots);
        let sh = |w: &[i32]| TorusRational::from_poly(LaurentPoly::sinh_binomial(w)).pow(2);
        let expected = sh(&[1, -1, 0])
            .div(&sh(&[1, 0, -1]).mul(&sh(&[0, 1, -1])))
            .unwrap()
            .scale(&GaussianRational::ratio(-1, 4));
        assert_eq!(gamma, expected);
    }

    #[test]
    fn oracle_sign_gl11() {
        let gl = build_gl(1, 1).unwrap();
        let h = SmashAlgebra::new(&gl.algebra, &gl.roots).unwrap();
        let report = check_gamma_oracle(&h, &gl.form, &[point(&[2, 1]), point(&[1, 1]), point(&[3, 5])]).unwrap();
        assert!(report.pass);
        assert_eq!(report.sign, Some(-1));
        assert!(report.points[1].notice.is_some());
        assert_eq!(gamma_field_ratio(&h, &gl.form).unwrap(), Some(g(-1)));
    }

    #[test]
    fn radial_gl11() {
        let gl = build_gl(1, 1).unwrap();
        let op = build_radial(&gl.roots, &gl.form).unwrap();
        assert_eq!(op.lambda.coeffs(), &[g(1), g(-1)]);
        assert!(op.eigenvalue_c.is_zero());
        assert!(op.apply_c2(&TorusRational::one(2)).is_zero());
    }

    #[test]
    fn synthetic_monomial_eigenfunction() {
        let lambda = TorusLaplacian::new(vec![g(1), g(-1)]);
        let j = TorusRational::monomial(vec![1, 0], g(1));
        let op = RadialOperator::certify(j, g(1), lambda.clone()).unwrap();
        assert_eq!(op.eigenvalue_c, GaussianRational::ratio(1, 4));
        let bad = TorusRational::from_poly(LaurentPoly::monomial(vec![1, 0], g(1)).add(&LaurentPoly::one(2)));
        assert!(matches!(RadialOperator::certify(bad, g(1), lambda), Err(Error::NotEigenfunction(_))));
    }

    #[test]
    fn fit_gl11() {
        let gl = build_gl(1, 1).unwrap();
        let op = build_radial(&gl.roots, &gl.form).unwrap();
        let weights: Vec<Vec<i32>> = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, -2], vec![1, 1], vec![2, 0], vec![0, 2], vec![3, -1]];
        let fit = extract_p(&op, &weights).unwrap();
        assert!(fit.consistent);
        assert_eq!(fit.values[3].1, g(0));
        let mut expected = Polynomial::zero(2);
        expected.add_term(vec![2, 0], &GaussianRational::ratio(1, 4));
        expected.add_term(vec![0, 2], &GaussianRational::ratio(-1, 4));
        assert_eq!(fit.polynomial, expected);
        assert!(matches!(extract_p(&op, &weights[..3]), Err(Error::InsufficientWeights { degree: 2 })));
        let dup = vec![vec![0, 0], vec![0, 0]];
        assert!(matches!(extract_p(&op, &dup), Err(Error::DuplicateWeight(_))));
    }

    #[test]
    fn orthogonality_required() {
        let gl = build_gl(1, 1).unwrap();
        let mut gram = gl.form.gram().clone();
        gram[(gl.e(0, 0), gl.e(1, 1))] = g(1);
        let skew = QuadraticForm::new(gram).unwrap();
        assert!(TorusLaplacian::from_form(&gl.roots, &skew).is_err());
    }
}
