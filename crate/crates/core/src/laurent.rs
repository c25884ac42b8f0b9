//! Sparse multivariate Laurent polynomials over `Q(i)`.
//!
//! A monomial `q^λ` stands for `exp(Σ λ_i y_i / 2)`, so `q_i = e^{y_i/2}`.
//! Exponent vectors are ordered lexicographically with `q_1 > q_2 > ...`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::GaussianRational;

pub type Exponents = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    num_vars: usize,
    terms: BTreeMap<Exponents, GaussianRational>,
}

impl LaurentPoly {
    pub fn zero(num_vars: usize) -> Self {
        LaurentPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, GaussianRational::one())
    }

    pub fn constant(num_vars: usize, c: GaussianRational) -> Self {
        Self::monomial(vec![0; num_vars], c)
    }

    /// `c · q^exps`.
    pub fn monomial(exps: Exponents, c: GaussianRational) -> Self {
        let num_vars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { num_vars, terms }
    }

    /// Builds from `(exponents, coefficient)` pairs, summing duplicates.
    ///
    /// Panics if an exponent vector has the wrong length.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, GaussianRational)>,
    {
        let mut p = LaurentPoly::zero(num_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent vector length");
            p.add_term(e, &c);
        }
        p
    }

    /// The sinh-type binomial `(q^λ - q^{-λ}) / 2`, i.e. `sinh(λ(y)/2)`.
    pub fn sinh_binomial(weight: &[i32]) -> Self {
        let neg: Exponents = weight.iter().map(|w| -w).collect();
        let half = GaussianRational::ratio(1, 2);
        LaurentPoly::from_terms(weight.len(), [(weight.to_vec(), half.clone()), (neg, -half)])
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> GaussianRational {
        self.terms.get(exps).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// The coefficient if this is a constant (including zero).
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&Exponents, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    /// Lexicographically smallest term.
    pub fn trailing(&self) -> Option<(&Exponents, &GaussianRational)> {
        self.terms.iter().next()
    }

    fn add_term(&mut self, e: Exponents, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.num_vars, other.num_vars);
        let mut out = LaurentPoly::zero(self.num_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.num_vars);
        }
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `q^shift`.
    pub fn shift(&self, shift: &[i32]) -> LaurentPoly {
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.num_vars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Componentwise minimum exponent; all zeros for the zero polynomial.
    pub fn min_exponents(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.num_vars];
        };
        let mut m = first.clone();
        for e in it {
            for (mi, ei) in m.iter_mut().zip(e) {
                *mi = (*mi).min(*ei);
            }
        }
        m
    }

    /// True when every exponent is non-negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// `∂/∂y_i`, which sends `q^λ` to `(λ_i/2) q^λ`. Zero-based index.
    pub fn derive(&self, i: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                out.add_term(e.clone(), &(c * &GaussianRational::ratio(e[i] as i64, 2)));
            }
        }
        out
    }

    /// Evaluates at `q_i = z_i`. `None` if a zero coordinate meets a negative exponent.
    pub fn eval(&self, z: &[GaussianRational]) -> Option<GaussianRational> {
        assert_eq!(z.len(), self.num_vars);
        let mut total = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (zi, &ei) in z.iter().zip(e) {
                if ei != 0 {
                    term = &term * &zi.pow(ei as i64)?;
                }
            }
            total += &term;
        }
        Some(total)
    }

    fn max_degree_in(&self, k: usize) -> i32 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }

    /// Exact quotient `self / divisor` for polynomials; `None` if not exact.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        debug_assert!(self.is_polynomial() && divisor.is_polynomial());
        let (de, dc) = divisor.leading()?;
        let (de, dc) = (de.clone(), dc.clone());
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.inv()?));
        }
        let bound: Vec<i32> =
            (0..self.num_vars).map(|k| self.max_degree_in(k) - divisor.max_degree_in(k)).collect();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero(self.num_vars);
        while let Some((re, rc)) = rem.leading() {
            let qe: Exponents = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            if qe.iter().zip(&bound).any(|(&x, &b)| x < 0 || x > b) {
                return None;
            }
            let qc = rc / &dc;
            let step = LaurentPoly::monomial(qe.clone(), qc.clone());
            rem = rem.sub(&divisor.mul(&step));
            quot.add_term(qe, &qc);
        }
        Some(quot)
    }

    /// Scales so the lexicographically largest coefficient is 1.
    fn monic_leading(&self) -> LaurentPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Coefficients with respect to `q_k`, indexed by degree; `q_k` is zeroed out in each.
    fn coeffs_in(&self, k: usize) -> Vec<LaurentPoly> {
        let deg = self.max_degree_in(k).max(0) as usize;
        let mut out = vec![LaurentPoly::zero(self.num_vars); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let d = e2[k] as usize;
            e2[k] = 0;
            out[d].add_term(e2, c);
        }
        out
    }

    fn var_power(num_vars: usize, k: usize, d: i32) -> LaurentPoly {
        let mut e = vec![0; num_vars];
        e[k] = d;
        LaurentPoly::monomial(e, GaussianRational::one())
    }

    /// Gcd of the coefficients of `self` viewed as a polynomial in `q_k`.
    pub fn content_in_var(&self, k: usize) -> LaurentPoly {
        content_in(self, k)
    }

    fn is_univariate_in(&self, k: usize) -> bool {
        self.terms.keys().all(|e| e.iter().enumerate().all(|(j, &x)| j == k || x == 0))
    }

    fn first_var(&self) -> Option<usize> {
        (0..self.num_vars).find(|&k| self.terms.keys().any(|e| e[k] != 0))
    }

    /// Greatest common divisor of two polynomials, normalized monic in the
    /// lexicographic leading term. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        assert!(self.is_polynomial() && other.is_polynomial(), "gcd expects polynomials");
        poly_gcd(self, other)
    }
}

fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let n = a.num_vars;
    if a.is_zero() {
        return b.monic_leading();
    }
    if b.is_zero() {
        return a.monic_leading();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return LaurentPoly::one(n);
    }
    // pull out the monomial gcd first
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let mono: Exponents = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
    let neg_a: Exponents = ma.iter().map(|x| -x).collect();
    let neg_b: Exponents = mb.iter().map(|x| -x).collect();
    let a = a.shift(&neg_a);
    let b = b.shift(&neg_b);
    let g = stripped_gcd(&a, &b);
    g.shift(&mono).monic_leading()
}

// gcd of polynomials with no monomial content
fn stripped_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let n = a.num_vars;
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return LaurentPoly::one(n);
    }
    if a.is_monomial() || b.is_monomial() {
        // no monomial content left, so a monomial divisor must be 1
        return LaurentPoly::one(n);
    }
    if a == b {
        return a.monic_leading();
    }
    if a.div_exact(b).is_some() {
        return b.monic_leading();
    }
    if b.div_exact(a).is_some() {
        return a.monic_leading();
    }
    let shared: Vec<usize> = (0..n).filter(|&j| a.max_degree_in(j) > 0 && b.max_degree_in(j) > 0).collect();
    let k = match shared.iter().min_by_key(|&&j| a.max_degree_in(j).max(b.max_degree_in(j))) {
        Some(&j) => j,
        None => match (a.first_var(), b.first_var()) {
            (Some(x), Some(y)) => x.min(y),
            _ => return LaurentPoly::one(n),
        },
    };
    let da = a.max_degree_in(k);
    let db = b.max_degree_in(k);
    if da == 0 {
        return poly_gcd(a, &content_in(b, k));
    }
    if db == 0 {
        return poly_gcd(&content_in(a, k), b);
    }
    if let Some(&j) = shared.iter().find(|&&j| coprime_image_in(a, b, j)) {
        return poly_gcd(&content_in(a, j), &content_in(b, j));
    }
    let ca = content_in(a, k);
    let cb = content_in(b, k);
    let c = poly_gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut r = b.div_exact(&cb).expect("content divides");
    if p.max_degree_in(k) < r.max_degree_in(k) {
        std::mem::swap(&mut p, &mut r);
    }
    let g = if p.is_univariate_in(k) && r.is_univariate_in(k) { field_euclid(p, r, k) } else { subresultant(p, r, k) };
    c.mul(&primitive_part(&g, k)).monic_leading()
}

fn field_euclid(mut p: LaurentPoly, mut r: LaurentPoly, k: usize) -> LaurentPoly {
    loop {
        let rem = field_rem(&p, &r, k);
        if rem.is_zero() {
            return r;
        }
        p = r;
        r = rem.monic_leading();
    }
}

// subresultant PRS; only the last nonzero remainder is returned, up to content
fn subresultant(mut p: LaurentPoly, mut r: LaurentPoly, k: usize) -> LaurentPoly {
    let n = p.num_vars;
    let mut g = LaurentPoly::one(n);
    let mut h = LaurentPoly::one(n);
    loop {
        let delta = (p.max_degree_in(k) - r.max_degree_in(k)) as u32;
        let rem = pseudo_rem(&p, &r, k);
        if rem.is_zero() {
            return r;
        }
        if rem.max_degree_in(k) == 0 {
            return LaurentPoly::one(n);
        }
        let divisor = g.mul(&h.pow(delta));
        p = r;
        r = rem.div_exact(&divisor).expect("subresultant division is exact");
        g = p.coeffs_in(k).pop().unwrap();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
}

// If some specialization of the other variables keeps both leading
// coefficients in q_k and gives coprime images, the gcd has degree 0 in q_k.
fn coprime_image_in(a: &LaurentPoly, b: &LaurentPoly, k: usize) -> bool {
    let n = a.num_vars;
    let la = a.coeffs_in(k).pop().unwrap();
    let lb = b.coeffs_in(k).pop().unwrap();
    for attempt in 0..3i64 {
        let point: Vec<GaussianRational> =
            (0..n).map(|j| GaussianRational::from_int(2 + attempt + 3 * j as i64)).collect();
        let eval = |p: &LaurentPoly| p.eval(&point).expect("polynomial");
        if eval(&la).is_zero() || eval(&lb).is_zero() {
            continue;
        }
        let image = |p: &LaurentPoly| {
            let mut out = LaurentPoly::zero(n);
            for (d, c) in p.coeffs_in(k).iter().enumerate() {
                let mut e = vec![0; n];
                e[k] = d as i32;
                out.add_term(e, &eval(c));
            }
            out
        };
        let g = field_euclid(image(a), image(b), k);
        return g.max_degree_in(k) == 0;
    }
    false
}

fn content_in(p: &LaurentPoly, k: usize) -> LaurentPoly {
    let mut g = LaurentPoly::zero(p.num_vars);
    for c in p.coeffs_in(k) {
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, &c);
        if g.as_constant().is_some() {
            return LaurentPoly::one(p.num_vars);
        }
    }
    g
}

fn primitive_part(p: &LaurentPoly, k: usize) -> LaurentPoly {
    let c = content_in(p, k);
    p.div_exact(&c).expect("content divides").monic_leading()
}

fn field_rem(a: &LaurentPoly, b: &LaurentPoly, k: usize) -> LaurentPoly {
    let n = a.num_vars;
    let db = b.max_degree_in(k);
    let lc = b.coeffs_in(k).pop().unwrap().as_constant().expect("univariate divisor");
    let b = b.scale(&lc.inv().expect("nonzero leading coefficient"));
    let mut r = a.clone();
    while !r.is_zero() && r.max_degree_in(k) >= db {
        let dr = r.max_degree_in(k);
        let lr = r.coeffs_in(k).pop().unwrap();
        r = r.sub(&lr.mul(&LaurentPoly::var_power(n, k, dr - db)).mul(&b));
    }
    r
}

fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly, k: usize) -> LaurentPoly {
    let n = a.num_vars;
    let db = b.max_degree_in(k);
    let lc = b.coeffs_in(k).pop().unwrap();
    let mut r = a.clone();
    let mut e = a.max_degree_in(k) - db + 1;
    while !r.is_zero() && r.max_degree_in(k) >= db {
        let dr = r.max_degree_in(k);
        let lr = r.coeffs_in(k).pop().unwrap();
        let step = lr.mul(&LaurentPoly::var_power(n, k, dr - db)).mul(b);
        r = lc.mul(&r).sub(&step);
        e -= 1;
    }
    lc.pow(e.max(0) as u32).mul(&r)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "*q{}", i + 1)?,
                    _ => write!(f, "*q{}^{}", i + 1, x)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, terms: &[(&[i32], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(n, terms.iter().map(|(e, c)| (e.to_vec(), GaussianRational::from_int(*c))))
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let b = p(2, &[(&[1, 0], 1)]);
        let d = a.sub(&b);
        assert_eq!(d, p(2, &[(&[0, 1], 1)]));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn derivative_uses_half_weights() {
        // q1^2 = e^{y1}
        let f = p(1, &[(&[2], 1)]);
        assert_eq!(f.derive(0), f);
        assert_eq!(f.derive(0).derive(0), f);
    }

    #[test]
    fn exact_division() {
        let x = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let y = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let prod = x.mul(&y);
        assert_eq!(prod.div_exact(&x), Some(y.clone()));
        assert_eq!(prod.div_exact(&p(2, &[(&[1, 0], 1), (&[0, 0], 3)])), None);
    }

    #[test]
    fn gcd_of_products() {
        // (x - y)(x + 2) and (x - y)(y + 1)
        let common = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let a = common.mul(&p(2, &[(&[1, 0], 1), (&[0, 0], 2)]));
        let b = common.mul(&p(2, &[(&[0, 1], 1), (&[0, 0], 1)]));
        assert_eq!(a.gcd(&b), common);
        let coprime = p(2, &[(&[2, 0], 1), (&[0, 1], 1)]);
        assert_eq!(a.gcd(&coprime), LaurentPoly::one(2));
    }

    #[test]
    fn gcd_multivariate_squares() {
        // x^4 - 2x^2y^2 + y^4 = (x-y)^2 (x+y)^2
        let d = p(2, &[(&[4, 0], 1), (&[2, 2], -2), (&[0, 4], 1)]);
        let xmy = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let num = xmy.mul(&p(2, &[(&[0, 1], 3), (&[0, 0], 1)]));
        assert_eq!(d.gcd(&num), xmy);
        let z3 = p(3, &[(&[1, 0, 0], 1), (&[0, 0, 1], -1)]);
        let w3 = p(3, &[(&[0, 1, 0], 1), (&[0, 0, 1], -1)]);
        let a = z3.mul(&z3).mul(&w3);
        let b = z3.mul(&w3).mul(&w3);
        assert_eq!(a.gcd(&b), z3.mul(&w3).monic_leading());
    }

    #[test]
    fn monomial_content_in_gcd() {
        let a = p(2, &[(&[3, 1], 1), (&[2, 2], 1)]);
        let b = p(2, &[(&[2, 0], 2)]);
        assert_eq!(a.gcd(&b), p(2, &[(&[2, 0], 1)]));
    }

    #[test]
    fn evaluation() {
        let s = LaurentPoly::sinh_binomial(&[1, -1]);
        let z = [GaussianRational::from_int(2), GaussianRational::from_int(1)];
        assert_eq!(s.eval(&z), Some(GaussianRational::ratio(3, 4)));
        let zero = [GaussianRational::zero(), GaussianRational::one()];
        assert_eq!(s.eval(&zero), None);
    }
}
