//! Rational functions on the torus: quotients of Laurent polynomials in the
//! half-weight variables `q_i = e^{y_i/2}`.
//!
//! Canonical form: the denominator is a polynomial with no monomial factor,
//! coprime to the numerator, whose lexicographically smallest term has
//! coefficient 1. Monomials are units, so they always live in the numerator.
//! With this convention equal functions have identical representations.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::{Exponents, LaurentPoly};
use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusRational {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl TorusRational {
    /// Builds `num / den` in canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let n = p.num_vars();
        TorusRational { num: p, den: LaurentPoly::one(n) }
    }

    pub fn zero(num_vars: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(num_vars))
    }

    pub fn one(num_vars: usize) -> Self {
        Self::from_poly(LaurentPoly::one(num_vars))
    }

    pub fn constant(num_vars: usize, c: GaussianRational) -> Self {
        Self::from_poly(LaurentPoly::constant(num_vars, c))
    }

    /// `c · q^exps`.
    pub fn monomial(exps: Exponents, c: GaussianRational) -> Self {
        Self::from_poly(LaurentPoly::monomial(exps, c))
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        Self::assemble(num, den, true)
    }

    // `reduce = false` trusts the caller that num and den are coprime up to monomials
    fn assemble(num: LaurentPoly, den: LaurentPoly, reduce: bool) -> Self {
        let n = num.num_vars();
        if num.is_zero() {
            return Self::zero(n);
        }
        let mn = num.min_exponents();
        let md = den.min_exponents();
        let neg = |v: &Exponents| v.iter().map(|x| -x).collect::<Exponents>();
        let mut num_p = num.shift(&neg(&mn));
        let mut den_p = den.shift(&neg(&md));
        if reduce && den_p.as_constant().is_none() && !num_p.is_monomial() {
            let g = num_p.gcd(&den_p);
            if g.as_constant().is_none() {
                num_p = num_p.div_exact(&g).expect("gcd divides numerator");
                den_p = den_p.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let lead = den_p.trailing().map(|(_, c)| c.clone()).expect("nonzero denominator");
        let inv = lead.inv().expect("nonzero coefficient");
        let shift: Exponents = mn.iter().zip(&md).map(|(a, b)| a - b).collect();
        TorusRational { num: num_p.shift(&shift).scale(&inv), den: den_p.scale(&inv) }
    }

    /// Re-runs canonicalization; the identity on canonical values.
    pub fn normalized(&self) -> Self {
        Self::canonical(self.num.clone(), self.den.clone())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn num_vars(&self) -> usize {
        self.num.num_vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        let d = self.den.as_constant()?;
        let n = self.num.as_constant()?;
        Some(&n / &d)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::canonical(self.num.add(&other.num), self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let a = other.den.div_exact(&g).expect("gcd divides");
        let b = self.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&a).add(&other.num.mul(&b));
        Self::canonical(num, self.den.mul(&a))
    }

    pub fn neg(&self) -> Self {
        TorusRational { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.num_vars());
        }
        Self::canonical(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars());
        }
        TorusRational { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: u32) -> Self {
        TorusRational { num: self.num.pow(k), den: self.den.pow(k) }.normalized()
    }

    /// `∂/∂y_i` (zero-based `i`), sending `q^λ` to `(λ_i/2) q^λ`.
    pub fn derive(&self, i: usize) -> Self {
        assert!(i < self.num_vars(), "coordinate index out of range");
        let dn = self.num.derive(i);
        if self.den.as_constant().is_some() {
            return TorusRational { num: dn, den: self.den.clone() };
        }
        // with b = den and g = gcd(b, ∂b), only factors of b free of q_i can cancel
        let b = &self.den;
        let db = b.derive(i);
        let g = if db.is_zero() { b.clone() } else { b.gcd(&db) };
        let bg = b.div_exact(&g).expect("gcd divides");
        let dbg = db.div_exact(&g).expect("gcd divides");
        let num = dn.mul(&bg).sub(&self.num.mul(&dbg));
        let den = b.mul(&bg);
        let free = den.content_in_var(i);
        Self::assemble(num, den, free.as_constant().is_none())
    }

    /// Evaluates at `q_i = z_i`; `None` where the denominator vanishes.
    pub fn eval(&self, z: &[GaussianRational]) -> Option<GaussianRational> {
        let d = self.den.eval(z)?;
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(z)? / &d)
    }

    /// True when the canonical denominator vanishes at `z`.
    pub fn has_pole_at(&self, z: &[GaussianRational]) -> bool {
        self.den.eval(z).map_or(true, |d| d.is_zero())
    }

    /// A square root up to a scalar: returns `(g, c)` with `g² = c·self`, `c ≠ 0`.
    ///
    /// When `c` is itself a square in `Q(i)` it is absorbed, giving `c = 1`.
    pub fn sqrt_scalar_free(&self) -> Result<(Self, GaussianRational)> {
        if self.is_zero() {
            return Ok((self.clone(), GaussianRational::one()));
        }
        let mono = self.num.min_exponents();
        if mono.iter().any(|e| e % 2 != 0) {
            return Err(Error::NotAScalarSquare);
        }
        let neg: Exponents = mono.iter().map(|x| -x).collect();
        let (hn, ln) = poly_sqrt(&self.num.shift(&neg)).ok_or(Error::NotAScalarSquare)?;
        let (hd, ld) = poly_sqrt(&self.den).ok_or(Error::NotAScalarSquare)?;
        let half: Exponents = mono.iter().map(|x| x / 2).collect();
        // self = (ln/ld) q^mono hn²/hd², so g = q^{mono/2} hn/hd has g² = (ld/ln) self
        let mut g = Self::canonical(hn.shift(&half), hd);
        let mut c = &ld / &ln;
        if let Some(s) = c.sqrt() {
            g = g.scale(&s.inv().expect("nonzero"));
            c = GaussianRational::one();
        }
        debug_assert_eq!(g.mul(&g), self.scale(&c));
        Ok((g, c))
    }
}

/// Square root of a polynomial up to its leading coefficient: returns `(h, lc)`
/// with `lc · h² = p` and `h` monic in the lexicographic leading term.
fn poly_sqrt(p: &LaurentPoly) -> Option<(LaurentPoly, GaussianRational)> {
    let (le, lc) = p.leading()?;
    let lc = lc.clone();
    if le.iter().any(|e| e % 2 != 0) {
        return None;
    }
    let target = p.scale(&lc.inv()?);
    let lead: Exponents = le.iter().map(|e| e / 2).collect();
    // every exponent of a root is bounded by half the per-variable degree
    let bound: Exponents = (0..p.num_vars())
        .map(|k| p.terms().map(|(e, _)| e[k]).max().unwrap_or(0) / 2)
        .collect();
    let mut h = LaurentPoly::monomial(lead.clone(), GaussianRational::one());
    // terms of h appear in strictly decreasing lex order
    loop {
        let rem = target.sub(&h.mul(&h));
        let Some((re, rc)) = rem.leading() else {
            return Some((h, lc));
        };
        let qe: Exponents = re.iter().zip(&lead).map(|(a, b)| a - b).collect();
        if qe >= lead || qe.iter().zip(&bound).any(|(&x, &b)| x < 0 || x > b) {
            return None;
        }
        h = h.add(&LaurentPoly::monomial(qe, rc / &GaussianRational::from_int(2)));
    }
}

impl fmt::Display for TorusRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for TorusRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
