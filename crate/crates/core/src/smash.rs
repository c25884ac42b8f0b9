//! The smash product `K(A) # E(g)` of the torus group algebra with the
//! enveloping algebra, with its Hopf superalgebra structure.
//!
//! Products follow `(x₁#y₁)(x₂#y₂) = x₁x₂ # Ad(x₂⁻¹)(y₁)·y₂`. Group elements
//! are group-like and generators of `g` are primitive; the antipode is
//! `s(g#X) = -g⁻¹ # Ad(g)(X)` extended as a super antihomomorphism.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::json::{coordinate_from_json, coordinate_to_json};
use crate::lie::{LieSuperalgebra, Parity, QuadraticForm, RootSystem};
use crate::pbw::{EnvelopingAlgebra, PbwElement, PbwMonomial};
use crate::sampling;
use crate::scalar::GaussianRational;
use crate::supermatrix::{Matrix, SuperMatrix};
use crate::torus::TorusRational;

/// A point of the maximal torus, stored by its coordinates `z_i = e^{y_i/2}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusElement {
    coords: Vec<GaussianRational>,
}

impl TorusElement {
    pub fn new(coords: Vec<GaussianRational>) -> Result<Self> {
        if let Some(k) = coords.iter().position(Zero::is_zero) {
            return Err(Error::ZeroTorusCoordinate(k));
        }
        Ok(TorusElement { coords })
    }

    pub fn identity(rank: usize) -> Self {
        TorusElement { coords: vec![GaussianRational::one(); rank] }
    }

    pub fn coords(&self) -> &[GaussianRational] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(One::is_one)
    }

    pub fn mul(&self, other: &TorusElement) -> TorusElement {
        assert_eq!(self.rank(), other.rank(), "torus rank mismatch");
        TorusElement { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).collect() }
    }

    pub fn inv(&self) -> TorusElement {
        TorusElement { coords: self.coords.iter().map(|z| z.inv().expect("nonzero coordinate")).collect() }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coords.iter().map(coordinate_to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let parse = |message: String| Error::Parse { line: 0, column: 0, message };
        let items = v.as_array().ok_or_else(|| parse("torus point must be an array".into()))?;
        let coords = items
            .iter()
            .map(|c| coordinate_from_json(c).map_err(parse))
            .collect::<Result<Vec<_>>>()?;
        TorusElement::new(coords)
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, z) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{z}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Basis element `g # m` of the smash product.
pub type SmashBasis = (TorusElement, PbwMonomial);

/// Finite linear combination of basis elements `g # m`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SmashElement {
    terms: BTreeMap<SmashBasis, GaussianRational>,
}

impl SmashElement {
    pub fn zero() -> Self {
        SmashElement::default()
    }

    pub fn basis(g: TorusElement, m: PbwMonomial, c: GaussianRational) -> Self {
        let mut e = SmashElement::zero();
        e.add_term((g, m), &c);
        e
    }

    /// `g # 1`.
    pub fn group(g: TorusElement) -> Self {
        Self::basis(g, PbwMonomial::one(), GaussianRational::one())
    }

    /// `g # y` for a PBW element `y`.
    pub fn from_pbw(g: &TorusElement, y: &PbwElement) -> Self {
        let mut e = SmashElement::zero();
        for (m, c) in y.terms() {
            e.add_term((g.clone(), m.clone()), c);
        }
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SmashBasis, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &TorusElement, m: &PbwMonomial) -> GaussianRational {
        self.terms.get(&(g.clone(), m.clone())).cloned().unwrap_or_else(GaussianRational::zero)
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

    pub fn add_term(&mut self, b: SmashBasis, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(b.clone()).or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn add_scaled(&mut self, other: &SmashElement, c: &GaussianRational) {
        for (b, x) in &other.terms {
            self.add_term(b.clone(), &(x * c));
        }
    }

    pub fn add(&self, other: &SmashElement) -> SmashElement {
        let mut out = self.clone();
        out.add_scaled(other, &GaussianRational::one());
        out
    }

    pub fn sub(&self, other: &SmashElement) -> SmashElement {
        let mut out = self.clone();
        out.add_scaled(other, &GaussianRational::from_int(-1));
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> SmashElement {
        let mut out = SmashElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn display<'a>(&'a self, g: &'a LieSuperalgebra) -> impl fmt::Display + 'a {
        DisplaySmash { e: self, g }
    }
}

impl fmt::Debug for SmashElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|((g, m), c)| (format!("{g}#{:?}", m.word()), c)))
            .finish()
    }
}

struct DisplaySmash<'a> {
    e: &'a SmashElement,
    g: &'a LieSuperalgebra,
}

impl fmt::Display for DisplaySmash<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return write!(f, "0");
        }
        for (n, ((t, m), c)) in self.e.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{t}#")?;
            if m.is_one() {
                write!(f, "1")?;
            }
            for (k, (i, p)) in m.powers().into_iter().enumerate() {
                if k > 0 {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.g.name(i))?;
                if p > 1 {
                    write!(f, "^{p}")?;
                }
            }
        }
        Ok(())
    }
}

/// Element of an `n`-fold tensor power of the smash product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmashTensor {
    arity: usize,
    terms: BTreeMap<Vec<SmashBasis>, GaussianRational>,
}

impl SmashTensor {
    pub fn zero(arity: usize) -> Self {
        SmashTensor { arity, terms: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<SmashBasis>, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, legs: Vec<SmashBasis>, c: &GaussianRational) {
        assert_eq!(legs.len(), self.arity);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(legs.clone()).or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&legs);
        }
    }

    /// `u₁ ⊗ u₂ ⊗ ⋯` expanded bilinearly.
    pub fn pure(factors: &[&SmashElement]) -> Self {
        let mut out = SmashTensor::zero(factors.len());
        let mut acc: Vec<(Vec<SmashBasis>, GaussianRational)> = vec![(Vec::new(), GaussianRational::one())];
        for u in factors {
            let mut next = Vec::new();
            for (legs, c) in &acc {
                for (b, x) in u.terms() {
                    let mut l = legs.clone();
                    l.push(b.clone());
                    next.push((l, c * x));
                }
            }
            acc = next;
        }
        for (legs, c) in acc {
            out.add_term(legs, &c);
        }
        out
    }

    pub fn sub(&self, other: &SmashTensor) -> SmashTensor {
        let mut out = self.clone();
        for (legs, c) in &other.terms {
            out.add_term(legs.clone(), &-c.clone());
        }
        out
    }
}

/// Outcome of one Hopf axiom over the sampled elements.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomResult {
    pub name: &'static str,
    pub pass: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HopfReport {
    pub axioms: Vec<AxiomResult>,
}

impl HopfReport {
    pub fn pass(&self) -> bool {
        self.axioms.iter().all(|a| a.pass)
    }
}

/// The smash product over the torus of a root system.
pub struct SmashAlgebra<'g> {
    env: EnvelopingAlgebra<'g>,
    roots: &'g RootSystem,
}

fn sign(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn parity_of(b: &SmashBasis, g: &LieSuperalgebra) -> Parity {
    b.1.parity(g)
}

impl<'g> SmashAlgebra<'g> {
    /// Requires every generator to be a Cartan or root vector.
    pub fn new(g: &'g LieSuperalgebra, roots: &'g RootSystem) -> Result<Self> {
        for i in 0..g.dim() {
            if roots.weight_of(i).is_none() {
                return Err(Error::NotAWeightVector(g.name(i).to_string()));
            }
        }
        Ok(SmashAlgebra { env: EnvelopingAlgebra::new(g), roots })
    }

    pub fn algebra(&self) -> &'g LieSuperalgebra {
        self.env.algebra()
    }

    pub fn roots(&self) -> &'g RootSystem {
        self.roots
    }

    pub fn enveloping(&self) -> &EnvelopingAlgebra<'g> {
        &self.env
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn identity(&self) -> TorusElement {
        TorusElement::identity(self.rank())
    }

    /// Scalar by which `Ad(a)` acts on a PBW monomial.
    pub fn ad_monomial(&self, a: &TorusElement, m: &PbwMonomial) -> GaussianRational {
        let mut s = GaussianRational::one();
        for &i in m.word() {
            s = &s * &self.roots.ad_scalar(a, i).expect("validated weight basis");
        }
        s
    }

    /// `Ad(a)` on a PBW element.
    pub fn ad_pbw(&self, a: &TorusElement, y: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, c) in y.terms() {
            out.add_term(m.clone(), &(c * &self.ad_monomial(a, m)));
        }
        out
    }

    /// `e # X_i`.
    pub fn generator(&self, i: usize) -> SmashElement {
        SmashElement::basis(self.identity(), PbwMonomial::generator(i), GaussianRational::one())
    }

    /// `c · (e # 1)`.
    pub fn unit(&self, c: GaussianRational) -> SmashElement {
        SmashElement::basis(self.identity(), PbwMonomial::one(), c)
    }

    pub fn counit(&self, u: &SmashElement) -> GaussianRational {
        let mut total = GaussianRational::zero();
        for ((_, m), c) in u.terms() {
            if m.is_one() {
                total += c;
            }
        }
        total
    }

    fn multiply_basis(&self, (x1, m1): &SmashBasis, (x2, m2): &SmashBasis) -> SmashElement {
        let s = self.ad_monomial(&x2.inv(), m1);
        let y = self.env.multiply(
            &PbwElement::monomial(m1.clone(), s),
            &PbwElement::monomial(m2.clone(), GaussianRational::one()),
        );
        SmashElement::from_pbw(&x1.mul(x2), &y)
    }

    pub fn multiply(&self, u: &SmashElement, v: &SmashElement) -> SmashElement {
        let mut out = SmashElement::zero();
        for (b1, c1) in u.terms() {
            for (b2, c2) in v.terms() {
                out.add_scaled(&self.multiply_basis(b1, b2), &(c1 * c2));
            }
        }
        out
    }

    /// Product in the super tensor power:
    /// `(a₁⊗⋯⊗aₙ)(b₁⊗⋯⊗bₙ) = ± a₁b₁ ⊗ ⋯ ⊗ aₙbₙ` with the Koszul sign of moving each `b_j` past `a_i`, `i > j`.
    pub fn tensor_multiply(&self, x: &SmashTensor, y: &SmashTensor) -> SmashTensor {
        assert_eq!(x.arity, y.arity);
        let g = self.algebra();
        let mut out = SmashTensor::zero(x.arity);
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let mut odd_swaps = 0usize;
                for j in 0..b.len() {
                    if parity_of(&b[j], g) == Parity::Odd {
                        odd_swaps += a[j + 1..].iter().filter(|ai| parity_of(ai, g) == Parity::Odd).count();
                    }
                }
                let coeff = if odd_swaps % 2 == 0 { ca * cb } else { -(ca * cb) };
                let products: Vec<SmashElement> =
                    a.iter().zip(b).map(|(ai, bi)| self.multiply_basis(ai, bi)).collect();
                let refs: Vec<&SmashElement> = products.iter().collect();
                for (legs, c) in SmashTensor::pure(&refs).terms {
                    out.add_term(legs, &(&c * &coeff));
                }
            }
        }
        out
    }

    fn coproduct_basis(&self, (g, m): &SmashBasis) -> SmashTensor {
        let group = SmashElement::group(g.clone());
        let mut acc = SmashTensor::pure(&[&group, &group]);
        let unit = self.unit(GaussianRational::one());
        for &i in m.word() {
            let x = self.generator(i);
            let mut dx = SmashTensor::pure(&[&x, &unit]);
            for (legs, c) in SmashTensor::pure(&[&unit, &x]).terms {
                dx.add_term(legs, &c);
            }
            acc = self.tensor_multiply(&acc, &dx);
        }
        acc
    }

    /// `Δ(g # X₁⋯X_k) = Δ(g#1) Δ(e#X₁) ⋯ Δ(e#X_k)` in the tensor square.
    pub fn coproduct(&self, u: &SmashElement) -> SmashTensor {
        let mut out = SmashTensor::zero(2);
        for (b, c) in u.terms() {
            for (legs, x) in self.coproduct_basis(b).terms {
                out.add_term(legs, &(&x * c));
            }
        }
        out
    }

    fn antipode_basis(&self, (g, m): &SmashBasis) -> SmashElement {
        let gen = self.algebra();
        let word = m.word();
        let odd = word.iter().filter(|&&i| gen.parity(i) == Parity::Odd).count();
        // (-1)^k for the primitive signs, times the Koszul sign of reversing the word
        let flips = word.len() + odd * odd.saturating_sub(1) / 2;
        let mut acc = self.unit(sign(if flips % 2 == 0 { 1 } else { -1 }));
        for &i in word.iter().rev() {
            acc = self.multiply(&acc, &self.generator(i));
        }
        self.multiply(&acc, &SmashElement::group(g.inv()))
    }

    pub fn antipode(&self, u: &SmashElement) -> SmashElement {
        let mut out = SmashElement::zero();
        for (b, c) in u.terms() {
            out.add_scaled(&self.antipode_basis(b), c);
        }
        out
    }

    /// Multiplication `H ⊗ H → H`.
    pub fn mult(&self, t: &SmashTensor) -> SmashElement {
        assert_eq!(t.arity, 2);
        let mut out = SmashElement::zero();
        for (legs, c) in &t.terms {
            out.add_scaled(&self.multiply_basis(&legs[0], &legs[1]), c);
        }
        out
    }

    /// Applies a linear map to leg `k` of every term.
    fn map_leg<F>(&self, t: &SmashTensor, k: usize, f: F) -> SmashTensor
    where
        F: Fn(&SmashBasis) -> SmashElement,
    {
        let mut out = SmashTensor::zero(t.arity);
        for (legs, c) in &t.terms {
            for (b, x) in f(&legs[k]).terms() {
                let mut l = legs.clone();
                l[k] = b.clone();
                out.add_term(l, &(c * x));
            }
        }
        out
    }

    /// Replaces leg `k` by its coproduct, raising the arity by one.
    fn coproduct_leg(&self, t: &SmashTensor, k: usize) -> SmashTensor {
        let mut out = SmashTensor::zero(t.arity + 1);
        for (legs, c) in &t.terms {
            for (pair, x) in self.coproduct_basis(&legs[k]).terms {
                let mut l = legs[..k].to_vec();
                l.extend(pair);
                l.extend_from_slice(&legs[k + 1..]);
                out.add_term(l, &(c * &x));
            }
        }
        out
    }

    /// Applies the counit to leg `k`, lowering the arity by one.
    fn counit_leg(&self, t: &SmashTensor, k: usize) -> SmashTensor {
        let mut out = SmashTensor::zero(t.arity - 1);
        for (legs, c) in &t.terms {
            if legs[k].1.is_one() {
                let mut l = legs.clone();
                l.remove(k);
                out.add_term(l, c);
            }
        }
        out
    }

    /// Super flip `a ⊗ b ↦ (-1)^{|a||b|} b ⊗ a`.
    pub fn flip(&self, t: &SmashTensor) -> SmashTensor {
        let g = self.algebra();
        let mut out = SmashTensor::zero(2);
        for (legs, c) in &t.terms {
            let s = parity_of(&legs[0], g).koszul(parity_of(&legs[1], g));
            out.add_term(vec![legs[1].clone(), legs[0].clone()], &(c * &sign(s)));
        }
        out
    }

    fn single(&self, u: &SmashElement) -> SmashTensor {
        SmashTensor::pure(&[u])
    }

    /// Evaluates the Hopf axioms on `samples` random elements drawn from a
    /// ChaCha8 stream seeded by `seed`.
    pub fn check_hopf_axioms(&self, samples: usize, seed: u64) -> HopfReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = self.algebra();
        let elements: Vec<SmashElement> =
            (0..samples).map(|_| sampling::random_smash_element(&mut rng, self, 2, 2)).collect();
        let partners: Vec<SmashElement> =
            (0..samples).map(|_| sampling::random_smash_element(&mut rng, self, 2, 2)).collect();

        let mut axioms = Vec::new();
        let mut record = |name: &'static str, failures: Option<String>| {
            axioms.push(AxiomResult { name, pass: failures.is_none(), checked: samples, witness: failures });
        };
        let first_failure = |check: &dyn Fn(usize) -> bool| -> Option<String> {
            (0..samples).find(|&k| !check(k)).map(|k| {
                format!("u = {}; v = {}", elements[k].display(g), partners[k].display(g))
            })
        };

        let antipode_left = |k: usize| {
            let u = &elements[k];
            let d = self.coproduct(u);
            let lhs = self.mult(&self.map_leg(&d, 1, |b| self.antipode_basis(b)));
            lhs == self.unit(self.counit(u))
        };
        record("antipode_left", first_failure(&antipode_left));

        let antipode_right = |k: usize| {
            let u = &elements[k];
            let d = self.coproduct(u);
            let lhs = self.mult(&self.map_leg(&d, 0, |b| self.antipode_basis(b)));
            lhs == self.unit(self.counit(u))
        };
        record("antipode_right", first_failure(&antipode_right));

        let coassociativity = |k: usize| {
            let d = self.coproduct(&elements[k]);
            self.coproduct_leg(&d, 0) == self.coproduct_leg(&d, 1)
        };
        record("coassociativity", first_failure(&coassociativity));

        let counit = |k: usize| {
            let u = &elements[k];
            let d = self.coproduct(u);
            let expected = self.single(u);
            self.counit_leg(&d, 0) == expected && self.counit_leg(&d, 1) == expected
        };
        record("counit", first_failure(&counit));

        let cocommutativity = |k: usize| {
            let d = self.coproduct(&elements[k]);
            self.flip(&d) == d
        };
        record("super_cocommutativity", first_failure(&cocommutativity));

        let multiplicative = |k: usize| {
            let (u, v) = (&elements[k], &partners[k]);
            self.coproduct(&self.multiply(u, v)) == self.tensor_multiply(&self.coproduct(u), &self.coproduct(v))
        };
        record("coproduct_multiplicative", first_failure(&multiplicative));

        let antihomomorphism = |k: usize| {
            let (u, v) = (&elements[k], &partners[k]);
            let lhs = self.antipode(&self.multiply(u, v));
            let mut rhs = SmashElement::zero();
            for (bu, cu) in u.terms() {
                for (bv, cv) in v.terms() {
                    let s = parity_of(bu, g).koszul(parity_of(bv, g));
                    let prod = self.multiply(&self.antipode_basis(bv), &self.antipode_basis(bu));
                    rhs.add_scaled(&prod, &(&(cu * cv) * &sign(s)));
                }
            }
            lhs == rhs
        };
        record("antipode_antihomomorphism", first_failure(&antihomomorphism));

        HopfReport { axioms }
    }

    /// Pullback of conjugation `ψ(a, b) = b a b⁻¹` on basis elements with
    /// monomials of degree at most one.
    pub fn conjugation_pullback(
        &self,
        a: &TorusElement,
        xa: &PbwMonomial,
        b: &TorusElement,
        xb: &PbwMonomial,
    ) -> Result<SmashElement> {
        for m in [xa, xb] {
            if m.degree() > 1 {
                return Err(Error::DegreeTooHigh(m.degree()));
            }
        }
        let psi = b.mul(a).mul(&b.inv());
        let g = self.algebra();
        let inner = if xb.is_one() {
            PbwElement::monomial(xa.clone(), GaussianRational::one())
        } else {
            let one = GaussianRational::one();
            let ya = PbwElement::monomial(xa.clone(), one.clone());
            let yb = PbwElement::monomial(xb.clone(), one);
            let s = sign(xa.parity(g).koszul(xb.parity(g)));
            let twisted = self.env.multiply(&self.ad_pbw(&a.inv(), &yb), &ya);
            self.env.multiply(&ya, &yb).sub(&twisted.scale(&s))
        };
        Ok(SmashElement::from_pbw(&psi, &self.ad_pbw(b, &inner)))
    }

    /// Orthosymplectic frame in root coordinates (Cartan first, then roots in
    /// storage order), as the columns of a change-of-basis matrix, together
    /// with the super dimension of the frame.
    fn frame(&self, form: &QuadraticForm) -> Result<(Matrix<GaussianRational>, usize, usize)> {
        let rs = self.roots;
        let t = rs.rank();
        let n = t + rs.roots().len();
        let local = |i: usize| -> usize {
            match rs.cartan().iter().position(|&h| h == i) {
                Some(p) => p,
                None => t + rs.roots().iter().position(|r| r.vector == i).expect("root vector"),
            }
        };
        let mut columns: Vec<Vec<GaussianRational>> = Vec::new();
        let unit_col = |k: usize, c: GaussianRational| {
            let mut v = vec![GaussianRational::zero(); n];
            v[k] = c;
            v
        };
        for k in 0..t {
            columns.push(unit_col(k, GaussianRational::one()));
        }
        for root in rs.positive_roots(Parity::Even) {
            let neg = rs.opposite(root).ok_or_else(|| Error::NotAWeightVector(format!("{:?}", root.weight)))?;
            let (p, m) = (local(root.vector), local(neg.vector));
            let mut sum = unit_col(p, GaussianRational::one());
            sum[m] = GaussianRational::one();
            let mut diff = unit_col(p, GaussianRational::i());
            diff[m] = -GaussianRational::i();
            columns.push(sum);
            columns.push(diff);
        }
        let even = columns.len();
        for root in rs.positive_roots(Parity::Odd) {
            let neg = rs.opposite(root).ok_or_else(|| Error::NotAWeightVector(format!("{:?}", root.weight)))?;
            let pairing = form.entry(root.vector, neg.vector).clone();
            let scale = pairing.inv().ok_or(Error::DegenerateForm)?;
            columns.push(unit_col(local(root.vector), GaussianRational::one()));
            columns.push(unit_col(local(neg.vector), scale));
        }
        if columns.len() != n {
            return Err(Error::DimensionMismatch("root system does not pair into a frame".into()));
        }
        let rows: Vec<Vec<GaussianRational>> = (0..n).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
        Ok((Matrix::from_rows(rows)?, even, n - even))
    }

    /// Eigenvalue of the linearized conjugation on local coordinate `k`.
    fn jacobian_diagonal<F>(&self, entry: F) -> Vec<F::Out>
    where
        F: JacobianEntry,
    {
        let rs = self.roots;
        let mut diag: Vec<F::Out> = (0..rs.rank()).map(|_| entry.cartan()).collect();
        for root in rs.roots() {
            diag.push(entry.root(&root.weight));
        }
        diag
    }

    fn conjugate_into_frame<T: crate::supermatrix::Field>(
        &self,
        diag: Vec<T>,
        form: &QuadraticForm,
        lift: impl Fn(&GaussianRational) -> T,
        unit: T,
    ) -> Result<SuperMatrix<T>> {
        let (frame, even, odd) = self.frame(form)?;
        let n = diag.len();
        let inv = frame.inverse(&GaussianRational::one()).ok_or(Error::DegenerateForm)?;
        let lift_matrix = |m: &Matrix<GaussianRational>| -> Result<Matrix<T>> {
            Matrix::from_rows((0..n).map(|r| (0..n).map(|c| lift(&m[(r, c)])).collect()).collect())
        };
        let mut d = Matrix::filled(n, n, unit.zero_like());
        for (k, x) in diag.into_iter().enumerate() {
            d[(k, k)] = x;
        }
        let full = lift_matrix(&inv)?.mul(&d)?.mul(&lift_matrix(&frame)?)?;
        SuperMatrix::new(even, odd, full, unit)
    }

    /// Linearization of `ψ̇` at `(a, e)`: identity on the Cartan directions and
    /// `Id - Ad(a⁻¹)` on root directions, written in an orthosymplectic frame.
    pub fn jacobian_at(&self, form: &QuadraticForm, a: &TorusElement) -> Result<SuperMatrix<GaussianRational>> {
        if a.rank() != self.rank() {
            return Err(Error::DimensionMismatch("torus element rank".into()));
        }
        let diag = self.jacobian_diagonal(PointEntry { a_inv: a.inv() });
        self.conjugate_into_frame(diag, form, Clone::clone, GaussianRational::one())
    }

    /// The same Jacobian with entries in the torus function field, `a ↦ q`.
    pub fn jacobian_symbolic(&self, form: &QuadraticForm) -> Result<SuperMatrix<TorusRational>> {
        let t = self.rank();
        let diag = self.jacobian_diagonal(SymbolicEntry { t });
        self.conjugate_into_frame(diag, form, |c| TorusRational::constant(t, c.clone()), TorusRational::one(t))
    }

    /// Berezinian of [`Self::jacobian_at`]; fails with `SingularOddBlock` off the generic locus.
    pub fn gamma_via_sdet(&self, form: &QuadraticForm, a: &TorusElement) -> Result<GaussianRational> {
        self.jacobian_at(form, a)?.berezinian()
    }
}

trait JacobianEntry {
    type Out;
    fn cartan(&self) -> Self::Out;
    fn root(&self, weight: &[i32]) -> Self::Out;
}

struct PointEntry {
    a_inv: TorusElement,
}

impl JacobianEntry for PointEntry {
    type Out = GaussianRational;

    fn cartan(&self) -> GaussianRational {
        GaussianRational::one()
    }

    fn root(&self, weight: &[i32]) -> GaussianRational {
        let mut s = GaussianRational::one();
        for (z, &e) in self.a_inv.coords().iter().zip(weight) {
            s = &s * &z.pow(2 * e as i64).expect("nonzero coordinate");
        }
        &GaussianRational::one() - &s
    }
}

struct SymbolicEntry {
    t: usize,
}

impl JacobianEntry for SymbolicEntry {
    type Out = TorusRational;

    fn cartan(&self) -> TorusRational {
        TorusRational::one(self.t)
    }

    fn root(&self, weight: &[i32]) -> TorusRational {
        let exps: Vec<i32> = weight.iter().map(|w| -2 * w).collect();
        TorusRational::one(self.t).sub(&TorusRational::monomial(exps, GaussianRational::one()))
    }
}
