//! The universal enveloping algebra in PBW normal form.
//!
//! Normal monomials are words in nondecreasing basis order in which odd
//! generators occur at most once. Normalization rewrites adjacent pairs with
//! `XY = (-1)^{|X||Y|} YX + [X, Y]` and odd squares with `ξξ = ½[ξ, ξ]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::gaussian_to_json;
use crate::lie::{GlAlgebra, LieSuperalgebra, Parity, QuadraticForm, RootSystem};
use crate::polynomial::Polynomial;
use crate::scalar::GaussianRational;

/// A sorted word of generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PbwMonomial(Vec<usize>);

impl PbwMonomial {
    pub fn one() -> Self {
        PbwMonomial(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        PbwMonomial(vec![i])
    }

    /// Wraps a word that is already normal. Panics otherwise.
    pub fn from_sorted(word: Vec<usize>, g: &LieSuperalgebra) -> Self {
        assert!(is_normal(&word, g), "word is not in PBW normal form");
        PbwMonomial(word)
    }

    pub fn word(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parity(&self, g: &LieSuperalgebra) -> Parity {
        Parity::from_bit(self.0.iter().filter(|&&i| g.parity(i) == Parity::Odd).count() as u8)
    }

    /// `(generator, power)` pairs.
    pub fn powers(&self) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = Vec::new();
        for &i in &self.0 {
            match out.last_mut() {
                Some((j, k)) if *j == i => *k += 1,
                _ => out.push((i, 1)),
            }
        }
        out
    }
}

fn is_normal(word: &[usize], g: &LieSuperalgebra) -> bool {
    word.windows(2).all(|w| w[0] < w[1] || (w[0] == w[1] && g.parity(w[0]) == Parity::Even))
}

/// Linear combination of normal monomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PbwElement {
    terms: BTreeMap<PbwMonomial, GaussianRational>,
}

impl PbwElement {
    pub fn zero() -> Self {
        PbwElement::default()
    }

    pub fn one() -> Self {
        Self::monomial(PbwMonomial::one(), GaussianRational::one())
    }

    pub fn scalar(c: GaussianRational) -> Self {
        Self::monomial(PbwMonomial::one(), c)
    }

    pub fn monomial(m: PbwMonomial, c: GaussianRational) -> Self {
        let mut e = PbwElement::zero();
        e.add_term(m, &c);
        e
    }

    pub fn generator(i: usize) -> Self {
        Self::monomial(PbwMonomial::generator(i), GaussianRational::one())
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

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add_scaled(&mut self, other: &PbwElement, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), &(x * c));
        }
    }

    pub fn add(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        out.add_scaled(other, &GaussianRational::one());
        out
    }

    pub fn sub(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        out.add_scaled(other, &GaussianRational::from_int(-1));
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> PbwElement {
        let mut out = PbwElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// Maximal monomial degree; 0 for zero.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(PbwMonomial::degree).max().unwrap_or(0)
    }

    /// Parity if homogeneous (zero counts as even).
    pub fn parity(&self, g: &LieSuperalgebra) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity(g));
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// `(even part, odd part)`.
    pub fn split_parity(&self, g: &LieSuperalgebra) -> (PbwElement, PbwElement) {
        let mut even = PbwElement::zero();
        let mut odd = PbwElement::zero();
        for (m, c) in &self.terms {
            match m.parity(g) {
                Parity::Even => even.add_term(m.clone(), c),
                Parity::Odd => odd.add_term(m.clone(), c),
            }
        }
        (even, odd)
    }

    /// `[{monomial: [[generator, power]], coeff: [re, im]}]` with generators by name.
    pub fn to_json(&self, g: &LieSuperalgebra) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    let mono: Vec<Value> = m.powers().iter().map(|(i, k)| json!([g.name(*i), k])).collect();
                    json!({"monomial": mono, "coeff": gaussian_to_json(c)})
                })
                .collect(),
        )
    }

    pub fn display<'a>(&'a self, g: &'a LieSuperalgebra) -> impl fmt::Display + 'a {
        DisplayPbw { e: self, g }
    }
}

struct DisplayPbw<'a> {
    e: &'a PbwElement,
    g: &'a LieSuperalgebra,
}

impl fmt::Display for DisplayPbw<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.e.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, k) in m.powers() {
                if k == 1 {
                    write!(f, "*{}", self.g.name(i))?;
                } else {
                    write!(f, "*{}^{}", self.g.name(i), k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(m, c)| (&m.0, c))).finish()
    }
}

/// Redex selection for the rewriting normalizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
    /// Uniformly random redex from a ChaCha8 stream with this seed.
    Random(u64),
}

/// Outcome of a centrality test.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralityReport {
    pub pass: bool,
    /// First generator with a nonzero supercommutator, and that commutator.
    pub witness: Option<(usize, PbwElement)>,
}

/// `E(g)` for a fixed Lie superalgebra, with a memo of `monomial · generator` products.
pub struct EnvelopingAlgebra<'g> {
    g: &'g LieSuperalgebra,
    cache: Mutex<HashMap<(Vec<usize>, usize), PbwElement>>,
}

impl<'g> EnvelopingAlgebra<'g> {
    pub fn new(g: &'g LieSuperalgebra) -> Self {
        EnvelopingAlgebra { g, cache: Mutex::new(HashMap::new()) }
    }

    pub fn algebra(&self) -> &'g LieSuperalgebra {
        self.g
    }

    /// Normal form of `mono · X_x`.
    fn mul_mono_gen(&self, mono: &[usize], x: usize) -> PbwElement {
        let g = self.g;
        match mono.last() {
            None => return PbwElement::generator(x),
            Some(&y) if y < x || (y == x && g.parity(x) == Parity::Even) => {
                let mut w = mono.to_vec();
                w.push(x);
                return PbwElement::monomial(PbwMonomial(w), GaussianRational::one());
            }
            _ => {}
        }
        let key = (mono.to_vec(), x);
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let (rest, y) = (&mono[..mono.len() - 1], mono[mono.len() - 1]);
        let mut out = PbwElement::zero();
        if y == x {
            // odd square: ξξ = ½[ξ, ξ]
            let half = GaussianRational::ratio(1, 2);
            for (k, c) in g.bracket(x, x) {
                out.add_scaled(&self.mul_mono_gen(rest, *k), &(c * &half));
            }
        } else {
            // y > x: y x = (-1)^{|x||y|} x y + [y, x]
            let sign = GaussianRational::from_int(g.parity(x).koszul(g.parity(y)));
            let left = self.mul_mono_gen(rest, x);
            for (m, c) in &left.terms {
                out.add_scaled(&self.mul_mono_gen(&m.0, y), &(c * &sign));
            }
            for (k, c) in g.bracket(y, x) {
                out.add_scaled(&self.mul_mono_gen(rest, *k), c);
            }
        }
        self.cache.lock().unwrap().insert(key, out.clone());
        out
    }

    fn mul_elem_gen(&self, e: &PbwElement, x: usize) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, c) in &e.terms {
            out.add_scaled(&self.mul_mono_gen(&m.0, x), c);
        }
        out
    }

    /// Normal form of `coeff · X_{w_1} ⋯ X_{w_k}` by left-to-right insertion.
    pub fn normalize_word(&self, word: &[usize], coeff: &GaussianRational) -> PbwElement {
        let mut acc = PbwElement::scalar(coeff.clone());
        for &x in word {
            acc = self.mul_elem_gen(&acc, x);
        }
        acc
    }

    /// Normal form of a word by rewriting adjacent redexes chosen by `strategy`.
    ///
    /// Shares no code with the insertion normalizer.
    pub fn normalize_by_rewriting(&self, word: &[usize], coeff: &GaussianRational, strategy: RewriteStrategy) -> PbwElement {
        let g = self.g;
        let mut rng = match strategy {
            RewriteStrategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut pending: BTreeMap<Vec<usize>, GaussianRational> = BTreeMap::new();
        pending.insert(word.to_vec(), coeff.clone());
        let mut done = PbwElement::zero();
        let push = |pending: &mut BTreeMap<Vec<usize>, GaussianRational>, w: Vec<usize>, c: GaussianRational| {
            if c.is_zero() {
                return;
            }
            let entry = pending.entry(w).or_insert_with(GaussianRational::zero);
            *entry += &c;
        };
        while let Some((w, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            let redexes: Vec<usize> = (0..w.len().saturating_sub(1))
                .filter(|&p| w[p] > w[p + 1] || (w[p] == w[p + 1] && g.parity(w[p]) == Parity::Odd))
                .collect();
            if redexes.is_empty() {
                done.add_term(PbwMonomial(w), &c);
                continue;
            }
            let p = match (&strategy, rng.as_mut()) {
                (RewriteStrategy::Leftmost, _) => redexes[0],
                (RewriteStrategy::Rightmost, _) => *redexes.last().unwrap(),
                (RewriteStrategy::Random(_), Some(r)) => redexes[r.random_range(0..redexes.len())],
                _ => unreachable!(),
            };
            let (a, b) = (w[p], w[p + 1]);
            let splice = |k: Option<usize>| -> Vec<usize> {
                let mut v = w[..p].to_vec();
                v.extend(k);
                v.extend_from_slice(&w[p + 2..]);
                v
            };
            if a == b {
                let half = GaussianRational::ratio(1, 2);
                for (k, x) in g.bracket(a, a) {
                    push(&mut pending, splice(Some(*k)), &(&c * x) * &half);
                }
            } else {
                let mut swapped = w.clone();
                swapped.swap(p, p + 1);
                let sign = GaussianRational::from_int(g.parity(a).koszul(g.parity(b)));
                push(&mut pending, swapped, &c * &sign);
                for (k, x) in g.bracket(a, b) {
                    push(&mut pending, splice(Some(*k)), &c * x);
                }
            }
        }
        done
    }

    pub fn multiply(&self, x: &PbwElement, y: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m2, c2) in &y.terms {
            let mut acc = x.scale(c2);
            for &gen in &m2.0 {
                acc = self.mul_elem_gen(&acc, gen);
            }
            out.add_scaled(&acc, &GaussianRational::one());
        }
        out
    }

    /// Supercommutator `xy - (-1)^{|x||y|} yx`, extended over parity components.
    pub fn supercommutator(&self, x: &PbwElement, y: &PbwElement) -> PbwElement {
        let (x0, x1) = x.split_parity(self.g);
        let (y0, y1) = y.split_parity(self.g);
        let mut out = PbwElement::zero();
        for (xp, px) in [(&x0, Parity::Even), (&x1, Parity::Odd)] {
            for (yp, py) in [(&y0, Parity::Even), (&y1, Parity::Odd)] {
                if xp.is_zero() || yp.is_zero() {
                    continue;
                }
                let sign = GaussianRational::from_int(-px.koszul(py));
                out.add_scaled(&self.multiply(xp, yp), &GaussianRational::one());
                out.add_scaled(&self.multiply(yp, xp), &sign);
            }
        }
        out
    }

    /// Checks `[c, X_i] = 0` for every generator.
    pub fn is_central(&self, c: &PbwElement) -> CentralityReport {
        for i in 0..self.g.dim() {
            let comm = self.supercommutator(c, &PbwElement::generator(i));
            if !comm.is_zero() {
                return CentralityReport { pass: false, witness: Some((i, comm)) };
            }
        }
        CentralityReport { pass: true, witness: None }
    }

    /// `C₂ = Σ_{i,k} b(θ(V_k), θ(V_i)) V_i V_k`, with `θ(V_i)` the dual basis `b(θ(V_i), V_j) = δ_ij`.
    pub fn casimir2(&self, form: &QuadraticForm) -> Result<PbwElement> {
        let theta = form.theta_dual()?;
        let n = self.g.dim();
        let mut out = PbwElement::zero();
        for i in 0..n {
            for k in 0..n {
                let c = form.eval(theta.row(k), theta.row(i));
                if !c.is_zero() {
                    out.add_scaled(&self.normalize_word(&[i, k], &c), &GaussianRational::one());
                }
            }
        }
        Ok(out)
    }

    /// Gelfand invariant `Σ (-1)^{|a_2|+…+|a_k|} E_{a_1a_2} E_{a_2a_3} ⋯ E_{a_ka_1}`,
    /// certified central.
    pub fn gelfand_invariant(&self, gl: &GlAlgebra, k: usize) -> Result<PbwElement> {
        if k == 0 {
            return Err(Error::InvalidDefinition("Gelfand invariant order must be >= 1".into()));
        }
        if !std::ptr::eq(self.g, &gl.algebra) && *self.g != gl.algebra {
            return Err(Error::InvalidDefinition("enveloping algebra is not built on this gl(m|n)".into()));
        }
        let size = gl.size();
        let mut out = PbwElement::zero();
        let mut idx = vec![0usize; k];
        loop {
            let sign = idx[1..].iter().filter(|&&a| gl.row_parity(a) == Parity::Odd).count();
            let c = GaussianRational::from_int(if sign % 2 == 0 { 1 } else { -1 });
            let word: Vec<usize> = (0..k).map(|t| gl.e(idx[t], idx[(t + 1) % k])).collect();
            out.add_scaled(&self.normalize_word(&word, &c), &GaussianRational::one());
            // odometer over {0..size}^k
            let mut pos = 0;
            loop {
                if pos == k {
                    let report = self.is_central(&out);
                    return match report.witness {
                        None => Ok(out),
                        Some((i, _)) => Err(Error::NotCentral { witness: self.g.name(i).to_string() }),
                    };
                }
                idx[pos] += 1;
                if idx[pos] < size {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
}

/// Keeps the monomials supported on Cartan generators, as a commutative
/// polynomial in `H_1..H_t`.
pub fn project_to_cartan(c: &PbwElement, rs: &RootSystem) -> Polynomial {
    let t = rs.rank();
    let mut out = Polynomial::zero(t);
    for (m, coeff) in c.terms() {
        let mut exps = vec![0u32; t];
        let mut on_cartan = true;
        for &gen in m.word() {
            match rs.cartan().iter().position(|&h| h == gen) {
                Some(pos) => exps[pos] += 1,
                None => {
                    on_cartan = false;
                    break;
                }
            }
        }
        if on_cartan {
            out.add_term(exps, coeff);
        }
    }
    out
}
