//! Finite-dimensional Lie superalgebras given by structure constants.
//!
//! Also holds the invariant quadratic forms, type I root decompositions and
//! the `gl(m|n)` builder.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{gaussian_from_json, gaussian_to_json, rational_from_json, rational_to_json};
use crate::scalar::GaussianRational;
use crate::smash::TorusElement;
use crate::supermatrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }

    /// Koszul sign `(-1)^{|a||b|}` as ±1.
    pub fn koszul(self, other: Parity) -> i64 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }
}

/// Sparse vector in the basis: `(index, coefficient)` pairs sorted by index, no zeros.
pub type SparseVec = Vec<(usize, GaussianRational)>;

fn dense_to_sparse(v: &[GaussianRational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieSuperalgebra {
    generators: Vec<Generator>,
    table: Vec<Vec<SparseVec>>,
}

/// A violated Jacobi identity on a basis triple.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiWitness {
    pub triple: (usize, usize, usize),
    pub names: (String, String, String),
    pub value: Vec<GaussianRational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiReport {
    pub pass: bool,
    pub triples_checked: usize,
    pub witness: Option<JacobiWitness>,
}

/// Result of a structural check that may fail on a pair of generators.
#[derive(Clone, Debug, PartialEq)]
pub struct PairCheck {
    pub pass: bool,
    pub witness: Option<(usize, usize)>,
}

impl PairCheck {
    fn from_witness(witness: Option<(usize, usize)>) -> Self {
        PairCheck { pass: witness.is_none(), witness }
    }
}

impl LieSuperalgebra {
    /// Builds from a full table `table[i][j] = [X_i, X_j]`. No axioms are checked here.
    pub fn new(generators: Vec<Generator>, table: Vec<Vec<SparseVec>>) -> Result<Self> {
        let n = generators.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch(format!("bracket table is not {n}x{n}")));
        }
        for row in &table {
            for entry in row {
                if entry.iter().any(|(k, _)| *k >= n) {
                    return Err(Error::InvalidDefinition("bracket result index out of range".into()));
                }
            }
        }
        let table = table
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|entry| {
                        let mut dense = vec![GaussianRational::zero(); n];
                        for (k, c) in entry {
                            dense[k] += &c;
                        }
                        dense_to_sparse(&dense)
                    })
                    .collect()
            })
            .collect();
        Ok(LieSuperalgebra { generators, table })
    }

    /// An algebra with all brackets zero.
    pub fn abelian(generators: Vec<Generator>) -> Self {
        let n = generators.len();
        LieSuperalgebra { generators, table: vec![vec![Vec::new(); n]; n] }
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// `(even, odd)` dimensions.
    pub fn super_dim(&self) -> (usize, usize) {
        let odd = self.generators.iter().filter(|g| g.parity == Parity::Odd).count();
        (self.dim() - odd, odd)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn name(&self, i: usize) -> &str {
        &self.generators[i].name
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.generators[i].parity
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// `[X_i, X_j]` in sparse form.
    pub fn bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    /// Replaces one table entry. Used to inject faults in tests and tools.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: SparseVec) {
        let mut dense = vec![GaussianRational::zero(); self.dim()];
        for (k, c) in value {
            dense[k] += &c;
        }
        self.table[i][j] = dense_to_sparse(&dense);
    }

    /// Bilinear extension of the bracket to coordinate vectors.
    pub fn bracket_vectors(&self, u: &[GaussianRational], v: &[GaussianRational]) -> Vec<GaussianRational> {
        let n = self.dim();
        let mut out = vec![GaussianRational::zero(); n];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                for (k, x) in &self.table[i][j] {
                    out[*k] += &(&c * x);
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<GaussianRational> {
        let mut v = vec![GaussianRational::zero(); self.dim()];
        v[i] = GaussianRational::one();
        v
    }

    fn bracket_basis_dense(&self, i: usize, j: usize) -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); self.dim()];
        for (k, c) in &self.table[i][j] {
            out[*k] = c.clone();
        }
        out
    }

    /// `[X_i, v]` for a coordinate vector `v`.
    fn bracket_gen_vec(&self, i: usize, v: &[GaussianRational]) -> Vec<GaussianRational> {
        self.bracket_vectors(&self.basis_vector(i), v)
    }

    /// Super Jacobiator of a basis triple:
    /// `(-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]]`.
    pub fn jacobiator(&self, x: usize, y: usize, z: usize) -> Vec<GaussianRational> {
        let (px, py, pz) = (self.parity(x), self.parity(y), self.parity(z));
        let t1 = self.bracket_gen_vec(x, &self.bracket_basis_dense(y, z));
        let t2 = self.bracket_gen_vec(y, &self.bracket_basis_dense(z, x));
        let t3 = self.bracket_gen_vec(z, &self.bracket_basis_dense(x, y));
        let s = |sign: i64, v: Vec<GaussianRational>| -> Vec<GaussianRational> {
            if sign == 1 {
                v
            } else {
                v.into_iter().map(|c| -c).collect()
            }
        };
        let (t1, t2, t3) = (s(px.koszul(pz), t1), s(py.koszul(px), t2), s(pz.koszul(py), t3));
        t1.iter().zip(&t2).zip(&t3).map(|((a, b), c)| &(a + b) + c).collect()
    }

    /// Checks the super Jacobi identity on every ordered basis triple.
    pub fn check_jacobi(&self) -> JacobiReport {
        let n = self.dim();
        let mut checked = 0;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    checked += 1;
                    let v = self.jacobiator(x, y, z);
                    if v.iter().any(|c| !c.is_zero()) {
                        return JacobiReport {
                            pass: false,
                            triples_checked: checked,
                            witness: Some(JacobiWitness {
                                triple: (x, y, z),
                                names: (self.name(x).into(), self.name(y).into(), self.name(z).into()),
                                value: v,
                            }),
                        };
                    }
                }
            }
        }
        JacobiReport { pass: true, triples_checked: checked, witness: None }
    }

    /// `[X_i, X_j] = -(-1)^{|i||j|} [X_j, X_i]` on all pairs.
    pub fn check_antisymmetry(&self) -> PairCheck {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let sign = GaussianRational::from_int(-self.parity(i).koszul(self.parity(j)));
                let lhs = self.bracket_basis_dense(i, j);
                let rhs = self.bracket_basis_dense(j, i);
                if lhs.iter().zip(&rhs).any(|(a, b)| *a != &sign * b) {
                    return PairCheck::from_witness(Some((i, j)));
                }
            }
        }
        PairCheck::from_witness(None)
    }

    /// `[X_i, X_j]` lies in the parity `|i| + |j|`.
    pub fn check_parity(&self) -> PairCheck {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let p = self.parity(i).add(self.parity(j));
                if self.table[i][j].iter().any(|(k, _)| self.parity(*k) != p) {
                    return PairCheck::from_witness(Some((i, j)));
                }
            }
        }
        PairCheck::from_witness(None)
    }

    /// True when every structure constant is real.
    pub fn is_real(&self) -> bool {
        self.table.iter().flatten().flatten().all(|(_, c)| c.is_real())
    }

    /// Direct sum with extra even central generators.
    pub fn with_central(&self, names: &[&str]) -> Self {
        let n = self.dim();
        let m = n + names.len();
        let mut generators = self.generators.clone();
        generators.extend(names.iter().map(|s| Generator { name: s.to_string(), parity: Parity::Even }));
        let mut table = vec![vec![Vec::new(); m]; m];
        for (i, row) in self.table.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                table[i][j] = e.clone();
            }
        }
        LieSuperalgebra { generators, table }
    }
}

/// Invariant supersymmetric even bilinear form, stored by its Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm {
    gram: Matrix<GaussianRational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormReport {
    pub even: PairCheck,
    pub supersymmetric: PairCheck,
    pub invariant: Option<(usize, usize, usize)>,
    pub nondegenerate: bool,
}

impl FormReport {
    pub fn pass(&self) -> bool {
        self.even.pass && self.supersymmetric.pass && self.invariant.is_none() && self.nondegenerate
    }
}

impl QuadraticForm {
    pub fn new(gram: Matrix<GaussianRational>) -> Result<Self> {
        if gram.rows() != gram.cols() {
            return Err(Error::DimensionMismatch("Gram matrix is not square".into()));
        }
        Ok(QuadraticForm { gram })
    }

    pub fn gram(&self) -> &Matrix<GaussianRational> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, u: &[GaussianRational], v: &[GaussianRational]) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                let gij = &self.gram[(i, j)];
                if vj.is_zero() || gij.is_zero() {
                    continue;
                }
                acc += &(&(ui * gij) * vj);
            }
        }
        acc
    }

    pub fn entry(&self, i: usize, j: usize) -> &GaussianRational {
        &self.gram[(i, j)]
    }

    /// Checks evenness, supersymmetry, invariance and non-degeneracy against `g`.
    pub fn check(&self, g: &LieSuperalgebra) -> Result<FormReport> {
        let n = g.dim();
        if self.dim() != n {
            return Err(Error::DimensionMismatch(format!("form of size {} on algebra of dim {n}", self.dim())));
        }
        let mut even = None;
        let mut supersym = None;
        for i in 0..n {
            for j in 0..n {
                let b = &self.gram[(i, j)];
                if even.is_none() && g.parity(i) != g.parity(j) && !b.is_zero() {
                    even = Some((i, j));
                }
                let sign = GaussianRational::from_int(g.parity(i).koszul(g.parity(j)));
                if supersym.is_none() && *b != &sign * &self.gram[(j, i)] {
                    supersym = Some((i, j));
                }
            }
        }
        let mut invariant = None;
        'outer: for x in 0..n {
            for y in 0..n {
                let xy = g.bracket_basis_dense(x, y);
                for z in 0..n {
                    let yz = g.bracket_basis_dense(y, z);
                    if self.eval(&xy, &g.basis_vector(z)) != self.eval(&g.basis_vector(x), &yz) {
                        invariant = Some((x, y, z));
                        break 'outer;
                    }
                }
            }
        }
        let nondegenerate = !self.gram.det(&GaussianRational::one()).is_zero();
        Ok(FormReport {
            even: PairCheck::from_witness(even),
            supersymmetric: PairCheck::from_witness(supersym),
            invariant,
            nondegenerate,
        })
    }

    /// Matrix of `θ`: row `i` holds the coordinates of `θ(V_i)`, where
    /// `b(θ(V_i), V_j) = δ_ij`.
    pub fn theta_dual(&self) -> Result<Matrix<GaussianRational>> {
        self.gram.inverse(&GaussianRational::one()).ok_or(Error::DegenerateForm)
    }
}

/// One root `ε` with its root vector.
///
/// `weight[i] = ε(H_i)`, so `e^{ε(Y)/2} = q^weight` in the half-weight variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub weight: Vec<i32>,
    pub parity: Parity,
    pub vector: usize,
    pub positive: bool,
}

/// Type I root decomposition `g = h ⊕ ⊕ g_ε` relative to an even Cartan basis.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSystem {
    cartan: Vec<usize>,
    roots: Vec<Root>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootReport {
    pub eigen: Option<(usize, usize)>,
    pub symmetric: bool,
    pub covers_basis: bool,
}

impl RootReport {
    pub fn pass(&self) -> bool {
        self.eigen.is_none() && self.symmetric && self.covers_basis
    }
}

impl RootSystem {
    pub fn new(cartan: Vec<usize>, roots: Vec<Root>) -> Result<Self> {
        let t = cartan.len();
        if roots.iter().any(|r| r.weight.len() != t) {
            return Err(Error::DimensionMismatch("root weight length differs from Cartan rank".into()));
        }
        Ok(RootSystem { cartan, roots })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self, parity: Parity) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(move |r| r.positive && r.parity == parity)
    }

    /// Number of roots of the given parity, counted with multiplicity.
    pub fn count(&self, parity: Parity) -> usize {
        self.roots.iter().filter(|r| r.parity == parity).count()
    }

    /// Root whose vector is generator `i`, if any.
    pub fn root_of(&self, i: usize) -> Option<&Root> {
        self.roots.iter().find(|r| r.vector == i)
    }

    /// The root `-ε` of the same parity.
    pub fn opposite(&self, root: &Root) -> Option<&Root> {
        let neg: Vec<i32> = root.weight.iter().map(|w| -w).collect();
        self.roots.iter().find(|r| r.weight == neg && r.parity == root.parity)
    }

    pub fn is_cartan(&self, i: usize) -> bool {
        self.cartan.contains(&i)
    }

    /// Weight of generator `i`; zero for Cartan generators.
    pub fn weight_of(&self, i: usize) -> Option<Vec<i32>> {
        if self.is_cartan(i) {
            return Some(vec![0; self.rank()]);
        }
        self.root_of(i).map(|r| r.weight.clone())
    }

    /// Scalar by which `Ad(a)` acts on generator `i`: `∏ z_k^{2 ε_k}`.
    pub fn ad_scalar(&self, a: &TorusElement, i: usize) -> Result<GaussianRational> {
        if a.coords().len() != self.rank() {
            return Err(Error::DimensionMismatch("torus element rank".into()));
        }
        if let Some(k) = a.coords().iter().position(Zero::is_zero) {
            return Err(Error::ZeroTorusCoordinate(k));
        }
        let w = self.weight_of(i).ok_or_else(|| Error::NotAWeightVector(i.to_string()))?;
        let mut s = GaussianRational::one();
        for (z, e) in a.coords().iter().zip(&w) {
            if *e != 0 {
                s = &s * &z.pow(2 * *e as i64).expect("nonzero coordinate");
            }
        }
        Ok(s)
    }

    /// `Ad(a)` applied to a coordinate vector.
    pub fn ad_torus(&self, a: &TorusElement, v: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        v.iter()
            .enumerate()
            .map(|(i, c)| if c.is_zero() { Ok(c.clone()) } else { Ok(c * &self.ad_scalar(a, i)?) })
            .collect()
    }

    /// Checks `[H_i, X_ε] = ε(H_i) X_ε`, `R = -R`, and that Cartan plus root
    /// vectors exhaust the basis.
    pub fn check(&self, g: &LieSuperalgebra) -> RootReport {
        let mut eigen = None;
        'outer: for (ri, root) in self.roots.iter().enumerate() {
            for (k, &h) in self.cartan.iter().enumerate() {
                let lhs = g.bracket_basis_dense(h, root.vector);
                let mut rhs = vec![GaussianRational::zero(); g.dim()];
                rhs[root.vector] = GaussianRational::from_int(root.weight[k] as i64);
                if lhs != rhs {
                    eigen = Some((ri, k));
                    break 'outer;
                }
            }
        }
        let symmetric = self
            .roots
            .iter()
            .all(|r| self.opposite(r).is_some_and(|o| o.positive != r.positive));
        let mut seen: Vec<usize> = self.cartan.iter().copied().chain(self.roots.iter().map(|r| r.vector)).collect();
        seen.sort_unstable();
        seen.dedup();
        let covers_basis = seen.len() == g.dim() && seen.len() == self.cartan.len() + self.roots.len();
        RootReport { eigen, symmetric, covers_basis }
    }
}

/// `gl(m|n)` with its supertrace form and standard root system.
#[derive(Clone, Debug)]
pub struct GlAlgebra {
    pub m: usize,
    pub n: usize,
    pub algebra: LieSuperalgebra,
    pub form: QuadraticForm,
    pub roots: RootSystem,
    index: Vec<Vec<usize>>,
}

impl GlAlgebra {
    /// Basis index of the elementary matrix `E_ab` (zero-based `a`, `b`).
    pub fn e(&self, a: usize, b: usize) -> usize {
        self.index[a][b]
    }

    pub fn size(&self) -> usize {
        self.m + self.n
    }

    pub fn row_parity(&self, a: usize) -> Parity {
        if a < self.m {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

fn elementary_name(a: usize, b: usize, size: usize) -> String {
    if size < 10 {
        format!("E{}{}", a + 1, b + 1)
    } else {
        format!("E{}_{}", a + 1, b + 1)
    }
}

/// Builds `gl(m|n)` on elementary matrices.
///
/// Basis order: `E_ab` with `a > b` (negative roots), then `E_aa`, then `a < b`
/// (positive roots), each group in row-major order. This order is the PBW order.
pub fn build_gl(m: usize, n: usize) -> Result<GlAlgebra> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidDefinition("gl(m|n) needs m >= 1 and n >= 1".into()));
    }
    let size = m + n;
    let par = |a: usize| if a < m { Parity::Even } else { Parity::Odd };
    let mut order = Vec::new();
    for a in 0..size {
        for b in 0..a {
            order.push((a, b));
        }
    }
    for a in 0..size {
        order.push((a, a));
    }
    for a in 0..size {
        for b in a + 1..size {
            order.push((a, b));
        }
    }
    let mut index = vec![vec![0; size]; size];
    for (k, &(a, b)) in order.iter().enumerate() {
        index[a][b] = k;
    }
    let generators: Vec<Generator> = order
        .iter()
        .map(|&(a, b)| Generator { name: elementary_name(a, b, size), parity: par(a).add(par(b)) })
        .collect();
    let dim = order.len();
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for (i, &(a, b)) in order.iter().enumerate() {
        for (j, &(c, d)) in order.iter().enumerate() {
            // [E_ab, E_cd] = δ_bc E_ad - (-1)^{|E_ab||E_cd|} δ_da E_cb
            let mut entry: SparseVec = Vec::new();
            if b == c {
                entry.push((index[a][d], GaussianRational::one()));
            }
            if d == a {
                let sign = generators[i].parity.koszul(generators[j].parity);
                entry.push((index[c][b], GaussianRational::from_int(-sign)));
            }
            table[i][j] = entry;
        }
    }
    let algebra = LieSuperalgebra::new(generators, table)?;
    // b(E_ab, E_cd) = str(E_ab E_cd) = δ_bc δ_ad (-1)^{|a|}
    let mut gram = Matrix::filled(dim, dim, GaussianRational::zero());
    for (i, &(a, b)) in order.iter().enumerate() {
        let j = index[b][a];
        gram[(i, j)] = GaussianRational::from_int(if par(a) == Parity::Even { 1 } else { -1 });
    }
    let form = QuadraticForm::new(gram)?;
    let cartan: Vec<usize> = (0..size).map(|a| index[a][a]).collect();
    let mut roots = Vec::new();
    for &(a, b) in &order {
        if a == b {
            continue;
        }
        let mut weight = vec![0; size];
        weight[a] += 1;
        weight[b] -= 1;
        roots.push(Root { weight, parity: par(a).add(par(b)), vector: index[a][b], positive: a < b });
    }
    let roots = RootSystem::new(cartan, roots)?;
    Ok(GlAlgebra { m, n, algebra, form, roots, index })
}

/// Contents of an algebra-definition file.
#[derive(Clone, Debug)]
pub struct AlgebraDefinition {
    pub algebra: LieSuperalgebra,
    pub form: Option<QuadraticForm>,
    /// Matrix of an almost complex structure, column `j` = image of `X_j`.
    pub j: Option<Matrix<GaussianRational>>,
}

#[derive(Deserialize)]
struct RawBracket {
    i: usize,
    j: usize,
    result: Vec<Value>,
}

#[derive(Deserialize)]
struct RawDefinition {
    generators: Vec<Generator>,
    #[serde(default)]
    brackets: Vec<RawBracket>,
    #[serde(default)]
    form: Option<Vec<Vec<Value>>>,
    #[serde(default, rename = "J")]
    j: Option<Vec<Vec<Value>>>,
}

fn matrix_from_json(rows: &[Vec<Value>], n: usize, what: &str) -> Result<Matrix<GaussianRational>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidDefinition(format!("{what} must be a {n}x{n} matrix")));
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, v)| gaussian_from_json(v).map_err(|e| Error::InvalidDefinition(format!("{what}[{i}][{j}]: {e}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

fn matrix_to_json(m: &Matrix<GaussianRational>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(gaussian_to_json).collect()))
            .collect(),
    )
}

impl AlgebraDefinition {
    /// Parses the algebra-definition JSON format.
    ///
    /// Brackets not listed default to zero, except that a listed `[i, j]`
    /// supplies a missing `[j, i]` by super-antisymmetry.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: RawDefinition = serde_json::from_str(text)?;
        let n = raw.generators.len();
        let mut table: Vec<Vec<Option<SparseVec>>> = vec![vec![None; n]; n];
        for (idx, br) in raw.brackets.iter().enumerate() {
            if br.i >= n || br.j >= n {
                return Err(Error::InvalidDefinition(format!("brackets[{idx}]: index out of range")));
            }
            let mut entry = Vec::new();
            for (t, term) in br.result.iter().enumerate() {
                let parts = term
                    .as_array()
                    .filter(|p| p.len() == 3)
                    .ok_or_else(|| Error::InvalidDefinition(format!("brackets[{idx}].result[{t}]: expected [re, im, k]")))?;
                let bad = |e: String| Error::InvalidDefinition(format!("brackets[{idx}].result[{t}]: {e}"));
                let re = rational_from_json(&parts[0]).map_err(bad)?;
                let im = rational_from_json(&parts[1]).map_err(bad)?;
                let k = parts[2]
                    .as_u64()
                    .map(|k| k as usize)
                    .filter(|&k| k < n)
                    .ok_or_else(|| Error::InvalidDefinition(format!("brackets[{idx}].result[{t}]: bad generator index")))?;
                entry.push((k, GaussianRational::new(re, im)));
            }
            table[br.i][br.j] = Some(entry);
        }
        let mut full = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                full[i][j] = match (&table[i][j], &table[j][i]) {
                    (Some(e), _) => e.clone(),
                    (None, Some(e)) => {
                        let sign = GaussianRational::from_int(-raw.generators[i].parity.koszul(raw.generators[j].parity));
                        e.iter().map(|(k, c)| (*k, c * &sign)).collect()
                    }
                    (None, None) => Vec::new(),
                };
            }
        }
        let algebra = LieSuperalgebra::new(raw.generators, full)?;
        let form = raw.form.as_deref().map(|rows| matrix_from_json(rows, n, "form")).transpose()?;
        let form = form.map(QuadraticForm::new).transpose()?;
        let j = raw.j.as_deref().map(|rows| matrix_from_json(rows, n, "J")).transpose()?;
        Ok(AlgebraDefinition { algebra, form, j })
    }

    /// Serializes to the algebra-definition format. Every nonzero bracket is listed.
    pub fn to_json(&self) -> Value {
        let g = &self.algebra;
        let mut brackets = Vec::new();
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let entry = g.bracket(i, j);
                if entry.is_empty() {
                    continue;
                }
                let result: Vec<Value> = entry
                    .iter()
                    .map(|(k, c)| json!([rational_to_json(&c.re), rational_to_json(&c.im), k]))
                    .collect();
                brackets.push(json!({"i": i, "j": j, "result": result}));
            }
        }
        let mut out = json!({
            "generators": g.generators(),
            "brackets": brackets,
        });
        if let Some(f) = &self.form {
            out["form"] = matrix_to_json(f.gram());
        }
        if let Some(j) = &self.j {
            out["J"] = matrix_to_json(j);
        }
        out
    }
}

impl fmt::Display for LieSuperalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.super_dim();
        write!(f, "Lie superalgebra of dimension ({p}|{q})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn gl11_brackets_and_form() {
        let gl = build_gl(1, 1).unwrap();
        let alg = &gl.algebra;
        assert_eq!(alg.dim(), 4);
        let (e11, e22, e12, e21) = (gl.e(0, 0), gl.e(1, 1), gl.e(0, 1), gl.e(1, 0));
        // odd-odd bracket is the anticommutator E12 E21 + E21 E12 = E11 + E22
        let mut expected = vec![(e11, g(1)), (e22, g(1))];
        expected.sort_by_key(|x| x.0);
        assert_eq!(alg.bracket(e12, e21), &expected);
        assert_eq!(gl.form.entry(e12, e21), &g(1));
        assert_eq!(gl.form.entry(e22, e22), &g(-1));
        assert_eq!(gl.form.entry(e21, e12), &g(-1));
    }

    #[test]
    fn gl_root_counts() {
        let gl11 = build_gl(1, 1).unwrap();
        assert_eq!(gl11.roots.count(Parity::Even), 0);
        assert_eq!(gl11.roots.count(Parity::Odd), 2);
        let gl21 = build_gl(2, 1).unwrap();
        assert_eq!(gl21.roots.count(Parity::Even), 2);
        assert_eq!(gl21.roots.count(Parity::Odd), 4);
        let gl22 = build_gl(2, 2).unwrap();
        assert_eq!(gl22.roots.count(Parity::Even), 4);
        assert_eq!(gl22.roots.count(Parity::Odd), 8);
    }

    #[test]
    fn builders_satisfy_axioms() {
        for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let gl = build_gl(m, n).unwrap();
            assert!(gl.algebra.check_jacobi().pass, "gl({m}|{n}) Jacobi");
            assert!(gl.algebra.check_antisymmetry().pass);
            assert!(gl.algebra.check_parity().pass);
            let report = gl.form.check(&gl.algebra).unwrap();
            assert!(report.pass(), "gl({m}|{n}) form: {report:?}");
            assert!(gl.roots.check(&gl.algebra).pass());
        }
    }

    #[test]
    fn abelian_passes_jacobi() {
        let gens = vec![
            Generator { name: "A".into(), parity: Parity::Even },
            Generator { name: "B".into(), parity: Parity::Odd },
        ];
        assert!(LieSuperalgebra::abelian(gens).check_jacobi().pass);
    }

    #[test]
    fn injected_fault_is_caught() {
        let gl = build_gl(1, 1).unwrap();
        let mut alg = gl.algebra.clone();
        let (e11, e22, e12, e21) = (gl.e(0, 0), gl.e(1, 1), gl.e(0, 1), gl.e(1, 0));
        let fake = vec![(e11, g(1)), (e22, g(-1))];
        alg.set_bracket(e12, e21, fake.clone());
        alg.set_bracket(e21, e12, fake);
        let report = alg.check_jacobi();
        assert!(!report.pass);
        let w = report.witness.unwrap();
        let (x, y, z) = w.triple;
        assert!(alg.jacobiator(x, y, z).iter().any(|c| !c.is_zero()));
        let involved = [x, y, z];
        assert!(involved.contains(&e12) || involved.contains(&e21));
    }

    #[test]
    fn theta_is_dual_basis() {
        let gl = build_gl(1, 1).unwrap();
        let theta = gl.form.theta_dual().unwrap();
        let n = gl.algebra.dim();
        for i in 0..n {
            for j in 0..n {
                let b = gl.form.eval(theta.row(i), &gl.algebra.basis_vector(j));
                assert_eq!(b, if i == j { g(1) } else { g(0) });
            }
        }
        let (e22, e12, e21) = (gl.e(1, 1), gl.e(0, 1), gl.e(1, 0));
        let mut minus_e22 = vec![g(0); n];
        minus_e22[e22] = g(-1);
        assert_eq!(theta.row(e22), &minus_e22[..]);
        let mut minus_e21 = vec![g(0); n];
        minus_e21[e21] = g(-1);
        assert_eq!(theta.row(e12), &minus_e21[..]);
    }

    #[test]
    fn theta_identity_for_orthonormal_even() {
        let gram = Matrix::identity(3, &g(1));
        let form = QuadraticForm::new(gram.clone()).unwrap();
        assert_eq!(form.theta_dual().unwrap(), gram);
        let degenerate = QuadraticForm::new(Matrix::filled(2, 2, g(0))).unwrap();
        assert!(matches!(degenerate.theta_dual(), Err(Error::DegenerateForm)));
    }

    #[test]
    fn ad_torus_scalings() {
        let gl = build_gl(1, 1).unwrap();
        let a = TorusElement::new(vec![g(2), g(1)]).unwrap();
        let e12 = gl.e(0, 1);
        let v = gl.algebra.basis_vector(e12);
        let mut expected = vec![g(0); 4];
        expected[e12] = g(4);
        assert_eq!(gl.roots.ad_torus(&a, &v).unwrap(), expected);
        let h = gl.algebra.basis_vector(gl.e(0, 0));
        assert_eq!(gl.roots.ad_torus(&a, &h).unwrap(), h);
        let id = TorusElement::identity(2);
        for i in 0..4 {
            let v = gl.algebra.basis_vector(i);
            assert_eq!(gl.roots.ad_torus(&id, &v).unwrap(), v);
        }
    }

    #[test]
    fn definition_round_trip() {
        let gl = build_gl(2, 1).unwrap();
        let def = AlgebraDefinition { algebra: gl.algebra.clone(), form: Some(gl.form.clone()), j: None };
        let text = def.to_json().to_string();
        let back = AlgebraDefinition::from_json_str(&text).unwrap();
        assert_eq!(back.algebra, gl.algebra);
        assert_eq!(back.form.unwrap(), gl.form);
    }

    #[test]
    fn definition_fills_antisymmetric_partner() {
        let text = r#"{
            "generators": [{"name": "H", "parity": "even"}, {"name": "X", "parity": "odd"}],
            "brackets": [{"i": 0, "j": 1, "result": [[1, 0, 1]]}]
        }"#;
        let def = AlgebraDefinition::from_json_str(text).unwrap();
        assert_eq!(def.algebra.bracket(1, 0), &vec![(1, g(-1))]);
        assert!(def.algebra.check_antisymmetry().pass);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = AlgebraDefinition::from_json_str("{\n  \"generators\": [\n    {\"name\": 3}\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert!(line >= 3),
            other => panic!("unexpected {other:?}"),
        }
        let err = AlgebraDefinition::from_json_str(
            r#"{"generators": [{"name": "A", "parity": "even"}], "brackets": [{"i": 0, "j": 4, "result": []}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidDefinition(_)));
    }
}
