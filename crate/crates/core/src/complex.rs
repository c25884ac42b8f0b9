//! Almost complex structures on Lie superalgebras and algebra-level
//! complexification.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{Generator, JacobiReport, LieSuperalgebra, Parity, SparseVec};
use crate::scalar::GaussianRational;
use crate::supermatrix::Matrix;

type Vector = Vec<GaussianRational>;

/// Even linear map `J` on the basis; column `j` holds the coordinates of `J(V_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct JStructure {
    matrix: Matrix<GaussianRational>,
}

impl JStructure {
    pub fn new(matrix: Matrix<GaussianRational>) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch("J must be square".into()));
        }
        Ok(JStructure { matrix })
    }

    /// Builds `J` from the images of the basis vectors.
    pub fn from_images(images: Vec<Vector>) -> Result<Self> {
        let n = images.len();
        if images.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch("J image has wrong length".into()));
        }
        let rows = (0..n).map(|r| images.iter().map(|col| col[r].clone()).collect()).collect();
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn matrix(&self) -> &Matrix<GaussianRational> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[GaussianRational]) -> Vector {
        let n = self.dim();
        (0..n)
            .map(|r| {
                let mut s = GaussianRational::zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        s += &(&self.matrix[(r, c)] * x);
                    }
                }
                s
            })
            .collect()
    }

    fn image(&self, j: usize) -> Vector {
        (0..self.dim()).map(|r| self.matrix[(r, j)].clone()).collect()
    }

    pub fn squares_to_minus_identity(&self) -> bool {
        (0..self.dim()).all(|j| {
            let v = self.apply(&self.image(j));
            v.iter().enumerate().all(|(r, x)| if r == j { *x == -GaussianRational::one() } else { x.is_zero() })
        })
    }

    /// `J` never mixes even and odd generators.
    pub fn preserves_parity(&self, g: &LieSuperalgebra) -> bool {
        let n = self.dim();
        (0..n).all(|r| (0..n).all(|c| self.matrix[(r, c)].is_zero() || g.parity(r) == g.parity(c)))
    }
}

/// Result of [`validate_j`].
#[derive(Clone, Debug, PartialEq)]
pub struct JReport {
    pub square_is_minus_identity: bool,
    pub parity_preserving: bool,
    /// First basis pair where `[JX, Y] = J[X, Y] = [X, JY]` fails.
    pub linearity_witness: Option<(usize, usize)>,
}

impl JReport {
    pub fn pass(&self) -> bool {
        self.square_is_minus_identity && self.parity_preserving && self.linearity_witness.is_none()
    }
}

/// Checks `J² = -Id`, parity preservation and J-linearity of the bracket on all basis pairs.
pub fn validate_j(g: &LieSuperalgebra, j: &JStructure) -> Result<JReport> {
    check_dim(g, j)?;
    let n = g.dim();
    let mut linearity_witness = None;
    'outer: for x in 0..n {
        for y in 0..n {
            let (vx, vy) = (g.basis_vector(x), g.basis_vector(y));
            let mid = j.apply(&g.bracket_vectors(&vx, &vy));
            let left = g.bracket_vectors(&j.apply(&vx), &vy);
            let right = g.bracket_vectors(&vx, &j.apply(&vy));
            if left != mid || right != mid {
                linearity_witness = Some((x, y));
                break 'outer;
            }
        }
    }
    Ok(JReport {
        square_is_minus_identity: j.squares_to_minus_identity(),
        parity_preserving: j.preserves_parity(g),
        linearity_witness,
    })
}

fn check_dim(g: &LieSuperalgebra, j: &JStructure) -> Result<()> {
    if j.dim() != g.dim() {
        return Err(Error::DimensionMismatch(format!("J is {0}x{0} but the algebra has dimension {1}", j.dim(), g.dim())));
    }
    Ok(())
}

/// `N(X, Y) = [X, Y] + J([JX, Y] + [X, JY]) - [JX, JY]` on basis vectors.
pub fn nijenhuis(g: &LieSuperalgebra, j: &JStructure, x: usize, y: usize) -> Vector {
    let (vx, vy) = (g.basis_vector(x), g.basis_vector(y));
    let (jx, jy) = (j.apply(&vx), j.apply(&vy));
    let plain = g.bracket_vectors(&vx, &vy);
    let mixed: Vector = g
        .bracket_vectors(&jx, &vy)
        .iter()
        .zip(g.bracket_vectors(&vx, &jy))
        .map(|(a, b)| a + &b)
        .collect();
    let twisted = j.apply(&mixed);
    let both = g.bracket_vectors(&jx, &jy);
    (0..g.dim()).map(|k| &(&plain[k] + &twisted[k]) - &both[k]).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct NijenhuisReport {
    pub pairs_checked: usize,
    pub witness: Option<(usize, usize, Vector)>,
}

impl NijenhuisReport {
    pub fn pass(&self) -> bool {
        self.witness.is_none()
    }
}

/// Evaluates the Nijenhuis tensor on every basis pair.
pub fn nijenhuis_report(g: &LieSuperalgebra, j: &JStructure) -> Result<NijenhuisReport> {
    check_dim(g, j)?;
    let n = g.dim();
    let mut checked = 0;
    for x in 0..n {
        for y in 0..n {
            checked += 1;
            let v = nijenhuis(g, j, x, y);
            if v.iter().any(|c| !c.is_zero()) {
                return Ok(NijenhuisReport { pairs_checked: checked, witness: Some((x, y, v)) });
            }
        }
    }
    Ok(NijenhuisReport { pairs_checked: checked, witness: None })
}

/// Linearly independent subset spanning the same space, by exact elimination.
fn independent_subset(vectors: Vec<Vector>) -> Vec<Vector> {
    let mut reduced: Vec<(usize, Vector)> = Vec::new();
    let mut kept = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for (pivot, r) in &reduced {
            if !w[*pivot].is_zero() {
                let f = w[*pivot].clone();
                for (a, b) in w.iter_mut().zip(r) {
                    *a = &*a - &(&f * b);
                }
            }
        }
        if let Some(p) = w.iter().position(|c| !c.is_zero()) {
            let inv = w[p].inv().expect("nonzero pivot");
            let w: Vector = w.iter().map(|c| c * &inv).collect();
            for (_, r) in reduced.iter_mut() {
                if !r[p].is_zero() {
                    let f = r[p].clone();
                    for (a, b) in r.iter_mut().zip(&w) {
                        *a = &*a - &(&f * b);
                    }
                }
            }
            reduced.push((p, w));
            kept.push(v);
        }
    }
    kept
}

/// Bases of the `+i` and `-i` eigenspaces of `J` on the complexified algebra,
/// drawn from `V_k - iJV_k` and `V_k + iJV_k` respectively.
pub fn eigen_split(g: &LieSuperalgebra, j: &JStructure) -> Result<(Vec<Vector>, Vec<Vector>)> {
    check_dim(g, j)?;
    if !j.squares_to_minus_identity() {
        return Err(Error::NotAlmostComplex);
    }
    let i = GaussianRational::i();
    let candidates = |s: &GaussianRational| -> Vec<Vector> {
        (0..g.dim())
            .map(|k| {
                let v = g.basis_vector(k);
                let jv = j.apply(&v);
                v.iter().zip(&jv).map(|(a, b)| a + &(s * b)).collect()
            })
            .collect()
    };
    let plus = independent_subset(candidates(&-i.clone()));
    let minus = independent_subset(candidates(&i));
    Ok((plus, minus))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenBracketReport {
    pub pairs_checked: usize,
    /// Indices into the two eigenbases of the first nonvanishing bracket.
    pub witness: Option<(usize, usize, Vector)>,
    /// Whether the bracket is J-linear, which forces every cross bracket to vanish.
    pub j_linear: bool,
}

impl EigenBracketReport {
    pub fn pass(&self) -> bool {
        self.witness.is_none()
    }
}

/// Evaluates `[g^{(1,0)}, g^{(0,1)}]` on the eigenbases.
pub fn check_eigenspace_brackets(g: &LieSuperalgebra, j: &JStructure) -> Result<EigenBracketReport> {
    let (plus, minus) = eigen_split(g, j)?;
    let j_linear = validate_j(g, j)?.linearity_witness.is_none();
    let mut checked = 0;
    for (a, u) in plus.iter().enumerate() {
        for (b, v) in minus.iter().enumerate() {
            checked += 1;
            let w = g.bracket_vectors(u, v);
            if w.iter().any(|c| !c.is_zero()) {
                return Ok(EigenBracketReport { pairs_checked: checked, witness: Some((a, b, w)), j_linear });
            }
        }
    }
    Ok(EigenBracketReport { pairs_checked: checked, witness: None, j_linear })
}

/// First pair `(row, column)` where `J` maps a generator of one weight into a
/// generator of a different weight. `weights[k]` is `None` for generators
/// outside every weight space.
pub fn weight_space_witness(j: &JStructure, weights: &[Option<Vec<i32>>]) -> Option<(usize, usize)> {
    let n = j.dim();
    (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .find(|&(r, c)| !j.matrix()[(r, c)].is_zero() && weights[r] != weights[c])
}

/// Restriction of scalars: basis `V_k` followed by `iV_k`, with `J` the
/// multiplication by `i`.
pub fn realify(g: &LieSuperalgebra) -> (LieSuperalgebra, JStructure) {
    let n = g.dim();
    let mut generators: Vec<Generator> = g.generators().to_vec();
    generators.extend(g.generators().iter().map(|x| Generator { name: format!("i{}", x.name), parity: x.parity }));
    let unit = |k: usize| -> GaussianRational { if k < n { GaussianRational::one() } else { GaussianRational::i() } };
    let mut table = vec![vec![SparseVec::new(); 2 * n]; 2 * n];
    for a in 0..2 * n {
        for b in 0..2 * n {
            let scale = &unit(a) * &unit(b);
            let mut entry = SparseVec::new();
            for (k, c) in g.bracket(a % n, b % n) {
                let z = &scale * c;
                if !z.re.is_zero() {
                    entry.push((*k, GaussianRational::from(z.re.clone())));
                }
                if !z.im.is_zero() {
                    entry.push((k + n, GaussianRational::from(z.im.clone())));
                }
            }
            table[a][b] = entry;
        }
    }
    let real = LieSuperalgebra::new(generators, table).expect("well-formed table");
    let mut images = Vec::with_capacity(2 * n);
    for k in 0..2 * n {
        let mut v = vec![GaussianRational::zero(); 2 * n];
        if k < n {
            v[k + n] = GaussianRational::one();
        } else {
            v[k - n] = -GaussianRational::one();
        }
        images.push(v);
    }
    (real, JStructure::from_images(images).expect("square"))
}

/// `(g₀ ⊗ ℂ)/p^ℂ ⊕ (g₁ ⊗ ℂ)`.
#[derive(Clone, Debug)]
pub struct ComplexifiedPair {
    pub base: LieSuperalgebra,
    pub quotient_ideal: Vec<String>,
    pub jacobi: JacobiReport,
}

/// Scalar extension of a real algebra followed by the quotient by the even
/// ideal spanned by the generators `ideal`.
pub fn complexify(g: &LieSuperalgebra, ideal: &[usize]) -> Result<ComplexifiedPair> {
    if !g.is_real() {
        return Err(Error::NonRealStructure);
    }
    let names = |idx: &[usize]| idx.iter().map(|&i| g.name(i).to_string()).collect::<Vec<_>>();
    if let Some(&bad) = ideal.iter().find(|&&i| i >= g.dim()) {
        return Err(Error::InvalidDefinition(format!("ideal generator index {bad} out of range")));
    }
    if ideal.iter().any(|&i| g.parity(i) != Parity::Even) {
        return Err(Error::NotAnIdeal(names(ideal)));
    }
    for x in 0..g.dim() {
        for &p in ideal {
            if g.bracket(x, p).iter().any(|(k, _)| !ideal.contains(k)) {
                return Err(Error::NotAnIdeal(names(ideal)));
            }
        }
    }
    let keep: Vec<usize> = (0..g.dim()).filter(|i| !ideal.contains(i)).collect();
    let position = |k: usize| keep.iter().position(|&x| x == k);
    let generators: Vec<Generator> = keep.iter().map(|&i| g.generators()[i].clone()).collect();
    let table: Vec<Vec<SparseVec>> = keep
        .iter()
        .map(|&a| {
            keep.iter()
                .map(|&b| g.bracket(a, b).iter().filter_map(|(k, c)| position(*k).map(|p| (p, c.clone()))).collect())
                .collect()
        })
        .collect();
    let base = LieSuperalgebra::new(generators, table)?;
    let jacobi = base.check_jacobi();
    Ok(ComplexifiedPair { base, quotient_ideal: names(ideal), jacobi })
}
