#![allow(dead_code)]

use proptest::prelude::*;
use superlie::{GaussianRational, LaurentPoly, Matrix, SuperMatrix, TorusElement, TorusRational};

pub fn g(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

pub fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -3i64..=3, 1i64..=3).prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
}

pub fn nonzero_gaussian() -> impl Strategy<Value = GaussianRational> {
    gaussian().prop_filter("nonzero", |z| *z != g(0))
}

pub fn laurent(t: usize, max_exp: i32, terms: usize) -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((proptest::collection::vec(-max_exp..=max_exp, t), gaussian()), 1..=terms)
        .prop_map(move |ts| LaurentPoly::from_terms(t, ts))
}

pub fn torus_rational(t: usize) -> impl Strategy<Value = TorusRational> {
    (laurent(t, 2, 3), laurent(t, 2, 2).prop_filter("nonzero", |p| !p.is_zero()))
        .prop_map(|(n, d)| TorusRational::new(n, d).expect("nonzero denominator"))
}

pub fn torus_element(t: usize) -> impl Strategy<Value = TorusElement> {
    proptest::collection::vec(nonzero_gaussian(), t).prop_map(|c| TorusElement::new(c).expect("nonzero"))
}

pub fn matrix(n: usize) -> impl Strategy<Value = Matrix<GaussianRational>> {
    proptest::collection::vec(proptest::collection::vec(gaussian(), n), n)
        .prop_map(|rows| Matrix::from_rows(rows).expect("square"))
}

/// Supermatrix of shape `(p|q)` with invertible even and odd diagonal blocks.
pub fn invertible_supermatrix(p: usize, q: usize) -> impl Strategy<Value = SuperMatrix<GaussianRational>> {
    matrix(p + q)
        .prop_map(move |m| SuperMatrix::new(p, q, m, g(1)).expect("shape"))
        .prop_filter("invertible", |m| {
            m.block_d().det(&g(1)) != g(0) && m.berezinian().map(|b| b != g(0)).unwrap_or(false)
        })
}

/// Invertible supermatrix of shape `(p|q)` whose lower-left block vanishes.
pub fn upper_supermatrix(p: usize, q: usize) -> impl Strategy<Value = SuperMatrix<GaussianRational>> {
    invertible_supermatrix(p, q).prop_map(move |m| {
        let c = Matrix::filled(q, p, g(0));
        SuperMatrix::from_blocks(m.block_a(), m.block_b(), c, m.block_d(), g(1)).expect("shape")
    })
}

/// Invertible supermatrix of shape `(p|q)` whose upper-right block vanishes.
pub fn lower_supermatrix(p: usize, q: usize) -> impl Strategy<Value = SuperMatrix<GaussianRational>> {
    invertible_supermatrix(p, q).prop_map(move |m| {
        let b = Matrix::filled(p, q, g(0));
        SuperMatrix::from_blocks(m.block_a(), b, m.block_c(), m.block_d(), g(1)).expect("shape")
    })
}
