//! Seeded random inputs for the property checks.
//!
//! Every randomized routine in the crate draws from `ChaCha8Rng::seed_from_u64(seed)`,
//! so a seed fully determines the sample.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::Rng;

use crate::lie::RootSystem;
use crate::pbw::{EnvelopingAlgebra, PbwElement};
use crate::scalar::GaussianRational;
use crate::smash::{SmashAlgebra, SmashElement, TorusElement};

/// Small rational `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> GaussianRational {
    GaussianRational::ratio(rng.random_range(-bound..=bound), rng.random_range(1..=bound))
}

/// Gaussian rational with small parts; purely real about half the time.
pub fn random_gaussian<R: Rng>(rng: &mut R, bound: i64) -> GaussianRational {
    let re = random_rational(rng, bound);
    if rng.random_bool(0.5) {
        re
    } else {
        &re + &(&random_rational(rng, bound) * &GaussianRational::i())
    }
}

/// Nonzero Gaussian rational.
pub fn random_nonzero<R: Rng>(rng: &mut R, bound: i64) -> GaussianRational {
    loop {
        let z = random_gaussian(rng, bound);
        if !z.is_zero() {
            return z;
        }
    }
}

pub fn random_torus_element<R: Rng>(rng: &mut R, rank: usize) -> TorusElement {
    TorusElement::new((0..rank).map(|_| random_nonzero(rng, 4)).collect()).expect("nonzero coordinates")
}

/// `true` when no root acts by the eigenvalue 1 under `Ad(a)`.
pub fn is_generic(rs: &RootSystem, a: &TorusElement) -> bool {
    rs.roots().iter().all(|r| rs.ad_scalar(a, r.vector).map(|s| s != GaussianRational::from_int(1)).unwrap_or(false))
}

/// Torus point with no root eigenvalue equal to 1.
pub fn random_generic_point<R: Rng>(rng: &mut R, rs: &RootSystem) -> TorusElement {
    loop {
        let a = random_torus_element(rng, rs.rank());
        if is_generic(rs, &a) {
            return a;
        }
    }
}

/// Uniformly random word of length `1..=max_degree`.
pub fn random_word<R: Rng>(rng: &mut R, dim: usize, max_degree: usize) -> Vec<usize> {
    let len = rng.random_range(1..=max_degree.max(1));
    (0..len).map(|_| rng.random_range(0..dim)).collect()
}

/// Sum of up to `max_terms` normalized random words with random coefficients.
pub fn random_pbw_element<R: Rng>(
    rng: &mut R,
    env: &EnvelopingAlgebra<'_>,
    max_terms: usize,
    max_degree: usize,
) -> PbwElement {
    let dim = env.algebra().dim();
    let mut out = PbwElement::zero();
    for _ in 0..rng.random_range(1..=max_terms.max(1)) {
        let len = rng.random_range(0..=max_degree);
        let word: Vec<usize> = (0..len).map(|_| rng.random_range(0..dim)).collect();
        out = out.add(&env.normalize_word(&word, &random_nonzero(rng, 3)));
    }
    out
}

/// Sum of up to `max_terms` elements `g # y` with random torus points and
/// PBW parts of degree at most `max_degree`.
pub fn random_smash_element<R: Rng>(
    rng: &mut R,
    h: &SmashAlgebra<'_>,
    max_terms: usize,
    max_degree: usize,
) -> SmashElement {
    let mut out = SmashElement::zero();
    for _ in 0..rng.random_range(1..=max_terms.max(1)) {
        let g = random_torus_element(rng, h.rank());
        let y = random_pbw_element(rng, h.enveloping(), 1, max_degree);
        out = out.add(&SmashElement::from_pbw(&g, &y));
    }
    out
}

/// `count` distinct integer weights with entries in `-bound..=bound`.
pub fn random_weights<R: Rng>(rng: &mut R, rank: usize, count: usize, bound: i32) -> Vec<Vec<i32>> {
    let capacity = (2 * bound as usize + 1).saturating_pow(rank as u32);
    assert!(count <= capacity, "not enough distinct weights in range");
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < count {
        let w: Vec<i32> = (0..rank).map(|_| rng.random_range(-bound..=bound)).collect();
        if seen.insert(w.clone()) {
            out.push(w);
        }
    }
    out
}
