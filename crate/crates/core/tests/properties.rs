mod common;

use std::sync::OnceLock;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superlie::complex::{check_eigenspace_brackets, eigen_split, nijenhuis_report, realify, validate_j, JStructure};
use superlie::pbw::RewriteStrategy;
use superlie::radial::{build_radial, gamma_closed_form, RadialOperator};
use superlie::sampling;
use superlie::*;

fn gl11() -> &'static GlAlgebra {
    static CELL: OnceLock<GlAlgebra> = OnceLock::new();
    CELL.get_or_init(|| build_gl(1, 1).unwrap())
}

fn gl21() -> &'static GlAlgebra {
    static CELL: OnceLock<GlAlgebra> = OnceLock::new();
    CELL.get_or_init(|| build_gl(2, 1).unwrap())
}

fn gl22() -> &'static GlAlgebra {
    static CELL: OnceLock<GlAlgebra> = OnceLock::new();
    CELL.get_or_init(|| build_gl(2, 2).unwrap())
}

fn radial11() -> &'static RadialOperator {
    static CELL: OnceLock<RadialOperator> = OnceLock::new();
    CELL.get_or_init(|| build_radial(&gl11().roots, &gl11().form).unwrap())
}

fn word(dim: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..dim, 1..=max)
}

fn pbw_element(dim: usize, max_degree: usize) -> impl Strategy<Value = Vec<(Vec<usize>, GaussianRational)>> {
    proptest::collection::vec((proptest::collection::vec(0..dim, 0..=max_degree), nonzero_gaussian()), 1..=2)
}

fn build_element(env: &EnvelopingAlgebra<'_>, parts: &[(Vec<usize>, GaussianRational)]) -> PbwElement {
    parts.iter().fold(PbwElement::zero(), |acc, (w, c)| acc.add(&env.normalize_word(w, c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn derivation_obeys_leibniz(f in torus_rational(2), h in torus_rational(2), i in 0usize..2) {
        let lhs = f.mul(&h).derive(i);
        let rhs = f.derive(i).mul(&h).add(&f.mul(&h.derive(i)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_partials_commute(f in torus_rational(3)) {
        prop_assert_eq!(f.derive(0).derive(2), f.derive(2).derive(0));
        prop_assert_eq!(f.derive(0).derive(1), f.derive(1).derive(0));
    }

    #[test]
    fn derivative_is_already_reduced(f in torus_rational(2), i in 0usize..2) {
        let d = f.derive(i);
        prop_assert_eq!(d.normalized(), d);
    }

    #[test]
    fn canonical_form_is_idempotent(f in torus_rational(2)) {
        let once = f.normalized();
        prop_assert_eq!(once.normalized(), once.clone());
        prop_assert_eq!(once, f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn berezinian_multiplicative_1_1(a in upper_supermatrix(1, 1), b in invertible_supermatrix(1, 1), c in lower_supermatrix(1, 1)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.berezinian().unwrap(), &a.berezinian().unwrap() * &b.berezinian().unwrap());
        let bc = b.mul(&c).unwrap();
        prop_assert_eq!(bc.berezinian().unwrap(), &b.berezinian().unwrap() * &c.berezinian().unwrap());
    }

    #[test]
    fn berezinian_multiplicative_2_1(a in upper_supermatrix(2, 1), b in invertible_supermatrix(2, 1), c in lower_supermatrix(2, 1)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.berezinian().unwrap(), &a.berezinian().unwrap() * &b.berezinian().unwrap());
        let bc = b.mul(&c).unwrap();
        prop_assert_eq!(bc.berezinian().unwrap(), &b.berezinian().unwrap() * &c.berezinian().unwrap());
    }

    #[test]
    fn berezinian_multiplicative_2_2(a in upper_supermatrix(2, 2), b in invertible_supermatrix(2, 2), c in lower_supermatrix(2, 2)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.berezinian().unwrap(), &a.berezinian().unwrap() * &b.berezinian().unwrap());
        let bc = b.mul(&c).unwrap();
        prop_assert_eq!(bc.berezinian().unwrap(), &b.berezinian().unwrap() * &c.berezinian().unwrap());
    }

    #[test]
    fn ad_is_multiplicative(a in torus_element(3), b in torus_element(3)) {
        let gl = gl21();
        for i in 0..gl.algebra.dim() {
            let v = gl.algebra.basis_vector(i);
            let composed = gl.roots.ad_torus(&a, &gl.roots.ad_torus(&b, &v).unwrap()).unwrap();
            prop_assert_eq!(gl.roots.ad_torus(&a.mul(&b), &v).unwrap(), composed);
        }
    }
}

#[test]
fn berezinian_is_not_multiplicative_for_scalar_odd_blocks() {
    let i = GaussianRational::i();
    let a = SuperMatrix::new(1, 1, Matrix::from_rows(vec![vec![g(0), i.clone()], vec![-&i, g(1)]]).unwrap(), g(1)).unwrap();
    let prod = a.mul(&a).unwrap();
    assert_ne!(prod.berezinian().unwrap(), &a.berezinian().unwrap() * &a.berezinian().unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(220))]

    #[test]
    fn rewriting_is_confluent(w in word(9, 5), seed in any::<u64>()) {
        let env = EnvelopingAlgebra::new(&gl21().algebra);
        let one = g(1);
        let reference = env.normalize_word(&w, &one);
        for strategy in [RewriteStrategy::Leftmost, RewriteStrategy::Rightmost, RewriteStrategy::Random(seed)] {
            prop_assert_eq!(env.normalize_by_rewriting(&w, &one, strategy), reference.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn rewriting_is_confluent_gl22(w in word(16, 5), seed in any::<u64>()) {
        let env = EnvelopingAlgebra::new(&gl22().algebra);
        let one = g(1);
        let left = env.normalize_by_rewriting(&w, &one, RewriteStrategy::Leftmost);
        prop_assert_eq!(env.normalize_by_rewriting(&w, &one, RewriteStrategy::Random(seed)), left.clone());
        prop_assert_eq!(env.normalize_word(&w, &one), left);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(110))]

    #[test]
    fn enveloping_product_is_associative(
        x in pbw_element(9, 3),
        y in pbw_element(9, 3),
        z in pbw_element(9, 3),
    ) {
        let env = EnvelopingAlgebra::new(&gl21().algebra);
        let (x, y, z) = (build_element(&env, &x), build_element(&env, &y), build_element(&env, &z));
        prop_assert_eq!(env.multiply(&env.multiply(&x, &y), &z), env.multiply(&x, &env.multiply(&y, &z)));
    }

    #[test]
    fn concatenation_matches_product(w1 in word(9, 4), w2 in word(9, 4)) {
        let env = EnvelopingAlgebra::new(&gl21().algebra);
        let one = g(1);
        let joined: Vec<usize> = w1.iter().chain(&w2).copied().collect();
        let product = env.multiply(&env.normalize_word(&w1, &one), &env.normalize_word(&w2, &one));
        prop_assert_eq!(env.normalize_word(&joined, &one), product);
    }

    #[test]
    fn parity_adds_under_products(w1 in word(9, 3), w2 in word(9, 3)) {
        let gl = gl21();
        let env = EnvelopingAlgebra::new(&gl.algebra);
        let one = g(1);
        let (x, y) = (env.normalize_word(&w1, &one), env.normalize_word(&w2, &one));
        let px = x.parity(&gl.algebra).unwrap();
        let py = y.parity(&gl.algebra).unwrap();
        let xy = env.multiply(&x, &y);
        prop_assert!(xy.is_zero() || xy.parity(&gl.algebra) == Some(px.add(py)));
    }

    #[test]
    fn smash_product_is_associative(seed in any::<u64>()) {
        let gl = gl11();
        let h = SmashAlgebra::new(&gl.algebra, &gl.roots).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = sampling::random_smash_element(&mut rng, &h, 2, 2);
        let v = sampling::random_smash_element(&mut rng, &h, 2, 2);
        let w = sampling::random_smash_element(&mut rng, &h, 2, 2);
        prop_assert_eq!(h.multiply(&h.multiply(&u, &v), &w), h.multiply(&u, &h.multiply(&v, &w)));
    }

    #[test]
    fn antipode_is_involutive_on_group_likes(a in torus_element(3)) {
        let gl = gl21();
        let h = SmashAlgebra::new(&gl.algebra, &gl.roots).unwrap();
        let x = SmashElement::group(a);
        prop_assert_eq!(h.antipode(&h.antipode(&x)), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn hopf_axioms_on_seeded_samples(seed in any::<u64>()) {
        let gl = gl21();
        let h = SmashAlgebra::new(&gl.algebra, &gl.roots).unwrap();
        let report = h.check_hopf_axioms(6, seed);
        prop_assert!(report.pass(), "{:?}", report);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn gamma_matches_berezinian_up_to_global_sign(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (gl, sigma) in [(gl11(), -1), (gl21(), 1)] {
            let h = SmashAlgebra::new(&gl.algebra, &gl.roots).unwrap();
            let a = sampling::random_generic_point(&mut rng, &gl.roots);
            let oracle = h.gamma_via_sdet(&gl.form, &a).unwrap();
            let closed = gamma_closed_form(&gl.roots).eval(a.coords()).unwrap();
            prop_assert_eq!(closed, &oracle * &g(sigma));
        }
    }

    #[test]
    fn jacobian_splits_cartan_from_roots(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gl = gl21();
        let h = SmashAlgebra::new(&gl.algebra, &gl.roots).unwrap();
        let a = sampling::random_torus_element(&mut rng, 3);
        let jac = h.jacobian_at(&gl.form, &a).unwrap();
        prop_assert!(jac.block_b().is_zero() && jac.block_c().is_zero());
        let even = jac.block_a();
        for r in 0..even.rows() {
            for c in 0..even.cols() {
                let cartan_r = r < 3;
                let cartan_c = c < 3;
                if cartan_r != cartan_c || (cartan_r && r != c) {
                    prop_assert!(even[(r, c)] == g(0));
                }
            }
        }
    }

    #[test]
    fn gamma_is_invariant_under_central_shift(a in torus_element(3), s in nonzero_gaussian()) {
        let gamma = gamma_closed_form(&gl21().roots);
        let shifted: Vec<GaussianRational> = a.coords().iter().map(|z| z * &s).collect();
        prop_assert_eq!(gamma.eval(a.coords()), gamma.eval(&shifted));
    }

    #[test]
    fn radial_operator_is_linear(f in laurent(2, 3, 4), h in laurent(2, 3, 4)) {
        let op = radial11();
        let (f, h) = (TorusRational::from_poly(f), TorusRational::from_poly(h));
        prop_assert_eq!(op.apply_c2(&f.add(&h)), op.apply_c2(&f).add(&op.apply_c2(&h)));
    }

    #[test]
    fn radial_operator_kills_constants(c in gaussian()) {
        prop_assert!(radial11().apply_c2(&TorusRational::constant(2, c)).is_zero());
    }

    #[test]
    fn conjugated_rotation_is_integrable(p in matrix(4).prop_filter("invertible", |m| m.det(&g(1)) != g(0))) {
        let gens: Vec<superlie::lie::Generator> = (0..4)
            .map(|i| superlie::lie::Generator { name: format!("V{i}"), parity: Parity::Even })
            .collect();
        let alg = LieSuperalgebra::abelian(gens);
        let mut j0 = Matrix::filled(4, 4, g(0));
        j0[(1, 0)] = g(1);
        j0[(0, 1)] = g(-1);
        j0[(3, 2)] = g(1);
        j0[(2, 3)] = g(-1);
        let pinv = p.inverse(&g(1)).unwrap();
        let j = JStructure::new(p.mul(&j0).unwrap().mul(&pinv).unwrap()).unwrap();
        prop_assert!(validate_j(&alg, &j).unwrap().pass());
        prop_assert!(nijenhuis_report(&alg, &j).unwrap().pass());
        prop_assert!(check_eigenspace_brackets(&alg, &j).unwrap().pass());
        let (plus, minus) = eigen_split(&alg, &j).unwrap();
        prop_assert_eq!((plus.len(), minus.len()), (2, 2));
        let i = GaussianRational::i();
        for v in &plus {
            prop_assert_eq!(j.apply(v), v.iter().map(|c| c * &i).collect::<Vec<_>>());
        }
        for v in &minus {
            prop_assert_eq!(j.apply(v), v.iter().map(|c| -(c * &i)).collect::<Vec<_>>());
        }
    }
}

#[test]
fn j_linear_pairs_have_vanishing_nijenhuis_and_cross_brackets() {
    for gl in [gl11(), gl21()] {
        let (real, j) = realify(&gl.algebra);
        assert!(validate_j(&real, &j).unwrap().pass());
        assert!(nijenhuis_report(&real, &j).unwrap().pass());
        assert!(check_eigenspace_brackets(&real, &j).unwrap().pass());
    }
}
