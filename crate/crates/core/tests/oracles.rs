mod common;

use common::*;
use superlie::pbw::project_to_cartan;
use superlie::radial::{build_radial, cartan_leading_in_weights, extract_p, gamma_field_ratio};
use superlie::*;

type Dense = Vec<Vec<GaussianRational>>;

fn elementary(size: usize, a: usize, b: usize) -> Dense {
    let mut m = vec![vec![g(0); size]; size];
    m[a][b] = g(1);
    m
}

fn matmul(x: &Dense, y: &Dense) -> Dense {
    let n = x.len();
    let mut out = vec![vec![g(0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if x[i][k] == g(0) {
                continue;
            }
            for j in 0..n {
                out[i][j] = &out[i][j] + &(&x[i][k] * &y[k][j]);
            }
        }
    }
    out
}

fn row_sign(gl: &GlAlgebra, a: usize) -> i64 {
    if gl.row_parity(a) == Parity::Even {
        1
    } else {
        -1
    }
}

fn matrix_oracle(m: usize, n: usize) {
    let gl = build_gl(m, n).unwrap();
    let size = m + n;
    let pairs: Vec<(usize, usize)> = (0..size).flat_map(|a| (0..size).map(move |b| (a, b))).collect();
    for &(a, b) in &pairs {
        for &(c, d) in &pairs {
            let (x, y) = (elementary(size, a, b), elementary(size, c, d));
            let (i, j) = (gl.e(a, b), gl.e(c, d));
            let sign = g(gl.algebra.parity(i).koszul(gl.algebra.parity(j)));
            let xy = matmul(&x, &y);
            let yx = matmul(&y, &x);
            let mut expected = vec![g(0); gl.algebra.dim()];
            for r in 0..size {
                for s in 0..size {
                    let v = &xy[r][s] - &(&sign * &yx[r][s]);
                    if v != g(0) {
                        expected[gl.e(r, s)] = v;
                    }
                }
            }
            let got = gl.algebra.bracket_vectors(&gl.algebra.basis_vector(i), &gl.algebra.basis_vector(j));
            assert_eq!(got, expected, "[E{a}{b}, E{c}{d}] in gl({m}|{n})");
            let str_xy = (0..size).fold(g(0), |acc, r| &acc + &(&g(row_sign(&gl, r)) * &xy[r][r]));
            assert_eq!(gl.form.entry(i, j), &str_xy, "str(E{a}{b} E{c}{d}) in gl({m}|{n})");
        }
    }
}

#[test]
fn gl_brackets_match_matrix_supercommutators() {
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
        matrix_oracle(m, n);
    }
}

fn shuffle_coproduct(h: &SmashAlgebra<'_>, x: &TorusElement, word: &[usize]) -> superlie::smash::SmashTensor {
    let alg = h.algebra();
    let k = word.len();
    let mut out = superlie::smash::SmashTensor::zero(2);
    for mask in 0u32..(1 << k) {
        let left: Vec<usize> = (0..k).filter(|&t| mask & (1 << t) != 0).map(|t| word[t]).collect();
        let right: Vec<usize> = (0..k).filter(|&t| mask & (1 << t) == 0).map(|t| word[t]).collect();
        let mut sign = 1;
        for s in 0..k {
            for t in s + 1..k {
                if mask & (1 << s) == 0 && mask & (1 << t) != 0 {
                    sign *= alg.parity(word[s]).koszul(alg.parity(word[t]));
                }
            }
        }
        out.add_term(
            vec![
                (x.clone(), PbwMonomial::from_sorted(left, alg)),
                (x.clone(), PbwMonomial::from_sorted(right, alg)),
            ],
            &GaussianRational::from_int(sign),
        );
    }
    out
}

#[test]
fn coproduct_matches_shuffle_expansion() {
    let gl = build_gl(2, 1).unwrap();
    let h = SmashAlgebra::new(&gl.algebra, &gl.roots).unwrap();
    let x = TorusElement::new(vec![g(2), GaussianRational::from_parts(1, 3, 1, 1), g(-1)]).unwrap();
    let odd: Vec<usize> = (0..gl.algebra.dim()).filter(|&i| gl.algebra.parity(i) == Parity::Odd).collect();
    let even: Vec<usize> = (0..gl.algebra.dim()).filter(|&i| gl.algebra.parity(i) == Parity::Even).collect();
    let mut words = vec![vec![], vec![odd[0]], vec![even[0], even[0]], vec![odd[0], odd[1], odd[2]]];
    words.push(vec![even[0], odd[1], even[3], odd[3]]);
    words.push(vec![odd[0], even[2], even[2], odd[2]]);
    for mut word in words {
        word.sort();
        let u = SmashElement::basis(x.clone(), PbwMonomial::from_sorted(word.clone(), &gl.algebra), g(1));
        let diff = h.coproduct(&u).sub(&shuffle_coproduct(&h, &x, &word));
        assert!(diff.is_zero(), "coproduct of {word:?}");
    }
}

fn lp(terms: &[(&[i32], i64)]) -> TorusRational {
    TorusRational::from_poly(LaurentPoly::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), g(*c)))))
}

#[test]
fn radial_part_on_gl11_matches_hand_expansion() {
    let gl = build_gl(1, 1).unwrap();
    let op = build_radial(&gl.roots, &gl.form).unwrap();
    assert_eq!(op.lambda.coeffs(), &[g(1), g(-1)]);
    assert_eq!(op.eigenvalue_c, g(0));
    // j is a scalar multiple of 1 / (q1/q2 - q2/q1)
    let s = lp(&[(&[1, -1], 1), (&[-1, 1], -1)]);
    assert!(op.j.mul(&s).as_constant().is_some());

    // functions of q1/q2 alone are annihilated
    let x2 = lp(&[(&[2, -2], 1)]);
    assert!(op.apply_c2(&x2).is_zero());

    // Δ(q1²) = q1²(1 - coth(u/2)) with coth(u/2) = (q1/q2 + q2/q1)/(q1/q2 - q2/q1)
    let q1sq = lp(&[(&[2, 0], 1)]);
    let coth = lp(&[(&[1, -1], 1), (&[-1, 1], 1)]).div(&s).unwrap();
    let expected = q1sq.mul(&TorusRational::one(2).sub(&coth));
    assert_eq!(op.apply_c2(&q1sq), expected);
}

fn brute_force_central(env: &EnvelopingAlgebra<'_>, c: &PbwElement) -> bool {
    let alg = env.algebra();
    let cp = c.parity(alg).expect("homogeneous");
    (0..alg.dim()).all(|i| {
        let x = PbwElement::generator(i);
        let sign = g(alg.parity(i).koszul(cp));
        env.multiply(&x, c).sub(&env.multiply(c, &x).scale(&sign)).is_zero()
    })
}

#[test]
fn gelfand_invariants_are_central_up_to_order_three() {
    for (m, n) in [(1, 1), (2, 1), (2, 2)] {
        let gl = build_gl(m, n).unwrap();
        let env = EnvelopingAlgebra::new(&gl.algebra);
        for k in 1..=3 {
            let c = env.gelfand_invariant(&gl, k).unwrap();
            assert!(!c.is_zero());
            assert!(brute_force_central(&env, &c), "k = {k} on gl({m}|{n})");
        }
        // the order-two invariant is exactly the quadratic Casimir
        assert_eq!(env.gelfand_invariant(&gl, 2).unwrap(), env.casimir2(&gl.form).unwrap());
    }
}

#[test]
fn casimir_is_central_on_gl22() {
    let gl = build_gl(2, 2).unwrap();
    let env = EnvelopingAlgebra::new(&gl.algebra);
    let c = env.casimir2(&gl.form).unwrap();
    assert!(brute_force_central(&env, &c));
    assert!(env.is_central(&c).pass);
}

#[test]
fn even_singular_points_give_vanishing_gamma() {
    let gl = build_gl(2, 1).unwrap();
    let h = SmashAlgebra::new(&gl.algebra, &gl.roots).unwrap();
    for z in [[2, 2, 3], [3, -3, 5], [-1, 1, 2]] {
        let a = TorusElement::new(z.iter().map(|&c| g(c)).collect()).unwrap();
        assert_eq!(h.gamma_via_sdet(&gl.form, &a).unwrap(), g(0), "{z:?}");
    }
}

#[test]
fn gl21_fit_matches_casimir_leading_term() {
    let gl = build_gl(2, 1).unwrap();
    let op = build_radial(&gl.roots, &gl.form).unwrap();
    let weights: Vec<Vec<i32>> = vec![
        vec![0, 0, 0],
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![2, 0, 0],
        vec![0, 2, 0],
        vec![0, 0, 2],
        vec![1, 1, 0],
        vec![1, 0, 1],
        vec![0, 1, 1],
        vec![-1, 2, 1],
        vec![3, -1, 2],
    ];
    let fit = extract_p(&op, &weights).unwrap();
    assert!(fit.consistent);
    let env = EnvelopingAlgebra::new(&gl.algebra);
    let c2 = env.casimir2(&gl.form).unwrap();
    let expected = cartan_leading_in_weights(&project_to_cartan(&c2, &gl.roots));
    assert_eq!(fit.polynomial.leading_part(), expected);
}

#[test]
fn gl21_gamma_equals_berezinian_field_identity() {
    let gl = build_gl(2, 1).unwrap();
    let h = SmashAlgebra::new(&gl.algebra, &gl.roots).unwrap();
    assert_eq!(gamma_field_ratio(&h, &gl.form).unwrap(), Some(g(1)));
}
