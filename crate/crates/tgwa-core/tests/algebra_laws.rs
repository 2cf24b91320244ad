//! Randomized exact checks of the algebra laws: degree preservation,
//! degree-zero totality, associativity in the quotient, the adjoint and
//! twist identities of the gradation form, monomial nonvanishing, and
//! agreement between the deterministic reducer and the breadth-first
//! relation-application oracle.

mod common;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tgwa_core::arith::rat_int;
use tgwa_core::cartan::{build_tq, Gcm};
use tgwa_core::oracle::bfs_reduce_degree_zero;
use tgwa_core::poly::Poly;
use tgwa_core::tgw::{word_degree, Algebra, Element, Gen, Letter};

fn random_word(rng: &mut StdRng, rank: usize, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|_| {
            let idx = rng.gen_range(0..rank);
            if rng.gen_bool(0.5) {
                Letter::x(idx)
            } else {
                Letter::y(idx)
            }
        })
        .collect()
}

/// Balanced word: every X_i paired with a Y_i somewhere, then shuffled.
fn random_degree_zero_word(rng: &mut StdRng, rank: usize, half_len: usize) -> Vec<Letter> {
    let mut word = Vec::with_capacity(2 * half_len);
    for _ in 0..half_len {
        let idx = rng.gen_range(0..rank);
        word.push(Letter::x(idx));
        word.push(Letter::y(idx));
    }
    for i in (1..word.len()).rev() {
        let j = rng.gen_range(0..=i);
        word.swap(i, j);
    }
    word
}

fn random_element(rng: &mut StdRng, alg: &Algebra) -> Element {
    let mut acc = Element::zero(alg.rank(), alg.nvars());
    let nterms = rng.gen_range(1..=2);
    for _ in 0..nterms {
        let len = rng.gen_range(0..=2);
        let word = random_word(rng, alg.rank(), len);
        let mut coeff = Poly::constant(alg.nvars(), rat_int(rng.gen_range(-3..=3)));
        if alg.nvars() > 0 && rng.gen_bool(0.5) {
            coeff = &coeff + &Poly::var(alg.nvars(), rng.gen_range(0..alg.nvars()));
        }
        let term = alg.reduce(&coeff, &word).unwrap();
        acc = acc.add(&term);
    }
    acc
}

fn example_algebras() -> Vec<Algebra> {
    vec![
        common::algebra(common::mu_torus()),
        common::algebra(common::shifted_a2()),
        common::algebra(common::sergeev_1u1()),
    ]
}

#[test]
fn reduction_preserves_degree() {
    let mut rng = StdRng::seed_from_u64(101);
    let algebras = example_algebras();
    for case in 0..100 {
        let alg = &algebras[case % algebras.len()];
        let len = rng.gen_range(0..=8);
        let word = random_word(&mut rng, alg.rank(), len);
        let reduced = alg.reduce(&Poly::one(alg.nvars()), &word).unwrap();
        let expected = word_degree(alg.rank(), &word);
        for (w, _) in reduced.terms() {
            assert_eq!(w.degree(alg.rank()), expected);
        }
    }
}

#[test]
fn degree_zero_words_terminate_at_identity() {
    let mut rng = StdRng::seed_from_u64(102);
    let algebras = example_algebras();
    for case in 0..100 {
        let alg = &algebras[case % algebras.len()];
        let half = rng.gen_range(0..=5);
        let word = random_degree_zero_word(&mut rng, alg.rank(), half);
        let reduced = alg.reduce(&Poly::one(alg.nvars()), &word).unwrap();
        for (w, _) in reduced.terms() {
            assert!(w.is_empty(), "residual word {} from {:?}", w, word);
        }
    }
}

#[test]
fn multiplication_is_associative_in_the_quotient() {
    let mut rng = StdRng::seed_from_u64(103);
    let algebras = example_algebras();
    for case in 0..100 {
        let alg = &algebras[case % algebras.len()];
        let a = random_element(&mut rng, alg);
        let b = random_element(&mut rng, alg);
        let c = random_element(&mut rng, alg);
        let left = alg.multiply(&alg.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = alg.multiply(&a, &alg.multiply(&b, &c).unwrap()).unwrap();
        assert!(alg.equal(&left, &right).unwrap());
    }
}

#[test]
fn gradation_form_adjoint_identity() {
    let mut rng = StdRng::seed_from_u64(104);
    let algebras = example_algebras();
    for case in 0..100 {
        let alg = &algebras[case % algebras.len()];
        let a = random_element(&mut rng, alg);
        let b = random_element(&mut rng, alg);
        let c = random_element(&mut rng, alg);
        let lhs = alg.gamma(&a, &alg.multiply(&b, &c).unwrap()).unwrap();
        let rhs = alg.gamma(&alg.multiply(&a, &b).unwrap(), &c).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn gradation_form_twist_identity() {
    let mut rng = StdRng::seed_from_u64(105);
    let algebras = example_algebras();
    for case in 0..100 {
        let alg = &algebras[case % algebras.len()];
        let len = rng.gen_range(0..=4);
        let word = random_word(&mut rng, alg.rank(), len);
        let a = alg.reduce(&Poly::one(alg.nvars()), &word).unwrap();
        let g = word_degree(alg.rank(), &word);
        let neg: Vec<i64> = g.iter().map(|x| -x).collect();
        let opposite = random_word_of_degree(&mut rng, &neg);
        let b = alg.reduce(&Poly::one(alg.nvars()), &opposite).unwrap();
        let lhs = alg.gamma(&a, &b).unwrap();
        let rhs = alg.datum().sigma_apply(&g, &alg.gamma(&b, &a).unwrap());
        assert_eq!(lhs, rhs);
    }
}

fn random_word_of_degree(rng: &mut StdRng, g: &[i64]) -> Vec<Letter> {
    let mut word = Vec::new();
    for (i, &gi) in g.iter().enumerate() {
        for _ in 0..gi.unsigned_abs() {
            word.push(if gi > 0 { Letter::x(i) } else { Letter::y(i) });
        }
    }
    for i in (1..word.len()).rev() {
        let j = rng.gen_range(0..=i);
        word.swap(i, j);
    }
    word
}

#[test]
fn monic_monomials_do_not_vanish() {
    let mut rng = StdRng::seed_from_u64(106);
    let algebras = example_algebras();
    for case in 0..100 {
        let alg = &algebras[case % algebras.len()];
        let len = rng.gen_range(1..=6);
        let word = random_word(&mut rng, alg.rank(), len);
        let e = alg.reduce(&Poly::one(alg.nvars()), &word).unwrap();
        assert!(!alg.is_zero(&e).unwrap(), "monic word {:?} vanished", word);
        // nonzero coefficients keep monomials nonzero
        let mut r = Poly::constant(alg.nvars(), rat_int(rng.gen_range(1..=4)));
        if alg.nvars() > 0 {
            r = &r + &Poly::var(alg.nvars(), 0);
        }
        let re = alg.reduce(&r, &word).unwrap();
        assert!(!alg.is_zero(&re).unwrap());
    }
}

#[test]
fn kernel_degrees_centralize_the_base_ring() {
    use tgwa_core::analysis::kernel_of_sigma;
    let mut rng = StdRng::seed_from_u64(107);
    let mut cases: Vec<Algebra> = vec![common::algebra(common::shifted_a2())];
    cases.push(Algebra::new(build_tq(&Gcm::new(vec![vec![2, -1], vec![-1, 2]]).unwrap(), &rat_int(2)).unwrap()).unwrap());
    cases.push(Algebra::new(build_tq(&Gcm::new(vec![vec![2, 0], vec![0, 2]]).unwrap(), &rat_int(2)).unwrap()).unwrap());
    for alg in &cases {
        let kernel = kernel_of_sigma(alg.datum(), 4).unwrap();
        assert!(kernel.certified);
        for b in kernel.lattice.basis_i64() {
            for w in alg.reduced_monomials_of_degree(&b).unwrap() {
                let e = Element::monomial(alg.rank(), Poly::one(alg.nvars()), w);
                for _ in 0..5 {
                    let mut r = Poly::constant(alg.nvars(), rat_int(rng.gen_range(-3..=3)));
                    for j in 0..alg.nvars() {
                        if rng.gen_bool(0.5) {
                            r = &r * &Poly::var(alg.nvars(), j);
                        }
                    }
                    let relem = alg.ring_element(&r);
                    let comm = alg.commutator(&e, &relem).unwrap();
                    assert!(alg.is_zero(&comm).unwrap());
                }
            }
        }
    }
}

#[test]
fn reducer_agrees_with_breadth_first_oracle() {
    let mut rng = StdRng::seed_from_u64(108);
    let mut algebras = example_algebras();
    // a rank-3 case as well
    algebras.push(
        Algebra::new(
            build_tq(
                &Gcm::new(vec![vec![2, -1, 0], vec![-1, 2, 0], vec![0, 0, 2]]).unwrap(),
                &rat_int(2),
            )
            .unwrap(),
        )
        .unwrap(),
    );
    for case in 0..100 {
        let alg = &algebras[case % algebras.len()];
        let half = rng.gen_range(0..=4);
        let word = random_degree_zero_word(&mut rng, alg.rank(), half);
        let reduced = alg.reduce(&Poly::one(alg.nvars()), &word).unwrap();
        let value = reduced.constant_coefficient();
        let oracle = bfs_reduce_degree_zero(alg.datum(), &Poly::one(alg.nvars()), &word)
            .expect("oracle must reach the identity monomial without conflicts");
        assert_eq!(value, oracle, "strategy disagreement on {:?}", word);
    }
}

#[test]
fn generator_words_left_generate_against_the_form() {
    // γ pairing of X_i against r·Y_i recovers σ-twisted coefficients exactly
    let alg = common::algebra(common::shifted_a2());
    let x1 = alg.generator(Gen::X, 0);
    let r = Poly::var(1, 0);
    let ry1 = Element::monomial(2, r.clone(), tgwa_core::tgw::RedWord { y: vec![0], x: vec![] });
    let pairing = alg.gamma(&x1, &ry1).unwrap();
    let expected = &alg.datum().sigma[0].apply(&r) * &alg.datum().sigma[0].apply(&alg.datum().t[0]);
    assert_eq!(pairing, expected);
}
