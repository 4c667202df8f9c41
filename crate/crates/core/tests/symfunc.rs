use kops::functor::{apply_to_hom, basis_elements, leaf_alphabet, FunctorSpec};
use kops::linalg::IntMatrix;
use kops::random::rng;
use kops::symfunc::*;
use kops::Error;
use num_bigint::BigInt;

fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// `Σ c · e^m` with `m` an exponent vector over `e_1, e_2, ...`.
fn ebasis(terms: &[(&[u32], i64)]) -> Poly {
    let mut p = Poly::default();
    for (m, c) in terms {
        p.add_term(m.to_vec(), BigInt::from(*c));
    }
    p
}

#[test]
fn expanding_power_sums() {
    let p2 = power_sum(3, 2);
    let g = expand_in_e(&p2, 3).unwrap();
    assert_eq!(g, ebasis(&[(&[2], 1), (&[0, 1], -2)]));
    // evaluate e_1^2 - 2 e_2 and p_2 at points, with e_i computed by hand
    for (pt, e1, e2) in [([1, 1, 0], 2, 1), ([1, 2, 3], 6, 11)] {
        let lhs = p2.eval(&big(&pt));
        assert_eq!(lhs, BigInt::from(e1 * e1 - 2 * e2));
        assert_eq!(g.eval(&big(&[e1, e2])), lhs);
    }
    assert_eq!(expand_in_e(&elementary(3, 2), 3).unwrap(), ebasis(&[(&[0, 1], 1)]));
    assert!(expand_in_e(&Poly::default(), 3).unwrap().is_empty());
}

#[test]
fn expansion_errors() {
    let x1 = Poly::var(0);
    assert!(matches!(expand_in_e(&x1, 2), Err(Error::NotSymmetric)));
    assert!(matches!(expand_in_e(&power_sum(2, 3), 2), Err(Error::InsufficientVariables { .. })));
}

#[test]
fn expansion_round_trips() {
    for d in 1..=4 {
        for k in 1..=d {
            let h = complete(d, k);
            let g = expand_in_e(&h, d).unwrap();
            assert_eq!(e_to_sym(&g, d), h);
            assert_eq!(e_weighted_degree(&g), k as u32);
        }
    }
}

#[test]
fn universal_p1_and_p2() {
    // X1 Y1 with X in variable 0 and Y in variable 1
    assert_eq!(universal_pr(1), ebasis(&[(&[1, 1], 1)]));
    // variables X1, X2, Y1, Y2
    let expected = ebasis(&[(&[2, 0, 0, 1], 1), (&[0, 1, 2, 0], 1), (&[0, 1, 0, 1], -2)]);
    assert_eq!(universal_pr(2), expected);
}

#[test]
fn p2_against_direct_expansion() {
    // e_2 of the four products x_i y_j, in four variables x1 x2 y1 y2
    let xs = [Poly::var(0), Poly::var(1)];
    let ys = [Poly::var(2), Poly::var(3)];
    let prods: Vec<Poly> = xs.iter().flat_map(|x| ys.iter().map(move |y| x * y)).collect();
    let mut e2 = Poly::default();
    for i in 0..4 {
        for j in i + 1..4 {
            e2 = &e2 + &(&prods[i] * &prods[j]);
        }
    }
    let ex1 = &xs[0] + &xs[1];
    let ex2 = &xs[0] * &xs[1];
    let ey1 = &ys[0] + &ys[1];
    let ey2 = &ys[0] * &ys[1];
    assert_eq!(universal_pr(2).substitute(&[ex1, ex2, ey1, ey2]), e2);
}

#[test]
fn substitution_identity_and_lambda_t() {
    for r in 1..=4 {
        assert!(pr_substitution_identity(r), "P_{r}(1,0,..,Y) != Y_r");
        assert!(lambda_t_multiplicative(r), "λ_t fails at r = {r}");
    }
}

#[test]
fn p_rs_values() {
    for s in 1..=4 {
        let mut xs = vec![0u32; s];
        xs[s - 1] = 1;
        assert_eq!(universal_prs(1, s), ebasis(&[(&xs, 1)]));
    }
    assert_eq!(universal_prs(2, 2), ebasis(&[(&[1, 0, 1], 1), (&[0, 0, 0, 1], -1)]));
    for r in 1..=3 {
        for s in 1..=3 {
            let p = universal_prs(r, s);
            let w: Vec<u32> = (1..=(r * s) as u32).collect();
            assert!(p.is_weighted_homogeneous(&w));
            assert_eq!(e_weighted_degree(&p), (r * s) as u32);
        }
    }
}

#[test]
fn e2_of_e2_by_products() {
    let n = 4;
    let mut products = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            products.push(&Poly::var(i) * &Poly::var(j));
        }
    }
    assert_eq!(products.len(), 6);
    let mut direct = Poly::default();
    for a in 0..6 {
        for b in a + 1..6 {
            direct = &direct + &(&products[a] * &products[b]);
        }
    }
    let e2 = ebasis(&[(&[0, 1], 1)]);
    assert_eq!(plethysm_e(&e2, &elementary(n, 2), n).unwrap(), direct);
    let e1e3_minus_e4 = &(&elementary(n, 1) * &elementary(n, 3)) - &elementary(n, 4);
    assert_eq!(direct, e1e3_minus_e4);
    // e_2[e_1] = e_2 and e_1[f] = f
    assert_eq!(plethysm_e(&e2, &elementary(2, 1), 2).unwrap(), elementary(2, 2));
    let f = power_sum(3, 2);
    assert_eq!(plethysm_e(&ebasis(&[(&[1], 1)]), &f, 3).unwrap(), f);
    assert!(matches!(plethysm_e(&e2, &elementary(3, 2), 3), Err(Error::InsufficientVariables { .. })));
}

#[test]
fn characters() {
    assert_eq!(char_functor(&FunctorSpec::Lambda(2), 3), elementary(3, 2));
    assert_eq!(char_functor(&FunctorSpec::Sym(3), 3), complete(3, 3));
    assert_eq!(char_functor(&FunctorSpec::Lambda(0), 3), Poly::constant(1));
    let ll = FunctorSpec::compose(FunctorSpec::Lambda(2), FunctorSpec::Lambda(2));
    let e2 = ebasis(&[(&[0, 1], 1)]);
    assert_eq!(char_functor(&ll, 4), plethysm_e(&e2, &elementary(4, 2), 4).unwrap());
    let t = FunctorSpec::tensor(FunctorSpec::Lambda(2), FunctorSpec::Sym(1));
    assert_eq!(char_functor(&t, 3), &elementary(3, 2) * &complete(3, 1));
}

#[test]
fn axiom_three_on_characters() {
    for (r, s) in [(1, 3), (2, 1), (2, 2), (2, 3), (3, 2)] {
        assert!(verify_axiom3_char(r, s), "({r},{s})");
    }
}

#[test]
fn e_monomials_are_independent() {
    for d in 1..=5 {
        assert!(e_monomials_independent(d, d));
    }
    assert_eq!(partitions(5).len(), 7);
    // too few variables: e_2 vanishes in one variable
    assert!(!e_monomials_independent(2, 1));
}

#[test]
fn universal_lambda_ring() {
    let report = lambda_universal_check(4);
    assert!(report.all_passed(), "{:?}", report.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
    for axiom in 0..=3 {
        let (ok, total) = report.passed_for(axiom);
        assert!(total > 0 && ok == total, "axiom {axiom}: {ok}/{total}");
    }
    assert!(report.checks.iter().any(|c| c.label == "λ^2(s1 · s1) = P_2"));
    assert!(report.checks.iter().any(|c| c.label == "λ^2(λ^2(s1)) = P_{2,2}"));
}

#[test]
fn schur_algebra_ranks_and_laws() {
    let a = SchurAlgebra::new(2, 2);
    assert_eq!(a.rank(), 10);
    assert_eq!(SchurAlgebra::expected_rank(2, 2), 10);
    assert_eq!(SchurAlgebra::new(2, 3).rank(), SchurAlgebra::expected_rank(2, 3));
    let trivial = SchurAlgebra::new(1, 3);
    assert_eq!(trivial.rank(), 1);
    assert_eq!(trivial.unit(), trivial.basis_element(0));
    let mut r = rng(7);
    assert!(a.check_axioms(&mut r, 40));
    assert!(SchurAlgebra::new(2, 3).check_axioms(&mut r, 20));
    // Γ^d is multiplicative
    let m = IntMatrix::from_rows(&[[1, 2], [3, -1]]);
    let k = IntMatrix::from_rows(&[[0, 1], [5, 2]]);
    assert_eq!(a.mul(&a.gamma(&m), &a.gamma(&k)), a.gamma(&(&m * &k)));
}

#[test]
fn schur_modules() {
    let mut r = rng(11);
    let l2 = truncate_to_schur_module(&FunctorSpec::Lambda(2), 2).unwrap();
    assert_eq!(l2.rank, 1);
    assert_eq!(l2.weight_polynomial(), &Poly::var(0) * &Poly::var(1));
    let l3 = truncate_to_schur_module(&FunctorSpec::Lambda(3), 3).unwrap();
    assert_eq!(l3.weight_polynomial(), elementary(3, 3));

    for f in [FunctorSpec::Lambda(2), FunctorSpec::Sym(2), FunctorSpec::TensorPower(2), FunctorSpec::DividedPower(2)] {
        let module = truncate_to_schur_module(&f, 2).unwrap();
        assert!(module.check_module_axioms(&mut r, 200), "{f:?}");
        assert_eq!(module.weight_polynomial(), char_functor(&f, 2), "{f:?}");
        let m = IntMatrix::from_rows(&[[2, -1], [1, 3]]);
        assert!(module.gamma_acts_as_functor(&m), "{f:?}");
    }
    let ll = FunctorSpec::compose(FunctorSpec::Lambda(2), FunctorSpec::Sym(1));
    let module = truncate_to_schur_module(&ll, 3).unwrap();
    assert!(module.check_module_axioms(&mut r, 60));
    assert_eq!(module.weight_polynomial(), char_functor(&ll, 3));
}

#[test]
fn tensor_square_diagonal_action() {
    let t2 = FunctorSpec::TensorPower(2);
    let module = truncate_to_schur_module(&t2, 2).unwrap();
    assert_eq!(module.rank, 4);
    let (a, b) = (3i64, -2i64);
    let action = module.act(&module.algebra.gamma(&IntMatrix::diagonal(&[a, b])));
    let weights = [a, b];
    for (i, basis) in basis_elements(&t2, &leaf_alphabet(2)).iter().enumerate() {
        let expected: i64 = basis.leaves().iter().map(|&l| weights[l as usize]).product();
        for j in 0..4 {
            let want = if i == j { expected } else { 0 };
            assert_eq!(action.get(i, j), &BigInt::from(want));
        }
    }
    assert_eq!(action, apply_to_hom(&t2, &IntMatrix::diagonal(&[a, b])));
}

#[test]
fn schur_module_errors() {
    let mixed = FunctorSpec::sum(FunctorSpec::Lambda(2), FunctorSpec::Lambda(1));
    assert!(matches!(truncate_to_schur_module(&mixed, 3), Err(Error::DegreeMismatch { .. })));
    assert!(matches!(truncate_to_schur_module(&FunctorSpec::Sym(3), 2), Err(Error::InsufficientVariables { .. })));
}
