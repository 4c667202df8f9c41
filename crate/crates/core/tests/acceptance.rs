//! One PASS/FAIL line per acceptance criterion. Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use kops::complexes::{BinaryMulticomplex, Bicomplex, ChainComplex};
use kops::derived::{binary_functor, counterexample_h2, induced_f1, lambda_cross_effect_form, predicted_ranks, simplicial_tensor};
use kops::dold_kan::{gamma, gamma_labels, normalized_moore, normalized_moore_with, Complement, MonotoneMap};
use kops::functor::FunctorSpec;
use kops::linalg::{inverse_unimodular, split_summand, IntMatrix};
use kops::random;
use kops::symfunc::*;
use kops::witness::{
    binary_nonsplit_check, check_ses, product_vanishing_witness, shift_witness, split_acyclic_mono, split_chain_idempotent, RelationWitness,
};
use num_bigint::BigInt;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn count<T>(items: impl IntoIterator<Item = T>, ok: impl Fn(&T) -> bool) -> (usize, usize) {
    let v: Vec<T> = items.into_iter().collect();
    (v.iter().filter(|x| ok(x)).count(), v.len())
}

fn c1() -> Outcome {
    let mut good = 0;
    let mut coordinate_equal = 0;
    let mut total = 0;
    for r in 2..=4u32 {
        for x in [2, 3, 5] {
            total += 1;
            let c = ChainComplex::two_term(x, 1);
            let expected = ChainComplex::two_term(x, r as usize);
            let out = lambda_cross_effect_form(r, &c).unwrap();
            let coordinate = induced_f1(&FunctorSpec::Lambda(r), &c).unwrap();
            if out == expected && coordinate.ranks() == expected.ranks() {
                good += 1;
            }
            if coordinate == expected {
                coordinate_equal += 1;
            }
        }
    }
    outcome(
        good == total,
        format!("{good}/{total} equal in the cross-effect basis ({coordinate_equal}/{total} already equal in the Γ-coordinate basis)"),
    )
}

fn c2() -> Outcome {
    let h = counterexample_h2();
    outcome(h.free_rank == 0 && h.torsion_i64() == vec![2], format!("H_2 = free {} torsion {:?}", h.free_rank, h.torsion_i64()))
}

fn c3() -> Outcome {
    let (ok, total) = count(0..50usize, |&t| {
        let mut rng = random::rng(300 + t as u64);
        let c = random::complex(&mut rng, 1 + t % 4, 1 + (t / 4) % 4, t % 3 == 0);
        let g = gamma(&c, c.length() + 1);
        let coordinate = normalized_moore(&g).unwrap();
        let s = normalized_moore_with(&g, Complement::Smith).unwrap();
        let maps: Vec<IntMatrix> = (0..c.ranks().len())
            .map(|m| {
                let labels = gamma_labels(&c, m);
                let idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i].eta == MonotoneMap::identity(m)).collect();
                &s.projection[m] * &IntMatrix::identity(labels.len()).select_cols(&idx)
            })
            .collect();
        coordinate.complex == c
            && s.complex.ranks() == c.ranks()
            && maps.iter().all(|f| inverse_unimodular(f).is_some())
            && c.is_chain_map(&s.complex, &maps)
    });
    outcome(ok == total, format!("{ok}/{total} chain isomorphisms N(Γ(C)) ≅ C"))
}

fn c4() -> Outcome {
    let fs = [FunctorSpec::Lambda(2), FunctorSpec::Lambda(3), FunctorSpec::Sym(2)];
    let mut fails = Vec::new();
    let mut total = 0;
    for t in 0..50usize {
        let mut rng = random::rng(400 + t as u64);
        let c = random::complex(&mut rng, 1 + t % 2, 1 + (t / 2) % 2, t % 3 == 0);
        for f in &fs {
            total += 1;
            let bound = f.degree() as usize * c.length();
            let out = induced_f1(f, &c).unwrap();
            let guard = predicted_ranks(f, &c.graded()).get(&vec![bound + 1]).copied().unwrap_or(0);
            if out.length() > bound || guard != 0 || out.rank(bound + 1) != 0 {
                fails.push(format!("case {t} F = {f}"));
            }
        }
    }
    let listed = if fails.is_empty() { String::new() } else { format!(", failing: {}", fails.join(", ")) };
    outcome(fails.is_empty(), format!("{}/{total} within d·ℓ with zero guard rank{listed}", total - fails.len()))
}

fn c5() -> Outcome {
    let (ok, total) = count(0..100usize, |&t| {
        let mut rng = random::rng(500 + t as u64);
        let r = 1 + (t % 3) as u32;
        // the output grows like binomial(rank Γ_m, r): keep degree-3 inputs smaller
        let c = random::complex(&mut rng, 1 + (t / 3) % 2, if r == 3 { 2 } else { 3 }, true);
        c.is_acyclic() && induced_f1(&FunctorSpec::Lambda(r), &c).unwrap().is_acyclic()
    });
    outcome(ok == total, format!("{ok}/{total} outputs acyclic"))
}

fn c6() -> Outcome {
    let mut homology_ok = 0;
    let mut kl_ok = 0;
    let mut k_plus_l_ok = 0;
    let mut worst = String::new();
    for t in 0..25usize {
        let mut rng = random::rng(600 + t as u64);
        let p = random::complex(&mut rng, t % 3, 2, false);
        let q = random::complex(&mut rng, (t / 3) % 3, 2, false);
        let s = simplicial_tensor(&p, &q);
        let tot = Bicomplex::tensor(&p, &q).tot().unwrap();
        let top = s.ranks().len().max(tot.ranks().len());
        if (0..top).all(|i| s.homology(i) == tot.homology(i)) {
            homology_ok += 1;
        }
        let (k, l) = (p.length(), q.length());
        if s.length() <= k * l {
            kl_ok += 1;
        } else if worst.is_empty() {
            worst = format!("lengths k = {k}, l = {l} give length {} > kl = {}", s.length(), k * l);
        }
        if s.length() <= k + l {
            k_plus_l_ok += 1;
        }
    }
    let c = ChainComplex::two_term(1, 1);
    let minimal = simplicial_tensor(&c, &c);
    outcome(
        homology_ok == 25 && kl_ok == 25,
        format!(
            "homology agrees {homology_ok}/25; length ≤ kl {kl_ok}/25 (first violation: {worst}; (ℤ→ℤ)⊗_Δ(ℤ→ℤ) has ranks {:?}); length ≤ k+l {k_plus_l_ok}/25",
            minimal.ranks()
        ),
    )
}

fn c7() -> Outcome {
    let mut ok = 0;
    let mut sequences = 0;
    for t in 0..10usize {
        let mut rng = random::rng(700 + t as u64);
        let n = random::binary_acyclic(&mut rng, 1 + t % 3, 2);
        let w = shift_witness(&n, 1 + t % 3, 0).unwrap();
        let ses_ok = w.witnesses.iter().all(|x| match x {
            RelationWitness::Ses { sub, total, quotient, inclusion, projection } => {
                sequences += 1;
                check_ses(&kops::complexes::ShortExactSequence {
                    sub: w.objects[*sub].clone(),
                    total: w.objects[*total].clone(),
                    quotient: w.objects[*quotient].clone(),
                    inclusion: inclusion.clone(),
                    projection: projection.clone(),
                })
            }
            RelationWitness::Diagonal { .. } => true,
        });
        let report = w.check();
        if ses_ok && report.ledger_failure.is_none() && report.is_valid() {
            ok += 1;
        }
    }
    outcome(ok == 10, format!("{ok}/10 chains valid, {sequences} sequences replayed"))
}

fn c8() -> Outcome {
    let mut ok = 0;
    let (mut ses, mut diag) = (0, 0);
    for t in 0..10usize {
        let mut rng = random::rng(800 + t as u64);
        let p = random::binary_acyclic(&mut rng, 1 + t % 2, 2);
        let q = random::binary_acyclic(&mut rng, 1 + (t / 2) % 2, 2);
        let w = product_vanishing_witness(&p, &q).unwrap();
        ses += w.ses_count();
        diag += w.diagonal_count();
        if w.check().is_valid() {
            ok += 1;
        }
    }
    outcome(ok == 10, format!("{ok}/10 chains valid ({ses} sequences, {diag} diagonal terminations)"))
}

fn c9() -> Outcome {
    let (a, n) = count(1..=4, |&r| pr_substitution_identity(r));
    let (b, m) = count(1..=4, |&r| lambda_t_multiplicative(r));
    outcome(a == n && b == m, format!("substitution identity {a}/{n}, λ_t multiplicativity {b}/{m}"))
}

fn c10() -> Outcome {
    let pairs = [(2, 2), (2, 3), (3, 2)];
    let (a, n) = count(pairs, |&(r, s)| verify_axiom3_char(r, s));
    // brute force: e_2 over the six products x_i x_j in four variables
    let mut products = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            products.push(&Poly::var(i) * &Poly::var(j));
        }
    }
    let mut brute = Poly::default();
    for x in 0..products.len() {
        for y in x + 1..products.len() {
            brute = &brute + &(&products[x] * &products[y]);
        }
    }
    let p22 = universal_prs(2, 2);
    let mut literal = Poly::default();
    literal.add_term(vec![1, 0, 1], BigInt::from(1));
    literal.add_term(vec![0, 0, 0, 1], BigInt::from(-1));
    let matches = p22 == literal && e_to_sym(&p22, 4) == brute;
    let name = |i: usize| format!("X{}", i + 1);
    outcome(a == n && matches, format!("axiom (3) characters {a}/{n}; P_{{2,2}} = {}", p22.display_with(&name)))
}

fn c11() -> Outcome {
    let a = SchurAlgebra::new(2, 2);
    let mut rng = random::rng(1100);
    let rank_ok = a.rank() == 10 && SchurAlgebra::expected_rank(2, 2) == 10;
    let (ok, n) = count([FunctorSpec::Lambda(2), FunctorSpec::Sym(2), FunctorSpec::TensorPower(2)], |f| {
        let m = truncate_to_schur_module(f, 2).unwrap();
        m.check_module_axioms(&mut random::rng(1101), 100) && m.weight_polynomial() == char_functor(f, 2)
    });
    let algebra_ok = a.check_axioms(&mut rng, 50);
    outcome(rank_ok && algebra_ok && ok == n, format!("rank {}, algebra laws {algebra_ok}, modules {ok}/{n}", a.rank()))
}

fn c12() -> Outcome {
    let mut rng = random::rng(1200);
    let b = random::binary_acyclic_square(&mut rng, 1, 2);
    let f = FunctorSpec::Lambda(2);
    let outs: Vec<BinaryMulticomplex> = [[0, 1], [1, 0]].iter().map(|o| binary_functor(&f, &b, Some(o)).unwrap()).collect();
    let same_objects = outs[0].objects() == outs[1].objects();
    let choices = BinaryMulticomplex::all_choices(2);
    let acyclic = outs.iter().map(|o| choices.iter().filter(|s| o.choice(s).is_acyclic()).count()).collect::<Vec<_>>();
    let valid = outs.iter().all(|o| o.validate().is_valid());
    outcome(
        b.is_acyclic() && same_objects && valid && acyclic == vec![4, 4],
        format!("same graded objects {same_objects}; acyclic choices per order {acyclic:?}"),
    )
}

fn c13() -> Outcome {
    let (idem, n1) = count(0..20usize, |&t| {
        let mut rng = random::rng(1300 + t as u64);
        let a = random::complex(&mut rng, 1 + t % 3, 2, true);
        let b = random::complex(&mut rng, 1 + t % 3, 2, true);
        let sum = a.direct_sum(&b);
        let len = sum.ranks().len();
        let (g, g_inv): (Vec<_>, Vec<_>) = (0..len).map(|i| random::unimodular(&mut rng, sum.rank(i), 6)).unzip();
        let c = sum.conjugate(&g, &g_inv);
        let e: Vec<IntMatrix> = (0..len)
            .map(|i| {
                let e = IntMatrix::identity(a.rank(i)).block_diag(&IntMatrix::zeros(b.rank(i), b.rank(i)));
                &(&g[i] * &e) * &g_inv[i]
            })
            .collect();
        let k = split_chain_idempotent(&e, &c).unwrap();
        c.is_acyclic() && k.complex.is_acyclic()
    });
    let (mono, n2) = count(0..10usize, |&t| {
        let mut rng = random::rng(1350 + t as u64);
        let p = random::complex(&mut rng, 1 + t % 3, 2, true);
        let d = random::complex(&mut rng, 1 + t % 3, 2, true);
        let sum = p.direct_sum(&d);
        let len = sum.ranks().len();
        let (g, g_inv): (Vec<_>, Vec<_>) = (0..len).map(|i| random::unimodular(&mut rng, sum.rank(i), 6)).unzip();
        let q = sum.conjugate(&g, &g_inv);
        let i: Vec<IntMatrix> =
            (0..len).map(|k| &g[k] * &IntMatrix::identity(p.rank(k)).vstack(&IntMatrix::zeros(d.rank(k), p.rank(k)))).collect();
        let s0 = split_summand(&i[0]).unwrap();
        let s = split_acyclic_mono(&i, &p, &q, &s0).unwrap();
        s.iter().zip(&i).all(|(s, i)| (s * i).is_identity()) && q.is_chain_map(&p, &s)
    });
    let nonsplit = binary_nonsplit_check();
    outcome(idem == n1 && mono == n2 && nonsplit, format!("idempotents {idem}/{n1}, mono splittings {mono}/{n2}, binary non-split {nonsplit}"))
}

/// Criteria whose statement is contradicted by an explicit computation. They still print FAIL;
/// an unexpected PASS is reported as an error.
const UNATTAINABLE: &[(usize, &str)] = &[(6, "the kl length bound fails for (ℤ→ℤ)⊗_Δ(ℤ→ℤ), which has length 2 > 1")];

fn main() -> ExitCode {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, Option<u64>); 13] = [
        ("invertible-module example", c1, Some(5)),
        ("counterexample H_2 = ℤ/2", c2, Some(1)),
        ("Dold–Kan round trip", c3, Some(30)),
        ("length bound d·ℓ", c4, None),
        ("acyclicity preservation", c5, Some(120)),
        ("Eilenberg–Zilber comparison", c6, None),
        ("shift certificate", c7, None),
        ("product-vanishing certificate", c8, None),
        ("axiom (2) shadow", c9, None),
        ("axiom (3) shadow", c10, Some(60)),
        ("Schur algebra", c11, None),
        ("binary dimension 2", c12, None),
        ("idempotent and mono splittings", c13, None),
    ];
    let mut unexpected = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let id = k + 1;
        let start = Instant::now();
        let mut out = run();
        let elapsed = start.elapsed();
        if let Some(secs) = limit {
            if elapsed > Duration::from_secs(*secs) {
                out.pass = false;
                out.detail.push_str(&format!("; over the {secs} s limit"));
            }
        }
        let status = if out.pass { "PASS" } else { "FAIL" };
        println!("{status} {id:>2} {name}: {} [{:.2} s]", out.detail, elapsed.as_secs_f64());
        let known = UNATTAINABLE.iter().find(|(i, _)| *i == id);
        match (out.pass, known) {
            (false, Some((_, why))) => println!("        known failure: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => {
                println!("        listed as unattainable but passed");
                unexpected += 1;
            }
            (true, None) => {}
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
