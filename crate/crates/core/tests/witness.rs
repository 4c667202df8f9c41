use kops::complexes::{BinaryMulticomplex, CellMap, ChainComplex, DiffMap, GradedObject, ShortExactSequence};
use kops::derived::simplicial_tensor_n;
use kops::linalg::IntMatrix;
use kops::random;
use kops::witness::*;
use num_bigint::BigInt;

fn ident(x: &BinaryMulticomplex) -> CellMap {
    x.objects().cells().map(|(c, r)| (c.clone(), IntMatrix::identity(r))).collect()
}

/// `ℤ` at the four corners of a square, `d^1 = a / b`, `d^2 = c / e`.
fn square(a: i64, b: i64, c: i64, e: i64) -> BinaryMulticomplex {
    let objects = GradedObject::from_ranks(2, [(vec![0, 0], 1), (vec![1, 0], 1), (vec![0, 1], 1), (vec![1, 1], 1)]);
    let fam = |x: i64, y: i64| -> Vec<DiffMap> {
        let d1: DiffMap = [(vec![1, 0], IntMatrix::scalar(x)), (vec![1, 1], IntMatrix::scalar(x))].into();
        let d2: DiffMap = [(vec![0, 1], IntMatrix::scalar(y)), (vec![1, 1], IntMatrix::scalar(y))].into();
        vec![d1, d2]
    };
    BinaryMulticomplex::new(objects, fam(a, c), fam(b, e)).unwrap()
}

#[test]
fn ses_checks() {
    let c = BinaryMulticomplex::two_term(1, -1, 1);
    let zero = BinaryMulticomplex::zero(1);
    let trivial = ShortExactSequence { sub: c.clone(), total: c.clone(), quotient: zero.clone(), inclusion: ident(&c), projection: CellMap::new() };
    assert!(check_ses(&trivial));

    // the binary epimorphism completed with its kernel ℤ(1,-1)
    let (x, y, f) = binary_nonsplit_example(1, false);
    let k = BinaryMulticomplex::two_term(-1, 1, 1);
    let mut inc = CellMap::new();
    inc.insert(vec![1], IntMatrix::from_rows(&[[1], [-1]]));
    inc.insert(vec![0], IntMatrix::identity(1));
    let good = ShortExactSequence { sub: k.clone(), total: x.clone(), quotient: y.clone(), inclusion: inc.clone(), projection: f.clone() };
    assert_eq!(good.first_failure(), None);
    let zero_proj: CellMap = f.iter().map(|(c, m)| (c.clone(), IntMatrix::zeros(m.rows(), m.cols()))).collect();
    let bad = ShortExactSequence { projection: zero_proj, ..good };
    assert!(!check_ses(&bad));
}

#[test]
fn shift_by_one() {
    let n = BinaryMulticomplex::two_term(1, -1, 1);
    let w = shift_witness(&n, 1, 0).unwrap();
    // one cone sequence and two truncation steps
    assert_eq!(w.ses_count(), 3);
    assert!(w.check().is_valid(), "{:?}", w.check().messages());
    for (k, wit) in w.witnesses.iter().enumerate() {
        if let RelationWitness::Ses { sub, total, quotient, inclusion, projection } = wit {
            let ses = ShortExactSequence {
                sub: w.objects[*sub].clone(),
                total: w.objects[*total].clone(),
                quotient: w.objects[*quotient].clone(),
                inclusion: inclusion.clone(),
                projection: projection.clone(),
            };
            assert!(check_ses(&ses), "witness {k}");
        }
    }
}

#[test]
fn shift_by_zero_and_two() {
    let n = BinaryMulticomplex::two_term(1, -1, 1);
    let w0 = shift_witness(&n, 0, 0).unwrap();
    assert!(w0.witnesses.is_empty() && w0.claim.is_empty());
    assert!(w0.check().is_valid());
    let w1 = shift_witness(&n, 1, 0).unwrap();
    let w2 = shift_witness(&n, 2, 0).unwrap();
    assert_eq!(w2.ses_count(), 2 * w1.ses_count());
    assert!(w2.check().is_valid(), "{:?}", w2.check().messages());
}

#[test]
fn shift_random_and_multidirectional() {
    let mut rng = random::rng(11);
    for _ in 0..3 {
        let n = random::binary_acyclic(&mut rng, 3, 2);
        let w = shift_witness(&n, 1, 0).unwrap();
        assert!(w.check().is_valid(), "{:?}", w.check().messages());
    }
    let sq = square(1, -1, 1, 1);
    for dir in 0..2 {
        let w = shift_witness(&sq, 1, dir).unwrap();
        assert!(w.check().is_valid(), "direction {dir}: {:?}", w.check().messages());
    }
    let not_acyclic = BinaryMulticomplex::two_term(2, 2, 1);
    assert!(matches!(shift_witness(&not_acyclic, 1, 0), Err(kops::error::Error::NotAcyclic(_))));
}

#[test]
fn tampering_is_detected() {
    let n = BinaryMulticomplex::two_term(1, -1, 1);
    let w = shift_witness(&n, 1, 0).unwrap();
    let mut bad = w.clone();
    bad.multipliers[0] += BigInt::from(1);
    assert!(bad.check().ledger_failure.is_some());

    let mut bad = w.clone();
    let k = bad.witnesses.iter().position(RelationWitness::is_ses).unwrap();
    if let RelationWitness::Ses { projection, .. } = &mut bad.witnesses[k] {
        for m in projection.values_mut() {
            *m = IntMatrix::zeros(m.rows(), m.cols());
        }
    }
    assert!(!bad.check().witness_failures.is_empty());

    let mut bad = w;
    bad.claim.add(0, BigInt::from(1));
    assert!(!bad.check().is_valid());
}

#[test]
fn json_round_trip() {
    let n = BinaryMulticomplex::two_term(1, -1, 2);
    let w = shift_witness(&n, 1, 0).unwrap();
    let text = serde_json::to_string(&w.to_json()).unwrap();
    let back = WitnessChain::parse(&text).unwrap();
    assert_eq!(back, w);
    assert!(back.check().is_valid());
    assert!(WitnessChain::parse("{\"level\": 1}").is_err());
}

#[test]
fn product_of_diagonals_is_immediate() {
    let d = BinaryMulticomplex::two_term(1, 1, 1);
    let w = product_vanishing_witness(&d, &d).unwrap();
    assert_eq!(w.witnesses.len(), 1);
    assert_eq!(w.diagonal_count(), 1);
    assert!(w.check().is_valid());
}

#[test]
fn product_chain_validates() {
    let p = BinaryMulticomplex::two_term(1, -1, 1);
    let q = BinaryMulticomplex::two_term(1, 1, 1);
    let w = product_vanishing_witness(&p, &q).unwrap();
    assert!(w.ses_count() > 0);
    assert!(w.check().is_valid(), "{:?}", w.check().messages());
    assert_eq!(w.objects[*w.claim.0.keys().next().unwrap()], simplicial_tensor_n(&p, &q).unwrap());
}

#[test]
fn product_with_longer_factor() {
    let mut rng = random::rng(5);
    let p = random::binary_acyclic(&mut rng, 2, 1);
    assert_eq!(p.objects().support_bound()[0], 2);
    let q = BinaryMulticomplex::two_term(1, -1, 1);
    let w = product_vanishing_witness(&p, &q).unwrap();
    // the filtration of P has three stages, so two filtration sequences come first
    let filtration: Vec<_> = w.witnesses.iter().take(2).collect();
    assert!(filtration.iter().all(|x| x.is_ses()));
    assert!(w.check().is_valid(), "{:?}", w.check().messages());
}

#[test]
fn product_in_two_directions() {
    let p = square(1, -1, 1, 1);
    let q = square(-1, 1, 1, -1);
    let w = product_vanishing_witness(&p, &q).unwrap();
    assert!(w.check().is_valid(), "{:?}", w.check().messages());
    let bad = BinaryMulticomplex::two_term(1, 1, 1);
    assert!(matches!(product_vanishing_witness(&p, &bad), Err(kops::error::Error::DimensionMismatch(_))));
}

#[test]
fn idempotent_kernels() {
    let c = ChainComplex::two_term(1, 1);
    let zero: Vec<IntMatrix> = c.ranks().iter().map(|&r| IntMatrix::zeros(r, r)).collect();
    assert_eq!(split_chain_idempotent(&zero, &c).unwrap().complex, c);
    let one: Vec<IntMatrix> = c.ranks().iter().map(|&r| IntMatrix::identity(r)).collect();
    assert!(split_chain_idempotent(&one, &c).unwrap().complex.is_zero());
    let twice: Vec<IntMatrix> = c.ranks().iter().map(|&r| IntMatrix::identity(r).scale(&BigInt::from(2))).collect();
    assert_eq!(split_chain_idempotent(&twice, &c), Err(kops::error::Error::NotIdempotent(0)));
}

#[test]
fn random_split_idempotents_preserve_acyclicity() {
    let mut rng = random::rng(21);
    for round in 0..6 {
        let a = random::complex(&mut rng, 3, 2, true);
        let b = random::complex(&mut rng, 3, 2, round % 2 == 0);
        let sum = a.direct_sum(&b);
        let len = sum.ranks().len();
        let e: Vec<IntMatrix> = (0..len).map(|i| IntMatrix::identity(a.rank(i)).block_diag(&IntMatrix::zeros(b.rank(i), b.rank(i)))).collect();
        let (g, g_inv): (Vec<_>, Vec<_>) = (0..len).map(|i| random::unimodular(&mut rng, sum.rank(i), 6)).unzip();
        let c = sum.conjugate(&g, &g_inv);
        let e: Vec<IntMatrix> = (0..len).map(|i| &(&g[i] * &e[i]) * &g_inv[i]).collect();
        let k = split_chain_idempotent(&e, &c).unwrap();
        assert!(k.complex.validate().is_valid());
        assert_eq!(k.complex.ranks().iter().sum::<usize>(), b.ranks().iter().sum::<usize>());
        assert_eq!(k.complex.homology_all(), b.homology_all());
        if b.is_acyclic() {
            assert!(k.complex.is_acyclic());
        }
    }
}

#[test]
fn splitting_monos() {
    let c = ChainComplex::two_term(1, 1);
    let id: Vec<IntMatrix> = c.ranks().iter().map(|&r| IntMatrix::identity(r)).collect();
    let s = split_acyclic_mono(&id, &c, &c, &IntMatrix::identity(1)).unwrap();
    assert!(s.iter().all(IntMatrix::is_identity));

    // summand inclusion C -> C ⊕ D
    let mut rng = random::rng(3);
    let d = random::complex(&mut rng, 3, 2, true);
    let big = c.direct_sum(&d);
    let inc: Vec<IntMatrix> =
        (0..big.ranks().len()).map(|i| IntMatrix::identity(c.rank(i)).vstack(&IntMatrix::zeros(d.rank(i), c.rank(i)))).collect();
    let s0 = IntMatrix::identity(c.rank(0)).hstack(&IntMatrix::zeros(c.rank(0), d.rank(0)));
    let s = split_acyclic_mono(&inc, &c, &big, &s0).unwrap();
    for (i, si) in s.iter().enumerate() {
        assert!((si * &inc[i]).is_identity());
    }
    assert!(big.is_chain_map(&c, &s));
}

#[test]
fn splitting_the_kernel_of_the_binary_epimorphism() {
    // top row only: ℤ(1,-1) -> P ⊕ P -> P
    let (x, _, _) = binary_nonsplit_example(1, false);
    let q = x.top();
    let p = ChainComplex::from_parts(vec![1, 1], vec![IntMatrix::scalar(-1)]);
    let inc = vec![IntMatrix::identity(1), IntMatrix::from_rows(&[[1], [-1]]), IntMatrix::zeros(1, 0)];
    let s = split_acyclic_mono(&inc, &p, &q, &IntMatrix::identity(1)).unwrap();
    for (i, si) in s.iter().enumerate() {
        assert!((si * &inc[i]).is_identity(), "degree {i}");
    }
    assert!(q.is_chain_map(&p, &s));

    let bad = vec![IntMatrix::scalar(2), IntMatrix::from_rows(&[[2], [-2]]), IntMatrix::zeros(1, 0)];
    assert!(split_acyclic_mono(&bad, &p, &q, &IntMatrix::identity(1)).is_err());
}

#[test]
fn binary_epimorphism_does_not_split() {
    assert!(binary_nonsplit_check());
    let (x, y, f) = binary_nonsplit_example(1, true);
    let s = find_binary_section(&f, &x, &y).expect("the diagonal variant splits");
    assert!(y.first_noncommuting_cell(&x, &s).is_none());
    let (x, y, f) = binary_nonsplit_example(0, false);
    assert!(find_binary_section(&f, &x, &y).is_some());
    let (x, y, f) = binary_nonsplit_example(2, false);
    assert!(find_binary_section(&f, &x, &y).is_none());
}
