use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::poly::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::functor::{basis_elements, leaf_alphabet, FunctorSpec};

/// `e_k(x_0, ..., x_{n-1})`.
pub fn elementary(n: usize, k: usize) -> Poly {
    let alphabet: Vec<(Monomial, BigInt)> = (0..n).map(|i| (unit(i), BigInt::one())).collect();
    alphabet_elementary(&alphabet, k).swap_remove(k)
}

/// `h_k(x_0, ..., x_{n-1})`.
pub fn complete(n: usize, k: usize) -> Poly {
    // h_k = Σ_j x_j · h_{k-1}(x_j, ..., x_{n-1})
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<u32>, out: &mut Poly) {
        if k == 0 {
            out.add_term(cur.clone(), BigInt::one());
            return;
        }
        for j in start..n {
            cur[j] += 1;
            go(j, n, k - 1, cur, out);
            cur[j] -= 1;
        }
    }
    let mut out = Poly::default();
    go(0, n, k, &mut vec![0; n], &mut out);
    out
}

/// `p_k = Σ x_i^k`.
pub fn power_sum(n: usize, k: u32) -> Poly {
    let mut out = Poly::default();
    for i in 0..n {
        let mut m = vec![0; i + 1];
        m[i] = k;
        out.add_term(m, BigInt::one());
    }
    out
}

fn unit(i: usize) -> Monomial {
    let mut m = vec![0; i + 1];
    m[i] = 1;
    m
}

/// `[e_0, ..., e_k]` of an alphabet given as monomials with (nonnegative) multiplicities.
pub fn alphabet_elementary(alphabet: &[(Monomial, BigInt)], k: usize) -> Vec<Poly> {
    let mut e = vec![Poly::default(); k + 1];
    e[0] = Poly::constant(1);
    for (m, mult) in alphabet {
        let mut left = mult.clone();
        while left.is_positive() {
            for j in (1..=k).rev() {
                let add = e[j - 1].mul_monomial(m, &BigInt::one());
                e[j] = &e[j] + &add;
            }
            left -= 1;
        }
    }
    e
}

/// Invariant under every adjacent transposition of `x_0..x_{n-1}`.
pub fn is_symmetric(f: &Poly, n: usize) -> bool {
    f.nvars() <= n && (0..n.saturating_sub(1)).all(|i| &f.swap_vars(i, i + 1) == f)
}

fn block_degree(m: &[u32], lo: usize, hi: usize) -> u32 {
    (lo..hi).map(|i| m.get(i).copied().unwrap_or(0)).sum()
}

/// Expansion of a polynomial symmetric in each consecutive block of variables (sizes
/// `blocks`) in the elementary functions of the blocks. Block `k`'s `e_j` becomes output
/// variable `offset_k + j - 1`.
pub fn expand_in_e_blocks(f: &Poly, blocks: &[usize]) -> Result<Poly> {
    let total: usize = blocks.iter().sum();
    if f.nvars() > total {
        return Err(Error::DimensionMismatch(format!("polynomial uses {} variables, blocks cover {total}", f.nvars())));
    }
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for &b in blocks {
        offsets.push(acc);
        acc += b;
    }
    for (k, &b) in blocks.iter().enumerate() {
        let lo = offsets[k];
        for i in lo..(lo + b).saturating_sub(1) {
            if &f.swap_vars(i, i + 1) != f {
                return Err(Error::NotSymmetric);
            }
        }
        let deg = f.terms().keys().map(|m| block_degree(m, lo, lo + b)).max().unwrap_or(0) as usize;
        if deg > b {
            return Err(Error::InsufficientVariables { needed: deg, have: b });
        }
    }
    // e_j of each block, in the original variables
    let es: Vec<Vec<Poly>> = blocks
        .iter()
        .zip(&offsets)
        .map(|(&b, &lo)| {
            let alphabet: Vec<(Monomial, BigInt)> = (lo..lo + b).map(|i| (unit(i), BigInt::one())).collect();
            alphabet_elementary(&alphabet, b)
        })
        .collect();
    let mut rest = f.clone();
    let mut out = Poly::default();
    while let Some((lead, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let mut product = Poly::constant(c.clone());
        let mut emono = vec![0u32; total];
        for (k, &b) in blocks.iter().enumerate() {
            let lo = offsets[k];
            let a = |i: usize| lead.get(lo + i).copied().unwrap_or(0);
            for j in 1..=b {
                let next = if j < b { a(j) } else { 0 };
                if a(j - 1) < next {
                    return Err(Error::NotSymmetric);
                }
                let power = a(j - 1) - next;
                if power > 0 {
                    emono[lo + j - 1] = power;
                    product = &product * &es[k][j].pow(power);
                }
            }
        }
        out.add_term(emono, c);
        rest = &rest - &product;
    }
    Ok(out)
}

/// The unique polynomial in `e_1..e_n` (variable `i` is `e_{i+1}`) equal to the symmetric `f`
/// in `n` variables; needs `n ≥ deg f`.
pub fn expand_in_e(f: &Poly, n: usize) -> Result<Poly> {
    expand_in_e_blocks(f, &[n])
}

/// Elementary-basis polynomial evaluated at `e_1..e_m` of `n` variables.
pub fn e_to_sym(g: &Poly, n: usize) -> Poly {
    let m = g.nvars();
    let alphabet: Vec<(Monomial, BigInt)> = (0..n).map(|i| (unit(i), BigInt::one())).collect();
    let es = alphabet_elementary(&alphabet, m);
    g.substitute(&es[1..])
}

/// Weighted degree of an e-basis polynomial (`deg e_i = i`).
pub fn e_weighted_degree(g: &Poly) -> u32 {
    let w: Vec<u32> = (1..=g.nvars() as u32).collect();
    g.weighted_degree(&w)
}

/// The monomials of `inner`, with their coefficients as multiplicities.
fn as_alphabet(inner: &Poly) -> Result<Vec<(Monomial, BigInt)>> {
    let mut out = Vec::new();
    for (m, c) in inner.terms() {
        if c.is_negative() {
            return Err(Error::Validation { cell: "inner".into(), message: format!("negative coefficient {c}: not an alphabet") });
        }
        if m.is_empty() {
            return Err(Error::Validation { cell: "inner".into(), message: "constant term in an alphabet".into() });
        }
        out.push((m.clone(), c.clone()));
    }
    Ok(out)
}

/// `e_r` of the monomials of a (nonnegative) polynomial; `λ^r` on the universal ring.
pub fn lambda_op(r: usize, x: &Poly) -> Result<Poly> {
    Ok(alphabet_elementary(&as_alphabet(x)?, r).swap_remove(r))
}

/// `outer[inner]`: the monomials of `inner` (with multiplicity) become the alphabet of `outer`.
pub fn plethysm_e(outer: &Poly, inner: &Poly, n: usize) -> Result<Poly> {
    let needed = e_weighted_degree(outer) as usize * inner.total_degree() as usize;
    if needed > n {
        return Err(Error::InsufficientVariables { needed, have: n });
    }
    if !is_symmetric(inner, n) {
        return Err(Error::NotSymmetric);
    }
    let m = outer.nvars();
    let es = alphabet_elementary(&as_alphabet(inner)?, m);
    Ok(outer.substitute(&es[1..]))
}

/// `P_r(X_1..X_r, Y_1..Y_r)` with `P_r(e(x), e(y)) = e_r({x_i y_j})`; variables `0..r` are the
/// `X`s and `r..2r` the `Y`s.
pub fn universal_pr(r: usize) -> Poly {
    let mut alphabet = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let mut m = vec![0; r + j + 1];
            m[i] = 1;
            m[r + j] = 1;
            alphabet.push((m, BigInt::one()));
        }
    }
    let er = alphabet_elementary(&alphabet, r).swap_remove(r);
    expand_in_e_blocks(&er, &[r, r]).expect("e_r of products is bisymmetric")
}

/// `P_{r,s}(X_1..X_{rs})`: the elementary expansion of `e_r[e_s]` in `rs` variables.
pub fn universal_prs(r: usize, s: usize) -> Poly {
    let n = r * s;
    let mut outer = Poly::default();
    let mut m = vec![0; r];
    m[r - 1] = 1;
    outer.add_term(m, BigInt::one());
    let p = plethysm_e(&outer, &elementary(n, s), n).expect("rs variables suffice");
    expand_in_e(&p, n).expect("plethysm of symmetric functions is symmetric")
}

/// Weights of the diagonal torus on `F(ℤ^n)`: one monomial per basis element.
pub fn char_functor(f: &FunctorSpec, n: usize) -> Poly {
    let mut out = Poly::default();
    for b in basis_elements(f, &leaf_alphabet(n)) {
        let mut m = vec![0u32; n];
        for leaf in b.leaves() {
            m[leaf as usize] += 1;
        }
        out.add_term(m, BigInt::one());
    }
    out
}

/// `char(Λ^r ∘ Λ^s)` equals `P_{r,s}(e_1, ..., e_{rs})` in `rs` variables.
pub fn verify_axiom3_char(r: usize, s: usize) -> bool {
    let n = r * s;
    let lhs = char_functor(&FunctorSpec::compose(FunctorSpec::Lambda(r as u32), FunctorSpec::Lambda(s as u32)), n);
    let rhs = e_to_sym(&universal_prs(r, s), n);
    lhs == rhs
}

/// `P_r(1, 0, ..., 0, Y_1, ..., Y_r) = Y_r`.
pub fn pr_substitution_identity(r: usize) -> bool {
    let p = universal_pr(r);
    let mut images = vec![Poly::default(); 2 * r];
    images[0] = Poly::constant(1);
    for j in 0..r {
        images[r + j] = Poly::var(j);
    }
    p.substitute(&images) == Poly::var(r - 1)
}

/// Coefficient of `t^r` in `Π_{i,j} (1 + x_i y_j t)`, expanded factor by factor, equals
/// `P_r(e(x), e(y))` with `r` variables per alphabet.
pub fn lambda_t_multiplicative(r: usize) -> bool {
    // variable 2r is t
    let t = 2 * r;
    let mut prod = Poly::constant(1);
    for i in 0..r {
        for j in 0..r {
            let mut m = vec![0; t + 1];
            m[i] = 1;
            m[r + j] = 1;
            m[t] = 1;
            let factor = &Poly::constant(1) + &Poly::monomial(m, BigInt::one());
            prod = &prod * &factor;
            // drop powers of t beyond r
            let kept: Vec<(Monomial, BigInt)> =
                prod.terms().iter().filter(|(m, _)| m.get(t).copied().unwrap_or(0) as usize <= r).map(|(m, c)| (m.clone(), c.clone())).collect();
            prod = Poly::default();
            for (m, c) in kept {
                prod.add_term(m, c);
            }
        }
    }
    let mut coeff = Poly::default();
    for (m, c) in prod.terms() {
        if m.get(t).copied().unwrap_or(0) as usize == r {
            let mut m2 = m.clone();
            m2.truncate(t);
            coeff.add_term(m2, c.clone());
        }
    }
    let x: Vec<(Monomial, BigInt)> = (0..r).map(|i| (unit(i), BigInt::one())).collect();
    let y: Vec<(Monomial, BigInt)> = (0..r).map(|j| (unit(r + j), BigInt::one())).collect();
    let ex = alphabet_elementary(&x, r);
    let ey = alphabet_elementary(&y, r);
    let images: Vec<Poly> = ex[1..].iter().chain(ey[1..].iter()).cloned().collect();
    universal_pr(r).substitute(&images) == coeff
}

/// The products `e_{d_1} ⋯ e_{d_m}` over partitions of `d` are linearly independent in `n ≥ d`
/// variables (their monomial coefficient matrix has full rank).
pub fn e_monomials_independent(d: usize, n: usize) -> bool {
    let parts = partitions(d);
    let mut polys = Vec::new();
    for p in &parts {
        let mut m = vec![0u32; d];
        for &x in p {
            m[x - 1] += 1;
        }
        polys.push(e_to_sym(&Poly::monomial(m, BigInt::one()), n));
    }
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().keys().cloned()).collect();
    monos.sort();
    monos.dedup();
    let mat = crate::linalg::IntMatrix::from_fn(monos.len(), polys.len(), |i, j| polys[j].coeff(&monos[i]));
    crate::linalg::rank(&mat) == parts.len()
}

/// Partitions of `d` as non-increasing part lists.
pub fn partitions(d: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(left)).rev() {
            cur.push(p);
            go(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}
