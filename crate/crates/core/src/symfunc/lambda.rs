use serde::Serialize;

use super::poly::Poly;
use super::sym::{elementary, lambda_op, universal_pr, universal_prs};

/// One tested instance of a λ-ring axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaCheck {
    pub axiom: u8,
    pub label: String,
    pub degree: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LambdaReport {
    pub max_degree: usize,
    pub checks: Vec<LambdaCheck>,
}

impl LambdaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn passed_for(&self, axiom: u8) -> (usize, usize) {
        let of: Vec<_> = self.checks.iter().filter(|c| c.axiom == axiom).collect();
        (of.iter().filter(|c| c.passed).count(), of.len())
    }
}

/// Test elements of the universal ring `ℤ[s_1, s_2, ...]` (`s_i = e_i`) with nonnegative
/// monomial expansions, as `(name, polynomial in n variables, degree)`.
fn elements(n: usize, max_degree: usize) -> Vec<(String, Poly, usize)> {
    let s = |k: usize| elementary(n, k);
    let all = vec![
        ("s1".to_string(), s(1), 1),
        ("s2".to_string(), s(2), 2),
        ("s1^2".to_string(), &s(1) * &s(1), 2),
        ("s3".to_string(), s(3), 3),
        ("s1*s2".to_string(), &s(1) * &s(2), 3),
    ];
    all.into_iter().filter(|(_, _, d)| *d <= max_degree).collect()
}

fn lambdas(x: &Poly, upto: usize) -> Vec<Poly> {
    (1..=upto).map(|k| lambda_op(k, x).expect("test elements are alphabets")).collect()
}

/// Axioms (1)-(3) on the universal ring with `λ^r(s_1) = s_r`, up to weighted degree
/// `max_degree`, decided in `max_degree` variables. Composites `λ^r∘λ^s` are limited to `rs ≤ 6`.
pub fn lambda_universal_check(max_degree: usize) -> LambdaReport {
    let n = max_degree;
    let els = elements(n, max_degree);
    let mut checks = Vec::new();
    for (name, x, _) in &els {
        let ok = &lambda_op(1, x).unwrap() == x;
        checks.push(LambdaCheck { axiom: 0, label: format!("λ^1({name}) = {name}"), degree: 0, passed: ok });
    }
    for (i, (nx, x, dx)) in els.iter().enumerate() {
        for (ny, y, dy) in els.iter().skip(i) {
            let dmax = (*dx).max(*dy);
            for r in 1..=max_degree / dmax {
                let lhs = lambda_op(r, &(x + y)).unwrap();
                let (lx, ly) = (lambdas(x, r), lambdas(y, r));
                let mut rhs = &lx[r - 1] + &ly[r - 1];
                for k in 1..r {
                    rhs = &rhs + &(&lx[k - 1] * &ly[r - k - 1]);
                }
                checks.push(LambdaCheck { axiom: 1, label: format!("λ^{r}({nx} + {ny})"), degree: r * dmax, passed: lhs == rhs });
            }
            let dprod = dx + dy;
            for r in 1..=max_degree / dprod {
                let lhs = lambda_op(r, &(x * y)).unwrap();
                let images: Vec<Poly> = lambdas(x, r).into_iter().chain(lambdas(y, r)).collect();
                let rhs = universal_pr(r).substitute(&images);
                checks.push(LambdaCheck { axiom: 2, label: format!("λ^{r}({nx} · {ny}) = P_{r}"), degree: r * dprod, passed: lhs == rhs });
            }
        }
    }
    for (nx, x, dx) in &els {
        for r in 1..=max_degree {
            for s in 1..=max_degree {
                if r * s * dx > max_degree || r * s > 6 {
                    continue;
                }
                let inner = lambda_op(s, x).unwrap();
                let lhs = lambda_op(r, &inner).unwrap();
                let rhs = universal_prs(r, s).substitute(&lambdas(x, r * s));
                checks.push(LambdaCheck {
                    axiom: 3,
                    label: format!("λ^{r}(λ^{s}({nx})) = P_{{{r},{s}}}"),
                    degree: r * s * dx,
                    passed: lhs == rhs,
                });
            }
        }
    }
    LambdaReport { max_degree, checks }
}
