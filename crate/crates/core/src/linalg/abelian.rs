use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::elim::invariant_factors;
use super::matrix::IntMatrix;

/// Finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/t_i` with `t_1 | t_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbGroup {
    pub free_rank: usize,
    #[serde(with = "crate::json::bigint_vec")]
    pub torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn zero() -> Self {
        FgAbGroup { free_rank: 0, torsion: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { free_rank: rank, torsion: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_i64(&self) -> Vec<i64> {
        self.torsion.iter().map(|t| i64::try_from(t).unwrap_or(i64::MAX)).collect()
    }

    /// `Z^gens / im(relations)`.
    pub fn from_relations(gens: usize, relations: &IntMatrix) -> Self {
        assert_eq!(relations.rows(), gens);
        let f = invariant_factors(relations);
        FgAbGroup {
            free_rank: gens - f.len(),
            torsion: f.into_iter().filter(|x| !x.is_one()).collect(),
        }
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of `a` as an abelian group.
pub fn cokernel(a: &IntMatrix) -> FgAbGroup {
    FgAbGroup::from_relations(a.rows(), a)
}

/// A finitely presented abelian group `Z^gens / im(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub gens: usize,
    pub relations: IntMatrix,
}

impl Presentation {
    pub fn free(n: usize) -> Self {
        Presentation { gens: n, relations: IntMatrix::zeros(n, 0) }
    }

    pub fn cyclic(order: i64) -> Self {
        Presentation { gens: 1, relations: IntMatrix::scalar(order) }
    }

    pub fn direct_sum(&self, other: &Presentation) -> Presentation {
        Presentation { gens: self.gens + other.gens, relations: self.relations.block_diag(&other.relations) }
    }

    /// `A ⊗ B = coker([R_A ⊗ 1, 1 ⊗ R_B])`, by right exactness of the tensor product.
    pub fn tensor(&self, other: &Presentation) -> Presentation {
        let left = self.relations.kronecker(&IntMatrix::identity(other.gens));
        let right = IntMatrix::identity(self.gens).kronecker(&other.relations);
        Presentation { gens: self.gens * other.gens, relations: left.hstack(&right) }
    }

    pub fn group(&self) -> FgAbGroup {
        FgAbGroup::from_relations(self.gens, &self.relations)
    }
}

/// A homomorphism of presented groups given on generators; `matrix` maps
/// source generators to target generators and must carry relations into relations.
pub fn is_well_defined(source: &Presentation, target: &Presentation, matrix: &IntMatrix) -> bool {
    let image = matrix * &source.relations;
    super::snf::solve_integer(&target.relations, &image).is_some()
}

/// Homology `ker f / im g` at the middle of `A --g--> B --f--> C` of presented groups.
pub fn presented_homology(
    b: &Presentation,
    c: &Presentation,
    g: &IntMatrix,
    f: &IntMatrix,
) -> FgAbGroup {
    // cycles: x in Z^{b.gens} with f x in im R_C, i.e. kernel of [f | R_C] projected to the first block
    let nb = b.gens;
    let stacked = f.hstack(&c.relations);
    let k = super::snf::kernel_basis(&stacked);
    let cycles = lattice_basis(&k.submatrix(0..nb, 0..k.cols()));
    // boundaries + relations of B, expressed in the cycle lattice coordinates
    let bounds = g.hstack(&b.relations);
    if cycles.cols() == 0 {
        return FgAbGroup::zero();
    }
    let coords = super::snf::solve_integer(&cycles, &bounds).expect("boundaries must be cycles");
    FgAbGroup::from_relations(cycles.cols(), &coords)
}

/// Basis (as columns) of the lattice spanned by the columns of `gens`.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    let d = super::snf::snf(gens);
    let mut out = IntMatrix::zeros(gens.rows(), d.rank);
    for j in 0..d.rank {
        let s = d.s.get(j, j);
        for i in 0..gens.rows() {
            out.set(i, j, d.u.get(i, j) * s);
        }
    }
    out
}
