use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{Int, IntMatrix};
use super::smith::{smith_normal_form, solve_matrix};
use crate::error::{Error, Result};

/// Finitely generated abelian group `Z^rows / im(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbGroupPresentation {
    relations: IntMatrix,
    normal: NormalForm,
}

/// Free rank plus invariant factors `t_1 | t_2 | ...`, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalForm {
    pub free_rank: usize,
    #[serde(with = "crate::format::decimal::vec")]
    pub torsion: Vec<Int>,
}

impl NormalForm {
    pub fn zero() -> Self {
        Self {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl AbGroupPresentation {
    /// Presentation with generators the rows of `relations`.
    pub fn new(relations: IntMatrix) -> Self {
        let snf = smith_normal_form(&relations);
        let torsion = snf.invariant_factors().into_iter().filter(|t| !t.is_one()).collect();
        let normal = NormalForm {
            free_rank: relations.rows() - snf.rank,
            torsion,
        };
        Self { relations, normal }
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn generators(&self) -> usize {
        self.relations.rows()
    }

    pub fn normal_form(&self) -> &NormalForm {
        &self.normal
    }

    pub fn is_trivial(&self) -> bool {
        self.normal.is_trivial()
    }

    /// Isomorphism of abstract groups.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.normal == other.normal
    }
}

impl fmt::Display for AbGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.normal.fmt(f)
    }
}

/// Presentation of `coker(a: Z^cols -> Z^rows)`.
pub fn cokernel_presentation(a: &IntMatrix) -> AbGroupPresentation {
    AbGroupPresentation::new(a.clone())
}

/// Decides whether `f: Z^{gens P} -> Z^{gens Q}` induces an isomorphism
/// `coker(R_P) -> coker(R_Q)`.
pub fn presented_group_iso(f: &IntMatrix, p: &AbGroupPresentation, q: &AbGroupPresentation) -> Result<bool> {
    if f.shape() != (q.generators(), p.generators()) {
        return Err(Error::Dimension(format!(
            "map is {}x{} but the presentations have {} and {} generators",
            f.rows(),
            f.cols(),
            p.generators(),
            q.generators()
        )));
    }
    let image_of_relations = f * p.relations();
    if solve_matrix(q.relations(), &image_of_relations)?.is_none() {
        return Err(Error::NotDescending);
    }
    if p.normal_form() != q.normal_form() {
        return Ok(false);
    }
    // Finitely generated abelian groups are Hopfian, so a surjection between
    // isomorphic groups is an isomorphism.
    let joint = IntMatrix::hstack(q.generators(), &[f, q.relations()]);
    Ok(cokernel_presentation(&joint).is_trivial())
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> Result<Int> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Int::one());
    }
    let mut m = a.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                return Ok(Int::zero());
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                m.set(i, j, v);
            }
        }
        prev = m.get(k, k).clone();
    }
    Ok(sign * m.get(n - 1, n - 1))
}

/// gcd of all `k x k` minors of `a` (0 when they all vanish).
///
/// Enumerates every minor; intended as an independent oracle for small
/// matrices, not as a production routine.
pub fn minor_gcd(a: &IntMatrix, k: usize) -> Result<Int> {
    let (m, n) = a.shape();
    if k == 0 || k > m.min(n) {
        return Err(Error::MinorOrder { k, rows: m, cols: n });
    }
    let row_sets = combinations(m, k);
    let col_sets = combinations(n, k);
    let mut g = Int::zero();
    for rs in &row_sets {
        for cs in &col_sets {
            let d = determinant(&a.select(rs, cs))?;
            g = g.gcd(&d);
            if g.is_one() {
                return Ok(g);
            }
        }
    }
    Ok(g.abs())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_examples() {
        let g = cokernel_presentation(&IntMatrix::from_i64_rows(&[[2]]));
        assert_eq!(g.normal_form().torsion, vec![Int::from(2)]);
        assert_eq!(g.normal_form().free_rank, 0);
        assert_eq!(g.to_string(), "Z/2");

        assert!(cokernel_presentation(&IntMatrix::identity(3)).is_trivial());

        let free = cokernel_presentation(&IntMatrix::zeros(1, 0));
        assert_eq!(free.normal_form().free_rank, 1);
        assert_eq!(free.to_string(), "Z");
    }

    #[test]
    fn iso_examples() {
        let p = cokernel_presentation(&IntMatrix::zeros(2, 0));
        assert!(presented_group_iso(&IntMatrix::identity(2), &p, &p).unwrap());

        let z = cokernel_presentation(&IntMatrix::zeros(1, 0));
        assert!(!presented_group_iso(&IntMatrix::from_i64_rows(&[[2]]), &z, &z).unwrap());

        let z2 = cokernel_presentation(&IntMatrix::from_i64_rows(&[[2]]));
        assert!(presented_group_iso(&IntMatrix::from_i64_rows(&[[1]]), &z2, &z2).unwrap());
        // 3 = 1 mod 2, still the identity on Z/2
        assert!(presented_group_iso(&IntMatrix::from_i64_rows(&[[3]]), &z2, &z2).unwrap());
        assert!(!presented_group_iso(&IntMatrix::from_i64_rows(&[[2]]), &z2, &z2).unwrap());
    }

    #[test]
    fn non_descending_map_is_rejected() {
        // Z/2 -> Z by the identity on generators does not descend
        let z2 = cokernel_presentation(&IntMatrix::from_i64_rows(&[[2]]));
        let z = cokernel_presentation(&IntMatrix::zeros(1, 0));
        assert!(matches!(
            presented_group_iso(&IntMatrix::from_i64_rows(&[[1]]), &z2, &z),
            Err(Error::NotDescending)
        ));
    }

    #[test]
    fn minor_gcd_examples() {
        assert_eq!(minor_gcd(&IntMatrix::identity(2), 1).unwrap(), Int::from(1));
        let a = IntMatrix::from_i64_rows(&[[2, 4], [6, 8]]);
        assert_eq!(minor_gcd(&a, 2).unwrap(), Int::from(8));
        assert_eq!(minor_gcd(&IntMatrix::zeros(2, 3), 2).unwrap(), Int::zero());
        assert!(minor_gcd(&a, 3).is_err());
        assert!(minor_gcd(&a, 0).is_err());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let a = IntMatrix::from_i64_rows(&[[0, 2, -1], [3, 1, 2], [-2, 0, 1]]);
        // cofactor expansion along the first row: 0 - 2*(3+4) + (-1)*(0+2) = -16
        assert_eq!(determinant(&a).unwrap(), Int::from(-16));
    }
}
