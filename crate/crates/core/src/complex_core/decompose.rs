use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use super::{ChainMap, Complex};
use crate::zlinalg::{smith_normal_form, Int, IntMatrix};

/// One summand of the elementary decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    /// `Z` in `degree`, basis vector `index` of the normal form.
    Sphere { degree: i64, index: usize },
    /// `Z --t--> Z` from `degree` to `degree + 1`.
    Elementary {
        degree: i64,
        source: usize,
        target: usize,
        t: Int,
    },
}

impl Piece {
    /// `(degree, index)` of every basis vector in the piece.
    pub fn cells(&self) -> Vec<(i64, usize)> {
        match self {
            Piece::Sphere { degree, index } => vec![(*degree, *index)],
            Piece::Elementary {
                degree, source, target, ..
            } => vec![(*degree, *source), (*degree + 1, *target)],
        }
    }

    pub fn is_disk(&self) -> bool {
        matches!(self, Piece::Elementary { t, .. } if t.is_one())
    }
}

/// `x ≅ ⊕ pieces`, with the degreewise change of basis.
///
/// `basis[n]` has the new basis vectors as columns, so the normal form
/// differential is `basis[n+1]^{-1} d^n basis[n]`. In each degree the normal
/// basis lists the sources of outgoing pieces first, then the targets of
/// incoming pieces, then spheres.
#[derive(Clone, Debug)]
pub struct Decomposition {
    complex: Arc<Complex>,
    normal: Arc<Complex>,
    basis: BTreeMap<i64, IntMatrix>,
    inverse: BTreeMap<i64, IntMatrix>,
    pieces: Vec<Piece>,
}

impl Decomposition {
    pub fn new(x: &Complex) -> Self {
        Self::of_arc(Arc::new(x.clone()))
    }

    pub fn of_arc(x: Arc<Complex>) -> Self {
        let degrees: Vec<i64> = x.degrees().collect();
        let mut v = BTreeMap::new();
        let mut v_inv = BTreeMap::new();
        let mut c = BTreeMap::new();
        for &n in &degrees {
            let snf = smith_normal_form(&x.d(n));
            c.insert(n, snf.rank);
            v.insert(n, snf.v);
            v_inv.insert(n, snf.v_inv);
        }
        let cn = |n: i64| c.get(&n).copied().unwrap_or(0);
        // align d^n(complement of ker d^n) with the kernel of d^{n+1}
        let mut w = BTreeMap::new();
        let mut w_inv = BTreeMap::new();
        let mut u = BTreeMap::new();
        let mut u_inv = BTreeMap::new();
        let mut factors = BTreeMap::new();
        for &n in &degrees {
            if cn(n) == 0 {
                continue;
            }
            let r1 = x.rank(n + 1);
            let comp = v[&n].submatrix(0, 0, x.rank(n), cn(n));
            let kplus = v_inv[&(n + 1)].submatrix(cn(n + 1), 0, r1 - cn(n + 1), r1);
            let dm = &(&kplus * &x.d(n)) * &comp;
            let snf = smith_normal_form(&dm);
            debug_assert_eq!(snf.rank, cn(n));
            factors.insert(n, snf.invariant_factors());
            w.insert(n, snf.v);
            w_inv.insert(n, snf.v_inv);
            u.insert(n + 1, snf.u);
            u_inv.insert(n + 1, snf.u_inv);
        }
        let mut basis = BTreeMap::new();
        let mut inverse = BTreeMap::new();
        for &n in &degrees {
            let r = x.rank(n);
            let k = r - cn(n);
            let mut comp = v[&n].submatrix(0, 0, r, cn(n));
            let mut ker = v[&n].submatrix(0, cn(n), r, k);
            let mut comp_inv = v_inv[&n].submatrix(0, 0, cn(n), r);
            let mut ker_inv = v_inv[&n].submatrix(cn(n), 0, k, r);
            if let (Some(wm), Some(wi)) = (w.get(&n), w_inv.get(&n)) {
                comp = &comp * wm;
                comp_inv = wi * &comp_inv;
            }
            if let (Some(um), Some(ui)) = (u.get(&n), u_inv.get(&n)) {
                ker = &ker * ui;
                ker_inv = um * &ker_inv;
            }
            basis.insert(n, IntMatrix::hstack(r, &[&comp, &ker]));
            inverse.insert(n, IntMatrix::vstack(r, &[&comp_inv, &ker_inv]));
        }
        let mut pieces = Vec::new();
        for &n in &degrees {
            let incoming = cn(n - 1);
            for (j, t) in factors.get(&n).into_iter().flatten().enumerate() {
                pieces.push(Piece::Elementary {
                    degree: n,
                    source: j,
                    target: cn(n + 1) + j,
                    t: t.clone(),
                });
            }
            for index in cn(n) + incoming..x.rank(n) {
                pieces.push(Piece::Sphere { degree: n, index });
            }
        }
        let normal = match x.support() {
            None => Complex::zero(),
            Some((lo, hi)) => Complex::from_fn(
                lo,
                hi,
                |n| x.rank(n),
                |n| {
                    let mut d = IntMatrix::zeros(x.rank(n + 1), x.rank(n));
                    for (j, t) in factors.get(&n).into_iter().flatten().enumerate() {
                        d.set(cn(n + 1) + j, j, t.clone());
                    }
                    d
                },
            ),
        };
        Self {
            complex: x,
            normal: Arc::new(normal),
            basis,
            inverse,
            pieces,
        }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    /// The complex in the adapted basis: a direct sum of pieces.
    pub fn normal(&self) -> &Complex {
        &self.normal
    }

    pub fn normal_arc(&self) -> Arc<Complex> {
        self.normal.clone()
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Columns are the adapted basis of `x^n`.
    pub fn basis(&self, n: i64) -> IntMatrix {
        self.basis.get(&n).cloned().unwrap_or_else(|| IntMatrix::zeros(0, 0))
    }

    pub fn inverse(&self, n: i64) -> IntMatrix {
        self.inverse.get(&n).cloned().unwrap_or_else(|| IntMatrix::zeros(0, 0))
    }

    /// Chain isomorphism `normal -> x`.
    pub fn to_complex(&self) -> ChainMap {
        ChainMap::from_fn(self.normal.clone(), self.complex.clone(), |n| self.basis(n))
    }

    /// Chain isomorphism `x -> normal`.
    pub fn from_complex(&self) -> ChainMap {
        ChainMap::from_fn(self.complex.clone(), self.normal.clone(), |n| self.inverse(n))
    }

    /// No torsion pieces and no spheres.
    pub fn is_contractible(&self) -> bool {
        self.pieces.iter().all(Piece::is_disk)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(x: &Complex) -> Decomposition {
        let dec = Decomposition::new(x);
        assert!(dec.normal().validate().is_ok());
        let to = dec.to_complex();
        let from = dec.from_complex();
        assert!(to.validate().is_ok(), "normal -> x is not a chain map");
        assert!(from.validate().is_ok(), "x -> normal is not a chain map");
        assert_eq!(from.after(&to).unwrap(), ChainMap::identity(dec.normal()));
        let cells: usize = dec.pieces().iter().map(|p| p.cells().len()).sum();
        assert_eq!(cells, x.total_rank());
        dec
    }

    #[test]
    fn spheres_and_disks() {
        let dec = check(&Complex::sphere(2));
        assert_eq!(dec.pieces(), &[Piece::Sphere { degree: 2, index: 0 }]);
        assert!(check(&Complex::disk(0)).is_contractible());
        assert!(check(&Complex::zero()).pieces().is_empty());
    }

    #[test]
    fn mixed_complex() {
        // Z^2 -> Z^2 -> Z with a torsion class
        let x = Complex::new(
            0,
            vec![2, 2, 1],
            vec![
                IntMatrix::from_i64_rows(&[[2, 4], [0, 0]]),
                IntMatrix::from_i64_rows(&[[0, 3]]),
            ],
        )
        .unwrap();
        let dec = check(&x);
        let torsion: Vec<Int> = dec
            .pieces()
            .iter()
            .filter_map(|p| match p {
                Piece::Elementary { t, .. } => Some(t.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(torsion, vec![Int::from(2), Int::from(3)]);
        assert!(!dec.is_contractible());
    }
}
