//! Smith normal form with unimodular transforms, and the lattice routines
//! built on it (kernels, images, integer solving, one-sided inverses).

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{Int, IntMatrix};
use crate::error::{Error, Result};

/// `u * a * v == s` with `u`, `v` unimodular and `s` diagonal in Smith form.
///
/// The inverses of both transforms are carried along because nearly every
/// caller needs them (kernels read columns of `v`, images read columns of
/// `u_inv`, solving needs both).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries `s_1 | s_2 | ... | s_rank`.
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Checks every contractual property against the input matrix.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let (m, n) = a.shape();
        if self.u.shape() != (m, m) || self.v.shape() != (n, n) || self.s.shape() != (m, n) {
            return false;
        }
        if &(&self.u * a) * &self.v != self.s {
            return false;
        }
        if !(&self.u * &self.u_inv).is_identity() || !(&self.v * &self.v_inv).is_identity() {
            return false;
        }
        let diag: Vec<Int> = (0..m.min(n)).map(|i| self.s.get(i, i).clone()).collect();
        for i in 0..m {
            for j in 0..n {
                if i != j && !self.s.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let nonzero = diag.iter().take_while(|d| !d.is_zero()).count();
        if nonzero != self.rank || diag[nonzero..].iter().any(|d| !d.is_zero()) {
            return false;
        }
        diag[..nonzero].iter().all(|d| d.is_positive())
            && diag[..nonzero].windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &Int) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c);
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &Int) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Column transform by a determinant-one 2x2 matrix `[[p, q], [r, s]]`.
    fn combine_cols(&mut self, i: usize, j: usize, p: &Int, q: &Int, r: &Int, s: &Int) {
        self.a.combine_cols(i, j, [p, q, r, s]);
        self.v.combine_cols(i, j, [p, q, r, s]);
        let (nq, nr) = (-q, -r);
        self.v_inv.combine_rows(i, j, [s, &nq, &nr, p]);
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.a.shape();
        let mut best: Option<(usize, usize, Int)> = None;
        for i in t..m {
            for j in t..n {
                let v = self.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let abs = v.abs();
                if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                    let one = abs.is_one();
                    best = Some((i, j, abs));
                    if one {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clear row and column `t` outside the pivot; returns once both are zero.
    fn eliminate(&mut self, t: usize) {
        let (m, n) = self.a.shape();
        loop {
            let p = self.a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let v = self.a.get(i, t);
                if v.is_zero() {
                    continue;
                }
                let q = nearest_quotient(v, &p);
                self.add_row(i, t, &-q);
                if !self.a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let v = self.a.get(t, j);
                if v.is_zero() {
                    continue;
                }
                let q = nearest_quotient(v, &p);
                self.add_col(j, t, &-q);
                if !self.a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                return;
            }
            // move the smallest remainder in row/column t onto the diagonal
            let mut best = (t, t, self.a.get(t, t).abs());
            for i in t + 1..m {
                let v = self.a.get(i, t);
                if !v.is_zero() && v.abs() < best.2 {
                    best = (i, t, v.abs());
                }
            }
            for j in t + 1..n {
                let v = self.a.get(t, j);
                if !v.is_zero() && v.abs() < best.2 {
                    best = (t, j, v.abs());
                }
            }
            self.swap_rows(t, best.0);
            self.swap_cols(t, best.1);
        }
    }

    /// Turn `diag(a, b)` at positions `i < j` into `diag(gcd, lcm)`.
    fn fix_pair(&mut self, i: usize, j: usize) {
        let a = self.a.get(i, i).clone();
        let b = self.a.get(j, j).clone();
        let ext = a.extended_gcd(&b);
        let g = ext.gcd;
        let (s, t) = (ext.x, ext.y);
        let a1 = &a / &g;
        let b1 = &b / &g;
        // row i += row j  ->  [[a, b], [0, b]]
        self.add_row(i, j, &Int::one());
        // cols (i, j) * [[s, -b1], [t, a1]]  ->  [[g, 0], [t b, a1 b]]
        let nb1 = -&b1;
        self.combine_cols(i, j, &s, &nb1, &t, &a1);
        let c = self.a.get(j, i) / &g;
        self.add_row(j, i, &-c);
    }
}

/// `q` with `|a - q b| <= |b| / 2`.
fn nearest_quotient(a: &Int, b: &Int) -> Int {
    // the floor remainder has the sign of b, so rounding up moves it to
    // r - b
    let (q, r) = a.div_mod_floor(b);
    let twice: Int = &r * 2u32;
    if twice.abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

/// Smith normal form by minimal-absolute-value pivoting followed by a
/// gcd/lcm pass on the diagonal.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = a.shape();
    let mut red = Reducer {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        let Some((i, j)) = red.min_pivot(t) else {
            break;
        };
        red.swap_rows(t, i);
        red.swap_cols(t, j);
        red.eliminate(t);
        rank += 1;
    }
    for i in 0..rank {
        for j in i + 1..rank {
            let (di, dj) = (red.a.get(i, i), red.a.get(j, j));
            if !dj.is_multiple_of(di) {
                red.fix_pair(i, j);
            }
        }
        if red.a.get(i, i).is_negative() {
            red.negate_row(i);
        }
    }
    SmithDecomposition {
        u: red.u,
        u_inv: red.u_inv,
        s: red.a,
        v: red.v,
        v_inv: red.v_inv,
        rank,
    }
}

/// Columns form a basis of the integer kernel lattice `{v : a v = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let n = a.cols();
    snf.v.submatrix(0, snf.rank, n, n - snf.rank)
}

/// Columns form a basis of the image lattice `a * Z^cols`.
pub fn image_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    image_basis_from(&snf, a.rows())
}

pub(crate) fn image_basis_from(snf: &SmithDecomposition, rows: usize) -> IntMatrix {
    let mut b = snf.u_inv.submatrix(0, 0, rows, snf.rank);
    for k in 0..snf.rank {
        let s = snf.s.get(k, k).clone();
        if !s.is_one() {
            for i in 0..rows {
                let v = b.get(i, k) * &s;
                b.set(i, k, v);
            }
        }
    }
    b
}

/// Integer solution of `a x = b`, or `None` when none exists.
pub fn solve_linear(a: &IntMatrix, b: &[Int]) -> Result<Option<Vec<Int>>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has length {} but the system has {} equations",
            b.len(),
            a.rows()
        )));
    }
    let rhs = IntMatrix::column_vector(b);
    Ok(solve_matrix(a, &rhs)?.map(|x| x.column(0)))
}

/// Integer solution `x` of `a x = b` for a matrix right-hand side.
pub fn solve_matrix(a: &IntMatrix, b: &IntMatrix) -> Result<Option<IntMatrix>> {
    if b.rows() != a.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has {} rows but the system has {}",
            b.rows(),
            a.rows()
        )));
    }
    let snf = smith_normal_form(a);
    Ok(solve_with(&snf, b))
}

pub(crate) fn solve_with(snf: &SmithDecomposition, b: &IntMatrix) -> Option<IntMatrix> {
    // s (v^-1 x) = u b
    let c = &snf.u * b;
    let n = snf.v.rows();
    let mut w = IntMatrix::zeros(n, b.cols());
    for i in 0..c.rows() {
        for k in 0..b.cols() {
            let ci = c.get(i, k);
            if i < snf.rank {
                let (q, r) = ci.div_rem(snf.s.get(i, i));
                if !r.is_zero() {
                    return None;
                }
                w.set(i, k, q);
            } else if !ci.is_zero() {
                return None;
            }
        }
    }
    Some(&snf.v * &w)
}

/// `r` with `r * a == id`, when `a` is a split monomorphism over Z.
pub fn left_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    let (m, n) = a.shape();
    let snf = smith_normal_form(a);
    if snf.rank != n || (0..n).any(|i| !snf.s.get(i, i).is_one()) {
        return None;
    }
    // v [I 0] u
    let top = snf.u.submatrix(0, 0, n, m);
    Some(&snf.v * &top)
}

/// `s` with `a * s == id`, when `a` is a split epimorphism over Z.
pub fn right_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    left_inverse(&a.transpose()).map(|r| r.transpose())
}

pub fn is_unimodular(a: &IntMatrix) -> bool {
    if !a.is_square() {
        return false;
    }
    let snf = smith_normal_form(a);
    snf.rank == a.rows() && (0..snf.rank).all(|i| snf.s.get(i, i).is_one())
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    if !a.is_square() {
        return None;
    }
    let snf = smith_normal_form(a);
    if snf.rank != a.rows() || (0..snf.rank).any(|i| !snf.s.get(i, i).is_one()) {
        return None;
    }
    Some(&snf.v * &snf.u)
}

pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn zero_one_by_one() {
        let a = IntMatrix::zeros(1, 1);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.s, IntMatrix::zeros(1, 1));
        assert!(snf.u.is_identity() && snf.v.is_identity());
        assert_eq!(snf.rank, 0);
    }

    #[test]
    fn identity_is_its_own_form() {
        let a = IntMatrix::identity(3);
        let snf = smith_normal_form(&a);
        assert!(snf.s.is_identity());
        assert!(snf.verify(&a));
    }

    #[test]
    fn two_four_six_eight() {
        // gcd of entries is 2 and |det| is 8, so the factors are (2, 4)
        let a = IntMatrix::from_i64_rows(&[[2, 4], [6, 8]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.invariant_factors(), ints(&[2, 4]));
        assert!(snf.verify(&a));
    }

    #[test]
    fn empty_shapes() {
        for (m, n) in [(0, 0), (0, 3), (3, 0)] {
            let a = IntMatrix::zeros(m, n);
            let snf = smith_normal_form(&a);
            assert!(snf.verify(&a));
            assert_eq!(snf.rank, 0);
        }
    }

    #[test]
    fn negative_pivots_terminate() {
        // unimodular, so every factor is 1
        let a = IntMatrix::from_i64_rows(&[[-5, -8], [-8, -13]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.invariant_factors(), ints(&[1, 1]));
        assert!(snf.verify(&a));
        for (a, b) in [(-8, -5), (8, -5), (-8, 5), (7, -2), (-7, -2), (3, 2)] {
            let q = nearest_quotient(&Int::from(a), &Int::from(b));
            let r = Int::from(a) - &q * Int::from(b);
            assert!(
                &r * 2u32 <= Int::from(b).abs() && &r * -2i32 <= Int::from(b).abs(),
                "{a} {b}"
            );
        }
    }

    #[test]
    fn divisibility_fix_needed() {
        let a = IntMatrix::from_i64_rows(&[[2, 0], [0, 3]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.invariant_factors(), ints(&[1, 6]));
        assert!(snf.verify(&a));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::from_i64_rows(&[[1, 1]]));
        assert_eq!(k.shape(), (2, 1));
        let (x, y) = (k.get(0, 0).clone(), k.get(1, 0).clone());
        assert_eq!(&x + &y, Int::zero());
        assert!(x.abs().is_one());

        assert_eq!(kernel_basis(&IntMatrix::identity(3)).cols(), 0);
        let k = kernel_basis(&IntMatrix::zeros(1, 1));
        assert_eq!(k.shape(), (1, 1));
        assert!(k.get(0, 0).abs().is_one());
    }

    #[test]
    fn solve_examples() {
        let two = IntMatrix::from_i64_rows(&[[2]]);
        assert_eq!(solve_linear(&two, &ints(&[4])).unwrap(), Some(ints(&[2])));
        assert_eq!(solve_linear(&two, &ints(&[3])).unwrap(), None);
        let a = IntMatrix::from_i64_rows(&[[1, 2], [3, 4]]);
        assert_eq!(solve_linear(&a, &ints(&[5, 11])).unwrap(), Some(ints(&[1, 2])));
        assert!(solve_linear(&a, &ints(&[1])).is_err());
    }

    #[test]
    fn one_sided_inverses() {
        let a = IntMatrix::from_i64_rows(&[[1], [2]]);
        let r = left_inverse(&a).unwrap();
        assert!((&r * &a).is_identity());
        assert!(left_inverse(&IntMatrix::from_i64_rows(&[[2]])).is_none());
        let p = IntMatrix::from_i64_rows(&[[3, 2]]);
        let s = right_inverse(&p).unwrap();
        assert!((&p * &s).is_identity());
    }

    #[test]
    fn image_lattice() {
        let a = IntMatrix::from_i64_rows(&[[2, 4], [6, 8]]);
        let b = image_basis(&a);
        assert_eq!(b.cols(), 2);
        // every column of a lies in the lattice spanned by b and conversely
        assert!(solve_matrix(&b, &a).unwrap().is_some());
        assert!(solve_matrix(&a, &b).unwrap().is_some());
    }
}
