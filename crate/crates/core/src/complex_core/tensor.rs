use std::sync::Arc;

use super::{ChainMap, Complex};
use crate::zlinalg::IntMatrix;

/// Position of the summand `a^i ⊗ b^{n-i}` inside `(a ⊗ b)^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    /// Degree of the left factor.
    pub i: i64,
    pub offset: usize,
    pub size: usize,
}

/// Summand bookkeeping for `a ⊗ b`.
///
/// Summands of degree `n` are ordered by decreasing `i`, and inside a
/// summand `e_p ⊗ f_q` sits at `p * rank_b(n - i) + q`. With this order
/// `C ⊗ x` is literally the block complex `(x^n, x^{n+1})`.
#[derive(Clone, Copy)]
pub struct TensorLayout<'a> {
    a: &'a Complex,
    b: &'a Complex,
}

impl<'a> TensorLayout<'a> {
    pub fn new(a: &'a Complex, b: &'a Complex) -> Self {
        Self { a, b }
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        let (alo, ahi) = self.a.support()?;
        let (blo, bhi) = self.b.support()?;
        Some((alo + blo, ahi + bhi))
    }

    pub fn blocks(&self, n: i64) -> Vec<Block> {
        let (Some((alo, ahi)), Some((blo, bhi))) = (self.a.support(), self.b.support()) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut offset = 0;
        for i in (alo.max(n - bhi)..=ahi.min(n - blo)).rev() {
            let size = self.a.rank(i) * self.b.rank(n - i);
            if size > 0 {
                out.push(Block { i, offset, size });
                offset += size;
            }
        }
        out
    }

    pub fn rank(&self, n: i64) -> usize {
        self.blocks(n).iter().map(|b| b.size).sum()
    }

    /// Offset of the `a^i ⊗ b^{n-i}` summand, if present.
    pub fn offset(&self, n: i64, i: i64) -> Option<usize> {
        self.blocks(n).into_iter().find(|b| b.i == i).map(|b| b.offset)
    }

    /// Flat index of `e_p ⊗ f_q` in degree `n` with `e_p ∈ a^i`.
    pub fn index(&self, n: i64, i: i64, p: usize, q: usize) -> usize {
        let offset = self.offset(n, i).expect("summand present");
        offset + p * self.b.rank(n - i) + q
    }
}

/// `(a ⊗ b)^n = ⊕_{i+j=n} a^i ⊗ b^j` with `d = d_a ⊗ 1 + (-1)^i 1 ⊗ d_b`.
pub fn tensor(a: &Complex, b: &Complex) -> Complex {
    let layout = TensorLayout::new(a, b);
    let Some((lo, hi)) = layout.support() else {
        return Complex::zero();
    };
    Complex::from_fn(
        lo,
        hi,
        |n| layout.rank(n),
        |n| {
            let src = layout.blocks(n);
            let dst = layout.blocks(n + 1);
            let mut d = IntMatrix::zeros(layout.rank(n + 1), layout.rank(n));
            for s in &src {
                let j = n - s.i;
                if let Some(t) = dst.iter().find(|t| t.i == s.i + 1) {
                    let blk = a.d(s.i).kron(&IntMatrix::identity(b.rank(j)));
                    d.set_block(t.offset, s.offset, &blk);
                }
                if let Some(t) = dst.iter().find(|t| t.i == s.i) {
                    let mut blk = IntMatrix::identity(a.rank(s.i)).kron(&b.d(j));
                    if s.i.rem_euclid(2) == 1 {
                        blk = -&blk;
                    }
                    d.set_block(t.offset, s.offset, &blk);
                }
            }
            d
        },
    )
}

/// `f ⊗ g : a ⊗ b -> a' ⊗ b'`, blockwise Kronecker products.
pub fn tensor_maps(f: &ChainMap, g: &ChainMap) -> ChainMap {
    let source = Arc::new(tensor(f.source(), g.source()));
    let target = Arc::new(tensor(f.target(), g.target()));
    let ls = TensorLayout::new(f.source(), g.source());
    let lt = TensorLayout::new(f.target(), g.target());
    ChainMap::from_fn(source, target, |n| {
        let mut m = IntMatrix::zeros(lt.rank(n), ls.rank(n));
        let tblocks = lt.blocks(n);
        for s in ls.blocks(n) {
            if let Some(t) = tblocks.iter().find(|t| t.i == s.i) {
                m.set_block(t.offset, s.offset, &f.get(s.i).kron(&g.get(n - s.i)));
            }
        }
        m
    })
}

/// `a ⊗ -` applied to a map: `id_a ⊗ g`.
pub fn tensor_left(a: &Complex, g: &ChainMap) -> ChainMap {
    tensor_maps(&ChainMap::identity(a), g)
}

/// Canonical isomorphism `(a ⊗ b) ⊗ c -> a ⊗ (b ⊗ c)`.
///
/// Both differentials expand to `d_a + (-1)^i d_b + (-1)^{i+j} d_c`, so the
/// comparison is a pure permutation of basis vectors.
pub fn associator(a: &Complex, b: &Complex, c: &Complex) -> ChainMap {
    let ab = tensor(a, b);
    let bc = tensor(b, c);
    let left = Arc::new(tensor(&ab, c));
    let right = Arc::new(tensor(a, &bc));
    let l_ab = TensorLayout::new(a, b);
    let l_left = TensorLayout::new(&ab, c);
    let l_bc = TensorLayout::new(b, c);
    let l_right = TensorLayout::new(a, &bc);
    ChainMap::from_fn(left.clone(), right.clone(), |n| {
        let mut m = IntMatrix::zeros(right.rank(n), left.rank(n));
        for outer in l_left.blocks(n) {
            let k = outer.i;
            let rc = c.rank(n - k);
            for inner in l_ab.blocks(k) {
                let (i, j) = (inner.i, k - inner.i);
                for p in 0..a.rank(i) {
                    for q in 0..b.rank(j) {
                        for r in 0..rc {
                            let ab_idx = inner.offset + p * b.rank(j) + q;
                            let src = outer.offset + ab_idx * rc + r;
                            let bc_idx = l_bc.index(n - i, j, q, r);
                            let dst = l_right.index(n, i, p, bc_idx);
                            m.set(dst, src, 1.into());
                        }
                    }
                }
            }
        }
        m
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_laws_are_literal() {
        let x = Complex::new(
            -1,
            vec![1, 2, 1],
            vec![
                IntMatrix::from_i64_rows(&[[2], [0]]),
                IntMatrix::from_i64_rows(&[[0, 1]]),
            ],
        )
        .unwrap();
        assert_eq!(tensor(&Complex::unit(), &x), x);
        assert_eq!(tensor(&x, &Complex::unit()), x);
        assert_eq!(tensor(&Complex::t(), &x), x.shift());
    }

    #[test]
    fn small_examples() {
        assert_eq!(tensor(&Complex::t(), &Complex::t()), Complex::sphere(-2));
        assert_eq!(tensor(&Complex::c(), &Complex::sphere(0)), Complex::c());
        assert!(tensor(&Complex::zero(), &Complex::c()).is_zero());
        let cc = tensor(&Complex::c(), &Complex::c());
        assert_eq!(
            cc.ranks().into_iter().collect::<Vec<_>>(),
            vec![(-2, 1), (-1, 2), (0, 1)]
        );
        assert!(cc.validate().is_ok());
    }

    #[test]
    fn c_tensor_x_is_block_cone_object() {
        let x = Complex::elementary(0, 3);
        let cx = tensor(&Complex::c(), &x);
        // degree 0: (x^0, x^1) -> degree 1: (x^1, x^2)
        assert_eq!(&*cx.d(0), &IntMatrix::from_i64_rows(&[[3, 1]]));
        assert_eq!(&*cx.d(-1), &IntMatrix::from_i64_rows(&[[1], [-3]]));
    }

    #[test]
    fn associator_is_chain_iso() {
        let a = Complex::c();
        let b = Complex::elementary(0, 2);
        let c = Complex::disk(1).direct_sum(&Complex::sphere(0));
        let phi = associator(&a, &b, &c);
        assert!(phi.validate().is_ok());
        assert!(phi.is_iso());
    }
}
