use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex_core::{ChainMap, Complex, Conflation};
use crate::zlinalg::{image_basis_from, left_inverse, smith_normal_form, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TruncationKind {
    /// `σ^{≥k}`: degrees `≥ k` verbatim.
    BrutalGe,
    /// `σ^{<k} = x / σ^{≥k}x`.
    BrutalLt,
    /// `τ^{≥k}`: `im d^{k-1}` in degree `k - 1`, then `x^k, x^{k+1}, ...`.
    SmartGe,
    /// `τ^{<k}`: the kernel of `x -> τ^{≥k}x`.
    SmartLt,
}

impl TruncationKind {
    pub const ALL: [TruncationKind; 4] = [
        TruncationKind::BrutalGe,
        TruncationKind::BrutalLt,
        TruncationKind::SmartGe,
        TruncationKind::SmartLt,
    ];
}

/// A truncated complex and its comparison map with `x`: an inclusion into
/// `x` for `BrutalGe` and `SmartLt`, a quotient from `x` otherwise.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub kind: TruncationKind,
    pub complex: Arc<Complex>,
    pub map: ChainMap,
}

fn restrict(x: &Complex, lo: i64, hi: i64) -> Complex {
    Complex::from_fn(lo, hi, |n| x.rank(n), |n| x.d(n).into_owned())
}

fn window(x: &Complex) -> (i64, i64) {
    x.support().unwrap_or((0, -1))
}

pub fn truncate(x: &Complex, k: i64, kind: TruncationKind) -> Truncation {
    let xa = Arc::new(x.clone());
    let (lo, hi) = window(x);
    match kind {
        TruncationKind::BrutalGe => {
            let t = Arc::new(restrict(x, k.max(lo), hi));
            let map = ChainMap::from_fn(t.clone(), xa, |n| IntMatrix::identity(t.rank(n)));
            Truncation { kind, complex: t, map }
        }
        TruncationKind::BrutalLt => {
            let t = Arc::new(restrict(x, lo, (k - 1).min(hi)));
            let map = ChainMap::from_fn(xa, t.clone(), |n| IntMatrix::identity(t.rank(n)));
            Truncation { kind, complex: t, map }
        }
        TruncationKind::SmartGe => {
            let snf = smith_normal_form(&x.d(k - 1));
            let r = snf.rank;
            // d^{k-1} = B q with B a basis of the image lattice
            let b = image_basis_from(&snf, x.rank(k));
            let q = snf.v_inv.submatrix(0, 0, r, x.rank(k - 1));
            let rank = |n: i64| {
                if n == k - 1 {
                    r
                } else if n >= k {
                    x.rank(n)
                } else {
                    0
                }
            };
            let t = Arc::new(Complex::from_fn(k - 1, hi.max(k - 1), rank, |n| {
                if n == k - 1 {
                    b.clone()
                } else {
                    x.d(n).into_owned()
                }
            }));
            let map = ChainMap::from_fn(xa, t.clone(), |n| {
                if n == k - 1 {
                    q.clone()
                } else {
                    IntMatrix::identity(t.rank(n))
                }
            });
            Truncation { kind, complex: t, map }
        }
        TruncationKind::SmartLt => {
            let snf = smith_normal_form(&x.d(k - 1));
            let r = snf.rank;
            let m = x.rank(k - 1);
            let kernel = snf.v.submatrix(0, r, m, m - r);
            let coords = snf.v_inv.submatrix(r, 0, m - r, m);
            let rank = |n: i64| {
                if n == k - 1 {
                    m - r
                } else if n < k - 1 {
                    x.rank(n)
                } else {
                    0
                }
            };
            let t = Arc::new(Complex::from_fn(lo.min(k - 1), k - 1, rank, |n| {
                if n == k - 2 {
                    &coords * &*x.d(n)
                } else {
                    x.d(n).into_owned()
                }
            }));
            let map = ChainMap::from_fn(t.clone(), xa, |n| {
                if n == k - 1 {
                    kernel.clone()
                } else {
                    IntMatrix::identity(t.rank(n))
                }
            });
            debug_assert!(left_inverse(&kernel).is_some());
            Truncation { kind, complex: t, map }
        }
    }
}

/// `σ^{≥k}x ↣ x ↠ σ^{<k}x`
pub fn brutal_conflation(x: &Complex, k: i64) -> Conflation {
    let ge = truncate(x, k, TruncationKind::BrutalGe);
    let lt = truncate(x, k, TruncationKind::BrutalLt);
    Conflation::new(ge.map, lt.map).expect("brutal truncations split degreewise")
}

/// `τ^{<k}x ↣ x ↠ τ^{≥k}x`; degreewise split because `im d^{k-1}` is free.
pub fn smart_conflation(x: &Complex, k: i64) -> Conflation {
    let lt = truncate(x, k, TruncationKind::SmartLt);
    let ge = truncate(x, k, TruncationKind::SmartGe);
    Conflation::new(lt.map, ge.map).expect("smart truncations split degreewise")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::homology;

    fn sample() -> Complex {
        Complex::new(
            0,
            vec![2, 2, 1],
            vec![
                IntMatrix::from_i64_rows(&[[2, 4], [0, 0]]),
                IntMatrix::from_i64_rows(&[[0, 3]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn outside_support() {
        let x = sample();
        assert_eq!(&*truncate(&x, -3, TruncationKind::BrutalGe).complex, &x);
        assert_eq!(&*truncate(&x, -3, TruncationKind::SmartGe).complex, &x);
        assert!(truncate(&x, 9, TruncationKind::BrutalGe).complex.is_zero());
        assert!(truncate(&x, 9, TruncationKind::SmartGe).complex.is_zero());
        assert!(truncate(&x, -3, TruncationKind::SmartLt).complex.is_zero());
        assert_eq!(&*truncate(&x, 9, TruncationKind::SmartLt).complex, &x);
    }

    #[test]
    fn smart_truncation_homology() {
        let x = sample();
        let hx = homology(&x);
        for k in -1..=4 {
            let t = truncate(&x, k, TruncationKind::SmartGe);
            assert!(t.map.validate().is_ok());
            let ht = homology(&t.complex);
            for n in -2..=4 {
                if n >= k {
                    assert_eq!(ht.normal_form(n), hx.normal_form(n), "k={k} n={n}");
                } else {
                    assert!(ht.normal_form(n).is_trivial(), "k={k} n={n}");
                }
            }
            assert!(smart_conflation(&x, k).validate().is_ok());
            assert!(brutal_conflation(&x, k).validate().is_ok());
        }
    }
}
