use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex_core::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::zlinalg::{kernel_basis, unimodular_inverse, IntMatrix};

/// `x ≅ im(e) ⊕ ker(e)` for a strict idempotent `e`.
#[derive(Clone, Debug)]
pub struct IdempotentSplitting {
    pub image: Complex,
    pub kernel: Complex,
    /// `im(e) ⊕ ker(e) -> x`
    pub iso: ChainMap,
    /// `x -> im(e) ⊕ ker(e)`
    pub inverse: ChainMap,
}

impl IdempotentSplitting {
    /// `iso` is a chain isomorphism inverse to `inverse`.
    pub fn verify(&self) -> bool {
        self.iso.validate().is_ok()
            && self.inverse.validate().is_ok()
            && self.iso.is_iso()
            && self.inverse.after(&self.iso).ok() == Some(ChainMap::identity(self.iso.source()))
            && self.iso.after(&self.inverse).ok() == Some(ChainMap::identity(self.iso.target()))
    }
}

pub fn split_idempotent(e: &ChainMap) -> Result<IdempotentSplitting> {
    let x = e.source();
    if e.target() != x {
        return Err(Error::Mismatch("an idempotent must be an endomorphism".into()));
    }
    e.validate()?;
    for n in x.degrees() {
        let en = e.get(n);
        if &*en * &*en != *en {
            return Err(Error::NotIdempotent(n));
        }
    }
    // per degree: P = [ker(1 - e) | ker(e)] is unimodular because
    // x^n = im(e^n) ⊕ ker(e^n) for an idempotent
    let mut p = BTreeMap::new();
    let mut p_inv = BTreeMap::new();
    let mut split = BTreeMap::new();
    for n in x.degrees() {
        let en = e.get(n);
        let r = x.rank(n);
        let im = kernel_basis(&(&IntMatrix::identity(r) - &*en));
        let ker = kernel_basis(&en);
        let m = IntMatrix::hstack(r, &[&im, &ker]);
        let inv = unimodular_inverse(&m).expect("idempotents split over Z");
        split.insert(n, im.cols());
        p.insert(n, m);
        p_inv.insert(n, inv);
    }
    let (lo, hi) = x.support().unwrap_or((0, -1));
    let a = |n: i64| split.get(&n).copied().unwrap_or(0);
    let conj = |n: i64| &(&p_inv[&(n + 1)] * &*x.d(n)) * &p[&n];
    let image = Complex::from_fn(lo, hi, a, |n| conj(n).submatrix(0, 0, a(n + 1), a(n)));
    let kernel = Complex::from_fn(
        lo,
        hi,
        |n| x.rank(n) - a(n),
        |n| {
            let c = conj(n);
            c.submatrix(a(n + 1), a(n), c.rows() - a(n + 1), c.cols() - a(n))
        },
    );
    let sum = Arc::new(image.direct_sum(&kernel));
    let xa = e.source_arc();
    let iso = ChainMap::from_fn(sum.clone(), xa.clone(), |n| p[&n].clone());
    let inverse = ChainMap::from_fn(xa, sum, |n| p_inv[&n].clone());
    Ok(IdempotentSplitting {
        image,
        kernel,
        iso,
        inverse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_core::biproduct;

    #[test]
    fn trivial_idempotents() {
        let x = Complex::elementary(0, 2).direct_sum(&Complex::sphere(1));
        let s = split_idempotent(&ChainMap::identity(&x)).unwrap();
        assert_eq!(s.image, x);
        assert!(s.kernel.is_zero());
        assert!(s.verify());
        let s = split_idempotent(&ChainMap::zero(&x, &x)).unwrap();
        assert!(s.image.is_zero());
        assert_eq!(s.kernel, x);
        assert!(s.verify());
    }

    #[test]
    fn projection_onto_summand() {
        let (x, y) = (Complex::disk(1), Complex::sphere(0));
        let b = biproduct(&x, &y);
        let e = b.in_left.after(&b.pr_left).unwrap();
        let s = split_idempotent(&e).unwrap();
        assert_eq!(s.image.ranks(), x.ranks());
        assert_eq!(s.kernel.ranks(), y.ranks());
        assert!(s.verify());
    }

    #[test]
    fn non_idempotent_is_rejected() {
        let x = Complex::sphere(0);
        let two = ChainMap::identity(&x).scale(&2.into());
        assert!(matches!(split_idempotent(&two), Err(Error::NotIdempotent(0))));
    }
}
