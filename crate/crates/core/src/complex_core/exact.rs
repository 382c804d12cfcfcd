use std::collections::BTreeMap;
use std::sync::Arc;

use super::{tensor, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::zlinalg::{kernel_basis, left_inverse, right_inverse, smith_normal_form, unimodular_inverse, IntMatrix};

fn span(a: &Complex, b: &Complex) -> std::ops::Range<i64> {
    let (x, y) = (a.degrees(), b.degrees());
    match (a.is_zero(), b.is_zero()) {
        (true, true) => 0..0,
        (true, false) => y,
        (false, true) => x,
        (false, false) => x.start.min(y.start)..x.end.max(y.end),
    }
}

/// Degreewise retractions `r^n` with `r^n f^n = id` when every `f^n` is a
/// split monomorphism over Z. The retractions need not commute with `d`.
pub fn split_mono_witness(f: &ChainMap) -> Option<BTreeMap<i64, IntMatrix>> {
    let mut out = BTreeMap::new();
    for n in span(f.source(), f.target()) {
        if f.source().rank(n) == 0 {
            continue;
        }
        out.insert(n, left_inverse(&f.get(n))?);
    }
    Some(out)
}

/// Degreewise sections `s^n` with `f^n s^n = id` when every `f^n` is a
/// split epimorphism over Z.
pub fn split_epi_witness(f: &ChainMap) -> Option<BTreeMap<i64, IntMatrix>> {
    let mut out = BTreeMap::new();
    for n in span(f.source(), f.target()) {
        if f.target().rank(n) == 0 {
            continue;
        }
        out.insert(n, right_inverse(&f.get(n))?);
    }
    Some(out)
}

/// A degreewise split short exact sequence `x ↣ y ↠ z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflation {
    i: ChainMap,
    p: ChainMap,
    retractions: BTreeMap<i64, IntMatrix>,
    sections: BTreeMap<i64, IntMatrix>,
}

impl Conflation {
    /// Computes splitting witnesses and validates exactness in every degree.
    pub fn new(i: ChainMap, p: ChainMap) -> Result<Self> {
        if i.target() != p.source() {
            return Err(Error::Mismatch("inflation target differs from deflation source".into()));
        }
        i.validate()?;
        p.validate()?;
        let retractions = split_mono_witness(&i).ok_or_else(|| Error::Conflation {
            degree: first_failure(&i, true),
            detail: "inflation is not a degreewise split monomorphism".into(),
        })?;
        let sections = split_epi_witness(&p).ok_or_else(|| Error::Conflation {
            degree: first_failure(&p, false),
            detail: "deflation is not a degreewise split epimorphism".into(),
        })?;
        let c = Self {
            i,
            p,
            retractions,
            sections,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn inflation(&self) -> &ChainMap {
        &self.i
    }

    pub fn deflation(&self) -> &ChainMap {
        &self.p
    }

    pub fn retractions(&self) -> &BTreeMap<i64, IntMatrix> {
        &self.retractions
    }

    pub fn sections(&self) -> &BTreeMap<i64, IntMatrix> {
        &self.sections
    }

    pub fn left(&self) -> &Complex {
        self.i.source()
    }

    pub fn middle(&self) -> &Complex {
        self.i.target()
    }

    pub fn right(&self) -> &Complex {
        self.p.target()
    }

    /// Re-checks the stored witnesses: `r i = 1`, `p s = 1`, `p i = 0` and
    /// `rank y = rank x + rank z`, which together give split exactness.
    pub fn validate(&self) -> Result<()> {
        let (x, y, z) = (self.left(), self.middle(), self.right());
        for n in span(&x.direct_sum(z), y) {
            let fail = |detail: &str| Error::Conflation {
                degree: n,
                detail: detail.into(),
            };
            if y.rank(n) != x.rank(n) + z.rank(n) {
                return Err(fail("ranks are not additive"));
            }
            let (i, p) = (self.i.get(n), self.p.get(n));
            if !(&*p * &*i).is_zero() {
                return Err(fail("the composite p i is nonzero"));
            }
            if x.rank(n) > 0 {
                let r = self.retractions.get(&n).ok_or_else(|| fail("missing retraction"))?;
                if !(r * &*i).is_identity() {
                    return Err(fail("retraction does not split the inflation"));
                }
            }
            if z.rank(n) > 0 {
                let s = self.sections.get(&n).ok_or_else(|| fail("missing section"))?;
                if !(&*p * s).is_identity() {
                    return Err(fail("section does not split the deflation"));
                }
            }
        }
        Ok(())
    }
}

fn first_failure(f: &ChainMap, mono: bool) -> i64 {
    span(f.source(), f.target())
        .find(|&n| {
            let m = f.get(n);
            if mono {
                f.source().rank(n) > 0 && left_inverse(&m).is_none()
            } else {
                f.target().rank(n) > 0 && right_inverse(&m).is_none()
            }
        })
        .unwrap_or(0)
}

/// `1 ↣ C ↠ T`.
pub fn unit_conflation() -> Conflation {
    let (one, c, t) = (Complex::unit(), Complex::c(), Complex::t());
    let i = ChainMap::new(one, c.clone(), BTreeMap::from([(0, IntMatrix::identity(1))])).expect("chain map");
    let p = ChainMap::new(c, t, BTreeMap::from([(-1, IntMatrix::identity(1))])).expect("chain map");
    Conflation::new(i, p).expect("split exact")
}

/// The inclusion `x ↣ Cx` onto the first block `(x^n, x^{n+1})`.
pub fn cone_inclusion(x: &Arc<Complex>, cx: &Arc<Complex>) -> ChainMap {
    ChainMap::from_fn(x.clone(), cx.clone(), |n| {
        IntMatrix::vstack(
            x.rank(n),
            &[
                &IntMatrix::identity(x.rank(n)),
                &IntMatrix::zeros(x.rank(n + 1), x.rank(n)),
            ],
        )
    })
}

/// `Cx = C ⊗ x` with its conflation `x ↣ Cx ↠ Tx`.
pub fn cone_object(x: &Complex) -> (Complex, Conflation) {
    let xa = Arc::new(x.clone());
    let cx = Arc::new(tensor(&Complex::c(), x));
    let tx = Arc::new(x.shift());
    let i = cone_inclusion(&xa, &cx);
    let p = ChainMap::from_fn(cx.clone(), tx, |n| {
        let (a, b) = (x.rank(n), x.rank(n + 1));
        IntMatrix::hstack(b, &[&IntMatrix::zeros(b, a), &IntMatrix::identity(b)])
    });
    let conf = Conflation::new(i, p).expect("x -> Cx -> Tx is split exact");
    ((*cx).clone(), conf)
}

/// `x ⊕ y` with its injections and projections.
#[derive(Clone, Debug)]
pub struct Biproduct {
    pub sum: Arc<Complex>,
    pub in_left: ChainMap,
    pub in_right: ChainMap,
    pub pr_left: ChainMap,
    pub pr_right: ChainMap,
}

pub fn biproduct(x: &Complex, y: &Complex) -> Biproduct {
    let (xa, ya) = (Arc::new(x.clone()), Arc::new(y.clone()));
    let sum = Arc::new(x.direct_sum(y));
    let blocks = |n: i64, first: bool| {
        let (a, b) = (x.rank(n), y.rank(n));
        if first {
            IntMatrix::vstack(a, &[&IntMatrix::identity(a), &IntMatrix::zeros(b, a)])
        } else {
            IntMatrix::vstack(b, &[&IntMatrix::zeros(a, b), &IntMatrix::identity(b)])
        }
    };
    let in_left = ChainMap::from_fn(xa.clone(), sum.clone(), |n| blocks(n, true));
    let in_right = ChainMap::from_fn(ya.clone(), sum.clone(), |n| blocks(n, false));
    let pr_left = ChainMap::from_fn(sum.clone(), xa, |n| blocks(n, true).transpose());
    let pr_right = ChainMap::from_fn(sum.clone(), ya, |n| blocks(n, false).transpose());
    Biproduct {
        sum,
        in_left,
        in_right,
        pr_left,
        pr_right,
    }
}

/// `(u v) : x ⊕ y -> t`
pub fn copair(u: &ChainMap, v: &ChainMap) -> Result<ChainMap> {
    if u.target() != v.target() {
        return Err(Error::Mismatch("copair: targets differ".into()));
    }
    let s = Arc::new(u.source().direct_sum(v.source()));
    let t = u.target_arc();
    Ok(ChainMap::from_fn(s, t.clone(), |n| {
        IntMatrix::hstack(t.rank(n), &[&u.get(n), &v.get(n)])
    }))
}

/// `(u; v) : t -> x ⊕ y`
pub fn pair(u: &ChainMap, v: &ChainMap) -> Result<ChainMap> {
    if u.source() != v.source() {
        return Err(Error::Mismatch("pair: sources differ".into()));
    }
    let s = u.source_arc();
    let t = Arc::new(u.target().direct_sum(v.target()));
    Ok(ChainMap::from_fn(s.clone(), t, |n| {
        IntMatrix::vstack(s.rank(n), &[&u.get(n), &v.get(n)])
    }))
}

/// Pushout `w = y ⊔_x z` of an inflation `i: x ↣ y` along `f: x -> z`.
///
/// Degreewise `w^n = coker(x^n -> y^n ⊕ z^n, a ↦ (i a, -f a))`; the
/// quotient `q` and a section `σ` of it come from one Smith decomposition.
#[derive(Clone, Debug)]
pub struct Pushout {
    object: Arc<Complex>,
    from_y: ChainMap,
    from_z: ChainMap,
    sections: BTreeMap<i64, IntMatrix>,
    y: Arc<Complex>,
    z: Arc<Complex>,
    inflation_witness: BTreeMap<i64, IntMatrix>,
}

impl Pushout {
    pub fn object(&self) -> &Complex {
        &self.object
    }

    pub fn object_arc(&self) -> Arc<Complex> {
        self.object.clone()
    }

    /// `y -> w`
    pub fn from_y(&self) -> &ChainMap {
        &self.from_y
    }

    /// `z -> w`, again an inflation.
    pub fn from_z(&self) -> &ChainMap {
        &self.from_z
    }

    /// Degreewise retractions of `z -> w`.
    pub fn inflation_witness(&self) -> &BTreeMap<i64, IntMatrix> {
        &self.inflation_witness
    }

    /// The unique `w -> t` restricting to `u` on `y` and `v` on `z`; errors
    /// when `u i != v f`.
    pub fn factor(&self, i: &ChainMap, f: &ChainMap, u: &ChainMap, v: &ChainMap) -> Result<ChainMap> {
        if u.source() != &*self.y || v.source() != &*self.z || u.target() != v.target() {
            return Err(Error::Mismatch("cocone legs do not match the span".into()));
        }
        if u.after(i)? != v.after(f)? {
            return Err(Error::Mismatch("cocone does not commute with the span".into()));
        }
        let t = u.target_arc();
        Ok(ChainMap::from_fn(self.object.clone(), t.clone(), |n| {
            let uv = IntMatrix::hstack(t.rank(n), &[&u.get(n), &v.get(n)]);
            match self.sections.get(&n) {
                Some(s) => &uv * s,
                None => IntMatrix::zeros(t.rank(n), 0),
            }
        }))
    }
}

pub fn pushout_along_inflation(i: &ChainMap, f: &ChainMap) -> Result<Pushout> {
    if i.source() != f.source() {
        return Err(Error::Mismatch("pushout legs have different sources".into()));
    }
    if split_mono_witness(i).is_none() {
        return Err(Error::NotSplitMono(first_failure(i, true)));
    }
    let (x, y, z) = (i.source_arc(), i.target_arc(), f.target_arc());
    let range = span(&y, &z);
    // per degree: quotient q (w^n x (y^n + z^n)) and section σ
    let mut quot = BTreeMap::new();
    let mut sect = BTreeMap::new();
    let mut ranks = BTreeMap::new();
    for n in range.clone() {
        let (rx, ry, rz) = (x.rank(n), y.rank(n), z.rank(n));
        let m = IntMatrix::vstack(rx, &[&i.get(n), &-&*f.get(n)]);
        let snf = smith_normal_form(&m);
        debug_assert_eq!(snf.rank, rx);
        let rw = ry + rz - rx;
        quot.insert(n, snf.u.submatrix(rx, 0, rw, ry + rz));
        sect.insert(n, snf.u_inv.submatrix(0, rx, ry + rz, rw));
        ranks.insert(n, rw);
    }
    let lo = range.start;
    let hi = range.end - 1;
    let object = Arc::new(Complex::from_fn(
        lo,
        hi,
        |n| ranks.get(&n).copied().unwrap_or(0),
        |n| {
            let d = IntMatrix::block_diag(&[&y.d(n), &z.d(n)]);
            &(&quot[&(n + 1)] * &d) * &sect[&n]
        },
    ));
    let q_of = |n: i64| quot.get(&n).cloned();
    let from_y = ChainMap::from_fn(y.clone(), object.clone(), |n| match q_of(n) {
        Some(q) => q.submatrix(0, 0, q.rows(), y.rank(n)),
        None => IntMatrix::zeros(object.rank(n), y.rank(n)),
    });
    let from_z = ChainMap::from_fn(z.clone(), object.clone(), |n| match q_of(n) {
        Some(q) => q.submatrix(0, y.rank(n), q.rows(), z.rank(n)),
        None => IntMatrix::zeros(object.rank(n), z.rank(n)),
    });
    let inflation_witness = split_mono_witness(&from_z).ok_or(Error::NotSplitMono(first_failure(&from_z, true)))?;
    // drop sections in degrees where the trimmed object is empty
    let sections = sect.into_iter().filter(|(n, _)| object.rank(*n) > 0).collect();
    Ok(Pushout {
        object,
        from_y,
        from_z,
        sections,
        y,
        z,
        inflation_witness,
    })
}

/// Pullback `y ×_x z` of a deflation `p: y ↠ x` along `f: z -> x`.
///
/// Degreewise the kernel of `(p, -f) : y^n ⊕ z^n -> x^n`, which is a
/// saturated sublattice because `p` splits.
#[derive(Clone, Debug)]
pub struct Pullback {
    object: Arc<Complex>,
    to_y: ChainMap,
    to_z: ChainMap,
    retractions: BTreeMap<i64, IntMatrix>,
    y: Arc<Complex>,
    z: Arc<Complex>,
    deflation_witness: BTreeMap<i64, IntMatrix>,
}

impl Pullback {
    pub fn object(&self) -> &Complex {
        &self.object
    }

    pub fn object_arc(&self) -> Arc<Complex> {
        self.object.clone()
    }

    /// `P -> y`
    pub fn to_y(&self) -> &ChainMap {
        &self.to_y
    }

    /// `P -> z`, again a deflation.
    pub fn to_z(&self) -> &ChainMap {
        &self.to_z
    }

    pub fn deflation_witness(&self) -> &BTreeMap<i64, IntMatrix> {
        &self.deflation_witness
    }

    /// The unique `t -> P` with components `u` and `v`; errors when
    /// `p u != f v`.
    pub fn factor(&self, p: &ChainMap, f: &ChainMap, u: &ChainMap, v: &ChainMap) -> Result<ChainMap> {
        if u.target() != &*self.y || v.target() != &*self.z || u.source() != v.source() {
            return Err(Error::Mismatch("cone legs do not match the cospan".into()));
        }
        if p.after(u)? != f.after(v)? {
            return Err(Error::Mismatch("cone does not commute with the cospan".into()));
        }
        let t = u.source_arc();
        Ok(ChainMap::from_fn(t.clone(), self.object.clone(), |n| {
            let uv = IntMatrix::vstack(t.rank(n), &[&u.get(n), &v.get(n)]);
            match self.retractions.get(&n) {
                Some(r) => r * &uv,
                None => IntMatrix::zeros(0, t.rank(n)),
            }
        }))
    }
}

pub fn pullback_along_deflation(p: &ChainMap, f: &ChainMap) -> Result<Pullback> {
    if p.target() != f.target() {
        return Err(Error::Mismatch("pullback legs have different targets".into()));
    }
    if split_epi_witness(p).is_none() {
        return Err(Error::NotSplitEpi(first_failure(p, false)));
    }
    let (y, z) = (p.source_arc(), f.source_arc());
    let range = span(&y, &z);
    let mut incl = BTreeMap::new();
    let mut retr = BTreeMap::new();
    for n in range.clone() {
        let m = IntMatrix::hstack(p.target().rank(n), &[&p.get(n), &-&*f.get(n)]);
        let k = kernel_basis(&m);
        let r = left_inverse(&k).expect("kernel lattices are saturated");
        incl.insert(n, k);
        retr.insert(n, r);
    }
    let object = Arc::new(Complex::from_fn(
        range.start,
        range.end - 1,
        |n| incl.get(&n).map_or(0, IntMatrix::cols),
        |n| {
            let d = IntMatrix::block_diag(&[&y.d(n), &z.d(n)]);
            &(&retr[&(n + 1)] * &d) * &incl[&n]
        },
    ));
    let to_y = ChainMap::from_fn(object.clone(), y.clone(), |n| match incl.get(&n) {
        Some(k) => k.submatrix(0, 0, y.rank(n), k.cols()),
        None => IntMatrix::zeros(y.rank(n), 0),
    });
    let to_z = ChainMap::from_fn(object.clone(), z.clone(), |n| match incl.get(&n) {
        Some(k) => k.submatrix(y.rank(n), 0, z.rank(n), k.cols()),
        None => IntMatrix::zeros(z.rank(n), 0),
    });
    let deflation_witness = split_epi_witness(&to_z).ok_or(Error::NotSplitEpi(first_failure(&to_z, false)))?;
    let retractions = retr.into_iter().filter(|(n, _)| object.rank(*n) > 0).collect();
    Ok(Pullback {
        object,
        to_y,
        to_z,
        retractions,
        y,
        z,
        deflation_witness,
    })
}

/// Degreewise change of basis `P^n` turned into a chain isomorphism
/// `x -> P x P^{-1}`, returning the conjugated complex and the map.
pub fn conjugate(x: &Complex, basis: &BTreeMap<i64, IntMatrix>) -> Result<(Complex, ChainMap)> {
    let mut inv = BTreeMap::new();
    for (&n, p) in basis {
        if p.shape() != (x.rank(n), x.rank(n)) {
            return Err(Error::Shape {
                degree: n,
                detail: "change of basis has the wrong size".into(),
            });
        }
        inv.insert(
            n,
            unimodular_inverse(p).ok_or_else(|| Error::Shape {
                degree: n,
                detail: "change of basis is not unimodular".into(),
            })?,
        );
    }
    let get =
        |m: &BTreeMap<i64, IntMatrix>, n: i64| m.get(&n).cloned().unwrap_or_else(|| IntMatrix::identity(x.rank(n)));
    let Some((lo, hi)) = x.support() else {
        return Ok((Complex::zero(), ChainMap::identity(x)));
    };
    let y = Complex::from_fn(
        lo,
        hi,
        |n| x.rank(n),
        |n| &(&get(basis, n + 1) * &x.d(n)) * &get(&inv, n),
    );
    let xa = Arc::new(x.clone());
    let ya = Arc::new(y.clone());
    let f = ChainMap::from_fn(xa, ya, |n| get(basis, n));
    Ok((y, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_conflation_rows() {
        let c = unit_conflation();
        assert!(c.validate().is_ok());
        assert_eq!(c.middle(), &Complex::c());
        assert_eq!(c.right(), &Complex::t());
    }

    #[test]
    fn cone_object_of_unit_is_c() {
        let (cx, conf) = cone_object(&Complex::unit());
        assert_eq!(cx, Complex::c());
        assert!(conf.validate().is_ok());
        let (_, conf) = cone_object(&Complex::sphere(0));
        assert_eq!(conf.right(), &Complex::sphere(-1));
    }

    #[test]
    fn split_witnesses() {
        let s = Complex::sphere(0);
        let id = ChainMap::identity(&s);
        assert_eq!(split_mono_witness(&id).unwrap()[&0], IntMatrix::identity(1));
        assert!(split_mono_witness(&id.scale(&2.into())).is_none());
        let b = biproduct(&s, &Complex::disk(1));
        let r = split_mono_witness(&b.in_left).unwrap();
        assert_eq!(r[&0], IntMatrix::from_i64_rows(&[[1, 0]]));
    }

    #[test]
    fn non_split_conflation_is_rejected() {
        let s = Complex::sphere(0);
        let two = ChainMap::identity(&s).scale(&2.into());
        let zero = ChainMap::to_zero(&s);
        assert!(matches!(Conflation::new(two, zero), Err(Error::Conflation { .. })));
    }

    #[test]
    fn pushout_of_unit_inflation_along_identity_is_c() {
        let conf = unit_conflation();
        let i = conf.inflation();
        let id = ChainMap::identity(i.source());
        let po = pushout_along_inflation(i, &id).unwrap();
        assert!(po.from_y().is_iso());
        assert_eq!(po.object().ranks(), Complex::c().ranks());
    }

    #[test]
    fn pushout_along_zero_map() {
        // x ↣ x ⊕ y along x -> 0 gives y
        let (x, y) = (Complex::sphere(0), Complex::disk(2));
        let b = biproduct(&x, &y);
        let f = ChainMap::to_zero(&x);
        let po = pushout_along_inflation(&b.in_left, &f).unwrap();
        assert_eq!(po.object().ranks(), y.ranks());
        let u = b.pr_right.clone();
        let v = ChainMap::from_zero(&y);
        let g = po.factor(&b.in_left, &f, &u, &v).unwrap();
        assert_eq!(g.after(po.from_y()).unwrap(), u);
        assert!(g.is_iso());
    }

    #[test]
    fn pullback_along_identity() {
        let x = Complex::elementary(0, 2);
        let id = ChainMap::identity(&x);
        let f = ChainMap::identity(&x).scale(&3.into());
        let pb = pullback_along_deflation(&id, &f).unwrap();
        assert!(pb.to_z().is_iso());
        assert_eq!(pb.object().ranks(), x.ranks());
    }

    #[test]
    fn pullback_of_projection_along_zero() {
        let (x, y) = (Complex::sphere(0), Complex::disk(1));
        let b = biproduct(&x, &y);
        let f = ChainMap::zero(&y, &x);
        let pb = pullback_along_deflation(&b.pr_left, &f).unwrap();
        // y ×_x (x ⊕ y) over the zero map is y ⊕ y
        assert_eq!(pb.object().total_rank(), 4);
        assert!(pb.object().validate().is_ok());
    }
}
