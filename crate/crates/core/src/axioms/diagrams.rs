use std::sync::Arc;

use super::report::Diagram;
use super::sample::Gen;
use crate::complex_core::{ChainMap, Complex, Conflation};
use crate::frobenius::cone;
use crate::zlinalg::IntMatrix;

/// A direct sum with its summands, for assembling block maps.
pub(crate) struct Sum {
    pub object: Arc<Complex>,
    parts: Vec<Arc<Complex>>,
}

impl Sum {
    pub fn new(parts: &[&Arc<Complex>]) -> Self {
        if let [one] = parts {
            return Self {
                object: (*one).clone(),
                parts: vec![(*one).clone()],
            };
        }
        let object = parts.iter().fold(Complex::zero(), |acc, p| acc.direct_sum(p));
        Self {
            object: Arc::new(object),
            parts: parts.iter().map(|p| (*p).clone()).collect(),
        }
    }

    fn offset(&self, n: i64, k: usize) -> usize {
        self.parts[..k].iter().map(|p| p.rank(n)).sum()
    }
}

/// The chain map `src -> tgt` with the given `(row, col)` blocks.
pub(crate) fn blocks(src: &Sum, tgt: &Sum, entries: &[(usize, usize, &ChainMap)]) -> ChainMap {
    ChainMap::from_fn(src.object.clone(), tgt.object.clone(), |n| {
        let mut m = IntMatrix::zeros(tgt.object.rank(n), src.object.rank(n));
        for (r, c, f) in entries {
            let b = f.get(n);
            if !b.is_empty() {
                m.set_block(tgt.offset(n, *r), src.offset(n, *c), &b);
            }
        }
        m
    })
}

/// `T^k f`, with components `f^{n+k}`.
pub(crate) fn shift_map(f: &ChainMap, k: i64) -> ChainMap {
    let x = Arc::new(f.source().shift_by(k));
    let y = Arc::new(f.target().shift_by(k));
    ChainMap::from_fn(x, y, |n| f.get(n + k).into_owned())
}

fn compose(fs: &[&ChainMap]) -> ChainMap {
    let mut it = fs.iter().rev();
    let first = (*it.next().expect("nonempty")).clone();
    it.fold(first, |acc, f| f.after(&acc).expect("composable"))
}

fn id(x: &Arc<Complex>) -> ChainMap {
    ChainMap::identity_arc(x.clone())
}

/// A morphism of conflations `(a, b, c)` from `x ↣ y ↠ z` to
/// `x' ↣ y' ↠ z'`.
#[derive(Clone, Debug)]
pub struct ConflationMorphism {
    pub top: Conflation,
    pub bottom: Conflation,
    pub a: ChainMap,
    pub b: ChainMap,
    pub c: ChainMap,
}

impl ConflationMorphism {
    /// `b i = i' a` and `p' b = c p`.
    pub fn commutes(&self) -> bool {
        let left = self.b.after(self.top.inflation()).ok() == self.bottom.inflation().after(&self.a).ok();
        let right = self.bottom.deflation().after(&self.b).ok() == self.c.after(self.top.deflation()).ok();
        left && right
    }

    pub fn diagram(&self) -> Diagram {
        Diagram::new()
            .map("i", self.top.inflation())
            .map("p", self.top.deflation())
            .map("i'", self.bottom.inflation())
            .map("p'", self.bottom.deflation())
            .map("a", &self.a)
            .map("b", &self.b)
            .map("c", &self.c)
    }
}

/// Both rows are cones `x ↣ Cone(g) ↠ z`; `a` and `c` are sampled first
/// (weak equivalences when asked), the bottom gluing map is a perturbed
/// `a g̃` and the middle map corrects for the perturbation.
pub fn conflation_morphism(g: &mut Gen, we_a: bool, we_c: bool) -> ConflationMorphism {
    let x = g.complex();
    let z = g.complex();
    let (_, a) = g.map_from(&x, we_a);
    let (z2, c) = g.map_from(&z, we_c);
    let gt = g.lattice_map(&z2.shifted(-1), &x);
    let top_glue = gt.after(&shift_map(&c, -1)).expect("composable");
    let (bottom_glue, h) = g.perturb_with(&a.after(&gt).expect("composable"));
    let (c1, c2) = (cone(&top_glue), cone(&bottom_glue));
    // Cone(g)^n = x^n ⊕ z^n; b = [[a, -h c], [0, c]]
    let (xr, x2r) = (x.complex.clone(), a.target_arc());
    let (zr, z2r) = (z.complex.clone(), z2.complex.clone());
    let b = ChainMap::from_fn(c1.cone_arc(), c2.cone_arc(), |n| {
        let hn = h
            .get(&(n + 1))
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(x2r.rank(n), z2r.rank(n)));
        let corner = -&(&hn * &*c.get(n));
        let top = IntMatrix::hstack(x2r.rank(n), &[&a.get(n), &corner]);
        let bottom = IntMatrix::hstack(z2r.rank(n), &[&IntMatrix::zeros(z2r.rank(n), xr.rank(n)), &c.get(n)]);
        IntMatrix::vstack(xr.rank(n) + zr.rank(n), &[&top, &bottom])
    });
    let row = |data: &crate::frobenius::ConeData, z: &Arc<Complex>| {
        let p = data
            .projection()
            .with_ends(data.cone_arc(), z.clone())
            .expect("T T^{-1} z = z");
        (data.inclusion().clone(), p)
    };
    let (i1, p1) = row(&c1, &zr);
    let (i2, p2) = row(&c2, &z2r);
    let (phi, phi_inv) = g.random_automorphism(&c1.cone_arc());
    let (psi, psi_inv) = g.random_automorphism(&c2.cone_arc());
    let top = Conflation::new(
        phi.after(&i1).expect("composable"),
        p1.after(&phi_inv).expect("composable"),
    )
    .expect("cone conflation");
    let bottom = Conflation::new(
        psi.after(&i2).expect("composable"),
        p2.after(&psi_inv).expect("composable"),
    )
    .expect("cone conflation");
    let b = compose(&[&psi, &b, &phi_inv]);
    let out = ConflationMorphism { top, bottom, a, b, c };
    debug_assert!(out.b.validate().is_ok());
    debug_assert!(out.commutes());
    out
}

/// Which kind of horizontal leg `f` a padded square carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leg {
    Any,
    Equivalence,
    /// An inflation for spans, a deflation for cospans.
    Exact,
}

/// A span `y <-i- x -f-> z` with `i` an inflation.
#[derive(Clone, Debug)]
pub struct Span {
    pub i: ChainMap,
    pub f: ChainMap,
}

/// A map of spans `(a, b, c)`: `a: y -> y'`, `b: x -> x'`, `c: z -> z'`.
#[derive(Clone, Debug)]
pub struct SpanMorphism {
    pub top: Span,
    pub bottom: Span,
    pub a: ChainMap,
    pub b: ChainMap,
    pub c: ChainMap,
}

impl SpanMorphism {
    pub fn commutes(&self) -> bool {
        self.a.after(&self.top.i).ok() == self.bottom.i.after(&self.b).ok()
            && self.c.after(&self.top.f).ok() == self.bottom.f.after(&self.b).ok()
    }

    pub fn diagram(&self) -> Diagram {
        Diagram::new()
            .map("i", &self.top.i)
            .map("f", &self.top.f)
            .map("i'", &self.bottom.i)
            .map("f'", &self.bottom.f)
            .map("a", &self.a)
            .map("b", &self.b)
            .map("c", &self.c)
    }
}

/// A span and a padded copy of it: disks are added to every corner, the
/// padded legs mix the disks into the original objects, and the verticals
/// are inclusions of (or projections onto) the original span. Every
/// vertical is a homotopy equivalence; all objects are recoordinatized.
pub fn span_morphism(g: &mut Gen, leg: Leg) -> SpanMorphism {
    let x = g.complex();
    let k = g.complex();
    let i = g.conflation_between(&x, &k).inflation().clone();
    let (z, f) = match leg {
        Leg::Any => {
            let we = g.chance(0.5);
            let (z, f) = g.map_from(&x, we);
            (Some(z), f)
        }
        Leg::Equivalence => {
            let (z, f) = g.we(&x);
            (Some(z), f)
        }
        Leg::Exact => {
            let k = g.complex();
            let i = g.conflation_between(&x, &k).inflation().clone();
            (None, i)
        }
    };
    let (dx, dy, dz0) = (g.contractible(), g.contractible(), g.contractible());
    let inclusion = g.chance(0.5);
    let (ya, za) = (i.target_arc(), f.target_arc());
    let (dz, k1, k2, k3) = match &z {
        None => {
            let dz = dx.direct_sum(&dz0);
            let k2 = blocks(
                &Sum::new(&[&dx.complex]),
                &Sum::new(&[&dx.complex, &dz0.complex]),
                &[(0, 0, &id(&dx.complex))],
            );
            let k2 = k2.with_ends(dx.complex.clone(), dz.complex.clone()).expect("same sum");
            let k1 = ChainMap::zero(&dx.complex, &za);
            let k3 = ChainMap::zero(&x.complex, &dz.complex);
            (dz, k1, k2, k3)
        }
        Some(z) => {
            let k2 = g.lattice_map(&dx, &dz0);
            let (k1, k3) = if inclusion {
                (g.lattice_map(&dx, z), ChainMap::zero(&x.complex, &dz0.complex))
            } else {
                (ChainMap::zero(&dx.complex, &z.complex), g.lattice_map(&x, &dz0))
            };
            (dz0, k1, k2, k3)
        }
    };
    let k1 = k1.with_ends(dx.complex.clone(), za.clone()).expect("same ends");
    let k3 = k3.with_ends(x.complex.clone(), dz.complex.clone()).expect("same ends");
    let xs = Sum::new(&[&x.complex, &dx.complex]);
    let ys = Sum::new(&[&ya, &dx.complex, &dy.complex]);
    let zs = Sum::new(&[&za, &dz.complex]);
    let big_i = blocks(&xs, &ys, &[(0, 0, &i), (1, 1, &id(&dx.complex))]);
    let big_f = blocks(&xs, &zs, &[(0, 0, &f), (0, 1, &k1), (1, 0, &k3), (1, 1, &k2)]);
    let (px, px_inv) = g.random_automorphism(&xs.object);
    let (py, py_inv) = g.random_automorphism(&ys.object);
    let (pz, pz_inv) = g.random_automorphism(&zs.object);
    let padded = Span {
        i: compose(&[&py, &big_i, &px_inv]),
        f: compose(&[&pz, &big_f, &px_inv]),
    };
    let plain = Span { i, f };
    let single = |c: &Arc<Complex>| Sum::new(&[c]);
    let out = if inclusion {
        let b = px
            .after(&blocks(&single(&x.complex), &xs, &[(0, 0, &id(&x.complex))]))
            .expect("composable");
        let a = py
            .after(&blocks(&single(&ya), &ys, &[(0, 0, &id(&ya))]))
            .expect("composable");
        let c = pz
            .after(&blocks(&single(&za), &zs, &[(0, 0, &id(&za))]))
            .expect("composable");
        SpanMorphism {
            top: plain,
            bottom: padded,
            a,
            b,
            c,
        }
    } else {
        let b = blocks(&xs, &single(&x.complex), &[(0, 0, &id(&x.complex))])
            .after(&px_inv)
            .expect("composable");
        let a = blocks(&ys, &single(&ya), &[(0, 0, &id(&ya))])
            .after(&py_inv)
            .expect("composable");
        let c = blocks(&zs, &single(&za), &[(0, 0, &id(&za))])
            .after(&pz_inv)
            .expect("composable");
        SpanMorphism {
            top: padded,
            bottom: plain,
            a,
            b,
            c,
        }
    };
    debug_assert!(out.commutes());
    out
}

/// A cospan `y -p-> x <-f- z` with `p` a deflation.
#[derive(Clone, Debug)]
pub struct Cospan {
    pub p: ChainMap,
    pub f: ChainMap,
}

/// A map of cospans `(a, b, c)`: `a: y -> y'`, `b: x -> x'`, `c: z -> z'`.
#[derive(Clone, Debug)]
pub struct CospanMorphism {
    pub top: Cospan,
    pub bottom: Cospan,
    pub a: ChainMap,
    pub b: ChainMap,
    pub c: ChainMap,
}

impl CospanMorphism {
    pub fn commutes(&self) -> bool {
        self.bottom.p.after(&self.a).ok() == self.b.after(&self.top.p).ok()
            && self.bottom.f.after(&self.c).ok() == self.b.after(&self.top.f).ok()
    }

    pub fn diagram(&self) -> Diagram {
        Diagram::new()
            .map("p", &self.top.p)
            .map("f", &self.top.f)
            .map("p'", &self.bottom.p)
            .map("f'", &self.bottom.f)
            .map("a", &self.a)
            .map("b", &self.b)
            .map("c", &self.c)
    }
}

/// Dual of [`span_morphism`].
pub fn cospan_morphism(g: &mut Gen, leg: Leg) -> CospanMorphism {
    let (x, z, f) = match leg {
        Leg::Equivalence => {
            let z = g.complex();
            let (x, f) = g.we(&z);
            (x, Some(z), f)
        }
        Leg::Any => {
            let x = g.complex();
            let z = g.complex();
            let f = g.lattice_map(&z, &x);
            (x, Some(z), f)
        }
        Leg::Exact => {
            let x = g.complex();
            let k = g.complex();
            let p = g.conflation_between(&k, &x).deflation().clone();
            (x, None, p)
        }
    };
    let k = g.complex();
    let p = g.conflation_between(&k, &x).deflation().clone();
    let (dx, dy, dz0) = (g.contractible(), g.contractible(), g.contractible());
    let inclusion = g.chance(0.5);
    let (ya, za) = (p.source_arc(), f.source_arc());
    let (dz, k1, k2, k3) = match &z {
        None => {
            let dz = dx.direct_sum(&dz0);
            let k2 = blocks(
                &Sum::new(&[&dx.complex, &dz0.complex]),
                &Sum::new(&[&dx.complex]),
                &[(0, 0, &id(&dx.complex))],
            );
            let k2 = k2.with_ends(dz.complex.clone(), dx.complex.clone()).expect("same sum");
            let k1 = ChainMap::zero(&dz.complex, &x.complex);
            let k3 = ChainMap::zero(&za, &dx.complex);
            (dz, k1, k2, k3)
        }
        Some(z) => {
            let k2 = g.lattice_map(&dz0, &dx);
            let (k1, k3) = if inclusion {
                (g.lattice_map(&dz0, &x), ChainMap::zero(&z.complex, &dx.complex))
            } else {
                (ChainMap::zero(&dz0.complex, &x.complex), g.lattice_map(z, &dx))
            };
            (dz0, k1, k2, k3)
        }
    };
    let k1 = k1.with_ends(dz.complex.clone(), x.complex.clone()).expect("same ends");
    let k3 = k3.with_ends(za.clone(), dx.complex.clone()).expect("same ends");
    let xs = Sum::new(&[&x.complex, &dx.complex]);
    let ys = Sum::new(&[&ya, &dx.complex, &dy.complex]);
    let zs = Sum::new(&[&za, &dz.complex]);
    let big_p = blocks(&ys, &xs, &[(0, 0, &p), (1, 1, &id(&dx.complex))]);
    let big_f = blocks(&zs, &xs, &[(0, 0, &f), (0, 1, &k1), (1, 0, &k3), (1, 1, &k2)]);
    let (px, px_inv) = g.random_automorphism(&xs.object);
    let (py, py_inv) = g.random_automorphism(&ys.object);
    let (pz, pz_inv) = g.random_automorphism(&zs.object);
    let padded = Cospan {
        p: compose(&[&px, &big_p, &py_inv]),
        f: compose(&[&px, &big_f, &pz_inv]),
    };
    let plain = Cospan { p, f };
    let single = |c: &Arc<Complex>| Sum::new(&[c]);
    let out = if inclusion {
        let b = px
            .after(&blocks(&single(&x.complex), &xs, &[(0, 0, &id(&x.complex))]))
            .expect("composable");
        let a = py
            .after(&blocks(&single(&ya), &ys, &[(0, 0, &id(&ya))]))
            .expect("composable");
        let c = pz
            .after(&blocks(&single(&za), &zs, &[(0, 0, &id(&za))]))
            .expect("composable");
        CospanMorphism {
            top: plain,
            bottom: padded,
            a,
            b,
            c,
        }
    } else {
        let b = blocks(&xs, &single(&x.complex), &[(0, 0, &id(&x.complex))])
            .after(&px_inv)
            .expect("composable");
        let a = blocks(&ys, &single(&ya), &[(0, 0, &id(&ya))])
            .after(&py_inv)
            .expect("composable");
        let c = blocks(&zs, &single(&za), &[(0, 0, &id(&za))])
            .after(&pz_inv)
            .expect("composable");
        CospanMorphism {
            top: padded,
            bottom: plain,
            a,
            b,
            c,
        }
    };
    debug_assert!(out.commutes());
    out
}

/// `x -i-> y -p-> x` and `x' -> y' -> x'` with `p i = 1`, `p' i' = 1`,
/// and `b: y -> y'` compatible with `a: x -> x'` on both sides.
#[derive(Clone, Debug)]
pub struct RetractDiagram {
    pub i: ChainMap,
    pub p: ChainMap,
    pub i2: ChainMap,
    pub p2: ChainMap,
    pub a: ChainMap,
    pub b: ChainMap,
}

impl RetractDiagram {
    pub fn commutes(&self) -> bool {
        let idx = ChainMap::identity(self.a.source());
        let idx2 = ChainMap::identity(self.a.target());
        self.p.after(&self.i).ok() == Some(idx)
            && self.p2.after(&self.i2).ok() == Some(idx2)
            && self.b.after(&self.i).ok() == self.i2.after(&self.a).ok()
            && self.p2.after(&self.b).ok() == self.a.after(&self.p).ok()
    }

    pub fn diagram(&self) -> Diagram {
        Diagram::new()
            .map("i", &self.i)
            .map("p", &self.p)
            .map("i'", &self.i2)
            .map("p'", &self.p2)
            .map("a", &self.a)
            .map("b", &self.b)
    }
}

/// `y = x ⊕ u` with `i = (1, 0)` and `p = (1, q)`, likewise for `y'`; the
/// compatible `b` is `[[a, a q - q' e], [0, e]]`. Both middles are
/// recoordinatized.
pub fn retract_diagram(g: &mut Gen, we_a: bool, we_e: bool) -> RetractDiagram {
    let x = g.complex();
    let (x2, a) = g.map_from(&x, we_a);
    let u = g.complex();
    let (u2, e) = g.map_from(&u, we_e);
    let q = g.lattice_map(&u, &x);
    let q2 = g.lattice_map(&u2, &x2);
    let corner = a
        .after(&q)
        .expect("composable")
        .sub(&q2.after(&e).expect("composable"))
        .expect("parallel");
    let (xc, x2c) = (x.complex.clone(), x2.complex.clone());
    let (ys, y2s) = (Sum::new(&[&xc, &u.complex]), Sum::new(&[&x2c, &u2.complex]));
    let (xs, x2s) = (Sum::new(&[&xc]), Sum::new(&[&x2c]));
    let i = blocks(&xs, &ys, &[(0, 0, &id(&xc))]);
    let p = blocks(&ys, &xs, &[(0, 0, &id(&xc)), (0, 1, &q)]);
    let i2 = blocks(&x2s, &y2s, &[(0, 0, &id(&x2c))]);
    let p2 = blocks(&y2s, &x2s, &[(0, 0, &id(&x2c)), (0, 1, &q2)]);
    let b = blocks(&ys, &y2s, &[(0, 0, &a), (0, 1, &corner), (1, 1, &e)]);
    let (phi, phi_inv) = g.random_automorphism(&ys.object);
    let (psi, psi_inv) = g.random_automorphism(&y2s.object);
    let out = RetractDiagram {
        i: phi.after(&i).expect("composable"),
        p: p.after(&phi_inv).expect("composable"),
        i2: psi.after(&i2).expect("composable"),
        p2: p2.after(&psi_inv).expect("composable"),
        b: compose(&[&psi, &b, &phi_inv]),
        a,
    };
    debug_assert!(out.commutes());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::SampleSpec;
    use crate::complex_core::{split_epi_witness, split_mono_witness};
    use crate::homotopy::is_homotopy_equivalence;

    fn spec() -> SampleSpec {
        SampleSpec::new(5, 40)
    }

    #[test]
    fn conflation_morphisms_commute() {
        for k in 0..spec().count {
            let mut g = spec().generator("cm", k);
            let m = conflation_morphism(&mut g, k % 2 == 0, k % 3 == 0);
            assert!(m.top.validate().is_ok() && m.bottom.validate().is_ok());
            assert!(m.b.validate().is_ok());
            assert!(m.commutes(), "instance {k}");
        }
    }

    #[test]
    fn padded_spans_commute_with_equivalent_verticals() {
        for k in 0..spec().count {
            let mut g = spec().generator("span", k);
            let leg = [Leg::Any, Leg::Equivalence, Leg::Exact][k % 3];
            let m = span_morphism(&mut g, leg);
            assert!(m.commutes(), "instance {k}");
            for f in [&m.top.i, &m.top.f, &m.bottom.i, &m.bottom.f, &m.a, &m.b, &m.c] {
                assert!(f.validate().is_ok());
            }
            assert!(split_mono_witness(&m.top.i).is_some() && split_mono_witness(&m.bottom.i).is_some());
            if leg == Leg::Exact {
                assert!(split_mono_witness(&m.top.f).is_some() && split_mono_witness(&m.bottom.f).is_some());
            }
            for v in [&m.a, &m.b, &m.c] {
                assert!(is_homotopy_equivalence(v));
            }
        }
    }

    #[test]
    fn padded_cospans_commute_with_equivalent_verticals() {
        for k in 0..spec().count {
            let mut g = spec().generator("cospan", k);
            let leg = [Leg::Any, Leg::Equivalence, Leg::Exact][k % 3];
            let m = cospan_morphism(&mut g, leg);
            assert!(m.commutes(), "instance {k}");
            assert!(split_epi_witness(&m.top.p).is_some() && split_epi_witness(&m.bottom.p).is_some());
            if leg == Leg::Exact {
                assert!(split_epi_witness(&m.top.f).is_some() && split_epi_witness(&m.bottom.f).is_some());
            }
            for v in [&m.a, &m.b, &m.c] {
                assert!(v.validate().is_ok());
                assert!(is_homotopy_equivalence(v));
            }
        }
    }

    #[test]
    fn retract_diagrams_commute() {
        for k in 0..spec().count {
            let mut g = spec().generator("retract", k);
            let r = retract_diagram(&mut g, k % 2 == 0, k % 3 != 0);
            assert!(r.b.validate().is_ok());
            assert!(r.commutes(), "instance {k}");
        }
    }
}
