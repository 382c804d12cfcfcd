//! Cones, cylinders, the two factorizations, truncations, Frobenius
//! lifting probes and strict idempotent splitting.

mod idempotent;
mod truncate;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex_core::{
    cone_inclusion, cone_object, pushout_along_inflation, tensor, ChainMap, Complex, Conflation, Pushout,
};
use crate::error::{Error, Result};
use crate::zlinalg::{solve_matrix, IntMatrix};

pub use idempotent::{split_idempotent, IdempotentSplitting};
pub use truncate::{brutal_conflation, smart_conflation, truncate, Truncation, TruncationKind};

fn stack(cols: usize, parts: &[&IntMatrix]) -> IntMatrix {
    IntMatrix::vstack(cols, parts)
}

/// `Cone(f)^n = y^n ⊕ x^{n+1}` with `d = [[d_y, f], [0, -d_x]]`.
pub fn cone_complex(f: &ChainMap) -> Complex {
    let (x, y) = (f.source(), f.target());
    let lo = match (x.support(), y.support()) {
        (None, None) => return Complex::zero(),
        (Some(a), None) => (a.0 - 1, a.1 - 1),
        (None, Some(b)) => b,
        (Some(a), Some(b)) => ((a.0 - 1).min(b.0), (a.1 - 1).max(b.1)),
    };
    Complex::from_fn(
        lo.0,
        lo.1,
        |n| y.rank(n) + x.rank(n + 1),
        |n| {
            let top = IntMatrix::hstack(y.rank(n + 1), &[&y.d(n), &f.get(n + 1)]);
            let bottom = IntMatrix::hstack(
                x.rank(n + 2),
                &[&IntMatrix::zeros(x.rank(n + 2), y.rank(n)), &-&*x.d(n + 1)],
            );
            stack(y.rank(n) + x.rank(n + 1), &[&top, &bottom])
        },
    )
}

/// The cone of `f : x -> y` with its conflation `y ↣ Cone(f) ↠ Tx`.
#[derive(Clone, Debug)]
pub struct ConeData {
    f: ChainMap,
    cone: Arc<Complex>,
    conflation: Conflation,
}

impl ConeData {
    pub fn map(&self) -> &ChainMap {
        &self.f
    }

    pub fn cone(&self) -> &Complex {
        &self.cone
    }

    pub fn cone_arc(&self) -> Arc<Complex> {
        self.cone.clone()
    }

    /// `y ↣ Cone(f) ↠ Tx`
    pub fn conflation(&self) -> &Conflation {
        &self.conflation
    }

    /// `y -> Cone(f)`
    pub fn inclusion(&self) -> &ChainMap {
        self.conflation.inflation()
    }

    /// `Cone(f) -> Tx`
    pub fn projection(&self) -> &ChainMap {
        self.conflation.deflation()
    }

    /// Checks the triangle identities `Cone(f) ← y ← x` composes to zero up
    /// to the structural conflation, and both composites in the triangle
    /// `x -> y -> Cone(f) -> Tx` vanish where they must.
    pub fn validate(&self) -> Result<()> {
        self.conflation.validate()?;
        let through = self.projection().after(self.inclusion())?;
        if !through.is_zero() {
            return Err(Error::Mismatch("y -> Cone(f) -> Tx is nonzero".into()));
        }
        // ι f is null-homotopic via s(a) = (0, a); checked on the nose
        let xf = self.inclusion().after(&self.f)?;
        let x = self.f.source();
        for n in x.degrees() {
            let s_n = stack(
                x.rank(n),
                &[
                    &IntMatrix::zeros(self.f.target().rank(n - 1), x.rank(n)),
                    &IntMatrix::identity(x.rank(n)),
                ],
            );
            let s_next = stack(
                x.rank(n + 1),
                &[
                    &IntMatrix::zeros(self.f.target().rank(n), x.rank(n + 1)),
                    &IntMatrix::identity(x.rank(n + 1)),
                ],
            );
            let rhs = &(&*self.cone.d(n - 1) * &s_n) + &(&s_next * &*x.d(n));
            if *xf.get(n) != rhs {
                return Err(Error::Mismatch(format!(
                    "x -> y -> Cone(f) is not null-homotopic via the standard homotopy in degree {n}"
                )));
            }
        }
        Ok(())
    }
}

/// Explicit block cone with its structural conflation.
pub fn cone(f: &ChainMap) -> ConeData {
    let (x, y) = (f.source(), f.target());
    let c = Arc::new(cone_complex(f));
    let incl = ChainMap::from_fn(f.target_arc(), c.clone(), |n| {
        stack(
            y.rank(n),
            &[
                &IntMatrix::identity(y.rank(n)),
                &IntMatrix::zeros(x.rank(n + 1), y.rank(n)),
            ],
        )
    });
    let tx = Arc::new(x.shift());
    let proj = ChainMap::from_fn(c.clone(), tx, |n| {
        IntMatrix::hstack(
            x.rank(n + 1),
            &[
                &IntMatrix::zeros(x.rank(n + 1), y.rank(n)),
                &IntMatrix::identity(x.rank(n + 1)),
            ],
        )
    });
    let conflation = Conflation::new(incl, proj).expect("cone conflation is split exact");
    ConeData {
        f: f.clone(),
        cone: c,
        conflation,
    }
}

/// The cone built as the pushout of `f` along `x ↣ Cx`, with the canonical
/// comparison map from the pushout to the block cone.
#[derive(Clone, Debug)]
pub struct PushoutCone {
    pub pushout: Pushout,
    pub comparison: ChainMap,
}

impl PushoutCone {
    /// The comparison is a chain isomorphism.
    pub fn agrees(&self) -> bool {
        self.comparison.validate().is_ok() && self.comparison.is_iso()
    }
}

pub fn cone_via_pushout(f: &ChainMap) -> Result<PushoutCone> {
    let x = f.source_arc();
    let (cx_obj, _) = cone_object(&x);
    let cx = Arc::new(cx_obj);
    let iota = cone_inclusion(&x, &cx);
    let po = pushout_along_inflation(&iota, f)?;
    let block = cone(f);
    let xr = f.source();
    // Cx -> Cone(f) is diag(f^n, id); y -> Cone(f) is the inclusion
    let u = ChainMap::from_fn(cx.clone(), block.cone_arc(), |n| {
        IntMatrix::block_diag(&[&f.get(n), &IntMatrix::identity(xr.rank(n + 1))])
    });
    let v = block.inclusion().clone();
    let comparison = po.factor(&iota, f, &u, &v)?;
    Ok(PushoutCone {
        pushout: po,
        comparison,
    })
}

/// Which way a factorization goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `x ↣ Cyl(f) -> y`
    Cylinder,
    /// `x -> M(f) ↠ y`
    Path,
}

#[derive(Clone, Debug)]
pub struct FactorizationData {
    pub middle: Arc<Complex>,
    pub first: ChainMap,
    pub second: ChainMap,
    pub direction: Direction,
}

impl FactorizationData {
    /// `second ∘ first`
    pub fn composite(&self) -> ChainMap {
        self.second.after(&self.first).expect("composable")
    }
}

/// `Cyl(f) = y ⊕ Cx` with `α = (f, ι)`, `β = (1, 0)` and the conflation
/// `x ↣ Cyl(f) ↠ Cone(f)`.
#[derive(Clone, Debug)]
pub struct CylinderData {
    pub factorization: FactorizationData,
    pub conflation: Conflation,
}

pub fn cylinder(f: &ChainMap) -> CylinderData {
    let (x, y) = (f.source(), f.target());
    let cx = tensor(&Complex::c(), x);
    let cyl = Arc::new(y.direct_sum(&cx));
    let alpha = ChainMap::from_fn(f.source_arc(), cyl.clone(), |n| {
        stack(
            x.rank(n),
            &[
                &f.get(n),
                &IntMatrix::identity(x.rank(n)),
                &IntMatrix::zeros(x.rank(n + 1), x.rank(n)),
            ],
        )
    });
    let beta = ChainMap::from_fn(cyl.clone(), f.target_arc(), |n| {
        IntMatrix::hstack(
            y.rank(n),
            &[
                &IntMatrix::identity(y.rank(n)),
                &IntMatrix::zeros(y.rank(n), cx.rank(n)),
            ],
        )
    });
    let cd = cone(f);
    // (b, a, a') ↦ (b - f a, -a')
    let pi = ChainMap::from_fn(cyl.clone(), cd.cone_arc(), |n| {
        let (ry, rx, rx1) = (y.rank(n), x.rank(n), x.rank(n + 1));
        let top = IntMatrix::hstack(
            ry,
            &[&IntMatrix::identity(ry), &-&*f.get(n), &IntMatrix::zeros(ry, rx1)],
        );
        let bottom = IntMatrix::hstack(rx1, &[&IntMatrix::zeros(rx1, ry + rx), &-&IntMatrix::identity(rx1)]);
        stack(ry + rx + rx1, &[&top, &bottom])
    });
    let conflation = Conflation::new(alpha.clone(), pi).expect("cylinder conflation is split exact");
    CylinderData {
        factorization: FactorizationData {
            middle: cyl,
            first: alpha,
            second: beta,
            direction: Direction::Cylinder,
        },
        conflation,
    }
}

/// `Cyl` on a commutative square `f' b = c f`, acting as `c ⊕ (C ⊗ b)`.
pub fn cylinder_map(f: &ChainMap, f2: &ChainMap, b: &ChainMap, c: &ChainMap) -> Result<ChainMap> {
    if f2.after(b)? != c.after(f)? {
        return Err(Error::Mismatch("square does not commute".into()));
    }
    let cyl = |g: &ChainMap| Arc::new(g.target().direct_sum(&tensor(&Complex::c(), g.source())));
    Ok(ChainMap::from_fn(cyl(f), cyl(f2), |n| {
        IntMatrix::block_diag(&[&c.get(n), &b.get(n), &b.get(n + 1)])
    }))
}

/// The path complex `P`: `Z` in degrees 0 and 1 with `d^0 = id`.
pub fn path_object() -> Complex {
    Complex::disk(1)
}

/// `M(f) = x ⊕ (P ⊗ y)` with `γ = (1, 0)` and `δ = (f, ev)`, where `ev`
/// projects onto the `P^0 ⊗ y^n` summand.
pub fn path_factorize(f: &ChainMap) -> FactorizationData {
    let (x, y) = (f.source(), f.target());
    let py = tensor(&path_object(), y);
    let m = Arc::new(x.direct_sum(&py));
    // (P ⊗ y)^n = (y^{n-1}, y^n)
    let gamma = ChainMap::from_fn(f.source_arc(), m.clone(), |n| {
        stack(
            x.rank(n),
            &[
                &IntMatrix::identity(x.rank(n)),
                &IntMatrix::zeros(py.rank(n), x.rank(n)),
            ],
        )
    });
    let delta = ChainMap::from_fn(m.clone(), f.target_arc(), |n| {
        IntMatrix::hstack(
            y.rank(n),
            &[
                &f.get(n),
                &IntMatrix::zeros(y.rank(n), y.rank(n - 1)),
                &IntMatrix::identity(y.rank(n)),
            ],
        )
    });
    FactorizationData {
        middle: m,
        first: gamma,
        second: delta,
        direction: Direction::Path,
    }
}

/// Comparison `Cone(y -> Cone(f)) -> Tx`, projecting onto the `x^{n+1}`
/// summand; a homotopy equivalence.
pub fn rotation_comparison(f: &ChainMap) -> ChainMap {
    let cd = cone(f);
    let x = f.source();
    let y = f.target();
    let outer = Arc::new(cone_complex(cd.inclusion()));
    let tx = Arc::new(x.shift());
    ChainMap::from_fn(outer, tx, |n| {
        let rx1 = x.rank(n + 1);
        IntMatrix::hstack(
            rx1,
            &[
                &IntMatrix::zeros(rx1, y.rank(n)),
                &IntMatrix::identity(rx1),
                &IntMatrix::zeros(rx1, y.rank(n + 1)),
            ],
        )
    })
}

/// A map into `Cu = C ⊗ u` to be extended along an inflation.
#[derive(Clone, Debug)]
pub struct FrobeniusProbe {
    pub u: Complex,
    pub map: ChainMap,
}

impl FrobeniusProbe {
    pub fn new(u: Complex, map: ChainMap) -> Result<Self> {
        if map.target() != &tensor(&Complex::c(), &u) {
            return Err(Error::Mismatch("probe target is not C ⊗ u".into()));
        }
        Ok(Self { u, map })
    }
}

#[derive(Clone, Debug)]
pub struct LiftingReport {
    /// One entry per probe: the extension `g` with `g i = f`, if found.
    pub extensions: Vec<Option<ChainMap>>,
}

impl LiftingReport {
    pub fn all_extend(&self) -> bool {
        self.extensions.iter().all(Option::is_some)
    }
}

/// Tries to extend each probe `f: x -> Cu` along `i: x ↣ y`.
///
/// A chain map `y -> Cu` is determined by an arbitrary graded map
/// `a: y -> u` as `g^n = (a^n, a^{n+1} d_y - d_u a^n)`, so the extension
/// problem reduces to the degreewise equations `a^n i^n = f_1^n`.
pub fn check_frobenius_lifting(i: &ChainMap, probes: &[FrobeniusProbe]) -> Result<LiftingReport> {
    if crate::complex_core::split_mono_witness(i).is_none() {
        return Err(Error::NotSplitMono(i.source().degrees().next().unwrap_or_default()));
    }
    let mut extensions = Vec::with_capacity(probes.len());
    for probe in probes {
        if probe.map.source() != i.source() {
            return Err(Error::Mismatch("probe source differs from the inflation source".into()));
        }
        extensions.push(extend(i, probe));
    }
    Ok(LiftingReport { extensions })
}

fn extend(i: &ChainMap, probe: &FrobeniusProbe) -> Option<ChainMap> {
    let (x, y, u) = (i.source(), i.target(), &probe.u);
    let mut a = std::collections::BTreeMap::new();
    let range = match (y.support(), u.support()) {
        (Some(s), Some(_)) => s.0..=s.1 + 1,
        _ => std::ops::RangeInclusive::new(1, 0),
    };
    for n in range.clone() {
        // a^n i^n = f_1^n, i.e. (i^n)^T (a^n)^T = (f_1^n)^T
        let f1 = probe.map.get(n).submatrix(0, 0, u.rank(n), x.rank(n));
        let sol = solve_matrix(&i.get(n).transpose(), &f1.transpose()).ok()??;
        a.insert(n, sol.transpose());
    }
    let get = |n: i64| {
        a.get(&n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(u.rank(n), y.rank(n)))
    };
    let g = ChainMap::from_fn(i.target_arc(), probe.map.target_arc(), |n| {
        let b = &(&get(n + 1) * &*y.d(n)) - &(&*u.d(n) * &get(n));
        stack(y.rank(n), &[&get(n), &b])
    });
    (g.after(i).ok()? == probe.map).then_some(g)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::homotopy::{is_contractible, is_homotopy_equivalence};
    use crate::zlinalg::Int;

    fn times(t: i64, x: &Complex) -> ChainMap {
        ChainMap::identity(x).scale(&Int::from(t))
    }

    #[test]
    fn cone_examples() {
        let one = Complex::unit();
        assert_eq!(cone(&ChainMap::identity(&one)).cone(), &Complex::c());
        let x = Complex::elementary(0, 2);
        assert_eq!(cone_complex(&ChainMap::from_zero(&x)), x);
        assert_eq!(cone_complex(&ChainMap::to_zero(&x)), x.shift());
        let cd = cone(&times(3, &x));
        assert!(cd.validate().is_ok());
    }

    #[test]
    fn cylinder_is_functorial_on_squares() {
        let x = Complex::elementary(0, 2);
        let f = times(3, &x);
        let two = times(2, &x);
        let m = cylinder_map(&f, &f, &two, &two).unwrap();
        assert!(m.validate().is_ok());
        let cf = cylinder(&f).factorization;
        assert_eq!(m.after(&cf.first).unwrap(), cf.first.after(&two).unwrap());
        assert_eq!(cf.second.after(&m).unwrap(), two.after(&cf.second).unwrap());
        let id = ChainMap::identity(&x);
        assert_eq!(cylinder_map(&f, &f, &id, &id).unwrap(), ChainMap::identity(&cf.middle));
        assert!(cylinder_map(&f, &f, &id, &two).is_err());
    }

    #[test]
    fn pushout_route_matches_block_cone() {
        for f in [
            ChainMap::identity(&Complex::unit()),
            times(2, &Complex::sphere(0)),
            times(-1, &Complex::elementary(-1, 3)),
            ChainMap::to_zero(&Complex::disk(0)),
            ChainMap::from_zero(&Complex::sphere(1)),
        ] {
            let pc = cone_via_pushout(&f).unwrap();
            assert!(pc.agrees(), "{f:?}");
        }
    }

    #[test]
    fn cylinder_examples() {
        let x = Complex::elementary(0, 2);
        let f = times(2, &x);
        let cyl = cylinder(&f);
        assert_eq!(cyl.factorization.composite(), f);
        assert!(cyl.conflation.validate().is_ok());
        assert!(is_homotopy_equivalence(&cyl.factorization.second));
        // f = 0 -> y: Cyl = y and β = id
        let y = Complex::sphere(0);
        let cyl = cylinder(&ChainMap::from_zero(&y));
        assert_eq!(&*cyl.factorization.middle, &y);
        assert_eq!(cyl.factorization.second, ChainMap::identity(&y));
    }

    #[test]
    fn path_examples() {
        let x = Complex::elementary(0, 2);
        let f = times(2, &x);
        let pf = path_factorize(&f);
        assert!(pf.first.validate().is_ok());
        assert!(pf.second.validate().is_ok());
        assert_eq!(pf.composite(), f);
        assert!(is_homotopy_equivalence(&pf.first));
        assert!(crate::complex_core::split_epi_witness(&pf.second).is_some());
        let pf = path_factorize(&ChainMap::to_zero(&x));
        assert_eq!(&*pf.middle, &x);
        assert_eq!(pf.first, ChainMap::identity(&x));
    }

    #[test]
    fn rotation() {
        let f = times(2, &Complex::sphere(0));
        let r = rotation_comparison(&f);
        assert!(r.validate().is_ok());
        assert!(is_homotopy_equivalence(&r));
        assert!(!is_contractible(&cone_complex(&f)));
    }

    #[test]
    fn lifting_along_cone_inclusion() {
        let x = Complex::elementary(0, 2);
        let (_, conf) = crate::complex_core::cone_object(&x);
        let u = Complex::sphere(0);
        let cu = tensor(&Complex::c(), &u);
        let m = ChainMap::new(x, cu, BTreeMap::from([(0, IntMatrix::identity(1))])).unwrap();
        let probe = FrobeniusProbe::new(u, m).unwrap();
        let rep = check_frobenius_lifting(conf.inflation(), &[probe]).unwrap();
        assert!(rep.all_extend());

        let id = ChainMap::identity(&Complex::c());
        let probe = FrobeniusProbe::new(Complex::unit(), id.clone()).unwrap();
        let rep = check_frobenius_lifting(&id, &[probe]).unwrap();
        assert_eq!(rep.extensions[0].as_ref().unwrap(), &id);
    }
}
