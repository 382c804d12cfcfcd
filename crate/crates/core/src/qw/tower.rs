use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex_core::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::homotopy::is_acyclic;
use crate::zlinalg::IntMatrix;

/// A bounded complex of complexes: entries `X^i` for `i` in `lo..=hi`
/// joined by chain maps `δ^i: X^i -> X^{i+1}` with `δ^{i+1} δ^i = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerComplex {
    lo: i64,
    entries: Vec<Arc<Complex>>,
    /// `diffs[k]` is `δ^{lo + k}`.
    diffs: Vec<ChainMap>,
}

impl TowerComplex {
    pub fn zero() -> Self {
        Self {
            lo: 0,
            entries: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// Validated constructor. `diffs[k]` must run from `entries[k]` to
    /// `entries[k + 1]`.
    pub fn new(lo: i64, entries: Vec<Complex>, diffs: Vec<ChainMap>) -> Result<Self> {
        if entries.len().saturating_sub(1) != diffs.len() {
            return Err(Error::Shape {
                degree: lo,
                detail: format!(
                    "{} entries need {} outer differentials, got {}",
                    entries.len(),
                    entries.len().saturating_sub(1),
                    diffs.len()
                ),
            });
        }
        let entries: Vec<Arc<Complex>> = entries.into_iter().map(Arc::new).collect();
        let mut shared = Vec::with_capacity(diffs.len());
        for (k, d) in diffs.into_iter().enumerate() {
            let i = lo + k as i64;
            if d.source() != &*entries[k] || d.target() != &*entries[k + 1] {
                return Err(Error::Shape {
                    degree: i,
                    detail: "outer differential does not join the neighbouring entries".into(),
                });
            }
            shared.push(d.with_ends(entries[k].clone(), entries[k + 1].clone())?);
        }
        let t = Self {
            lo,
            entries,
            diffs: shared,
        };
        t.validate()?;
        Ok(t)
    }

    /// `x` alone at outer degree `i`.
    pub fn single(x: &Complex, i: i64) -> Self {
        Self {
            lo: i,
            entries: vec![Arc::new(x.clone())],
            diffs: Vec::new(),
        }
    }

    /// `x ->f y` at outer degrees -1 and 0.
    pub fn from_map(f: &ChainMap) -> Self {
        Self {
            lo: -1,
            entries: vec![f.source_arc(), f.target_arc()],
            diffs: vec![f.clone()],
        }
    }

    pub fn validate(&self) -> Result<()> {
        for x in &self.entries {
            x.validate()?;
        }
        for (k, d) in self.diffs.iter().enumerate() {
            let i = self.lo + k as i64;
            d.validate().map_err(|e| Error::Shape {
                degree: i,
                detail: format!("outer differential: {e}"),
            })?;
            if let Some(next) = self.diffs.get(k + 1) {
                if !next.after(d)?.is_zero() {
                    return Err(Error::Shape {
                        degree: i,
                        detail: "outer differentials compose to a nonzero map".into(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    /// Outer degrees `lo..=hi` carrying entries, or `None` when empty.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.entries.is_empty()).then(|| (self.lo, self.lo + self.entries.len() as i64 - 1))
    }

    pub fn outer_degrees(&self) -> std::ops::Range<i64> {
        self.lo..self.lo + self.entries.len() as i64
    }

    pub fn entry(&self, i: i64) -> Arc<Complex> {
        self.index(i)
            .map_or_else(|| Arc::new(Complex::zero()), |k| self.entries[k].clone())
    }

    /// `δ^i`, zero outside the stored window.
    pub fn outer_d(&self, i: i64) -> ChainMap {
        match self.index(i).and_then(|k| self.diffs.get(k)) {
            Some(d) => d.clone(),
            None => ChainMap::zero(&self.entry(i), &self.entry(i + 1)),
        }
    }

    fn index(&self, i: i64) -> Option<usize> {
        let k = i.checked_sub(self.lo)?;
        (0..self.entries.len() as i64).contains(&k).then_some(k as usize)
    }

    /// Inner degrees met by any entry.
    fn inner_support(&self) -> Option<(i64, i64)> {
        self.entries
            .iter()
            .filter_map(|x| x.support())
            .reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
    }

    /// Entries at outer degree `i` and inner degree `j` making up
    /// `Tot^n`, in order of descending `i`, with their offsets.
    fn layout(&self, n: i64) -> Vec<(i64, usize, usize)> {
        let mut offset = 0;
        let mut out = Vec::new();
        for k in (0..self.entries.len()).rev() {
            let i = self.lo + k as i64;
            let r = self.entries[k].rank(n - i);
            out.push((i, offset, r));
            offset += r;
        }
        out
    }

    fn tot_rank(&self, n: i64) -> usize {
        self.layout(n).iter().map(|&(_, _, r)| r).sum()
    }
}

fn tot_window(t: &TowerComplex) -> Option<(i64, i64)> {
    let (lo, hi) = t.support()?;
    let (a, b) = t.inner_support()?;
    Some((lo + a, hi + b))
}

/// `Tot(X)^n = ⊕_{i+j=n} X^{i,j}`, summands in order of descending `i`,
/// with differential `δ + (-1)^i d` on `X^{i,j}`.
///
/// For a two-entry tower `x -> y` at outer degrees -1, 0 this is exactly
/// the mapping cone of the map.
pub fn totalize(t: &TowerComplex) -> Complex {
    let Some((lo, hi)) = tot_window(t) else {
        return Complex::zero();
    };
    let x = Complex::from_fn(
        lo,
        hi,
        |n| t.tot_rank(n),
        |n| {
            let (src, tgt) = (t.layout(n), t.layout(n + 1));
            let mut d = IntMatrix::zeros(t.tot_rank(n + 1), t.tot_rank(n));
            let find = |i: i64| tgt.iter().find(|&&(k, _, _)| k == i).copied();
            for &(i, col, r) in &src {
                if r == 0 {
                    continue;
                }
                let x = t.entry(i);
                let j = n - i;
                if let Some((_, row, _)) = find(i) {
                    let inner = x.d(j);
                    let inner = if i.rem_euclid(2) == 0 {
                        inner.into_owned()
                    } else {
                        -&*inner
                    };
                    d.set_block(row, col, &inner);
                }
                if let Some((_, row, _)) = find(i + 1) {
                    d.set_block(row, col, &t.outer_d(i).get(j));
                }
            }
            d
        },
    );
    x.validate().expect("totalization squares to zero");
    x
}

/// Entrywise chain maps `F^i: X^i -> Y^i` commuting with the outer
/// differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerMap {
    source: Arc<TowerComplex>,
    target: Arc<TowerComplex>,
    comps: BTreeMap<i64, ChainMap>,
}

impl TowerMap {
    /// Validated constructor; absent outer degrees are zero maps.
    pub fn new(source: TowerComplex, target: TowerComplex, comps: BTreeMap<i64, ChainMap>) -> Result<Self> {
        let (source, target) = (Arc::new(source), Arc::new(target));
        let mut shared = BTreeMap::new();
        for (i, f) in comps {
            let (x, y) = (source.entry(i), target.entry(i));
            if f.source() != &*x || f.target() != &*y {
                return Err(Error::Shape {
                    degree: i,
                    detail: "component does not join the entries".into(),
                });
            }
            if !f.is_zero() {
                shared.insert(i, f.with_ends(x, y)?);
            }
        }
        let m = Self {
            source,
            target,
            comps: shared,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(t: &TowerComplex) -> Self {
        let t = Arc::new(t.clone());
        Self {
            comps: t
                .outer_degrees()
                .map(|i| (i, ChainMap::identity_arc(t.entry(i))))
                .collect(),
            source: t.clone(),
            target: t,
        }
    }

    /// The map of one-entry towers at outer degree 0 induced by `f`.
    pub fn single(f: &ChainMap) -> Self {
        Self {
            source: Arc::new(TowerComplex::single(f.source(), 0)),
            target: Arc::new(TowerComplex::single(f.target(), 0)),
            comps: [(0, f.clone())].into(),
        }
    }

    pub fn source(&self) -> &TowerComplex {
        &self.source
    }

    pub fn target(&self) -> &TowerComplex {
        &self.target
    }

    pub fn get(&self, i: i64) -> ChainMap {
        self.comps
            .get(&i)
            .cloned()
            .unwrap_or_else(|| ChainMap::zero(&self.source.entry(i), &self.target.entry(i)))
    }

    pub fn validate(&self) -> Result<()> {
        let degrees = outer_window(&self.source, &self.target);
        for i in degrees {
            let f = self.get(i);
            f.validate()?;
            let lhs = self.target.outer_d(i).after(&f)?;
            let rhs = self.get(i + 1).after(&self.source.outer_d(i))?;
            if lhs != rhs {
                return Err(Error::NotAChainMap { degree: i });
            }
        }
        Ok(())
    }

    /// `Cone(F)^i = Y^i ⊕ X^{i+1}` with outer differential
    /// `[[δ_Y, F], [0, -δ_X]]`.
    pub fn cone(&self) -> TowerComplex {
        let (x, y) = (&self.source, &self.target);
        let degrees: Vec<i64> = match (x.support(), y.support()) {
            (None, None) => return TowerComplex::zero(),
            (Some(a), None) => (a.0 - 1..a.1).collect(),
            (None, Some(b)) => (b.0..=b.1).collect(),
            (Some(a), Some(b)) => ((a.0 - 1).min(b.0)..=(a.1 - 1).max(b.1)).collect(),
        };
        let entry = |i: i64| y.entry(i).direct_sum(&x.entry(i + 1));
        let entries: Vec<Complex> = degrees.iter().map(|&i| entry(i)).collect();
        let diffs = degrees
            .iter()
            .zip(entries.iter().zip(entries.iter().skip(1)))
            .map(|(&i, (a, b))| {
                let (dy, f, dx) = (y.outer_d(i), self.get(i + 1), x.outer_d(i + 1));
                let (yi, xi) = (y.entry(i), x.entry(i + 1));
                let (yn, xn) = (y.entry(i + 1), x.entry(i + 2));
                let comps = a
                    .degrees()
                    .chain(b.degrees())
                    .map(|j| {
                        let top = IntMatrix::hstack(yn.rank(j), &[&dy.get(j), &f.get(j)]);
                        let bottom =
                            IntMatrix::hstack(xn.rank(j), &[&IntMatrix::zeros(xn.rank(j), yi.rank(j)), &-&*dx.get(j)]);
                        (j, IntMatrix::vstack(yi.rank(j) + xi.rank(j), &[&top, &bottom]))
                    })
                    .collect();
                ChainMap::new(a.clone(), b.clone(), comps).expect("blocks are chain maps")
            })
            .collect();
        TowerComplex::new(degrees.first().copied().unwrap_or(0), entries, diffs)
            .expect("the cone of a tower map is a tower")
    }

    /// `Tot(F)`, blockwise `F^i` on the summands of [`totalize`].
    pub fn totalize(&self) -> ChainMap {
        let (x, y) = (totalize(&self.source), totalize(&self.target));
        let degrees: Vec<i64> = x.degrees().collect();
        let comps = degrees
            .into_iter()
            .map(|n| {
                let (src, tgt) = (self.source.layout(n), self.target.layout(n));
                let mut m = IntMatrix::zeros(y.rank(n), x.rank(n));
                for &(i, col, r) in &src {
                    if r == 0 {
                        continue;
                    }
                    if let Some(&(_, row, _)) = tgt.iter().find(|&&(k, _, _)| k == i) {
                        m.set_block(row, col, &self.get(i).get(n - i));
                    }
                }
                (n, m)
            })
            .collect();
        ChainMap::new(x, y, comps).expect("totalization is functorial")
    }
}

fn outer_window(x: &TowerComplex, y: &TowerComplex) -> std::ops::RangeInclusive<i64> {
    match (x.support(), y.support()) {
        (None, None) => std::ops::RangeInclusive::new(0, -1),
        (Some(a), None) => a.0 - 1..=a.1,
        (None, Some(b)) => b.0 - 1..=b.1,
        (Some(a), Some(b)) => a.0.min(b.0) - 1..=a.1.max(b.1),
    }
}

/// Every entry is acyclic.
pub fn is_levelwise_acyclic(t: &TowerComplex) -> bool {
    t.entries.iter().all(|x| is_acyclic(x))
}

/// The total complex of the cone of `F` is acyclic. This is a decidable
/// stand-in for membership of the cone in the closure of levelwise
/// acyclic towers.
pub fn is_qw_total(f: &TowerMap) -> bool {
    is_acyclic(&totalize(&f.cone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::cone_complex;
    use crate::homotopy::is_quasi_iso;
    use crate::homotopy::QisMode;

    fn times(k: i64) -> ChainMap {
        let s = Complex::sphere(0);
        ChainMap::new(s.clone(), s, [(0, IntMatrix::from_i64_rows(&[[k]]))].into()).unwrap()
    }

    #[test]
    fn single_entry_totalizes_to_itself() {
        let x = Complex::disk(2).direct_sum(&Complex::sphere(-1));
        assert_eq!(totalize(&TowerComplex::single(&x, 0)), x);
        assert_eq!(totalize(&TowerComplex::single(&x, 3)), x.shift_by(-3));
    }

    #[test]
    fn two_entries_give_the_cone() {
        for k in [1, 2, 0] {
            let f = times(k);
            let tot = totalize(&TowerComplex::from_map(&f));
            assert_eq!(tot, cone_complex(&f));
            assert_eq!(is_acyclic(&tot), is_quasi_iso(&f, QisMode::Homological));
        }
    }

    #[test]
    fn outer_composites_must_vanish() {
        let s = Complex::sphere(0);
        let id = ChainMap::identity(&s);
        assert!(TowerComplex::new(0, vec![s.clone(), s.clone(), s], vec![id.clone(), id]).is_err());
    }

    #[test]
    fn identities_and_base_equivalences_are_qw() {
        let t = TowerComplex::from_map(&times(3));
        assert!(is_qw_total(&TowerMap::identity(&t)));
        assert!(is_qw_total(&TowerMap::single(&times(-1))));
        assert!(!is_qw_total(&TowerMap::single(&times(2))));
    }

    #[test]
    fn disks_are_levelwise_acyclic() {
        let d = Complex::disk(0);
        let t = TowerComplex::new(0, vec![d.clone(), d.clone()], vec![ChainMap::identity(&d)]).unwrap();
        assert!(is_levelwise_acyclic(&t));
        assert!(is_acyclic(&totalize(&t)));
        let s = TowerComplex::new(
            0,
            vec![d.clone(), Complex::sphere(0)],
            vec![ChainMap::zero(&d, &Complex::sphere(0))],
        )
        .unwrap();
        assert!(!is_levelwise_acyclic(&s));
    }

    #[test]
    fn tot_of_cone_matches_cone_of_tot() {
        let a = times(2);
        let t = TowerComplex::from_map(&a);
        let u = TowerComplex::from_map(&times(4));
        let b = ChainMap::identity(&Complex::sphere(0));
        let m = TowerMap::new(t, u, [(-1, b.clone()), (0, b.scale(&2.into()))].into()).unwrap();
        let lhs = totalize(&m.cone());
        let rhs = cone_complex(&m.totalize());
        assert_eq!(lhs.ranks(), rhs.ranks());
        assert_eq!(is_acyclic(&lhs), is_acyclic(&rhs));
    }
}
