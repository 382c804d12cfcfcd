use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::Complex;
use crate::error::{Error, Result};
use crate::zlinalg::{is_unimodular, unimodular_inverse, Int, IntMatrix};

fn window(a: &Complex, b: &Complex, shift: i64) -> Option<(i64, i64)> {
    // degrees n with a^n and b^{n + shift} both nonzero
    let (alo, ahi) = a.support()?;
    let (blo, bhi) = b.support()?;
    let lo = alo.max(blo - shift);
    let hi = ahi.min(bhi - shift);
    (lo <= hi).then_some((lo, hi))
}

/// A family of matrices `x^n -> y^{n + shift}` with no compatibility
/// requirement. Homotopies (`shift = -1`) and degreewise retractions
/// (`shift = 0`) are graded maps.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMap {
    shift: i64,
    source: Arc<Complex>,
    target: Arc<Complex>,
    comps: BTreeMap<i64, IntMatrix>,
}

impl GradedMap {
    pub fn new(
        shift: i64,
        source: Arc<Complex>,
        target: Arc<Complex>,
        comps: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self> {
        for (&n, m) in &comps {
            let expect = (target.rank(n + shift), source.rank(n));
            if m.shape() != expect {
                return Err(Error::Shape {
                    degree: n,
                    detail: format!(
                        "component is {}x{} but should be {}x{}",
                        m.rows(),
                        m.cols(),
                        expect.0,
                        expect.1
                    ),
                });
            }
        }
        let comps = comps.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(Self {
            shift,
            source,
            target,
            comps,
        })
    }

    pub fn zero(shift: i64, source: Arc<Complex>, target: Arc<Complex>) -> Self {
        Self {
            shift,
            source,
            target,
            comps: BTreeMap::new(),
        }
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn get(&self, n: i64) -> Cow<'_, IntMatrix> {
        match self.comps.get(&n) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(IntMatrix::zeros(self.target.rank(n + self.shift), self.source.rank(n))),
        }
    }

    pub fn components(&self) -> &BTreeMap<i64, IntMatrix> {
        &self.comps
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        match window(&self.source, &self.target, self.shift) {
            Some((lo, hi)) => lo..=hi,
            #[allow(clippy::reversed_empty_ranges)]
            None => 1..=0,
        }
    }
}

impl fmt::Debug for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedMap")
            .field("shift", &self.shift)
            .field("comps", &self.comps)
            .finish()
    }
}

/// Degreewise matrices `f^n: x^n -> y^n` commuting with the differentials.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: Arc<Complex>,
    target: Arc<Complex>,
    comps: BTreeMap<i64, IntMatrix>,
}

impl ChainMap {
    /// Validated constructor; absent degrees are zero.
    pub fn new(source: Complex, target: Complex, comps: BTreeMap<i64, IntMatrix>) -> Result<Self> {
        Self::new_arc(Arc::new(source), Arc::new(target), comps)
    }

    pub fn new_arc(source: Arc<Complex>, target: Arc<Complex>, comps: BTreeMap<i64, IntMatrix>) -> Result<Self> {
        let g = GradedMap::new(0, source, target, comps)?;
        let f = Self {
            source: g.source,
            target: g.target,
            comps: g.comps,
        };
        f.validate()?;
        Ok(f)
    }

    /// Builds the map from a callback over the nonzero window; no checks.
    pub(crate) fn from_fn(source: Arc<Complex>, target: Arc<Complex>, mut comp: impl FnMut(i64) -> IntMatrix) -> Self {
        let mut comps = BTreeMap::new();
        if let Some((lo, hi)) = window(&source, &target, 0) {
            for n in lo..=hi {
                let m = comp(n);
                debug_assert_eq!(m.shape(), (target.rank(n), source.rank(n)), "degree {n}");
                if !m.is_zero() {
                    comps.insert(n, m);
                }
            }
        }
        Self { source, target, comps }
    }

    pub fn identity(x: &Complex) -> Self {
        let x = Arc::new(x.clone());
        Self::identity_arc(x)
    }

    pub fn identity_arc(x: Arc<Complex>) -> Self {
        Self::from_fn(x.clone(), x.clone(), |n| IntMatrix::identity(x.rank(n)))
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        Self {
            source: Arc::new(source.clone()),
            target: Arc::new(target.clone()),
            comps: BTreeMap::new(),
        }
    }

    /// `0 -> x`
    pub fn from_zero(x: &Complex) -> Self {
        Self::zero(&Complex::zero(), x)
    }

    /// `x -> 0`
    pub fn to_zero(x: &Complex) -> Self {
        Self::zero(x, &Complex::zero())
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn source_arc(&self) -> Arc<Complex> {
        self.source.clone()
    }

    pub fn target_arc(&self) -> Arc<Complex> {
        self.target.clone()
    }

    /// `f^n`, zero outside the stored window.
    pub fn get(&self, n: i64) -> Cow<'_, IntMatrix> {
        match self.comps.get(&n) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(IntMatrix::zeros(self.target.rank(n), self.source.rank(n))),
        }
    }

    /// Nonzero components keyed by degree.
    pub fn components(&self) -> &BTreeMap<i64, IntMatrix> {
        &self.comps
    }

    /// Degrees where both source and target are nonzero.
    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        match window(&self.source, &self.target, 0) {
            Some((lo, hi)) => lo..=hi,
            #[allow(clippy::reversed_empty_ranges)]
            None => 1..=0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(IntMatrix::is_zero)
    }

    /// Checks `d_y^n f^n = f^{n+1} d_x^n` in every degree.
    pub fn validate(&self) -> Result<()> {
        let (Some((slo, shi)), Some(_)) = (self.source.support(), self.target.support()) else {
            return Ok(());
        };
        for n in slo - 1..=shi {
            let left = &*self.target.d(n) * &*self.get(n);
            let right = &*self.get(n + 1) * &*self.source.d(n);
            if left != right {
                return Err(Error::NotAChainMap { degree: n });
            }
        }
        Ok(())
    }

    /// `self ∘ g`
    pub fn after(&self, g: &ChainMap) -> Result<ChainMap> {
        if g.target() != self.source() {
            return Err(Error::Mismatch(
                "composition: target of the first map differs from source of the second".into(),
            ));
        }
        Ok(Self::from_fn(g.source.clone(), self.target.clone(), |n| {
            &*self.get(n) * &*g.get(n)
        }))
    }

    fn same_ends(&self, other: &ChainMap) -> Result<()> {
        if self.source() != other.source() || self.target() != other.target() {
            return Err(Error::Mismatch("maps have different source or target".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.same_ends(other)?;
        Ok(Self::from_fn(self.source.clone(), self.target.clone(), |n| {
            &*self.get(n) + &*other.get(n)
        }))
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.same_ends(other)?;
        Ok(Self::from_fn(self.source.clone(), self.target.clone(), |n| {
            &*self.get(n) - &*other.get(n)
        }))
    }

    pub fn neg(&self) -> ChainMap {
        Self::from_fn(self.source.clone(), self.target.clone(), |n| -&*self.get(n))
    }

    pub fn scale(&self, c: &Int) -> ChainMap {
        Self::from_fn(self.source.clone(), self.target.clone(), |n| self.get(n).scale(c))
    }

    /// Degreewise unimodular (hence a chain isomorphism).
    pub fn is_iso(&self) -> bool {
        let (s, t) = (self.source.degrees(), self.target.degrees());
        (s.start.min(t.start)..s.end.max(t.end)).all(|n| {
            let (r, c) = (self.target.rank(n), self.source.rank(n));
            r == c && (r == 0 || is_unimodular(&self.get(n)))
        })
    }

    /// Inverse chain map when `self` is an isomorphism.
    pub fn inverse(&self) -> Option<ChainMap> {
        if !self.is_iso() {
            return None;
        }
        let mut comps = BTreeMap::new();
        for (&n, m) in &self.comps {
            comps.insert(n, unimodular_inverse(m)?);
        }
        Some(Self {
            source: self.target.clone(),
            target: self.source.clone(),
            comps,
        })
    }

    /// Degreewise direct sum `f ⊕ g : x ⊕ x' -> y ⊕ y'`.
    pub fn direct_sum(&self, other: &ChainMap) -> ChainMap {
        let s = Arc::new(self.source.direct_sum(&other.source));
        let t = Arc::new(self.target.direct_sum(&other.target));
        Self::from_fn(s, t, |n| IntMatrix::block_diag(&[&self.get(n), &other.get(n)]))
    }

    /// Reinterprets the same matrices on equal-but-distinct endpoint values.
    pub fn with_ends(&self, source: Arc<Complex>, target: Arc<Complex>) -> Result<ChainMap> {
        if *source != *self.source || *target != *self.target {
            return Err(Error::Mismatch("endpoints differ".into()));
        }
        Ok(Self {
            source,
            target,
            comps: self.comps.clone(),
        })
    }

    /// Largest absolute entry over all components.
    pub fn max_abs_entry(&self) -> Int {
        self.comps.values().map(IntMatrix::max_abs).max().unwrap_or_default()
    }

    pub fn as_graded(&self) -> GradedMap {
        GradedMap {
            shift: 0,
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.clone(),
        }
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainMap")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("comps", &self.comps)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_commuting_map_is_rejected() {
        let x = Complex::disk(0);
        let comps = BTreeMap::from([(0, IntMatrix::identity(1))]);
        assert!(matches!(
            ChainMap::new(x.clone(), x, comps),
            Err(Error::NotAChainMap { .. })
        ));
    }

    #[test]
    fn times_two_on_sphere() {
        let s = Complex::sphere(0);
        let f = ChainMap::identity(&s).scale(&Int::from(2));
        assert!(f.validate().is_ok());
        assert!(!f.is_iso());
        assert!(ChainMap::identity(&s).is_iso());
        assert!(ChainMap::identity(&Complex::zero()).is_iso());
    }

    #[test]
    fn composition_and_inverse() {
        let x = Complex::new(0, vec![2], vec![]).unwrap();
        let a = ChainMap::new(
            x.clone(),
            x.clone(),
            BTreeMap::from([(0, IntMatrix::from_i64_rows(&[[1, 1], [0, 1]]))]),
        )
        .unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.after(&inv).unwrap(), ChainMap::identity(&x));
        assert!(a.after(&ChainMap::identity(&Complex::sphere(0))).is_err());
    }

    #[test]
    fn shape_errors() {
        let s = Complex::sphere(0);
        let comps = BTreeMap::from([(0, IntMatrix::identity(2))]);
        assert!(matches!(ChainMap::new(s.clone(), s, comps), Err(Error::Shape { .. })));
    }
}
