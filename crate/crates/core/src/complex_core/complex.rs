use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::zlinalg::{Int, IntMatrix};

/// Bounded cochain complex of finitely generated free abelian groups.
///
/// Degree `n` holds `Z^{rank(n)}` and `d^n` is a `rank(n+1) x rank(n)`
/// matrix acting on column vectors. Values are kept trimmed: the stored
/// window starts and ends at nonzero ranks, and the zero complex stores
/// nothing at all, so structural equality is equality of complexes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[k]` is `d^{lo + k}`; one fewer than `ranks`.
    diffs: Vec<IntMatrix>,
}

/// The named complexes used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    /// `Z` in degree 0.
    Unit,
    /// `Z` in degrees -1 and 0 joined by the identity.
    C,
    /// `Z` in degree -1.
    T,
    /// `Z` in degree `n`.
    Sphere(i64),
    /// `Z` in degrees `n - 1` and `n` joined by the identity.
    Disk(i64),
}

impl Complex {
    pub fn zero() -> Self {
        Self {
            lo: 0,
            ranks: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// Validated constructor: `diffs[k]` is the differential out of degree
    /// `lo + k`, so `diffs.len() + 1 == ranks.len()` (or both empty).
    pub fn new(lo: i64, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self> {
        if ranks.len().saturating_sub(1) != diffs.len() {
            return Err(Error::Shape {
                degree: lo,
                detail: format!(
                    "{} ranks need {} differentials, got {}",
                    ranks.len(),
                    ranks.len().saturating_sub(1),
                    diffs.len()
                ),
            });
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (ranks[k + 1], ranks[k]) {
                return Err(Error::Shape {
                    degree: lo + k as i64,
                    detail: format!(
                        "differential is {}x{} but ranks require {}x{}",
                        d.rows(),
                        d.cols(),
                        ranks[k + 1],
                        ranks[k]
                    ),
                });
            }
        }
        let x = Self::from_parts(lo, ranks, diffs);
        x.validate()?;
        Ok(x)
    }

    /// Builds a complex from sparse degree data; absent degrees have rank 0
    /// and absent differentials are zero.
    pub fn from_degrees(ranks: &BTreeMap<i64, usize>, diffs: &BTreeMap<i64, IntMatrix>) -> Result<Self> {
        let nonzero: Vec<i64> = ranks.iter().filter(|(_, &r)| r > 0).map(|(&n, _)| n).collect();
        let (Some(&lo), Some(&hi)) = (nonzero.first(), nonzero.last()) else {
            if let Some((&n, d)) = diffs.iter().find(|(_, d)| d.shape() != (0, 0)) {
                return Err(Error::Shape {
                    degree: n,
                    detail: format!("differential {}x{} between empty degrees", d.rows(), d.cols()),
                });
            }
            return Ok(Self::zero());
        };
        let rank = |n: i64| ranks.get(&n).copied().unwrap_or(0);
        for (&n, d) in diffs {
            if d.shape() != (rank(n + 1), rank(n)) {
                return Err(Error::Shape {
                    degree: n,
                    detail: format!(
                        "differential is {}x{} but ranks require {}x{}",
                        d.rows(),
                        d.cols(),
                        rank(n + 1),
                        rank(n)
                    ),
                });
            }
        }
        let rs: Vec<usize> = (lo..=hi).map(rank).collect();
        let ds: Vec<IntMatrix> = (lo..hi)
            .map(|n| {
                diffs
                    .get(&n)
                    .cloned()
                    .unwrap_or_else(|| IntMatrix::zeros(rank(n + 1), rank(n)))
            })
            .collect();
        Self::new(lo, rs, ds)
    }

    /// Unvalidated constructor that only trims; callers guarantee shapes.
    pub(crate) fn from_parts(lo: i64, mut ranks: Vec<usize>, mut diffs: Vec<IntMatrix>) -> Self {
        debug_assert_eq!(ranks.len().saturating_sub(1), diffs.len());
        while ranks.last() == Some(&0) {
            ranks.pop();
            diffs.pop();
        }
        let lead = ranks.iter().take_while(|&&r| r == 0).count();
        if lead == ranks.len() {
            return Self::zero();
        }
        ranks.drain(..lead);
        diffs.drain(..lead);
        Self {
            lo: lo + lead as i64,
            ranks,
            diffs,
        }
    }

    /// Builds a complex from a degree window and a differential callback.
    pub(crate) fn from_fn(
        lo: i64,
        hi: i64,
        rank: impl Fn(i64) -> usize,
        mut diff: impl FnMut(i64) -> IntMatrix,
    ) -> Self {
        if hi < lo {
            return Self::zero();
        }
        let ranks: Vec<usize> = (lo..=hi).map(&rank).collect();
        let diffs: Vec<IntMatrix> = (lo..hi).map(&mut diff).collect();
        Self::from_parts(lo, ranks, diffs)
    }

    pub fn standard(kind: StandardKind) -> Self {
        let one = || IntMatrix::identity(1);
        match kind {
            StandardKind::Unit => Self::sphere(0),
            StandardKind::C => Self::disk(0),
            StandardKind::T => Self::sphere(-1),
            StandardKind::Sphere(n) => Self::from_parts(n, vec![1], vec![]),
            StandardKind::Disk(n) => Self::from_parts(n - 1, vec![1, 1], vec![one()]),
        }
    }

    pub fn unit() -> Self {
        Self::standard(StandardKind::Unit)
    }

    pub fn c() -> Self {
        Self::standard(StandardKind::C)
    }

    pub fn t() -> Self {
        Self::standard(StandardKind::T)
    }

    pub fn sphere(n: i64) -> Self {
        Self::standard(StandardKind::Sphere(n))
    }

    pub fn disk(n: i64) -> Self {
        Self::standard(StandardKind::Disk(n))
    }

    /// `Z --t--> Z` in degrees `n, n + 1`.
    pub fn elementary(n: i64, t: i64) -> Self {
        Self::from_parts(n, vec![1, 1], vec![IntMatrix::from_i64_rows(&[[t]])])
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// `(lo, hi)` of the nonzero window, `None` for the zero complex.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            None
        } else {
            Some((self.lo, self.lo + self.ranks.len() as i64 - 1))
        }
    }

    /// Degrees of the support window (empty iterator for zero).
    pub fn degrees(&self) -> std::ops::Range<i64> {
        self.lo..self.lo + self.ranks.len() as i64
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < self.lo {
            return 0;
        }
        self.ranks.get((n - self.lo) as usize).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn max_rank(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    /// `d^n`, a `rank(n+1) x rank(n)` matrix (zero outside the window).
    pub fn d(&self, n: i64) -> Cow<'_, IntMatrix> {
        if n >= self.lo {
            if let Some(m) = self.diffs.get((n - self.lo) as usize) {
                return Cow::Borrowed(m);
            }
        }
        Cow::Owned(IntMatrix::zeros(self.rank(n + 1), self.rank(n)))
    }

    /// Checks `d^{n+1} d^n = 0` everywhere.
    pub fn validate(&self) -> Result<()> {
        for w in self.diffs.windows(2).enumerate() {
            let (k, pair) = w;
            let product = &pair[1] * &pair[0];
            if !product.is_zero() {
                return Err(Error::NotAComplex {
                    degree: self.lo + k as i64,
                    product,
                });
            }
        }
        Ok(())
    }

    /// Translation `Tx`: `(Tx)^n = x^{n+1}` and `d_{Tx}^n = -d_x^{n+1}`.
    pub fn shift(&self) -> Self {
        self.shift_by(1)
    }

    /// Inverse translation: `(T^{-1}x)^n = x^{n-1}` with negated differential.
    pub fn unshift(&self) -> Self {
        self.shift_by(-1)
    }

    /// `T^k x`: degrees move down by `k`, differentials pick up `(-1)^k`.
    pub fn shift_by(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let diffs = if k.rem_euclid(2) == 1 {
            self.diffs.iter().map(|d| -d).collect()
        } else {
            self.diffs.clone()
        };
        Self {
            lo: self.lo - k,
            ranks: self.ranks.clone(),
            diffs,
        }
    }

    /// Degreewise block-diagonal sum; see [`super::Biproduct`] for the maps.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (lo, hi) = match (self.support(), other.support()) {
            (None, None) => return Self::zero(),
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
        };
        Self::from_fn(
            lo,
            hi,
            |n| self.rank(n) + other.rank(n),
            |n| IntMatrix::block_diag(&[&self.d(n), &other.d(n)]),
        )
    }

    /// Alternating rank sum.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|n| {
                let r = self.rank(n) as i64;
                if n.rem_euclid(2) == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum()
    }

    /// Largest absolute entry over all differentials.
    pub fn max_abs_entry(&self) -> Int {
        self.diffs.iter().map(IntMatrix::max_abs).max().unwrap_or_default()
    }

    pub fn ranks(&self) -> BTreeMap<i64, usize> {
        self.degrees().map(|n| (n, self.rank(n))).collect()
    }
}

impl Default for Complex {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex{{")?;
        for (k, n) in self.degrees().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}: {}", self.rank(n))?;
            if let Some(d) = self.diffs.get(k) {
                write!(f, " -{d}->")?;
            }
        }
        write!(f, "}}")
    }
}

/// `make_complex` under its contract name.
pub fn make_complex(lo: i64, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Complex> {
    Complex::new(lo, ranks, diffs)
}

pub fn standard_complex(kind: StandardKind) -> Complex {
    Complex::standard(kind)
}

pub fn shift(x: &Complex) -> Complex {
    x.shift()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_data_is_zero() {
        let x = Complex::new(3, vec![], vec![]).unwrap();
        assert!(x.is_zero());
        assert_eq!(x, Complex::zero());
        assert_eq!(x.support(), None);
    }

    #[test]
    fn sphere_and_two_term() {
        let s = Complex::new(0, vec![1], vec![]).unwrap();
        assert_eq!(s, Complex::sphere(0));
        let x = Complex::new(-1, vec![1, 1], vec![IntMatrix::from_i64_rows(&[[2]])]).unwrap();
        assert_eq!(x.support(), Some((-1, 0)));
        assert_eq!(x.d(-1).get(0, 0), &Int::from(2));
    }

    #[test]
    fn d_squared_nonzero_is_reported() {
        let one = IntMatrix::identity(1);
        let err = Complex::new(0, vec![1, 1, 1], vec![one.clone(), one]).unwrap_err();
        match err {
            Error::NotAComplex { degree, product } => {
                assert_eq!(degree, 0);
                assert_eq!(product, IntMatrix::identity(1));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let err = Complex::new(0, vec![1, 2], vec![IntMatrix::zeros(1, 1)]).unwrap_err();
        assert!(matches!(err, Error::Shape { degree: 0, .. }));
    }

    #[test]
    fn standard_shapes() {
        assert_eq!(Complex::unit().ranks(), BTreeMap::from([(0, 1)]));
        let c = Complex::c();
        assert_eq!(c.ranks(), BTreeMap::from([(-1, 1), (0, 1)]));
        assert!(c.d(-1).is_identity());
        assert_eq!(Complex::t().ranks(), BTreeMap::from([(-1, 1)]));
        assert_eq!(Complex::disk(3).support(), Some((2, 3)));
    }

    #[test]
    fn trimming_keeps_equality_structural() {
        let x = Complex::new(-2, vec![0, 1, 0], vec![IntMatrix::zeros(1, 0), IntMatrix::zeros(0, 1)]).unwrap();
        assert_eq!(x, Complex::sphere(-1));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(Complex::sphere(0).shift(), Complex::sphere(-1));
        assert_eq!(Complex::zero().shift(), Complex::zero());
        let x = Complex::elementary(0, 3);
        assert_eq!(x.shift().unshift(), x);
        assert_eq!(x.shift().d(-1).get(0, 0), &Int::from(-3));
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(Complex::sphere(3).euler_characteristic(), -1);
        assert_eq!(Complex::sphere(2).euler_characteristic(), 1);
        assert_eq!(Complex::c().euler_characteristic(), 0);
    }

    #[test]
    fn sparse_constructor() {
        let ranks = BTreeMap::from([(-1, 1), (0, 1)]);
        let diffs = BTreeMap::from([(-1, IntMatrix::from_i64_rows(&[[2]]))]);
        let x = Complex::from_degrees(&ranks, &diffs).unwrap();
        assert_eq!(x, Complex::elementary(-1, 2));
    }
}
