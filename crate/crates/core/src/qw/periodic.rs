use crate::complex_core::Complex;
use crate::error::{Error, Result};
use crate::homotopy::homology_group;
use crate::zlinalg::{is_unimodular, AbGroupPresentation, IntMatrix};

/// A complex bounded below whose ranks and differentials repeat with
/// period `p` from degree `threshold` on.
///
/// Degrees `lo..threshold` are stored explicitly; degree `n >= threshold`
/// has rank `period_ranks[(n - threshold) % p]` and differential
/// `period_diffs[(n - threshold) % p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventuallyPeriodicComplex {
    pub(crate) lo: i64,
    pub(crate) threshold: i64,
    pub(crate) prefix_ranks: Vec<usize>,
    /// `d^n` for `n` in `lo..threshold`.
    pub(crate) prefix_diffs: Vec<IntMatrix>,
    pub(crate) period_ranks: Vec<usize>,
    /// `d^{threshold + k}` for `k` in `0..p`.
    pub(crate) period_diffs: Vec<IntMatrix>,
}

impl EventuallyPeriodicComplex {
    pub fn zero() -> Self {
        Self {
            lo: 0,
            threshold: 0,
            prefix_ranks: Vec::new(),
            prefix_diffs: Vec::new(),
            period_ranks: vec![0],
            period_diffs: vec![IntMatrix::zeros(0, 0)],
        }
    }

    /// Validated constructor; `d∘d = 0` is checked on the prefix, across
    /// the seam and once around the period.
    pub fn new(lo: i64, prefix: (Vec<usize>, Vec<IntMatrix>), period: (Vec<usize>, Vec<IntMatrix>)) -> Result<Self> {
        let (prefix_ranks, prefix_diffs) = prefix;
        let (period_ranks, period_diffs) = period;
        if period_ranks.is_empty() {
            return Err(Error::Periodic("the period must be at least 1".into()));
        }
        if prefix_ranks.len() != prefix_diffs.len() || period_ranks.len() != period_diffs.len() {
            return Err(Error::Periodic(
                "every stored degree needs its outgoing differential".into(),
            ));
        }
        let x = Self {
            lo,
            threshold: lo + prefix_ranks.len() as i64,
            prefix_ranks,
            prefix_diffs,
            period_ranks,
            period_diffs,
        };
        x.validate()?;
        Ok(x)
    }

    pub fn validate(&self) -> Result<()> {
        let end = self.threshold + self.period() as i64;
        for n in self.lo..end {
            let d = self.d(n);
            if d.shape() != (self.rank(n + 1), self.rank(n)) {
                return Err(Error::Shape {
                    degree: n,
                    detail: format!(
                        "differential is {}x{} but ranks require {}x{}",
                        d.rows(),
                        d.cols(),
                        self.rank(n + 1),
                        self.rank(n)
                    ),
                });
            }
        }
        for n in self.lo..end {
            let product = &*self.d(n + 1) * &*self.d(n);
            if !product.is_zero() {
                return Err(Error::NotAComplex { degree: n, product });
            }
        }
        Ok(())
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    pub fn period(&self) -> usize {
        self.period_ranks.len()
    }

    pub fn is_zero(&self) -> bool {
        self.prefix_ranks.iter().chain(&self.period_ranks).all(|&r| r == 0)
    }

    fn slot(&self, n: i64) -> usize {
        (n - self.threshold).rem_euclid(self.period() as i64) as usize
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < self.lo {
            0
        } else if n < self.threshold {
            self.prefix_ranks[(n - self.lo) as usize]
        } else {
            self.period_ranks[self.slot(n)]
        }
    }

    pub fn d(&self, n: i64) -> std::borrow::Cow<'_, IntMatrix> {
        use std::borrow::Cow;
        if n < self.lo {
            Cow::Owned(IntMatrix::zeros(self.rank(n + 1), self.rank(n)))
        } else if n < self.threshold {
            Cow::Borrowed(&self.prefix_diffs[(n - self.lo) as usize])
        } else {
            Cow::Borrowed(&self.period_diffs[self.slot(n)])
        }
    }

    /// The same complex with the periodic part declared from `t` on, with
    /// period `p`; `t` must not precede the current threshold and `p` must
    /// be a multiple of the current period.
    pub fn rethreshold(&self, t: i64, p: usize) -> Self {
        assert!(
            t >= self.threshold && p.is_multiple_of(self.period()),
            "coarser description"
        );
        let lo = self.lo.min(t);
        Self {
            lo,
            threshold: t,
            prefix_ranks: (lo..t).map(|n| self.rank(n)).collect(),
            prefix_diffs: (lo..t).map(|n| self.d(n).into_owned()).collect(),
            period_ranks: (t..t + p as i64).map(|n| self.rank(n)).collect(),
            period_diffs: (t..t + p as i64).map(|n| self.d(n).into_owned()).collect(),
        }
    }

    /// `T^k`: degrees move down by `k`, differentials pick up `(-1)^k`.
    pub fn shift_by(&self, k: i64) -> Self {
        let sign = |m: &IntMatrix| if k.rem_euclid(2) == 1 { -m } else { m.clone() };
        Self {
            lo: self.lo - k,
            threshold: self.threshold - k,
            prefix_ranks: self.prefix_ranks.clone(),
            prefix_diffs: self.prefix_diffs.iter().map(sign).collect(),
            period_ranks: self.period_ranks.clone(),
            period_diffs: self.period_diffs.iter().map(sign).collect(),
        }
    }

    /// `self ⊕ x`, blocks in that order.
    pub fn direct_sum_bounded(&self, x: &Complex) -> Self {
        let (lo, t) = match x.support() {
            None => (self.lo, self.threshold),
            Some((a, b)) => (self.lo.min(a), self.threshold.max(b + 1)),
        };
        let p = self.period();
        let degrees = |r: std::ops::Range<i64>| r.collect::<Vec<_>>();
        let rank = |n: i64| self.rank(n) + x.rank(n);
        let d = |n: i64| IntMatrix::block_diag(&[&self.d(n), &x.d(n)]);
        let (pre, per) = (degrees(lo..t), degrees(t..t + p as i64));
        Self {
            lo,
            threshold: t,
            prefix_ranks: pre.iter().map(|&n| rank(n)).collect(),
            prefix_diffs: pre.iter().map(|&n| d(n)).collect(),
            period_ranks: per.iter().map(|&n| rank(n)).collect(),
            period_diffs: per.iter().map(|&n| d(n)).collect(),
        }
    }

    /// Degrees `lo..=hi` as a bounded complex, dropping the differential
    /// out of `hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Complex {
        if hi < lo {
            return Complex::zero();
        }
        let ranks = (lo..=hi).map(|n| self.rank(n)).collect();
        let diffs = (lo..hi).map(|n| self.d(n).into_owned()).collect();
        Complex::new(lo, ranks, diffs).expect("windows of a complex are complexes")
    }
}

/// `H^n` of an eventually periodic complex, read off degrees `n - 1..=n + 1`.
pub fn ep_homology(x: &EventuallyPeriodicComplex, n: i64) -> AbGroupPresentation {
    homology_group(&x.window(n - 1, n + 1), n).presentation().clone()
}

/// Summands `x^m` of `F(x)^n = ⊕_{k >= 0} x^{n - 2k}`, largest `m` first.
fn swindle_summands(x: &Complex, n: i64) -> Vec<i64> {
    let Some((a, b)) = x.support() else {
        return Vec::new();
    };
    let top = if n > b { b - (b - n).rem_euclid(2) } else { n };
    (0..).map(|k| top - 2 * k).take_while(|&m| m >= a).collect()
}

fn swindle_rank(x: &Complex, n: i64) -> usize {
    swindle_summands(x, n).iter().map(|&m| x.rank(m)).sum()
}

fn swindle_d(x: &Complex, n: i64) -> IntMatrix {
    let (src, tgt) = (swindle_summands(x, n), swindle_summands(x, n + 1));
    let mut d = IntMatrix::zeros(swindle_rank(x, n + 1), swindle_rank(x, n));
    let mut col = 0;
    for &m in &src {
        let row: usize = tgt.iter().take_while(|&&t| t > m + 1).map(|&t| x.rank(t)).sum();
        if tgt.contains(&(m + 1)) {
            d.set_block(row, col, &x.d(m));
        }
        col += x.rank(m);
    }
    d
}

/// `F(x) = ⊕_{k >= 0} T^{-2k} x`, bounded below and periodic with period 2
/// from the top degree of `x` on.
pub fn swindle_f(x: &Complex) -> EventuallyPeriodicComplex {
    let Some((a, b)) = x.support() else {
        return EventuallyPeriodicComplex::zero();
    };
    EventuallyPeriodicComplex::new(
        a,
        (
            (a..b).map(|n| swindle_rank(x, n)).collect(),
            (a..b).map(|n| swindle_d(x, n)).collect(),
        ),
        (
            (b..b + 2).map(|n| swindle_rank(x, n)).collect(),
            (b..b + 2).map(|n| swindle_d(x, n)).collect(),
        ),
    )
    .expect("shifted copies of a complex form a complex")
}

/// The finite sum `⊕_{k < terms} T^{-2k} x`.
pub fn swindle_terms(x: &Complex, terms: usize) -> Complex {
    (0..terms as i64).fold(Complex::zero(), |acc, k| acc.direct_sum(&x.shift_by(-2 * k)))
}

/// Degreewise matrices between eventually periodic complexes that repeat
/// with the given period from the given threshold on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicMap {
    pub source: EventuallyPeriodicComplex,
    pub target: EventuallyPeriodicComplex,
    lo: i64,
    threshold: i64,
    /// `f^n` for `n` in `lo..threshold + period`.
    comps: Vec<IntMatrix>,
}

impl PeriodicMap {
    fn period(&self) -> usize {
        let (p, q) = (self.source.period(), self.target.period());
        p * q / num_integer::gcd(p, q)
    }

    pub fn get(&self, n: i64) -> IntMatrix {
        let end = self.threshold + self.period() as i64;
        if n < self.lo {
            return IntMatrix::zeros(self.target.rank(n), self.source.rank(n));
        }
        let n = if n >= end {
            self.threshold + (n - self.threshold).rem_euclid(self.period() as i64)
        } else {
            n
        };
        self.comps[(n - self.lo) as usize].clone()
    }

    /// Degrees checked to certify every degree.
    pub fn certified_degrees(&self) -> std::ops::Range<i64> {
        self.lo..self.threshold + self.period() as i64
    }

    /// Commutes with the differentials on the certified degrees and across
    /// the wrap back into the period.
    pub fn is_chain_map(&self) -> bool {
        (self.lo - 1..self.threshold + self.period() as i64)
            .all(|n| &self.get(n + 1) * &*self.source.d(n) == &*self.target.d(n) * &self.get(n))
    }

    pub fn is_iso(&self) -> bool {
        self.certified_degrees().all(|n| is_unimodular(&self.get(n)))
    }

    /// `self ∘ g` on the certified degrees of both.
    pub fn after(&self, g: &PeriodicMap) -> PeriodicMap {
        let lo = self.lo.min(g.lo);
        let threshold = self.threshold.max(g.threshold);
        let p = self.period().max(g.period());
        PeriodicMap {
            source: g.source.clone(),
            target: self.target.clone(),
            lo,
            threshold,
            comps: (lo..threshold + p as i64).map(|n| &self.get(n) * &g.get(n)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.certified_degrees().all(|n| self.get(n).is_identity())
    }
}

/// The isomorphism `F(x)[2] ⊕ x ≅ F(x)` with its inverse.
#[derive(Clone, Debug)]
pub struct SwindleWitness {
    pub forward: PeriodicMap,
    pub backward: PeriodicMap,
}

impl SwindleWitness {
    /// Both maps are chain isomorphisms, mutually inverse, on the prefix
    /// and one full period of the common description.
    pub fn verify(&self) -> bool {
        let (f, g) = (&self.forward, &self.backward);
        f.is_chain_map()
            && g.is_chain_map()
            && f.is_iso()
            && g.after(f).get_all_identity()
            && f.after(g).get_all_identity()
    }
}

impl PeriodicMap {
    fn get_all_identity(&self) -> bool {
        self.certified_degrees().all(|n| self.get(n).is_identity())
    }
}

/// Block matrix sending summand `x^m` of `src` to summand `x^m` of `tgt`.
fn reindex(x: &Complex, src: &[i64], tgt: &[i64]) -> IntMatrix {
    let rows = tgt.iter().map(|&m| x.rank(m)).sum();
    let cols = src.iter().map(|&m| x.rank(m)).sum();
    let mut out = IntMatrix::zeros(rows, cols);
    let mut col = 0;
    for &m in src {
        if let Some(k) = tgt.iter().position(|&t| t == m) {
            let row: usize = tgt[..k].iter().map(|&t| x.rank(t)).sum();
            out.set_block(row, col, &IntMatrix::identity(x.rank(m)));
        }
        col += x.rank(m);
    }
    out
}

/// Explicit witness of `F(x)[2] ⊕ x ≅ F(x)`: in degree `n` the left side
/// is `F(x)^{n-2} ⊕ x^n` and the right side `x^n ⊕ F(x)^{n-2}`.
pub fn swindle_iso(x: &Complex) -> SwindleWitness {
    let f = swindle_f(x);
    let left = f.shift_by(-2).direct_sum_bounded(x);
    let threshold = left.threshold.max(f.threshold);
    let (left, right) = (left.rethreshold(threshold, 2), f.rethreshold(threshold, 2));
    let lo = left.lo.min(right.lo);
    let labels_left = |n: i64| {
        let mut v = swindle_summands(x, n - 2);
        if x.rank(n) > 0 {
            v.push(n);
        }
        v
    };
    let degrees: Vec<i64> = (lo..threshold + 2).collect();
    let forward = degrees
        .iter()
        .map(|&n| reindex(x, &labels_left(n), &swindle_summands(x, n)))
        .collect();
    let backward = degrees
        .iter()
        .map(|&n| reindex(x, &swindle_summands(x, n), &labels_left(n)))
        .collect();
    SwindleWitness {
        forward: PeriodicMap {
            source: left.clone(),
            target: right.clone(),
            lo,
            threshold,
            comps: forward,
        },
        backward: PeriodicMap {
            source: right,
            target: left,
            lo,
            threshold,
            comps: backward,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_spreads_over_even_degrees() {
        let f = swindle_f(&Complex::sphere(0));
        assert_eq!((0..8).map(|n| f.rank(n)).collect::<Vec<_>>(), [1, 0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(f.period(), 2);
        for n in -1..6 {
            let h = ep_homology(&f, n).normal_form().clone();
            assert_eq!(h.free_rank, usize::from(n >= 0 && n % 2 == 0));
            assert!(h.torsion.is_empty());
        }
    }

    #[test]
    fn disk_has_no_homology() {
        let f = swindle_f(&Complex::disk(1));
        assert!((-2..10).all(|n| ep_homology(&f, n).is_trivial()));
    }

    #[test]
    fn zero_goes_to_zero() {
        let f = swindle_f(&Complex::zero());
        assert!(f.is_zero());
        assert!(ep_homology(&f, 3).is_trivial());
    }

    #[test]
    fn agrees_with_finite_sums_in_low_degrees() {
        let x = Complex::disk(1)
            .direct_sum(&Complex::sphere(-1))
            .direct_sum(&Complex::sphere(2));
        let f = swindle_f(&x);
        let terms = swindle_terms(&x, 6);
        assert_eq!(
            f.window(-1, 8).ranks(),
            terms.ranks().into_iter().filter(|&(n, _)| n <= 8).collect()
        );
        for n in -1..8 {
            assert!(ep_homology(&f, n).is_isomorphic(homology_group(&terms, n).presentation()));
        }
    }

    #[test]
    fn witness_verifies() {
        for x in [
            Complex::sphere(0),
            Complex::disk(3).direct_sum(&Complex::sphere(1)),
            Complex::c(),
        ] {
            let w = swindle_iso(&x);
            assert!(w.verify());
        }
    }

    #[test]
    fn rejects_bad_seams() {
        let one = IntMatrix::identity(1);
        let r = EventuallyPeriodicComplex::new(0, (vec![1], vec![one.clone()]), (vec![1], vec![one]));
        assert!(r.is_err());
    }
}
