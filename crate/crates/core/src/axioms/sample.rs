use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex_core::{ChainMap, Complex, Conflation, Piece};
use crate::error::{Error, Result};
use crate::frobenius::cone;
use crate::zlinalg::{Int, IntMatrix};

/// Seed and size parameters of a sample stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SampleSpec {
    pub seed: u64,
    pub count: usize,
    /// Maximal number of consecutive nonzero degrees of a sampled complex.
    pub max_width: usize,
    pub max_rank: usize,
    pub max_entry: u64,
}

impl SampleSpec {
    pub fn new(seed: u64, count: usize) -> Self {
        Self {
            seed,
            count,
            max_width: 3,
            max_rank: 3,
            max_entry: 3,
        }
    }

    pub fn with_sizes(mut self, max_width: usize, max_rank: usize, max_entry: u64) -> Self {
        self.max_width = max_width;
        self.max_rank = max_rank;
        self.max_entry = max_entry;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_width == 0 || self.max_rank == 0 || self.max_entry == 0 {
            return Err(Error::SampleSpec(
                "width, rank and entry bounds must be positive".into(),
            ));
        }
        Ok(())
    }

    /// The generator of instance `index` in the named stream. Streams are
    /// index-addressable: instance `k` does not depend on instances `< k`.
    pub fn rng(&self, stream: &str, index: usize) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&(index as u64).to_le_bytes());
        key[16..24].copy_from_slice(&fnv1a(stream.as_bytes()).to_le_bytes());
        ChaCha8Rng::from_seed(key)
    }

    /// A generator for instance `index` of `stream`.
    pub fn generator(&self, stream: &str, index: usize) -> Gen {
        Gen::new(self.rng(stream, index), self)
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Shape of one summand of a complex in normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Sphere(i64),
    /// `Z --t--> Z` from the given degree.
    Elementary(i64, i64),
}

/// A sampled complex together with a known splitting into pieces.
///
/// `to[n]` carries the normal basis to the basis of `complex`, so
/// `complex.d(n) = to[n+1] · normal.d(n) · from[n]`.
#[derive(Clone, Debug)]
pub struct Known {
    pub complex: Arc<Complex>,
    pub normal: Arc<Complex>,
    pub shapes: Vec<Shape>,
    pub pieces: Vec<Piece>,
    to: BTreeMap<i64, IntMatrix>,
    from: BTreeMap<i64, IntMatrix>,
}

fn identity_frames(x: &Complex) -> BTreeMap<i64, IntMatrix> {
    x.degrees().map(|n| (n, IntMatrix::identity(x.rank(n)))).collect()
}

impl Known {
    pub fn from_shapes(shapes: &[Shape]) -> Self {
        let mut count: BTreeMap<i64, usize> = BTreeMap::new();
        let mut bump = |n: i64| {
            let c = count.entry(n).or_insert(0);
            *c += 1;
            *c - 1
        };
        let mut pieces = Vec::with_capacity(shapes.len());
        for s in shapes {
            match *s {
                Shape::Sphere(degree) => pieces.push(Piece::Sphere {
                    degree,
                    index: bump(degree),
                }),
                Shape::Elementary(degree, t) => {
                    let source = bump(degree);
                    let target = bump(degree + 1);
                    pieces.push(Piece::Elementary {
                        degree,
                        source,
                        target,
                        t: Int::from(t),
                    });
                }
            }
        }
        let normal = match (count.keys().next(), count.keys().next_back()) {
            (Some(&lo), Some(&hi)) => {
                let rank = |n: i64| count.get(&n).copied().unwrap_or(0);
                Complex::from_fn(lo, hi, rank, |n| {
                    let mut d = IntMatrix::zeros(rank(n + 1), rank(n));
                    for p in &pieces {
                        if let Piece::Elementary {
                            degree,
                            source,
                            target,
                            t,
                        } = p
                        {
                            if *degree == n {
                                d.set(*target, *source, t.clone());
                            }
                        }
                    }
                    d
                })
            }
            _ => Complex::zero(),
        };
        let normal = Arc::new(normal);
        let to = identity_frames(&normal);
        Self {
            complex: normal.clone(),
            normal,
            shapes: shapes.to_vec(),
            pieces,
            from: to.clone(),
            to,
        }
    }

    fn to(&self, n: i64) -> IntMatrix {
        self.to
            .get(&n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::identity(self.complex.rank(n)))
    }

    fn from(&self, n: i64) -> IntMatrix {
        self.from
            .get(&n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::identity(self.complex.rank(n)))
    }

    /// Chain isomorphism `normal -> complex`.
    pub fn to_map(&self) -> ChainMap {
        ChainMap::from_fn(self.normal.clone(), self.complex.clone(), |n| self.to(n))
    }

    /// Chain isomorphism `complex -> normal`.
    pub fn from_map(&self) -> ChainMap {
        ChainMap::from_fn(self.complex.clone(), self.normal.clone(), |n| self.from(n))
    }

    pub fn is_contractible(&self) -> bool {
        self.shapes
            .iter()
            .all(|s| matches!(s, Shape::Elementary(_, t) if t.abs() == 1))
    }

    pub fn direct_sum(&self, other: &Known) -> Known {
        let mut shapes = self.shapes.clone();
        shapes.extend_from_slice(&other.shapes);
        // the normal form of the sum lists our cells first in every degree,
        // which is exactly what from_shapes produces
        let mut k = Known::from_shapes(&shapes);
        debug_assert_eq!(*k.normal, self.normal.direct_sum(&other.normal));
        let complex = Arc::new(self.complex.direct_sum(&other.complex));
        let degrees: Vec<i64> = complex.degrees().collect();
        k.to = degrees
            .iter()
            .map(|&n| (n, IntMatrix::block_diag(&[&self.to(n), &other.to(n)])))
            .collect();
        k.from = degrees
            .iter()
            .map(|&n| (n, IntMatrix::block_diag(&[&self.from(n), &other.from(n)])))
            .collect();
        k.complex = complex;
        k
    }

    /// `T^k` of the complex, with the matching normal form.
    pub fn shifted(&self, k: i64) -> Known {
        let sign = if k.rem_euclid(2) == 1 { -1 } else { 1 };
        let shapes: Vec<Shape> = self
            .shapes
            .iter()
            .map(|s| match *s {
                Shape::Sphere(n) => Shape::Sphere(n - k),
                Shape::Elementary(n, t) => Shape::Elementary(n - k, sign * t),
            })
            .collect();
        let mut out = Known::from_shapes(&shapes);
        debug_assert_eq!(*out.normal, self.normal.shift_by(k));
        out.complex = Arc::new(self.complex.shift_by(k));
        out.to = self.to.iter().map(|(n, m)| (n - k, m.clone())).collect();
        out.from = self.from.iter().map(|(n, m)| (n - k, m.clone())).collect();
        out
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add(usize, usize, i64),
    Swap(usize, usize),
    Neg(usize),
}

impl Op {
    fn inverse(self) -> Op {
        match self {
            Op::Add(i, j, c) => Op::Add(i, j, -c),
            other => other,
        }
    }

    /// Coordinates change as `v -> E v`; rows of `m` follow `E`.
    fn rows(self, m: &mut IntMatrix) {
        match self {
            Op::Add(i, j, c) => m.add_row_multiple(i, j, &Int::from(c)),
            Op::Swap(i, j) => m.swap_rows(i, j),
            Op::Neg(i) => m.negate_row(i),
        }
    }

    /// Right multiplication by `E^{-1}`.
    fn cols(self, m: &mut IntMatrix) {
        match self {
            Op::Add(i, j, c) => m.add_col_multiple(j, i, &Int::from(-c)),
            Op::Swap(i, j) => m.swap_cols(i, j),
            Op::Neg(i) => m.negate_col(i),
        }
    }
}

/// A degreewise change of basis in progress: differentials of the new
/// complex and the accumulated `E^n` with inverse.
struct Frame {
    ranks: BTreeMap<i64, usize>,
    d: BTreeMap<i64, IntMatrix>,
    e: BTreeMap<i64, IntMatrix>,
    e_inv: BTreeMap<i64, IntMatrix>,
}

impl Frame {
    fn new(x: &Complex) -> Self {
        let ranks = x.ranks();
        let d = x.degrees().map(|n| (n, x.d(n).into_owned())).collect();
        let e = identity_frames(x);
        Self {
            ranks,
            d,
            e_inv: e.clone(),
            e,
        }
    }

    fn apply(&mut self, n: i64, op: Op) {
        if let Some(m) = self.d.get_mut(&(n - 1)) {
            op.rows(m);
        }
        if let Some(m) = self.d.get_mut(&n) {
            op.cols(m);
        }
        op.rows(self.e.get_mut(&n).expect("degree in support"));
        op.cols(self.e_inv.get_mut(&n).expect("degree in support"));
    }

    fn within(&self, n: i64, bound: &Int) -> bool {
        let ok = |m: Option<&IntMatrix>| m.is_none_or(|m| &m.max_abs() <= bound);
        ok(self.d.get(&(n - 1))) && ok(self.d.get(&n)) && ok(self.e.get(&n))
    }

    fn complex(&self, like: &Complex) -> Complex {
        match like.support() {
            None => Complex::zero(),
            Some((lo, hi)) => Complex::from_fn(
                lo,
                hi,
                |n| self.ranks.get(&n).copied().unwrap_or(0),
                |n| self.d[&n].clone(),
            ),
        }
    }
}

/// Which complexes to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Any,
    /// Sums of disks only.
    Contractible,
}

/// Deterministic generator for one instance.
pub struct Gen {
    rng: ChaCha8Rng,
    width: usize,
    rank: usize,
    entry: i64,
}

impl Gen {
    pub fn new(rng: ChaCha8Rng, spec: &SampleSpec) -> Self {
        Self {
            rng,
            width: spec.max_width.max(1),
            rank: spec.max_rank.max(1),
            entry: spec.max_entry.clamp(1, i64::MAX as u64) as i64,
        }
    }

    /// A generator with tighter size bounds, for factors of products.
    pub fn scaled(&mut self, width: usize, rank: usize) -> Gen {
        Gen {
            rng: ChaCha8Rng::from_seed(self.rng.gen()),
            width: self.width.min(width).max(1),
            rank: self.rank.min(rank).max(1),
            entry: self.entry,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform in `0..n`.
    pub fn pick(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn bound(&self) -> Int {
        Int::from(self.entry)
    }

    pub fn shapes(&mut self, kind: Kind) -> Vec<Shape> {
        if self.rng.gen_ratio(1, 16) {
            return Vec::new();
        }
        let width = self.rng.gen_range(1..=self.width) as i64;
        let lo = self.rng.gen_range(-2..=1);
        let mut used: BTreeMap<i64, usize> = BTreeMap::new();
        let attempts = self.rng.gen_range(1..=(width as usize * self.rank).max(1));
        let mut shapes = Vec::new();
        for _ in 0..attempts {
            let n = lo + self.rng.gen_range(0..width);
            let roll: u32 = self.rng.gen_range(0..100);
            let two = n + 1 < lo + width;
            let shape = match kind {
                Kind::Contractible if two => Shape::Elementary(n, 1),
                Kind::Contractible => continue,
                Kind::Any if roll < 40 || !two => Shape::Sphere(n),
                Kind::Any if roll < 75 || self.entry < 2 => Shape::Elementary(n, 1),
                Kind::Any => Shape::Elementary(n, self.rng.gen_range(2..=self.entry)),
            };
            let cells: Vec<i64> = match shape {
                Shape::Sphere(n) => vec![n],
                Shape::Elementary(n, _) => vec![n, n + 1],
            };
            if cells.iter().all(|c| used.get(c).copied().unwrap_or(0) < self.rank) {
                for c in cells {
                    *used.entry(c).or_insert(0) += 1;
                }
                shapes.push(shape);
            }
        }
        shapes.shuffle(&mut self.rng);
        shapes
    }

    /// Random degreewise unimodular change of basis of `x`, keeping the
    /// differentials and the change itself within the entry bound.
    /// Returns the new complex and the isomorphism `x -> new`.
    pub fn recoordinate(&mut self, x: &Known, ops: usize) -> (Known, ChainMap) {
        let mut frame = Frame::new(&x.complex);
        let degrees: Vec<i64> = x.complex.degrees().collect();
        let bound = self.bound();
        if !degrees.is_empty() {
            for _ in 0..ops {
                let n = *degrees.choose(&mut self.rng).expect("nonempty");
                let r = x.complex.rank(n);
                if r == 0 {
                    continue;
                }
                let op = match self.rng.gen_range(0..6) {
                    0..=3 if r >= 2 => {
                        let i = self.rng.gen_range(0..r);
                        let mut j = self.rng.gen_range(0..r - 1);
                        if j >= i {
                            j += 1;
                        }
                        Op::Add(i, j, if self.rng.gen() { 1 } else { -1 })
                    }
                    4 if r >= 2 => {
                        let i = self.rng.gen_range(0..r);
                        let j = (i + 1 + self.rng.gen_range(0..r - 1)) % r;
                        Op::Swap(i, j)
                    }
                    _ => Op::Neg(self.rng.gen_range(0..r)),
                };
                frame.apply(n, op);
                if !frame.within(n, &bound) {
                    frame.apply(n, op.inverse());
                }
            }
        }
        let y = Arc::new(frame.complex(&x.complex));
        let map = ChainMap::from_fn(x.complex.clone(), y.clone(), |n| {
            frame.e.get(&n).cloned().unwrap_or_else(|| IntMatrix::identity(0))
        });
        debug_assert!(map.validate().is_ok());
        let mut out = x.clone();
        out.complex = y;
        for &n in &degrees {
            out.to.insert(n, &frame.e[&n] * &x.to(n));
            out.from.insert(n, &x.from(n) * &frame.e_inv[&n]);
        }
        (out, map)
    }

    fn ops_for(&mut self, x: &Known) -> usize {
        let r = x.complex.total_rank();
        self.rng.gen_range(r..=3 * r + 1)
    }

    pub fn known(&mut self, kind: Kind) -> Known {
        let shapes = self.shapes(kind);
        let k = Known::from_shapes(&shapes);
        let ops = self.ops_for(&k);
        self.recoordinate(&k, ops).0
    }

    pub fn complex(&mut self) -> Known {
        self.known(Kind::Any)
    }

    pub fn contractible(&mut self) -> Known {
        self.known(Kind::Contractible)
    }

    /// A chain map between `x` and `y` drawn from a box in the lattice of
    /// chain maps, expressed through the piece decompositions.
    pub fn lattice_map(&mut self, x: &Known, y: &Known) -> ChainMap {
        let mut density = 0.5;
        for _ in 0..8 {
            let m = self.lattice_map_once(x, y, density);
            if m.max_abs_entry() <= self.bound() {
                return m;
            }
            density /= 2.0;
        }
        ChainMap::from_fn(x.complex.clone(), y.complex.clone(), |n| {
            IntMatrix::zeros(y.complex.rank(n), x.complex.rank(n))
        })
    }

    fn lattice_map_once(&mut self, x: &Known, y: &Known, density: f64) -> ChainMap {
        let mut normal: BTreeMap<i64, IntMatrix> = BTreeMap::new();
        let c_max = self.entry.min(2);
        for p in &x.pieces {
            for q in &y.pieces {
                let gens = pair_generator(p, q);
                if gens.is_empty() || !self.rng.gen_bool(density) {
                    continue;
                }
                let mut c = self.rng.gen_range(1..=c_max);
                if self.rng.gen() {
                    c = -c;
                }
                for (n, row, col, v) in gens {
                    let m = normal
                        .entry(n)
                        .or_insert_with(|| IntMatrix::zeros(y.normal.rank(n), x.normal.rank(n)));
                    let e = m.get(row, col) + Int::from(c) * v;
                    m.set(row, col, e);
                }
            }
        }
        ChainMap::from_fn(x.complex.clone(), y.complex.clone(), |n| match normal.get(&n) {
            Some(m) => &(&y.to(n) * m) * &x.from(n),
            None => IntMatrix::zeros(y.complex.rank(n), x.complex.rank(n)),
        })
    }

    /// A random chain isomorphism out of `x`.
    pub fn iso(&mut self, x: &Known) -> (Known, ChainMap) {
        let ops = self.ops_for(x);
        self.recoordinate(x, ops)
    }

    /// A homotopy equivalence out of `x`, built from isomorphisms,
    /// inclusions of and projections away from disk summands, and
    /// null-homotopic perturbations.
    pub fn we(&mut self, x: &Known) -> (Known, ChainMap) {
        for _ in 0..6 {
            let steps = self.rng.gen_range(1..=3);
            let mut cur = x.clone();
            let mut f = ChainMap::identity_arc(x.complex.clone());
            for _ in 0..steps {
                let (next, g) = match self.rng.gen_range(0..4) {
                    0 => self.iso(&cur),
                    1 => self.add_disks(&cur),
                    2 => self.drop_disks(&cur),
                    _ => {
                        let g = self.perturb(&ChainMap::identity_arc(cur.complex.clone()));
                        (cur.clone(), g)
                    }
                };
                f = g.after(&f).expect("composable");
                cur = next;
            }
            if f.max_abs_entry() <= self.bound() {
                return (cur, f);
            }
        }
        (x.clone(), ChainMap::identity_arc(x.complex.clone()))
    }

    fn add_disks(&mut self, x: &Known) -> (Known, ChainMap) {
        let d = self.contractible();
        let sum = x.direct_sum(&d);
        let incl = ChainMap::from_fn(x.complex.clone(), sum.complex.clone(), |n| {
            let mut m = IntMatrix::zeros(sum.complex.rank(n), x.complex.rank(n));
            m.set_block(0, 0, &IntMatrix::identity(x.complex.rank(n)));
            m
        });
        let (out, iso) = self.iso(&sum);
        (out, iso.after(&incl).expect("composable"))
    }

    fn drop_disks(&mut self, x: &Known) -> (Known, ChainMap) {
        let keep: Vec<bool> = x
            .shapes
            .iter()
            .map(|s| !matches!(s, Shape::Elementary(_, t) if t.abs() == 1) || self.rng.gen_bool(0.5))
            .collect();
        let shapes: Vec<Shape> = x
            .shapes
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(s, _)| *s)
            .collect();
        let kept = Known::from_shapes(&shapes);
        let mut proj: BTreeMap<i64, IntMatrix> = BTreeMap::new();
        for (p, q) in x
            .pieces
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(p, _)| p)
            .zip(&kept.pieces)
        {
            for ((n, i), (_, j)) in p.cells().into_iter().zip(q.cells()) {
                proj.entry(n)
                    .or_insert_with(|| IntMatrix::zeros(kept.normal.rank(n), x.normal.rank(n)))
                    .set(j, i, Int::from(1));
            }
        }
        let map = ChainMap::from_fn(x.complex.clone(), kept.complex.clone(), |n| match proj.get(&n) {
            Some(m) => m * &x.from(n),
            None => IntMatrix::zeros(kept.complex.rank(n), x.complex.rank(n)),
        });
        let (out, iso) = self.iso(&kept);
        (out, iso.after(&map).expect("composable"))
    }

    /// `f + d s + s d` for a sparse random `s` of degree -1.
    pub fn perturb(&mut self, f: &ChainMap) -> ChainMap {
        self.perturb_with(f).0
    }

    /// As [`Gen::perturb`], also returning `s` with `s^n: x^n -> y^{n-1}`.
    pub fn perturb_with(&mut self, f: &ChainMap) -> (ChainMap, BTreeMap<i64, IntMatrix>) {
        let (x, y) = (f.source(), f.target());
        let mut s: BTreeMap<i64, IntMatrix> = BTreeMap::new();
        for n in x.degrees() {
            let (r, c) = (y.rank(n - 1), x.rank(n));
            if r == 0 || c == 0 {
                continue;
            }
            let mut m = IntMatrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    if self.rng.gen_bool(0.2) {
                        m.set(i, j, Int::from(if self.rng.gen() { 1 } else { -1 }));
                    }
                }
            }
            s.insert(n, m);
        }
        let get = |n: i64| {
            s.get(&n)
                .cloned()
                .unwrap_or_else(|| IntMatrix::zeros(y.rank(n - 1), x.rank(n)))
        };
        let g = ChainMap::from_fn(f.source_arc(), f.target_arc(), |n| {
            let ds = &*y.d(n - 1) * &get(n);
            let sd = &get(n + 1) * &*x.d(n);
            &(&*f.get(n) + &ds) + &sd
        });
        (g, s)
    }

    /// Rescales one non-disk piece of the target, usually destroying the
    /// weak equivalence property.
    pub fn spoil(&mut self, y: &Known, f: &ChainMap) -> ChainMap {
        let candidates: Vec<&Piece> = y.pieces.iter().filter(|p| !p.is_disk()).collect();
        let Some(piece) = candidates.choose(&mut self.rng) else {
            return f.clone();
        };
        let c = *[0i64, 2, -2, 3].choose(&mut self.rng).expect("nonempty");
        let e = ChainMap::from_fn(y.complex.clone(), y.complex.clone(), |n| {
            let mut m = IntMatrix::identity(y.normal.rank(n));
            for (k, i) in piece.cells() {
                if k == n {
                    m.set(i, i, Int::from(c));
                }
            }
            &(&y.to(n) * &m) * &y.from(n)
        });
        e.after(f).expect("composable")
    }

    /// A chain map from a mixture of weak equivalences, spoiled weak
    /// equivalences and lattice samples.
    pub fn chain_map(&mut self) -> (Known, Known, ChainMap) {
        let x = self.complex();
        match self.rng.gen_range(0..20) {
            0..=6 => {
                let (y, f) = self.we(&x);
                (x, y, f)
            }
            7..=9 => {
                let (y, f) = self.we(&x);
                let g = self.spoil(&y, &f);
                if g.max_abs_entry() <= self.bound() {
                    (x, y, g)
                } else {
                    (x, y, f)
                }
            }
            10..=11 => {
                let f = self.lattice_map(&x, &x);
                (x.clone(), x, f)
            }
            _ => {
                let y = self.complex();
                let f = self.lattice_map(&x, &y);
                (x, y, f)
            }
        }
    }

    /// A map out of `x` that is a homotopy equivalence when `we` is set.
    pub fn map_from(&mut self, x: &Known, we: bool) -> (Known, ChainMap) {
        if we {
            self.we(x)
        } else {
            let y = self.complex();
            let f = self.lattice_map(x, &y);
            (y, f)
        }
    }

    /// `x ↣ Cone(g) ↠ z` for a random `g: T^{-1}z -> x`, with the middle
    /// term recoordinatized.
    pub fn conflation_between(&mut self, x: &Known, z: &Known) -> Conflation {
        let zs = z.shifted(-1);
        let g = self.lattice_map(&zs, x);
        let data = cone(&g);
        let i = data.inclusion().clone();
        let p = data
            .projection()
            .with_ends(data.cone_arc(), z.complex.clone())
            .expect("T T^{-1} z = z");
        self.twist_middle(i, p)
    }

    fn twist_middle(&mut self, i: ChainMap, p: ChainMap) -> Conflation {
        let (phi, phi_inv) = self.random_automorphism(&i.target_arc());
        let i2 = phi.after(&i).expect("composable");
        let p2 = p.after(&phi_inv).expect("composable");
        Conflation::new(i2, p2).expect("recoordinatized conflation")
    }

    /// An isomorphism `y -> y'` and its inverse, for a bare complex.
    pub fn random_automorphism(&mut self, y: &Arc<Complex>) -> (ChainMap, ChainMap) {
        let k = bare(y);
        let ops = self.ops_for(&k);
        let (_, phi) = self.recoordinate(&k, ops);
        let inv = phi.inverse().expect("unimodular change of basis");
        (phi, inv)
    }

    pub fn conflation(&mut self) -> Conflation {
        let x = self.complex();
        let z = self.complex();
        self.conflation_between(&x, &z)
    }

    /// A random graded map of degree 0 with entries in `{-1, 0, 1}`.
    pub fn graded(&mut self, x: &Complex, y: &Complex, p: f64) -> BTreeMap<i64, IntMatrix> {
        let mut out = BTreeMap::new();
        for n in x.degrees() {
            let (r, c) = (y.rank(n), x.rank(n));
            if r == 0 || c == 0 {
                continue;
            }
            let mut m = IntMatrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    if self.rng.gen_bool(p) {
                        m.set(i, j, Int::from(if self.rng.gen() { 1 } else { -1 }));
                    }
                }
            }
            out.insert(n, m);
        }
        out
    }
}

/// Treats an arbitrary complex as known with a trivial piece structure;
/// only the recoordinatization machinery uses this.
fn bare(y: &Arc<Complex>) -> Known {
    let id = identity_frames(y);
    Known {
        complex: y.clone(),
        normal: y.clone(),
        shapes: Vec::new(),
        pieces: Vec::new(),
        from: id.clone(),
        to: id,
    }
}

/// Generator of the chain maps from piece `p` to piece `q` in normal
/// coordinates, as `(degree, row, col, value)` entries.
fn pair_generator(p: &Piece, q: &Piece) -> Vec<(i64, usize, usize, Int)> {
    let one = || Int::from(1);
    match (p, q) {
        (Piece::Sphere { degree: a, index: i }, Piece::Sphere { degree: b, index: j }) if a == b => {
            vec![(*a, *j, *i, one())]
        }
        (Piece::Sphere { degree: a, index: i }, Piece::Elementary { degree: b, target, .. }) if *a == b + 1 => {
            vec![(*a, *target, *i, one())]
        }
        (Piece::Elementary { degree: a, source, .. }, Piece::Sphere { degree: b, index: j }) if a == b => {
            vec![(*a, *j, *source, one())]
        }
        (
            Piece::Elementary {
                degree: a,
                source: s1,
                target: t1,
                t,
            },
            Piece::Elementary {
                degree: b,
                source: s2,
                target: t2,
                t: u,
            },
        ) => {
            if a == b {
                // f(e) = α e', f(de) = β de' with α u = t β
                let g = t.gcd(u);
                vec![(*a, *s2, *s1, t / &g), (*a + 1, *t2, *t1, u / &g)]
            } else if *b == a - 1 {
                vec![(*a, *t2, *s1, one())]
            } else {
                Vec::new()
            }
        }
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::is_homotopy_equivalence;

    fn spec() -> SampleSpec {
        SampleSpec::new(11, 60)
    }

    #[test]
    fn streams_are_deterministic_and_index_addressable() {
        let s = spec();
        let a: Vec<Complex> = (0..20)
            .map(|i| (*s.generator("c", i).complex().complex).clone())
            .collect();
        let b: Vec<Complex> = (0..20)
            .rev()
            .map(|i| (*s.generator("c", i).complex().complex).clone())
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .collect();
        assert_eq!(a, b);
        let other: Vec<Complex> = (0..20)
            .map(|i| (*s.generator("d", i).complex().complex).clone())
            .collect();
        assert_ne!(a, other);
    }

    #[test]
    fn sampled_complexes_respect_bounds() {
        let s = spec();
        for i in 0..s.count {
            let k = s.generator("c", i).complex();
            assert!(k.complex.validate().is_ok());
            assert!(k.complex.max_abs_entry() <= Int::from(s.max_entry));
            assert!(k.complex.max_rank() <= s.max_rank);
            if let Some((lo, hi)) = k.complex.support() {
                assert!((hi - lo) < s.max_width as i64);
            }
            assert!(k.to_map().validate().is_ok());
            assert!(k.from_map().validate().is_ok());
            assert!(k
                .from_map()
                .after(&k.to_map())
                .unwrap()
                .components()
                .values()
                .all(|m| m.is_identity()));
        }
    }

    #[test]
    fn lattice_maps_are_chain_maps() {
        let s = spec();
        for i in 0..s.count {
            let mut g = s.generator("m", i);
            let (x, y) = (g.complex(), g.complex());
            let f = g.lattice_map(&x, &y);
            assert!(f.validate().is_ok());
            assert!(f.max_abs_entry() <= Int::from(s.max_entry));
            let e = g.lattice_map(&x, &x);
            assert!(e.validate().is_ok());
        }
    }

    #[test]
    fn weak_equivalences_are_homotopy_equivalences() {
        let s = spec();
        for i in 0..s.count {
            let mut g = s.generator("we", i);
            let x = g.complex();
            let (y, f) = g.we(&x);
            assert!(f.validate().is_ok());
            assert_eq!(f.target(), &*y.complex);
            assert!(is_homotopy_equivalence(&f), "instance {i}");
            assert!(y.to_map().validate().is_ok());
        }
    }

    #[test]
    fn shifted_and_summed_frames() {
        let s = spec();
        for i in 0..30 {
            let mut g = s.generator("k", i);
            let (x, y) = (g.complex(), g.complex());
            let sum = x.direct_sum(&y);
            assert!(sum.to_map().validate().is_ok());
            let t = x.shifted(-1);
            assert!(t.to_map().validate().is_ok());
            assert_eq!(*t.complex, x.complex.unshift());
        }
    }

    #[test]
    fn conflations_validate() {
        let s = spec();
        for i in 0..s.count {
            let c = s.generator("conf", i).conflation();
            assert!(c.validate().is_ok());
        }
    }
}
