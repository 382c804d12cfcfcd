//! Canonical JSON documents for matrices, complexes, maps and reports.
//!
//! Integers are written as decimal strings; plain JSON numbers are accepted
//! on input. The canonical text is pretty-printed with a trailing newline,
//! so canonical files survive a parse/serialize round trip byte for byte.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::de::{self, DeserializeOwned, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::complex_core::{ChainMap, Complex, Conflation};
use crate::error::{Error, Result};
use crate::qw::{EventuallyPeriodicComplex, TowerComplex};
use crate::zlinalg::{Int, IntMatrix};

pub const VERSION: u32 = 1;

/// Serde adapters writing integers as decimal strings.
pub mod decimal {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Loose {
        Str(String),
        I64(i64),
        U64(u64),
    }

    fn parse<E: de::Error>(v: Loose) -> std::result::Result<Int, E> {
        match v {
            Loose::Str(s) => Int::from_str(s.trim()).map_err(|_| E::custom(format!("`{s}` is not a decimal integer"))),
            Loose::I64(i) => Ok(Int::from(i)),
            Loose::U64(u) => Ok(Int::from(u)),
        }
    }

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Int, D::Error> {
        parse(Loose::deserialize(d)?)
    }

    /// The same for `Vec<Int>`.
    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Int], s: S) -> std::result::Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|x| x.to_string()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Int>, D::Error> {
            Vec::<Loose>::deserialize(d)?.into_iter().map(parse).collect()
        }
    }
}

/// A matrix entry in a document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
struct Num(#[serde(with = "decimal")] Int);

fn rows_of(m: &IntMatrix) -> Vec<Vec<Num>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(Num).collect())
        .collect()
}

fn matrix_from_rows(rows: usize, cols: usize, data: Vec<Vec<Num>>, what: &str) -> Result<IntMatrix> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::Format(format!("{what} must be a {rows}x{cols} matrix")));
    }
    IntMatrix::from_rows(
        rows,
        cols,
        data.into_iter().map(|r| r.into_iter().map(|n| n.0).collect()).collect(),
    )
}

fn check_tag(found: &str, expected: &str, version: u32) -> Result<()> {
    if found != expected {
        return Err(Error::Format(format!(
            "expected a `{expected}` document, found `{found}`"
        )));
    }
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    format: String,
    version: u32,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Num>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixDoc {
            format: "matrix".into(),
            version: VERSION,
            rows: self.rows(),
            cols: self.cols(),
            entries: rows_of(self),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = MatrixDoc::deserialize(d)?;
        check_tag(&doc.format, "matrix", doc.version).map_err(de::Error::custom)?;
        matrix_from_rows(doc.rows, doc.cols, doc.entries, "entries").map_err(de::Error::custom)
    }
}

/// Optional descriptive fields of a complex file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Metadata {
    pub fn is_empty(&self) -> bool {
        self.name.is_none() && self.seed.is_none()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiffDoc {
    degree: i64,
    matrix: Vec<Vec<Num>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    format: String,
    version: u32,
    support: Option<[i64; 2]>,
    ranks: Vec<usize>,
    #[serde(default)]
    differentials: Vec<DiffDoc>,
    #[serde(default, skip_serializing_if = "Metadata::is_empty")]
    metadata: Metadata,
}

/// A complex together with file metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFile {
    pub complex: Complex,
    pub metadata: Metadata,
}

fn complex_doc(x: &Complex, metadata: Metadata) -> ComplexDoc {
    ComplexDoc {
        format: "complex".into(),
        version: VERSION,
        support: x.support().map(|(lo, hi)| [lo, hi]),
        ranks: x.degrees().map(|n| x.rank(n)).collect(),
        differentials: x
            .degrees()
            .filter(|&n| !x.d(n).is_zero())
            .map(|n| DiffDoc {
                degree: n,
                matrix: rows_of(&x.d(n)),
            })
            .collect(),
        metadata,
    }
}

fn complex_from_doc(doc: ComplexDoc) -> Result<ComplexFile> {
    check_tag(&doc.format, "complex", doc.version)?;
    let (lo, ranks) = match doc.support {
        None if doc.ranks.is_empty() && doc.differentials.is_empty() => {
            return Ok(ComplexFile {
                complex: Complex::zero(),
                metadata: doc.metadata,
            })
        }
        None => return Err(Error::Format("a complex without support has no data".into())),
        Some([lo, hi]) => {
            if hi < lo || (hi - lo + 1) as usize != doc.ranks.len() {
                return Err(Error::Format(format!(
                    "support [{lo}, {hi}] needs {} ranks, found {}",
                    (hi - lo + 1).max(0),
                    doc.ranks.len()
                )));
            }
            (lo, doc.ranks)
        }
    };
    let hi = lo + ranks.len() as i64 - 1;
    let rank = |n: i64| {
        if n < lo || n > hi {
            0
        } else {
            ranks[(n - lo) as usize]
        }
    };
    let mut diffs: Vec<IntMatrix> = (lo..hi).map(|n| IntMatrix::zeros(rank(n + 1), rank(n))).collect();
    let mut seen = std::collections::BTreeSet::new();
    for DiffDoc { degree, matrix } in doc.differentials {
        if degree < lo || degree >= hi {
            return Err(Error::Shape {
                degree,
                detail: "differential outside the support".into(),
            });
        }
        if !seen.insert(degree) {
            return Err(Error::Format(format!("differential d^{degree} given twice")));
        }
        diffs[(degree - lo) as usize] =
            matrix_from_rows(rank(degree + 1), rank(degree), matrix, &format!("d^{degree}")).map_err(|e| {
                Error::Shape {
                    degree,
                    detail: e.to_string(),
                }
            })?;
    }
    Ok(ComplexFile {
        complex: Complex::new(lo, ranks, diffs)?,
        metadata: doc.metadata,
    })
}

impl Serialize for Complex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        complex_doc(self, Metadata::default()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ComplexDoc::deserialize(d)?;
        complex_from_doc(doc).map(|f| f.complex).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    format: String,
    version: u32,
    source: ComplexDoc,
    target: ComplexDoc,
    components: Vec<DiffDoc>,
}

fn map_doc(f: &ChainMap) -> MapDoc {
    MapDoc {
        format: "chain_map".into(),
        version: VERSION,
        source: complex_doc(f.source(), Metadata::default()),
        target: complex_doc(f.target(), Metadata::default()),
        components: f
            .components()
            .iter()
            .map(|(&degree, m)| DiffDoc {
                degree,
                matrix: rows_of(m),
            })
            .collect(),
    }
}

fn map_from_doc(doc: MapDoc) -> Result<ChainMap> {
    check_tag(&doc.format, "chain_map", doc.version)?;
    let x = complex_from_doc(doc.source)?.complex;
    let y = complex_from_doc(doc.target)?.complex;
    let mut comps = BTreeMap::new();
    for DiffDoc { degree, matrix } in doc.components {
        let m = matrix_from_rows(y.rank(degree), x.rank(degree), matrix, &format!("f^{degree}")).map_err(|e| {
            Error::Shape {
                degree,
                detail: e.to_string(),
            }
        })?;
        if comps.insert(degree, m).is_some() {
            return Err(Error::Format(format!("component f^{degree} given twice")));
        }
    }
    ChainMap::new(x, y, comps)
}

impl Serialize for ChainMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        map_doc(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChainMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        map_from_doc(MapDoc::deserialize(d)?).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConflationDoc {
    format: String,
    version: u32,
    inflation: MapDoc,
    deflation: MapDoc,
}

fn conflation_from_doc(doc: ConflationDoc) -> Result<Conflation> {
    check_tag(&doc.format, "conflation", doc.version)?;
    Conflation::new(map_from_doc(doc.inflation)?, map_from_doc(doc.deflation)?)
}

impl Serialize for Conflation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConflationDoc {
            format: "conflation".into(),
            version: VERSION,
            inflation: map_doc(self.inflation()),
            deflation: map_doc(self.deflation()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Conflation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        conflation_from_doc(ConflationDoc::deserialize(d)?).map_err(de::Error::custom)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_canonical<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

/// Parses any document, turning decoder failures into positioned syntax
/// errors and validation failures into their own errors.
pub fn from_text<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Decodes the raw document first so that validation failures keep their
/// own diagnostics instead of turning into syntax errors.
fn from_text_with<D: DeserializeOwned, T>(text: &str, build: impl FnOnce(D) -> Result<T>) -> Result<T> {
    build(from_text::<D>(text)?)
}

pub fn parse_complex_file(text: &str) -> Result<ComplexFile> {
    from_text_with(text, complex_from_doc)
}

pub fn parse_complex(text: &str) -> Result<Complex> {
    parse_complex_file(text).map(|f| f.complex)
}

pub fn serialize_complex_file(file: &ComplexFile) -> String {
    to_canonical(&complex_doc(&file.complex, file.metadata.clone()))
}

pub fn serialize_complex(x: &Complex) -> String {
    to_canonical(x)
}

pub fn parse_chain_map(text: &str) -> Result<ChainMap> {
    from_text_with(text, map_from_doc)
}

pub fn serialize_chain_map(f: &ChainMap) -> String {
    to_canonical(f)
}

pub fn parse_conflation(text: &str) -> Result<Conflation> {
    from_text_with(text, conflation_from_doc)
}

pub fn serialize_conflation(c: &Conflation) -> String {
    to_canonical(c)
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let doc: MatrixDoc = from_text(text)?;
    check_tag(&doc.format, "matrix", doc.version)?;
    matrix_from_rows(doc.rows, doc.cols, doc.entries, "entries")
}

pub fn serialize_matrix(m: &IntMatrix) -> String {
    to_canonical(m)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OuterDoc {
    degree: i64,
    components: Vec<DiffDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TowerDoc {
    format: String,
    version: u32,
    lo: i64,
    entries: Vec<ComplexDoc>,
    #[serde(default)]
    differentials: Vec<OuterDoc>,
}

fn components_doc(f: &ChainMap) -> Vec<DiffDoc> {
    f.components()
        .iter()
        .map(|(&degree, m)| DiffDoc {
            degree,
            matrix: rows_of(m),
        })
        .collect()
}

fn components_from_doc(x: &Complex, y: &Complex, docs: Vec<DiffDoc>) -> Result<BTreeMap<i64, IntMatrix>> {
    let mut comps = BTreeMap::new();
    for DiffDoc { degree, matrix } in docs {
        let m =
            matrix_from_rows(y.rank(degree), x.rank(degree), matrix, &format!("component {degree}")).map_err(|e| {
                Error::Shape {
                    degree,
                    detail: e.to_string(),
                }
            })?;
        if comps.insert(degree, m).is_some() {
            return Err(Error::Format(format!("component {degree} given twice")));
        }
    }
    Ok(comps)
}

impl Serialize for TowerComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let degrees: Vec<i64> = self.outer_degrees().collect();
        TowerDoc {
            format: "tower".into(),
            version: VERSION,
            lo: degrees.first().copied().unwrap_or(0),
            entries: degrees
                .iter()
                .map(|&i| complex_doc(&self.entry(i), Metadata::default()))
                .collect(),
            differentials: degrees
                .iter()
                .map(|&i| (i, self.outer_d(i)))
                .filter(|(i, d)| !d.is_zero() && self.support().is_some_and(|(_, hi)| *i < hi))
                .map(|(degree, d)| OuterDoc {
                    degree,
                    components: components_doc(&d),
                })
                .collect(),
        }
        .serialize(s)
    }
}

fn tower_from_doc(doc: TowerDoc) -> Result<TowerComplex> {
    check_tag(&doc.format, "tower", doc.version)?;
    let entries: Vec<Complex> = doc
        .entries
        .into_iter()
        .map(|e| complex_from_doc(e).map(|f| f.complex))
        .collect::<Result<_>>()?;
    let hi = doc.lo + entries.len() as i64 - 1;
    let mut outer: BTreeMap<i64, Vec<DiffDoc>> = BTreeMap::new();
    for OuterDoc { degree, components } in doc.differentials {
        if degree < doc.lo || degree >= hi {
            return Err(Error::Shape {
                degree,
                detail: "outer differential outside the support".into(),
            });
        }
        if outer.insert(degree, components).is_some() {
            return Err(Error::Format(format!("outer differential {degree} given twice")));
        }
    }
    let mut diffs = Vec::new();
    for k in 0..entries.len().saturating_sub(1) {
        let (x, y) = (&entries[k], &entries[k + 1]);
        let comps = components_from_doc(x, y, outer.remove(&(doc.lo + k as i64)).unwrap_or_default())?;
        diffs.push(ChainMap::new(x.clone(), y.clone(), comps)?);
    }
    TowerComplex::new(doc.lo, entries, diffs)
}

impl<'de> Deserialize<'de> for TowerComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        tower_from_doc(TowerDoc::deserialize(d)?).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockDoc {
    ranks: Vec<usize>,
    #[serde(default)]
    differentials: Vec<DiffDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PeriodicDoc {
    format: String,
    version: u32,
    lo: i64,
    prefix: BlockDoc,
    period: BlockDoc,
}

fn block_doc(start: i64, ranks: &[usize], diffs: &[IntMatrix]) -> BlockDoc {
    BlockDoc {
        ranks: ranks.to_vec(),
        differentials: diffs
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(k, d)| DiffDoc {
                degree: start + k as i64,
                matrix: rows_of(d),
            })
            .collect(),
    }
}

/// Differentials of a block, given the rank of the degree after the last.
fn block_from_doc(
    start: i64,
    doc: BlockDoc,
    next_rank: impl Fn(usize) -> usize,
) -> Result<(Vec<usize>, Vec<IntMatrix>)> {
    let len = doc.ranks.len();
    let rank_after = |k: usize| if k + 1 < len { doc.ranks[k + 1] } else { next_rank(k) };
    let mut diffs: Vec<IntMatrix> = (0..len)
        .map(|k| IntMatrix::zeros(rank_after(k), doc.ranks[k]))
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    for DiffDoc { degree, matrix } in doc.differentials {
        let k = degree - start;
        if k < 0 || k >= len as i64 {
            return Err(Error::Shape {
                degree,
                detail: "differential outside the block".into(),
            });
        }
        if !seen.insert(degree) {
            return Err(Error::Format(format!("differential d^{degree} given twice")));
        }
        let k = k as usize;
        diffs[k] = matrix_from_rows(rank_after(k), doc.ranks[k], matrix, &format!("d^{degree}")).map_err(|e| {
            Error::Shape {
                degree,
                detail: e.to_string(),
            }
        })?;
    }
    Ok((doc.ranks, diffs))
}

impl Serialize for EventuallyPeriodicComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PeriodicDoc {
            format: "eventually_periodic".into(),
            version: VERSION,
            lo: self.lo,
            prefix: block_doc(self.lo, &self.prefix_ranks, &self.prefix_diffs),
            period: block_doc(self.threshold, &self.period_ranks, &self.period_diffs),
        }
        .serialize(s)
    }
}

fn periodic_from_doc(doc: PeriodicDoc) -> Result<EventuallyPeriodicComplex> {
    check_tag(&doc.format, "eventually_periodic", doc.version)?;
    if doc.period.ranks.is_empty() {
        return Err(Error::Periodic("the period must be at least 1".into()));
    }
    let first = doc.period.ranks[0];
    let threshold = doc.lo + doc.prefix.ranks.len() as i64;
    let prefix = block_from_doc(doc.lo, doc.prefix, |_| first)?;
    let period = block_from_doc(threshold, doc.period, |_| first)?;
    EventuallyPeriodicComplex::new(doc.lo, prefix, period)
}

impl<'de> Deserialize<'de> for EventuallyPeriodicComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        periodic_from_doc(PeriodicDoc::deserialize(d)?).map_err(de::Error::custom)
    }
}

pub fn parse_tower(text: &str) -> Result<TowerComplex> {
    from_text_with(text, tower_from_doc)
}

pub fn serialize_tower(t: &TowerComplex) -> String {
    to_canonical(t)
}

pub fn parse_periodic(text: &str) -> Result<EventuallyPeriodicComplex> {
    from_text_with(text, periodic_from_doc)
}

pub fn serialize_periodic(x: &EventuallyPeriodicComplex) -> String {
    to_canonical(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: &str = r#"{
  "format": "complex",
  "version": 1,
  "support": [-1, 0],
  "ranks": [1, 1],
  "differentials": [{"degree": -1, "matrix": [[2]]}]
}"#;

    #[test]
    fn sphere_round_trip() {
        let text = serialize_complex(&Complex::sphere(0));
        assert_eq!(
            text,
            "{\n  \"format\": \"complex\",\n  \"version\": 1,\n  \"support\": [\n    0,\n    0\n  ],\n  \"ranks\": [\n    1\n  ],\n  \"differentials\": []\n}\n"
        );
        let back = parse_complex(&text).unwrap();
        assert_eq!(back, Complex::sphere(0));
        assert_eq!(serialize_complex(&back), text);
    }

    #[test]
    fn hand_written_file() {
        let x = parse_complex(TWO).unwrap();
        assert_eq!(x, Complex::elementary(-1, 2));
        let canon = serialize_complex(&x);
        assert!(canon.contains("\"2\""));
        assert_eq!(serialize_complex(&parse_complex(&canon).unwrap()), canon);
    }

    #[test]
    fn metadata_round_trip() {
        let file = ComplexFile {
            complex: Complex::c(),
            metadata: Metadata {
                name: Some("C".into()),
                seed: Some(7),
            },
        };
        let text = serialize_complex_file(&file);
        let back = parse_complex_file(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(serialize_complex_file(&back), text);
    }

    #[test]
    fn zero_complex() {
        let text = serialize_complex(&Complex::zero());
        assert!(parse_complex(&text).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_complex() {
        let text = r#"{"format": "complex", "version": 1, "support": [0, 2], "ranks": [1, 1, 1],
            "differentials": [{"degree": 0, "matrix": [[1]]}, {"degree": 1, "matrix": [[1]]}]}"#;
        match parse_complex(text) {
            Err(Error::NotAComplex { degree, product }) => {
                assert_eq!(degree, 0);
                assert_eq!(product, IntMatrix::from_i64_rows(&[[1]]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_complex("{\n  \"format\": \"complex\",\n  oops\n}") {
            Err(Error::Syntax { line, column, .. }) => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_complex(
                r#"{"format": "complex", "version": 1, "support": [0, 0], "ranks": [1], "differentials": [{"degree": 0, "matrix": [["x"]]}]}"#
            ),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn shape_errors() {
        let text = r#"{"format": "complex", "version": 1, "support": [0, 1], "ranks": [1, 1],
            "differentials": [{"degree": 0, "matrix": [[1, 2]]}]}"#;
        assert!(matches!(parse_complex(text), Err(Error::Shape { degree: 0, .. })));
    }

    #[test]
    fn maps_and_conflations() {
        let f = ChainMap::identity(&Complex::c());
        let text = serialize_chain_map(&f);
        let back = parse_chain_map(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(serialize_chain_map(&back), text);
        let c = crate::complex_core::unit_conflation();
        let text = serialize_conflation(&c);
        let back = parse_conflation(&text).unwrap();
        assert_eq!(serialize_conflation(&back), text);
        let m = IntMatrix::from_i64_rows(&[[1, -2], [3, 4]]);
        assert_eq!(parse_matrix(&serialize_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn towers_and_periodic_complexes() {
        let f = ChainMap::new(
            Complex::sphere(0),
            Complex::sphere(0),
            [(0, IntMatrix::from_i64_rows(&[[3]]))].into(),
        )
        .unwrap();
        let t = TowerComplex::from_map(&f);
        let text = serialize_tower(&t);
        let back = parse_tower(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(serialize_tower(&back), text);

        let x = crate::qw::swindle_f(&Complex::disk(1).direct_sum(&Complex::sphere(0)));
        let text = serialize_periodic(&x);
        let back = parse_periodic(&text).unwrap();
        assert_eq!(back, x);
        assert_eq!(serialize_periodic(&back), text);

        let bad = r#"{"format": "eventually_periodic", "version": 1, "lo": 0,
            "prefix": {"ranks": [1], "differentials": [{"degree": 0, "matrix": [["1"]]}]},
            "period": {"ranks": [1], "differentials": [{"degree": 1, "matrix": [["1"]]}]}}"#;
        assert!(matches!(parse_periodic(bad), Err(Error::NotAComplex { .. })));
    }

    #[test]
    fn big_integers_survive() {
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        let x = Complex::new(0, vec![1, 1], vec![IntMatrix::new(1, 1, vec![big.clone()]).unwrap()]).unwrap();
        let back = parse_complex(&serialize_complex(&x)).unwrap();
        assert_eq!(back.d(0).get(0, 0), &big);
    }
}
