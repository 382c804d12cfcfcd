use serde::{Deserialize, Serialize};

use super::sample::{Gen, SampleSpec};
use crate::complex_core::{ChainMap, Complex};
use crate::exec::Execution;

/// A named value inside a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

/// The objects and maps of one axiom instance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub objects: Vec<Named<Complex>>,
    pub maps: Vec<Named<ChainMap>>,
}

impl Diagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, name: &str, x: &Complex) -> Self {
        self.objects.push(Named {
            name: name.into(),
            value: x.clone(),
        });
        self
    }

    pub fn map(mut self, name: &str, f: &ChainMap) -> Self {
        self.maps.push(Named {
            name: name.into(),
            value: f.clone(),
        });
        self
    }

    pub fn get_object(&self, name: &str) -> Option<&Complex> {
        self.objects.iter().find(|o| o.name == name).map(|o| &o.value)
    }

    pub fn get_map(&self, name: &str) -> Option<&ChainMap> {
        self.maps.iter().find(|m| m.name == name).map(|m| &m.value)
    }
}

/// Result of checking one sampled instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// The premises did not hold; nothing was tested.
    Vacuous,
    Pass,
    Fail {
        detail: String,
        diagram: Diagram,
    },
}

impl Outcome {
    /// `Pass` when `ok`, otherwise a failure carrying the diagram.
    pub fn check(ok: bool, detail: impl FnOnce() -> String, diagram: impl FnOnce() -> Diagram) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail {
                detail: detail(),
                diagram: diagram(),
            }
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }

    fn code(&self) -> char {
        match self {
            Outcome::Vacuous => 'v',
            Outcome::Pass => 'p',
            Outcome::Fail { .. } => 'f',
        }
    }
}

/// A failing instance, replayable from `(spec, index)` alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub axiom: String,
    pub class: String,
    pub spec: SampleSpec,
    pub index: usize,
    pub detail: String,
    pub diagram: Diagram,
}

/// Outcome of an instance-based check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub class: String,
    pub spec: SampleSpec,
    /// Instances whose premises held.
    pub attempted: usize,
    pub passed: usize,
    /// Instances whose premises failed even after resampling.
    pub vacuous: usize,
    pub counterexamples: Vec<Counterexample>,
    /// One character per instance: `p` pass, `f` fail, `v` vacuous.
    pub verdicts: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AxiomReport {
    pub fn empty(axiom: &str, class: &str, spec: &SampleSpec) -> Self {
        Self {
            axiom: axiom.into(),
            class: class.into(),
            spec: *spec,
            attempted: 0,
            passed: 0,
            vacuous: 0,
            counterexamples: Vec::new(),
            verdicts: String::new(),
            notes: Vec::new(),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Adds the counts and counterexamples of `other`; the label of `self`
    /// is kept.
    pub fn absorb(&mut self, other: AxiomReport) {
        self.attempted += other.attempted;
        self.passed += other.passed;
        self.vacuous += other.vacuous;
        self.counterexamples.extend(other.counterexamples);
        self.verdicts.push_str(&other.verdicts);
        self.notes.extend(other.notes);
    }

    /// Merges reports in order under a common label.
    pub fn merged(axiom: &str, class: &str, spec: &SampleSpec, parts: Vec<AxiomReport>) -> Self {
        let mut out = Self::empty(axiom, class, spec);
        for p in parts {
            out.absorb(p);
        }
        out
    }

    pub fn summary(&self) -> String {
        let status = if self.is_pass() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} {} [{}]: {}/{} passed",
            self.axiom, self.class, self.passed, self.attempted
        );
        if self.vacuous > 0 {
            s.push_str(&format!(", {} vacuous", self.vacuous));
        }
        if !self.is_pass() {
            s.push_str(&format!(", {} counterexamples", self.counterexamples.len()));
        }
        s
    }
}

/// Evaluates instance `index`, resampling up to `retries` times while the
/// premises fail.
pub(crate) fn eval_index<F>(stream: &str, spec: &SampleSpec, index: usize, retries: usize, f: &F) -> Outcome
where
    F: Fn(&mut Gen) -> Outcome,
{
    let mut g = spec.generator(stream, index);
    for _ in 0..=retries {
        let o = f(&mut g);
        if o != Outcome::Vacuous {
            return o;
        }
    }
    Outcome::Vacuous
}

pub(crate) const RETRIES: usize = 8;

pub(crate) fn run<F>(axiom: &str, class: &str, spec: &SampleSpec, exec: Execution, f: F) -> AxiomReport
where
    F: Fn(&mut Gen) -> Outcome + Sync + Send,
{
    let outcomes = exec.map(spec.count, |i| eval_index(axiom, spec, i, RETRIES, &f));
    let mut report = AxiomReport::empty(axiom, class, spec);
    for (index, o) in outcomes.into_iter().enumerate() {
        report.verdicts.push(o.code());
        match o {
            Outcome::Vacuous => report.vacuous += 1,
            Outcome::Pass => {
                report.attempted += 1;
                report.passed += 1;
            }
            Outcome::Fail { detail, diagram } => {
                report.attempted += 1;
                report.counterexamples.push(Counterexample {
                    axiom: axiom.into(),
                    class: class.into(),
                    spec: *spec,
                    index,
                    detail,
                    diagram,
                });
            }
        }
    }
    report
}
