mod checks;
mod classes;
mod diagrams;
mod lemmas;
mod report;
mod sample;

pub use checks::{check_axiom, check_axiom_with, replay, sample, Axiom, ClassArg, SampleKind, Sort};
pub use classes::{null_from_we, we_from_null, MorphismClass, ObjectClass};
pub(crate) use diagrams::{blocks, Sum};
pub use diagrams::{
    conflation_morphism, cospan_morphism, retract_diagram, span_morphism, ConflationMorphism, Cospan, CospanMorphism,
    Leg, RetractDiagram, Span, SpanMorphism,
};
pub use lemmas::{
    implication_checks, implication_suite, implication_suite_with, null_roundtrip_check, null_roundtrip_check_with,
    pasting_check, pasting_check_with, replay_any, retract_closure_check, retract_closure_check_with, roundtrip_check,
    roundtrip_check_with,
};
pub(crate) use report::run;
pub use report::{AxiomReport, Counterexample, Diagram, Named, Outcome};
pub use sample::{Gen, Kind, Known, SampleSpec, Shape};
