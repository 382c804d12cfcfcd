use std::fmt;
use std::str::FromStr;

use super::classes::{MorphismClass, ObjectClass};
use super::diagrams::{blocks, conflation_morphism, cospan_morphism, retract_diagram, span_morphism, Leg, Sum};
use super::report::{eval_index, run, AxiomReport, Counterexample, Diagram, Outcome, RETRIES};
use super::sample::{Gen, Known, SampleSpec};
use crate::complex_core::{
    pullback_along_deflation, pushout_along_inflation, split_epi_witness, split_mono_witness, tensor, tensor_maps,
    ChainMap,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::frobenius::{cylinder, path_factorize};

/// The axioms checked instance by instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    We0,
    We1,
    We1Prime,
    We2,
    We3,
    We3Prime,
    We4,
    We5,
    We6,
    We7,
    We3PrimeOp,
    We4Op,
    We5Op,
    We6Op,
    Nc1,
    Nc2,
    Nc3,
    Nc7,
}

/// Whether an axiom constrains a class of maps or a class of objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sort {
    Morphism,
    Object,
}

impl Axiom {
    pub const ALL: [Axiom; 18] = [
        Axiom::We0,
        Axiom::We1,
        Axiom::We1Prime,
        Axiom::We2,
        Axiom::We3,
        Axiom::We3Prime,
        Axiom::We4,
        Axiom::We5,
        Axiom::We6,
        Axiom::We7,
        Axiom::We3PrimeOp,
        Axiom::We4Op,
        Axiom::We5Op,
        Axiom::We6Op,
        Axiom::Nc1,
        Axiom::Nc2,
        Axiom::Nc3,
        Axiom::Nc7,
    ];

    /// The axioms on a class of weak equivalences, with duals.
    pub fn weak_equivalence() -> &'static [Axiom] {
        &Self::ALL[..14]
    }

    /// The null class axioms.
    pub fn null_class() -> &'static [Axiom] {
        &Self::ALL[14..]
    }

    pub fn name(self) -> &'static str {
        match self {
            Axiom::We0 => "WE0",
            Axiom::We1 => "WE1",
            Axiom::We1Prime => "WE1'",
            Axiom::We2 => "WE2",
            Axiom::We3 => "WE3",
            Axiom::We3Prime => "WE3'",
            Axiom::We4 => "WE4",
            Axiom::We5 => "WE5",
            Axiom::We6 => "WE6",
            Axiom::We7 => "WE7",
            Axiom::We3PrimeOp => "WE3'op",
            Axiom::We4Op => "WE4op",
            Axiom::We5Op => "WE5op",
            Axiom::We6Op => "WE6op",
            Axiom::Nc1 => "NC1",
            Axiom::Nc2 => "NC2",
            Axiom::Nc3 => "NC3",
            Axiom::Nc7 => "NC7",
        }
    }

    pub fn sort(self) -> Sort {
        if matches!(self, Axiom::Nc1 | Axiom::Nc2 | Axiom::Nc3 | Axiom::Nc7) {
            Sort::Object
        } else {
            Sort::Morphism
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn normalize(s: &str) -> String {
    s.trim()
        .replace('′', "'")
        .replace("ᵒᵖ", "op")
        .replace("^op", "op")
        .to_ascii_uppercase()
        .replace([' ', '_', '-'], "")
        .replace("PRIME", "'")
}

impl FromStr for Axiom {
    type Err = Error;

    /// Accepts `WE3'`, `WE3′`, `we3prime`, `WE3'op`, `WE3′ᵒᵖ` and similar.
    fn from_str(s: &str) -> Result<Self> {
        let key = normalize(s);
        Axiom::ALL
            .into_iter()
            .find(|a| a.name().to_ascii_uppercase() == key)
            .ok_or_else(|| Error::Unknown {
                what: "axiom",
                name: s.into(),
            })
    }
}

/// The class an axiom is checked against.
#[derive(Clone, Copy, Debug)]
pub enum ClassArg<'a> {
    Morphism(&'a MorphismClass),
    Object(&'a ObjectClass),
}

impl ClassArg<'_> {
    pub fn name(&self) -> &str {
        match self {
            ClassArg::Morphism(w) => w.name(),
            ClassArg::Object(n) => n.name(),
        }
    }
}

impl<'a> From<&'a MorphismClass> for ClassArg<'a> {
    fn from(w: &'a MorphismClass) -> Self {
        ClassArg::Morphism(w)
    }
}

impl<'a> From<&'a ObjectClass> for ClassArg<'a> {
    fn from(n: &'a ObjectClass) -> Self {
        ClassArg::Object(n)
    }
}

pub fn check_axiom<'a>(axiom: Axiom, class: impl Into<ClassArg<'a>>, spec: &SampleSpec) -> Result<AxiomReport> {
    check_axiom_with(axiom, class, spec, Execution::default())
}

pub fn check_axiom_with<'a>(
    axiom: Axiom,
    class: impl Into<ClassArg<'a>>,
    spec: &SampleSpec,
    exec: Execution,
) -> Result<AxiomReport> {
    let class = class.into();
    spec.validate()?;
    sort_matches(axiom, class)?;
    let report = run(axiom.name(), class.name(), spec, exec, |g| instance(axiom, class, g));
    Ok(match axiom {
        Axiom::We0 => report.with_note(
            "f ranges over homotopy equivalences built from isomorphisms, disk summands and null-homotopic perturbations",
        ),
        _ => report,
    })
}

fn sort_matches(axiom: Axiom, class: ClassArg<'_>) -> Result<()> {
    match (axiom.sort(), class) {
        (Sort::Morphism, ClassArg::Morphism(_)) | (Sort::Object, ClassArg::Object(_)) => Ok(()),
        (Sort::Morphism, _) => Err(Error::SortMismatch {
            axiom: axiom.name().into(),
            expected: "morphism",
        }),
        (Sort::Object, _) => Err(Error::SortMismatch {
            axiom: axiom.name().into(),
            expected: "object",
        }),
    }
}

/// Re-evaluates the instance behind a counterexample of [`check_axiom`].
pub fn replay<'a>(cx: &Counterexample, class: impl Into<ClassArg<'a>>) -> Result<Outcome> {
    let class = class.into();
    let axiom: Axiom = cx.axiom.parse()?;
    sort_matches(axiom, class)?;
    Ok(eval_index(axiom.name(), &cx.spec, cx.index, RETRIES, &|g: &mut Gen| {
        instance(axiom, class, g)
    }))
}

/// One sampled instance of `axiom`.
pub(crate) fn instance(axiom: Axiom, class: ClassArg<'_>, g: &mut Gen) -> Outcome {
    match class {
        ClassArg::Morphism(w) => match axiom {
            Axiom::We0 => we0(w, g),
            Axiom::We1 => we1(w, g),
            Axiom::We1Prime => we1_prime(w, g),
            Axiom::We2 => we2(w, g),
            Axiom::We3 => we3_family(w, g, Axiom::We3),
            Axiom::We3Prime => we3_family(w, g, Axiom::We3Prime),
            Axiom::We3PrimeOp => we3_family(w, g, Axiom::We3PrimeOp),
            Axiom::We4 => we4(w, g),
            Axiom::We4Op => we4_op(w, g),
            Axiom::We5 => we5(w, g),
            Axiom::We5Op => we5_op(w, g),
            Axiom::We6 => we6(w, g),
            Axiom::We6Op => we6_op(w, g),
            Axiom::We7 => we7(w, g),
            _ => unreachable!("sort checked"),
        },
        ClassArg::Object(n) => match axiom {
            Axiom::Nc1 => nc1(n, g),
            Axiom::Nc2 => nc2(n, g),
            Axiom::Nc3 => nc3(n, g),
            Axiom::Nc7 => nc7(n, g),
            _ => unreachable!("sort checked"),
        },
    }
}

fn missing(what: &str, w: &MorphismClass) -> String {
    format!("{what} is not in {}", w.name())
}

fn we0(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let mut small = g.scaled(2, 2);
    let a = small.complex();
    let (_, f) = small.we(&a);
    let x = g.complex();
    let we = g.chance(0.9);
    let (_, h) = g.map_from(&x, we);
    if !w.contains(&h) {
        return Outcome::Vacuous;
    }
    let (left, right) = (tensor_maps(&f, &h), tensor_maps(&h, &f));
    let (l, r) = (w.contains(&left), w.contains(&right));
    Outcome::check(
        l && r,
        || missing(if l { "g ⊗ f" } else { "f ⊗ g" }, w),
        || Diagram::new().map("f", &f).map("g", &h),
    )
}

fn we1(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let x = g.complex();
    let (_, f) = g.iso(&x);
    Outcome::check(
        w.contains(&f),
        || missing("isomorphism f", w),
        || Diagram::new().map("f", &f),
    )
}

fn we1_prime(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let x = g.complex();
    let (_, f) = g.we(&x);
    Outcome::check(
        w.contains(&f),
        || missing("homotopy equivalence f", w),
        || Diagram::new().map("f", &f),
    )
}

fn we2(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let x = g.complex();
    let (p, q) = (g.chance(0.85), g.chance(0.85));
    let (y, f) = g.map_from(&x, p);
    let (_, h) = g.map_from(&y, q);
    let hf = h.after(&f).expect("composable");
    let inside = [w.contains(&f), w.contains(&h), w.contains(&hf)];
    if inside.iter().filter(|&&b| b).count() < 2 {
        return Outcome::Vacuous;
    }
    let names = ["f", "g", "g f"];
    Outcome::check(
        inside.iter().all(|&b| b),
        || missing(names[inside.iter().position(|b| !b).expect("one missing")], w),
        || Diagram::new().map("f", &f).map("g", &h),
    )
}

/// WE3 and its two variants on a conflation morphism `(a, b, c)`.
fn we3_family(w: &MorphismClass, g: &mut Gen, which: Axiom) -> Outcome {
    let (we_a, we_c) = match which {
        Axiom::We3 => (g.chance(0.9), g.chance(0.9)),
        _ => (g.chance(0.8), g.chance(0.8)),
    };
    let m = conflation_morphism(g, we_a, we_c);
    let (a, b, c) = (w.contains(&m.a), w.contains(&m.b), w.contains(&m.c));
    let (premise, conclusion, name) = match which {
        Axiom::We3 => (a && c, b, "b"),
        Axiom::We3Prime => (a && b, c, "c"),
        _ => (b && c, a, "a"),
    };
    if !premise {
        return Outcome::Vacuous;
    }
    Outcome::check(conclusion, || missing(name, w), || m.diagram())
}

fn random_leg(g: &mut Gen) -> Leg {
    match g.pick(3) {
        0 => Leg::Any,
        1 => Leg::Equivalence,
        _ => Leg::Exact,
    }
}

fn we4(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let leg = random_leg(g);
    let m = span_morphism(g, leg);
    if !(w.contains(&m.a) && w.contains(&m.b) && w.contains(&m.c)) {
        return Outcome::Vacuous;
    }
    let po = pushout_along_inflation(&m.top.i, &m.top.f).expect("inflation");
    let po2 = pushout_along_inflation(&m.bottom.i, &m.bottom.f).expect("inflation");
    let u = po2.from_y().after(&m.a).expect("composable");
    let v = po2.from_z().after(&m.c).expect("composable");
    let induced = po.factor(&m.top.i, &m.top.f, &u, &v).expect("cocone commutes");
    Outcome::check(
        w.contains(&induced),
        || missing("the induced map of pushouts", w),
        || m.diagram().map("induced", &induced),
    )
}

fn we4_op(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let leg = random_leg(g);
    let m = cospan_morphism(g, leg);
    if !(w.contains(&m.a) && w.contains(&m.b) && w.contains(&m.c)) {
        return Outcome::Vacuous;
    }
    let pb = pullback_along_deflation(&m.top.p, &m.top.f).expect("deflation");
    let pb2 = pullback_along_deflation(&m.bottom.p, &m.bottom.f).expect("deflation");
    let u = m.a.after(pb.to_y()).expect("composable");
    let v = m.c.after(pb.to_z()).expect("composable");
    let induced = pb2.factor(&m.bottom.p, &m.bottom.f, &u, &v).expect("cone commutes");
    Outcome::check(
        w.contains(&induced),
        || missing("the induced map of pullbacks", w),
        || m.diagram().map("induced", &induced),
    )
}

fn we5(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let x = g.complex();
    let i = if g.chance(0.3) {
        let h = g.complex();
        let f = g.lattice_map(&x, &h);
        cylinder(&f).factorization.first
    } else {
        let k = g.complex();
        g.conflation_between(&x, &k).inflation().clone()
    };
    let we = g.chance(0.9);
    let (_, f) = g.map_from(&x, we);
    if !w.contains(&f) {
        return Outcome::Vacuous;
    }
    let po = pushout_along_inflation(&i, &f).expect("inflation");
    Outcome::check(
        w.contains(po.from_y()),
        || missing("y -> y ⊔ z", w),
        || Diagram::new().map("i", &i).map("f", &f).map("j", po.from_y()),
    )
}

fn we5_op(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let z = g.complex();
    let we = g.chance(0.9);
    let (x, f) = g.map_from(&z, we);
    if !w.contains(&f) {
        return Outcome::Vacuous;
    }
    let p = if g.chance(0.3) {
        let u = g.complex();
        let h = g.lattice_map(&u, &x);
        path_factorize(&h).second
    } else {
        let k = g.complex();
        g.conflation_between(&k, &x).deflation().clone()
    };
    let pb = pullback_along_deflation(&p, &f).expect("deflation");
    Outcome::check(
        w.contains(pb.to_y()),
        || missing("y ×_x z -> y", w),
        || Diagram::new().map("p", &p).map("f", &f).map("q", pb.to_y()),
    )
}

fn we6(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let (_, _, f) = g.chain_map();
    let cyl = cylinder(&f).factorization;
    let (alpha, beta) = (&cyl.first, &cyl.second);
    let mono = split_mono_witness(alpha).is_some();
    let factors = beta.after(alpha).ok().as_ref() == Some(&f);
    let inside = w.contains(beta);
    Outcome::check(
        mono && factors && inside,
        || {
            if !mono {
                "α(f) is not a cofibration".into()
            } else if !factors {
                "β(f) α(f) differs from f".into()
            } else {
                missing("β(f)", w)
            }
        },
        || Diagram::new().map("f", &f).map("alpha", alpha).map("beta", beta),
    )
}

fn we6_op(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let (_, _, f) = g.chain_map();
    let path = path_factorize(&f);
    let (gamma, delta) = (&path.first, &path.second);
    let epi = split_epi_witness(delta).is_some();
    let factors = delta.after(gamma).ok().as_ref() == Some(&f);
    let inside = w.contains(gamma);
    Outcome::check(
        epi && factors && inside,
        || {
            if !epi {
                "δ(f) is not a fibration".into()
            } else if !factors {
                "δ(f) γ(f) differs from f".into()
            } else {
                missing("γ(f)", w)
            }
        },
        || Diagram::new().map("f", &f).map("gamma", gamma).map("delta", delta),
    )
}

fn we7(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let (we_a, we_e) = (g.chance(0.8), g.chance(0.8));
    let r = retract_diagram(g, we_a, we_e);
    if !w.contains(&r.b) {
        return Outcome::Vacuous;
    }
    Outcome::check(w.contains(&r.a), || missing("a", w), || r.diagram())
}

/// A complex that lies in a typical null class more often than not.
fn candidate(g: &mut Gen) -> Known {
    if g.chance(0.7) {
        g.contractible()
    } else {
        g.complex()
    }
}

fn not_in(what: &str, n: &ObjectClass) -> String {
    format!("{what} is not in {}", n.name())
}

fn nc1(n: &ObjectClass, g: &mut Gen) -> Outcome {
    let x = candidate(g);
    if !n.contains(&x.complex) {
        return Outcome::Vacuous;
    }
    let (y, f) = g.we(&x);
    Outcome::check(
        n.contains(&y.complex),
        || not_in("y", n),
        || {
            Diagram::new()
                .object("x", &x.complex)
                .object("y", &y.complex)
                .map("f", &f)
        },
    )
}

fn nc2(n: &ObjectClass, g: &mut Gen) -> Outcome {
    let a = g.scaled(2, 2).complex();
    let x = candidate(g);
    if !n.contains(&x.complex) {
        return Outcome::Vacuous;
    }
    let ax = tensor(&a.complex, &x.complex);
    Outcome::check(
        n.contains(&ax),
        || not_in("a ⊗ x", n),
        || Diagram::new().object("a", &a.complex).object("x", &x.complex),
    )
}

fn nc3(n: &ObjectClass, g: &mut Gen) -> Outcome {
    let (x, z) = (candidate(g), candidate(g));
    if !(n.contains(&x.complex) && n.contains(&z.complex)) {
        return Outcome::Vacuous;
    }
    let c = g.conflation_between(&x, &z);
    Outcome::check(
        n.contains(c.middle()),
        || not_in("y", n),
        || Diagram::new().map("i", c.inflation()).map("p", c.deflation()),
    )
}

fn nc7(n: &ObjectClass, g: &mut Gen) -> Outcome {
    let (x, u) = (candidate(g), candidate(g));
    let q = g.lattice_map(&u, &x);
    let (xs, ys) = (Sum::new(&[&x.complex]), Sum::new(&[&x.complex, &u.complex]));
    let id = ChainMap::identity_arc(x.complex.clone());
    let i = blocks(&xs, &ys, &[(0, 0, &id)]);
    let p = blocks(&ys, &xs, &[(0, 0, &id), (0, 1, &q)]);
    let (phi, phi_inv) = g.random_automorphism(&ys.object);
    let i = phi.after(&i).expect("composable");
    let p = p.after(&phi_inv).expect("composable");
    debug_assert_eq!(p.after(&i).ok(), Some(id));
    if !n.contains(i.target()) {
        return Outcome::Vacuous;
    }
    Outcome::check(
        n.contains(&x.complex),
        || not_in("the retract x", n),
        || Diagram::new().map("i", &i).map("p", &p),
    )
}

/// Kinds of sampled diagram bundles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    Complex,
    ChainMap,
    ComposablePair,
    Conflation,
    ConflationMorphism,
    PushoutDiagram,
    PullbackDiagram,
    RetractDiagram,
}

impl SampleKind {
    pub const ALL: [SampleKind; 8] = [
        SampleKind::Complex,
        SampleKind::ChainMap,
        SampleKind::ComposablePair,
        SampleKind::Conflation,
        SampleKind::ConflationMorphism,
        SampleKind::PushoutDiagram,
        SampleKind::PullbackDiagram,
        SampleKind::RetractDiagram,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SampleKind::Complex => "complex",
            SampleKind::ChainMap => "chain_map",
            SampleKind::ComposablePair => "composable_pair",
            SampleKind::Conflation => "conflation",
            SampleKind::ConflationMorphism => "conflation_morphism",
            SampleKind::PushoutDiagram => "pushout_diagram",
            SampleKind::PullbackDiagram => "pullback_diagram",
            SampleKind::RetractDiagram => "retract_diagram",
        }
    }
}

impl FromStr for SampleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        SampleKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::Unknown {
                what: "sample kind",
                name: s.into(),
            })
    }
}

/// The first `spec.count` diagrams of the given kind.
pub fn sample(kind: SampleKind, spec: &SampleSpec) -> Result<Vec<Diagram>> {
    spec.validate()?;
    Ok((0..spec.count)
        .map(|k| sample_one(kind, &mut spec.generator(kind.name(), k)))
        .collect())
}

fn sample_one(kind: SampleKind, g: &mut Gen) -> Diagram {
    match kind {
        SampleKind::Complex => Diagram::new().object("x", &g.complex().complex),
        SampleKind::ChainMap => Diagram::new().map("f", &g.chain_map().2),
        SampleKind::ComposablePair => {
            let x = g.complex();
            let (p, q) = (g.chance(0.5), g.chance(0.5));
            let (y, f) = g.map_from(&x, p);
            let (_, h) = g.map_from(&y, q);
            Diagram::new().map("f", &f).map("g", &h)
        }
        SampleKind::Conflation => {
            let c = g.conflation();
            Diagram::new().map("i", c.inflation()).map("p", c.deflation())
        }
        SampleKind::ConflationMorphism => {
            let (a, c) = (g.chance(0.5), g.chance(0.5));
            conflation_morphism(g, a, c).diagram()
        }
        SampleKind::PushoutDiagram => {
            let leg = random_leg(g);
            let s = span_morphism(g, leg).top;
            let po = pushout_along_inflation(&s.i, &s.f).expect("inflation");
            Diagram::new()
                .map("i", &s.i)
                .map("f", &s.f)
                .map("j_y", po.from_y())
                .map("j_z", po.from_z())
        }
        SampleKind::PullbackDiagram => {
            let leg = random_leg(g);
            let s = cospan_morphism(g, leg).top;
            let pb = pullback_along_deflation(&s.p, &s.f).expect("deflation");
            Diagram::new()
                .map("p", &s.p)
                .map("f", &s.f)
                .map("q_y", pb.to_y())
                .map("q_z", pb.to_z())
        }
        SampleKind::RetractDiagram => {
            let (a, e) = (g.chance(0.5), g.chance(0.5));
            retract_diagram(g, a, e).diagram()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> SampleSpec {
        SampleSpec::new(3, 24)
    }

    #[test]
    fn names_parse_back() {
        for a in Axiom::ALL {
            assert_eq!(a.name().parse::<Axiom>().unwrap(), a);
        }
        assert_eq!("WE3′ᵒᵖ".parse::<Axiom>().unwrap(), Axiom::We3PrimeOp);
        assert_eq!("we1prime".parse::<Axiom>().unwrap(), Axiom::We1Prime);
        assert_eq!("nc7".parse::<Axiom>().unwrap(), Axiom::Nc7);
        assert!("WE8".parse::<Axiom>().is_err());
    }

    #[test]
    fn sort_mismatch_is_an_error() {
        let n = ObjectClass::acyclic();
        assert!(matches!(
            check_axiom(Axiom::We1, &n, &spec()),
            Err(Error::SortMismatch { .. })
        ));
        let w = MorphismClass::qis();
        assert!(check_axiom(Axiom::Nc3, &w, &spec()).is_err());
    }

    #[test]
    fn homotopy_equivalences_pass_every_axiom() {
        let w = MorphismClass::homotopy_eq();
        for &a in Axiom::weak_equivalence() {
            let r = check_axiom(a, &w, &spec()).unwrap();
            assert!(r.is_pass(), "{}: {:?}", a, r.counterexamples.first().map(|c| &c.detail));
            assert_eq!(r.passed + r.counterexamples.len(), r.attempted);
            assert!(r.attempted > 0, "{a} had no instances");
        }
    }

    #[test]
    fn null_class_axioms_hold_for_contractible() {
        let n = ObjectClass::contractible();
        for &a in Axiom::null_class() {
            let r = check_axiom(a, &n, &spec()).unwrap();
            assert!(r.is_pass(), "{a}");
            assert!(r.attempted > 0);
        }
    }

    #[test]
    fn surjections_fail_and_replay() {
        let w = MorphismClass::degreewise_surjective();
        let r = check_axiom(Axiom::We1Prime, &w, &spec()).unwrap();
        assert!(!r.is_pass());
        for cx in &r.counterexamples {
            let o = replay(cx, &w).unwrap();
            assert!(o.is_fail());
            let Outcome::Fail { diagram, .. } = o else {
                unreachable!()
            };
            assert_eq!(diagram, cx.diagram);
        }
    }

    #[test]
    fn sequential_and_parallel_reports_agree() {
        let w = MorphismClass::qis();
        let a = check_axiom_with(Axiom::We3, &w, &spec(), Execution::Sequential).unwrap();
        let b = check_axiom_with(Axiom::We3, &w, &spec(), Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn samples_are_deterministic() {
        for kind in SampleKind::ALL {
            let s = SampleSpec::new(9, 6);
            assert_eq!(sample(kind, &s).unwrap(), sample(kind, &s).unwrap());
            assert!(sample(kind, &SampleSpec::new(9, 0)).unwrap().is_empty());
            assert_eq!(kind.name().parse::<SampleKind>().unwrap(), kind);
        }
    }
}
