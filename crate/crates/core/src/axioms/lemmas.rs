use std::sync::Arc;

use super::checks::{check_axiom_with, Axiom, ClassArg};
use super::classes::{null_from_we, we_from_null, MorphismClass, ObjectClass};
use super::diagrams::{blocks, span_morphism, Leg, Sum};
use super::report::{eval_index, run, AxiomReport, Counterexample, Diagram, Outcome, RETRIES};
use super::sample::{Gen, Known, SampleSpec};
use crate::complex_core::{cone_inclusion, pushout_along_inflation, tensor, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::frobenius::{cylinder, cylinder_map};
use crate::homotopy::find_homotopy;
use crate::zlinalg::IntMatrix;

const ROUNDTRIP_MAPS: &str = "roundtrip-maps";
const ROUNDTRIP_OBJECTS: &str = "roundtrip-objects";
const NULL_ROUNDTRIP_OBJECTS: &str = "null-roundtrip-objects";
const NULL_ROUNDTRIP_MAPS: &str = "null-roundtrip-maps";
const PASTING: &str = "pasting";
const RETRACT_CLOSURE: &str = "retract-closure";
const THREE_SQUARES: &str = "three-squares";
const PRECOGLUING: &str = "precogluing";
const WE3_PRIME_REPLAY: &str = "WE3'-via-WE4";

fn candidate(g: &mut Gen) -> Known {
    if g.chance(0.6) {
        g.contractible()
    } else {
        g.complex()
    }
}

fn roundtrip_map(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let f = if g.chance(0.2) {
        let x = g.complex();
        g.iso(&x).1
    } else {
        g.chain_map().2
    };
    let back = we_from_null(&null_from_we(w));
    let (a, b) = (w.contains(&f), back.contains(&f));
    Outcome::check(
        a == b,
        || format!("f in {}: {a}, in {}: {b}", w.name(), back.name()),
        || Diagram::new().map("f", &f),
    )
}

fn roundtrip_object(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let x = candidate(g);
    let n = null_from_we(w);
    let back = null_from_we(&we_from_null(&n));
    let (a, b) = (n.contains(&x.complex), back.contains(&x.complex));
    Outcome::check(
        a == b,
        || format!("x in {}: {a}, in {}: {b}", n.name(), back.name()),
        || Diagram::new().object("x", &x.complex),
    )
}

/// `w = w_{E^w}` on sampled maps and `E^w = E^{w_{E^w}}` on sampled
/// complexes.
pub fn roundtrip_check(w: &MorphismClass, spec: &SampleSpec) -> Result<AxiomReport> {
    roundtrip_check_with(w, spec, Execution::default())
}

pub fn roundtrip_check_with(w: &MorphismClass, spec: &SampleSpec, exec: Execution) -> Result<AxiomReport> {
    spec.validate()?;
    let maps = run(ROUNDTRIP_MAPS, w.name(), spec, exec, |g| roundtrip_map(w, g));
    let objects = run(ROUNDTRIP_OBJECTS, w.name(), spec, exec, |g| roundtrip_object(w, g));
    Ok(AxiomReport::merged("roundtrip", w.name(), spec, vec![maps, objects]))
}

fn null_roundtrip_object(n: &ObjectClass, g: &mut Gen) -> Outcome {
    let x = candidate(g);
    let back = null_from_we(&we_from_null(n));
    let (a, b) = (n.contains(&x.complex), back.contains(&x.complex));
    Outcome::check(
        a == b,
        || format!("x in {}: {a}, in {}: {b}", n.name(), back.name()),
        || Diagram::new().object("x", &x.complex),
    )
}

fn null_roundtrip_map(n: &ObjectClass, g: &mut Gen) -> Outcome {
    let f = g.chain_map().2;
    let w = we_from_null(n);
    let back = we_from_null(&null_from_we(&w));
    let (a, b) = (w.contains(&f), back.contains(&f));
    Outcome::check(
        a == b,
        || format!("f in {}: {a}, in {}: {b}", w.name(), back.name()),
        || Diagram::new().map("f", &f),
    )
}

/// `N = E^{w_N}` on sampled complexes and `w_N = w_{E^{w_N}}` on maps.
pub fn null_roundtrip_check(n: &ObjectClass, spec: &SampleSpec) -> Result<AxiomReport> {
    null_roundtrip_check_with(n, spec, Execution::default())
}

pub fn null_roundtrip_check_with(n: &ObjectClass, spec: &SampleSpec, exec: Execution) -> Result<AxiomReport> {
    spec.validate()?;
    let objects = run(NULL_ROUNDTRIP_OBJECTS, n.name(), spec, exec, |g| {
        null_roundtrip_object(n, g)
    });
    let maps = run(NULL_ROUNDTRIP_MAPS, n.name(), spec, exec, |g| null_roundtrip_map(n, g));
    Ok(AxiomReport::merged(
        "null-roundtrip",
        n.name(),
        spec,
        vec![objects, maps],
    ))
}

/// Both directions of the pasting lemma for pushouts: with squares I and
/// II computed directly and I+II computed as one pushout, the comparison
/// maps are mutually inverse isomorphisms.
fn pasting(g: &mut Gen, index_hint: bool) -> Outcome {
    let x = g.complex();
    let k = g.complex();
    let i = g.conflation_between(&x, &k).inflation().clone();
    let (f, h) = if index_hint {
        let id = ChainMap::identity_arc(x.complex.clone());
        (id.clone(), id)
    } else {
        let (z, f) = {
            let we = g.chance(0.4);
            g.map_from(&x, we)
        };
        let we = g.chance(0.4);
        let (_, h) = g.map_from(&z, we);
        (f, h)
    };
    let hf = h.after(&f).expect("composable");
    let po1 = pushout_along_inflation(&i, &f).expect("inflation");
    let po2 = pushout_along_inflation(po1.from_z(), &h).expect("pushouts preserve inflations");
    let po3 = pushout_along_inflation(&i, &hf).expect("inflation");
    let diagram = || Diagram::new().map("i", &i).map("f", &f).map("g", &h);
    // (i): I and II coCartesian, so the composite square has the universal
    // property of po3
    let outer_y = po2.from_y().after(po1.from_y()).expect("composable");
    let phi = po3
        .factor(&i, &hf, &outer_y, po2.from_z())
        .expect("the pasted square commutes");
    // (ii): I+II and I coCartesian, so II has the universal property of po2
    let m = po1
        .factor(&i, &f, po3.from_y(), &po3.from_z().after(&h).expect("composable"))
        .expect("square I maps to the outer pushout");
    let psi = po2
        .factor(po1.from_z(), &h, &m, po3.from_z())
        .expect("square II commutes");
    let round = psi.after(&phi).ok() == Some(ChainMap::identity(po3.object()))
        && phi.after(&psi).ok() == Some(ChainMap::identity(po2.object()));
    if !phi.is_iso() {
        return Outcome::Fail {
            detail: "the pasted square is not a pushout".into(),
            diagram: diagram(),
        };
    }
    Outcome::check(
        psi.is_iso() && round,
        || "the right square is not a pushout".into(),
        diagram,
    )
}

pub fn pasting_check(spec: &SampleSpec) -> Result<AxiomReport> {
    pasting_check_with(spec, Execution::default())
}

pub fn pasting_check_with(spec: &SampleSpec, exec: Execution) -> Result<AxiomReport> {
    spec.validate()?;
    Ok(run(PASTING, "pushouts", spec, exec, |g| {
        let degenerate = g.pick(10) == 0;
        pasting(g, degenerate)
    }))
}

/// Retracts `x` of members `a`, in three flavors: `a = x ⊕ disks`, the
/// strict retraction `x -> a ⊕ Cx -> x` built from a homotopy retraction
/// `p i ≃ 1`, and random strict retracts.
fn retract_closure(g: &mut Gen) -> Outcome {
    let classes = [ObjectClass::contractible(), ObjectClass::acyclic()];
    let (x, a, i, p) = match g.pick(3) {
        0 => {
            let x = g.contractible();
            let d = g.contractible();
            let sum = x.direct_sum(&d);
            let (xs, ys) = (Sum::new(&[&x.complex]), Sum::new(&[&x.complex, &d.complex]));
            let id = ChainMap::identity_arc(x.complex.clone());
            let i = blocks(&xs, &ys, &[(0, 0, &id)]).with_ends(x.complex.clone(), sum.complex.clone());
            let p = blocks(&ys, &xs, &[(0, 0, &id)]).with_ends(sum.complex.clone(), x.complex.clone());
            (x.complex, sum.complex, i.expect("same sum"), p.expect("same sum"))
        }
        1 => match homotopy_retract(g) {
            Some(parts) => parts,
            None => {
                return Outcome::Fail {
                    detail: "the homotopy retraction could not be rectified".into(),
                    diagram: Diagram::new(),
                }
            }
        },
        _ => {
            let (x, u) = (g.contractible(), candidate(g));
            let q = g.lattice_map(&u, &x);
            let (xs, ys) = (Sum::new(&[&x.complex]), Sum::new(&[&x.complex, &u.complex]));
            let id = ChainMap::identity_arc(x.complex.clone());
            let i = blocks(&xs, &ys, &[(0, 0, &id)]);
            let p = blocks(&ys, &xs, &[(0, 0, &id), (0, 1, &q)]);
            let (phi, phi_inv) = g.random_automorphism(&ys.object);
            let (i, p) = (
                phi.after(&i).expect("composable"),
                p.after(&phi_inv).expect("composable"),
            );
            (x.complex, i.target_arc(), i, p)
        }
    };
    let diagram = || Diagram::new().map("i", &i).map("p", &p);
    if p.after(&i).ok() != Some(ChainMap::identity(&x)) {
        return Outcome::Fail {
            detail: "p i is not the identity".into(),
            diagram: diagram(),
        };
    }
    let mut any = false;
    for n in &classes {
        if !n.contains(&a) {
            continue;
        }
        any = true;
        if !n.contains(&x) {
            return Outcome::Fail {
                detail: format!("the retract x is not in {}", n.name()),
                diagram: diagram(),
            };
        }
    }
    if any {
        Outcome::Pass
    } else {
        Outcome::Vacuous
    }
}

/// From `i: x -> a`, `p: a -> x` with `p i ≃ 1` via `s`, the strict
/// retraction `(p, H)(i; -ι) = 1` through `a ⊕ Cx`, where `H: Cx -> x`
/// restricts to `p i - 1` on `x` and to `s` on the shifted copy.
fn homotopy_retract(g: &mut Gen) -> Option<(Arc<Complex>, Arc<Complex>, ChainMap, ChainMap)> {
    let x = g.contractible();
    let d = g.contractible();
    let sum = x.direct_sum(&d);
    let (xs, ys) = (Sum::new(&[&x.complex]), Sum::new(&[&x.complex, &d.complex]));
    let id = ChainMap::identity_arc(x.complex.clone());
    let incl = blocks(&xs, &ys, &[(0, 0, &id)])
        .with_ends(x.complex.clone(), sum.complex.clone())
        .ok()?;
    let proj = blocks(&ys, &xs, &[(0, 0, &id)])
        .with_ends(sum.complex.clone(), x.complex.clone())
        .ok()?;
    let (_, a_iso) = g.iso(&sum);
    let a_inv = a_iso.inverse()?;
    let i = g.perturb(&a_iso.after(&incl).ok()?);
    let p = g.perturb(&proj.after(&a_inv).ok()?);
    let pi = p.after(&i).ok()?;
    let s = find_homotopy(&pi, &id).ok()??;
    let xc = x.complex.clone();
    let cx = Arc::new(tensor(&Complex::c(), &xc));
    let iota = cone_inclusion(&xc, &cx);
    let h = ChainMap::new_arc(
        cx.clone(),
        xc.clone(),
        cx.degrees()
            .map(|n| {
                let diff = &*pi.get(n) - &IntMatrix::identity(xc.rank(n));
                (n, IntMatrix::hstack(xc.rank(n), &[&diff, &s.get(n + 1)]))
            })
            .collect(),
    )
    .ok()?;
    let a = i.target_arc();
    let (aa, big) = (Sum::new(&[&xc]), Sum::new(&[&a, &cx]));
    let neg_iota = iota.neg();
    let section = blocks(&aa, &big, &[(0, 0, &i), (1, 0, &neg_iota)]);
    let retraction = blocks(&big, &aa, &[(0, 0, &p), (0, 1, &h)]);
    Some((xc, big.object.clone(), section, retraction))
}

pub fn retract_closure_check(spec: &SampleSpec) -> Result<AxiomReport> {
    retract_closure_check_with(spec, Execution::default())
}

pub fn retract_closure_check_with(spec: &SampleSpec, exec: Execution) -> Result<AxiomReport> {
    spec.validate()?;
    Ok(run(
        RETRACT_CLOSURE,
        "CONTRACTIBLE+ACYCLIC",
        spec,
        exec,
        retract_closure,
    ))
}

/// The cofiber of a conflation morphism as the pushout along `x -> 0`:
/// the induced map of pushouts agrees with `c` and lies in `w`.
fn we3_prime_replay(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let (we_a, we_c) = (g.chance(0.9), g.chance(0.8));
    let m = super::diagrams::conflation_morphism(g, we_a, we_c);
    if !(w.contains(&m.a) && w.contains(&m.b)) {
        return Outcome::Vacuous;
    }
    let (i, i2) = (m.top.inflation(), m.bottom.inflation());
    let (x, x2) = (i.source(), i2.source());
    let (to0, to0b) = (ChainMap::to_zero(x), ChainMap::to_zero(x2));
    let po = pushout_along_inflation(i, &to0).expect("inflation");
    let po2 = pushout_along_inflation(i2, &to0b).expect("inflation");
    let zero_id = ChainMap::identity(&Complex::zero());
    let u = po2.from_y().after(&m.b).expect("composable");
    let v = po2.from_z().after(&zero_id).expect("composable");
    let induced = po.factor(i, &to0, &u, &v).expect("cocone commutes");
    // identify the pushouts with the cokernels z, z'
    let kappa = po
        .factor(i, &to0, m.top.deflation(), &ChainMap::from_zero(m.top.right()))
        .expect("p i = 0");
    let kappa2 = po2
        .factor(i2, &to0b, m.bottom.deflation(), &ChainMap::from_zero(m.bottom.right()))
        .expect("p' i' = 0");
    let agrees = kappa.is_iso() && kappa2.is_iso() && kappa2.after(&induced).ok() == m.c.after(&kappa).ok();
    if !agrees {
        return Outcome::Fail {
            detail: "0 ⊔_a b differs from c".into(),
            diagram: m.diagram(),
        };
    }
    Outcome::check(
        w.contains(&induced),
        || format!("0 ⊔_a b is not in {}", w.name()),
        || m.diagram(),
    )
}

/// Induced map of pushouts for a span morphism whose horizontal legs are
/// both inflations or both in `w`.
fn precogluing(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let leg = if g.chance(0.5) { Leg::Exact } else { Leg::Equivalence };
    let m = span_morphism(g, leg);
    let legs_ok = match leg {
        Leg::Equivalence => w.contains(&m.top.f) && w.contains(&m.bottom.f),
        _ => true,
    };
    if !(legs_ok && w.contains(&m.a) && w.contains(&m.b) && w.contains(&m.c)) {
        return Outcome::Vacuous;
    }
    let po = pushout_along_inflation(&m.top.i, &m.top.f).expect("inflation");
    let po2 = pushout_along_inflation(&m.bottom.i, &m.bottom.f).expect("inflation");
    let u = po2.from_y().after(&m.a).expect("composable");
    let v = po2.from_z().after(&m.c).expect("composable");
    let induced = po.factor(&m.top.i, &m.top.f, &u, &v).expect("cocone commutes");
    Outcome::check(
        w.contains(&induced),
        || format!("a ⊔_b c is not in {}", w.name()),
        || m.diagram().map("induced", &induced),
    )
}

/// The proof of WE4 from WE2, WE5 and WE6: factor `f` through its
/// cylinder, push out in two steps, and compare with the direct pushout.
fn three_squares(w: &MorphismClass, g: &mut Gen) -> Outcome {
    let m = span_morphism(g, Leg::Any);
    if !(w.contains(&m.a) && w.contains(&m.b) && w.contains(&m.c)) {
        return Outcome::Vacuous;
    }
    let (i, f, i2, f2) = (&m.top.i, &m.top.f, &m.bottom.i, &m.bottom.f);
    let (cyl, cyl2) = (cylinder(f).factorization, cylinder(f2).factorization);
    let d = cylinder_map(f, f2, &m.b, &m.c).expect("square commutes");
    let d = d
        .with_ends(cyl.middle.clone(), cyl2.middle.clone())
        .expect("same cylinders");
    let q = pushout_along_inflation(i, &cyl.first).expect("inflation");
    let q2 = pushout_along_inflation(i2, &cyl2.first).expect("inflation");
    let e = q
        .factor(
            i,
            &cyl.first,
            &q2.from_y().after(&m.a).expect("composable"),
            &q2.from_z().after(&d).expect("composable"),
        )
        .expect("first square commutes");
    let r = pushout_along_inflation(q.from_z(), &cyl.second).expect("pushouts preserve inflations");
    let r2 = pushout_along_inflation(q2.from_z(), &cyl2.second).expect("pushouts preserve inflations");
    let ec = r
        .factor(
            q.from_z(),
            &cyl.second,
            &r2.from_y().after(&e).expect("composable"),
            &r2.from_z().after(&m.c).expect("composable"),
        )
        .expect("second square commutes");
    let p = pushout_along_inflation(i, f).expect("inflation");
    let p2 = pushout_along_inflation(i2, f2).expect("inflation");
    let direct = p
        .factor(
            i,
            f,
            &p2.from_y().after(&m.a).expect("composable"),
            &p2.from_z().after(&m.c).expect("composable"),
        )
        .expect("cocone commutes");
    let compare = |p: &crate::complex_core::Pushout,
                   r: &crate::complex_core::Pushout,
                   q: &crate::complex_core::Pushout,
                   i: &ChainMap,
                   f: &ChainMap| {
        p.factor(i, f, &r.from_y().after(q.from_y()).expect("composable"), r.from_z())
            .expect("pasted square commutes")
    };
    let phi = compare(&p, &r, &q, i, f);
    let phi2 = compare(&p2, &r2, &q2, i2, f2);
    let diagram = || m.diagram();
    if !(phi.is_iso() && phi2.is_iso()) {
        return Outcome::Fail {
            detail: "the pasted pushout is not the direct pushout".into(),
            diagram: diagram(),
        };
    }
    if ec.after(&phi).ok() != phi2.after(&direct).ok() {
        return Outcome::Fail {
            detail: "e ⊔_d c differs from a ⊔_b c".into(),
            diagram: diagram(),
        };
    }
    let inside = [("e", &e), ("e ⊔_d c", &ec), ("a ⊔_b c", &direct)];
    match inside.iter().find(|(_, f)| !w.contains(f)) {
        None => Outcome::Pass,
        Some((name, _)) => Outcome::Fail {
            detail: format!("{name} is not in {}", w.name()),
            diagram: diagram(),
        },
    }
}

fn implication_stream(name: &str) -> Option<fn(&MorphismClass, &mut Gen) -> Outcome> {
    match name {
        WE3_PRIME_REPLAY => Some(we3_prime_replay),
        PRECOGLUING => Some(precogluing),
        THREE_SQUARES => Some(three_squares),
        _ => None,
    }
}

/// Premises and conclusions of the three implications between the
/// axioms, followed by the constructions their proofs use.
pub fn implication_checks(w: &MorphismClass, spec: &SampleSpec, exec: Execution) -> Result<Vec<AxiomReport>> {
    spec.validate()?;
    let rules: [(&[Axiom], Axiom); 3] = [
        (&[Axiom::We1, Axiom::We3], Axiom::We5),
        (&[Axiom::We2, Axiom::We5, Axiom::We6], Axiom::We4),
        (&[Axiom::We1, Axiom::We4], Axiom::We3Prime),
    ];
    let mut out = Vec::new();
    for (premises, conclusion) in rules {
        let reports: Vec<AxiomReport> = premises
            .iter()
            .map(|&a| check_axiom_with(a, w, spec, exec))
            .collect::<Result<_>>()?;
        let names: Vec<&str> = premises.iter().map(|a| a.name()).collect();
        let label = format!("{} => {}", names.join(" + "), conclusion.name());
        if reports.iter().all(AxiomReport::is_pass) {
            let r = check_axiom_with(conclusion, w, spec, exec)?;
            out.push(AxiomReport::merged(&label, w.name(), spec, vec![r]));
        } else {
            let failed: Vec<&str> = reports
                .iter()
                .filter(|r| !r.is_pass())
                .map(|r| r.axiom.as_str())
                .collect();
            out.push(
                AxiomReport::empty(&label, w.name(), spec)
                    .with_note(format!("premise {} failed; conclusion not checked", failed.join(", "))),
            );
        }
    }
    for name in [WE3_PRIME_REPLAY, PRECOGLUING, THREE_SQUARES] {
        let f = implication_stream(name).expect("known stream");
        out.push(run(name, w.name(), spec, exec, |g| f(w, g)));
    }
    Ok(out)
}

/// [`implication_checks`] for the built-in classes QIS and HOMOTOPY_EQ,
/// merged into one report.
pub fn implication_suite(spec: &SampleSpec) -> Result<AxiomReport> {
    implication_suite_with(spec, Execution::default())
}

pub fn implication_suite_with(spec: &SampleSpec, exec: Execution) -> Result<AxiomReport> {
    let mut parts = Vec::new();
    for w in [MorphismClass::qis(), MorphismClass::homotopy_eq()] {
        for r in implication_checks(&w, spec, exec)? {
            let note = format!("{}: {}", w.name(), r.summary());
            parts.push(r.with_note(note));
        }
    }
    Ok(AxiomReport::merged("implications", "QIS, HOMOTOPY_EQ", spec, parts))
}

/// Re-evaluates the instance behind any counterexample produced by this
/// module or by [`super::check_axiom`]. The class is needed for axiom and
/// roundtrip streams and ignored otherwise.
pub fn replay_any<'a>(cx: &Counterexample, class: Option<ClassArg<'a>>) -> Result<Outcome> {
    let at = |f: &dyn Fn(&mut Gen) -> Outcome| eval_index(&cx.axiom, &cx.spec, cx.index, RETRIES, &f);
    let need_w = || match class {
        Some(ClassArg::Morphism(w)) => Ok(w),
        _ => Err(Error::SortMismatch {
            axiom: cx.axiom.clone(),
            expected: "morphism",
        }),
    };
    let need_n = || match class {
        Some(ClassArg::Object(n)) => Ok(n),
        _ => Err(Error::SortMismatch {
            axiom: cx.axiom.clone(),
            expected: "object",
        }),
    };
    match cx.axiom.as_str() {
        ROUNDTRIP_MAPS => {
            let w = need_w()?;
            Ok(at(&|g| roundtrip_map(w, g)))
        }
        ROUNDTRIP_OBJECTS => {
            let w = need_w()?;
            Ok(at(&|g| roundtrip_object(w, g)))
        }
        NULL_ROUNDTRIP_OBJECTS => {
            let n = need_n()?;
            Ok(at(&|g| null_roundtrip_object(n, g)))
        }
        NULL_ROUNDTRIP_MAPS => {
            let n = need_n()?;
            Ok(at(&|g| null_roundtrip_map(n, g)))
        }
        PASTING => Ok(at(&|g| {
            let degenerate = g.pick(10) == 0;
            pasting(g, degenerate)
        })),
        RETRACT_CLOSURE => Ok(at(&retract_closure)),
        name => {
            if let Some(f) = implication_stream(name) {
                let w = need_w()?;
                return Ok(at(&|g| f(w, g)));
            }
            let axiom: Axiom = name.parse()?;
            let class = class.ok_or_else(|| Error::SortMismatch {
                axiom: name.into(),
                expected: if axiom.sort() == super::checks::Sort::Object {
                    "object"
                } else {
                    "morphism"
                },
            })?;
            super::checks::replay(cx, class)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> SampleSpec {
        SampleSpec::new(21, 40)
    }

    #[test]
    fn roundtrip_holds_for_the_builtin_classes() {
        for w in [MorphismClass::qis(), MorphismClass::homotopy_eq()] {
            let r = roundtrip_check(&w, &spec()).unwrap();
            assert!(r.is_pass(), "{}", r.summary());
            assert_eq!(r.attempted, 2 * spec().count);
        }
    }

    #[test]
    fn roundtrip_fails_for_isomorphisms() {
        let w = MorphismClass::iso();
        let r = roundtrip_check(&w, &spec()).unwrap();
        assert!(!r.is_pass());
        let cx = &r.counterexamples[0];
        assert!(replay_any(cx, Some(ClassArg::Morphism(&w))).unwrap().is_fail());
    }

    #[test]
    fn null_roundtrip_holds() {
        for n in [ObjectClass::contractible(), ObjectClass::acyclic(), ObjectClass::zero()] {
            let r = null_roundtrip_check(&n, &spec()).unwrap();
            assert!(r.is_pass(), "{}", r.summary());
        }
    }

    #[test]
    fn pasting_both_directions() {
        let r = pasting_check(&spec()).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexamples.first().map(|c| &c.detail));
        assert_eq!(r.attempted, spec().count);
    }

    #[test]
    fn retracts_of_null_objects() {
        let r = retract_closure_check(&spec()).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexamples.first().map(|c| &c.detail));
        assert!(r.attempted > spec().count / 2);
    }

    #[test]
    fn implications_hold_for_builtin_classes() {
        let r = implication_suite(&SampleSpec::new(4, 16)).unwrap();
        assert!(
            r.is_pass(),
            "{:?}",
            r.counterexamples.first().map(|c| (&c.axiom, &c.detail))
        );
        assert!(r.attempted > 0);
    }
}
