//! Named, seeded batches of checks with a combined verdict.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::axioms::{blocks, conflation_morphism, run, Sum};
use crate::axioms::{
    check_axiom_with, implication_checks, null_roundtrip_check_with, pasting_check_with, retract_closure_check_with,
    roundtrip_check_with, Axiom, AxiomReport, Diagram, Gen, Known, MorphismClass, ObjectClass, Outcome, SampleSpec,
};
use crate::complex_core::{tensor, tensor_maps, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::format::{
    parse_chain_map, parse_complex, parse_conflation, parse_periodic, parse_tower, serialize_chain_map,
    serialize_complex, serialize_conflation, serialize_periodic, serialize_tower,
};
use crate::frobenius::{
    brutal_conflation, cone, cone_via_pushout, cylinder, smart_conflation, split_idempotent, truncate, TruncationKind,
};
use crate::homotopy::{homology, induced_homology_map, is_acyclic, is_contractible, is_quasi_iso, QisMode};
use crate::qw::{
    ep_homology, euler_char, is_levelwise_acyclic, is_qw_total, swindle_f, swindle_iso, swindle_terms, totalize,
    TowerComplex, TowerMap,
};
use crate::zlinalg::{minor_gcd, smith_normal_form, Int, IntMatrix};

/// The available suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    AxiomsQis,
    AxiomsHoeq,
    NullClasses,
    Roundtrip,
    Implications,
    Pasting,
    QwShadows,
    Swindle,
    Euler,
    SnfOracle,
    QisDeciders,
    ContractibleCx,
    Cones,
    Truncation,
    Idempotents,
    Formats,
}

impl Suite {
    pub const ALL: [Suite; 16] = [
        Suite::AxiomsQis,
        Suite::AxiomsHoeq,
        Suite::NullClasses,
        Suite::Roundtrip,
        Suite::Implications,
        Suite::Pasting,
        Suite::QwShadows,
        Suite::Swindle,
        Suite::Euler,
        Suite::SnfOracle,
        Suite::QisDeciders,
        Suite::ContractibleCx,
        Suite::Cones,
        Suite::Truncation,
        Suite::Idempotents,
        Suite::Formats,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::AxiomsQis => "axioms-qis",
            Suite::AxiomsHoeq => "axioms-hoeq",
            Suite::NullClasses => "nullclasses",
            Suite::Roundtrip => "roundtrip",
            Suite::Implications => "implications",
            Suite::Pasting => "pasting",
            Suite::QwShadows => "qw-shadows",
            Suite::Swindle => "swindle",
            Suite::Euler => "euler",
            Suite::SnfOracle => "snf-oracle",
            Suite::QisDeciders => "qis-deciders",
            Suite::ContractibleCx => "contractible-cx",
            Suite::Cones => "cones",
            Suite::Truncation => "truncation",
            Suite::Idempotents => "idempotents",
            Suite::Formats => "formats",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownSuite(s.into()))
    }
}

/// Reports of every check in a suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub count: usize,
    pub spec: SampleSpec,
    pub checks: Vec<AxiomReport>,
    pub seconds: f64,
    pub pass: bool,
}

impl SuiteReport {
    /// Per-instance verdict strings, the part of a report that does not
    /// depend on timing.
    pub fn verdicts(&self) -> Vec<(String, String, String)> {
        self.checks
            .iter()
            .map(|r| (r.axiom.clone(), r.class.clone(), r.verdicts.clone()))
            .collect()
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for r in &self.checks {
            out.push_str(&r.summary());
            out.push('\n');
            for note in &r.notes {
                out.push_str(&format!("  note: {note}\n"));
            }
            for cx in r.counterexamples.iter().take(3) {
                out.push_str(&format!("  instance {}: {}\n", cx.index, cx.detail));
            }
        }
        let status = if self.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{status} suite {} (seed {}, count {}) in {:.2}s\n",
            self.suite, self.seed, self.count, self.seconds
        ));
        out
    }
}

/// Runs `suite` with `count` instances per check and default sizes.
pub fn run_suite(suite: Suite, seed: u64, count: usize) -> Result<SuiteReport> {
    run_suite_with(suite, &SampleSpec::new(seed, count), Execution::default())
}

pub fn run_suite_with(suite: Suite, spec: &SampleSpec, exec: Execution) -> Result<SuiteReport> {
    spec.validate()?;
    let start = Instant::now();
    let checks = checks(suite, spec, exec)?;
    let pass = checks.iter().all(AxiomReport::is_pass);
    Ok(SuiteReport {
        suite: suite.name().into(),
        seed: spec.seed,
        count: spec.count,
        spec: *spec,
        checks,
        seconds: start.elapsed().as_secs_f64(),
        pass,
    })
}

fn checks(suite: Suite, spec: &SampleSpec, exec: Execution) -> Result<Vec<AxiomReport>> {
    let axioms = |list: &[Axiom], class: &MorphismClass| {
        list.iter()
            .map(|&a| check_axiom_with(a, class, spec, exec))
            .collect::<Result<Vec<_>>>()
    };
    Ok(match suite {
        Suite::AxiomsQis => axioms(Axiom::weak_equivalence(), &MorphismClass::qis())?,
        Suite::AxiomsHoeq => axioms(Axiom::weak_equivalence(), &MorphismClass::homotopy_eq())?,
        Suite::NullClasses => {
            let mut out = Vec::new();
            for n in [ObjectClass::acyclic(), ObjectClass::contractible()] {
                for &a in Axiom::null_class().iter() {
                    out.push(check_axiom_with(a, &n, spec, exec)?);
                }
            }
            out.push(retract_closure_check_with(spec, exec)?);
            out
        }
        Suite::Roundtrip => vec![
            roundtrip_check_with(&MorphismClass::qis(), spec, exec)?,
            roundtrip_check_with(&MorphismClass::homotopy_eq(), spec, exec)?,
            null_roundtrip_check_with(&ObjectClass::acyclic(), spec, exec)?,
            null_roundtrip_check_with(&ObjectClass::contractible(), spec, exec)?,
        ],
        Suite::Implications => {
            let mut out = implication_checks(&MorphismClass::qis(), spec, exec)?;
            out.extend(implication_checks(&MorphismClass::homotopy_eq(), spec, exec)?);
            out
        }
        Suite::Pasting => vec![pasting_check_with(spec, exec)?],
        Suite::QwShadows => vec![
            run("qw-base-equivalence", "towers", spec, exec, qw_base),
            run("qw-entrywise-equivalence", "towers", spec, exec, qw_entrywise),
            run("qw-levelwise-acyclic", "towers", spec, exec, qw_levelwise),
            run("qw-two-entry-cone", "towers", spec, exec, qw_two_entry),
        ],
        Suite::Swindle => vec![
            run("swindle-witness", "bounded", spec, exec, swindle_witness),
            run("swindle-homology", "bounded", spec, exec, swindle_homology),
        ],
        Suite::Euler => vec![
            run("euler-additive", "conflations", spec, exec, euler_additive),
            run("euler-qis-invariant", "QIS", spec, exec, euler_qis),
            run("euler-multiplicative", "pairs", spec, exec, euler_tensor),
            run("euler-shift-cone", "maps", spec, exec, euler_shift_cone),
        ],
        Suite::SnfOracle => vec![run("snf-oracle", "3x3", spec, exec, snf_oracle)],
        Suite::QisDeciders => vec![run("qis-deciders", "maps", spec, exec, qis_deciders)],
        Suite::ContractibleCx => vec![run("contractible-cx", "complexes", spec, exec, contractible_cx)],
        Suite::Cones => vec![run("cone-coherence", "maps", spec, exec, cone_coherence)],
        Suite::Truncation => vec![run("truncation", "complexes", spec, exec, truncation)],
        Suite::Idempotents => vec![run("idempotent-splitting", "idempotents", spec, exec, idempotents)],
        Suite::Formats => vec![run("format-roundtrip", "documents", spec, exec, formats)],
    })
}

fn fail(detail: impl Into<String>, diagram: Diagram) -> Outcome {
    Outcome::Fail {
        detail: detail.into(),
        diagram,
    }
}

fn first_failure(checks: &[(bool, &str)], diagram: impl FnOnce() -> Diagram) -> Outcome {
    match checks.iter().find(|(ok, _)| !ok) {
        None => Outcome::Pass,
        Some((_, what)) => fail(*what, diagram()),
    }
}

fn snf_oracle(g: &mut Gen) -> Outcome {
    let rng = g.rng();
    let (rows, cols) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
    let data = (0..rows * cols).map(|_| Int::from(rng.gen_range(-2..=2))).collect();
    let a = IntMatrix::new(rows, cols, data).expect("sized data");
    let snf = smith_normal_form(&a);
    let diagram = || {
        Diagram::new().object(
            "a",
            &Complex::new(0, vec![cols, rows], vec![a.clone()]).expect("one map"),
        )
    };
    if !snf.verify(&a) {
        return fail("Smith decomposition does not verify", diagram());
    }
    let factors = snf.invariant_factors();
    let mut product = Int::one();
    for k in 1..=rows.min(cols) {
        product = match factors.get(k - 1) {
            Some(t) => product * t,
            None => Int::zero(),
        };
        if minor_gcd(&a, k).expect("k in range") != product {
            return fail(
                format!("order {k}: invariant factors disagree with the minor gcd"),
                diagram(),
            );
        }
    }
    Outcome::Pass
}

fn qis_deciders(g: &mut Gen) -> Outcome {
    let (_, _, f) = g.chain_map();
    let (h, c) = (is_quasi_iso(&f, QisMode::Homological), is_quasi_iso(&f, QisMode::Cone));
    Outcome::check(
        h == c,
        || format!("homological decider says {h}, cone decider says {c}"),
        || Diagram::new().map("f", &f),
    )
}

fn contractible_cx(g: &mut Gen) -> Outcome {
    let x = g.complex();
    let cx = tensor(&Complex::c(), &x.complex);
    Outcome::check(
        is_contractible(&cx),
        || "C ⊗ x is not contractible".into(),
        || Diagram::new().object("x", &x.complex),
    )
}

fn cone_coherence(g: &mut Gen) -> Outcome {
    let (_, _, f) = g.chain_map();
    let data = cone(&f);
    let cyl = cylinder(&f);
    let via = cone_via_pushout(&f);
    let fac = &cyl.factorization;
    first_failure(
        &[
            (data.validate().is_ok(), "y ↣ Cone(f) ↠ Tx does not validate"),
            (
                via.as_ref().is_ok_and(|p| p.agrees()),
                "the pushout cone differs from the block cone",
            ),
            (
                cyl.conflation.validate().is_ok(),
                "x ↣ Cyl(f) ↠ Cone(f) does not validate",
            ),
            (
                cyl.conflation.right() == data.cone(),
                "the cylinder cofiber is not the cone",
            ),
            (fac.composite() == f, "β α differs from f"),
        ],
        || Diagram::new().map("f", &f),
    )
}

fn truncation(g: &mut Gen) -> Outcome {
    let x = g.complex();
    let (lo, hi) = x.complex.support().unwrap_or((0, 0));
    let k = g.rng().gen_range(lo - 1..=hi + 1);
    let t = truncate(&x.complex, k, TruncationKind::SmartGe);
    let (hx, ht) = (homology(&x.complex), homology(&t.complex));
    let diagram = || {
        Diagram::new()
            .object("x", &x.complex)
            .object(&format!("tau>={k}"), &t.complex)
    };
    for n in lo - 1..=hi + 1 {
        if n >= k {
            let induced = induced_homology_map(&t.map, n).expect("valid comparison map");
            if hx.normal_form(n) != ht.normal_form(n) || !induced.is_iso() {
                return fail(format!("H^{n} changes under truncation at {k}"), diagram());
            }
        } else if !ht.normal_form(n).is_trivial() {
            return fail(format!("H^{n} of the truncation at {k} is nonzero"), diagram());
        }
    }
    first_failure(
        &[
            (
                brutal_conflation(&x.complex, k).validate().is_ok(),
                "brutal conflation does not validate",
            ),
            (
                smart_conflation(&x.complex, k).validate().is_ok(),
                "smart conflation does not validate",
            ),
        ],
        diagram,
    )
}

fn idempotents(g: &mut Gen) -> Outcome {
    let (a, b) = (g.complex(), g.complex());
    let sum = Sum::new(&[&a.complex, &b.complex]);
    let id = ChainMap::identity_arc(a.complex.clone());
    let e0 = blocks(&sum, &sum, &[(0, 0, &id)]);
    let (phi, phi_inv) = g.random_automorphism(&sum.object);
    let e = phi.after(&e0).and_then(|m| m.after(&phi_inv)).expect("composable");
    let diagram = || Diagram::new().map("e", &e);
    let Ok(split) = split_idempotent(&e) else {
        return fail("not recognized as an idempotent", diagram());
    };
    let k = split.image.clone();
    let (ks, ls) = (Arc::new(k), Arc::new(split.kernel.clone()));
    let parts = Sum::new(&[&ks, &ls]);
    let proj = blocks(&parts, &parts, &[(0, 0, &ChainMap::identity_arc(ks.clone()))]);
    let intertwines = e.after(&split.iso).ok()
        == proj
            .with_ends(split.iso.source_arc(), split.iso.source_arc())
            .ok()
            .and_then(|p| split.iso.after(&p).ok());
    first_failure(
        &[
            (split.verify(), "im ⊕ ker -> x is not a chain isomorphism"),
            (intertwines, "the splitting does not carry e to the projection"),
            (
                split.image.ranks() == a.complex.ranks(),
                "the image has the wrong ranks",
            ),
            (
                split.kernel.ranks() == b.complex.ranks(),
                "the kernel has the wrong ranks",
            ),
        ],
        diagram,
    )
}

fn formats(g: &mut Gen) -> Outcome {
    let c = g.conflation();
    let (_, _, f) = g.chain_map();
    let x = g.complex();
    let tower = TowerComplex::from_map(&f);
    let ep = swindle_f(&x.complex);
    let complex_ok = {
        let s = serialize_complex(&x.complex);
        parse_complex(&s).is_ok_and(|y| y == *x.complex && serialize_complex(&y) == s)
    };
    let map_ok = {
        let s = serialize_chain_map(&f);
        parse_chain_map(&s).is_ok_and(|h| h == f && serialize_chain_map(&h) == s)
    };
    let conflation_ok = {
        let s = serialize_conflation(&c);
        parse_conflation(&s).is_ok_and(|d| serialize_conflation(&d) == s)
    };
    let tower_ok = {
        let s = serialize_tower(&tower);
        parse_tower(&s).is_ok_and(|t| t == tower && serialize_tower(&t) == s)
    };
    let ep_ok = {
        let s = serialize_periodic(&ep);
        parse_periodic(&s).is_ok_and(|p| p == ep && serialize_periodic(&p) == s)
    };
    first_failure(
        &[
            (complex_ok, "complex document does not round-trip"),
            (map_ok, "chain map document does not round-trip"),
            (conflation_ok, "conflation document does not round-trip"),
            (tower_ok, "tower document does not round-trip"),
            (ep_ok, "eventually periodic document does not round-trip"),
        ],
        || Diagram::new().object("x", &x.complex).map("f", &f),
    )
}

fn euler_additive(g: &mut Gen) -> Outcome {
    let c = g.conflation();
    let (x, y, z) = (euler_char(c.left()), euler_char(c.middle()), euler_char(c.right()));
    Outcome::check(
        y.value == x.value + z.value,
        || format!("χ(y) = {} but χ(x) + χ(z) = {}", y.value, x.value + z.value),
        || Diagram::new().map("i", c.inflation()).map("p", c.deflation()),
    )
}

fn euler_qis(g: &mut Gen) -> Outcome {
    // random maps are rarely quasi-isomorphisms; fall back to a sampled one
    let (x, _, f) = g.chain_map();
    let f = if is_quasi_iso(&f, QisMode::Homological) {
        f
    } else {
        g.we(&x).1
    };
    if !is_quasi_iso(&f, QisMode::Cone) {
        return fail(
            "sampled weak equivalence is not a quasi-isomorphism",
            Diagram::new().map("f", &f),
        );
    }
    Outcome::check(
        euler_char(f.source()) == euler_char(f.target()),
        || "a quasi-isomorphism changes χ".into(),
        || Diagram::new().map("f", &f),
    )
}

fn euler_tensor(g: &mut Gen) -> Outcome {
    let (a, b) = (g.complex(), g.complex());
    let ab = tensor(&a.complex, &b.complex);
    Outcome::check(
        euler_char(&ab) == euler_char(&a.complex) * euler_char(&b.complex),
        || "χ(a ⊗ b) differs from χ(a) χ(b)".into(),
        || Diagram::new().object("a", &a.complex).object("b", &b.complex),
    )
}

fn euler_shift_cone(g: &mut Gen) -> Outcome {
    let (_, _, f) = g.chain_map();
    let (x, y) = (f.source(), f.target());
    let cx = tensor(&Complex::c(), x);
    first_failure(
        &[
            (
                euler_char(&x.shift()).value == -euler_char(x).value,
                "χ(Tx) differs from -χ(x)",
            ),
            (euler_char(&cx).value == 0, "χ(Cx) is nonzero"),
            (
                euler_char(cone(&f).cone()).value == euler_char(y).value - euler_char(x).value,
                "χ(Cone f) differs from χ(y) - χ(x)",
            ),
        ],
        || Diagram::new().map("f", &f),
    )
}

fn nonzero(g: &mut Gen) -> Known {
    loop {
        let x = g.complex();
        if !x.complex.is_zero() {
            return x;
        }
    }
}

fn swindle_witness(g: &mut Gen) -> Outcome {
    let x = nonzero(g);
    Outcome::check(
        swindle_iso(&x.complex).verify(),
        || "F(x)[2] ⊕ x ≅ F(x) witness does not verify".into(),
        || Diagram::new().object("x", &x.complex),
    )
}

fn swindle_homology(g: &mut Gen) -> Outcome {
    let x = nonzero(g);
    let f = swindle_f(&x.complex);
    let (lo, hi) = x.complex.support().expect("nonzero");
    let top = hi + 2 * f.period() as i64 + 2;
    let terms = (top - lo) as usize / 2 + 2;
    let finite = swindle_terms(&x.complex, terms);
    let hx = homology(&finite);
    let ok = (lo - 1..top).all(|n| ep_homology(&f, n).normal_form() == &hx.normal_form(n));
    Outcome::check(
        ok,
        || "homology of F(x) differs from its finite truncations".into(),
        || Diagram::new().object("x", &x.complex),
    )
}

/// A tower built from a map, a conflation or a single complex.
fn random_tower(g: &mut Gen) -> TowerComplex {
    match g.pick(3) {
        0 => TowerComplex::from_map(&g.chain_map().2),
        1 => {
            let c = g.conflation();
            let (i, p) = (c.inflation().clone(), c.deflation().clone());
            TowerComplex::new(
                -1,
                vec![i.source().clone(), i.target().clone(), p.target().clone()],
                vec![i, p],
            )
            .expect("p i = 0")
        }
        _ => TowerComplex::single(&g.complex().complex, g.rng().gen_range(-1..=1)),
    }
}

fn qw_base(g: &mut Gen) -> Outcome {
    let x = g.complex();
    let (_, f) = g.we(&x);
    if !is_quasi_iso(&f, QisMode::Homological) {
        return Outcome::Vacuous;
    }
    Outcome::check(
        is_qw_total(&TowerMap::single(&f)),
        || "a base quasi-isomorphism is not qw".into(),
        || Diagram::new().map("f", &f),
    )
}

fn tensor_tower(t: &TowerComplex, b: &Complex) -> TowerComplex {
    let degrees: Vec<i64> = t.outer_degrees().collect();
    let entries = degrees.iter().map(|&i| tensor(&t.entry(i), b)).collect();
    let id = ChainMap::identity(b);
    let diffs = degrees[..degrees.len().saturating_sub(1)]
        .iter()
        .map(|&i| tensor_maps(&t.outer_d(i), &id))
        .collect();
    TowerComplex::new(degrees.first().copied().unwrap_or(0), entries, diffs).expect("tensoring is exact")
}

/// Entrywise quasi-isomorphisms of towers: `X ⊗ h` for a base
/// equivalence `h`, a map of conflations with equivalences at the ends,
/// or a commutative square `(1, b)` on a two-entry tower.
fn entrywise_equivalence(g: &mut Gen) -> TowerMap {
    match g.pick(3) {
        0 => {
            let t = random_tower(g);
            let mut s = g.scaled(2, 2);
            let a = s.complex();
            let (_, h) = s.we(&a);
            let comps = t
                .outer_degrees()
                .map(|i| (i, tensor_maps(&ChainMap::identity(&t.entry(i)), &h)))
                .collect();
            TowerMap::new(tensor_tower(&t, h.source()), tensor_tower(&t, h.target()), comps)
                .expect("tensoring with a map is natural")
        }
        1 => {
            let m = conflation_morphism(g, true, true);
            let tower = |c: &crate::complex_core::Conflation| {
                let (i, p) = (c.inflation().clone(), c.deflation().clone());
                TowerComplex::new(
                    -1,
                    vec![i.source().clone(), i.target().clone(), p.target().clone()],
                    vec![i, p],
                )
                .expect("p i = 0")
            };
            TowerMap::new(tower(&m.top), tower(&m.bottom), [(-1, m.a), (0, m.b), (1, m.c)].into())
                .expect("conflation morphisms commute")
        }
        _ => {
            let (_, y, f) = g.chain_map();
            let (_, b) = g.we(&y);
            let f2 = b.after(&f).expect("composable");
            let id = ChainMap::identity(f.source());
            TowerMap::new(
                TowerComplex::from_map(&f),
                TowerComplex::from_map(&f2),
                [(-1, id), (0, b)].into(),
            )
            .expect("the square commutes")
        }
    }
}

fn qw_entrywise(g: &mut Gen) -> Outcome {
    let m = entrywise_equivalence(g);
    let degrees: Vec<i64> = m.source().outer_degrees().collect();
    if !degrees.iter().all(|&i| is_quasi_iso(&m.get(i), QisMode::Homological)) {
        return Outcome::Vacuous;
    }
    Outcome::check(
        is_qw_total(&m),
        || "an entrywise quasi-isomorphism of towers is not qw".into(),
        || {
            degrees
                .iter()
                .fold(Diagram::new(), |d, &i| d.map(&format!("F{i}"), &m.get(i)))
        },
    )
}

fn qw_levelwise(g: &mut Gen) -> Outcome {
    let t = match g.pick(3) {
        0 => {
            let (x, z) = (g.contractible(), g.contractible());
            let c = g.conflation_between(&x, &z);
            let (i, p) = (c.inflation().clone(), c.deflation().clone());
            TowerComplex::new(
                0,
                vec![i.source().clone(), i.target().clone(), p.target().clone()],
                vec![i, p],
            )
            .expect("p i = 0")
        }
        1 => {
            let (x, y) = (g.contractible(), g.contractible());
            TowerComplex::from_map(&g.lattice_map(&x, &y))
        }
        _ => tensor_tower(&random_tower(g), &Complex::c()),
    };
    if !is_levelwise_acyclic(&t) {
        return fail("the sampled tower is not levelwise acyclic", Diagram::new());
    }
    Outcome::check(
        is_acyclic(&totalize(&t)),
        || "a levelwise acyclic tower has homology".into(),
        || {
            t.outer_degrees()
                .fold(Diagram::new(), |d, i| d.object(&format!("X{i}"), &t.entry(i)))
        },
    )
}

fn qw_two_entry(g: &mut Gen) -> Outcome {
    let (_, _, f) = g.chain_map();
    let tot = totalize(&TowerComplex::from_map(&f));
    first_failure(
        &[
            (tot == *cone(&f).cone(), "Tot(x -> y) differs from Cone(f)"),
            (
                is_acyclic(&tot) == is_quasi_iso(&f, QisMode::Homological),
                "Tot acyclicity differs from qis",
            ),
        ],
        || Diagram::new().map("f", &f),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn every_suite_passes_small() {
        for s in Suite::ALL {
            let r = run_suite(s, 5, 6).unwrap();
            assert!(r.pass, "{}", r.text());
            assert!(r.checks.iter().all(|c| c.attempted > 0), "{}", r.text());
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let spec = SampleSpec::new(9, 12);
        for s in [Suite::Euler, Suite::QwShadows, Suite::SnfOracle] {
            let a = run_suite_with(s, &spec, Execution::Sequential).unwrap();
            let b = run_suite_with(s, &spec, Execution::Parallel).unwrap();
            assert_eq!(a.verdicts(), b.verdicts());
        }
    }
}
