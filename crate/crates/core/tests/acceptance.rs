//! Runs every acceptance criterion at its stated size and prints one
//! PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use complicial::axioms::{Axiom, AxiomReport, SampleSpec};
use complicial::complex_core::Complex;
use complicial::exec::Execution;
use complicial::format::{parse_complex, serialize_complex};
use complicial::suite::{run_suite_with, Suite, SuiteReport};

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    ok: bool,
    detail: String,
}

fn suite(s: Suite, spec: SampleSpec) -> SuiteReport {
    run_suite_with(s, &spec, Execution::Parallel).expect("valid sample spec")
}

/// Every check passed with at least `min` instances.
fn all_pass(reports: &[&SuiteReport], min: usize) -> Verdict {
    let mut problems = Vec::new();
    let mut instances = 0;
    for r in reports {
        for c in &r.checks {
            instances += c.attempted;
            if !c.is_pass() {
                problems.push(format!(
                    "{} [{}]: {} counterexamples",
                    c.axiom,
                    c.class,
                    c.counterexamples.len()
                ));
            }
            if c.attempted < min {
                problems.push(format!("{} [{}]: only {} instances", c.axiom, c.class, c.attempted));
            }
        }
    }
    let seconds: f64 = reports.iter().map(|r| r.seconds).sum();
    Verdict {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
            format!("{checks} checks, {instances} instances, {seconds:.2}s")
        } else {
            problems.join("; ")
        },
    }
}

fn within(v: Verdict, started: Instant, limit: Duration) -> Verdict {
    let elapsed = started.elapsed();
    if elapsed < limit {
        v
    } else {
        Verdict {
            ok: false,
            detail: format!("{} (took {elapsed:?}, limit {limit:?})", v.detail),
        }
    }
}

fn covers(r: &SuiteReport, names: &[&str]) -> Verdict {
    let missing: Vec<&str> = names
        .iter()
        .copied()
        .filter(|n| !r.checks.iter().any(|c| c.axiom == *n))
        .collect();
    Verdict {
        ok: missing.is_empty(),
        detail: format!("missing checks: {}", missing.join(", ")),
    }
}

fn and(a: Verdict, b: Verdict) -> Verdict {
    match (a.ok, b.ok) {
        (true, true) => a,
        (true, false) => b,
        (false, true) => a,
        (false, false) => Verdict {
            ok: false,
            detail: format!("{}; {}", a.detail, b.detail),
        },
    }
}

fn timed(limit_secs: u64, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    within(f(), start, Duration::from_secs(limit_secs))
}

fn criterion_1() -> Verdict {
    timed(30, || {
        all_pass(&[&suite(Suite::SnfOracle, SampleSpec::new(7, 2000))], 2000)
    })
}

fn criterion_2() -> Verdict {
    timed(60, || {
        let spec = SampleSpec::new(11, 1000).with_sizes(5, 6, 3);
        all_pass(&[&suite(Suite::QisDeciders, spec)], 1000)
    })
}

fn criterion_3() -> Verdict {
    timed(60, || {
        all_pass(&[&suite(Suite::ContractibleCx, SampleSpec::new(13, 500))], 500)
    })
}

fn criterion_4() -> Verdict {
    all_pass(&[&suite(Suite::Cones, SampleSpec::new(17, 500))], 500)
}

fn criterion_5() -> Verdict {
    timed(300, || {
        let qis = suite(Suite::AxiomsQis, SampleSpec::new(42, 200));
        let hoeq = suite(Suite::AxiomsHoeq, SampleSpec::new(42, 200));
        let names: Vec<&str> = Axiom::weak_equivalence().iter().map(|a| a.name()).collect();
        and(
            and(all_pass(&[&qis, &hoeq], 200), covers(&qis, &names)),
            covers(&hoeq, &names),
        )
    })
}

fn criterion_6() -> Verdict {
    let r = suite(Suite::NullClasses, SampleSpec::new(19, 200));
    let names: Vec<&str> = Axiom::null_class().iter().map(|a| a.name()).collect();
    let per_class = ["ACYCLIC", "CONTRACTIBLE"].iter().all(|class| {
        names
            .iter()
            .all(|n| r.checks.iter().any(|c| c.axiom == *n && c.class == *class))
    });
    let v = all_pass(&[&r], 200);
    if per_class {
        v
    } else {
        Verdict {
            ok: false,
            detail: "some null class axiom was not checked for both classes".into(),
        }
    }
}

fn criterion_7() -> Verdict {
    // each report merges a map stream and an object stream of `count` each
    let r = suite(Suite::Roundtrip, SampleSpec::new(23, 500));
    let v = all_pass(&[&r], 1000);
    let classes: Vec<&str> = r.checks.iter().map(|c| c.class.as_str()).collect();
    and(
        v,
        Verdict {
            ok: classes == ["QIS", "HOMOTOPY_EQ", "ACYCLIC", "CONTRACTIBLE"],
            detail: format!("unexpected classes {classes:?}"),
        },
    )
}

fn criterion_8() -> Verdict {
    let r = suite(Suite::Implications, SampleSpec::new(29, 200));
    let rules = [
        "WE1 + WE3 => WE5",
        "WE2 + WE5 + WE6 => WE4",
        "WE1 + WE4 => WE3'",
        "precogluing",
    ];
    let per_class = ["QIS", "HOMOTOPY_EQ"].iter().all(|class| {
        rules.iter().all(|n| {
            r.checks
                .iter()
                .any(|c: &AxiomReport| c.axiom == *n && c.class == *class)
        })
    });
    let v = and(all_pass(&[&r], 200), covers(&r, &rules));
    if per_class {
        v
    } else {
        Verdict {
            ok: false,
            detail: "some implication was not checked for both classes".into(),
        }
    }
}

fn criterion_9() -> Verdict {
    all_pass(&[&suite(Suite::Truncation, SampleSpec::new(31, 300))], 300)
}

fn criterion_10() -> Verdict {
    all_pass(&[&suite(Suite::Euler, SampleSpec::new(37, 200))], 200)
}

fn criterion_11() -> Verdict {
    all_pass(&[&suite(Suite::Swindle, SampleSpec::new(1, 20))], 20)
}

fn criterion_12() -> Verdict {
    all_pass(&[&suite(Suite::QwShadows, SampleSpec::new(41, 200))], 200)
}

fn criterion_13() -> Verdict {
    all_pass(&[&suite(Suite::Idempotents, SampleSpec::new(43, 100))], 100)
}

fn criterion_14() -> Verdict {
    let mut problems = Vec::new();
    for (s, count) in [
        (Suite::AxiomsQis, 40),
        (Suite::NullClasses, 40),
        (Suite::QwShadows, 60),
        (Suite::Swindle, 20),
        (Suite::SnfOracle, 200),
    ] {
        let spec = SampleSpec::new(5, count);
        let a = run_suite_with(s, &spec, Execution::Parallel).expect("valid spec");
        let b = run_suite_with(s, &spec, Execution::Parallel).expect("valid spec");
        let c = run_suite_with(s, &spec, Execution::Sequential).expect("valid spec");
        if a.verdicts() != b.verdicts() {
            problems.push(format!("{s}: verdicts differ between runs"));
        }
        if a.verdicts() != c.verdicts() {
            problems.push(format!("{s}: sequential and parallel verdicts differ"));
        }
    }
    let formats = suite(Suite::Formats, SampleSpec::new(47, 200));
    let v = all_pass(&[&formats], 200);
    if !v.ok {
        problems.push(v.detail);
    }
    let sphere = serialize_complex(&Complex::sphere(0));
    if parse_complex(&sphere).map(|x| serialize_complex(&x)).ok().as_deref() != Some(sphere.as_str()) {
        problems.push("sphere document does not round-trip".into());
    }
    Verdict {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            "5 suites reproduced, 200 documents round-tripped".into()
        } else {
            problems.join("; ")
        },
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("SNF invariant factors match minor gcds", criterion_1),
        ("dual quasi-isomorphism deciders agree", criterion_2),
        ("C tensor x is contractible", criterion_3),
        ("cone coherence", criterion_4),
        ("weak equivalence axioms for QIS and HOMOTOPY_EQ", criterion_5),
        ("null class axioms for ACYCLIC and CONTRACTIBLE", criterion_6),
        ("weak equivalence and null class roundtrip", criterion_7),
        ("axiom implications and precogluing", criterion_8),
        ("truncation homology and brutal conflations", criterion_9),
        ("Euler characteristic", criterion_10),
        ("swindle isomorphism witnesses", criterion_11),
        ("quasi-weak equivalence shadows", criterion_12),
        ("strict idempotent splitting", criterion_13),
        ("determinism and format round trips", criterion_14),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let v = f();
        let status = if v.ok { "PASS" } else { "FAIL" };
        println!("{status} {:>2}. {name}: {}", i + 1, v.detail);
        failed += usize::from(!v.ok);
    }
    let total = start.elapsed();
    let budget = total < Duration::from_secs(600);
    println!(
        "{} total wall clock {:.1}s (limit 600s)",
        if budget { "PASS" } else { "FAIL" },
        total.as_secs_f64()
    );
    if failed == 0 && budget {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
