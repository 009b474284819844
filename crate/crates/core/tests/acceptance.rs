//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use z22_core::catalog;
use z22_core::format::{self, to_json};
use z22_core::jacobi::{
    self, check_all_jacobi, check_all_jacobi_with, classify_shapes, identity_classes,
    identity_classes_over, JacobiShape,
};
use z22_core::oscillator::{self, HERMITICITY_TOL};
use z22_core::rational::{frac, int};
use z22_core::solver::{self, linear_stage, SolverConfig};
use z22_core::structure::{
    assemble, assemble_unchecked, check_constraints, decompose, evaluate_constraints, Family,
    NamingScheme, Relation,
};
use z22_core::{Degree, LinComb, Rational};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(
        elapsed <= budget,
        format!("took {elapsed:.2?}, budget {budget:.0?}"),
    )
}

fn golden_soundness() -> Outcome {
    let start = Instant::now();
    let alg = catalog::u11_z22_algebra();
    let closure = alg.check_closure();
    let anti = alg.check_antisymmetry();
    let jac = check_all_jacobi(&alg);
    let elapsed = start.elapsed();
    ensure(closure.passed(), closure.summary())?;
    ensure(anti.passed(), anti.summary())?;
    ensure(jac.checked == 364, format!("{} triples checked", jac.checked))?;
    ensure(jac.passed(), format!("{} Jacobi failures", jac.failures.len()))?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("364 triples, zero residuals, {elapsed:.2?}"))
}

const DELTAS: [(i64, i64); 6] = [(1, 1), (-1, 1), (1, 2), (-1, 2), (2, 1), (-2, 1)];

fn constraint_reproduction() -> Outcome {
    let start = Instant::now();
    let cs = catalog::u11_z22_coefficients();
    let ev = evaluate_constraints(&cs);
    ensure(ev.passed(), format!("published set fails {:?}", ev.failing_relations()))?;
    let covered: BTreeSet<_> = Relation::ALL.iter().map(|r| r.class()).collect();
    ensure(covered.len() == Relation::ALL.len(), "relation families overlap")?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x2222_0011);
    let families = [
        Family::K,
        Family::H,
        Family::S,
        Family::T,
        Family::U,
        Family::V,
        Family::L,
        Family::M,
        Family::N,
    ];
    let trials = 128;
    for trial in 0..trials {
        let f = families[rng.gen_range(0..families.len())];
        let mats = cs.family(f);
        let index = rng.gen_range(0..mats.len());
        let m = &mats[index];
        let (row, col) = loop {
            let rc = (rng.gen_range(0..m.rows()), rng.gen_range(0..m.cols()));
            if f != Family::T || rc.0 != rc.1 {
                break rc;
            }
        };
        let (a, b) = DELTAS[rng.gen_range(0..DELTAS.len())];
        let value: Rational = &m[(row, col)] + frac(a, b);
        let mutated = cs
            .with_entry(f, index, row, col, value)
            .map_err(|e| format!("trial {trial}: {e}"))?;
        let label = format!("trial {trial}: {}{}[{row}][{col}]", f.symbol(), index + 1);
        ensure(!evaluate_constraints(&mutated).passed(), format!("{label} satisfies every relation"))?;
        let alg = assemble_unchecked(&mutated, &NamingScheme::default());
        ensure(!check_all_jacobi(&alg).passed(), format!("{label} passes every Jacobi identity"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!(
        "{} relation families, {} checks; {trials} mutations each break a relation and a Jacobi identity, {elapsed:.2?}",
        Relation::ALL.len(),
        ev.checked
    ))
}

fn term(alg: &z22_core::GradedAlgebra, terms: &[(&str, i64)]) -> LinComb {
    let mut lc = LinComb::zero();
    for (name, c) in terms {
        lc.add_term(alg.index_of(name).unwrap(), int(*c));
    }
    lc
}

fn assembly_fidelity() -> Outcome {
    let cs = catalog::u11_z22_coefficients();
    let alg = assemble(&cs, &NamingScheme::named(catalog::U11_Z22_NAME)).map_err(|e| e.to_string())?;
    let table = catalog::u11_z22_algebra();
    ensure(alg == table, "assembled algebra differs from the bracket table")?;
    for (a, b, expect) in [
        ("Y1", "Y1", vec![("X2", 4)]),
        ("Z1", "Z2", vec![("X4", 4)]),
        ("Y2", "Z2", vec![("Q1", 2)]),
    ] {
        let got = alg.product_named(a, b).map_err(|e| e.to_string())?;
        ensure(got == term(&alg, &expect), format!("{a}∘{b} = {:?}", alg.render(&got)))?;
    }
    let back = decompose(&alg).map_err(|e| e.to_string())?;
    ensure(back == cs, "decompose does not invert assemble")?;
    ensure(
        format::coefficients_to_json(&back) == format::coefficients_to_json(&cs),
        "decomposed JSON differs",
    )?;
    Ok(format!("{} nonzero products match, decompose inverts", table.entry_count()))
}

fn identity_census() -> Outcome {
    let classes = identity_classes();
    ensure(classes.len() == 20, format!("{} classes", classes.len()))?;
    let shapes: BTreeSet<_> = classes.iter().map(|c| classify_shapes(c.degrees).shape).collect();
    ensure(shapes.len() == 4, format!("shapes {shapes:?}"))?;
    let z2 = identity_classes_over(&[Degree::D00, Degree::D01]);
    let z2_shapes: BTreeSet<_> = z2.iter().map(|c| classify_shapes(c.degrees).shape).collect();
    let first_three: BTreeSet<_> = JacobiShape::ALL[..3].iter().copied().collect();
    ensure(z2_shapes == first_three, format!("Z2 sector shapes {z2_shapes:?}"))?;
    Ok("20 classes, 4 shapes, Z2 sector uses the first three".into())
}

fn parastatistics() -> Outcome {
    let alg = catalog::u11_z22_algebra();
    let mut detail = Vec::new();
    for p in [1, 2] {
        let start = Instant::now();
        let r = oscillator::verify_parastatistics(&alg, p, 8, 4, 1e-10, 1).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        for x in r.relations.iter().chain(&r.hermiticity) {
            ensure(x.passed, format!("p={p}: {} residual {:e}", x.name, x.residual))?;
        }
        ensure(
            r.hermiticity.iter().all(|h| h.residual <= HERMITICITY_TOL),
            format!("p={p}: hermiticity above tolerance"),
        )?;
        ensure(r.entries.len() == 144, format!("p={p}: {} entries", r.entries.len()))?;
        ensure(r.passed, format!("p={p}: {} failures", r.failures))?;
        if p == 2 {
            within(elapsed, Duration::from_secs(30))?;
        }
        detail.push(format!("p={p} max {:.1e} ({elapsed:.2?})", r.max_entry_residual));
    }
    Ok(detail.join(", "))
}

fn solver_reproduction() -> Outcome {
    let start = Instant::now();
    let cs = catalog::u11_z22_coefficients();
    let lin = linear_stage(cs.c(), cs.family(Family::K), cs.family(Family::U), cs.family(Family::V))
        .map_err(|e| e.to_string())?;
    ensure(lin.h.contains(cs.family(Family::H)), "H not in its nullspace")?;
    ensure(lin.s.contains(cs.family(Family::S)), "s not in its nullspace")?;
    ensure(lin.t.contains(cs.family(Family::T)), "t not in its nullspace")?;
    let config = SolverConfig {
        entry_pool: solver::parse_pool("-1,0,1,2").map_err(|e| e.to_string())?,
        ..Default::default()
    };
    let out = solver::solve(&config, &solver::partial_of(&cs)).map_err(|e| e.to_string())?;
    ensure(
        out.solutions.contains(&cs),
        format!("published l, m, n not among {} solutions", out.solutions.len()),
    )?;
    for s in &out.solutions {
        ensure(evaluate_constraints(s).passed(), "solver returned an invalid set")?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!(
        "nullspace dims H={} s={} t={}, {} solution(s), {elapsed:.2?}",
        lin.h.dim(),
        lin.s.dim(),
        lin.t.dim(),
        out.solutions.len()
    ))
}

/// Serialized output of each operation, with `workers` threads where that applies.
fn all_reports(workers: usize) -> Vec<(&'static str, String)> {
    let alg = catalog::u11_z22_algebra();
    let cs = catalog::u11_z22_coefficients();
    let config = SolverConfig {
        entry_pool: vec![int(-1), int(0), int(1), int(2)],
        workers,
        ..Default::default()
    };
    let solved = solver::solve(&config, &solver::default_partial()).unwrap();
    let bad = cs.with_entry(Family::M, 0, 0, 0, int(3)).unwrap();
    let bad_alg = assemble_unchecked(&bad, &NamingScheme::default());
    vec![
        ("check", to_json(&check_all_jacobi_with(&alg, workers).unwrap())),
        ("check-failing", to_json(&check_all_jacobi_with(&bad_alg, workers).unwrap())),
        ("closure", to_json(&alg.check_closure())),
        ("classify", to_json(&jacobi::census())),
        ("constraints", to_json(&check_constraints(&bad, "mutated"))),
        ("assemble", format::algebra_to_json(&assemble(&cs, &NamingScheme::default()).unwrap())),
        ("decompose", format::coefficients_to_json(&decompose(&alg).unwrap())),
        ("solve", to_json(&solved.to_dto())),
        ("builtin", format::algebra_to_json(&catalog::u11_z2_subalgebra())),
        (
            "rep-verify",
            to_json(&oscillator::verify_parastatistics(&alg, 1, 8, 4, 1e-10, workers).unwrap()),
        ),
    ]
}

fn determinism() -> Outcome {
    let first = all_reports(1);
    let again = all_reports(1);
    let parallel = all_reports(4);
    for ((name, a), ((_, b), (_, c))) in first.iter().zip(again.iter().zip(&parallel)) {
        ensure(a == b, format!("{name}: repeated run differs"))?;
        ensure(a == c, format!("{name}: 4 workers differ from 1"))?;
    }
    Ok(format!("{} reports byte-identical across runs and worker counts", first.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("golden-algebra soundness", golden_soundness),
        ("constraint reproduction", constraint_reproduction),
        ("assembly fidelity", assembly_fidelity),
        ("identity census", identity_census),
        ("parastatistics verification", parastatistics),
        ("solver reproduction", solver_reproduction),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
