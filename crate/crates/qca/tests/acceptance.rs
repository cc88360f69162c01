//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use qca::drinfeld::{check_center, check_drinfeld, check_main_map};
use qca::field::QMode;
use qca::gauss::{check_embedding, check_gauss, check_minors};
use qca::report::CheckReport;
use qca::rep::{check_cartan, check_rll};
use qca::rmatrix::{check_crossing, check_scalar_f, check_unitarity, check_ybe};
use qca::suite::{SuiteConfig, SuiteId};
use qca::CheckOptions;
use std::process::Command;
use std::time::Instant;

type Outcome = Result<(), String>;

fn symbolic() -> CheckOptions {
    CheckOptions::default()
}

fn pinned() -> CheckOptions {
    CheckOptions::default().with_mode(QMode::default_pinned())
}

fn all_pass(label: &str, r: &CheckReport) -> Outcome {
    let bad: Vec<String> = r.items.iter().filter(|i| !i.is_pass()).map(|i| format!("{}: {}", i.id, i.witness.as_ref().map(|w| w.detail.as_str()).unwrap_or(""))).collect();
    if r.items.is_empty() {
        return Err(format!("{label}: empty report"));
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(format!("{label}: {}", bad.join("; ")))
    }
}

fn items_pass(label: &str, r: &CheckReport, ids: &[&str]) -> Outcome {
    for id in ids {
        match r.item(id) {
            None => return Err(format!("{label}: item {id} missing")),
            Some(it) if !it.is_pass() => return Err(format!("{label}: {id} fails: {:?}", it.witness)),
            Some(_) => {}
        }
    }
    all_pass(label, r)
}

fn has_anchor(r: &CheckReport, anchor: &str) -> Outcome {
    if r.items.iter().any(|i| i.anchor.contains(anchor)) {
        Ok(())
    } else {
        Err(format!("{}: no item anchored at {anchor:?}", r.suite))
    }
}

fn c1_yang_baxter() -> Outcome {
    for n in 1..=3 {
        let r = check_ybe(n, &symbolic());
        all_pass(&format!("ybe n={n}"), &r)?;
        has_anchor(&r, "solution of the Yang–Baxter equation")?;
    }
    Ok(())
}

fn c2_unitarity_crossing() -> Outcome {
    for n in 1..=2 {
        let u = check_unitarity(n, &symbolic());
        all_pass(&format!("unitarity n={n}"), &u)?;
        has_anchor(&u, "Note the unitarity property")?;
        let c = check_crossing(n, &symbolic());
        items_pass(&format!("crossing n={n}"), &c, &["crossing.bar", "crossing.full"])?;
        has_anchor(&c, "crossing symmetry relations")?;
    }
    Ok(())
}

fn c3_scalar_function() -> Outcome {
    for n in 1..=3 {
        let r = check_scalar_f(n, &symbolic().with_trunc(12));
        items_pass(&format!("scalar-f n={n}"), &r, &["scalar-f.f1", "scalar-f.methods-agree"])?;
        has_anchor(&r, "uniquely determined by the relation")?;
    }
    Ok(())
}

fn c4_rll() -> Outcome {
    for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        all_pass(&format!("rll n={n} m={m}"), &check_rll(n, m, &symbolic()))?;
    }
    Ok(())
}

fn c5_gauss() -> Outcome {
    let r = check_gauss(2, 2, &symbolic());
    let ids = ["gauss.reassembly", "gauss.redecomposition", "gauss.quasidet.i1", "gauss.quasidet.i2", "gauss.quasidet.i3", "gauss.quasidet.i4"];
    items_pass("gauss (2,2)", &r, &ids)?;
    has_anchor(&r, "universal quasideterminant formulas")
}

fn c6_minors() -> Outcome {
    let r = check_minors(2, 2, &symbolic());
    let ids = ["minors.skew-rows", "minors.skew-cols", "minors.s-factorization", "minors.l11-commutation"];
    items_pass("minors (2,2)", &r, &ids)?;
    has_anchor(&r, "symmetry properties are straightforward")?;
    has_anchor(&r, "By the definition of quantum minors")
}

fn c7_embedding() -> Outcome {
    let r2 = check_embedding(2, 2, &symbolic());
    items_pass("embedding n=2", &r2, &["embedding.psi1-rll"])?;
    has_anchor(&r2, "define a homomorphism")?;
    let r3 = check_embedding(3, 2, &pinned());
    items_pass("embedding n=3", &r3, &["embedding.psi1-psi1-psi2"])?;
    has_anchor(&r3, "equality of maps")
}

fn c8_center() -> Outcome {
    let r = check_center(2, 2, &symbolic());
    let ids = ["center.z-scalar", "center.z-commutes", "center.z-h-product", "center.reflection-e", "center.reflection-f", "center.h1-relation"];
    items_pass("center (2,2)", &r, &ids)?;
    has_anchor(&r, "belong to the center of the algebra")?;
    has_anchor(&r, "we have the respective formulas")
}

fn c9_drinfeld() -> Outcome {
    let r = check_drinfeld(2, 2, &symbolic());
    let ids = ["drinfeld.h-h", "drinfeld.h-x.plus", "drinfeld.h-x.minus", "drinfeld.hn1-x.plus", "drinfeld.hn1-x.minus", "drinfeld.x-x.plus", "drinfeld.x-x.minus"];
    items_pass("drinfeld (2,2)", &r, &ids)?;
    has_anchor(&r, "relations between the gaussian generators")
}

fn c10_main_map() -> Outcome {
    let r = check_main_map(2, 2, &symbolic().with_trunc(4));
    let ids = ["main-map.commutator", "main-map.serre.plus", "main-map.serre.minus"];
    items_pass("main-map (2,2)", &r, &ids)?;
    for id in ["main-map.serre.plus", "main-map.serre.minus"] {
        let note = r.item(id).and_then(|i| i.note.clone()).unwrap_or_default();
        if !(note.contains(":2") && note.contains(":3") && note.contains("[-3,3]")) {
            return Err(format!("{id} does not cover r = 2 and r = 3 in window 3: {note}"));
        }
    }
    has_anchor(&r, "define an isomorphism")
}

fn c11_cartan() -> Outcome {
    for n in 1..=6 {
        let r = check_cartan(n, 3, &symbolic());
        all_pass(&format!("cartan n={n}"), &r)?;
        has_anchor(&r, "entries of B̃ are given")?;
        has_anchor(&r, "while for any integer")?;
    }
    Ok(())
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qca-verify")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn c12_negative_controls() -> Outcome {
    let opts = pinned().perturbed();
    for id in SuiteId::CONCRETE {
        let cfg = SuiteConfig::new(id, 2, 2, opts.clone());
        let r = qca::suite::run_suite(&cfg).map_err(|e| e.to_string())?;
        let failing = r.items.iter().find(|i| !i.is_pass());
        match failing {
            None => return Err(format!("suite {id} passes under perturbation")),
            Some(it) if it.witness.as_ref().map(|w| w.detail.is_empty()).unwrap_or(true) => return Err(format!("{}: failure without witness", it.id)),
            Some(_) => {}
        }
    }
    let (code, _) = cli(&["--suite", "ybe", "--n", "1", "--perturb"]);
    if code != 1 {
        return Err(format!("perturbed ybe exits {code}, expected 1"));
    }
    let (code, _) = cli(&["--suite", "ybe", "--n", "1"]);
    if code != 0 {
        return Err(format!("clean ybe exits {code}, expected 0"));
    }
    let (code, _) = cli(&["--suite", "nope"]);
    if code != 2 {
        return Err(format!("unknown suite exits {code}, expected 2"));
    }
    let (code, _) = cli(&["--suite", "rll", "--n", "3", "--fusion", "4"]);
    if code != 3 {
        return Err(format!("oversized configuration exits {code}, expected 3"));
    }
    Ok(())
}

fn strip_timing(json: &str) -> Result<String, String> {
    let r = CheckReport::from_json(json).map_err(|e| format!("report does not parse: {e}"))?;
    Ok(r.without_timings().to_json())
}

fn c13_determinism() -> Outcome {
    let base = ["--suite", "all", "--n", "2", "--fusion", "2", "--q-mode", "pinned:3/5", "--trunc", "4", "--format", "json"];
    let (c1, a) = cli(&[&base[..], &["--workers", "1"]].concat());
    let (c2, b) = cli(&[&base[..], &["--workers", "2"]].concat());
    if c1 != 0 || c2 != 0 {
        return Err(format!("suite=all exits {c1} and {c2}"));
    }
    if strip_timing(&a)? != strip_timing(&b)? {
        return Err("reports differ beyond timing fields".into());
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("yang-baxter for n = 1, 2, 3", c1_yang_baxter),
        ("unitarity and crossing scalars for n = 1, 2", c2_unitarity_crossing),
        ("scalar function through order 12", c3_scalar_function),
        ("RLL for fused modules up to (2,2)", c4_rll),
        ("gauss decomposition at (2,2)", c5_gauss),
        ("quantum minors at (2,2)", c6_minors),
        ("embeddings psi_1 and psi_1 psi_1 = psi_2", c7_embedding),
        ("central series at (2,2)", c8_center),
        ("gaussian generator relations at (2,2)", c9_drinfeld),
        ("shifted map: commutators and Serre relations", c10_main_map),
        ("cartan data for n <= 6, k <= 3", c11_cartan),
        ("negative controls and exit codes", c12_negative_controls),
        ("deterministic reports", c13_determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.1}s)", k + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {e}", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
