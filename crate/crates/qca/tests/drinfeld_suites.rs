use qca::drinfeld::{check_center, check_drinfeld, check_main_map};
use qca::field::QMode;
use qca::CheckOptions;

fn report_fails(r: &qca::report::CheckReport) -> String {
    r.items.iter().filter(|i| !i.is_pass()).map(|i| format!("{}: {:?}", i.id, i.witness)).collect::<Vec<_>>().join("\n")
}

fn pinned() -> CheckOptions {
    CheckOptions::default().with_mode(QMode::default_pinned())
}

#[test]
fn drinfeld_relations_small_symbolic() {
    for (n, m) in [(1, 1), (1, 2), (2, 1)] {
        let r = check_drinfeld(n, m, &CheckOptions::default());
        assert!(r.all_pass(), "n={n} m={m}\n{}", report_fails(&r));
    }
}

#[test]
fn drinfeld_relations_pinned() {
    for (n, m) in [(2, 2), (3, 1)] {
        let r = check_drinfeld(n, m, &pinned());
        assert!(r.all_pass(), "n={n} m={m}\n{}", report_fails(&r));
    }
}

#[test]
fn center_suite() {
    for (n, m) in [(1, 1), (2, 1), (2, 2)] {
        let r = check_center(n, m, &pinned());
        assert!(r.all_pass(), "n={n} m={m}\n{}", report_fails(&r));
    }
}

#[test]
fn main_map_suite() {
    for (n, m) in [(1, 2), (2, 1), (3, 1)] {
        let r = check_main_map(n, m, &pinned());
        assert!(r.all_pass(), "n={n} m={m}\n{}", report_fails(&r));
    }
}

#[test]
fn serre_degrees_follow_cartan_matrix() {
    let r = check_main_map(2, 1, &pinned());
    let note = r.item("main-map.serre.plus").and_then(|i| i.note.clone()).unwrap();
    assert!(note.contains("(1,2):3") && note.contains("(2,1):2"), "{note}");
}

#[test]
fn perturbed_drinfeld_suites_fail() {
    let opts = pinned().perturbed();
    assert!(!check_drinfeld(2, 1, &opts).item("drinfeld.x-x.plus").unwrap().is_pass());
    assert!(!check_main_map(2, 1, &opts).item("main-map.commutator").unwrap().is_pass());
    assert!(!check_center(2, 1, &opts).all_pass());
}
