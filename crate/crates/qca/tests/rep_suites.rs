use qca::field::{Q, QMode};
use qca::rep::{check_cartan, check_rll};
use qca::CheckOptions;

fn report_fails(r: &qca::report::CheckReport) -> String {
    r.items.iter().filter(|i| !i.is_pass()).map(|i| format!("{}: {:?}", i.id, i.witness)).collect::<Vec<_>>().join("\n")
}

#[test]
fn cartan_and_vector_rep_all_ranks() {
    for n in 1..=4 {
        let r = check_cartan(n, 3, &CheckOptions::default());
        assert!(r.all_pass(), "n={n}\n{}", report_fails(&r));
    }
}

#[test]
fn cartan_perturbed_fails() {
    let r = check_cartan(2, 2, &CheckOptions::default().perturbed());
    assert!(!r.item("cartan.btilde").unwrap().is_pass());
    assert!(!r.item("piv.x-commutator").unwrap().is_pass());
    assert!(r.item("piv.k-conjugation").unwrap().is_pass());
}

#[test]
fn rll_small() {
    for (n, m) in [(1, 1), (1, 2), (2, 1)] {
        let r = check_rll(n, m, &CheckOptions::default());
        assert!(r.all_pass(), "n={n} m={m}\n{}", report_fails(&r));
    }
}

#[test]
fn rll_perturbed_fails() {
    let r = check_rll(1, 2, &CheckOptions::default().perturbed());
    assert!(!r.item("rll.same-sign").unwrap().is_pass());
}

#[test]
fn rll_pinned_n2_m2() {
    let opts = CheckOptions::default().with_mode(QMode::Pinned(Q::from_signeds(3, 5)));
    let r = check_rll(2, 2, &opts);
    assert!(r.all_pass(), "{}", report_fails(&r));
}

#[test]
fn rll_symbolic_n2_m2() {
    let r = check_rll(2, 2, &CheckOptions::default());
    for i in &r.items {
        eprintln!("{} {}ms", i.id, i.millis);
    }
    assert!(r.all_pass(), "{}", report_fails(&r));
}
