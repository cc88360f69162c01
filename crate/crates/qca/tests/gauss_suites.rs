use qca::field::QMode;
use qca::gauss::{check_embedding, check_gauss, check_minors};
use qca::CheckOptions;

fn report_fails(r: &qca::report::CheckReport) -> String {
    r.items.iter().filter(|i| !i.is_pass()).map(|i| format!("{}: {:?}", i.id, i.witness)).collect::<Vec<_>>().join("\n")
}

fn pinned() -> CheckOptions {
    CheckOptions::default().with_mode(QMode::default_pinned())
}

#[test]
fn gauss_small_symbolic() {
    for (n, m) in [(1, 1), (1, 2), (2, 1)] {
        let r = check_gauss(n, m, &CheckOptions::default());
        assert!(r.all_pass(), "n={n} m={m}\n{}", report_fails(&r));
    }
}

#[test]
fn gauss_large_symbolic_falls_back() {
    let r = check_gauss(2, 2, &CheckOptions::default());
    assert!(r.all_pass(), "{}", report_fails(&r));
    assert!(r.params.contains_key("q-fallback"), "{:?}", r.params);
}

#[test]
fn minors_small() {
    for (n, m) in [(1, 1), (2, 1), (2, 2)] {
        let r = check_minors(n, m, &pinned());
        assert!(r.all_pass(), "n={n} m={m}\n{}", report_fails(&r));
    }
}

#[test]
fn embedding_small() {
    for (n, m) in [(2, 1), (2, 2), (3, 1)] {
        let r = check_embedding(n, m, &pinned());
        assert!(r.all_pass(), "n={n} m={m}\n{}", report_fails(&r));
    }
}

#[test]
fn perturbed_gauss_suites_fail() {
    let opts = pinned().perturbed();
    for r in [check_gauss(2, 1, &opts), check_minors(2, 1, &opts), check_embedding(2, 1, &opts)] {
        assert!(!r.all_pass(), "{} passes under perturbation", r.suite);
    }
}

#[test]
fn pinned_value_changes_nothing_structural() {
    let a = check_gauss(1, 2, &pinned());
    let b = check_gauss(1, 2, &CheckOptions::default().with_mode(QMode::Pinned(qca::field::Q::from_signeds(7, 2))));
    assert!(a.all_pass() && b.all_pass());
    let ids = |r: &qca::report::CheckReport| r.items.iter().map(|i| i.id.clone()).collect::<Vec<_>>();
    assert_eq!(ids(&a), ids(&b));
}
