use qca::field::{QMode, Q};
use qca::rmatrix::{check_constants, check_crossing, check_scalar_f, check_unitarity, check_ybe};
use qca::CheckOptions;

fn assert_pass(r: &qca::report::CheckReport) {
    assert!(r.all_pass(), "{}", r.to_text());
}

#[test]
fn constants_all_ranks() {
    for n in 1..=3 {
        assert_pass(&check_constants(n, &CheckOptions::default()));
    }
}

#[test]
fn ybe_symbolic_small_ranks() {
    for n in 1..=2 {
        let t = std::time::Instant::now();
        assert_pass(&check_ybe(n, &CheckOptions::default()));
        eprintln!("ybe n={n}: {:?}", t.elapsed());
    }
}

#[test]
fn unitarity_and_crossing() {
    for n in 1..=2 {
        let opts = CheckOptions::default().with_trunc(8);
        assert_pass(&check_unitarity(n, &opts));
        assert_pass(&check_crossing(n, &opts));
    }
}

#[test]
fn scalar_function_through_order_12() {
    for n in 1..=3 {
        let t = std::time::Instant::now();
        assert_pass(&check_scalar_f(n, &CheckOptions::default().with_trunc(12)));
        eprintln!("scalar-f n={n}: {:?}", t.elapsed());
    }
}

#[test]
fn perturbations_fail() {
    let opts = CheckOptions::default().perturbed();
    for r in [check_ybe(1, &opts), check_unitarity(1, &opts), check_crossing(1, &opts), check_scalar_f(1, &opts.clone().with_trunc(3))] {
        assert!(!r.all_pass(), "{}", r.to_text());
        assert!(r.items.iter().any(|i| i.witness.is_some()));
    }
}

#[test]
fn pinned_mode_runs() {
    let opts = CheckOptions::default().with_mode(QMode::Pinned(Q::from_signeds(3, 5)));
    assert_pass(&check_ybe(2, &opts));
    assert_pass(&check_crossing(2, &opts));
}
