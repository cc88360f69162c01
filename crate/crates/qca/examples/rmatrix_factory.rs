//! The R-matrices of type C: Yang-Baxter, unitarity and crossing checks.

use qca::field::QMode;
use qca::rmatrix::{check_crossing, check_unitarity, check_ybe};
use qca::CheckOptions;

fn main() {
    let opts = CheckOptions::default();
    for n in 1..=2 {
        for rep in [check_ybe(n, &opts), check_unitarity(n, &opts), check_crossing(n, &opts)] {
            print!("{}", rep.to_text());
        }
    }
    let pinned = CheckOptions::default().with_mode(QMode::default_pinned());
    print!("{}", check_ybe(3, &pinned).to_text());
}
