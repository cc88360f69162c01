//! Fused evaluation modules: the L-operator, its RLL relation and the
//! vector representation of the Drinfeld generators.

use qca::field::{QCtx, QMode, Scalar};
use qca::rep::{check_cartan, check_rll, fused_l, Sign};
use qca::CheckOptions;

fn main() {
    let ctx = QCtx::new(QMode::default_pinned());
    let l = fused_l(2, &[Scalar::int(2), Scalar::int(3)], Sign::Plus, &ctx).expect("distinct parameters");
    println!("L(u) for n = 2, m = 2 acts on a space of dimension {}", l.matrix.size());
    println!("l_12(u) has {} nonzero entries", l.entry(1, 2).entries().iter().filter(|r| !r.num().is_zero()).count());
    let opts = CheckOptions::default();
    print!("{}", check_rll(1, 2, &opts).to_text());
    print!("{}", check_cartan(3, 3, &opts).to_text());
}
