//! Operators on tensor products: embedding, the signed transposition
//! `e_ij -> eps_i eps_j e_j'i'` and partial traces.

use qca::field::Scalar;
use qca::tensor::{IndexData, TensorOperator};

fn main() {
    let n = 1;
    let idx = IndexData::new(n).expect("n >= 1");
    let d = idx.dim();
    // the elementary matrix e_12 on the first of two sites
    let e12 = TensorOperator::from_fn(&[d], |r, c| if (r, c) == (0, 1) { Scalar::int(1) } else { Scalar::int(0) });
    let op = TensorOperator::embed(&e12, &[0], &[d, d]).expect("site exists");
    let t = op.partial_transpose(0, &idx).expect("site has dimension 2n");
    println!("e_12 (x) 1, transposed on site 0:");
    for line in t.dump(qca::field::format_scalar) {
        println!("  {line}");
    }
    let tr = TensorOperator::<Scalar>::identity(&[d, d]).partial_trace(0).expect("site exists");
    println!("partial trace of the identity: {:?}", tr.scalar_value().map(|s| qca::field::format_scalar(&s)));
}
