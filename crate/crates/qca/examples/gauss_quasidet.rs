//! Gauss decomposition of a fused L-operator, quantum minors and the
//! embeddings `psi_m`.

use qca::field::QMode;
use qca::gauss::{check_embedding, check_gauss, check_minors, op_height, FusedModule};
use qca::CheckOptions;

fn main() {
    let opts = CheckOptions::default().with_mode(QMode::default_pinned());
    let md = FusedModule::build(2, 2, &opts).expect("generic parameters");
    for (i, h) in md.gauss.h.iter().enumerate() {
        println!("h_{} has height {}", i + 1, op_height(h));
    }
    print!("{}", check_gauss(2, 2, &opts).to_text());
    print!("{}", check_minors(2, 1, &opts).to_text());
    print!("{}", check_embedding(3, 1, &opts).to_text());
}
