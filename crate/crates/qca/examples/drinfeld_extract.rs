//! Drinfeld-type series from Gauss data: mode tables, the central series
//! and the shifted map onto Drinfeld generators.

use qca::drinfeld::{check_center, check_drinfeld, check_main_map, extract_drinfeld};
use qca::field::QMode;
use qca::gauss::FusedModule;
use qca::CheckOptions;

fn main() {
    let opts = CheckOptions::default().with_mode(QMode::default_pinned());
    let md = FusedModule::build(2, 2, &opts).expect("generic parameters");
    let ds = extract_drinfeld(&md.gauss, 2, &md.ctx, 4).expect("regular h_j(0)");
    for i in 1..=2 {
        let t = ds.x(true, i);
        let (lo, hi) = t.window();
        let nonzero = (lo..=hi).filter(|&k| !t.get(k).unwrap().is_zero()).count();
        println!("X+_{i}: {nonzero} nonzero modes in [{lo}, {hi}]");
    }
    print!("{}", check_drinfeld(2, 2, &opts).to_text());
    print!("{}", check_center(2, 2, &opts).to_text());
    print!("{}", check_main_map(2, 2, &opts).to_text());
}
