//! Running a named suite programmatically, as the command-line tool does.

use qca::suite::{parse_q_mode, run_suite, SuiteConfig, SuiteId};
use qca::CheckOptions;

fn main() {
    let opts = CheckOptions::default().with_mode(parse_q_mode("pinned:3/5").expect("valid mode"));
    let cfg = SuiteConfig::new(SuiteId::Center, 2, 2, opts);
    let report = run_suite(&cfg).expect("configuration within the guard");
    println!("{}", report.to_json());
    let refused = run_suite(&SuiteConfig::new(SuiteId::Rll, 3, 4, CheckOptions::default()));
    println!("{}", refused.expect_err("too large"));
}
