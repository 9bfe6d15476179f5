//! Quick harness smoke run over every suite with small settings.

use qlorentz::harness::{run_suite, SuiteConfig, SUITES};
use qlorentz::{HalfInt, QContext};
use std::time::Instant;

fn main() {
    let ctx = QContext::new(0.6).unwrap();
    let cfg = SuiteConfig {
        samples: 6,
        nodes: 128,
        max_spin: HalfInt::from_twice(2),
        ..Default::default()
    };
    for name in SUITES {
        let t0 = Instant::now();
        match run_suite(name, &ctx, &cfg) {
            Ok(rep) => {
                eprint!("{}", rep.render());
                eprintln!("  [{name}: {:?}]", t0.elapsed());
            }
            Err(e) => eprintln!("{name}: ERROR {e}"),
        }
    }
}
