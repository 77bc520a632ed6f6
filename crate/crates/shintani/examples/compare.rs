//! Full pipeline: oracle vs closed form on SL_2(F_q^2) / SL_2(F_q) for
//! q = 2 and q = 3, comparing serialized artifacts only.

use shintani::report::{run_compare_target, ExperimentConfig, Target};

fn main() {
    let cfg = ExperimentConfig::default();
    for p in [2u64, 3] {
        let t = Target { n: 2, p, level: 1 };
        let v = run_compare_target(&t, &cfg).unwrap();
        println!(
            "{}: {} ({} records, {} eps resolutions)",
            t.label(),
            if v.pass() { "PASS" } else { "FAIL" },
            v.oracle_count,
            v.resolutions.len()
        );
        for r in &v.resolutions {
            println!("  eps(class {}, E {}) = {}", r.class_id, r.e_id, r.status);
        }
    }
}
