//! Closed-form multiplicity predictions for SL_2(F_9) / SL_2(F_3): one
//! record per irreducible, with the symbolic sign for even-order data.

use shintani::report::{prediction_csv, prediction_report, Target};

fn main() {
    let t = Target { n: 2, p: 3, level: 1 };
    let pred = prediction_report(&t, 0).unwrap();
    print!("{}", prediction_csv(&pred));
    println!(
        "multiset (eps = +1): {:?}, (eps = -1): {:?}",
        pred.resolved_multiset(1),
        pred.resolved_multiset(-1)
    );
}
