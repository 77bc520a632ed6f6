//! Brute-force multiplicities m_2(chi) = <chi, Ind 1> for
//! SL_2(F_4) / SL_2(F_2), with the index-sum check.

use shintani::report::{oracle_report, Target};

fn main() {
    let t = Target { n: 2, p: 2, level: 1 };
    let rep = oracle_report(&t, 200_000).unwrap();
    print!("{}", rep.csv());
    println!(
        "sum m2*deg = {} (index {}), check: {}",
        rep.sum_m2_deg,
        rep.index,
        rep.index_check()
    );
}
