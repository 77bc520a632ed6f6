//! Exact character table of SL_2(F_4) (isomorphic to A_5) by Dixon's
//! method, printed as an aligned text table.

use shintani::chartab::character_table;
use shintani::group::matrix::EnumeratedGroup;

fn main() {
    let g = EnumeratedGroup::enumerate(2, 2, 2, true, 100_000).unwrap();
    let table = character_table(&g).unwrap();
    println!("{}", table.text_table());
    println!("degrees: {:?}", table.degrees);
}
