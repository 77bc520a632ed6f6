//! Enumerate SL_2(F_4), list its conjugacy classes and the twisted classes
//! under the entrywise Frobenius.

use shintani::group::matrix::EnumeratedGroup;
use shintani::group::{conjugacy_classes, twisted_classes, Group};

fn main() {
    let g = EnumeratedGroup::enumerate(2, 2, 2, true, 100_000).unwrap();
    println!("|SL_2(F_4)| = {}", g.order());

    let classes = conjugacy_classes(&g);
    println!("conjugacy classes: {}", classes.len());
    for b in 0..classes.len() {
        let rep = classes.representative(b);
        println!("  class {}: size {}, representative index {}", b, classes.blocks[b].len(), rep);
    }

    let frob = g.frob_perm(1);
    let twisted = twisted_classes(&g, &frob).unwrap();
    println!("F-twisted classes: {}", twisted.len());
}
