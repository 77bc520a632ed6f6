//! Shintani descent on the multiplicative tower GL_1(F_16) / GL_1(F_4):
//! the norm-map class bijection and the descent of a character.

use shintani::chartab::character_table;
use shintani::classfun::{shintani_descent, table_partition, table_row};
use shintani::group::matrix::EnumeratedGroup;
use shintani::group::norm::{norm_class_map, NormCaps, Tower};

fn main() {
    let tower = Tower { n: 1, p: 2, d: 1, special: false };
    let g_big = EnumeratedGroup::enumerate(1, 2, 4, false, 100_000).unwrap();
    let g_small = EnumeratedGroup::enumerate(1, 2, 2, false, 100_000).unwrap();
    let caps = NormCaps::default();

    let map = norm_class_map(&tower, &g_big, &g_small, 4, 2, &caps).unwrap();
    println!(
        "norm map: {} twisted classes of GL_1(F_16) -> {} classes of GL_1(F_4)",
        map.src.len(),
        map.dst.len()
    );
    for (b, &db) in map.class_map.iter().enumerate() {
        println!("  class {} -> class {}", b, db);
    }

    let table = character_table(&g_big).unwrap();
    let part = table_partition(&table);
    let chi = table_row(&table, &part, 1);
    let descended = shintani_descent(&map, &chi);
    println!("descent of character 1: {:?}", descended.values.iter().map(|v| v.approx().0).collect::<Vec<_>>());
}
