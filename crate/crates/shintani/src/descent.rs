//! Machine checks for the structural identities behind Shintani descent:
//! the cyclic-product model of twisted conjugacy, the collapse of the
//! diagonal through partial norms, the compatibility of norm maps across
//! field levels, and the averaging identity for coset extensions.

use std::sync::Arc;

use crate::chartab::{character_table, CharacterTable};
use crate::classfun::{
    c_r_indicator, extensions_over, m_r, shintani_descent, Subgroup,
};
use crate::cyclo::Cyclotomic;
use crate::group::matrix::EnumeratedGroup;
use crate::group::norm::{norm_class_map, NormCaps, Tower};
use crate::group::product::ProductGroup;
use crate::group::semidirect::Semidirect;
use crate::group::{perm_pow, power_norm_idx, twisted_classes, Group};

/// Checks that x -> (x, 1, ..., 1) induces a bijection from the
/// F^r-twisted classes of G onto the classes of the r-fold product of G
/// twisted by Frobenius composed with factor rotation.
pub fn check_rotation_bijection(
    g: &dyn Group,
    frob: &[usize],
    r: usize,
    cap: u64,
) -> Result<usize, String> {
    let h = ProductGroup::new(g, r, cap)?;
    let twist = h.rotation_twist(frob);
    let tg = twisted_classes(g, &perm_pow(frob, r))?;
    let th = twisted_classes(&h, &twist)?;
    if tg.len() != th.len() {
        return Err(format!(
            "class counts differ: {} on the group, {} on the product",
            tg.len(),
            th.len()
        ));
    }
    let mut image = vec![usize::MAX; tg.len()];
    for x in 0..g.order() {
        let a = tg.block_of[x];
        let b = th.block_of[h.first_slot(x)];
        if image[a] == usize::MAX {
            image[a] = b;
        } else if image[a] != b {
            return Err("first-slot map is not constant on twisted classes".into());
        }
    }
    let mut hit = vec![false; th.len()];
    for &b in &image {
        if b == usize::MAX || hit[b] {
            return Err("first-slot map is not a bijection on classes".into());
        }
        hit[b] = true;
    }
    Ok(tg.len())
}

/// Checks the elementwise collapse of the diagonal: with
/// y = (1, N_1(x), ..., N_{r-1}(x)) and the rotation twist F',
/// y^{-1} (x, ..., x) F'(y) = (N_r(x), 1, ..., 1).
pub fn check_diagonal_collapse(
    g: &dyn Group,
    frob: &[usize],
    r: usize,
    cap: u64,
) -> Result<(), String> {
    let h = ProductGroup::new(g, r, cap)?;
    let twist = h.rotation_twist(frob);
    for x in 0..g.order() {
        let mut parts = vec![g.id(); r];
        for (k, part) in parts.iter_mut().enumerate().skip(1) {
            *part = power_norm_idx(g, frob, x, k as u32);
        }
        let y = h.join(&parts);
        let lhs = h.mul(h.mul(h.inv(y), h.diagonal(x)), twist[y]);
        let rhs = h.first_slot(power_norm_idx(g, frob, x, r as u32));
        if lhs != rhs {
            return Err(format!("diagonal collapse fails at element {}", x));
        }
    }
    Ok(())
}

/// Checks the commuting square of norm maps: descending from level rm to
/// level r after taking the r-fold partial norm agrees, class by class,
/// with descending from level rm to level 1 and then including the fixed
/// group of F into the fixed group of F^r.
pub fn check_norm_square(
    tower: &Tower,
    g_rm: &EnumeratedGroup,
    g_r: &EnumeratedGroup,
    g_1: &EnumeratedGroup,
    r: u32,
    m: u32,
    caps: &NormCaps,
) -> Result<(), String> {
    let rm = r * m;
    let top = norm_class_map(tower, g_rm, g_r, rm, r, caps).map_err(|e| format!("{:?}", e))?;
    let left = norm_class_map(tower, g_rm, g_1, rm, 1, caps).map_err(|e| format!("{:?}", e))?;
    let frob = g_rm.frob_perm(tower.d);
    for x in 0..g_rm.order() {
        let nx = power_norm_idx(g_rm, &frob, x, r);
        let top_class = top.class_map[top.src.block_of[nx]];
        let low_class = left.class_map[left.src.block_of[x]];
        let rep = left.dst.representative(low_class);
        let emb = g_r
            .index_of(&g_1.mat(rep).embed(tower.field_level(r)))
            .ok_or("fixed subgroup does not embed")?;
        if top.dst.block_of[emb] != top_class {
            return Err(format!("norm square does not commute at element {}", x));
        }
    }
    Ok(())
}

/// Data for one field-level triple: the three enumerated fixed-point groups
/// at levels d, d*r and d*r*m of a matrix-group tower.
pub struct LevelTriple {
    pub tower: Tower,
    pub g_1: EnumeratedGroup,
    pub g_r: EnumeratedGroup,
    pub g_rm: EnumeratedGroup,
    pub r: u32,
    pub m: u32,
}

impl LevelTriple {
    pub fn new(
        n: usize,
        p: u64,
        d: u32,
        special: bool,
        r: u32,
        m: u32,
        cap: u64,
    ) -> Result<LevelTriple, String> {
        let tower = Tower { n, p, d, special };
        let g_1 = EnumeratedGroup::enumerate(n, p, d, special, cap)?;
        let g_r = EnumeratedGroup::enumerate(n, p, d * r, special, cap)?;
        let g_rm = EnumeratedGroup::enumerate(n, p, d * r * m, special, cap)?;
        Ok(LevelTriple {
            tower,
            g_1,
            g_r,
            g_rm,
            r,
            m,
        })
    }
}

/// The averaging identity for one stable character: the mean of the
/// extension over the norm-translated coset equals the mean of its Shintani
/// descent over the fixed subgroup.  Returns the number of (character,
/// extension) pairs verified.
pub fn check_descent_average(lt: &LevelTriple, caps: &NormCaps) -> Result<usize, String> {
    let frob = lt.g_rm.frob_perm(lt.tower.d);
    let frob_r = perm_pow(&frob, lt.r as usize);
    let sd = Semidirect::new(&lt.g_rm, frob_r, lt.m as usize)?;
    let sd_table = character_table(&sd)?;
    let g_table = character_table(&lt.g_rm)?;
    let coset_part = Arc::new(sd.coset_classes(1));
    let map = norm_class_map(&lt.tower, &lt.g_rm, &lt.g_r, lt.r * lt.m, lt.r, caps)
        .map_err(|e| format!("{:?}", e))?;
    let fixed = Subgroup::fixed_points(&lt.g_r, &lt.g_r.frob_perm(lt.tower.d));
    let mut checked = 0;
    for chi in 0..g_table.chars.len() {
        let stable = stable_under(&g_table, chi, sd.phi_pow(1));
        if !stable {
            continue;
        }
        for ext in extensions_over(&g_table, chi, &sd, &sd_table, &coset_part, 1)? {
            let lhs = c_r_indicator(&lt.g_rm, &frob, lt.r, &coset_part, &ext);
            let descended = shintani_descent(&map, &ext);
            let rhs = m_r(&descended, &fixed);
            if lhs != rhs {
                return Err(format!("averaging identity fails for character {}", chi));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Indicator data for one F^r-stable character of the top group of a tower:
/// whether the character is self-associate (F(chi) equals its complex
/// conjugate) and the generalized twisted indicator of each extension.
pub struct TowerIndicator {
    pub chi: usize,
    pub degree: u64,
    pub self_associate: bool,
    pub indicators: Vec<Cyclotomic>,
}

/// Computes c_r^{(m)} for every extension of every F^r-stable irreducible
/// of the top group G^{F^{rm}} of a level triple (m >= 2).
pub fn tower_indicators(lt: &LevelTriple) -> Result<Vec<TowerIndicator>, String> {
    let frob = lt.g_rm.frob_perm(lt.tower.d);
    let frob_r = perm_pow(&frob, lt.r as usize);
    let sd = Semidirect::new(&lt.g_rm, frob_r, lt.m as usize)?;
    let sd_table = character_table(&sd)?;
    let g_table = character_table(&lt.g_rm)?;
    let coset_part = Arc::new(sd.coset_classes(1));
    let mut out = Vec::new();
    for chi in 0..g_table.chars.len() {
        if !stable_under(&g_table, chi, sd.phi_pow(1)) {
            continue;
        }
        let self_associate = g_table.class_reps.iter().enumerate().all(|(c, &rep)| {
            g_table.chars[chi][g_table.class_of[frob[rep]]] == g_table.chars[chi][c].conj()
        });
        let indicators = extensions_over(&g_table, chi, &sd, &sd_table, &coset_part, 1)?
            .iter()
            .map(|ext| c_r_indicator(&lt.g_rm, &frob, lt.r, &coset_part, ext))
            .collect();
        out.push(TowerIndicator {
            chi,
            degree: g_table.degrees[chi],
            self_associate,
            indicators,
        });
    }
    Ok(out)
}

/// Whether a character row is stable under an index automorphism.
pub fn stable_under(table: &CharacterTable, chi: usize, phi: &[usize]) -> bool {
    table
        .class_reps
        .iter()
        .enumerate()
        .all(|(c, &rep)| table.chars[chi][table.class_of[phi[rep]]] == table.chars[chi][c])
}

/// Frobenius-Schur indicator of each row of a character table:
/// |G|^{-1} sum_g chi(g^2).
fn fs_indicators(g: &dyn Group, table: &CharacterTable) -> Vec<Cyclotomic> {
    let inv_ord = num_rational::BigRational::new(1.into(), (g.order() as i64).into());
    (0..table.chars.len())
        .map(|chi| {
            Cyclotomic::sum(
                (0..g.order()).map(|x| table.chars[chi][table.class_of[g.mul(x, x)]].clone()),
            )
            .scale(&inv_ord)
        })
        .collect()
}

/// Checks the twisted involution-counting identity on a finite group W with
/// an involutive twist tau: for every w, the number of u with
/// u * tau(u) = w equals the plain sum of character values
/// sum_E E(w) over tau-stable irreducibles E.  Cross-checks the same count
/// against the semidirect product W<tau>: the twisted square roots of w are
/// exactly the square roots of w lying in the nonidentity coset, so the
/// count also equals the difference of Frobenius-Schur expansions
/// sum FS(chi~) chi~(w) over Irr W<tau> minus sum FS(chi) chi(w) over Irr W.
/// Returns the number of stable characters.
pub fn check_twisted_involution_count(w: &dyn Group, twist: &[usize]) -> Result<usize, String> {
    let sd = Semidirect::new(w, twist.to_vec(), 2)?;
    let sd_table = character_table(&sd)?;
    let w_table = character_table(w)?;
    let stable: Vec<usize> = (0..w_table.chars.len())
        .filter(|&chi| stable_under(&w_table, chi, twist))
        .collect();
    let fs_sd = fs_indicators(&sd, &sd_table);
    let fs_w = fs_indicators(w, &w_table);
    for x in 0..w.order() {
        let count = Cyclotomic::from_int(crate::slnparam::count_twisted_sqrt(w, twist, x) as i64);
        let stable_sum = Cyclotomic::sum(
            stable
                .iter()
                .map(|&chi| w_table.chars[chi][w_table.class_of[x]].clone()),
        );
        if stable_sum != count {
            return Err(format!("stable-character sum fails at element {}", x));
        }
        let coset_sqrt = Cyclotomic::sum((0..sd_table.chars.len()).map(|chi| {
            sd_table.chars[chi][sd_table.class_of[x]].mul(&fs_sd[chi])
        }))
        .sub(&Cyclotomic::sum((0..w_table.chars.len()).map(|chi| {
            w_table.chars[chi][w_table.class_of[x]].mul(&fs_w[chi])
        })));
        if coset_sqrt != count {
            return Err(format!("coset square-root expansion fails at element {}", x));
        }
    }
    Ok(stable.len())
}

/// Brute-force twisted indicators c_r(chi) = |G|^{-1} sum_x chi(N_r(x)) for
/// every row of a character table (no extension needed: this is the
/// restriction of the degree-r indicator to the identity coset).
pub fn c_r_bruteforce(
    g: &dyn Group,
    table: &CharacterTable,
    frob: &[usize],
    r: u32,
) -> Vec<Cyclotomic> {
    let part = crate::classfun::table_partition(table);
    (0..table.chars.len())
        .map(|chi| {
            let f = crate::classfun::table_row(table, &part, chi);
            let s = Cyclotomic::sum((0..g.order()).map(|x| {
                let nx = power_norm_idx(g, frob, x, r);
                f.value_at(nx).clone()
            }));
            s.scale(&num_rational::BigRational::new(
                1.into(),
                (g.order() as i64).into(),
            ))
        })
        .collect()
}

/// Checks that twisted centralizer orders transfer through the norm map:
/// the F-twisted centralizer of x in the big group has the same order as
/// the ordinary centralizer of its norm image in the fixed group.
pub fn check_centralizer_transfer(
    tower: &Tower,
    g_big: &EnumeratedGroup,
    g_small: &EnumeratedGroup,
    k1: u32,
    caps: &NormCaps,
) -> Result<(), String> {
    let map = norm_class_map(tower, g_big, g_small, k1, 1, caps).map_err(|e| format!("{:?}", e))?;
    let frob = g_big.frob_perm(tower.d);
    for b in 0..map.src.len() {
        let x = map.src.representative(b);
        let tc = crate::group::norm::twisted_centralizer_order(g_big, &frob, x);
        let zc = g_small.order() / map.dst.blocks[map.class_map[b]].len();
        if tc != zc {
            return Err(format!(
                "centralizer orders differ on class {}: {} vs {}",
                b, tc, zc
            ));
        }
    }
    Ok(())
}

/// Restriction of a coset partition check: every coset class is a union of
/// twisted classes of the base.
pub fn check_coset_refinement(
    base: &dyn Group,
    phi: &[usize],
    m: usize,
    j: usize,
) -> Result<(), String> {
    let sd = Semidirect::new(base, phi.to_vec(), m)?;
    let coarse = sd.coset_classes(j);
    let fine = twisted_classes(base, &perm_pow(phi, j))?;
    for blk in &fine.blocks {
        let targets: std::collections::BTreeSet<usize> =
            blk.iter().map(|&x| coarse.block_of[x]).collect();
        if targets.len() != 1 {
            return Err("twisted class split across coset classes".into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::perm::PermGroup;

    #[test]
    fn rotation_bijection_on_gl1_f4() {
        let g = EnumeratedGroup::enumerate(1, 2, 2, false, 1000).unwrap();
        let frob = g.frob_perm(1);
        let classes = check_rotation_bijection(&g, &frob, 2, 100_000).unwrap();
        assert_eq!(classes, 3);
        check_diagonal_collapse(&g, &frob, 2, 100_000).unwrap();
    }

    #[test]
    fn rotation_bijection_on_sl2_f2() {
        let g = EnumeratedGroup::enumerate(2, 2, 1, true, 1000).unwrap();
        let frob: Vec<usize> = (0..g.order()).collect();
        check_rotation_bijection(&g, &frob, 2, 100_000).unwrap();
        check_diagonal_collapse(&g, &frob, 2, 100_000).unwrap();
        check_diagonal_collapse(&g, &frob, 3, 10_000_000).unwrap();
    }

    #[test]
    fn norm_square_on_gl1() {
        let caps = NormCaps::default();
        let lt = LevelTriple::new(1, 2, 1, false, 2, 2, 100_000).unwrap();
        check_norm_square(&lt.tower, &lt.g_rm, &lt.g_r, &lt.g_1, 2, 2, &caps).unwrap();
    }

    #[test]
    fn descent_average_on_gl1() {
        let caps = NormCaps::default();
        let lt = LevelTriple::new(1, 2, 1, false, 2, 2, 100_000).unwrap();
        let checked = check_descent_average(&lt, &caps).unwrap();
        // three stable characters, two extensions each
        assert_eq!(checked, 6);
    }

    #[test]
    fn involution_count_on_s3() {
        let w = PermGroup::symmetric(3);
        for twist in w.involutive_twists() {
            check_twisted_involution_count(&w, &twist).unwrap();
        }
    }
}
