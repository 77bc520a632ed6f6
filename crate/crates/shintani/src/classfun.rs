//! Exact class-function algebra on ordinary, twisted, and coset classes:
//! inner products, induction, multiplicity functionals, Shintani descent,
//! twisting operators, and the generalized twisted Frobenius–Schur
//! indicator.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::chartab::CharacterTable;
use crate::cyclo::Cyclotomic;
use crate::group::matrix::EnumeratedGroup;
use crate::group::norm::{norm_class_map, NormCaps, NormClassMap, NormError, Tower};
use crate::group::semidirect::Semidirect;
use crate::group::{ClassPartition, Group};

/// A function constant on the blocks of a class partition (ordinary,
/// twisted, or coset classes), one exact cyclotomic value per block.
#[derive(Clone)]
pub struct ClassFunction {
    pub partition: Arc<ClassPartition>,
    pub values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(partition: Arc<ClassPartition>, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(partition.blocks.len(), values.len(), "value per block");
        ClassFunction { partition, values }
    }

    pub fn constant(partition: Arc<ClassPartition>, v: Cyclotomic) -> Self {
        let n = partition.blocks.len();
        ClassFunction { partition, values: vec![v; n] }
    }

    pub fn trivial(partition: Arc<ClassPartition>) -> Self {
        Self::constant(partition, Cyclotomic::one())
    }

    pub fn value_at(&self, elem: usize) -> &Cyclotomic {
        &self.values[self.partition.block_of[elem]]
    }

    /// Number of underlying elements.
    pub fn total(&self) -> usize {
        self.partition.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn same_domain(&self, other: &ClassFunction) -> bool {
        Arc::ptr_eq(&self.partition, &other.partition) || *self.partition == *other.partition
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction {
            partition: self.partition.clone(),
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn mul_pointwise(&self, other: &ClassFunction) -> ClassFunction {
        assert!(self.same_domain(other));
        ClassFunction {
            partition: self.partition.clone(),
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "domain": self.partition.to_json(),
            "values": self.values.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Rebuild a partition in the canonical order of a character table, so that
/// table rows can be used as ClassFunctions directly.
pub fn table_partition(table: &CharacterTable) -> Arc<ClassPartition> {
    let r = table.num_classes();
    let mut blocks = vec![Vec::new(); r];
    for (x, &c) in table.class_of.iter().enumerate() {
        blocks[c].push(x);
    }
    Arc::new(ClassPartition {
        blocks,
        block_of: table.class_of.clone(),
    })
}

pub fn table_row(table: &CharacterTable, partition: &Arc<ClassPartition>, i: usize) -> ClassFunction {
    ClassFunction::new(partition.clone(), table.chars[i].clone())
}

/// ⟨f, h⟩ = (Σ sizes)⁻¹ Σ_blocks |block|·f·conj(h); the same formula covers
/// group and coset domains.
pub fn inner_product(f: &ClassFunction, h: &ClassFunction) -> Result<Cyclotomic, String> {
    if !f.same_domain(h) {
        return Err("inner product requires matching domains".into());
    }
    let total = f.total() as u64;
    let s = Cyclotomic::sum(f.partition.blocks.iter().enumerate().map(|(j, b)| {
        f.values[j]
            .mul(&h.values[j].conj())
            .scale(&BigRational::from_integer((b.len() as u64).into()))
    }));
    Ok(s.scale(&BigRational::new(BigInt::from(1), total.into())))
}

/// The average of f over its domain: M_k on groups, M̃_k on cosets.
pub fn big_m(f: &ClassFunction) -> Cyclotomic {
    let total = f.total() as u64;
    let s = Cyclotomic::sum(f.partition.blocks.iter().enumerate().map(|(j, b)| {
        f.values[j].scale(&BigRational::from_integer((b.len() as u64).into()))
    }));
    s.scale(&BigRational::new(BigInt::from(1), total.into()))
}

/// An embedded subgroup, as a sorted list of ambient element indices.
pub struct Subgroup {
    pub elems: Vec<usize>,
    pub index: HashMap<usize, usize>,
}

impl Subgroup {
    pub fn new(g: &dyn Group, mut elems: Vec<usize>) -> Result<Subgroup, String> {
        elems.sort_unstable();
        elems.dedup();
        let set: std::collections::HashSet<usize> = elems.iter().copied().collect();
        if !set.contains(&g.id()) {
            return Err("subgroup must contain the identity".into());
        }
        for &a in &elems {
            if !set.contains(&g.inv(a)) {
                return Err("subgroup not closed under inverse".into());
            }
            for &b in &elems {
                if !set.contains(&g.mul(a, b)) {
                    return Err("subgroup not closed under multiplication".into());
                }
            }
        }
        let index = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        Ok(Subgroup { elems, index })
    }

    /// Fixed points of an automorphism (e.g. G^F inside G^{F^r}).
    pub fn fixed_points(g: &dyn Group, perm: &[usize]) -> Subgroup {
        let elems: Vec<usize> = (0..g.order()).filter(|&x| perm[x] == x).collect();
        Subgroup::new(g, elems).expect("fixed points form a subgroup")
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }
}

/// m_r(f) = |H|⁻¹ Σ_{x∈H} f(x), the multiplicity ⟨f, Ind_H^G 1⟩ by
/// Frobenius reciprocity.
pub fn m_r(f: &ClassFunction, sub: &Subgroup) -> Cyclotomic {
    let s = Cyclotomic::sum(sub.elems.iter().map(|&x| f.value_at(x).clone()));
    s.scale(&BigRational::new(BigInt::from(1), (sub.order() as u64).into()))
}

/// Induction of a class function from an embedded subgroup:
/// (Ind f)(x) = |H|⁻¹ Σ_{y ∈ G, y⁻¹xy ∈ H} f(y⁻¹xy).
pub fn induce(
    g: &dyn Group,
    g_partition: &Arc<ClassPartition>,
    sub: &Subgroup,
    f_values_on_sub: &dyn Fn(usize) -> Cyclotomic,
) -> ClassFunction {
    let h_order = sub.order() as u64;
    let values: Vec<Cyclotomic> = g_partition
        .blocks
        .iter()
        .map(|block| {
            let x = block[0];
            let s = Cyclotomic::sum((0..g.order()).filter_map(|y| {
                let c = g.mul(g.mul(g.inv(y), x), y);
                if sub.index.contains_key(&c) {
                    Some(f_values_on_sub(c))
                } else {
                    None
                }
            }));
            s.scale(&BigRational::new(BigInt::from(1), h_order.into()))
        })
        .collect();
    ClassFunction::new(g_partition.clone(), values)
}

/// Shintani descent: the transpose-inverse of the norm-map class bijection,
/// (Sh f)(norm(x)) = f(x).
pub fn shintani_descent(map: &NormClassMap, f: &ClassFunction) -> ClassFunction {
    let f = transfer(f, &map.src);
    let mut values = vec![Cyclotomic::zero(); map.dst.blocks.len()];
    for (b, &db) in map.class_map.iter().enumerate() {
        values[db] = f.values[b].clone();
    }
    ClassFunction::new(Arc::new(map.dst.clone()), values)
}

/// Inverse descent: (Sh⁻¹ h)(x) = h(norm(x)).
pub fn shintani_ascent(map: &NormClassMap, h: &ClassFunction) -> ClassFunction {
    let h = transfer(h, &map.dst);
    let values: Vec<Cyclotomic> = map
        .class_map
        .iter()
        .map(|&db| h.values[db].clone())
        .collect();
    ClassFunction::new(Arc::new(map.src.clone()), values)
}

/// The twisting operator t₁* (inverse of the self-descent Sh_{F^r/F^r}) on
/// class functions of G^{F^r}, or its inverse.
pub fn twisting_operator(
    tower: &Tower,
    g: &EnumeratedGroup,
    r: u32,
    caps: &NormCaps,
    f: &ClassFunction,
    inverse: bool,
) -> Result<ClassFunction, NormError> {
    let map = norm_class_map(tower, g, g, r, r, caps)?;
    Ok(if inverse {
        shintani_descent(&map, f)
    } else {
        shintani_ascent(&map, f)
    })
}

/// The lift transpose τ₁*: (τ₁*f)(xσ^j) = f((xσ^j)^{1−m}), computed inside
/// the semidirect product. Requires m − 1 prime to the group order.
pub fn twisting_lift(
    sd: &Semidirect,
    coset_part: &Arc<ClassPartition>,
    j: usize,
    m: u64,
    f: &ClassFunction,
) -> Result<ClassFunction, String> {
    if num_integer::gcd(m - 1, sd.order() as u64) != 1 {
        return Err(format!(
            "m − 1 = {} is not prime to the group order {}",
            m - 1,
            sd.order()
        ));
    }
    assert!(*f.partition == **coset_part);
    let values: Vec<Cyclotomic> = coset_part
        .blocks
        .iter()
        .map(|block| {
            let x = sd.join(block[0], j);
            // (xσ)^{1−m} = ((xσ)^{m−1})⁻¹
            let y = sd.inv(sd.pow(x, m - 1));
            let (base, coset) = sd.split(y);
            assert_eq!(coset, j, "power map must preserve the coset");
            f.values[coset_part.block_of[base]].clone()
        })
        .collect();
    Ok(ClassFunction::new(coset_part.clone(), values))
}

/// The extensions of a σ-stable irreducible χ of G to G⟨σ⟩, restricted to
/// the coset G·σ^j: exactly m coset class functions differing by m-th roots
/// of unity.
pub fn extensions_over(
    g_table: &CharacterTable,
    chi: usize,
    sd: &Semidirect,
    sd_table: &CharacterTable,
    coset_part: &Arc<ClassPartition>,
    j: usize,
) -> Result<Vec<ClassFunction>, String> {
    // σ-stability: χ∘φ = χ
    let phi = sd.phi_pow(1);
    for (c, &rep) in g_table.class_reps.iter().enumerate() {
        if g_table.chars[chi][g_table.class_of[phi[rep]]] != g_table.chars[chi][c] {
            return Err("character is not stable under the twist".into());
        }
    }
    let mut out = Vec::new();
    for row in 0..sd_table.chars.len() {
        if sd_table.degrees[row] != g_table.degrees[chi] {
            continue;
        }
        // restriction to G must equal χ
        let restricts = g_table.class_reps.iter().enumerate().all(|(c, &rep)| {
            *sd_table.value_at(row, sd.join(rep, 0)) == g_table.chars[chi][c]
        });
        if !restricts {
            continue;
        }
        let values: Vec<Cyclotomic> = coset_part
            .blocks
            .iter()
            .map(|b| sd_table.value_at(row, sd.join(b[0], j)).clone())
            .collect();
        out.push(ClassFunction::new(coset_part.clone(), values));
    }
    if out.len() != sd.m {
        return Err(format!(
            "expected {} extensions, found {}",
            sd.m,
            out.len()
        ));
    }
    Ok(out)
}

/// c_r^{(m)}(χ̃) = |G^{F^{rm}}|⁻¹ Σ_{ĝ} χ̃(N_r(ĝ)·σ^r): the generalized
/// twisted Frobenius–Schur indicator, evaluated through the σ^r-coset
/// classes of the semidirect product.
pub fn c_r_indicator(
    g: &dyn Group,
    frob: &[usize],
    r: u32,
    coset_part: &Arc<ClassPartition>,
    chi_tilde: &ClassFunction,
) -> Cyclotomic {
    assert!(*chi_tilde.partition == **coset_part);
    let s = Cyclotomic::sum((0..g.order()).map(|x| {
        let nx = crate::group::power_norm_idx(g, frob, x, r);
        chi_tilde.values[coset_part.block_of[nx]].clone()
    }));
    s.scale(&BigRational::new(BigInt::from(1), (g.order() as u64).into()))
}

/// Rebuild a class function on another partition of the same elements,
/// checking it is constant on each target block. Covers both reorderings of
/// the same partition and genuine refinements (coset → twisted classes).
pub fn transfer(f: &ClassFunction, target: &ClassPartition) -> ClassFunction {
    let values: Vec<Cyclotomic> = target
        .blocks
        .iter()
        .map(|b| f.value_at(b[0]).clone())
        .collect();
    for (j, b) in target.blocks.iter().enumerate() {
        for &x in b {
            assert!(
                *f.value_at(x) == values[j],
                "function not constant on target block {}",
                j
            );
        }
    }
    ClassFunction::new(Arc::new(target.clone()), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::group::conjugacy_classes;

    fn sl2(level: u32) -> EnumeratedGroup {
        EnumeratedGroup::enumerate(2, 2, level, true, 200_000).unwrap()
    }

    #[test]
    fn trivial_inner_product_is_one() {
        let g = sl2(1);
        let part = Arc::new(conjugacy_classes(&g));
        let one = ClassFunction::trivial(part);
        assert_eq!(inner_product(&one, &one).unwrap(), Cyclotomic::one());
        assert_eq!(big_m(&one), Cyclotomic::one());
    }

    #[test]
    fn distinct_irreducibles_orthogonal() {
        let g = sl2(1);
        let t = character_table(&g).unwrap();
        let part = table_partition(&t);
        let a = table_row(&t, &part, 0);
        let b = table_row(&t, &part, 2);
        assert!(inner_product(&a, &b).unwrap().is_zero());
        assert_eq!(inner_product(&a, &a).unwrap(), Cyclotomic::one());
    }

    #[test]
    fn induction_anchor_and_reciprocity() {
        let g = sl2(2);
        let t = character_table(&g).unwrap();
        let part = table_partition(&t);
        let sub = Subgroup::fixed_points(&g, &g.frob_perm(1));
        assert_eq!(sub.order(), 6);
        let ind = induce(&g, &part, &sub, &|_x| Cyclotomic::one());
        assert_eq!(ind.values[t.class_of[g.id()]], Cyclotomic::from_int(10));
        // m₂ multiset {1,0,0,1,1} two ways: inner products and averages
        let expected = [1i64, 0, 0, 1, 1];
        for (i, &e) in expected.iter().enumerate() {
            let chi = table_row(&t, &part, i);
            assert_eq!(
                inner_product(&chi, &ind).unwrap(),
                Cyclotomic::from_int(e),
                "reciprocity at row {}",
                i
            );
            assert_eq!(m_r(&chi, &sub), Cyclotomic::from_int(e));
        }
    }

    #[test]
    fn shintani_descent_of_trivial_is_trivial() {
        let tower = Tower { n: 2, p: 2, d: 1, special: true };
        let g1 = sl2(2);
        let g2 = sl2(1);
        let map = norm_class_map(&tower, &g1, &g2, 2, 1, &NormCaps::default()).unwrap();
        let f = ClassFunction::trivial(Arc::new(map.src.clone()));
        let sh = shintani_descent(&map, &f);
        assert!(sh.values.iter().all(|v| *v == Cyclotomic::one()));
    }

    #[test]
    fn twisting_operator_fixes_trivial_and_is_isometry() {
        let tower = Tower { n: 2, p: 2, d: 1, special: true };
        let g = sl2(2);
        let t = character_table(&g).unwrap();
        let part = table_partition(&t);
        let caps = NormCaps::default();
        for i in 0..t.chars.len() {
            let chi = table_row(&t, &part, i);
            let tw = twisting_operator(&tower, &g, 2, &caps, &chi, false).unwrap();
            // t₁* is a permutation of classes here, hence an isometry
            assert_eq!(inner_product(&tw, &tw).unwrap(), Cyclotomic::one());
            if i == 0 {
                assert!(tw.values.iter().all(|v| *v == Cyclotomic::one()));
            }
        }
    }

    #[test]
    fn coset_orthogonality_on_s3() {
        // GL₁(F₄)⟨σ⟩ ≅ S₃; the two extensions of the trivial character are
        // the trivial and sign characters; their coset inner product is
        // θ(σ) = −1.
        let g = EnumeratedGroup::enumerate(1, 2, 2, false, 100).unwrap();
        let gt = character_table(&g).unwrap();
        let sd = Semidirect::new(&g, g.frob_perm(1), 2).unwrap();
        let st = character_table(&sd).unwrap();
        let coset = Arc::new(sd.coset_classes(1));
        let exts = extensions_over(&gt, 0, &sd, &st, &coset, 1).unwrap();
        assert_eq!(exts.len(), 2);
        let ip = inner_product(&exts[0], &exts[1]).unwrap();
        assert_eq!(ip, Cyclotomic::from_int(-1));
        for e in &exts {
            assert_eq!(inner_product(e, e).unwrap(), Cyclotomic::one());
            // M̃ of each linear extension is ±1, with M of the base = 1
            let m = big_m(e);
            assert!(m == Cyclotomic::one() || m == Cyclotomic::from_int(-1));
        }
    }

    #[test]
    fn c2_on_gl1_f4_is_one_for_all_characters() {
        // q = 2, r = 2, m = 1: N₂(g) = g³ = 1 for all g ∈ GL₁(F₄), so
        // c₂(χ) = χ(1) = 1 for each of the three characters.
        let g = EnumeratedGroup::enumerate(1, 2, 2, false, 100).unwrap();
        let gt = character_table(&g).unwrap();
        let frob = g.frob_perm(1);
        let part = table_partition(&gt);
        for chi in 0..gt.chars.len() {
            let chif = table_row(&gt, &part, chi);
            let s = Cyclotomic::sum((0..g.order()).map(|x| {
                let nx = crate::group::power_norm_idx(&g, &frob, x, 2);
                chif.value_at(nx).clone()
            }));
            let c2 = s.scale(&BigRational::new(BigInt::from(1), (g.order() as u64).into()));
            assert_eq!(c2, Cyclotomic::one());
        }
    }
}
