//! Enumerated finite groups and their (twisted) conjugacy structure.
//!
//! Groups expose an index-based interface: elements are 0..order, and all
//! higher layers (class functions, character tables, parameter checks) work
//! with indices. Concrete carriers are matrix groups over finite fields,
//! permutation groups, cyclic-extension semidirect products, and finite
//! direct powers with a factor-rotating twist.

pub mod matrix;
pub mod norm;
pub mod perm;
pub mod product;
pub mod semidirect;

use std::collections::VecDeque;

/// Index-based finite group interface.
pub trait Group {
    fn order(&self) -> usize;
    fn id(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    /// A generating set; orbit computations act through these.
    fn generators(&self) -> Vec<usize>;

    fn pow(&self, a: usize, k: u64) -> usize {
        let mut r = self.id();
        let mut b = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        r
    }

    fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.id() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// lcm of all element orders.
    fn exponent(&self) -> u64 {
        let mut e: u64 = 1;
        for a in 0..self.order() {
            let o = self.element_order(a);
            e = num_integer::lcm(e, o);
        }
        e
    }
}

/// A partition of the element indices into orbit blocks. Blocks are sorted
/// internally and ordered by their least element, so partitions are
/// deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
}

impl ClassPartition {
    fn from_blocks(mut blocks: Vec<Vec<usize>>, n: usize) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        let mut block_of = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                block_of[x] = i;
            }
        }
        ClassPartition { blocks, block_of }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Least element of each block, the canonical representative.
    pub fn representative(&self, block: usize) -> usize {
        self.blocks[block][0]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.blocks)
    }
}

/// Checks that `phi` is a permutation of the element set and an
/// automorphism (verified against the generating set).
pub fn check_automorphism(g: &dyn Group, phi: &[usize]) -> Result<(), String> {
    let n = g.order();
    if phi.len() != n {
        return Err(format!("twist has length {} but |G| = {}", phi.len(), n));
    }
    let mut seen = vec![false; n];
    for &x in phi {
        if x >= n || seen[x] {
            return Err("twist is not a permutation of the element set".into());
        }
        seen[x] = true;
    }
    if phi[g.id()] != g.id() {
        return Err("twist does not fix the identity".into());
    }
    for &a in &g.generators() {
        for b in 0..n {
            if phi[g.mul(a, b)] != g.mul(phi[a], phi[b]) {
                return Err("twist is not multiplicative".into());
            }
        }
    }
    Ok(())
}

/// Orbit partition of the action z · x = z⁻¹ x φ(z). With φ = identity this
/// is the ordinary conjugacy partition.
pub fn twisted_classes(g: &dyn Group, phi: &[usize]) -> Result<ClassPartition, String> {
    check_automorphism(g, phi)?;
    Ok(twisted_classes_unchecked(g, phi))
}

pub fn twisted_classes_unchecked(g: &dyn Group, phi: &[usize]) -> ClassPartition {
    let n = g.order();
    let gens = g.generators();
    let acts: Vec<(usize, usize)> = gens.iter().map(|&z| (g.inv(z), phi[z])).collect();
    let mut block_id = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if block_id[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut blk = Vec::new();
        let mut queue = VecDeque::new();
        block_id[start] = id;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            blk.push(x);
            for &(zi, pz) in &acts {
                let y = g.mul(g.mul(zi, x), pz);
                if block_id[y] == usize::MAX {
                    block_id[y] = id;
                    queue.push_back(y);
                }
            }
        }
        blocks.push(blk);
    }
    ClassPartition::from_blocks(blocks, n)
}

/// Ordinary conjugacy classes.
pub fn conjugacy_classes(g: &dyn Group) -> ClassPartition {
    let idp: Vec<usize> = (0..g.order()).collect();
    twisted_classes_unchecked(g, &idp)
}

/// The identity permutation on a group's index set.
pub fn identity_perm(g: &dyn Group) -> Vec<usize> {
    (0..g.order()).collect()
}

/// Composition of index permutations: (a ∘ b)(x) = a[b[x]].
pub fn compose_perm(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

/// k-th power of an index permutation.
pub fn perm_pow(p: &[usize], k: usize) -> Vec<usize> {
    let mut r: Vec<usize> = (0..p.len()).collect();
    for _ in 0..k {
        r = compose_perm(p, &r);
    }
    r
}

/// N_k(x) = x·F(x)·…·F^{k−1}(x) at the index level, for a twist permutation F.
pub fn power_norm_idx(g: &dyn Group, frob: &[usize], x: usize, k: u32) -> usize {
    let mut acc = g.id();
    let mut fx = x;
    for _ in 0..k {
        acc = g.mul(acc, fx);
        fx = frob[fx];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::matrix::EnumeratedGroup;

    #[test]
    fn sl2f2_classes() {
        let g = EnumeratedGroup::enumerate(2, 2, 1, true, 200_000).unwrap();
        assert_eq!(g.order(), 6);
        let classes = conjugacy_classes(&g);
        let mut sizes: Vec<usize> = classes.blocks.iter().map(|b| b.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn twisted_class_count_matches_fixed_group() {
        // #(G^{F²} ∼_F) must equal #(G^F ∼): 3 for SL₂ with q = 2.
        let g = EnumeratedGroup::enumerate(2, 2, 2, true, 200_000).unwrap();
        assert_eq!(g.order(), 60);
        let frob = g.frob_perm(1);
        let tc = twisted_classes(&g, &frob).unwrap();
        assert_eq!(tc.len(), 3);
        let small = EnumeratedGroup::enumerate(2, 2, 1, true, 200_000).unwrap();
        assert_eq!(conjugacy_classes(&small).len(), 3);
    }

    #[test]
    fn abelian_identity_twist_gives_singletons() {
        let g = EnumeratedGroup::enumerate(1, 5, 1, false, 200_000).unwrap();
        let classes = conjugacy_classes(&g);
        assert!(classes.blocks.iter().all(|b| b.len() == 1));
        assert_eq!(classes.len(), 4);
    }

    #[test]
    fn power_norm_on_fixed_elements_is_power() {
        let g = EnumeratedGroup::enumerate(2, 2, 2, true, 200_000).unwrap();
        let frob = g.frob_perm(1);
        for x in 0..g.order() {
            assert_eq!(power_norm_idx(&g, &frob, x, 1), x);
            if frob[x] == x {
                assert_eq!(power_norm_idx(&g, &frob, x, 3), g.pow(x, 3));
            }
        }
    }

    #[test]
    fn power_norm_respects_twisted_classes() {
        // x ∼_F y ⇒ N₂(x) ∼_{F²} N₂(y) on SL₂(F₄)
        let g = EnumeratedGroup::enumerate(2, 2, 2, true, 200_000).unwrap();
        let frob = g.frob_perm(1);
        let frob2 = compose_perm(&frob, &frob);
        let tc_f = twisted_classes(&g, &frob).unwrap();
        let tc_f2 = twisted_classes(&g, &frob2).unwrap();
        for blk in &tc_f.blocks {
            let targets: std::collections::BTreeSet<usize> = blk
                .iter()
                .map(|&x| tc_f2.block_of[power_norm_idx(&g, &frob, x, 2)])
                .collect();
            assert_eq!(targets.len(), 1);
        }
    }
}
