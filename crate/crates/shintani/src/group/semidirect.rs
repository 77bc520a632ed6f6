//! Semidirect products G ⋊ ⟨σ⟩ with σ acting by a given automorphism, and
//! the coset classes G·σ^j under conjugation by the full product.

use crate::group::{check_automorphism, conjugacy_classes, perm_pow, ClassPartition, Group};

/// G ⋊ ⟨σ⟩ with σ^m = 1 and σ g σ⁻¹ = φ(g). Element index g + |G|·j
/// represents (g, σ^j); multiplication (g,σ^i)(h,σ^j) = (g·φ^i(h), σ^{i+j}).
pub struct Semidirect<'g> {
    pub base: &'g dyn Group,
    pub m: usize,
    phi_pows: Vec<Vec<usize>>,
}

impl<'g> Semidirect<'g> {
    pub fn new(base: &'g dyn Group, phi: Vec<usize>, m: usize) -> Result<Self, String> {
        check_automorphism(base, &phi)?;
        let mut phi_pows = Vec::with_capacity(m);
        phi_pows.push((0..base.order()).collect::<Vec<usize>>());
        for i in 1..m {
            let next: Vec<usize> = phi_pows[i - 1].iter().map(|&x| phi[x]).collect();
            phi_pows.push(next);
        }
        // σ^m = 1 must act trivially
        let full: Vec<usize> = phi_pows[m - 1].iter().map(|&x| phi[x]).collect();
        if full.iter().enumerate().any(|(i, &x)| i != x) {
            return Err(format!("automorphism order does not divide m = {}", m));
        }
        Ok(Semidirect { base, m, phi_pows })
    }

    pub fn base_order(&self) -> usize {
        self.base.order()
    }

    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx % self.base.order(), idx / self.base.order())
    }

    pub fn join(&self, g: usize, j: usize) -> usize {
        g + self.base.order() * (j % self.m)
    }

    pub fn phi_pow(&self, i: usize) -> &[usize] {
        &self.phi_pows[i % self.m]
    }

    /// Element indices of the coset G·σ^j.
    pub fn coset(&self, j: usize) -> Vec<usize> {
        let n = self.base.order();
        (0..n).map(|g| self.join(g, j)).collect()
    }

    /// Conjugacy classes of the full product restricted to the coset G·σ^j:
    /// returned as a partition of base-element indices g (for g·σ^j).
    pub fn coset_classes(&self, j: usize) -> ClassPartition {
        let full = conjugacy_classes(self);
        let n = self.base.order();
        let blocks: Vec<Vec<usize>> = full
            .blocks
            .iter()
            .filter(|b| b[0] / n == j)
            .map(|b| b.iter().map(|&x| x % n).collect())
            .collect();
        let mut block_of = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            for &g in b {
                block_of[g] = i;
            }
        }
        ClassPartition { blocks, block_of }
    }
}

impl Group for Semidirect<'_> {
    fn order(&self) -> usize {
        self.base.order() * self.m
    }

    fn id(&self) -> usize {
        self.join(self.base.id(), 0)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (g, i) = self.split(a);
        let (h, j) = self.split(b);
        let gh = self.base.mul(g, self.phi_pows[i][h]);
        self.join(gh, (i + j) % self.m)
    }

    fn inv(&self, a: usize) -> usize {
        let (g, i) = self.split(a);
        let j = (self.m - i) % self.m;
        let gi = self.base.inv(g);
        self.join(self.phi_pows[j][gi], j)
    }

    fn generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = self
            .base
            .generators()
            .into_iter()
            .map(|g| self.join(g, 0))
            .collect();
        if self.m > 1 {
            gens.push(self.join(self.base.id(), 1));
        }
        if gens.is_empty() {
            gens.push(self.id());
        }
        gens
    }
}

/// F^j-twisted classes of the base, computed through the coset bijection
/// x ↔ x·σ^j inside the semidirect product (includes the extra fusion by
/// powers of σ).
pub fn coset_twisted_classes(base: &dyn Group, phi: Vec<usize>, m: usize, j: usize) -> ClassPartition {
    let sd = Semidirect::new(base, phi, m).expect("valid semidirect data");
    sd.coset_classes(j)
}

/// Direct check that the coset-class partition refines to F^j-twisted
/// conjugacy when only base conjugation is used.
pub fn twisted_classes_via_coset(base: &dyn Group, phi: &[usize], j: usize) -> ClassPartition {
    let pj = perm_pow(phi, j);
    crate::group::twisted_classes_unchecked(base, &pj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::matrix::EnumeratedGroup;

    #[test]
    fn gl1_f4_with_frobenius_is_s3() {
        // GL₁(F₄) is cyclic of order 3; Frobenius inverts it; the extension
        // is the symmetric group on 3 letters.
        let g = EnumeratedGroup::enumerate(1, 2, 2, false, 1000).unwrap();
        assert_eq!(g.order(), 3);
        let phi = g.frob_perm(1);
        let sd = Semidirect::new(&g, phi, 2).unwrap();
        assert_eq!(sd.order(), 6);
        // S₃ signature: 3 conjugacy classes of sizes 1, 2, 3 and exponent 6
        let c = conjugacy_classes(&sd);
        let mut sizes: Vec<usize> = c.blocks.iter().map(|b| b.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(sd.exponent(), 6);
    }

    #[test]
    fn trivial_base_gives_cyclic() {
        let g = EnumeratedGroup::enumerate(1, 2, 1, false, 10).unwrap();
        assert_eq!(g.order(), 1);
        let sd = Semidirect::new(&g, vec![0], 5).unwrap();
        assert_eq!(sd.order(), 5);
        assert_eq!(sd.element_order(sd.join(0, 1)), 5);
    }

    #[test]
    fn trivial_action_gives_direct_product() {
        let g = EnumeratedGroup::enumerate(1, 5, 1, false, 10).unwrap();
        let id: Vec<usize> = (0..g.order()).collect();
        let sd = Semidirect::new(&g, id, 3).unwrap();
        assert_eq!(sd.order(), 12);
        // abelian: all classes singletons
        assert!(conjugacy_classes(&sd).blocks.iter().all(|b| b.len() == 1));
    }

    #[test]
    fn rejects_bad_order() {
        let g = EnumeratedGroup::enumerate(1, 2, 2, false, 10).unwrap();
        let phi = g.frob_perm(1); // order 2
        assert!(Semidirect::new(&g, phi, 3).is_err());
    }

    #[test]
    fn coset_classes_partition_coset() {
        let g = EnumeratedGroup::enumerate(1, 2, 2, false, 10).unwrap();
        let phi = g.frob_perm(1);
        let sd = Semidirect::new(&g, phi, 2).unwrap();
        let cc = sd.coset_classes(1);
        let total: usize = cc.blocks.iter().map(|b| b.len()).sum();
        assert_eq!(total, 3);
        // the reflection coset of S₃ is a single class
        assert_eq!(cc.len(), 1);
    }
}
