//! Finite direct powers G^r with the factor-rotating twist, the substrate of
//! the cyclic-product (restriction of scalars) construction.

use crate::group::Group;

/// The r-fold direct power of a base group, elements indexed mixed-radix
/// (first factor least significant).
pub struct ProductGroup<'g> {
    pub base: &'g dyn Group,
    pub r: usize,
}

impl<'g> ProductGroup<'g> {
    pub fn new(base: &'g dyn Group, r: usize, cap: u64) -> Result<Self, String> {
        let mut total: u64 = 1;
        for _ in 0..r {
            total = total
                .checked_mul(base.order() as u64)
                .ok_or("product order overflow")?;
            if total > cap {
                return Err(format!("product cap exceeded: |G|^{} > {}", r, cap));
            }
        }
        Ok(ProductGroup { base, r })
    }

    pub fn split(&self, mut idx: usize) -> Vec<usize> {
        let n = self.base.order();
        let mut out = Vec::with_capacity(self.r);
        for _ in 0..self.r {
            out.push(idx % n);
            idx /= n;
        }
        out
    }

    pub fn join(&self, parts: &[usize]) -> usize {
        let n = self.base.order();
        let mut idx = 0;
        for &p in parts.iter().rev() {
            idx = idx * n + p;
        }
        idx
    }

    /// x ↦ (x, 1, …, 1).
    pub fn first_slot(&self, x: usize) -> usize {
        let mut parts = vec![self.base.id(); self.r];
        parts[0] = x;
        self.join(&parts)
    }

    /// x ↦ (x, x, …, x).
    pub fn diagonal(&self, x: usize) -> usize {
        self.join(&vec![x; self.r])
    }

    /// The twist F′ = F∘ω, where ω rotates factors: with g = (g₁, …, g_r),
    /// F′(g) = (F(g_r), F(g₁), …, F(g_{r−1})). Given F as an index
    /// permutation of the base, returns F′ as an index permutation of G^r.
    pub fn rotation_twist(&self, frob: &[usize]) -> Vec<usize> {
        (0..self.order())
            .map(|idx| {
                let parts = self.split(idx);
                let mut out = Vec::with_capacity(self.r);
                out.push(frob[parts[self.r - 1]]);
                for i in 0..self.r - 1 {
                    out.push(frob[parts[i]]);
                }
                self.join(&out)
            })
            .collect()
    }

    /// Componentwise action of a base index permutation.
    pub fn componentwise(&self, perm: &[usize]) -> Vec<usize> {
        (0..self.order())
            .map(|idx| {
                let parts: Vec<usize> = self.split(idx).iter().map(|&x| perm[x]).collect();
                self.join(&parts)
            })
            .collect()
    }
}

impl Group for ProductGroup<'_> {
    fn order(&self) -> usize {
        self.base.order().pow(self.r as u32)
    }

    fn id(&self) -> usize {
        self.join(&vec![self.base.id(); self.r])
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let pa = self.split(a);
        let pb = self.split(b);
        let parts: Vec<usize> = pa
            .iter()
            .zip(pb.iter())
            .map(|(&x, &y)| self.base.mul(x, y))
            .collect();
        self.join(&parts)
    }

    fn inv(&self, a: usize) -> usize {
        let parts: Vec<usize> = self.split(a).iter().map(|&x| self.base.inv(x)).collect();
        self.join(&parts)
    }

    fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        for slot in 0..self.r {
            for g in self.base.generators() {
                let mut parts = vec![self.base.id(); self.r];
                parts[slot] = g;
                gens.push(self.join(&parts));
            }
        }
        if gens.is_empty() {
            gens.push(self.id());
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::matrix::EnumeratedGroup;
    use crate::group::{check_automorphism, compose_perm};

    #[test]
    fn product_order_and_ops() {
        let g = EnumeratedGroup::enumerate(2, 2, 1, true, 1000).unwrap();
        let h = ProductGroup::new(&g, 2, 10_000).unwrap();
        assert_eq!(h.order(), 36);
        for a in 0..h.order() {
            assert_eq!(h.mul(a, h.id()), a);
            assert_eq!(h.mul(a, h.inv(a)), h.id());
        }
    }

    #[test]
    fn rotation_twist_power_is_componentwise_frobenius() {
        // (F′)^r = F^r applied componentwise, after r rotations return home
        let g = EnumeratedGroup::enumerate(1, 2, 2, false, 1000).unwrap();
        let h = ProductGroup::new(&g, 2, 10_000).unwrap();
        let f = g.frob_perm(1);
        let fp = h.rotation_twist(&f);
        check_automorphism(&h, &fp).unwrap();
        let fp2 = compose_perm(&fp, &fp);
        let f2 = g.frob_perm(2);
        assert_eq!(fp2, h.componentwise(&f2));
    }
}
