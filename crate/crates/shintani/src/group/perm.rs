//! Small permutation groups (symmetric groups and their direct products),
//! used as Weyl groups of products of symmetric groups.

use std::collections::HashMap;

use crate::group::Group;

/// A permutation group on {0..degree−1}, fully enumerated with lexicographic
/// element indexing.
pub struct PermGroup {
    pub degree: usize,
    elems: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    gens: Vec<usize>,
    id_idx: usize,
}

fn perm_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    // (a·b)(x) = a(b(x))
    b.iter().map(|&x| a[x as usize]).collect()
}

fn perm_inv(a: &[u8]) -> Vec<u8> {
    let mut r = vec![0u8; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x as usize] = i as u8;
    }
    r
}

impl PermGroup {
    /// Closure of the given generator permutations, lexicographically indexed.
    pub fn generated(degree: usize, gen_perms: &[Vec<u8>]) -> PermGroup {
        let id: Vec<u8> = (0..degree as u8).collect();
        let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut frontier = vec![id.clone()];
        while let Some(x) = frontier.pop() {
            for g in gen_perms {
                let y = perm_mul(&x, g);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), ());
                    frontier.push(y);
                }
            }
        }
        let mut elems: Vec<Vec<u8>> = seen.into_keys().collect();
        elems.sort();
        let index: HashMap<Vec<u8>, usize> =
            elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let id_idx = index[&id];
        let gens = gen_perms.iter().map(|g| index[g]).collect();
        PermGroup { degree, elems, index, gens, id_idx }
    }

    /// Full symmetric group on k points.
    pub fn symmetric(k: usize) -> PermGroup {
        let mut gens = Vec::new();
        for i in 0..k.saturating_sub(1) {
            let mut t: Vec<u8> = (0..k as u8).collect();
            t.swap(i, i + 1);
            gens.push(t);
        }
        let g = PermGroup::generated(k, &gens);
        let fact: usize = (1..=k).product();
        assert_eq!(g.order(), fact.max(1));
        g
    }

    /// Direct product of symmetric groups S_{m_1} × ⋯ × S_{m_r} acting on
    /// consecutive blocks of points.
    pub fn product_of_symmetric(shape: &[usize]) -> PermGroup {
        let degree: usize = shape.iter().sum();
        let mut gens = Vec::new();
        let mut off = 0;
        for &m in shape {
            for i in 0..m.saturating_sub(1) {
                let mut t: Vec<u8> = (0..degree as u8).collect();
                t.swap(off + i, off + i + 1);
                gens.push(t);
            }
            off += m;
        }
        PermGroup::generated(degree, &gens)
    }

    pub fn perm(&self, i: usize) -> &[u8] {
        &self.elems[i]
    }

    pub fn index_of(&self, p: &[u8]) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Lift a permutation of the underlying points to the element-index
    /// permutation g ↦ π g π⁻¹ it induces; None if not closed.
    pub fn point_conjugation(&self, pi: &[u8]) -> Option<Vec<usize>> {
        let pinv = perm_inv(pi);
        (0..self.order())
            .map(|i| {
                let m = perm_mul(&perm_mul(pi, &self.elems[i]), &pinv);
                self.index_of(&m)
            })
            .collect()
    }

    /// Element-index permutation of conjugation by a group element.
    pub fn inner_automorphism(&self, g: usize) -> Vec<usize> {
        let gi = self.inv(g);
        (0..self.order()).map(|x| self.mul(self.mul(g, x), gi)).collect()
    }

    /// All involutive automorphisms arising from point permutations that
    /// normalize the group (covers everything needed for products of
    /// symmetric groups of total degree ≤ 4), deduplicated.
    pub fn involutive_twists(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut push = |p: Vec<usize>| {
            let mut ok = true;
            for (x, &px) in p.iter().enumerate() {
                if p[px] != x {
                    ok = false;
                    break;
                }
            }
            if ok && !out.contains(&p) {
                out.push(p);
            }
        };
        // identity
        push((0..self.order()).collect());
        // inner automorphisms by involutions
        for g in 0..self.order() {
            if g != self.id() && self.mul(g, g) == self.id() {
                push(self.inner_automorphism(g));
            }
        }
        // outer candidates from normalizing point permutations
        let pts: Vec<u8> = (0..self.degree as u8).collect();
        let mut stack = vec![(Vec::<u8>::new(), pts)];
        while let Some((pre, rest)) = stack.pop() {
            if rest.is_empty() {
                if let Some(p) = self.point_conjugation(&pre) {
                    push(p);
                }
                continue;
            }
            for (i, &r) in rest.iter().enumerate() {
                let mut pre2 = pre.clone();
                pre2.push(r);
                let mut rest2 = rest.clone();
                rest2.remove(i);
                stack.push((pre2, rest2));
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl Group for PermGroup {
    fn order(&self) -> usize {
        self.elems.len()
    }

    fn id(&self) -> usize {
        self.id_idx
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&perm_mul(&self.elems[a], &self.elems[b])]
    }

    fn inv(&self, a: usize) -> usize {
        self.index[&perm_inv(&self.elems[a])]
    }

    fn generators(&self) -> Vec<usize> {
        if self.gens.is_empty() {
            vec![self.id_idx]
        } else {
            self.gens.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::conjugacy_classes;

    #[test]
    fn symmetric_group_sizes() {
        assert_eq!(PermGroup::symmetric(2).order(), 2);
        assert_eq!(PermGroup::symmetric(3).order(), 6);
        assert_eq!(PermGroup::symmetric(4).order(), 24);
        assert_eq!(PermGroup::product_of_symmetric(&[2, 2]).order(), 4);
    }

    #[test]
    fn s3_classes() {
        let g = PermGroup::symmetric(3);
        let c = conjugacy_classes(&g);
        let mut sizes: Vec<usize> = c.blocks.iter().map(|b| b.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn involutive_twists_are_involutive_automorphisms() {
        for g in [
            PermGroup::symmetric(2),
            PermGroup::symmetric(3),
            PermGroup::product_of_symmetric(&[2, 2]),
        ] {
            let twists = g.involutive_twists();
            assert!(!twists.is_empty());
            for t in &twists {
                crate::group::check_automorphism(&g, t).unwrap();
                for x in 0..g.order() {
                    assert_eq!(t[t[x]], x);
                }
            }
        }
        // S₂×S₂ has the factor-swap outer involution: more than just
        // identity + inners (inners are trivial in an abelian group)
        let v = PermGroup::product_of_symmetric(&[2, 2]);
        assert!(v.involutive_twists().len() > 1);
    }
}
