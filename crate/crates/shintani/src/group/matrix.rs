//! Matrices over finite fields and enumerated GL_n / SL_n groups.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::fq::{FieldTable, FqElem};
use crate::group::Group;

/// Dense n×n matrix over F_{p^level}, row major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    pub n: usize,
    pub e: Vec<FqElem>,
}

impl Mat {
    pub fn new(n: usize, e: Vec<FqElem>) -> Self {
        assert_eq!(e.len(), n * n);
        Mat { n, e }
    }

    pub fn identity(n: usize, p: u64, level: u32) -> Self {
        let mut e = vec![FqElem::zero(p, level); n * n];
        for i in 0..n {
            e[i * n + i] = FqElem::one(p, level);
        }
        Mat { n, e }
    }

    pub fn at(&self, i: usize, j: usize) -> &FqElem {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        self.e[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let p = self.e[0].p();
        let level = self.e[0].level();
        let mut out = vec![FqElem::zero(p, level); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = out[i * n + j].add(&a.mul(other.at(k, j)));
                }
            }
        }
        Mat { n, e: out }
    }

    pub fn det(&self) -> FqElem {
        let n = self.n;
        let p = self.e[0].p();
        let level = self.e[0].level();
        let mut m = self.e.clone();
        let mut det = FqElem::one(p, level);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m[r * n + col].is_zero()) else {
                return FqElem::zero(p, level);
            };
            if piv != col {
                for j in 0..n {
                    m.swap(piv * n + j, col * n + j);
                }
                det = det.neg();
            }
            let pv = m[col * n + col].clone();
            det = det.mul(&pv);
            let pinv = pv.inv().unwrap();
            for r in col + 1..n {
                let f = m[r * n + col].mul(&pinv);
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = f.mul(&m[col * n + j]);
                    m[r * n + j] = m[r * n + j].sub(&t);
                }
            }
        }
        det
    }

    /// Inverse via Gauss–Jordan; None if singular.
    pub fn inv(&self) -> Option<Mat> {
        let n = self.n;
        let p = self.e[0].p();
        let level = self.e[0].level();
        let mut m = self.e.clone();
        let mut r = Mat::identity(n, p, level).e;
        for col in 0..n {
            let piv = (col..n).find(|&row| !m[row * n + col].is_zero())?;
            if piv != col {
                for j in 0..n {
                    m.swap(piv * n + j, col * n + j);
                    r.swap(piv * n + j, col * n + j);
                }
            }
            let pinv = m[col * n + col].inv().unwrap();
            for j in 0..n {
                m[col * n + j] = m[col * n + j].mul(&pinv);
                r[col * n + j] = r[col * n + j].mul(&pinv);
            }
            for row in 0..n {
                if row != col && !m[row * n + col].is_zero() {
                    let f = m[row * n + col].clone();
                    for j in 0..n {
                        let t = f.mul(&m[col * n + j]);
                        m[row * n + j] = m[row * n + j].sub(&t);
                        let t = f.mul(&r[col * n + j]);
                        r[row * n + j] = r[row * n + j].sub(&t);
                    }
                }
            }
        }
        Some(Mat { n, e: r })
    }

    pub fn neg(&self) -> Mat {
        Mat { n: self.n, e: self.e.iter().map(|x| x.neg()).collect() }
    }

    /// Entrywise x ↦ x^{p^d}.
    pub fn frobenius(&self, d: u32) -> Mat {
        Mat { n: self.n, e: self.e.iter().map(|x| x.frobenius(d)).collect() }
    }

    /// Entrywise embedding into the level-`to` field (divisor levels).
    pub fn embed(&self, to: u32) -> Mat {
        Mat { n: self.n, e: self.e.iter().map(|x| x.embed(to)).collect() }
    }

    /// Entrywise descent; None if any entry lies outside the subfield.
    pub fn descend(&self, to: u32) -> Option<Mat> {
        let e: Option<Vec<FqElem>> = self.e.iter().map(|x| x.descend(to)).collect();
        Some(Mat { n: self.n, e: e? })
    }

    pub fn is_identity(&self) -> bool {
        let p = self.e[0].p();
        let level = self.e[0].level();
        *self == Mat::identity(self.n, p, level)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// |GL_n(F_q)| = Π_{i=0..n−1} (q^n − q^i).
pub fn gl_order(n: usize, q: u64) -> Option<u64> {
    let qn = checked_pow_u64(q, n as u32)?;
    let mut ord: u64 = 1;
    let mut qi: u64 = 1;
    for _ in 0..n {
        ord = ord.checked_mul(qn - qi)?;
        qi = qi.checked_mul(q)?;
    }
    Some(ord)
}

/// |SL_n(F_q)| = |GL_n(F_q)| / (q − 1).
pub fn sl_order(n: usize, q: u64) -> Option<u64> {
    Some(gl_order(n, q)? / (q - 1))
}

fn checked_pow_u64(b: u64, e: u32) -> Option<u64> {
    let mut r: u64 = 1;
    for _ in 0..e {
        r = r.checked_mul(b)?;
    }
    Some(r)
}

/// A fully enumerated GL_n or SL_n over F_{p^level}, with canonical
/// lexicographic element indexing (entries ordered by the field enumeration:
/// zero, then ascending generator powers).
pub struct EnumeratedGroup {
    pub n: usize,
    pub p: u64,
    pub level: u32,
    pub special: bool,
    pub table: Arc<FieldTable>,
    /// element matrices as field-element indices into `table.elems`
    elems: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    inv_idx: Vec<usize>,
    id_idx: usize,
    gens: Vec<usize>,
}

impl EnumeratedGroup {
    /// Enumerate SL_n (special) or GL_n over F_{p^level}; errors if the order
    /// formula exceeds `cap`.
    pub fn enumerate(
        n: usize,
        p: u64,
        level: u32,
        special: bool,
        cap: u64,
    ) -> Result<EnumeratedGroup, String> {
        let q = checked_pow_u64(p, level).ok_or("field size overflow")?;
        let expected = if special { sl_order(n, q) } else { gl_order(n, q) }
            .ok_or("group order overflow")?;
        if expected > cap {
            return Err(format!(
                "enumeration cap exceeded: |{}{}({})| = {} > {}",
                if special { "SL" } else { "GL" },
                n,
                q,
                expected,
                cap
            ));
        }
        let table = Arc::new(FieldTable::new(p, level));
        let qn = q as usize;
        let nn = n * n;
        let one = FqElem::one(p, level);
        // lexicographic odometer over all matrices, keeping those with the
        // right determinant
        let mut elems: Vec<Vec<u32>> = Vec::with_capacity(expected as usize);
        let mut cur = vec![0u32; nn];
        loop {
            let m = Mat::new(n, cur.iter().map(|&i| table.elems[i as usize].clone()).collect());
            let d = m.det();
            let keep = if special { d == one } else { !d.is_zero() };
            if keep {
                elems.push(cur.clone());
            }
            let mut i = nn;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                cur[i] += 1;
                if (cur[i] as usize) < qn {
                    break;
                }
                cur[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
        if elems.len() as u64 != expected {
            return Err(format!(
                "enumeration self-check failed: found {} elements, formula gives {}",
                elems.len(),
                expected
            ));
        }
        let index: HashMap<Vec<u32>, usize> =
            elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut g = EnumeratedGroup {
            n,
            p,
            level,
            special,
            table,
            elems,
            index,
            inv_idx: Vec::new(),
            id_idx: 0,
            gens: Vec::new(),
        };
        g.id_idx = g.index_of(&Mat::identity(n, p, level)).unwrap();
        g.inv_idx = (0..g.elems.len())
            .map(|i| {
                let m = g.mat(i).inv().expect("group element invertible");
                g.index_of(&m).expect("closure under inverse")
            })
            .collect();
        g.gens = g.generator_indices();
        Ok(g)
    }

    fn generator_indices(&self) -> Vec<usize> {
        let n = self.n;
        let mut gens: Vec<usize> = Vec::new();
        if n == 1 {
            if !self.special {
                let g = FqElem::generator(self.p, self.level);
                let m = Mat::new(1, vec![g]);
                gens.push(self.index_of(&m).unwrap());
            }
            return gens;
        }
        // transvections I + λ·E_ij generate SL_n
        let lambdas = FqElem::enumerate(self.p, self.level);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for lam in lambdas.iter().skip(1) {
                    let mut m = Mat::identity(n, self.p, self.level);
                    m.set(i, j, lam.clone());
                    gens.push(self.index_of(&m).unwrap());
                }
            }
        }
        if !self.special {
            let g = FqElem::generator(self.p, self.level);
            let mut m = Mat::identity(n, self.p, self.level);
            m.set(0, 0, g);
            gens.push(self.index_of(&m).unwrap());
        }
        gens
    }

    pub fn mat(&self, i: usize) -> Mat {
        Mat::new(
            self.n,
            self.elems[i]
                .iter()
                .map(|&k| self.table.elems[k as usize].clone())
                .collect(),
        )
    }

    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        let mut key = Vec::with_capacity(self.n * self.n);
        for x in &m.e {
            // field index: 0 for zero, 1 + dlog otherwise
            let k = match x.dlog() {
                None => 0u32,
                Some(d) => d as u32 + 1,
            };
            key.push(k);
        }
        self.index.get(&key).copied()
    }

    /// Permutation of element indices realized by entrywise x ↦ x^{p^d}.
    pub fn frob_perm(&self, d: u32) -> Vec<usize> {
        (0..self.elems.len())
            .map(|i| {
                let key: Vec<u32> = self.elems[i]
                    .iter()
                    .map(|&k| self.table.frob_idx(k, d))
                    .collect();
                self.index[&key]
            })
            .collect()
    }

    pub fn descriptor(&self) -> serde_json::Value {
        serde_json::json!({
            "type": if self.special { "SL" } else { "GL" },
            "n": self.n,
            "p": self.p,
            "level": self.level,
        })
    }
}

impl Group for EnumeratedGroup {
    fn order(&self) -> usize {
        self.elems.len()
    }

    fn id(&self) -> usize {
        self.id_idx
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let n = self.n;
        let t = &self.table;
        let ma = &self.elems[a];
        let mb = &self.elems[b];
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u32;
                for k in 0..n {
                    acc = t.add_idx(acc, t.mul_idx(ma[i * n + k], mb[k * n + j]));
                }
                out[i * n + j] = acc;
            }
        }
        self.index[&out]
    }

    fn inv(&self, a: usize) -> usize {
        self.inv_idx[a]
    }

    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_formula() {
        assert_eq!(
            EnumeratedGroup::enumerate(2, 2, 1, true, 200_000).unwrap().order(),
            6
        );
        assert_eq!(
            EnumeratedGroup::enumerate(2, 2, 2, true, 200_000).unwrap().order(),
            60
        );
        assert_eq!(
            EnumeratedGroup::enumerate(1, 3, 1, false, 200_000).unwrap().order(),
            2
        );
        assert_eq!(
            EnumeratedGroup::enumerate(2, 3, 1, false, 200_000).unwrap().order(),
            48
        );
    }

    #[test]
    fn cap_is_enforced() {
        assert!(EnumeratedGroup::enumerate(3, 5, 1, true, 200_000).is_err());
    }

    #[test]
    fn group_axioms_spot_check() {
        let g = EnumeratedGroup::enumerate(2, 3, 1, true, 200_000).unwrap();
        assert_eq!(g.order(), 24);
        let e = g.id();
        for a in 0..g.order() {
            assert_eq!(g.mul(a, e), a);
            assert_eq!(g.mul(e, a), a);
            assert_eq!(g.mul(a, g.inv(a)), e);
        }
        // associativity spot check
        for a in (0..g.order()).step_by(5) {
            for b in (0..g.order()).step_by(7) {
                for c in (0..g.order()).step_by(3) {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn frobenius_is_automorphism() {
        let g = EnumeratedGroup::enumerate(2, 2, 2, true, 200_000).unwrap();
        let f = g.frob_perm(1);
        for a in 0..g.order() {
            for b in (0..g.order()).step_by(7) {
                assert_eq!(f[g.mul(a, b)], g.mul(f[a], f[b]));
            }
        }
        // F² = id at level 2
        for a in 0..g.order() {
            assert_eq!(f[f[a]], a);
        }
        // fixed points of F form SL₂(F₂), order 6
        assert_eq!((0..g.order()).filter(|&a| f[a] == a).count(), 6);
    }

    #[test]
    fn generators_generate() {
        let g = EnumeratedGroup::enumerate(2, 3, 1, false, 200_000).unwrap();
        let mut reach = vec![false; g.order()];
        reach[g.id()] = true;
        let mut stack = vec![g.id()];
        while let Some(x) = stack.pop() {
            for &s in &g.generators() {
                let y = g.mul(x, s);
                if !reach[y] {
                    reach[y] = true;
                    stack.push(y);
                }
            }
        }
        assert!(reach.iter().all(|&r| r));
    }
}
