//! Exact character tables of enumerated groups by Dixon's method: compute
//! the common eigenvectors of the class-sum matrices modulo a suitable prime
//! ℓ, recover degrees and modular values, then lift values to exact
//! cyclotomics through the ζ_e ↦ (primitive root)^{(ℓ−1)/e} correspondence.

use crate::cyclo::Cyclotomic;
use crate::fq::{is_prime, mod_pow};
use crate::group::{conjugacy_classes, ClassPartition, Group};
use num_rational::BigRational;
use num_traits::One;

fn mulm(l: u64, a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % l as u128) as u64
}

fn invm(l: u64, a: u64) -> u64 {
    mod_pow(a, l - 2, l)
}

fn subm(l: u64, a: u64, b: u64) -> u64 {
    (a + l - b % l) % l
}

/// Exact character table with deterministic class and row order.
pub struct CharacterTable {
    pub group_order: usize,
    /// classes ordered: identity first, then by size, then by least element
    pub class_reps: Vec<usize>,
    pub class_sizes: Vec<usize>,
    /// element index → class index
    pub class_of: Vec<usize>,
    /// class index → class of the inverses
    pub inverse_class: Vec<usize>,
    /// rows ordered by degree, then lexicographically by values
    pub chars: Vec<Vec<Cyclotomic>>,
    pub degrees: Vec<u64>,
}

/// Dense linear algebra over F_ℓ.
struct ModMat {
    l: u64,
}

impl ModMat {
    /// Solve B·c = target for c, where B is r×d column-major with columns
    /// `basis`; the system must be consistent.
    fn solve_in_basis(&self, basis: &[Vec<u64>], target: &[u64]) -> Vec<u64> {
        let l = self.l;
        let r = target.len();
        let d = basis.len();
        let mut aug: Vec<Vec<u64>> = (0..r)
            .map(|row| {
                let mut v: Vec<u64> = basis.iter().map(|col| col[row]).collect();
                v.push(target[row]);
                v
            })
            .collect();
        let mut piv_rows = Vec::new();
        let mut row = 0;
        for col in 0..d {
            let Some(pr) = (row..r).find(|&rr| aug[rr][col] != 0) else {
                piv_rows.push(None);
                continue;
            };
            aug.swap(row, pr);
            let inv = invm(l, aug[row][col]);
            for x in aug[row].iter_mut() {
                *x = mulm(l, *x, inv);
            }
            for rr in 0..r {
                if rr != row && aug[rr][col] != 0 {
                    let f = aug[rr][col];
                    for cc in 0..=d {
                        let t = mulm(l, f, aug[row][cc]);
                        aug[rr][cc] = subm(l, aug[rr][cc], t);
                    }
                }
            }
            piv_rows.push(Some(row));
            row += 1;
        }
        let mut c = vec![0u64; d];
        for (col, pr) in piv_rows.iter().enumerate() {
            if let Some(rr) = pr {
                c[col] = aug[*rr][d];
            }
        }
        c
    }

    fn det(&self, m: &mut Vec<Vec<u64>>) -> u64 {
        let l = self.l;
        let d = m.len();
        let mut det: u64 = 1;
        for col in 0..d {
            let Some(pr) = (col..d).find(|&rr| m[rr][col] != 0) else {
                return 0;
            };
            if pr != col {
                m.swap(pr, col);
                det = subm(l, 0, det);
            }
            det = mulm(l, det, m[col][col]);
            let inv = invm(l, m[col][col]);
            for rr in col + 1..d {
                if m[rr][col] != 0 {
                    let f = mulm(l, m[rr][col], inv);
                    for cc in col..d {
                        let t = mulm(l, f, m[col][cc]);
                        m[rr][cc] = subm(l, m[rr][cc], t);
                    }
                }
            }
        }
        det
    }

    /// Characteristic polynomial det(λI − R), monic, low-degree-first, via
    /// interpolation at λ = 0..d.
    fn charpoly(&self, r_mat: &[Vec<u64>]) -> Vec<u64> {
        let l = self.l;
        let d = r_mat.len();
        let pts: Vec<u64> = (0..=d as u64).collect();
        let vals: Vec<u64> = pts
            .iter()
            .map(|&lam| {
                let mut m: Vec<Vec<u64>> = (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|j| {
                                let diag = if i == j { lam % l } else { 0 };
                                subm(l, diag, r_mat[i][j])
                            })
                            .collect()
                    })
                    .collect();
                self.det(&mut m)
            })
            .collect();
        // Lagrange interpolation
        let mut poly = vec![0u64; d + 1];
        for (i, (&xi, &yi)) in pts.iter().zip(vals.iter()).enumerate() {
            // basis polynomial Π_{j≠i} (λ − x_j) / (x_i − x_j)
            let mut num = vec![0u64; d + 1];
            num[0] = 1;
            let mut deg = 0;
            let mut denom: u64 = 1;
            for (j, &xj) in pts.iter().enumerate() {
                if j == i {
                    continue;
                }
                // multiply num by (λ − x_j)
                for k in (0..=deg).rev() {
                    let c = num[k];
                    num[k + 1] = (num[k + 1] + c) % l;
                    num[k] = mulm(l, c, subm(l, 0, xj % l));
                }
                deg += 1;
                denom = mulm(l, denom, subm(l, xi % l, xj % l));
            }
            let f = mulm(l, yi, invm(l, denom));
            for k in 0..=d {
                poly[k] = (poly[k] + mulm(l, num[k], f)) % l;
            }
        }
        poly
    }

    /// Kernel basis of (R − λI), deterministic order.
    fn eigen_kernel(&self, r_mat: &[Vec<u64>], lam: u64) -> Vec<Vec<u64>> {
        let l = self.l;
        let d = r_mat.len();
        let mut m: Vec<Vec<u64>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let diag = if i == j { lam } else { 0 };
                        subm(l, r_mat[i][j], diag)
                    })
                    .collect()
            })
            .collect();
        // row echelon
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..d {
            let Some(pr) = (row..d).find(|&rr| m[rr][col] != 0) else {
                continue;
            };
            m.swap(row, pr);
            let inv = invm(l, m[row][col]);
            for x in m[row].iter_mut() {
                *x = mulm(l, *x, inv);
            }
            for rr in 0..d {
                if rr != row && m[rr][col] != 0 {
                    let f = m[rr][col];
                    for cc in 0..d {
                        let t = mulm(l, f, m[row][cc]);
                        m[rr][cc] = subm(l, m[rr][cc], t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let mut kernel = Vec::new();
        for free in 0..d {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; d];
            v[free] = 1;
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = subm(l, 0, m[prow][free]);
            }
            kernel.push(v);
        }
        kernel
    }
}

/// Select the Dixon prime: ℓ ≡ 1 mod exponent, ℓ > 2√|G|, ℓ ∤ |G|.
fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let bound = (2.0 * (order as f64).sqrt()).ceil() as u64;
    let mut l = exponent + 1;
    loop {
        if l > bound && order % l != 0 && is_prime(l) {
            return l;
        }
        l += exponent;
    }
}

fn smallest_primitive_root(l: u64) -> u64 {
    let phi = l - 1;
    let factors = crate::fq::factorize_distinct(phi);
    (2..l)
        .find(|&w| factors.iter().all(|&r| mod_pow(w, phi / r, l) != 1))
        .expect("primitive root exists")
}

/// Reorder conjugacy classes canonically: identity first, then size, then
/// least element.
fn ordered_classes(g: &dyn Group, part: &ClassPartition) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let mut order: Vec<usize> = (0..part.len()).collect();
    let id_block = part.block_of[g.id()];
    order.sort_by_key(|&b| {
        (
            if b == id_block { 0 } else { 1 },
            part.blocks[b].len(),
            part.blocks[b][0],
        )
    });
    let reps: Vec<usize> = order.iter().map(|&b| part.blocks[b][0]).collect();
    let sizes: Vec<usize> = order.iter().map(|&b| part.blocks[b].len()).collect();
    let mut class_of = vec![0usize; g.order()];
    for (new_idx, &b) in order.iter().enumerate() {
        for &x in &part.blocks[b] {
            class_of[x] = new_idx;
        }
    }
    (reps, sizes, class_of)
}

pub fn character_table(g: &dyn Group) -> Result<CharacterTable, String> {
    let n = g.order();
    let part = conjugacy_classes(g);
    let (reps, sizes, class_of) = ordered_classes(g, &part);
    let r = reps.len();
    let inverse_class: Vec<usize> = reps.iter().map(|&x| class_of[g.inv(x)]).collect();
    if r == 1 {
        return Ok(CharacterTable {
            group_order: n,
            class_reps: reps,
            class_sizes: sizes,
            class_of,
            inverse_class,
            chars: vec![vec![Cyclotomic::one()]],
            degrees: vec![1],
        });
    }
    let exponent = g.exponent();
    let l = dixon_prime(exponent, n as u64);
    let mm = ModMat { l };

    // class-sum structure constants: (A_i)_{jk} = #{(x,y) ∈ C_i×C_j : xy = rep_k}
    let blocks: Vec<Vec<usize>> = (0..r)
        .map(|b| {
            let mut v: Vec<usize> = (0..n).filter(|&x| class_of[x] == b).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let class_matrix = |i: usize| -> Vec<Vec<u64>> {
        let mut a = vec![vec![0u64; r]; r];
        for (k, &zk) in reps.iter().enumerate() {
            for &x in &blocks[i] {
                let y = g.mul(g.inv(x), zk);
                let j = class_of[y];
                a[j][k] += 1;
            }
        }
        a
    };

    // split the r-dimensional space into common eigenlines
    let mut subspaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for i in 1..r {
        if subspaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let a = class_matrix(i);
        let mut next = Vec::new();
        for basis in subspaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let d = basis.len();
            // restriction R: A·b_j = Σ R_{kj} b_k
            let mut r_mat = vec![vec![0u64; d]; d];
            for (jcol, b) in basis.iter().enumerate() {
                let ab: Vec<u64> = (0..r)
                    .map(|row| {
                        let mut acc: u64 = 0;
                        for (col, &bc) in b.iter().enumerate() {
                            acc = (acc + mulm(l, a[row][col] % l, bc)) % l;
                        }
                        acc
                    })
                    .collect();
                let c = mm.solve_in_basis(&basis, &ab);
                for k in 0..d {
                    r_mat[k][jcol] = c[k];
                }
            }
            let poly = mm.charpoly(&r_mat);
            // roots by full scan (the polynomial splits over F_ℓ)
            let mut split = Vec::new();
            let mut found_dim = 0;
            for lam in 0..l {
                // Horner
                let mut v: u64 = 0;
                for &c in poly.iter().rev() {
                    v = (mulm(l, v, lam) + c) % l;
                }
                if v == 0 {
                    let ker = mm.eigen_kernel(&r_mat, lam);
                    found_dim += ker.len();
                    let lifted: Vec<Vec<u64>> = ker
                        .iter()
                        .map(|kv| {
                            let mut w = vec![0u64; r];
                            for (ci, &coef) in kv.iter().enumerate() {
                                for row in 0..r {
                                    w[row] = (w[row] + mulm(l, coef, basis[ci][row])) % l;
                                }
                            }
                            w
                        })
                        .collect();
                    split.push(lifted);
                    if found_dim == d {
                        break;
                    }
                }
            }
            if found_dim != d {
                return Err("class matrix failed to split over the working prime".into());
            }
            next.extend(split);
        }
        subspaces = next;
    }
    if subspaces.iter().any(|s| s.len() != 1) {
        return Err("class matrices did not separate all characters".into());
    }

    // recover degrees and modular values
    let w = smallest_primitive_root(l);
    let mut rows: Vec<(u64, Vec<Cyclotomic>)> = Vec::new();
    let sqrt_n = (n as f64).sqrt() as u64 + 1;
    for sub in &subspaces {
        let v = &sub[0];
        assert!(v[0] != 0, "eigenvector vanishes on the identity class");
        let norm = invm(l, v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| mulm(l, x, norm)).collect();
        // χ(1)² = |G| / Σ_j ω_j ω_{j̄} / |C_j|
        let mut s: u64 = 0;
        for j in 0..r {
            let term = mulm(l, omega[j], omega[inverse_class[j]]);
            s = (s + mulm(l, term, invm(l, sizes[j] as u64 % l))) % l;
        }
        let dsq = mulm(l, n as u64 % l, invm(l, s));
        let deg = (1..=sqrt_n)
            .find(|&dd| n as u64 % dd == 0 && mulm(l, dd % l, dd % l) == dsq)
            .ok_or("degree recovery failed")?;
        // modular values χ(g_j) = deg·ω_j / |C_j|
        let chi_mod: Vec<u64> = (0..r)
            .map(|j| mulm(l, mulm(l, deg % l, omega[j]), invm(l, sizes[j] as u64 % l)))
            .collect();
        // lift each value through the cyclotomic correspondence
        let mut values = Vec::with_capacity(r);
        for j in 0..r {
            let nj = g.element_order(reps[j]);
            if nj == 1 {
                values.push(Cyclotomic::from_int(deg as i64));
                continue;
            }
            let z = mod_pow(w, (l - 1) / nj, l);
            let zinv = invm(l, z);
            let njinv = invm(l, nj % l);
            // χ(g_j^k) for k = 0..n_j
            let mut powers = Vec::with_capacity(nj as usize);
            let mut x = g.id();
            for _ in 0..nj {
                powers.push(chi_mod[class_of[x]]);
                x = g.mul(x, reps[j]);
            }
            let mut terms = Vec::new();
            for t in 0..nj {
                let mut m_t: u64 = 0;
                let mut ztk: u64 = 1; // z^{−tk}
                let step = mod_pow(zinv, t, l);
                for &cv in &powers {
                    m_t = (m_t + mulm(l, cv, ztk)) % l;
                    ztk = mulm(l, ztk, step);
                }
                m_t = mulm(l, m_t, njinv);
                // multiplicities lie in [0, deg], so the residue is exact
                assert!(m_t <= deg, "cyclotomic lift out of range");
                if m_t > 0 {
                    terms.push(
                        Cyclotomic::root_of_unity(nj, t as i64)
                            .scale(&BigRational::from_integer(m_t.into())),
                    );
                }
            }
            values.push(Cyclotomic::sum(terms));
        }
        rows.push((deg, values));
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let degrees: Vec<u64> = rows.iter().map(|r| r.0).collect();
    let chars: Vec<Vec<Cyclotomic>> = rows.into_iter().map(|r| r.1).collect();

    let table = CharacterTable {
        group_order: n,
        class_reps: reps,
        class_sizes: sizes,
        class_of,
        inverse_class,
        chars,
        degrees,
    };
    table.verify()?;
    Ok(table)
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }

    /// Ordinary inner product ⟨f, h⟩ = |G|⁻¹ Σ f(x)·conj(h(x)) for class
    /// functions given as per-class value vectors.
    pub fn inner(&self, f: &[Cyclotomic], h: &[Cyclotomic]) -> Cyclotomic {
        let terms = (0..self.num_classes()).map(|j| {
            f[j].mul(&h[j].conj())
                .scale(&BigRational::from_integer((self.class_sizes[j] as u64).into()))
        });
        Cyclotomic::sum(terms)
            .scale(&BigRational::new(BigInt::one(), (self.group_order as u64).into()))
    }

    fn verify(&self) -> Result<(), String> {
        let r = self.num_classes();
        let n = self.group_order as u64;
        let d2: u64 = self.degrees.iter().map(|d| d * d).sum();
        if d2 != n {
            return Err(format!("degree check failed: Σd² = {} ≠ {}", d2, n));
        }
        for i in 0..r {
            for j in i..r {
                let ip = self.inner(&self.chars[i], &self.chars[j]);
                let expected = if i == j {
                    Cyclotomic::one()
                } else {
                    Cyclotomic::zero()
                };
                if ip != expected {
                    return Err(format!("row orthogonality failed at ({}, {})", i, j));
                }
            }
        }
        // column orthogonality
        for a in 0..r {
            for b in a..r {
                let s = Cyclotomic::sum(
                    self.chars
                        .iter()
                        .map(|row| row[a].mul(&row[b].conj())),
                );
                let expected = if a == b {
                    Cyclotomic::from_rational(BigRational::new(
                        n.into(),
                        (self.class_sizes[a] as u64).into(),
                    ))
                } else {
                    Cyclotomic::zero()
                };
                if s != expected {
                    return Err(format!("column orthogonality failed at ({}, {})", a, b));
                }
            }
        }
        Ok(())
    }

    /// Exact decomposition coefficients ⟨f, χ_i⟩, with reconstruction check.
    pub fn decompose(&self, f: &[Cyclotomic]) -> Result<Vec<Cyclotomic>, String> {
        let coeffs: Vec<Cyclotomic> = self.chars.iter().map(|chi| self.inner(f, chi)).collect();
        for j in 0..self.num_classes() {
            let recon = Cyclotomic::sum(
                coeffs
                    .iter()
                    .zip(self.chars.iter())
                    .map(|(c, chi)| c.mul(&chi[j])),
            );
            if recon != f[j] {
                return Err("decomposition does not reconstruct the input".into());
            }
        }
        Ok(coeffs)
    }

    /// Value of row `chi` at a group element.
    pub fn value_at(&self, chi: usize, elem: usize) -> &Cyclotomic {
        &self.chars[chi][self.class_of[elem]]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.group_order,
            "classes": (0..self.num_classes()).map(|j| serde_json::json!({
                "representative": self.class_reps[j],
                "size": self.class_sizes[j],
            })).collect::<Vec<_>>(),
            "characters": (0..self.chars.len()).map(|i| serde_json::json!({
                "degree": self.degrees[i],
                "values": self.chars[i].iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Aligned, human-readable table text.
    pub fn text_table(&self) -> String {
        let r = self.num_classes();
        let mut cols: Vec<Vec<String>> = Vec::new();
        let mut head = vec!["".to_string()];
        head.extend((0..r).map(|j| format!("C{}(|{}|)", j, self.class_sizes[j])));
        cols.push(head);
        for (i, row) in self.chars.iter().enumerate() {
            let mut c = vec![format!("X{}", i)];
            c.extend(row.iter().map(|v| v.to_string()));
            cols.push(c);
        }
        let widths: Vec<usize> = (0..=r)
            .map(|row| cols.iter().map(|c| c[row].len()).max().unwrap())
            .collect();
        let mut out = String::new();
        for row in 0..=r {
            for (ci, c) in cols.iter().enumerate() {
                if ci > 0 {
                    out.push_str("  ");
                }
                out.push_str(&format!("{:>width$}", c[row], width = widths[row]));
            }
            out.push('\n');
        }
        out
    }
}

use num_bigint::BigInt;

/// The permutation character of G acting on cosets of a subgroup given by
/// its element-index set: the induced character Ind_H^G 1, evaluated per
/// class of G.
pub fn induced_trivial(
    g: &dyn Group,
    table: &CharacterTable,
    subgroup: &[usize],
) -> Vec<Cyclotomic> {
    let h_order = subgroup.len() as u64;
    let in_h: std::collections::HashSet<usize> = subgroup.iter().copied().collect();
    // Ind 1 (x) = |H|⁻¹ · #{y ∈ G : y⁻¹xy ∈ H}
    (0..table.num_classes())
        .map(|j| {
            let x = table.class_reps[j];
            let count = (0..g.order())
                .filter(|&y| in_h.contains(&g.mul(g.mul(g.inv(y), x), y)))
                .count() as u64;
            Cyclotomic::from_rational(BigRational::new(count.into(), h_order.into()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::matrix::EnumeratedGroup;

    #[test]
    fn trivial_group() {
        let g = EnumeratedGroup::enumerate(1, 2, 1, false, 10).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees, vec![1]);
    }

    #[test]
    fn s3_table() {
        let g = EnumeratedGroup::enumerate(2, 2, 1, true, 1000).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 2]);
        // values of the degree-2 character: 2, −1 (3-cycles), 0 (involutions)
        let deg2 = &t.chars[2];
        let mut vals: Vec<Cyclotomic> = deg2.clone();
        vals.sort();
        assert!(vals.contains(&Cyclotomic::from_int(2)));
        assert!(vals.contains(&Cyclotomic::from_int(-1)));
        assert!(vals.contains(&Cyclotomic::zero()));
    }

    #[test]
    fn a5_table_and_anchor_decomposition() {
        let g = EnumeratedGroup::enumerate(2, 2, 2, true, 200_000).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees, vec![1, 3, 3, 4, 5]);
        // golden-ratio values on the order-5 classes have conductor 5
        assert!(t.chars[1].iter().any(|v| v.conductor() == 5));
        // Ind 1 from SL₂(F₂): degree 10, multiplicities (1,0,0,1,1)
        let frob = g.frob_perm(1);
        let sub: Vec<usize> = (0..g.order()).filter(|&x| frob[x] == x).collect();
        assert_eq!(sub.len(), 6);
        let ind = induced_trivial(&g, &t, &sub);
        assert_eq!(ind[0], Cyclotomic::from_int(10));
        let m = t.decompose(&ind).unwrap();
        let expected: Vec<Cyclotomic> = [1, 0, 0, 1, 1]
            .iter()
            .map(|&k| Cyclotomic::from_int(k))
            .collect();
        assert_eq!(m, expected);
    }

    #[test]
    fn decompose_regular_character_gives_degrees() {
        let g = EnumeratedGroup::enumerate(2, 2, 1, true, 1000).unwrap();
        let t = character_table(&g).unwrap();
        let reg: Vec<Cyclotomic> = (0..t.num_classes())
            .map(|j| {
                if j == t.class_of[g.id()] {
                    Cyclotomic::from_int(g.order() as i64)
                } else {
                    Cyclotomic::zero()
                }
            })
            .collect();
        let m = t.decompose(&reg).unwrap();
        let expect: Vec<Cyclotomic> = t
            .degrees
            .iter()
            .map(|&d| Cyclotomic::from_int(d as i64))
            .collect();
        assert_eq!(m, expect);
    }
}
