//! Combinatorial parameter model for the irreducible characters of
//! SL_n(F_{q^2}) and closed-form predictions of their multiplicities in the
//! symmetric space SL_n(F_{q^2})/SL_n(F_q).
//!
//! Semisimple classes of the dual group (adjoint PGL_n over the algebraic
//! closure of F_p) are encoded by eigenvalue multisets in discrete-log form:
//! the residue a mod M, with M = p^L - 1, stands for zeta^a where zeta
//! generates the multiplicative group of the degree-L extension of F_p.  The
//! squared Frobenius, the inversion twist and the component-group
//! translations all become affine maps on Z/M, so the entire parameter set
//! is enumerated exactly with integer arithmetic and never touches a field
//! table.

use crate::cyclo::Cyclotomic;
use crate::group::norm::partitions;
use crate::group::Group;
use num_integer::gcd;
use std::collections::BTreeSet;

fn mulm(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn modinv(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        let r = r0 - q * r1;
        r0 = r1;
        r1 = r;
        let s = s0 - q * s1;
        s0 = s1;
        s1 = s;
    }
    assert_eq!(r0, 1, "modinv of non-unit");
    (s0.rem_euclid(m as i128)) as u64
}

fn lcm_upto(n: u32) -> u32 {
    let mut l = 1u32;
    for j in 2..=n.max(1) {
        l = l / gcd(l, j) * j;
    }
    l
}

fn translate_sorted(s: &[u64], c: u64, m: u64) -> Vec<u64> {
    let mut out: Vec<u64> = s.iter().map(|&x| (x + c) % m).collect();
    out.sort_unstable();
    out
}

/// An F^2-stable semisimple class of the dual group, in canonical
/// discrete-log form: the eigenvalue multiset is translated so that it is
/// literally stable under multiplication by q^2, and is the lexicographic
/// minimum among all translates with that property.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SemisimpleDatum {
    pub n: u32,
    pub p: u64,
    pub d0: u32,
    pub q: u64,
    pub level: u32,
    pub modulus: u64,
    /// Sorted eigenvalue multiset.
    pub eigenvalues: Vec<u64>,
    /// Distinct eigenvalues, sorted.
    pub blocks: Vec<u64>,
    /// Multiplicity of each block.
    pub mults: Vec<u32>,
    /// Order of the component group of the centralizer: the translations
    /// lambda with lambda + S = S form a cyclic group of this order.
    pub omega: u32,
    /// Whether the class is carried to itself by eigenvalue inversion
    /// composed with Frobenius, i.e. q*S = c' - S for some scalar c'.
    pub inverse_selfdual: bool,
    /// The scalar c' above, canonical choice (prefers (q-1)c' = 0, then
    /// minimal), when the class is inverse-selfdual.
    pub cprime: Option<u64>,
    /// Whether the chosen c' satisfies (q-1)c' = 0 mod M, so that the
    /// inversion twist squares to the plain q^2 map.
    pub exact_gamma: bool,
    /// Correction (1-q)c' mod M applied to the q^2 map so that it is the
    /// square of the inversion twist; zero in the exact case.
    pub delta_shift: u64,
}

impl SemisimpleDatum {
    pub fn omega_step(&self) -> u64 {
        self.modulus / self.omega as u64
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.eigenvalues.iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join("."))
    }

    fn block_index(&self, val: u64) -> usize {
        self.blocks
            .binary_search(&val)
            .expect("value is not an eigenvalue block")
    }

    fn delta_val(&self, mu: u64) -> u64 {
        (self.delta_shift + mulm(self.q * self.q, mu, self.modulus)) % self.modulus
    }

    fn gamma_val(&self, mu: u64) -> u64 {
        let c = self.cprime.expect("class is not inverse-selfdual");
        (c + self.modulus - mulm(self.q, mu, self.modulus)) % self.modulus
    }

    /// Block permutation of an affine map that stabilizes the multiset.
    fn block_perm<FV: Fn(u64) -> u64>(&self, f: FV) -> Vec<usize> {
        self.blocks.iter().map(|&b| self.block_index(f(b))).collect()
    }
}

/// Fixed points a of multiplication by q2^j on Z/M, for all j <= n, grouped
/// into orbits (cycles) of multiplication by q2.
fn psi_cycles(n: u32, q2: u64, m: u64) -> Vec<Vec<Vec<u64>>> {
    let mut points: BTreeSet<u64> = BTreeSet::new();
    for j in 1..=n {
        // q2^j - 1 divides m by the level choice, so this cannot overflow
        let mut pw = 1u64;
        for _ in 0..j {
            pw *= q2;
        }
        let g = gcd(pw - 1, m);
        let step = m / g;
        let mut a = 0u64;
        for _ in 0..g {
            points.insert(a);
            a += step;
        }
    }
    let mut by_len: Vec<Vec<Vec<u64>>> = vec![Vec::new(); n as usize + 1];
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    for &a in &points {
        if seen.contains(&a) {
            continue;
        }
        let mut cyc = vec![a];
        let mut x = mulm(q2, a, m);
        while x != a {
            cyc.push(x);
            x = mulm(q2, x, m);
        }
        for &y in &cyc {
            seen.insert(y);
        }
        let len = cyc.len();
        assert!(len <= n as usize, "cycle longer than the rank bound");
        cyc.sort_unstable();
        by_len[len].push(cyc);
    }
    by_len
}

fn omega_of(s: &[u64], m: u64) -> u32 {
    let s0 = s[0];
    let mut lams: Vec<u64> = s.iter().map(|&x| (x + m - s0) % m).collect();
    lams.sort_unstable();
    lams.dedup();
    lams.into_iter()
        .filter(|&lam| translate_sorted(s, lam, m) == s)
        .count() as u32
}

/// All translates c such that S + c is still exactly q2-stable, i.e.
/// (q2-1)c lies in the translation stabilizer of S.
fn gauge_translates(s: &[u64], m: u64, q2: u64) -> Vec<u64> {
    let omega = omega_of(s, m) as u64;
    let lam_step = m / omega;
    let g0 = gcd(q2 - 1, m);
    let mut out = Vec::new();
    for k in 0..omega {
        let lam = k * lam_step;
        if lam % g0 != 0 {
            continue;
        }
        let c0 = mulm(lam / g0, modinv((q2 - 1) / g0, m / g0), m / g0);
        for i in 0..g0 {
            out.push(c0 + i * (m / g0));
        }
    }
    out
}

fn canonical_multiset(s: &[u64], m: u64, q2: u64) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    for c in gauge_translates(s, m, q2) {
        let t = translate_sorted(s, c, m);
        if best.as_ref().map_or(true, |b| t < *b) {
            best = Some(t);
        }
    }
    best.expect("no gauge translate (zero is always one)")
}

/// Enumerates all F^2-stable semisimple classes of the adjoint dual group
/// for SL_n over F_q, q = p^d0.  `level_cap` bounds the eigenvalue degrees
/// considered: it must be a multiple-closure of 1..n (every j <= n must
/// divide it is not required, but every j <= n must satisfy
/// gcd(j, level_cap) = j), otherwise classes are missed and an error
/// describing the smallest missed degree is returned.
pub fn enumerate_semisimple_classes(
    n: u32,
    p: u64,
    d0: u32,
    level_cap: u32,
) -> Result<Vec<SemisimpleDatum>, String> {
    assert!(n >= 1 && d0 >= 1);
    for j in 2..=n {
        if level_cap % j != 0 {
            return Err(format!(
                "level cap {} misses eigenvalues of degree {} over the quadratic extension \
                 (witness: any class with an irreducible factor of degree {}); \
                 use a cap divisible by lcm(1..{}) = {}",
                level_cap,
                j,
                j,
                n,
                lcm_upto(n)
            ));
        }
    }
    let level = 2 * d0 * level_cap;
    let mut m: u64 = 1;
    for _ in 0..level {
        m = m
            .checked_mul(p)
            .filter(|&v| v < (1u64 << 62))
            .ok_or_else(|| format!("working modulus p^{} - 1 exceeds 62 bits", level))?;
    }
    m -= 1;
    let q = p.pow(d0);
    let q2 = q * q;

    let by_len = psi_cycles(n, q2, m);
    let mut canon: BTreeSet<Vec<u64>> = BTreeSet::new();
    // multisets of cycles with total size n, produced once each by keeping
    // (length, index) choices nondecreasing
    fn rec(
        by_len: &[Vec<Vec<u64>>],
        remaining: u32,
        min_len: usize,
        min_idx: usize,
        acc: &mut Vec<u64>,
        m: u64,
        q2: u64,
        canon: &mut BTreeSet<Vec<u64>>,
    ) {
        if remaining == 0 {
            let mut s = acc.clone();
            s.sort_unstable();
            canon.insert(canonical_multiset(&s, m, q2));
            return;
        }
        for len in min_len..=remaining as usize {
            let start = if len == min_len { min_idx } else { 0 };
            for (ci, cyc) in by_len[len].iter().enumerate().skip(start) {
                let before = acc.len();
                acc.extend_from_slice(cyc);
                rec(by_len, remaining - len as u32, len, ci, acc, m, q2, canon);
                acc.truncate(before);
            }
        }
    }
    let mut acc = Vec::new();
    rec(&by_len, n, 1, 0, &mut acc, m, q2, &mut canon);

    let mut out = Vec::new();
    for s in canon {
        out.push(make_datum(n, p, d0, level, m, q, s));
    }
    Ok(out)
}

fn make_datum(n: u32, p: u64, d0: u32, level: u32, m: u64, q: u64, s: Vec<u64>) -> SemisimpleDatum {
    let q2 = q * q;
    debug_assert_eq!(
        translate_sorted(&s.iter().map(|&x| mulm(q2, x, m)).collect::<Vec<_>>(), 0, m),
        s,
        "canonical multiset is not exactly q^2-stable"
    );
    let mut blocks: Vec<u64> = s.clone();
    blocks.dedup();
    let mults: Vec<u32> = blocks
        .iter()
        .map(|b| s.iter().filter(|&&x| x == *b).count() as u32)
        .collect();
    let omega = omega_of(&s, m);
    // inverse self-duality: q*S = c' - S for some c'
    let qs = translate_sorted(&s.iter().map(|&x| mulm(q, x, m)).collect::<Vec<_>>(), 0, m);
    let mut valid: Vec<u64> = Vec::new();
    let mut cands: Vec<u64> = s
        .iter()
        .map(|&x| (mulm(q, s[0], m) + x) % m)
        .collect();
    cands.sort_unstable();
    cands.dedup();
    for c in cands {
        let refl: Vec<u64> = s.iter().map(|&x| (c + m - x) % m).collect();
        if translate_sorted(&refl, 0, m) == qs {
            valid.push(c);
        }
    }
    let inverse_selfdual = !valid.is_empty();
    let exact: Vec<u64> = valid
        .iter()
        .copied()
        .filter(|&c| mulm(q - 1, c, m) == 0)
        .collect();
    let (cprime, exact_gamma) = if !exact.is_empty() {
        (Some(exact[0]), true)
    } else if inverse_selfdual {
        (Some(valid[0]), false)
    } else {
        (None, false)
    };
    let delta_shift = match (inverse_selfdual, exact_gamma) {
        (true, false) => {
            let c = cprime.unwrap();
            (m - mulm(q - 1, c, m)) % m
        }
        _ => 0,
    };
    SemisimpleDatum {
        n,
        p,
        d0,
        q,
        level,
        modulus: m,
        eigenvalues: s,
        blocks,
        mults,
        omega,
        inverse_selfdual,
        cprime,
        exact_gamma,
        delta_shift,
    }
}

/// All assignments of an irreducible character of the relative Weyl group
/// (a partition per eigenvalue block).
pub fn irr_w0(mults: &[u32]) -> Vec<Vec<Vec<u32>>> {
    let mut out: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    for &mlt in mults {
        let parts: Vec<Vec<u32>> = partitions(mlt as usize)
            .into_iter()
            .map(|p| p.into_iter().map(|x| x as u32).collect())
            .collect();
        let mut next = Vec::new();
        for base in &out {
            for pp in &parts {
                let mut e = base.clone();
                e.push(pp.clone());
                next.push(e);
            }
        }
        out = next;
    }
    out
}

fn act_on_e(e: &[Vec<u32>], perm: &[usize]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new(); e.len()];
    for (i, part) in e.iter().enumerate() {
        out[perm[i]] = part.clone();
    }
    out
}

/// Canonical representatives of the translation orbits of block-partition
/// assignments whose orbit is stable under the q^2 map.
pub fn e_orbits(s: &SemisimpleDatum) -> Vec<Vec<Vec<u32>>> {
    let step = s.omega_step();
    let m = s.modulus;
    let delta = s.block_perm(|b| s.delta_val(b));
    let mut seen: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    let mut out = Vec::new();
    for e in irr_w0(&s.mults) {
        let mut orbit: Vec<Vec<Vec<u32>>> = Vec::new();
        for j in 0..s.omega as u64 {
            let perm = s.block_perm(|b| (b + j * step) % m);
            orbit.push(act_on_e(&e, &perm));
        }
        orbit.sort();
        orbit.dedup();
        let rep = orbit[0].clone();
        if seen.contains(&rep) {
            continue;
        }
        for x in &orbit {
            seen.insert(x.clone());
        }
        let de = act_on_e(&rep, &delta);
        if orbit.binary_search(&de).is_ok() {
            out.push(rep);
        }
    }
    out
}

/// Symbolic multiplicity value: an integer, or 1 +/- eps for a sign eps
/// that the combinatorial model does not determine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum M2 {
    Int(u8),
    Eps,
    OnePlusEps,
    OneMinusEps,
}

impl M2 {
    pub fn resolve(self, eps: i8) -> u8 {
        match self {
            M2::Int(v) => v,
            M2::Eps => {
                assert_eq!(eps, 1, "a bare sign value resolves only to 1");
                1
            }
            M2::OnePlusEps => (1 + eps as i16) as u8,
            M2::OneMinusEps => (1 - eps as i16) as u8,
        }
    }

    pub fn is_symbolic(self) -> bool {
        !matches!(self, M2::Int(_))
    }
}

impl std::fmt::Display for M2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            M2::Int(v) => write!(f, "{}", v),
            M2::Eps => write!(f, "eps"),
            M2::OnePlusEps => write!(f, "1+eps"),
            M2::OneMinusEps => write!(f, "1-eps"),
        }
    }
}

/// The full parameter package attached to one semisimple class and one
/// translation orbit of block-partition assignments.  All subsets live in
/// Z/omega coordinates: the residue j stands for the translation by
/// j * (M/omega).
#[derive(Debug, Clone)]
pub struct OrbitDatum {
    pub class: SemisimpleDatum,
    pub e: Vec<Vec<u32>>,
    pub omega: u32,
    /// Order of the stabilizer of E inside the translation group.
    pub k: u32,
    pub t: u32,
    pub d: u32,
    pub dprime: u32,
    /// The orbit of E is stable under the q^2 map (always true for data
    /// produced by `e_orbits`).
    pub f2_stable: bool,
    /// The class is inverse-selfdual and the orbit of E is stable under the
    /// inversion twist.
    pub gamma_stable: bool,
    /// Stabilizer of E (subgroup of Z/omega).
    pub stab: Vec<u32>,
    /// Fixed points of the q^2 map on the stabilizer.
    pub stab_delta: Vec<u32>,
    /// Fixed points of the inversion twist scalar action (j with (q+1)j = 0).
    pub stab_gamma: Vec<u32>,
    /// Anti-fixed points (j with (q-1)j = 0).
    pub stab_minus_gamma: Vec<u32>,
    /// Image of the stabilizer delta-fixed part under j -> (1-q)j.
    pub stab_plus: Vec<u64>,
    /// Twisted-translation classes of the stabilizer (cosets of the image
    /// of j -> (q^2-1)j), sorted by least element.
    pub stab_classes: Vec<Vec<u32>>,
    /// Indices of stabilizer classes meeting the image of j -> (1-q)j over
    /// the whole stabilizer.
    pub stab_plus_classes: Vec<usize>,
    /// Indices of stabilizer classes fixed by the inversion scalar.
    pub stab_gamma_classes: Vec<usize>,
    /// Elements u with (u, q^2-map) stabilizing E.
    pub tilde: Vec<u32>,
    /// Twisted classes of `tilde`, sorted by least element.
    pub tilde_classes: Vec<Vec<u32>>,
    pub tilde_gamma_classes: Vec<usize>,
    pub tilde_plus_classes: Vec<usize>,
    /// Canonical base-point class: least class of `tilde_plus_classes` when
    /// nonempty, else the least class of `tilde_classes`.
    pub a_e: Option<usize>,
    /// Elements b with (b, inversion twist) stabilizing E.
    pub gamma_witnesses: Vec<u32>,
}

pub fn build_orbit_datum(s: &SemisimpleDatum, e: &[Vec<u32>]) -> Result<OrbitDatum, String> {
    if e.len() != s.blocks.len() {
        return Err("partition assignment does not match the block count".into());
    }
    for (i, part) in e.iter().enumerate() {
        if part.iter().sum::<u32>() != s.mults[i] {
            return Err(format!("partition {} does not match multiplicity", i));
        }
    }
    let m = s.modulus;
    let step = s.omega_step();
    let omega = s.omega;
    let q = s.q;
    let q2 = q * q;
    let qo = (q % omega as u64) as u32;
    let q2o = (q2 % omega as u64) as u32;

    let trans_perm = |j: u32| s.block_perm(|b| (b + j as u64 * step) % m);
    let stab: Vec<u32> = (0..omega)
        .filter(|&j| act_on_e(e, &trans_perm(j)) == e)
        .collect();
    let k = stab.len() as u32;
    // the stabilizer of a cyclic-group action is the unique subgroup of
    // its order
    for (i, &j) in stab.iter().enumerate() {
        assert_eq!(j, i as u32 * (omega / k), "stabilizer is not the cyclic subgroup");
    }

    let delta_perm = s.block_perm(|b| s.delta_val(b));
    let tilde: Vec<u32> = (0..omega)
        .filter(|&u| {
            let perm = s.block_perm(|b| (s.delta_val(b) + u as u64 * step) % m);
            let _ = &delta_perm;
            act_on_e(e, &perm) == e
        })
        .collect();
    let f2_stable = !tilde.is_empty();

    let gamma_witnesses: Vec<u32> = if s.inverse_selfdual {
        (0..omega)
            .filter(|&b| {
                let perm = s.block_perm(|x| (s.gamma_val(x) + b as u64 * step) % m);
                act_on_e(e, &perm) == e
            })
            .collect()
    } else {
        Vec::new()
    };
    let gamma_stable = s.inverse_selfdual && !gamma_witnesses.is_empty();

    let stab_delta: Vec<u32> = stab
        .iter()
        .copied()
        .filter(|&j| (q2o as u64 * j as u64) % omega as u64 == j as u64)
        .collect();
    let t = stab_delta.len() as u32;
    let stab_gamma: Vec<u32> = stab
        .iter()
        .copied()
        .filter(|&j| ((qo as u64 + 1) * j as u64) % omega as u64 == 0)
        .collect();
    let stab_minus_gamma: Vec<u32> = stab
        .iter()
        .copied()
        .filter(|&j| ((q % omega as u64 + omega as u64 - 1) * j as u64) % omega as u64 == 0)
        .collect();
    let d = stab_gamma.len() as u32;
    let dprime = stab_minus_gamma.len() as u32;

    let one_minus_q = |j: u32| -> u32 {
        (((omega as u64 + 1 - qo as u64 % omega as u64) % omega as u64 * j as u64)
            % omega as u64) as u32
    };
    let mut stab_plus: Vec<u64> = stab_delta
        .iter()
        .map(|&j| one_minus_q(j) as u64)
        .collect();
    stab_plus.sort_unstable();
    stab_plus.dedup();

    // twisted classes: cosets of the image of j -> (q^2-1)j on the stabilizer
    let im_delta: BTreeSet<u32> = stab
        .iter()
        .map(|&j| (((q2o as u64 + omega as u64 - 1) % omega as u64 * j as u64) % omega as u64) as u32)
        .collect();
    let cosets = |set: &[u32]| -> Vec<Vec<u32>> {
        let mut classes: Vec<Vec<u32>> = Vec::new();
        let mut used: BTreeSet<u32> = BTreeSet::new();
        for &x in set {
            if used.contains(&x) {
                continue;
            }
            let mut cl: Vec<u32> = im_delta
                .iter()
                .map(|&v| ((x as u64 + v as u64) % omega as u64) as u32)
                .collect();
            cl.sort_unstable();
            cl.dedup();
            for &y in &cl {
                used.insert(y);
            }
            classes.push(cl);
        }
        classes.sort();
        classes
    };
    let stab_classes = cosets(&stab);
    let tilde_classes = cosets(&tilde);
    assert_eq!(stab_classes.len() as u32, t, "class count differs from t");
    if f2_stable {
        assert_eq!(tilde_classes.len() as u32, t);
    }

    let class_of = |classes: &[Vec<u32>], x: u32| -> usize {
        classes
            .iter()
            .position(|c| c.binary_search(&x).is_ok())
            .expect("element outside the class list")
    };
    let neg_q = |j: u32| -> u32 {
        ((omega as u64 - (qo as u64 * j as u64) % omega as u64) % omega as u64) as u32
    };

    let gamma_fixed_indices = |classes: &[Vec<u32>]| -> Vec<usize> {
        classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.binary_search(&neg_q(c[0])).is_ok())
            .map(|(i, _)| i)
            .collect()
    };
    let (stab_gamma_classes, tilde_gamma_classes) = if s.inverse_selfdual {
        (
            gamma_fixed_indices(&stab_classes),
            gamma_fixed_indices(&tilde_classes),
        )
    } else {
        (Vec::new(), Vec::new())
    };

    let mut stab_plus_classes: Vec<usize> = stab
        .iter()
        .map(|&j| class_of(&stab_classes, one_minus_q(j)))
        .collect();
    stab_plus_classes.sort_unstable();
    stab_plus_classes.dedup();

    let mut tilde_plus_classes: Vec<usize> = gamma_witnesses
        .iter()
        .map(|&b| class_of(&tilde_classes, one_minus_q(b)))
        .collect();
    tilde_plus_classes.sort_unstable();
    tilde_plus_classes.dedup();

    let a_e = if f2_stable {
        Some(*tilde_plus_classes.first().unwrap_or(&0))
    } else {
        None
    };

    Ok(OrbitDatum {
        class: s.clone(),
        e: e.to_vec(),
        omega,
        k,
        t,
        d,
        dprime,
        f2_stable,
        gamma_stable,
        stab,
        stab_delta,
        stab_gamma,
        stab_minus_gamma,
        stab_plus,
        stab_classes,
        stab_plus_classes,
        stab_gamma_classes,
        tilde,
        tilde_classes,
        tilde_gamma_classes,
        tilde_plus_classes,
        a_e,
        gamma_witnesses,
    })
}

impl OrbitDatum {
    pub fn e_label(&self) -> String {
        let parts: Vec<String> = self
            .e
            .iter()
            .map(|p| {
                p.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect();
        format!("({})", parts.join(";"))
    }

    /// Index of an element of the delta-fixed stabilizer in Z/t.
    fn delta_fixed_index(&self, j: u32) -> u64 {
        assert!(self.stab_delta.contains(&j));
        (j as u64) / (self.omega as u64 / self.t as u64)
    }

    /// Index of a twisted stabilizer class in Z/t via its least element.
    fn stab_class_index(&self, idx: usize) -> u64 {
        let j = self.stab_classes[idx][0];
        (j as u64 / (self.omega as u64 / self.k as u64)) % self.t as u64
    }

    fn stab_class_of(&self, x: u32) -> usize {
        self.stab_classes
            .iter()
            .position(|c| c.binary_search(&(x % self.omega)).is_ok())
            .expect("element outside the stabilizer classes")
    }

    /// Character i of Z/t evaluated at a delta-fixed stabilizer element.
    pub fn eps_at_fixed(&self, i: u32, j: u32) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.t as u64, (i as u64 * self.delta_fixed_index(j)) as i64)
    }

    /// Character i of Z/t evaluated at a twisted stabilizer class.
    pub fn eps_at_class(&self, i: u32, idx: usize) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.t as u64, (i as u64 * self.stab_class_index(idx)) as i64)
    }

    /// Characters of Z/t that invert under the inversion twist.
    pub fn chars_minus_gamma(&self) -> Vec<u32> {
        (0..self.t)
            .filter(|&i| (i as u64 * ((self.q_mod_t() + self.t as u64 - 1) % self.t as u64)) % self.t as u64 == 0)
            .collect()
    }

    /// Norm-image characters of Z/t (multiples of q+1).
    pub fn chars_minus(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.t)
            .map(|i| (((self.q_mod_t() + 1) % self.t as u64 * i as u64) % self.t as u64) as u32)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn q_mod_t(&self) -> u64 {
        self.class.q % self.t as u64
    }

    /// The pairing between the two parameter sets: x = (char index i of
    /// Z/t, delta-fixed element z), y = (char index ip of Z/t, twisted
    /// class zc).  Value (1/t) * eps_i(z') * eps_ip(z), where z' is the
    /// class of y shifted back by the canonical base point.
    pub fn pairing(&self, i: u32, z: u32, ip: u32, zc: usize) -> Cyclotomic {
        let a = self.a_e.expect("no base point: orbit is not q^2-stable");
        let arep = self.tilde_classes[a][0] as u64;
        let zrep = self.tilde_classes[zc][0] as u64;
        let zprime = ((zrep + self.omega as u64 - arep) % self.omega as u64) as u32;
        let zp_class = self.stab_class_of(zprime);
        let v = self
            .eps_at_class(i, zp_class)
            .mul(&self.eps_at_fixed(ip, z));
        v.scale(&num_rational::BigRational::new(
            1.into(),
            (self.t as i64).into(),
        ))
    }

    /// Checks that the pairing matrix and its entrywise-inverted transpose
    /// multiply to the identity in both orders.
    pub fn check_pairing_inversion(&self) -> bool {
        if !self.f2_stable {
            return true;
        }
        let t = self.t;
        let xs: Vec<(u32, u32)> = (0..t)
            .flat_map(|i| self.stab_delta.iter().map(move |&z| (i, z)))
            .collect();
        let ys: Vec<(u32, usize)> = (0..t)
            .flat_map(|ip| (0..t as usize).map(move |zc| (ip, zc)))
            .collect();
        let inv_entry = |i: u32, z: u32, ip: u32, zc: usize| -> Cyclotomic {
            let a = self.a_e.unwrap();
            let arep = self.tilde_classes[a][0] as u64;
            let zrep = self.tilde_classes[zc][0] as u64;
            let zprime = ((zrep + self.omega as u64 - arep) % self.omega as u64) as u32;
            let zp_class = self.stab_class_of(zprime);
            let v = self
                .eps_at_class(i, zp_class)
                .mul(&self.eps_at_fixed(ip, z))
                .conj();
            v.scale(&num_rational::BigRational::new(
                1.into(),
                (self.t as i64).into(),
            ))
        };
        for &(i1, z1) in &xs {
            for &(i2, z2) in &xs {
                let sum = Cyclotomic::sum(
                    ys.iter()
                        .map(|&(ip, zc)| self.pairing(i1, z1, ip, zc).mul(&inv_entry(i2, z2, ip, zc))),
                );
                let expect = if (i1, z1) == (i2, z2) {
                    Cyclotomic::one()
                } else {
                    Cyclotomic::zero()
                };
                if sum != expect {
                    return false;
                }
            }
        }
        for &(ip1, zc1) in &ys {
            for &(ip2, zc2) in &ys {
                let sum = Cyclotomic::sum(
                    xs.iter()
                        .map(|&(i, z)| self.pairing(i, z, ip1, zc1).mul(&inv_entry(i, z, ip2, zc2))),
                );
                let expect = if (ip1, zc1) == (ip2, zc2) {
                    Cyclotomic::one()
                } else {
                    Cyclotomic::zero()
                };
                if sum != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Multiplicity of the trivial character of the subfield group in the
    /// restriction of the ambient (connected-center) character attached to
    /// the twisted class `yc`: the count of inversion-twist anti-fixed
    /// stabilizer elements when `yc` is a norm class, zero otherwise.
    pub fn m2_gl_restriction(&self, yc: usize) -> u32 {
        if !self.f2_stable || !self.gamma_stable {
            return 0;
        }
        if self.tilde_plus_classes.contains(&yc) {
            self.dprime
        } else {
            0
        }
    }

    /// Closed-form multiplicity for the irreducible character labelled by
    /// (character index ip of Z/t, twisted class zc).
    pub fn m2_irreducible(&self, ip: u32, zc: usize) -> (M2, &'static str) {
        assert!(self.f2_stable, "labels exist only for q^2-stable orbits");
        if !self.class.inverse_selfdual {
            return (M2::Int(0), "class-not-selfdual");
        }
        if !self.gamma_stable {
            return (M2::Int(0), "orbit-not-selfdual");
        }
        if self.t % 2 == 1 {
            if self.chars_minus_gamma().contains(&ip) && self.tilde_gamma_classes.contains(&zc) {
                (M2::Int(1), "odd-match")
            } else {
                (M2::Int(0), "odd-mismatch")
            }
        } else if self.tilde_plus_classes.contains(&zc) {
            if self.chars_minus().contains(&ip) {
                (M2::OnePlusEps, "even-norm-char")
            } else if self.chars_minus_gamma().contains(&ip) {
                (M2::OneMinusEps, "even-twisted-char")
            } else {
                (M2::Int(0), "even-mismatch")
            }
        } else {
            (M2::Int(0), "even-mismatch")
        }
    }

    /// Closed-form multiplicity for the almost character labelled by
    /// (character index i of Z/t, delta-fixed element z).
    pub fn m2_almost(&self, i: u32, z: u32) -> (M2, &'static str) {
        assert!(self.f2_stable);
        if !self.class.inverse_selfdual {
            return (M2::Int(0), "class-not-selfdual");
        }
        if !self.gamma_stable {
            return (M2::Int(0), "orbit-not-selfdual");
        }
        let char_ok = self.chars_minus_gamma().contains(&i);
        if self.t % 2 == 1 {
            if char_ok && self.stab_gamma.contains(&z) {
                (M2::Int(1), "odd-match")
            } else {
                (M2::Int(0), "odd-mismatch")
            }
        } else if char_ok && self.stab_plus.contains(&(z as u64)) {
            (M2::Int(1), "even-norm")
        } else if char_ok && self.stab_gamma.contains(&z) {
            (M2::Eps, "even-sign")
        } else {
            (M2::Int(0), "even-mismatch")
        }
    }

    /// Recomputes the almost-character multiplicity as the pairing-weighted
    /// sum of the irreducible multiplicities, returned as a pair
    /// (constant part, eps coefficient) of cyclotomic numbers.
    pub fn m2_almost_from_pairing(&self, i: u32, z: u32) -> (Cyclotomic, Cyclotomic) {
        let mut a = Cyclotomic::zero();
        let mut b = Cyclotomic::zero();
        for ip in 0..self.t {
            for zc in 0..self.tilde_classes.len() {
                let w = self.pairing(i, z, ip, zc);
                match self.m2_irreducible(ip, zc).0 {
                    M2::Eps => unreachable!("irreducible values are never a bare sign"),
                    M2::Int(v) => {
                        a = a.add(&w.scale(&num_rational::BigRational::from_integer(
                            (v as i64).into(),
                        )));
                    }
                    M2::OnePlusEps => {
                        a = a.add(&w);
                        b = b.add(&w);
                    }
                    M2::OneMinusEps => {
                        a = a.add(&w);
                        b = b.sub(&w);
                    }
                }
            }
        }
        (a, b)
    }

    /// Square-root census for a twisted class: the classes of witnesses y
    /// with (y, inversion twist) stabilizing E whose twist-square lands in
    /// the class `zc`, together with the multiplicity of the character i of
    /// Z/t in the permutation action of the delta-fixed stabilizer on them.
    pub fn sqrt_multiplicity(&self, i: u32, zc: usize) -> Cyclotomic {
        assert!(self.f2_stable);
        if !self.gamma_stable {
            return Cyclotomic::zero();
        }
        let omega = self.omega as u64;
        let q = self.class.q % omega;
        let target = &self.tilde_classes[zc];
        let ys: Vec<u32> = self
            .gamma_witnesses
            .iter()
            .copied()
            .filter(|&y| {
                let sq = (((omega + 1 - q) % omega) * y as u64 % omega) as u32;
                target.binary_search(&sq).is_ok()
            })
            .collect();
        // classes of witnesses modulo the twisted-translation image
        let im: BTreeSet<u32> = self
            .stab
            .iter()
            .map(|&j| {
                (((self.class.q * self.class.q) % omega + omega - 1) % omega * j as u64 % omega)
                    as u32
            })
            .collect();
        let mut classes: Vec<Vec<u32>> = Vec::new();
        let mut used: BTreeSet<u32> = BTreeSet::new();
        for &y in &ys {
            if used.contains(&y) {
                continue;
            }
            let mut cl: Vec<u32> = im
                .iter()
                .map(|&v| ((y as u64 + v as u64) % omega) as u32)
                .collect();
            cl.sort_unstable();
            cl.dedup();
            for &x in &cl {
                used.insert(x);
            }
            classes.push(cl);
        }
        // average of conj(eps) times the fixed-class count over the
        // delta-fixed stabilizer acting by twisted conjugation
        let mut total = Cyclotomic::zero();
        for &u in &self.stab_delta {
            let shift = ((q + 1) % omega) * u as u64 % omega;
            let fixed = classes
                .iter()
                .filter(|cl| {
                    let moved = ((cl[0] as u64 + shift) % omega) as u32;
                    cl.binary_search(&moved).is_ok()
                })
                .count() as i64;
            let term = self
                .eps_at_fixed(i, u)
                .conj()
                .scale(&num_rational::BigRational::from_integer(fixed.into()));
            total = total.add(&term);
        }
        total.scale(&num_rational::BigRational::new(
            1.into(),
            (self.t as i64).into(),
        ))
    }

    /// Closed-form value of the square-root multiplicity: the twisted-class
    /// index (1 for odd t, 2 for even t) on norm characters paired with
    /// norm classes, zero elsewhere.
    pub fn lusztig_multiplicity(&self, i: u32, zc: usize) -> u32 {
        if !self.f2_stable || !self.gamma_stable {
            return 0;
        }
        if self.chars_minus().contains(&i) && self.tilde_plus_classes.contains(&zc) {
            if self.t % 2 == 0 {
                2
            } else {
                1
            }
        } else {
            0
        }
    }

    /// Whether the rational form indexed by the twisted class `yc` contains
    /// an inverse-selfdual representative: its class must meet the image of
    /// u -> (1-q)u over the whole translation group.
    pub fn rational_form_selfdual(&self, yc: usize) -> bool {
        if !self.class.inverse_selfdual {
            return false;
        }
        let omega = self.omega as u64;
        let q = self.class.q % omega;
        let q2m1 = (self.class.q * self.class.q % omega + omega - 1) % omega;
        let image: BTreeSet<u64> = (0..omega).map(|u| (omega + 1 - q) % omega * u % omega).collect();
        self.tilde_classes[yc].iter().any(|&v| {
            (0..omega).any(|w| {
                let shifted = (v as u64 + q2m1 * w % omega) % omega;
                image.contains(&shifted)
            })
        })
    }
}

/// Number of twisted square roots of w: elements u with u * twist(u) = w.
pub fn count_twisted_sqrt(g: &dyn Group, twist: &[usize], w: usize) -> usize {
    (0..g.order()).filter(|&u| g.mul(u, twist[u]) == w).count()
}

/// One predicted multiplicity, for a single irreducible-character label.
#[derive(Debug, Clone)]
pub struct PredictionRecord {
    pub class_id: usize,
    pub class_label: String,
    pub e_id: usize,
    pub e_label: String,
    pub eps_index: u32,
    pub z_rep: u32,
    pub t: u32,
    pub d: u32,
    pub dprime: u32,
    pub clause: String,
    pub m2: M2,
}

/// Predicted multiplicities for the full character set of SL_n(F_{q^2}).
#[derive(Debug, Clone)]
pub struct Prediction {
    pub n: u32,
    pub p: u64,
    pub d0: u32,
    pub q: u64,
    /// The closed forms are proved only for p >= n; below that the records
    /// are still produced but flagged.
    pub conformant: bool,
    pub records: Vec<PredictionRecord>,
}

impl Prediction {
    pub fn has_symbolic(&self) -> bool {
        self.records.iter().any(|r| r.m2.is_symbolic())
    }

    /// Multiset of multiplicities after substituting a sign for eps.
    pub fn resolved_multiset(&self, eps: i8) -> Vec<u8> {
        let mut v: Vec<u8> = self.records.iter().map(|r| r.m2.resolve(eps)).collect();
        v.sort_unstable();
        v
    }
}

pub fn predict_all(n: u32, p: u64, d0: u32, level_cap: u32) -> Result<Prediction, String> {
    let classes = enumerate_semisimple_classes(n, p, d0, level_cap)?;
    let mut records = Vec::new();
    for (class_id, s) in classes.iter().enumerate() {
        for (e_id, e) in e_orbits(s).iter().enumerate() {
            let datum = build_orbit_datum(s, e)?;
            if !datum.f2_stable {
                continue;
            }
            for ip in 0..datum.t {
                for zc in 0..datum.tilde_classes.len() {
                    let (m2, clause) = datum.m2_irreducible(ip, zc);
                    records.push(PredictionRecord {
                        class_id,
                        class_label: s.label(),
                        e_id,
                        e_label: datum.e_label(),
                        eps_index: ip,
                        z_rep: datum.tilde_classes[zc][0],
                        t: datum.t,
                        d: datum.d,
                        dprime: datum.dprime,
                        clause: clause.to_string(),
                        m2,
                    });
                }
            }
        }
    }
    Ok(Prediction {
        n,
        p,
        d0,
        q: p.pow(d0),
        conformant: p >= n as u64,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classes(n: u32, p: u64, d0: u32) -> Vec<SemisimpleDatum> {
        enumerate_semisimple_classes(n, p, d0, lcm_upto(n)).unwrap()
    }

    #[test]
    fn sl2_f4_class_census() {
        let cs = classes(2, 2, 1);
        assert_eq!(cs.len(), 4);
        // identity class: both eigenvalues zero, trivial component group
        let id = &cs[0];
        assert_eq!(id.eigenvalues, vec![0, 0]);
        assert_eq!(id.omega, 1);
        assert!(id.inverse_selfdual);
        // exactly one class with an eigenvalue pair of order 3 (selfdual),
        // two Galois-paired order-5 classes (not selfdual)
        let selfdual: Vec<_> = cs.iter().filter(|c| c.inverse_selfdual).collect();
        assert_eq!(selfdual.len(), 2);
        let dual_free: Vec<_> = cs.iter().filter(|c| !c.inverse_selfdual).collect();
        assert_eq!(dual_free.len(), 2);
        for c in dual_free {
            assert_eq!(c.omega, 1);
        }
    }

    #[test]
    fn sl2_f4_m2_multiset() {
        let pred = predict_all(2, 2, 1, 2).unwrap();
        assert_eq!(pred.records.len(), 5);
        assert!(!pred.has_symbolic());
        assert_eq!(pred.resolved_multiset(1), vec![0, 0, 1, 1, 1]);
    }

    #[test]
    fn sl2_f9_class_and_record_census() {
        let cs = classes(2, 3, 1);
        assert_eq!(cs.len(), 9);
        let pred = predict_all(2, 3, 1, 2).unwrap();
        assert_eq!(pred.records.len(), 13);
        // one order-2 class produces the even-t labels; either sign yields
        // the same multiset, so the sign is undetermined at this level
        assert_eq!(pred.resolved_multiset(1), vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 2]);
        assert_eq!(pred.resolved_multiset(-1), vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 2]);
    }

    #[test]
    fn sl2_f9_even_t_datum() {
        let cs = classes(2, 3, 1);
        let s = cs
            .iter()
            .find(|c| c.omega == 2 && c.inverse_selfdual)
            .expect("order-2 class exists");
        let orbits = e_orbits(s);
        assert_eq!(orbits.len(), 1);
        let d = build_orbit_datum(s, &orbits[0]).unwrap();
        assert_eq!((d.t, d.d, d.dprime), (2, 2, 2));
        assert_eq!(d.k, 2);
        let mut vals: Vec<M2> = Vec::new();
        for ip in 0..d.t {
            for zc in 0..d.tilde_classes.len() {
                vals.push(d.m2_irreducible(ip, zc).0);
            }
        }
        vals.sort();
        assert_eq!(
            vals,
            vec![M2::Int(0), M2::Int(0), M2::OnePlusEps, M2::OneMinusEps]
        );
        // the ambient restriction splits consistently over each class
        for zc in 0..d.tilde_classes.len() {
            let total = d.m2_gl_restriction(zc);
            let mut const_part = 0i32;
            let mut eps_part = 0i32;
            for ip in 0..d.t {
                match d.m2_irreducible(ip, zc).0 {
                    M2::Eps => unreachable!(),
                    M2::Int(v) => const_part += v as i32,
                    M2::OnePlusEps => {
                        const_part += 1;
                        eps_part += 1;
                    }
                    M2::OneMinusEps => {
                        const_part += 1;
                        eps_part -= 1;
                    }
                }
            }
            assert_eq!(const_part, total as i32);
            assert_eq!(eps_part, 0);
        }
    }

    #[test]
    fn sl2_f25_record_census() {
        let pred = predict_all(2, 5, 1, 2).unwrap();
        assert_eq!(pred.records.len(), 29);
    }

    #[test]
    fn pairing_inverts_on_small_data() {
        for (n, p) in [(2u32, 2u64), (2, 3), (2, 5), (3, 3)] {
            for s in classes(n, p, 1) {
                for e in e_orbits(&s) {
                    let d = build_orbit_datum(&s, &e).unwrap();
                    if d.f2_stable {
                        assert!(d.check_pairing_inversion(), "pairing failed: {:?}", d.class);
                    }
                }
            }
        }
    }

    #[test]
    fn almost_closed_form_matches_pairing_sum() {
        for (n, p) in [(2u32, 2u64), (2, 3), (2, 5), (3, 2), (3, 3)] {
            for s in classes(n, p, 1) {
                for e in e_orbits(&s) {
                    let d = build_orbit_datum(&s, &e).unwrap();
                    if !d.f2_stable {
                        continue;
                    }
                    for i in 0..d.t {
                        for &z in d.stab_delta.clone().iter() {
                            let (a, b) = d.m2_almost_from_pairing(i, z);
                            let (closed, _) = d.m2_almost(i, z);
                            let (ca, cb) = match closed {
                                M2::Int(v) => (Cyclotomic::from_int(v as i64), Cyclotomic::zero()),
                                M2::Eps => (Cyclotomic::zero(), Cyclotomic::one()),
                                M2::OnePlusEps => (Cyclotomic::one(), Cyclotomic::one()),
                                M2::OneMinusEps => {
                                    (Cyclotomic::one(), Cyclotomic::from_int(-1))
                                }
                            };
                            assert_eq!(a, ca, "constant part: {:?} i={} z={}", d.class, i, z);
                            assert_eq!(b, cb, "sign part: {:?} i={} z={}", d.class, i, z);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sqrt_census_matches_closed_form() {
        for (n, p) in [(2u32, 2u64), (2, 3), (2, 5), (3, 3)] {
            for s in classes(n, p, 1) {
                for e in e_orbits(&s) {
                    let d = build_orbit_datum(&s, &e).unwrap();
                    if !d.f2_stable {
                        continue;
                    }
                    for i in 0..d.t {
                        for zc in 0..d.tilde_classes.len() {
                            let direct = d.sqrt_multiplicity(i, zc);
                            let closed =
                                Cyclotomic::from_int(d.lusztig_multiplicity(i, zc) as i64);
                            assert_eq!(direct, closed, "{:?} i={} zc={}", d.class, i, zc);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parity_law_and_indices() {
        for (n, p, d0) in [(2u32, 2u64, 1u32), (2, 3, 1), (2, 5, 1), (3, 3, 1), (3, 2, 2)] {
            for s in classes(n, p, d0) {
                if !s.inverse_selfdual {
                    continue;
                }
                for e in e_orbits(&s) {
                    let d = build_orbit_datum(&s, &e).unwrap();
                    if !d.gamma_stable {
                        continue;
                    }
                    if d.t % 2 == 0 {
                        assert_eq!(d.t * 2, d.d * d.dprime);
                    } else {
                        assert_eq!(d.t, d.d * d.dprime);
                    }
                    let lm = d.chars_minus().len() as u32;
                    let lmg = d.chars_minus_gamma().len() as u32;
                    assert_eq!(lmg, d.dprime);
                    assert!(lmg / lm == if d.t % 2 == 0 { 2 } else { 1 });
                }
            }
        }
    }

    #[test]
    fn level_cap_insufficiency_is_reported() {
        let err = enumerate_semisimple_classes(3, 2, 1, 2).unwrap_err();
        assert!(err.contains("degree 3"));
    }

    #[test]
    fn count_twisted_sqrt_on_symmetric_group() {
        use crate::group::perm::PermGroup;
        let w = PermGroup::symmetric(3);
        let id_twist: Vec<usize> = (0..w.order()).collect();
        // ordinary square roots of the identity in S3: id and the three
        // transpositions
        assert_eq!(count_twisted_sqrt(&w, &id_twist, w.id()), 4);
    }
}
