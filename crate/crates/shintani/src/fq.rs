//! Finite field towers F_{p^n} with compatible embeddings.
//!
//! For each prime p a table of irreducible polynomials is grown on demand,
//! one per level n, chosen so that the norm-compatibility condition between
//! a level and each of its divisor levels holds. That makes the subfield
//! embeddings F_{p^m} ↪ F_{p^n} (m | n) canonical: the level-m generator maps
//! to the (p^n−1)/(p^m−1) power of the level-n generator.

use num_integer::Integer;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::cyclo::{divisors, prime_factors};

/// (base ^ exp) mod m with u128 intermediates.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut b = (base % m) as u128;
    let mut r: u128 = 1;
    let m = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    r as u64
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Miller–Rabin, deterministic for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Full prime factorization (with multiplicity collapsed to distinct primes)
/// via trial division + Pollard rho; handles the p^n − 1 sizes used here.
pub fn factorize_distinct(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            if !out.contains(&m) {
                out.push(m);
            }
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out
}

fn pollard_rho(n: u64) -> u64 {
    assert!(n > 1 && n % 2 != 0);
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mod_mul(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

// ---------------------------------------------------------------------------
// Polynomial arithmetic over F_p (dense, low degree first, u64 coefficients).
// ---------------------------------------------------------------------------

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let n = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mod_mul(ai, bj, p)) % p;
        }
    }
    // reduce mod the monic modulus
    for k in (n..prod.len()).rev() {
        let c = prod[k];
        if c != 0 {
            prod[k] = 0;
            for i in 0..n {
                let t = mod_mul(c, modulus[i], p);
                prod[k - n + i] = (prod[k - n + i] + p - t % p) % p;
            }
        }
    }
    prod.truncate(n);
    poly_trim(&mut prod);
    prod
}

fn poly_pow_mod(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut b = base.to_vec();
    let mut r = vec![1u64];
    while exp > 0 {
        if exp & 1 == 1 {
            r = poly_mul_mod(&r, &b, modulus, p);
        }
        b = poly_mul_mod(&b, &b, modulus, p);
        exp >>= 1;
    }
    r
}

/// Is the monic polynomial f irreducible over F_p? (degree ≥ 1)
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    // x^{p^n} ≡ x mod f, and x^{p^{n/q}} − x coprime to f for prime q | n.
    let x = vec![0u64, 1];
    let mut xp = x.clone();
    let mut powers = Vec::with_capacity(n);
    for _ in 0..n {
        xp = poly_pow_mod(&xp, p, f, p);
        powers.push(xp.clone());
    }
    if powers[n - 1] != x {
        return false;
    }
    for q in prime_factors(n as u64) {
        let k = n / q as usize;
        let mut diff = powers[k - 1].clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        poly_trim(&mut diff);
        if poly_gcd(&diff, f, p).len() != 1 {
            return false;
        }
    }
    true
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = mod_pow(b[db], p - 2, p);
    while r.len() > db {
        let c = mod_mul(*r.last().unwrap(), lead_inv, p);
        let k = r.len() - 1 - db;
        if c != 0 {
            for i in 0..=db {
                let t = mod_mul(c, b[i], p);
                r[k + i] = (r[k + i] + p - t) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if !a.is_empty() {
        let inv = mod_pow(*a.last().unwrap(), p - 2, p);
        for c in &mut a {
            *c = mod_mul(*c, inv, p);
        }
    }
    a
}

// ---------------------------------------------------------------------------
// The compatible defining-polynomial table.
// ---------------------------------------------------------------------------

/// Defining data for F_{p^n}: monic irreducible polynomial of degree n whose
/// root is a primitive element, compatible with all divisor levels.
#[derive(Clone)]
struct LevelDef {
    /// coefficients c_0..c_{n-1} of the monic polynomial x^n + Σ c_i x^i
    /// stored as the full vector including the leading 1
    poly: Vec<u64>,
}

static LEVELS: Lazy<Mutex<HashMap<(u64, u32), LevelDef>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Evaluate the level-m defining polynomial at the element `x` of F_{p^n}
/// (x given in the level-n basis); result is zero iff x is a root.
fn eval_poly_at(coeffs: &[u64], x: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    // Horner
    let mut acc: Vec<u64> = Vec::new();
    for &c in coeffs.iter().rev() {
        acc = poly_mul_mod(&acc, x, modulus, p);
        if c != 0 {
            if acc.is_empty() {
                acc.push(c);
            } else {
                acc[0] = (acc[0] + c) % p;
            }
            poly_trim(&mut acc);
        }
    }
    acc
}

fn level_poly(p: u64, n: u32) -> Vec<u64> {
    if let Some(d) = LEVELS.lock().unwrap().get(&(p, n)) {
        return d.poly.clone();
    }
    assert!(n >= 2, "level 1 is prime-field arithmetic, no table entry");
    // ensure all proper divisor levels exist first
    for d in divisors(n as u64) {
        if d >= 2 && (d as u32) < n {
            level_poly(p, d as u32);
        }
    }
    let deg = n as usize;
    let q1 = checked_pow(p, n).expect("field size overflow") - 1;
    let q1_factors = factorize_distinct(q1);
    // odometer over monic polynomials, lexicographic in (c_{n-1}, ..., c_0)
    let mut c = vec![0u64; deg];
    let found = loop {
        let mut f = c.clone();
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) && is_primitive_root_poly(&f, p, q1, &q1_factors) {
            if compatible_with_divisors(p, n, &f) {
                break f;
            }
        }
        // increment odometer: c_0 fastest? lex-min in standard coefficient
        // order means incrementing c_0 last; iterate c_{deg-1} fastest is
        // arbitrary; fix: increment with c_0 as least significant.
        let mut i = 0;
        loop {
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            i += 1;
            assert!(i < deg, "no primitive compatible polynomial found");
        }
    };
    LEVELS
        .lock()
        .unwrap()
        .insert((p, n), LevelDef { poly: found.clone() });
    found
}

fn checked_pow(p: u64, n: u32) -> Option<u64> {
    let mut r: u64 = 1;
    for _ in 0..n {
        r = r.checked_mul(p)?;
    }
    Some(r)
}

/// Is the residue class of x a generator of F_{p^n}^* (f the modulus)?
fn is_primitive_root_poly(f: &[u64], p: u64, q1: u64, q1_factors: &[u64]) -> bool {
    let x = vec![0u64, 1];
    for &r in q1_factors {
        if poly_pow_mod(&x, q1 / r, f, p) == vec![1] {
            return false;
        }
    }
    true
}

/// Norm-compatibility: for each proper divisor level m, the level-m defining
/// polynomial must vanish at x^{(p^n−1)/(p^m−1)} mod f.
fn compatible_with_divisors(p: u64, n: u32, f: &[u64]) -> bool {
    let qn1 = checked_pow(p, n).unwrap() - 1;
    for d in divisors(n as u64) {
        let m = d as u32;
        if m == n || m == 1 {
            continue;
        }
        let sub = LEVELS.lock().unwrap().get(&(p, m)).unwrap().poly.clone();
        let qm1 = checked_pow(p, m).unwrap() - 1;
        let x = vec![0u64, 1];
        let y = poly_pow_mod(&x, qn1 / qm1, f, p);
        if !eval_poly_at(&sub, &y, f, p).is_empty() {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// FqElem
// ---------------------------------------------------------------------------

/// An element of F_{p^level} in the power basis of the canonical generator.
/// Coefficients are reduced mod p and trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    p: u64,
    level: u32,
    coeffs: Vec<u64>,
}

impl FqElem {
    pub fn zero(p: u64, level: u32) -> Self {
        assert!(is_prime(p), "characteristic must be prime");
        assert!(level >= 1);
        FqElem { p, level, coeffs: Vec::new() }
    }

    pub fn one(p: u64, level: u32) -> Self {
        let mut e = FqElem::zero(p, level);
        e.coeffs.push(1);
        e
    }

    pub fn from_int(p: u64, level: u32, k: i64) -> Self {
        let mut e = FqElem::zero(p, level);
        let r = k.rem_euclid(p as i64) as u64;
        if r != 0 {
            e.coeffs.push(r);
        }
        e
    }

    /// The canonical multiplicative generator of F_{p^level}.
    pub fn generator(p: u64, level: u32) -> Self {
        if level == 1 {
            // smallest primitive root mod p
            let q1 = p - 1;
            let fac = factorize_distinct(q1);
            for g in 2..p {
                if fac.iter().all(|&r| mod_pow(g, q1 / r, p) != 1) {
                    return FqElem { p, level, coeffs: vec![g] };
                }
            }
            // p = 2: the unit group is trivial
            return FqElem::one(p, level);
        }
        level_poly(p, level);
        FqElem { p, level, coeffs: vec![0, 1] }
    }

    /// Build from explicit power-basis coefficients (low degree first).
    pub fn from_coeffs(p: u64, level: u32, coeffs: &[u64]) -> Self {
        assert!(coeffs.len() <= level as usize);
        let mut v: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
        poly_trim(&mut v);
        if level > 1 {
            level_poly(p, level);
        }
        FqElem { p, level, coeffs: v }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn field_order(&self) -> u64 {
        checked_pow(self.p, self.level).expect("field size overflow")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn modulus(&self) -> Vec<u64> {
        if self.level == 1 {
            vec![0, 1]
        } else {
            level_poly(self.p, self.level)
        }
    }

    fn check_compat(&self, other: &FqElem) {
        assert!(
            self.p == other.p && self.level == other.level,
            "field mismatch: F_{}^{} vs F_{}^{}",
            self.p,
            self.level,
            other.p,
            other.level
        );
    }

    pub fn add(&self, other: &FqElem) -> FqElem {
        self.check_compat(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = vec![0u64; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i] = c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            v[i] = (v[i] + c) % self.p;
        }
        poly_trim(&mut v);
        FqElem { p: self.p, level: self.level, coeffs: v }
    }

    pub fn neg(&self) -> FqElem {
        let v = self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        FqElem { p: self.p, level: self.level, coeffs: v }
    }

    pub fn sub(&self, other: &FqElem) -> FqElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FqElem) -> FqElem {
        self.check_compat(other);
        if self.is_zero() || other.is_zero() {
            return FqElem::zero(self.p, self.level);
        }
        if self.level == 1 {
            return FqElem {
                p: self.p,
                level: 1,
                coeffs: vec![mod_mul(self.coeffs[0], other.coeffs[0], self.p)],
            };
        }
        let m = self.modulus();
        let v = poly_mul_mod(&self.coeffs, &other.coeffs, &m, self.p);
        FqElem { p: self.p, level: self.level, coeffs: v }
    }

    pub fn pow(&self, e: u64) -> FqElem {
        if self.is_zero() {
            return if e == 0 {
                FqElem::one(self.p, self.level)
            } else {
                self.clone()
            };
        }
        let m = self.modulus();
        let v = poly_pow_mod(&self.coeffs, e, &m, self.p);
        FqElem { p: self.p, level: self.level, coeffs: v }
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self) -> Option<FqElem> {
        if self.is_zero() {
            return None;
        }
        Some(self.pow(self.field_order() - 2))
    }

    /// The Frobenius x ↦ x^{p^d}.
    pub fn frobenius(&self, d: u32) -> FqElem {
        let e = mod_pow(self.p, d as u64 % self.level as u64, self.field_order() - 1);
        let e = if self.field_order() == 2 { 1 } else { e };
        self.pow(if e == 0 { self.field_order() - 1 } else { e })
    }

    /// Canonical embedding into the level-n field (level | n required).
    pub fn embed(&self, n: u32) -> FqElem {
        assert!(n % self.level == 0, "embedding requires divisor levels");
        if n == self.level {
            return self.clone();
        }
        if self.is_zero() {
            return FqElem::zero(self.p, n);
        }
        let g = FqElem::generator(self.p, n);
        let step = (g.field_order() - 1) / (self.field_order() - 1);
        let gg = g.pow(step);
        // evaluate self's coefficient polynomial at gg
        let mut acc = FqElem::zero(self.p, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&gg);
            acc = acc.add(&FqElem::from_int(self.p, n, c as i64));
        }
        acc
    }

    /// Inverse of `embed`: None if the value does not lie in the subfield.
    pub fn descend(&self, m: u32) -> Option<FqElem> {
        assert!(self.level % m == 0, "descent requires divisor levels");
        if m == self.level {
            return Some(self.clone());
        }
        // x is in F_{p^m} iff x^{p^m} = x; then match against the embedded
        // enumeration of the small field.
        if self.frobenius(m) != *self {
            return None;
        }
        for small in FqElem::enumerate(self.p, m) {
            if small.embed(self.level) == *self {
                return Some(small);
            }
        }
        None
    }

    /// All elements of F_{p^level}, in a deterministic order: zero, then
    /// generator powers g^0, g^1, ….
    pub fn enumerate(p: u64, level: u32) -> Vec<FqElem> {
        let q = checked_pow(p, level).expect("field size overflow");
        let mut out = Vec::with_capacity(q as usize);
        out.push(FqElem::zero(p, level));
        let g = FqElem::generator(p, level);
        let mut x = FqElem::one(p, level);
        for _ in 0..q - 1 {
            out.push(x.clone());
            x = x.mul(&g);
        }
        out
    }

    /// Discrete log base the canonical generator; None for zero.
    pub fn dlog(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let g = FqElem::generator(self.p, self.level);
        let mut x = FqElem::one(self.p, self.level);
        for k in 0..self.field_order() - 1 {
            if x == *self {
                return Some(k);
            }
            x = x.mul(&g);
        }
        unreachable!("generator is primitive");
    }

    /// Multiplicative order; panics on zero.
    pub fn mult_order(&self) -> u64 {
        assert!(!self.is_zero());
        let q1 = self.field_order() - 1;
        let mut ord = q1;
        for r in factorize_distinct(q1) {
            while ord % r == 0 && self.pow(ord / r) == FqElem::one(self.p, self.level) {
                ord /= r;
            }
        }
        ord
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "p": self.p, "level": self.level, "poly": self.coeffs })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<FqElem> {
        let p = v.get("p")?.as_u64()?;
        let level = v.get("level")?.as_u64()? as u32;
        let coeffs: Vec<u64> = v
            .get("poly")?
            .as_array()?
            .iter()
            .map(|x| x.as_u64())
            .collect::<Option<_>>()?;
        Some(FqElem::from_coeffs(p, level, &coeffs))
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                _ => {
                    if c != 1 {
                        write!(f, "{}*", c)?;
                    }
                    write!(f, "g")?;
                    if i > 1 {
                        write!(f, "^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}^{}({})", self.p, self.level, self)
    }
}

/// Fast arithmetic tables for one field: log/exp against the canonical
/// generator plus an additive successor table, for inner search loops.
pub struct FieldTable {
    pub p: u64,
    pub level: u32,
    pub q: u64,
    /// exp[k] = index (in `elems`) of g^k, k in 0..q-1
    pub elems: Vec<FqElem>,
    /// add[i*q + j] = index of elems[i] + elems[j]
    add: Vec<u32>,
    /// index of elems[i] * elems[j] computed from dlogs; elems[0] is zero
    log: Vec<u64>,
}

impl FieldTable {
    pub fn new(p: u64, level: u32) -> Self {
        let elems = FqElem::enumerate(p, level);
        let q = elems.len() as u64;
        assert!(q <= 1 << 22, "field too large for dense tables");
        let mut index: HashMap<&FqElem, u32> = HashMap::new();
        for (i, e) in elems.iter().enumerate() {
            index.insert(e, i as u32);
        }
        let mut add = vec![0u32; (q * q) as usize];
        for i in 0..q as usize {
            for j in 0..=i {
                let s = elems[i].add(&elems[j]);
                let k = index[&s];
                add[i * q as usize + j] = k;
                add[j * q as usize + i] = k;
            }
        }
        let log = (0..q).map(|i| if i == 0 { 0 } else { i - 1 }).collect();
        FieldTable { p, level, q, elems, add, log }
    }

    /// indices: 0 = zero, k+1 = g^k
    pub fn add_idx(&self, i: u32, j: u32) -> u32 {
        self.add[i as usize * self.q as usize + j as usize]
    }

    pub fn mul_idx(&self, i: u32, j: u32) -> u32 {
        if i == 0 || j == 0 {
            return 0;
        }
        let k = (self.log[i as usize] + self.log[j as usize]) % (self.q - 1);
        (k + 1) as u32
    }

    pub fn frob_idx(&self, i: u32, d: u32) -> u32 {
        if i == 0 {
            return 0;
        }
        let e = mod_pow(self.p, d as u64, self.q - 1);
        let k = self.log[i as usize] * e % (self.q - 1);
        (k % (self.q - 1) + 1) as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let g = FqElem::generator(2, 2);
        let one = FqElem::one(2, 2);
        // g^2 + g + 1 = 0 in F_4 for any primitive generator
        assert_eq!(g.pow(3), one);
        assert_eq!(g.pow(2), g.add(&one));
        assert_eq!(g.frobenius(1), g.pow(2));
        assert_eq!(g.frobenius(2), g);
    }

    #[test]
    fn tower_embeddings_commute() {
        // F_4 -> F_16 directly equals F_4 -> F_16 (through the norm powers)
        let g4 = FqElem::generator(2, 2);
        let e = g4.embed(4);
        assert_eq!(e.mult_order(), 3);
        assert_eq!(e.descend(2).unwrap(), g4);
        // multiplicativity of the embedding
        let a = g4.pow(2);
        assert_eq!(a.embed(4), e.pow(2));
        assert_eq!(g4.add(&a).embed(4), e.add(&e.pow(2)));
        // embed through a chain: F_2 ⊂ F_4 ⊂ F_8? no (2 ∤ 3); use 2 | 6
        let g2 = FqElem::one(2, 1);
        assert_eq!(g2.embed(6), FqElem::one(2, 6));
    }

    #[test]
    fn frobenius_fixed_field() {
        for (p, n) in [(2u64, 4u32), (3, 2), (5, 2)] {
            let fixed = FqElem::enumerate(p, n)
                .into_iter()
                .filter(|x| x.frobenius(1) == *x)
                .count() as u64;
            assert_eq!(fixed, p);
        }
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(FqElem::enumerate(2, 4).len(), 16);
        assert_eq!(FqElem::enumerate(3, 2).len(), 9);
        assert_eq!(FqElem::enumerate(5, 1).len(), 5);
    }

    #[test]
    fn generator_is_primitive() {
        for (p, n) in [(2u64, 1u32), (2, 2), (2, 4), (3, 1), (3, 2), (5, 2), (7, 1)] {
            let g = FqElem::generator(p, n);
            if p == 2 && n == 1 {
                assert_eq!(g, FqElem::one(2, 1));
                continue;
            }
            assert_eq!(g.mult_order(), checked_pow(p, n).unwrap() - 1);
        }
    }

    #[test]
    fn field_table_matches_exact() {
        let t = FieldTable::new(3, 2);
        for i in 0..t.q as u32 {
            for j in 0..t.q as u32 {
                let s = t.elems[i as usize].add(&t.elems[j as usize]);
                assert_eq!(t.elems[t.add_idx(i, j) as usize], s);
                let m = t.elems[i as usize].mul(&t.elems[j as usize]);
                assert_eq!(t.elems[t.mul_idx(i, j) as usize], m);
            }
        }
        for i in 0..t.q as u32 {
            assert_eq!(
                t.elems[t.frob_idx(i, 1) as usize],
                t.elems[i as usize].frobenius(1)
            );
        }
    }

    #[test]
    fn json_roundtrip() {
        let g = FqElem::generator(5, 2).pow(7);
        assert_eq!(FqElem::from_json(&g.to_json()).unwrap(), g);
    }
}
