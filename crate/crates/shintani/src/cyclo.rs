//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! Every value is kept in a unique canonical form: the conductor is minimal
//! (the smallest N with the value in Q(ζ_N), never ≡ 2 mod 4), and the
//! coefficient map is reduced against the N-th cyclotomic polynomial so only
//! exponents below φ(N) appear. Equality of canonical forms is therefore
//! literal equality, which is what makes exact character-theoretic identities
//! checkable at all.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials and reduction data, cached per conductor.
// ---------------------------------------------------------------------------

/// Exact division of integer polynomials (low-degree-first coefficients).
/// Panics if the division is not exact; callers only divide x^n - 1 by known
/// factors.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            for i in 0..=dd {
                let t = &den[i] * &c;
                rem[k + i] -= t;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

static CYCLO_POLY: Lazy<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Coefficients of the N-th cyclotomic polynomial Φ_N, low degree first,
/// length φ(N) + 1, monic.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    if let Some(p) = CYCLO_POLY.lock().unwrap().get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        // (x^n - 1) / prod_{d | n, d < n} Phi_d
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        let mut cur = num;
        for d in divisors(n) {
            if d < n {
                let phid = cyclotomic_polynomial(d);
                cur = poly_div_exact(&cur, &phid);
            }
        }
        cur
    };
    let arc = Arc::new(poly);
    CYCLO_POLY.lock().unwrap().insert(n, arc.clone());
    arc
}

/// Per-conductor reduction table: x^e mod Φ_N for φ(N) ≤ e < N, as dense
/// integer rows of length φ(N).
struct Reducer {
    phi: u64,
    rows: Vec<Vec<BigInt>>,
}

static REDUCER: Lazy<Mutex<HashMap<u64, Arc<Reducer>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn reducer(n: u64) -> Arc<Reducer> {
    if let Some(r) = REDUCER.lock().unwrap().get(&n) {
        return r.clone();
    }
    let phi = euler_phi(n);
    let poly = cyclotomic_polynomial(n);
    let d = phi as usize;
    // x^phi = -(c_0 + c_1 x + ... + c_{d-1} x^{d-1})
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity((n - phi) as usize);
    if n > phi {
        let first: Vec<BigInt> = (0..d).map(|i| -poly[i].clone()).collect();
        rows.push(first);
        for _ in phi + 1..n {
            let prev = rows.last().unwrap();
            // multiply by x: shift, then substitute x^phi again
            let top = prev[d - 1].clone();
            let mut next = vec![BigInt::zero(); d];
            for i in 1..d {
                next[i] = prev[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..d {
                    next[i] += -&poly[i] * &top;
                }
            }
            rows.push(next);
        }
    }
    let arc = Arc::new(Reducer { phi, rows });
    REDUCER.lock().unwrap().insert(n, arc.clone());
    arc
}

// ---------------------------------------------------------------------------
// The Cyclotomic value type.
// ---------------------------------------------------------------------------

/// An exact element of Q(ζ_N) in canonical form. See module docs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: BTreeMap<u64, BigRational>,
}

fn rat_int(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Cyclotomic::from_int(1)
    }

    pub fn from_int(i: i64) -> Self {
        Cyclotomic::from_rational(rat_int(i))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0, r);
        }
        Cyclotomic { conductor: 1, coeffs }
    }

    /// ζ_N^e (e may be negative; reduced mod N). Canonicalized, so e.g.
    /// `root_of_unity(4, 2)` is the rational −1.
    pub fn root_of_unity(n: u64, e: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let e = e.rem_euclid(n as i64) as u64;
        let mut raw = BTreeMap::new();
        raw.insert(e, rat_int(1));
        Cyclotomic::canonical(n, raw)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Canonical sparse coefficients (exponent → rational), exponents < φ(N).
    pub fn coefficients(&self) -> &BTreeMap<u64, BigRational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Some(r) iff the value is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.conductor == 1 {
            Some(self.coeffs.get(&0).cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// Some(k) iff the value is the rational integer k.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    // -- canonicalization ---------------------------------------------------

    /// Build the canonical form from raw coefficients at conductor n.
    fn canonical(n: u64, raw: BTreeMap<u64, BigRational>) -> Self {
        let reduced = Self::reduce_mod_phi(n, raw);
        Self::minimize(n, reduced)
    }

    /// Reduce exponents mod n and against Φ_n so only exponents < φ(n) remain.
    fn reduce_mod_phi(n: u64, raw: BTreeMap<u64, BigRational>) -> BTreeMap<u64, BigRational> {
        let red = reducer(n);
        let phi = red.phi;
        let mut out: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (e, c) in raw {
            if c.is_zero() {
                continue;
            }
            let e = e % n;
            if e < phi {
                let entry = out.entry(e).or_insert_with(BigRational::zero);
                *entry += c;
            } else {
                let row = &red.rows[(e - phi) as usize];
                for (i, ri) in row.iter().enumerate() {
                    if !ri.is_zero() {
                        let entry = out.entry(i as u64).or_insert_with(BigRational::zero);
                        *entry += &c * ri;
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Reduce the conductor to the minimal one.
    fn minimize(mut n: u64, mut coeffs: BTreeMap<u64, BigRational>) -> Self {
        loop {
            if coeffs.is_empty() {
                return Cyclotomic { conductor: 1, coeffs };
            }
            // Rational fast path: in the power basis a rational is exactly
            // the exponent-0 vector.
            if coeffs.len() == 1 && coeffs.contains_key(&0) {
                return Cyclotomic { conductor: 1, coeffs };
            }
            if n % 2 == 0 && (n / 2) % 2 == 1 {
                // Q(ζ_n) = Q(ζ_{n/2}) for n ≡ 2 mod 4: ζ_n = -ζ_{n'}^{(n'+1)/2}.
                let np = n / 2;
                let k = (np + 1) / 2;
                let mut raw = BTreeMap::new();
                for (e, c) in coeffs {
                    let sign = if e % 2 == 0 { c } else { -c };
                    let ep = (e % np) * k % np;
                    let entry = raw.entry(ep).or_insert_with(BigRational::zero);
                    *entry += sign;
                }
                coeffs = Self::reduce_mod_phi(np, raw);
                n = np;
                continue;
            }
            let mut stripped = false;
            for p in prime_factors(n) {
                let np = n / p;
                if np == 0 {
                    continue;
                }
                if Self::fixed_by_gal_over(n, &coeffs, np) {
                    coeffs = Self::rebase_solve(n, &coeffs, np);
                    n = np;
                    stripped = true;
                    break;
                }
            }
            if !stripped {
                return Cyclotomic { conductor: n, coeffs };
            }
        }
    }

    /// Is the value fixed by Gal(Q(ζ_n)/Q(ζ_np))? (np | n)
    fn fixed_by_gal_over(n: u64, coeffs: &BTreeMap<u64, BigRational>, np: u64) -> bool {
        let mut j = 1 + np;
        while j < n {
            if j.gcd(&n) == 1 {
                let mut raw = BTreeMap::new();
                for (e, c) in coeffs {
                    raw.insert(e * j % n, c.clone());
                }
                if &Self::reduce_mod_phi(n, raw) != coeffs {
                    return false;
                }
            }
            j += np;
        }
        true
    }

    /// Rewrite a value known to lie in Q(ζ_np) in the ζ_np power basis by
    /// solving the linear system over the ζ_n basis.
    fn rebase_solve(n: u64, coeffs: &BTreeMap<u64, BigRational>, np: u64) -> BTreeMap<u64, BigRational> {
        let phi = euler_phi(n) as usize;
        let phip = euler_phi(np) as usize;
        let step = n / np;
        // Columns: canonical ζ_n^{j*step} for j < φ(np); last column: target.
        let mut mat = vec![vec![BigRational::zero(); phip + 1]; phi];
        for j in 0..phip {
            let mut raw = BTreeMap::new();
            raw.insert(j as u64 * step % n, rat_int(1));
            for (e, c) in Self::reduce_mod_phi(n, raw) {
                mat[e as usize][j] = c;
            }
        }
        for (e, c) in coeffs {
            mat[*e as usize][phip] = c.clone();
        }
        // Gaussian elimination; the system is consistent by construction.
        let mut row = 0;
        let mut pivots = Vec::new();
        for col in 0..phip {
            let Some(pr) = (row..phi).find(|&r| !mat[r][col].is_zero()) else {
                continue;
            };
            mat.swap(row, pr);
            let inv = mat[row][col].recip();
            for x in mat[row].iter_mut() {
                *x *= &inv;
            }
            for r in 0..phi {
                if r != row && !mat[r][col].is_zero() {
                    let f = mat[r][col].clone();
                    for col2 in 0..=phip {
                        let t = &mat[row][col2] * &f;
                        mat[r][col2] -= t;
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
        }
        for r in row..phi {
            assert!(mat[r][phip].is_zero(), "rebase target not in subfield");
        }
        let mut out = BTreeMap::new();
        for (r, col) in pivots {
            if !mat[r][phip].is_zero() {
                out.insert(col as u64, mat[r][phip].clone());
            }
        }
        Self::reduce_mod_phi(np, out)
    }

    // -- field operations ---------------------------------------------------

    fn lift_raw(&self, l: u64) -> BTreeMap<u64, BigRational> {
        let f = l / self.conductor;
        self.coeffs.iter().map(|(e, c)| (e * f, c.clone())).collect()
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let l = self.conductor.lcm(&other.conductor);
        let mut raw = self.lift_raw(l);
        for (e, c) in other.lift_raw(l) {
            let entry = raw.entry(e).or_insert_with(BigRational::zero);
            *entry += c;
        }
        Cyclotomic::canonical(l, raw)
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let l = self.conductor.lcm(&other.conductor);
        let a = self.lift_raw(l);
        let b = other.lift_raw(l);
        let mut raw: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e = (ea + eb) % l;
                let entry = raw.entry(e).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        Cyclotomic::canonical(l, raw)
    }

    pub fn scale(&self, r: &BigRational) -> Cyclotomic {
        if r.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Cyclotomic {
        let mut acc = Cyclotomic::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Cyclotomic::from_rational(r.recip()));
        }
        // x * conj(x) is often rational (always for scaled roots of unity);
        // fall back to a linear solve otherwise.
        let c = self.conj();
        let norm = self.mul(&c);
        if let Some(r) = norm.as_rational() {
            return Some(c.scale(&r.recip()));
        }
        let n = self.conductor;
        let phi = euler_phi(n) as usize;
        let mut mat = vec![vec![BigRational::zero(); phi + 1]; phi];
        for j in 0..phi {
            let col = self.mul(&Cyclotomic::root_of_unity(n, j as i64));
            for (e, cc) in col.lift_raw(n) {
                let red = Self::reduce_mod_phi(n, BTreeMap::from([(e, cc)]));
                for (ee, c2) in red {
                    mat[ee as usize][j] += c2;
                }
            }
        }
        mat[0][phi] = rat_int(1);
        let mut row = 0;
        let mut pivots = Vec::new();
        for col in 0..phi {
            let Some(pr) = (row..phi).find(|&r| !mat[r][col].is_zero()) else {
                continue;
            };
            mat.swap(row, pr);
            let invp = mat[row][col].recip();
            for x in mat[row].iter_mut() {
                *x *= &invp;
            }
            for r in 0..phi {
                if r != row && !mat[r][col].is_zero() {
                    let f = mat[r][col].clone();
                    for c2 in 0..=phi {
                        let t = &mat[row][c2] * &f;
                        mat[r][c2] -= t;
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
        }
        let mut raw = BTreeMap::new();
        for (r, col) in pivots {
            if !mat[r][phi].is_zero() {
                raw.insert(col as u64, mat[r][phi].clone());
            }
        }
        Some(Cyclotomic::canonical(n, raw))
    }

    /// Galois automorphism ζ_N ↦ ζ_N^j for gcd(j, N) = 1.
    pub fn galois(&self, j: u64) -> Cyclotomic {
        let n = self.conductor;
        let j = j % n;
        assert!(j.gcd(&n) == 1, "galois index must be coprime to the conductor");
        let raw: BTreeMap<u64, BigRational> =
            self.coeffs.iter().map(|(e, c)| (e * j % n, c.clone())).collect();
        // Conjugates stay in the same field; no re-minimization needed.
        Cyclotomic {
            conductor: n,
            coeffs: Self::reduce_mod_phi(n, raw),
        }
    }

    /// Complex conjugation: ζ_N ↦ ζ_N^{-1}.
    pub fn conj(&self) -> Cyclotomic {
        if self.conductor == 1 {
            return self.clone();
        }
        self.galois(self.conductor - 1)
    }

    /// Exact accumulation of many terms, minimizing the conductor only once.
    pub fn sum<I: IntoIterator<Item = Cyclotomic>>(terms: I) -> Cyclotomic {
        let mut l: u64 = 1;
        let mut raw: BTreeMap<u64, BigRational> = BTreeMap::new();
        for t in terms {
            if t.is_zero() {
                continue;
            }
            let nl = l.lcm(&t.conductor);
            if nl != l {
                let f = nl / l;
                raw = raw.into_iter().map(|(e, c)| (e * f, c)).collect();
                l = nl;
            }
            let f = l / t.conductor;
            for (e, c) in &t.coeffs {
                let entry = raw.entry(e * f).or_insert_with(BigRational::zero);
                *entry += c;
            }
        }
        Cyclotomic::canonical(l, raw)
    }

    /// If the value is ζ_k^e for some e (a k-th root of unity, not
    /// necessarily primitive), return e.
    pub fn as_root_of_unity_mod(&self, k: u64) -> Option<u64> {
        for e in 0..k {
            if *self == Cyclotomic::root_of_unity(k, e as i64) {
                return Some(e);
            }
        }
        None
    }

    /// Exact nonnegativity certificate for rational values; None when the
    /// value is irrational (callers treat that as "not certified").
    pub fn is_nonnegative_rational(&self) -> Option<bool> {
        self.as_rational().map(|r| !r.is_negative())
    }

    /// Debug-only complex embedding at ζ_N = exp(2πi/N). Never used in
    /// comparisons.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in &self.coeffs {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * (*e as f64) / n;
            re += cf * ang.cos();
            im += cf * ang.sin();
        }
        (re, im)
    }

    // -- serialization ------------------------------------------------------

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(e, c)| {
                serde_json::json!([e, format!("{}/{}", c.numer(), c.denom())])
            })
            .collect();
        serde_json::json!({ "conductor": self.conductor, "coeffs": coeffs })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Cyclotomic> {
        let n = v.get("conductor")?.as_u64()?;
        let mut raw = BTreeMap::new();
        for pair in v.get("coeffs")?.as_array()? {
            let e = pair.get(0)?.as_u64()?;
            let s = pair.get(1)?.as_str()?;
            let (num, den) = s.split_once('/')?;
            let r = BigRational::new(num.parse().ok()?, den.parse().ok()?);
            raw.insert(e, r);
        }
        Some(Cyclotomic::canonical(n, raw))
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Deterministic total order on canonical forms (conductor, then sparse
/// coefficient vector); used only for reproducible sorting, not magnitude.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then_with(|| self.coeffs.iter().cmp(other.coeffs.iter()))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *e == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                write!(f, "z{}", self.conductor)?;
                if *e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta4_squared_is_minus_one() {
        assert_eq!(Cyclotomic::root_of_unity(4, 2), Cyclotomic::from_int(-1));
        assert_eq!(Cyclotomic::root_of_unity(1, 0), Cyclotomic::one());
    }

    #[test]
    fn zeta3_sum_is_minus_one() {
        let a = Cyclotomic::root_of_unity(3, 1);
        let b = Cyclotomic::root_of_unity(3, 2);
        assert_eq!(a.add(&b), Cyclotomic::from_int(-1));
    }

    #[test]
    fn conj_examples() {
        let i = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(i.conj(), Cyclotomic::root_of_unity(4, 3));
        assert_eq!(i.conj(), i.neg());
        assert_eq!(Cyclotomic::from_int(5).conj(), Cyclotomic::from_int(5));
        let z3 = Cyclotomic::root_of_unity(3, 1);
        assert_eq!(z3.conj(), Cyclotomic::root_of_unity(3, 2));
    }

    #[test]
    fn conductor_is_minimal() {
        // ζ_6 lies in Q(ζ_3): conductor must come out as 3.
        let z6 = Cyclotomic::root_of_unity(6, 1);
        assert_eq!(z6.conductor(), 3);
        assert_eq!(z6.pow(6), Cyclotomic::one());
        assert_eq!(z6.pow(3), Cyclotomic::from_int(-1));
        // ζ_8 + ζ_8^{-1} = √2 has conductor 8.
        let z8 = Cyclotomic::root_of_unity(8, 1);
        let sqrt2 = z8.add(&z8.conj());
        assert_eq!(sqrt2.conductor(), 8);
        assert_eq!(sqrt2.mul(&sqrt2), Cyclotomic::from_int(2));
        // ζ_5 + ζ_5^4 has conductor 5 and satisfies x² + x - 1 = 0.
        let z5 = Cyclotomic::root_of_unity(5, 1);
        let x = z5.add(&z5.conj());
        assert_eq!(x.conductor(), 5);
        assert_eq!(x.mul(&x).add(&x), Cyclotomic::one());
    }

    #[test]
    fn inverse_roots() {
        for n in 1..=16u64 {
            for e in 1..n {
                let a = Cyclotomic::root_of_unity(n, e as i64);
                let b = Cyclotomic::root_of_unity(n, (n - e) as i64);
                assert_eq!(a.mul(&b), Cyclotomic::one());
                assert_eq!(a.inv().unwrap(), b);
            }
        }
    }

    #[test]
    fn geometric_sums_vanish() {
        for n in 2..=20u64 {
            let s = Cyclotomic::sum((0..n).map(|e| Cyclotomic::root_of_unity(n, e as i64)));
            assert!(s.is_zero(), "sum of all {}-th roots", n);
        }
    }

    #[test]
    fn json_roundtrip() {
        let z = Cyclotomic::root_of_unity(12, 7)
            .scale(&BigRational::new(BigInt::from(3), BigInt::from(2)))
            .add(&Cyclotomic::from_int(4));
        let j = z.to_json();
        assert_eq!(Cyclotomic::from_json(&j).unwrap(), z);
    }
}
