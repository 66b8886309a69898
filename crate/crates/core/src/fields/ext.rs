//! Extension fields GF(p^d) as GF(p)[t] modulo a monic irreducible.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::{Field, FieldError, PrimeField, Ring};

/// GF(p^d). Elements are dense coefficient vectors of length exactly `d`
/// (index = power of `t`), which makes equality structural.
#[derive(Debug, Clone)]
pub struct ExtField {
    base: PrimeField,
    degree: usize,
    /// monic, length `degree + 1`, trailing coefficient 1
    modulus: Arc<Vec<u64>>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.modulus == other.modulus
    }
}

impl ExtField {
    /// GF(p^d) reduced by the canonical (smallest) monic irreducible of
    /// degree `d` over GF(p).
    pub fn new(p: u64, d: usize) -> Result<Self, FieldError> {
        let base = PrimeField::new(p)?;
        if d == 0 {
            return Err(FieldError::BadDegree);
        }
        let modulus = find_irreducible(base, d);
        Ok(ExtField {
            base,
            degree: d,
            modulus: Arc::new(modulus),
        })
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus_poly(&self) -> &[u64] {
        &self.modulus
    }

    /// The generator `t` (for d = 1: the zero element, since t = 0 then).
    pub fn gen(&self) -> Vec<u64> {
        let mut v = vec![0; self.degree];
        if self.degree > 1 {
            v[1] = 1;
        } else {
            // t is reduced by the degree-1 modulus t + c
            v[0] = self.base.neg(&self.modulus[0]);
        }
        v
    }

    /// Element from an integer index in `[0, p^d)`, digits base `p` with the
    /// constant coefficient least significant.
    pub fn elem_from_index(&self, mut idx: u128) -> Vec<u64> {
        let p = self.base.modulus() as u128;
        let mut v = vec![0u64; self.degree];
        for c in v.iter_mut() {
            *c = (idx % p) as u64;
            idx /= p;
        }
        v
    }

    fn reduce(&self, mut poly: Vec<u64>) -> Vec<u64> {
        upoly_rem_in_place(self.base, &mut poly, &self.modulus);
        poly.resize(self.degree, 0);
        poly
    }
}

impl Ring for ExtField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree]
    }

    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.degree];
        v[0] = self.base.one();
        v
    }

    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn is_one(&self, a: &Vec<u64>) -> bool {
        a == &self.one()
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.base.add(x, y))
            .collect()
    }

    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.base.sub(x, y))
            .collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.reduce(upoly_mul(self.base, a, b))
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn fmt_elem(&self, a: &Vec<u64>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero(a) {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in a.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "t")?,
                1 => write!(f, "{c}*t")?,
                _ if c == 1 => write!(f, "t^{i}")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Field for ExtField {
    type Prime = PrimeField;

    fn inv(&self, a: &Vec<u64>) -> Result<Vec<u64>, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        let (g, s) = upoly_half_egcd(self.base, a, &self.modulus);
        // modulus irreducible => gcd is a nonzero constant
        debug_assert_eq!(upoly_deg(&g), Some(0));
        let scale = self.base.inv(&g[0])?;
        let mut inv: Vec<u64> = s.iter().map(|c| self.base.mul(c, &scale)).collect();
        inv.resize(self.degree.max(inv.len()), 0);
        Ok(self.reduce(inv))
    }

    fn prime_subfield(&self) -> PrimeField {
        self.base
    }

    fn from_prime(&self, a: &u64) -> Vec<u64> {
        let mut v = vec![0; self.degree];
        v[0] = self.base.elem(*a);
        v
    }

    fn characteristic(&self) -> u64 {
        self.base.modulus()
    }

    fn order(&self) -> Option<u128> {
        (self.base.modulus() as u128).checked_pow(self.degree as u32)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.degree).map(|_| self.base.sample(rng)).collect()
    }

    fn elements(&self) -> Option<Vec<Vec<u64>>> {
        let order = self.order()?;
        if order > 1 << 24 {
            return None;
        }
        Some((0..order).map(|i| self.elem_from_index(i)).collect())
    }
}

/// The lexicographically smallest monic irreducible of degree `d` over
/// GF(p): candidates are scanned by ascending value of the non-leading
/// coefficient vector (constant coefficient least significant).
pub fn find_irreducible(base: PrimeField, d: usize) -> Vec<u64> {
    let p = base.modulus();
    if d == 1 {
        return vec![0, 1]; // t itself
    }
    let total = (p as u128).checked_pow(d as u32).expect("field too large");
    for idx in 0..total {
        let mut f = Vec::with_capacity(d + 1);
        let mut rest = idx;
        for _ in 0..d {
            f.push((rest % p as u128) as u64);
            rest /= p as u128;
        }
        f.push(1);
        if is_irreducible(base, &f) {
            return f;
        }
    }
    unreachable!("a monic irreducible of every degree exists over GF(p)")
}

/// Rabin irreducibility: f (monic, degree d) is irreducible over GF(p) iff
/// x^(p^d) = x mod f and gcd(x^(p^(d/q)) - x, f) = 1 for every prime q | d.
fn is_irreducible(base: PrimeField, f: &[u64]) -> bool {
    let d = upoly_deg(f).expect("nonzero");
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let p = base.modulus();
    let x = vec![0u64, 1];
    for q in prime_divisors(d as u64) {
        let e = (d as u64) / q;
        let xpe = upoly_pow_ppow_mod(base, &x, e, f);
        let diff = upoly_sub(base, &xpe, &x);
        let g = upoly_gcd(base, &diff, f);
        if upoly_deg(&g) != Some(0) {
            return false;
        }
    }
    let xpd = upoly_pow_ppow_mod(base, &x, d as u64, f);
    let diff = upoly_sub(base, &xpd, &x);
    upoly_deg(&diff).is_none()
        && p != 0 // always true; keeps the check explicit
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// --- dense univariate arithmetic over GF(p), coefficient index = power ---

fn upoly_deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn upoly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn upoly_sub(base: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = base.sub(&x, &y);
    }
    upoly_trim(&mut out);
    out
}

fn upoly_mul(base: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if upoly_deg(a).is_none() || upoly_deg(b).is_none() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if *y == 0 {
                continue;
            }
            out[i + j] = base.add(&out[i + j], &base.mul(x, y));
        }
    }
    upoly_trim(&mut out);
    out
}

/// In-place remainder by a monic divisor.
fn upoly_rem_in_place(base: PrimeField, a: &mut Vec<u64>, m: &[u64]) {
    let dm = upoly_deg(m).expect("monic modulus");
    debug_assert_eq!(m[dm], 1);
    while let Some(da) = upoly_deg(a) {
        if da < dm {
            break;
        }
        let lead = a[da];
        let shift = da - dm;
        for (i, &mc) in m.iter().enumerate().take(dm + 1) {
            if mc != 0 {
                let sub = base.mul(&lead, &mc);
                a[shift + i] = base.sub(&a[shift + i], &sub);
            }
        }
        debug_assert_eq!(a[da], 0);
    }
    upoly_trim(a);
}

fn upoly_mulmod(base: PrimeField, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    let mut prod = upoly_mul(base, a, b);
    upoly_rem_in_place(base, &mut prod, m);
    prod
}

/// a^(p^e) mod m via repeated p-th powering.
fn upoly_pow_ppow_mod(base: PrimeField, a: &[u64], e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = a.to_vec();
    upoly_rem_in_place(base, &mut acc, m);
    for _ in 0..e {
        acc = upoly_powmod(base, &acc, base.modulus(), m);
    }
    acc
}

fn upoly_powmod(base: PrimeField, a: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![base.one()];
    let mut sq = a.to_vec();
    upoly_rem_in_place(base, &mut sq, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = upoly_mulmod(base, &acc, &sq, m);
        }
        sq = upoly_mulmod(base, &sq, &sq, m);
        e >>= 1;
    }
    acc
}

fn upoly_gcd(base: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    upoly_trim(&mut a);
    upoly_trim(&mut b);
    while upoly_deg(&b).is_some() {
        let r = upoly_rem(base, &a, &b);
        a = std::mem::replace(&mut b, r);
    }
    a
}

fn upoly_rem(base: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let db = upoly_deg(b).expect("division by zero polynomial");
    let lead_inv = Field::inv(&base, &b[db]).expect("prime field");
    let mut r = a.to_vec();
    while let Some(dr) = upoly_deg(&r) {
        if dr < db {
            break;
        }
        let q = base.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            if bc != 0 {
                let sub = base.mul(&q, &bc);
                r[shift + i] = base.sub(&r[shift + i], &sub);
            }
        }
    }
    upoly_trim(&mut r);
    r
}

/// Returns (gcd, s) with s*a = gcd mod m.
fn upoly_half_egcd(base: PrimeField, a: &[u64], m: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut r0 = a.to_vec();
    let mut r1 = m.to_vec();
    upoly_trim(&mut r0);
    upoly_trim(&mut r1);
    let mut s0 = vec![base.one()];
    let mut s1 = Vec::new();
    while upoly_deg(&r1).is_some() {
        let (q, r) = upoly_divrem(base, &r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
        let qs1 = upoly_mul(base, &q, &s1);
        let next = upoly_sub(base, &s0, &qs1);
        s0 = std::mem::replace(&mut s1, next);
    }
    (r0, s0)
}

fn upoly_divrem(base: PrimeField, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let db = upoly_deg(b).expect("division by zero polynomial");
    let lead_inv = Field::inv(&base, &b[db]).expect("prime field");
    let mut r = a.to_vec();
    upoly_trim(&mut r);
    let mut q = vec![0u64; r.len().saturating_sub(db).max(1)];
    while let Some(dr) = upoly_deg(&r) {
        if dr < db {
            break;
        }
        let c = base.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        q[shift] = base.add(&q[shift], &c);
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            if bc != 0 {
                let sub = base.mul(&c, &bc);
                r[shift + i] = base.sub(&r[shift + i], &sub);
            }
        }
    }
    upoly_trim(&mut q);
    upoly_trim(&mut r);
    (q, r)
}
