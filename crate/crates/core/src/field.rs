//! Finite fields GF(p^n) backed by precomputed tables.
//!
//! Elements are encoded by their coefficient index `Σ c_i p^i` in the
//! polynomial basis. The modulus is the lexicographically smallest monic
//! irreducible polynomial (coefficients compared constant term first) and the
//! primitive element is the smallest index of full multiplicative order, so
//! every field of a given order is realized the same way on every run.
//!
//! Besides the index order there is a *canonical* order used for display,
//! coset labeling and rendering: `0 < 1 < m < m^2 < ...`, i.e. zero first and
//! then nonzero elements by their discrete logarithm.

use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};

/// Largest field order this crate will build tables for.
pub const MAX_ORDER: usize = 1024;

/// One element of a [`FieldSpec`], stored as its coefficient index.
///
/// The derived `Ord` follows the index, not the canonical order; use
/// [`FieldSpec::rank`] when canonical ordering matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    p: u32,
    n: u32,
    d: usize,
    modulus: Vec<u32>,
    primitive: FieldElement,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    trace: Vec<u16>,
    // log[a] for a != 0; exp[k] = primitive^k for k < d - 1
    log: Vec<u32>,
    exp: Vec<u16>,
    rank: Vec<u16>,
    by_rank: Vec<u16>,
}

/// A concrete realization of GF(p^n). Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec {
    t: Arc<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.t.p, self.t.n)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p && self.t.n == other.t.n && self.t.modulus == other.t.modulus)
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Splits `d` as `p^n` with `p` prime, if possible.
pub fn prime_power(d: usize) -> Option<(u32, u32)> {
    if d < 2 {
        return None;
    }
    let p = (2..=d).find(|&k| d.is_multiple_of(k))?;
    let mut rest = d;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p as u32, n))
}

// Polynomials over Z_p are coefficient vectors, constant term first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn pow_mod(b: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut base = (b % p) as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    r as u32
}

fn digits(mut index: usize, p: u32, n: u32) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let c = (index % p as usize) as u32;
            index /= p as usize;
            c
        })
        .collect()
}

fn undigits(coeffs: &[u32], p: u32) -> usize {
    coeffs.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// True iff the monic polynomial `m` has no monic factor of degree `1..=deg/2`.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for k in 1..=deg / 2 {
        let count = (p as usize).pow(k as u32);
        for low in 0..count {
            let mut f = digits(low, p, k as u32);
            f.push(1);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds GF(p^n).
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(invalid(format!("p must be prime (got {p})")));
        }
        if n < 1 {
            return Err(invalid("n must be at least 1"));
        }
        let d = (p as u128).checked_pow(n).unwrap_or(u128::MAX);
        if d > MAX_ORDER as u128 {
            return Err(Error::UnsupportedOrder {
                order: usize::try_from(d).unwrap_or(usize::MAX),
                reason: format!("field order must not exceed {MAX_ORDER}"),
            });
        }
        let d = d as usize;

        // Lexicographic order with the constant term most significant.
        let modulus = (0..d)
            .map(|t| {
                let mut c: Vec<u32> = digits(t, p, n).into_iter().rev().collect();
                c.push(1);
                c
            })
            .find(|c| is_irreducible(c, p))
            .expect("an irreducible polynomial of every degree exists");

        let order_of = |g: usize| -> usize {
            let gc = digits(g, p, n);
            let mut acc = gc.clone();
            let mut k = 1;
            loop {
                let mut padded = acc.clone();
                padded.resize(n as usize, 0);
                if undigits(&padded, p) == 1 {
                    return k;
                }
                acc = poly_mulmod(&acc, &gc, &modulus, p);
                k += 1;
            }
        };
        let primitive = (1..d).find(|&g| order_of(g) == d - 1).expect("multiplicative group is cyclic");

        let mut exp = Vec::with_capacity(d - 1);
        let mut log = vec![0u32; d];
        let prim_coeffs = digits(primitive, p, n);
        let mut acc = vec![1u32];
        for k in 0..d - 1 {
            let mut padded = acc.clone();
            padded.resize(n as usize, 0);
            let idx = undigits(&padded, p);
            exp.push(idx as u16);
            log[idx] = k as u32;
            acc = poly_mulmod(&acc, &prim_coeffs, &modulus, p);
        }

        let mut add = vec![0u16; d * d];
        let mut neg = vec![0u16; d];
        for a in 0..d {
            let ca = digits(a, p, n);
            let na: Vec<u32> = ca.iter().map(|&c| (p - c) % p).collect();
            neg[a] = undigits(&na, p) as u16;
            for b in 0..d {
                let cb = digits(b, p, n);
                let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[a * d + b] = undigits(&s, p) as u16;
            }
        }

        let q = d - 1;
        let mut mul = vec![0u16; d * d];
        let mut inv = vec![0u16; d];
        for a in 1..d {
            inv[a] = exp[(q - log[a] as usize) % q];
            for b in 1..d {
                mul[a * d + b] = exp[(log[a] as usize + log[b] as usize) % q];
            }
        }

        let mut trace = vec![0u16; d];
        for a in 1..d {
            let mut s = 0usize;
            let mut e = log[a] as u64;
            for _ in 0..n {
                s = add[s * d + exp[(e % q as u64) as usize] as usize] as usize;
                e = e * p as u64 % q as u64;
            }
            trace[a] = s as u16;
        }

        let mut rank = vec![0u16; d];
        let mut by_rank = vec![0u16; d];
        for (k, &idx) in exp.iter().enumerate() {
            rank[idx as usize] = (k + 1) as u16;
            by_rank[k + 1] = idx;
        }

        Ok(FieldSpec {
            t: Arc::new(Tables {
                p,
                n,
                d,
                modulus,
                primitive: FieldElement(primitive as u16),
                add,
                mul,
                neg,
                inv,
                trace,
                log,
                exp,
                rank,
                by_rank,
            }),
        })
    }

    /// Builds the field with `d` elements.
    pub fn with_order(d: usize) -> Result<Self> {
        let (p, n) = prime_power(d).ok_or_else(|| invalid(format!("{d} is not a prime power")))?;
        Self::new(p, n)
    }

    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.n
    }

    pub fn order(&self) -> usize {
        self.t.d
    }

    /// Monic modulus, constant term first (length `n + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn primitive(&self) -> FieldElement {
        self.t.primitive
    }

    pub fn element(&self, index: usize) -> Result<FieldElement> {
        if index < self.t.d {
            Ok(FieldElement(index as u16))
        } else {
            Err(invalid(format!("element index {index} out of range for {self:?}")))
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.index() < self.t.d
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.t.n as usize || coeffs.iter().any(|&c| c >= self.t.p) {
            return Err(invalid(format!("bad coefficient vector {coeffs:?} for {self:?}")));
        }
        Ok(FieldElement(undigits(coeffs, self.t.p) as u16))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        digits(a.index(), self.t.p, self.t.n)
    }

    /// The image of the integer `k` in the prime subfield.
    pub fn scalar(&self, k: u32) -> FieldElement {
        FieldElement((k % self.t.p) as u16)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.t.d).map(|i| FieldElement(i as u16))
    }

    /// All elements in canonical order `0, 1, m, m^2, ...`.
    pub fn canonical_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.t.by_rank.iter().map(|&i| FieldElement(i))
    }

    pub fn rank(&self, a: FieldElement) -> usize {
        self.t.rank[a.index()] as usize
    }

    pub fn element_at_rank(&self, r: usize) -> FieldElement {
        FieldElement(self.t.by_rank[r])
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.t.add[a.index() * self.t.d + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.t.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.t.mul[a.index() * self.t.d + b.index()])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(FieldElement(self.t.inv[a.index()]))
        }
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let q = (self.t.d - 1) as u64;
        FieldElement(self.t.exp[((self.t.log[a.index()] as u64 % q) * (e % q) % q) as usize])
    }

    /// `m^k` for the primitive element `m`.
    pub fn primitive_power(&self, k: u64) -> FieldElement {
        FieldElement(self.t.exp[(k % (self.t.d as u64 - 1)) as usize])
    }

    /// Discrete logarithm base the primitive element; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.t.log[a.index()])
    }

    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.t.p as u64)
    }

    /// `a + a^p + ... + a^(p^(n-1))`, an element of the prime subfield.
    #[inline]
    pub fn trace(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.t.trace[a.index()])
    }

    /// The additive subgroup `K` of trace-zero elements, in canonical order.
    pub fn trace_zero_set(&self) -> Vec<FieldElement> {
        self.canonical_elements().filter(|&a| self.trace(a).is_zero()).collect()
    }

    pub fn in_prime_subfield(&self, a: FieldElement) -> bool {
        a.index() < self.t.p as usize
    }

    /// Renders `a` as `0`, `1`, `m` or `m^k`.
    pub fn format_element(&self, a: FieldElement) -> String {
        match self.log(a) {
            None => "0".to_string(),
            Some(0) => "1".to_string(),
            Some(1) => "m".to_string(),
            Some(k) => format!("m^{k}"),
        }
    }

    /// Parses the `0`, `1`, `m`, `m^k` syntax.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        match s {
            "0" => return Ok(FieldElement::ZERO),
            "1" => return Ok(FieldElement::ONE),
            "m" => return Ok(self.primitive()),
            _ => {}
        }
        let k = s
            .strip_prefix("m^")
            .and_then(|e| e.parse::<u64>().ok())
            .ok_or_else(|| invalid(format!("cannot parse field element '{s}' (expected 0, 1, m or m^k)")))?;
        Ok(self.primitive_power(k))
    }

    /// The modulus as a human-readable polynomial, e.g. `x^2 + x + 1`.
    pub fn format_modulus(&self) -> String {
        let terms: Vec<String> = self
            .t
            .modulus
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
                match i {
                    0 => c.to_string(),
                    1 => format!("{coef}x"),
                    _ => format!("{coef}x^{i}"),
                }
            })
            .collect();
        terms.join(" + ")
    }
}
