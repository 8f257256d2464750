//! Exact arithmetic in GF(p^n).
//!
//! Elements are encoded as integers `enc = Σ x_i p^i` where `x = Σ x_i α^i` in the
//! polynomial basis of the field modulus. This encoding is used for every file
//! format and every CLI output.
//!
//! When `p^n` is at most the table limit, multiplication goes through discrete
//! log tables built from a fixed primitive element; above it, every product is a
//! schoolbook polynomial product reduced by the modulus.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 24;
/// Default bound on `p^n` for building exp/log tables.
pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 20;

/// A field element in the canonical base-p digit encoding.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Wraps an encoding without range checking; see [`FieldCtx::elem`].
    #[inline]
    pub const fn from_enc(enc: u32) -> Elem {
        Elem(enc)
    }

    #[inline]
    pub const fn enc(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct LogTables {
    // exp has length 2(q-1) so that exp[log a + log b] needs no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Immutable description of GF(p^n).
pub struct FieldCtx {
    p: u32,
    n: u32,
    order: u32,
    modulus: u64,
    mod_coeffs: Vec<u32>,
    canonical: bool,
    prim: Elem,
    tables: Option<LogTables>,
    subfields: Vec<(u32, OnceLock<Subfield>)>,
    abs_trace: OnceLock<Vec<u32>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.spec_string())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn digits_of(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = (v % p as u64) as u32;
        v /= p as u64;
    }
    out
}

/// Remainder of `a` modulo the monic-or-not polynomial `b` over F_p (low degree first).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let t = (top as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = r.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                let sub = (t as u64 * bi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Trial division by every monic polynomial of degree 1..=n/2.
fn is_irreducible(coeffs: &[u32], p: u32) -> bool {
    let n = coeffs.len() - 1;
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut divisor = digits_of(low, p, d);
            divisor.push(1);
            if poly_rem(coeffs, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `n`, i.e. the smallest
/// coefficient integer in `[p^n, 2 p^n)` that is irreducible.
pub fn canonical_modulus(p: u32, n: u32) -> u64 {
    let q = (p as u64).pow(n);
    (q..2 * q)
        .find(|&m| is_irreducible(&digits_of(m, p, n as usize + 1), p))
        .expect("an irreducible polynomial exists in every degree")
}

impl FieldCtx {
    /// Builds GF(p^n) with the given modulus, or the canonical one when `None`.
    pub fn new(p: u32, n: u32, modulus: Option<u64>) -> Result<Arc<FieldCtx>> {
        Self::with_table_limit(p, n, modulus, DEFAULT_TABLE_LIMIT)
    }

    /// As [`FieldCtx::new`] with an explicit bound for the exp/log tables.
    pub fn with_table_limit(
        p: u32,
        n: u32,
        modulus: Option<u64>,
        table_limit: u64,
    ) -> Result<Arc<FieldCtx>> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::BadParameters("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(n).filter(|&q| q <= MAX_ORDER);
        let q = q.ok_or(Error::FieldTooLarge { p, n })?;
        let canonical_mod = canonical_modulus(p, n);
        let modulus = match modulus {
            Some(m) => {
                if m < q || m >= 2 * q {
                    return Err(Error::DegreeMismatch { modulus: m, degree: n });
                }
                if !is_irreducible(&digits_of(m, p, n as usize + 1), p) {
                    return Err(Error::ReducibleModulus(m));
                }
                m
            }
            None => canonical_mod,
        };
        let mod_coeffs = digits_of(modulus, p, n as usize + 1);
        let subfields = (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .map(|d| (d, OnceLock::new()))
            .collect();
        let mut ctx = FieldCtx {
            p,
            n,
            order: q as u32,
            modulus,
            mod_coeffs,
            canonical: modulus == canonical_mod,
            prim: Elem::ONE,
            tables: None,
            subfields,
            abs_trace: OnceLock::new(),
        };
        ctx.prim = ctx.find_primitive();
        if q <= table_limit {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(Arc::new(ctx))
    }

    /// Parses `gf(p^n)` or `gf(p^n;mod=M)`.
    pub fn from_spec_str(s: &str) -> Result<Arc<FieldCtx>> {
        let bad = || Error::Parse(format!("bad field spec {s:?}, expected gf(p^n) or gf(p^n;mod=M)"));
        let inner = s
            .trim()
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (pn, modulus) = match inner.split_once(';') {
            Some((pn, rest)) => {
                let m = rest.trim().strip_prefix("mod=").ok_or_else(bad)?;
                (pn, Some(m.trim().parse::<u64>().map_err(|_| bad())?))
            }
            None => (inner, None),
        };
        let (p, n) = pn.split_once('^').ok_or_else(bad)?;
        let p = p.trim().parse::<u32>().map_err(|_| bad())?;
        let n = n.trim().parse::<u32>().map_err(|_| bad())?;
        FieldCtx::new(p, n, modulus)
    }

    /// The canonical `gf(...)` string for this field.
    pub fn spec_string(&self) -> String {
        if self.canonical {
            format!("gf({}^{})", self.p, self.n)
        } else {
            format!("gf({}^{};mod={})", self.p, self.n, self.modulus)
        }
    }

    fn find_primitive(&self) -> Elem {
        let q1 = self.order as u64 - 1;
        let factors = prime_factors(q1);
        (1..self.order)
            .map(Elem)
            .find(|&g| factors.iter().all(|&r| self.pow_poly(g, q1 / r) != Elem::ONE))
            .expect("multiplicative group is cyclic")
    }

    fn build_tables(&self) -> LogTables {
        let q1 = self.order as usize - 1;
        let mut exp = vec![0u32; 2 * q1.max(1)];
        let mut log = vec![0u32; self.order as usize];
        let mut x = Elem::ONE;
        for (i, slot) in exp.iter_mut().take(q1).enumerate() {
            *slot = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_poly(x, self.prim);
        }
        exp.copy_within(0..q1, q1);
        LogTables { exp, log }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `p^n`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficient integer of the modulus, leading term included.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn primitive_element(&self) -> Elem {
        self.prim
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// Range-checked element construction.
    pub fn elem(&self, enc: u32) -> Result<Elem> {
        if enc < self.order {
            Ok(Elem(enc))
        } else {
            Err(Error::BadParameters(format!(
                "{enc} is not an element of {}",
                self.spec_string()
            )))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.order).map(Elem)
    }

    /// The image of the integer `k` in the prime subfield.
    pub fn scalar(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        digits_of(x.0 as u64, self.p, self.n as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Elem {
        let mut enc = 0u32;
        for &c in coeffs.iter().rev() {
            enc = enc * self.p + c % self.p;
        }
        Elem(enc)
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        if self.p == 2 {
            return Elem(x.0 ^ y.0);
        }
        let p = self.p;
        let (mut a, mut b) = (x.0, y.0);
        let (mut r, mut place) = (0u32, 1u32);
        while a != 0 || b != 0 {
            let d = a % p + b % p;
            r += if d >= p { d - p } else { d } * place;
            a /= p;
            b /= p;
            place *= p;
        }
        Elem(r)
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        if self.p == 2 {
            return x;
        }
        let p = self.p;
        let mut a = x.0;
        let (mut r, mut place) = (0u32, 1u32);
        while a != 0 {
            let d = a % p;
            if d != 0 {
                r += (p - d) * place;
            }
            a /= p;
            place *= p;
        }
        Elem(r)
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.0 == 0 || y.0 == 0 {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => Elem(t.exp[(t.log[x.0 as usize] + t.log[y.0 as usize]) as usize]),
            None => self.mul_poly(x, y),
        }
    }

    /// Schoolbook product reduced by the modulus; the table-free path.
    pub fn mul_poly(&self, x: Elem, y: Elem) -> Elem {
        if self.p == 2 {
            let top = 1u64 << self.n;
            let (mut a, mut b, mut r) = (x.0 as u64, y.0 as u64, 0u64);
            while b != 0 {
                if b & 1 == 1 {
                    r ^= a;
                }
                b >>= 1;
                a <<= 1;
                if a & top != 0 {
                    a ^= self.modulus;
                }
            }
            return Elem(r as u32);
        }
        let n = self.n as usize;
        let p = self.p as u64;
        let a = self.coeffs(x);
        let b = self.coeffs(y);
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p;
            }
        }
        // The modulus is monic: x^n = -Σ m_i x^i.
        for k in (n..2 * n - 1).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..n {
                let m = self.mod_coeffs[i] as u64;
                prod[k - n + i] = (prod[k - n + i] + (p - t) * m) % p;
            }
        }
        let mut enc = 0u64;
        for &c in prod[..n].iter().rev() {
            enc = enc * p + c;
        }
        Elem(enc as u32)
    }

    fn pow_poly(&self, x: Elem, mut k: u64) -> Elem {
        let mut base = x;
        let mut r = Elem::ONE;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul_poly(r, base);
            }
            base = self.mul_poly(base, base);
            k >>= 1;
        }
        r
    }

    /// `x^k` with `0^0 = 1`; the exponent is reduced mod `p^n - 1` for nonzero `x`.
    pub fn pow(&self, x: Elem, k: u64) -> Elem {
        if x.0 == 0 {
            return if k == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let q1 = self.order as u64 - 1;
        let k = k % q1;
        match &self.tables {
            Some(t) => {
                let e = (t.log[x.0 as usize] as u64 * k) % q1;
                Elem(t.exp[e as usize])
            }
            None => {
                let mut base = x;
                let mut r = Elem::ONE;
                let mut k = k;
                while k > 0 {
                    if k & 1 == 1 {
                        r = self.mul(r, base);
                    }
                    base = self.mul(base, base);
                    k >>= 1;
                }
                r
            }
        }
    }

    /// Signed exponent; negative powers of zero are an error.
    pub fn pow_signed(&self, x: Elem, k: i64) -> Result<Elem> {
        if k >= 0 {
            return Ok(self.pow(x, k as u64));
        }
        if x.0 == 0 {
            return Err(Error::DivideByZero);
        }
        let q1 = self.order as i64 - 1;
        Ok(self.pow(x, k.rem_euclid(q1) as u64))
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.0 == 0 {
            return Err(Error::DivideByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let q1 = self.order - 1;
                Elem(t.exp[((q1 - t.log[x.0 as usize]) % q1) as usize])
            }
            None => self.pow(x, self.order as u64 - 2),
        })
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^(p^j)`.
    pub fn frobenius(&self, x: Elem, j: u32) -> Elem {
        let e = (self.p as u64).pow(j % self.n);
        self.pow(x, e)
    }

    pub fn divides_n(&self, s: u32) -> bool {
        s != 0 && self.n.is_multiple_of(s)
    }

    fn check_divisor(&self, s: u32) -> Result<()> {
        if self.divides_n(s) {
            Ok(())
        } else {
            Err(Error::NotADivisor { s, n: self.n })
        }
    }

    /// `Tr^s_n(x) = Σ_{j<n/s} x^{p^{js}}`.
    pub fn trace(&self, x: Elem, s: u32) -> Result<Elem> {
        self.relative_trace(x, self.n, s)
    }

    /// Trace from GF(p^from) down to GF(p^to), for `x` in GF(p^from) and `to | from | n`.
    pub fn relative_trace(&self, x: Elem, from: u32, to: u32) -> Result<Elem> {
        self.check_divisor(from)?;
        if to == 0 || !from.is_multiple_of(to) {
            return Err(Error::NotADivisor { s: to, n: from });
        }
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..from / to {
            acc = self.add(acc, y);
            y = self.frobenius(y, to);
        }
        Ok(acc)
    }

    /// Absolute trace `Tr_n(x)` as an integer in `[0, p)`.
    #[inline]
    pub fn abs_trace(&self, x: Elem) -> u32 {
        if self.has_tables() {
            self.abs_trace_table()[x.0 as usize]
        } else {
            self.relative_trace(x, self.n, 1).expect("1 | n").0
        }
    }

    pub fn abs_trace_table(&self) -> &[u32] {
        self.abs_trace.get_or_init(|| {
            (0..self.order)
                .into_par_iter()
                .map(|x| self.relative_trace(Elem(x), self.n, 1).expect("1 | n").0)
                .collect()
        })
    }

    pub fn in_subfield(&self, x: Elem, s: u32) -> bool {
        self.divides_n(s) && self.frobenius(x, s) == x
    }

    /// The `p^s` elements fixed by `x ↦ x^{p^s}`, in ascending encoding order.
    pub fn subfield_elements(&self, s: u32) -> Result<Vec<Elem>> {
        Ok(self.subfield(s)?.sorted_elements())
    }

    /// Coordinate system for the subfield GF(p^s).
    pub fn subfield(&self, s: u32) -> Result<&Subfield> {
        self.check_divisor(s)?;
        let slot = self
            .subfields
            .iter()
            .find(|(d, _)| *d == s)
            .map(|(_, slot)| slot)
            .expect("every divisor has a slot");
        Ok(slot.get_or_init(|| Subfield::build(self, s)))
    }

    pub fn divisors(&self) -> Vec<u32> {
        self.subfields.iter().map(|(d, _)| *d).collect()
    }
}

/// An F_p-coordinate system on the subfield GF(p^s) of a field.
///
/// For `s = n` the coordinates are the polynomial-basis digits and the local
/// index equals the encoding. For a proper subfield the basis is
/// `1, β, …, β^{s-1}` with `β = g^{(p^n-1)/(p^s-1)}`.
#[derive(Debug)]
pub struct Subfield {
    s: u32,
    p: u32,
    size: u32,
    full: bool,
    basis: Vec<Elem>,
    elems: Vec<Elem>,
    // enc -> local index, u32::MAX outside the subfield; empty when full.
    index: Vec<u32>,
}

impl Subfield {
    fn build(f: &FieldCtx, s: u32) -> Subfield {
        let size = f.p.pow(s);
        if s == f.n {
            let basis = (0..s).map(|i| Elem(f.p.pow(i))).collect();
            return Subfield {
                s,
                p: f.p,
                size,
                full: true,
                basis,
                elems: Vec::new(),
                index: Vec::new(),
            };
        }
        let beta = f.pow(f.prim, (f.order as u64 - 1) / (size as u64 - 1));
        let basis: Vec<Elem> = (0..s).map(|i| f.pow(beta, i as u64)).collect();
        let mut elems = Vec::with_capacity(size as usize);
        let mut index = vec![u32::MAX; f.order as usize];
        for local in 0..size {
            let digits = digits_of(local as u64, f.p, s as usize);
            let mut x = Elem::ZERO;
            for (d, &b) in digits.iter().zip(&basis) {
                x = f.add(x, f.mul(f.scalar(*d as i64), b));
            }
            elems.push(x);
            index[x.0 as usize] = local;
        }
        Subfield {
            s,
            p: f.p,
            size,
            full: false,
            basis,
            elems,
            index,
        }
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    /// `p^s`.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    #[inline]
    pub fn elem(&self, local: u32) -> Elem {
        if self.full {
            Elem(local)
        } else {
            self.elems[local as usize]
        }
    }

    #[inline]
    pub fn local(&self, x: Elem) -> Option<u32> {
        if self.full {
            (x.0 < self.size).then_some(x.0)
        } else {
            self.index.get(x.0 as usize).copied().filter(|&l| l != u32::MAX)
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.local(x).is_some()
    }

    /// Elements in local-index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size).map(move |i| self.elem(i))
    }

    pub fn sorted_elements(&self) -> Vec<Elem> {
        let mut v: Vec<Elem> = self.elements().collect();
        v.sort();
        v
    }

    pub fn coords(&self, x: Elem) -> Option<Vec<u32>> {
        self.local(x)
            .map(|l| digits_of(l as u64, self.p, self.s as usize))
    }

    pub fn from_coords(&self, coords: &[u32]) -> Elem {
        let mut local = 0u32;
        for &c in coords.iter().rev() {
            local = local * self.p + c % self.p;
        }
        self.elem(local)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        let f = FieldCtx::new(2, 4, None).unwrap();
        assert_eq!(f.modulus(), 0b10011);
        assert_eq!(f.order(), 16);
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        assert_eq!(f3.order(), 3);
        assert_eq!(f3.modulus(), 3);
        assert_eq!(f3.add(Elem(2), Elem(2)), Elem(1));
        assert_eq!(f3.mul(Elem(2), Elem(2)), Elem(1));
    }

    #[test]
    fn creation_errors() {
        assert_eq!(FieldCtx::new(4, 2, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(
            FieldCtx::new(2, 4, Some(0b10001)).unwrap_err(),
            Error::ReducibleModulus(0b10001)
        );
        assert!(matches!(
            FieldCtx::new(2, 4, Some(0b111)).unwrap_err(),
            Error::DegreeMismatch { .. }
        ));
        assert!(matches!(
            FieldCtx::new(2, 25, None).unwrap_err(),
            Error::FieldTooLarge { .. }
        ));
    }

    #[test]
    fn non_primitive_modulus_picks_other_generator() {
        let f = FieldCtx::new(2, 4, Some(0b11111)).unwrap();
        // x has order 5 under x^4+x^3+x^2+x+1.
        assert_eq!(f.pow(Elem(2), 5), Elem::ONE);
        let g = f.primitive_element();
        assert_ne!(g, Elem(2));
        let order = (1..16u64).find(|&k| f.pow(g, k) == Elem::ONE).unwrap();
        assert_eq!(order, 15);
        assert_eq!(f.spec_string(), "gf(2^4;mod=31)");
    }

    #[test]
    fn small_arithmetic_examples() {
        let f = FieldCtx::new(2, 4, None).unwrap();
        assert_eq!(f.mul(Elem(8), Elem(2)), Elem(3));
        assert_eq!(f.add(Elem(9), Elem(9)), Elem::ZERO);
        let g = FieldCtx::new(3, 2, None).unwrap();
        assert_eq!(g.add(Elem(4), Elem(4)), Elem(8));
        for x in g.nonzero_elements() {
            assert_eq!(g.pow(x, 8), Elem::ONE);
            assert_eq!(g.mul(x, g.inv(x).unwrap()), Elem::ONE);
        }
        assert_eq!(g.inv(Elem::ZERO), Err(Error::DivideByZero));
    }

    #[test]
    fn table_and_polynomial_paths_agree() {
        for (p, n) in [(2, 5), (3, 3), (5, 2), (7, 2)] {
            let a = FieldCtx::new(p, n, None).unwrap();
            let b = FieldCtx::with_table_limit(p, n, None, 0).unwrap();
            assert!(a.has_tables() && !b.has_tables());
            for x in a.elements() {
                for y in a.elements() {
                    assert_eq!(a.mul(x, y), b.mul(x, y));
                }
                assert_eq!(a.pow(x, 7), b.pow(x, 7));
                if !x.is_zero() {
                    assert_eq!(a.inv(x), b.inv(x));
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        let f = FieldCtx::new(2, 4, None).unwrap();
        assert_eq!(f.trace(Elem::ZERO, 1).unwrap(), Elem::ZERO);
        assert_eq!(f.trace(Elem::ONE, 1).unwrap(), Elem::ZERO);
        let x = Elem(2);
        let direct = [1u64, 2, 4, 8]
            .iter()
            .fold(Elem::ZERO, |acc, &e| f.add(acc, f.pow(x, e)));
        assert_eq!(f.trace(x, 1).unwrap(), direct);
        assert!(direct.enc() < 2);
        assert_eq!(f.trace(x, 3), Err(Error::NotADivisor { s: 3, n: 4 }));
    }

    #[test]
    fn subfield_examples() {
        let f = FieldCtx::new(2, 4, None).unwrap();
        assert_eq!(f.subfield_elements(4).unwrap().len(), 16);
        assert_eq!(f.subfield_elements(2).unwrap().len(), 4);
        let g = FieldCtx::new(2, 6, None).unwrap();
        assert_eq!(g.subfield_elements(1).unwrap(), vec![Elem(0), Elem(1)]);
        assert_eq!(g.nonzero_elements().filter(|&c| !g.in_subfield(c, 1)).count(), 62);
        assert!(matches!(g.subfield_elements(4), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn subfield_coordinates_are_additive() {
        let f = FieldCtx::new(3, 4, None).unwrap();
        let sub = f.subfield(2).unwrap();
        for x in sub.elements() {
            for y in sub.elements() {
                let cx = sub.coords(x).unwrap();
                let cy = sub.coords(y).unwrap();
                let sum: Vec<u32> = cx.iter().zip(&cy).map(|(a, b)| (a + b) % 3).collect();
                assert_eq!(sub.from_coords(&sum), f.add(x, y));
            }
        }
    }

    #[test]
    fn spec_string_round_trip() {
        let f = FieldCtx::from_spec_str("gf(2^6)").unwrap();
        assert_eq!(f.order(), 64);
        assert_eq!(f.spec_string(), "gf(2^6)");
        let g = FieldCtx::from_spec_str("gf(2^4;mod=31)").unwrap();
        assert_eq!(g.modulus(), 31);
        assert!(matches!(FieldCtx::from_spec_str("GF16"), Err(Error::Parse(_))));
    }
}
