//! Exact Walsh transforms and the Walsh-moment characterizations of cc-uniformity.
//!
//! Walsh values live in `Z[ξ_p]` and are held as [`CycInt`]s, so every identity
//! below is checked by coefficient comparison rather than within a tolerance.
//!
//! The moment `G_{k+1}` is a sum over `k` points of `G = GF(p^n) × GF(p^s)`. It is
//! evaluated as `Σ_w R(w)·P^{*k}(w)` with `P(w) = conj W(cw)·W(w)`,
//! `R(w) = conj W(w)·W(cw)` and `*` the additive convolution on `G`, which costs
//! `(k-1)|G|^2` products instead of `|G|^k`.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::diffspec::{self, Kind};
use crate::error::{Error, Result};
use crate::funcrep::VecFunc;
use crate::gf::{Elem, FieldCtx};

/// Default bound on elementary products per moment or certificate.
pub const DEFAULT_WORK_LIMIT: u128 = 1 << 24;

/// An element `Σ c_i ξ^i` of `Z[ξ_p]`, stored with `c_{p-1} = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycInt {
    coeffs: Vec<i128>,
}

impl CycInt {
    pub fn zero(p: u32) -> CycInt {
        CycInt { coeffs: vec![0; p as usize] }
    }

    pub fn from_int(p: u32, v: i128) -> CycInt {
        let mut z = CycInt::zero(p);
        z.coeffs[0] = v;
        z
    }

    /// `Σ raw[i] ξ^i` for any length-`p` coefficient vector.
    pub fn from_raw(mut raw: Vec<i128>) -> CycInt {
        let t = *raw.last().expect("p >= 2");
        if t != 0 {
            for c in raw.iter_mut() {
                *c -= t;
            }
        }
        CycInt { coeffs: raw }
    }

    /// `ξ^k`.
    pub fn xi_pow(p: u32, k: u32) -> CycInt {
        let mut raw = vec![0; p as usize];
        raw[(k % p) as usize] = 1;
        CycInt::from_raw(raw)
    }

    pub fn p(&self) -> u32 {
        self.coeffs.len() as u32
    }

    /// Canonical coefficients `c_0, …, c_{p-1}` with `c_{p-1} = 0`.
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn rational(&self) -> Option<i128> {
        self.is_rational().then_some(self.coeffs[0])
    }

    pub fn add(&self, o: &CycInt) -> CycInt {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        CycInt { coeffs }
    }

    pub fn sub(&self, o: &CycInt) -> CycInt {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        CycInt { coeffs }
    }

    pub fn neg(&self) -> CycInt {
        CycInt { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: i128) -> CycInt {
        CycInt { coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    pub fn mul(&self, o: &CycInt) -> CycInt {
        let mut acc = vec![0i128; self.coeffs.len()];
        mul_acc(&mut acc, self, o);
        CycInt::from_raw(acc)
    }

    /// The image under `ξ ↦ ξ^{-1}`, i.e. complex conjugation.
    pub fn conj(&self) -> CycInt {
        let p = self.coeffs.len();
        let mut raw = vec![0i128; p];
        for (i, &c) in self.coeffs.iter().enumerate() {
            raw[(p - i) % p] = c;
        }
        CycInt::from_raw(raw)
    }

    /// `z · conj(z)`.
    pub fn norm_sq(&self) -> CycInt {
        self.mul(&self.conj())
    }

    /// Division by an integer, when every coefficient is divisible.
    pub fn div_exact(&self, d: i128) -> Option<CycInt> {
        if d == 0 || self.coeffs.iter().any(|c| c % d != 0) {
            return None;
        }
        Some(CycInt { coeffs: self.coeffs.iter().map(|c| c / d).collect() })
    }
}

/// `acc += a·b` on raw (non-canonical) coefficient vectors.
#[inline]
fn mul_acc(acc: &mut [i128], a: &CycInt, b: &CycInt) {
    let p = acc.len();
    if p == 2 {
        acc[0] += a.coeffs[0] * b.coeffs[0];
        return;
    }
    for (i, &x) in a.coeffs[..p - 1].iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.coeffs[..p - 1].iter().enumerate() {
            let k = if i + j >= p { i + j - p } else { i + j };
            acc[k] += x * y;
        }
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.rational() {
            return write!(f, "{v}");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*ξ"),
                _ => format!("{c}*ξ^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

fn digit_add(a: usize, b: usize, p: usize) -> usize {
    if p == 2 {
        return a ^ b;
    }
    let (mut a, mut b, mut r, mut place) = (a, b, 0, 1);
    while a != 0 || b != 0 {
        r += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    r
}

fn digit_neg(a: usize, p: usize) -> usize {
    if p == 2 {
        return a;
    }
    let (mut a, mut r, mut place) = (a, 0, 1);
    while a != 0 {
        r += ((p - a % p) % p) * place;
        a /= p;
        place *= p;
    }
    r
}

/// Additive convolution on F_p^d with elements indexed by base-p digit packing.
fn convolve(a: &[CycInt], b: &[CycInt], p: usize) -> Vec<CycInt> {
    let len = a.len();
    let neg: Vec<usize> = (0..len).map(|i| digit_neg(i, p)).collect();
    (0..len)
        .into_par_iter()
        .map(|w| {
            let mut acc = vec![0i128; p];
            for (w1, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                mul_acc(&mut acc, x, &b[digit_add(w, neg[w1], p)]);
            }
            CycInt::from_raw(acc)
        })
        .collect()
}

/// Absolute trace of each codomain value, indexed by encoding (zero elsewhere).
fn codomain_trace(f: &VecFunc) -> Vec<u32> {
    let field = f.field();
    let mut t = vec![0u32; field.order() as usize];
    for y in f.codomain().elements() {
        t[y.enc() as usize] = field.relative_trace(y, f.s(), 1).expect("1 | s").enc();
    }
    t
}

fn character_sum(p: u32, exponents: impl Iterator<Item = u32>) -> CycInt {
    let mut hist = vec![0i128; p as usize];
    for e in exponents {
        hist[e as usize] += 1;
    }
    CycInt::from_raw(hist)
}

/// `W(u, v) = Σ_x ξ^{Tr_s(vF(x)) - Tr_n(ux)}`.
pub fn walsh(f: &VecFunc, u: Elem, v: Elem) -> Result<CycInt> {
    let field = &**f.field();
    field.elem(u.enc())?;
    if !f.codomain().contains(v) {
        return Err(Error::BadParameters(format!("v = {v} is outside the codomain")));
    }
    let tr_s = codomain_trace(f);
    let p = field.p();
    Ok(character_sum(
        p,
        field.elements().map(|x| {
            let a = tr_s[field.mul(v, f.eval(x)).enc() as usize];
            let b = field.abs_trace(field.mul(u, x));
            (a + p - b) % p
        }),
    ))
}

/// All Walsh values, indexed by `u` encoding and the local index of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshTable {
    p: u32,
    q: usize,
    v_elems: Vec<Elem>,
    v_local: Vec<u32>,
    values: Vec<CycInt>,
}

impl WalshTable {
    pub fn get(&self, u: Elem, v: Elem) -> &CycInt {
        let l = self.v_local[v.enc() as usize];
        assert!(l != u32::MAX, "v outside the codomain");
        &self.values[l as usize * self.q + u.enc() as usize]
    }

    /// Values in group order: index `u + q·(local index of v)`.
    pub fn values(&self) -> &[CycInt] {
        &self.values
    }

    pub fn v_elements(&self) -> &[Elem] {
        &self.v_elems
    }

    /// CSV with header `u,v,c_0,…,c_{p-1}`, ordered by `u` then `v` encoding.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v");
        for i in 0..self.p {
            out.push_str(&format!(",c_{i}"));
        }
        out.push('\n');
        let mut vs: Vec<(Elem, usize)> = self.v_elems.iter().copied().zip(0..).collect();
        vs.sort();
        for u in 0..self.q {
            for &(v, l) in &vs {
                out.push_str(&format!("{u},{}", v.enc()));
                for c in self.values[l * self.q + u].coeffs() {
                    out.push_str(&format!(",{c}"));
                }
                out.push('\n');
            }
        }
        out
    }
}

fn table_shell(f: &VecFunc) -> (Vec<Elem>, Vec<u32>) {
    let v_elems: Vec<Elem> = f.codomain().elements().collect();
    let mut v_local = vec![u32::MAX; f.field().order() as usize];
    for (l, v) in v_elems.iter().enumerate() {
        v_local[v.enc() as usize] = l as u32;
    }
    (v_elems, v_local)
}

/// Direct evaluation of every character sum, parallel over `v`.
pub fn walsh_table(f: &VecFunc) -> WalshTable {
    let field = &**f.field();
    let p = field.p();
    let q = field.order() as usize;
    let tr_s = codomain_trace(f);
    let (v_elems, v_local) = table_shell(f);
    let values: Vec<CycInt> = v_elems
        .par_iter()
        .flat_map_iter(|&v| {
            let tv: Vec<u32> = f
                .lut()
                .iter()
                .map(|&y| tr_s[field.mul(v, y).enc() as usize])
                .collect();
            let tv = std::sync::Arc::new(tv);
            field.elements().map(move |u| {
                character_sum(
                    p,
                    field.elements().map(|x| {
                        let b = field.abs_trace(field.mul(u, x));
                        (tv[x.enc() as usize] + p - b) % p
                    }),
                )
            })
        })
        .collect();
    WalshTable { p, q, v_elems, v_local, values }
}

/// Fast Walsh–Hadamard path for characteristic 2.
///
/// With `T(u)_i = Tr(u α^i)` the exponent `Tr(ux)` is the dot product of the bits
/// of `x` with `T(u)`, so `W(u, v)` is the standard transform of `(-1)^{Tr(vF)}`
/// read at `T(u)`.
pub fn walsh_table_fwht(f: &VecFunc) -> Result<WalshTable> {
    let field = &**f.field();
    if field.p() != 2 {
        return Err(Error::BadParameters("fast transform needs p = 2".into()));
    }
    let q = field.order() as usize;
    let n = field.n();
    let tr_s = codomain_trace(f);
    let (v_elems, v_local) = table_shell(f);
    let t_of: Vec<usize> = field
        .elements()
        .map(|u| {
            (0..n)
                .map(|i| (field.abs_trace(field.mul(u, Elem::from_enc(1 << i))) as usize) << i)
                .sum()
        })
        .collect();
    let values: Vec<CycInt> = v_elems
        .par_iter()
        .flat_map_iter(|&v| {
            let mut h: Vec<i128> = f
                .lut()
                .iter()
                .map(|&y| 1 - 2 * tr_s[field.mul(v, y).enc() as usize] as i128)
                .collect();
            let mut len = 1;
            while len < q {
                for block in h.chunks_mut(2 * len) {
                    let (lo, hi) = block.split_at_mut(len);
                    for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                        let (x, y) = (*a, *b);
                        *a = x + y;
                        *b = x - y;
                    }
                }
                len *= 2;
            }
            let t_of = &t_of;
            (0..q).map(move |u| CycInt::from_int(2, h[t_of[u]]))
        })
        .collect();
    Ok(WalshTable { p: 2, q, v_elems, v_local, values })
}

/// Expanded coefficients `A_0, …, A_m` of `Π_{j=1}^m (x - j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiPoly {
    coeffs: Vec<i128>,
}

impl PhiPoly {
    pub fn new(m: u32) -> PhiPoly {
        let mut coeffs = vec![1i128];
        for j in 1..=m as i128 {
            let mut next = vec![0i128; coeffs.len() + 1];
            for (k, &a) in coeffs.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= j * a;
            }
            coeffs = next;
        }
        PhiPoly { coeffs }
    }

    pub fn m(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, &a| acc * x + a)
    }
}

pub fn phi_poly(m: u32) -> PhiPoly {
    PhiPoly::new(m)
}

/// `#{x : ccD_aF(x) = ccD_aF(b_point)}`.
pub fn s_count(f: &VecFunc, c: Elem, a: Elem, b_point: Elem) -> Result<u32> {
    diffspec::validate_c(f, c)?;
    let field = &**f.field();
    field.elem(b_point.enc())?;
    let target = field.sub(f.eval(field.add(field.mul(c, b_point), a)), field.mul(c, f.eval(b_point)));
    diffspec::cc_ddt_entry(f, c, a, target)
}

fn check_work(needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(Error::WorkLimitExceeded { needed, limit })
    } else {
        Ok(())
    }
}

fn log2_ceil(x: u128) -> u32 {
    128 - x.saturating_sub(1).leading_zeros()
}

/// Rejects moments whose intermediate coefficients could leave `i128`.
fn check_magnitude(field: &FieldCtx, group: u128, k: u32) -> Result<()> {
    // Each canonical Walsh coefficient is at most 2q; each product of 2k+2 of them
    // spreads over at most p^{2k+1} raw terms; |G|^k such products are summed.
    let per = log2_ceil(2 * field.order() as u128) + log2_ceil(field.p() as u128);
    let bits = (2 * k + 2) * per + k * log2_ceil(group) + 1;
    if bits > 126 {
        return Err(Error::CoefficientOverflow { bits });
    }
    Ok(())
}

struct MomentSetup {
    p: usize,
    group: usize,
    pw: Vec<CycInt>,
    rw: Vec<CycInt>,
}

fn moment_setup(f: &VecFunc, c: Elem) -> Result<MomentSetup> {
    diffspec::validate_c(f, c)?;
    let field = &**f.field();
    let table = if field.p() == 2 { walsh_table_fwht(f)? } else { walsh_table(f) };
    let q = field.order() as usize;
    let group = table.values.len();
    let mut pw = Vec::with_capacity(group);
    let mut rw = Vec::with_capacity(group);
    for (l, &v) in table.v_elems.iter().enumerate() {
        let cv = field.mul(c, v);
        for u in field.elements() {
            let w = &table.values[l * q + u.enc() as usize];
            let cw = table.get(field.mul(c, u), cv);
            pw.push(cw.conj().mul(w));
            rw.push(w.conj().mul(cw));
        }
    }
    Ok(MomentSetup { p: field.p() as usize, group, pw, rw })
}

fn pair_sum(a: &[CycInt], b: &[CycInt], p: usize) -> CycInt {
    let mut acc = vec![0i128; p];
    for (x, y) in a.iter().zip(b) {
        mul_acc(&mut acc, x, y);
    }
    CycInt::from_raw(acc)
}

/// `G_2, …, G_{m+1}` through repeated convolution.
pub fn g_sums(f: &VecFunc, c: Elem, m: u32, work_limit: u128) -> Result<Vec<CycInt>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    let field = &**f.field();
    let group = field.order() as u128 * f.codomain().size() as u128;
    let needed = (m as u128 - 1) * group * group + m as u128 * group;
    check_work(needed, work_limit)?;
    check_magnitude(field, group, m)?;
    let setup = moment_setup(f, c)?;
    let mut out = Vec::with_capacity(m as usize);
    let mut conv = setup.pw.clone();
    for k in 1..=m {
        if k > 1 {
            conv = convolve(&conv, &setup.pw, setup.p);
        }
        out.push(pair_sum(&setup.rw, &conv, setup.p));
    }
    Ok(out)
}

/// The moment `G_{k+1}` for one `k ≥ 1`.
pub fn g_sum(f: &VecFunc, c: Elem, k: u32, work_limit: u128) -> Result<CycInt> {
    if k == 0 {
        return Err(Error::BadParameters("moment order k must be at least 1".into()));
    }
    Ok(g_sums(f, c, k, work_limit)?.pop().expect("k >= 1"))
}

/// `G_{k+1}` by direct enumeration of all `k`-tuples; exponential, for cross-checks.
pub fn g_sum_naive(f: &VecFunc, c: Elem, k: u32, work_limit: u128) -> Result<CycInt> {
    if k == 0 {
        return Err(Error::BadParameters("moment order k must be at least 1".into()));
    }
    let field = &**f.field();
    let group = field.order() as u128 * f.codomain().size() as u128;
    let needed = group.checked_pow(k).unwrap_or(u128::MAX);
    check_work(needed, work_limit)?;
    check_magnitude(field, group, k)?;
    let setup = moment_setup(f, c)?;
    let (p, g) = (setup.p, setup.group);
    let mut acc = vec![0i128; p];
    let mut idx = vec![0usize; k as usize];
    loop {
        let mut sum = 0usize;
        let mut prod = CycInt::from_int(p as u32, 1);
        for &w in &idx {
            sum = digit_add(sum, w, p);
            prod = prod.mul(&setup.pw[w]);
        }
        mul_acc(&mut acc, &setup.rw[sum], &prod);
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Ok(CycInt::from_raw(acc));
            }
            idx[j] += 1;
            if idx[j] < g {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Normalizes a moment to the integer `p^{-(n+s)k} G_{k+1}`.
pub fn normalized_moment(f: &VecFunc, g: &CycInt, k: u32) -> Result<i128> {
    let field = f.field();
    let v = g.rational().ok_or_else(|| Error::NonRationalResult(g.to_string()))?;
    let d = (field.p() as i128).pow((field.n() + f.s()) * k);
    if v % d != 0 {
        return Err(Error::NonRationalResult(format!("{v} is not divisible by {d}")));
    }
    Ok(v / d)
}

fn serialize_i128<S: Serializer>(v: &i128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Evaluation of the Walsh-moment inequality at one `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformityCertificate {
    pub m: u32,
    pub c: u32,
    /// `p^{2n} A_0 + Σ_k A_k p^{-(n+s)k} G_{k+1}`.
    #[serde(serialize_with = "serialize_i128")]
    pub lhs: i128,
    pub equality: bool,
    /// `Σ_{a, b} φ_m(S(a, b))` from the difference table.
    #[serde(serialize_with = "serialize_i128")]
    pub table_lhs: i128,
    pub cc_uniformity: u32,
    /// Largest entry over all rows, `a = 0` included.
    pub max_entry: u32,
    /// `equality ⇔ max_entry ≤ m`.
    pub le_reading_holds: bool,
    /// `equality ⇔ cc_uniformity = m`.
    pub eq_reading_holds: bool,
}

impl UniformityCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain struct")
    }
}

/// Evaluates the inequality with `φ_m = Π (x - j)` and compares with the table.
///
/// Equality holds exactly when no entry of the table, the `a = 0` row included,
/// exceeds `m`. At `c = 1` that row holds `p^n`, so equality needs `m ≥ p^n`.
pub fn uniformity_certificate(
    f: &VecFunc,
    c: Elem,
    m: u32,
    work_limit: u128,
) -> Result<UniformityCertificate> {
    if m == 0 {
        return Err(Error::BadParameters("m must be at least 1".into()));
    }
    let field = &**f.field();
    let phi = phi_poly(m);
    let moments = g_sums(f, c, m, work_limit)?;
    let q = field.order() as i128;
    let mut lhs = q * q * phi.coeffs()[0];
    for (k, g) in moments.iter().enumerate() {
        lhs += phi.coeffs()[k + 1] * normalized_moment(f, g, k as u32 + 1)?;
    }
    let table = diffspec::ddt(f, Kind::Cc, c)?;
    let mut table_lhs = 0i128;
    let mut max_entry = 0u32;
    for a in field.elements() {
        for &n in table.row(a) {
            // Each entry n is the S-value of n base points.
            table_lhs += n as i128 * phi.eval(n as i128);
            max_entry = max_entry.max(n);
        }
    }
    let cc_uniformity = table.uniformity();
    let equality = lhs == 0;
    Ok(UniformityCertificate {
        m,
        c: c.enc(),
        lhs,
        equality,
        table_lhs,
        cc_uniformity,
        max_entry,
        le_reading_holds: equality == (max_entry <= m),
        eq_reading_holds: equality == (cc_uniformity == m),
    })
}

/// Evaluation of the per-shift inequality built from the derivative's Walsh values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerACertificate {
    pub a: u32,
    pub m: u32,
    /// `p^n A_0 + Σ_k A_k p^{-ks} Σ_{v_j} conj W_D(0, Σv_j) Π W_D(0, v_j)`.
    #[serde(serialize_with = "serialize_i128")]
    pub value: i128,
    /// `Σ_{b} φ_m(S(a, b))` counted directly.
    #[serde(serialize_with = "serialize_i128")]
    pub direct: i128,
}

impl PerACertificate {
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

pub fn per_a_certificate(
    f: &VecFunc,
    c: Elem,
    a: Elem,
    m: u32,
    work_limit: u128,
) -> Result<PerACertificate> {
    if m == 0 {
        return Err(Error::BadParameters("m must be at least 1".into()));
    }
    diffspec::validate_c(f, c)?;
    let field = &**f.field();
    field.elem(a.enc())?;
    if c == Elem::ONE && a.is_zero() {
        return Err(Error::HypothesisViolated("a must be nonzero when c = 1".into()));
    }
    let width = f.codomain().size() as u128;
    check_work((m as u128 - 1) * width * width + m as u128 * width, work_limit)?;
    check_magnitude(field, width, m)?;
    let d = diffspec::derivative_fn(f, Kind::Cc, c, a)?;
    let p = field.p();
    let tr_s = codomain_trace(&d);
    // W_D(0, v) over v in local order; local addition is digit-wise.
    let w0: Vec<CycInt> = d
        .codomain()
        .elements()
        .map(|v| {
            character_sum(p, d.lut().iter().map(|&y| tr_s[field.mul(v, y).enc() as usize]))
        })
        .collect();
    let conj: Vec<CycInt> = w0.iter().map(CycInt::conj).collect();
    let phi = phi_poly(m);
    let mut value = field.order() as i128 * phi.coeffs()[0];
    let mut conv = w0.clone();
    for k in 1..=m {
        if k > 1 {
            conv = convolve(&conv, &w0, p as usize);
        }
        let term = pair_sum(&conj, &conv, p as usize);
        let t = term.rational().ok_or_else(|| Error::NonRationalResult(term.to_string()))?;
        let scale = (p as i128).pow(f.s() * k);
        if t % scale != 0 {
            return Err(Error::NonRationalResult(format!("{t} is not divisible by {scale}")));
        }
        value += phi.coeffs()[k as usize] * (t / scale);
    }
    let mut counts = vec![0u32; field.order() as usize];
    for &y in d.lut() {
        counts[y.enc() as usize] += 1;
    }
    let direct = d
        .lut()
        .iter()
        .map(|&y| phi.eval(counts[y.enc() as usize] as i128))
        .sum();
    Ok(PerACertificate { a: a.enc(), m, value, direct })
}

/// Per-shift certificates for every admissible `a`; all zero exactly when the
/// table has no entry above `m` in those rows.
pub fn per_a_certificates(
    f: &VecFunc,
    c: Elem,
    m: u32,
    work_limit: u128,
) -> Result<Vec<PerACertificate>> {
    let field = f.field();
    field
        .elements()
        .filter(|a| !(c == Elem::ONE && a.is_zero()))
        .map(|a| per_a_certificate(f, c, a, m, work_limit))
        .collect()
}

/// `(1_{graph(cF)} ⊗ 1_{graph(F_c)})(u/c, v)` with `F_c(x) = F(cx)`, computed on
/// explicit graph sets.
pub fn convolution_entry(f: &VecFunc, c: Elem, u: Elem, v: Elem) -> Result<u32> {
    diffspec::validate_c(f, c)?;
    let field = &**f.field();
    field.elem(u.enc())?;
    field.elem(v.enc())?;
    let graph_cf: Vec<(Elem, Elem)> =
        field.elements().map(|x| (x, field.mul(c, f.eval(x)))).collect();
    let graph_fc: HashSet<(Elem, Elem)> =
        field.elements().map(|x| (x, f.eval(field.mul(c, x)))).collect();
    let shift = field.div(u, c)?;
    Ok(graph_cf
        .iter()
        .filter(|&&(x, y)| graph_fc.contains(&(field.add(x, shift), field.add(y, v))))
        .count() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use std::sync::Arc;

    fn gf(p: u32, n: u32) -> Arc<FieldCtx> {
        FieldCtx::new(p, n, None).unwrap()
    }

    #[test]
    fn cycint_basics() {
        let p = 5;
        let xi = CycInt::xi_pow(p, 1);
        let mut acc = CycInt::from_int(p, 1);
        for _ in 0..5 {
            acc = acc.mul(&xi);
        }
        assert_eq!(acc, CycInt::from_int(p, 1));
        // 1 + ξ + ... + ξ^4 = 0.
        let s = (0..5).fold(CycInt::zero(p), |a, k| a.add(&CycInt::xi_pow(p, k)));
        assert!(s.is_zero());
        assert_eq!(xi.conj(), CycInt::xi_pow(p, 4));
        assert_eq!(xi.conj().conj(), xi);
        assert_eq!(xi.norm_sq(), CycInt::from_int(p, 1));
        assert!(!xi.is_rational());
    }

    #[test]
    fn phi_coefficients() {
        assert_eq!(phi_poly(1).coeffs(), &[-1, 1]);
        assert_eq!(phi_poly(2).coeffs(), &[2, -3, 1]);
        assert_eq!(phi_poly(3).coeffs(), &[-6, 11, -6, 1]);
        let phi = phi_poly(4);
        for j in 1..=4 {
            assert_eq!(phi.eval(j), 0);
        }
        for j in 5..=64 {
            assert!(phi.eval(j) > 0);
        }
    }

    #[test]
    fn walsh_trivial_values() {
        let f = gf(3, 2);
        let g = VecFunc::from_power(f.clone(), 5, 2).unwrap();
        assert_eq!(walsh(&g, Elem::ZERO, Elem::ZERO).unwrap(), CycInt::from_int(3, 9));
        for u in f.nonzero_elements() {
            assert!(walsh(&g, u, Elem::ZERO).unwrap().is_zero());
        }
        let t = walsh_table(&g);
        for u in f.elements() {
            for v in f.elements() {
                assert_eq!(t.get(u, v), &walsh(&g, u, v).unwrap());
            }
        }
    }

    #[test]
    fn fwht_matches_direct() {
        let f = gf(2, 5);
        let g = VecFunc::from_power(f.clone(), 7, 5).unwrap();
        assert_eq!(walsh_table_fwht(&g).unwrap(), walsh_table(&g));
        let h = gf(2, 4);
        let k = VecFunc::from_power(h, 5, 2).unwrap();
        assert_eq!(walsh_table_fwht(&k).unwrap(), walsh_table(&k));
    }

    #[test]
    fn work_limit_guard() {
        let f = gf(2, 4);
        let g = VecFunc::from_power(f, 3, 4).unwrap();
        assert!(matches!(
            g_sum(&g, Elem::from_enc(2), 3, 1000),
            Err(Error::WorkLimitExceeded { .. })
        ));
    }

    #[test]
    fn identity_per_a_forced_counts() {
        let f = gf(3, 2);
        let id = VecFunc::identity(f.clone());
        let c = Elem::from_enc(2);
        let phi = phi_poly(2);
        let cert = per_a_certificate(&id, c, Elem::from_enc(4), 2, DEFAULT_WORK_LIMIT).unwrap();
        assert_eq!(cert.value, 9 * phi.eval(9));
        assert_eq!(cert.value, cert.direct);
    }

    #[test]
    fn convolution_entry_small() {
        let f = gf(2, 3);
        let g = VecFunc::from_power(f.clone(), 3, 3).unwrap();
        for c in f.nonzero_elements() {
            for u in f.elements() {
                for v in f.elements() {
                    assert_eq!(
                        convolution_entry(&g, c, u, v).unwrap(),
                        diffspec::cc_ddt_entry(&g, c, u, v).unwrap()
                    );
                }
            }
        }
    }
}
