//! c- and cc-difference distribution tables, uniformities and spectra.
//!
//! For a multiplier `c` and shift `a` the cc-derivative of `F` is
//! `x ↦ F(cx + a) - cF(x)` and the c-derivative is `x ↦ F(x + a) - cF(x)`.
//! A table counts, for every `(a, b)`, the inputs mapped to `b`.
//!
//! Uniformity is the largest entry, skipping the `a = 0` row only when `c = 1`.
//! Spectra keep every row, including `a = 0`, so at `c = 1` a spectrum always
//! contains the entry `p^n` at `(0, 0)` while the uniformity does not see it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcrep::{Origin, VecFunc};
use crate::gf::{gcd, Elem, FieldCtx};

/// Which derivative a table is built from.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// `F(x + a) - cF(x)`.
    C,
    /// `F(cx + a) - cF(x)`.
    Cc,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::C => "c",
            Kind::Cc => "cc",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "c" => Ok(Kind::C),
            "cc" => Ok(Kind::Cc),
            _ => Err(Error::Parse(format!("unknown kind {s:?}, expected c or cc"))),
        }
    }
}

/// Multiset of counts, `count → multiplicity`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Spectrum(BTreeMap<u32, u64>);

impl Spectrum {
    pub fn from_values<I: IntoIterator<Item = u32>>(values: I) -> Spectrum {
        let mut m = BTreeMap::new();
        for v in values {
            *m.entry(v).or_insert(0) += 1;
        }
        Spectrum(m)
    }

    pub fn from_pairs<I: IntoIterator<Item = (u32, u64)>>(pairs: I) -> Spectrum {
        let mut m = BTreeMap::new();
        for (k, v) in pairs {
            if v > 0 {
                *m.entry(k).or_insert(0) += v;
            }
        }
        Spectrum(m)
    }

    pub fn multiplicity(&self, count: u32) -> u64 {
        self.0.get(&count).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.keys().next_back().copied()
    }

    pub fn as_map(&self) -> &BTreeMap<u32, u64> {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}^{v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A full difference distribution table for one `c`.
///
/// Rows are indexed by the encoding of `a`, columns by the local index of `b`
/// in the codomain subfield.
#[derive(Clone, Debug)]
pub struct Ddt {
    kind: Kind,
    c: Elem,
    width: usize,
    table: Vec<u32>,
    b_elems: Vec<Elem>,
    b_local: Vec<u32>,
}

impl Ddt {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn c(&self) -> Elem {
        self.c
    }

    pub fn rows(&self) -> usize {
        self.table.len() / self.width
    }

    pub fn row(&self, a: Elem) -> &[u32] {
        let a = a.enc() as usize;
        &self.table[a * self.width..(a + 1) * self.width]
    }

    /// Entry at `(a, b)`; zero when `b` lies outside the codomain.
    pub fn entry(&self, a: Elem, b: Elem) -> u32 {
        match self.b_local.get(b.enc() as usize) {
            Some(&l) if l != u32::MAX => self.row(a)[l as usize],
            _ => 0,
        }
    }

    /// `(b, count)` pairs of one row, in local order.
    pub fn row_entries(&self, a: Elem) -> impl Iterator<Item = (Elem, u32)> + '_ {
        self.b_elems.iter().copied().zip(self.row(a).iter().copied())
    }

    /// Largest entry, skipping `a = 0` when `c = 1`.
    pub fn uniformity(&self) -> u32 {
        let skip = usize::from(self.c == Elem::ONE);
        self.table[skip * self.width..].iter().copied().max().unwrap_or(0)
    }

    /// Multiset of all entries, `a = 0` included.
    pub fn spectrum(&self) -> Spectrum {
        Spectrum::from_values(self.table.iter().copied())
    }

    /// CSV with header `a,b,count`, rows ordered by `a` then `b` encoding.
    pub fn to_csv(&self) -> String {
        let mut order: Vec<usize> = (0..self.width).collect();
        order.sort_by_key(|&l| self.b_elems[l]);
        let mut out = String::from("a,b,count\n");
        for a in 0..self.rows() {
            let row = &self.table[a * self.width..(a + 1) * self.width];
            for &l in &order {
                out.push_str(&format!("{a},{},{}\n", self.b_elems[l].enc(), row[l]));
            }
        }
        out
    }
}

/// Checks that `c` is a nonzero element of the codomain subfield of `f`.
pub fn validate_c(f: &VecFunc, c: Elem) -> Result<()> {
    if c.is_zero() || c.enc() >= f.field().order() || !f.codomain().contains(c) {
        return Err(Error::InvalidC(c.enc()));
    }
    Ok(())
}

fn check_b(f: &VecFunc, b: Elem) -> Result<()> {
    f.field().elem(b.enc())?;
    Ok(())
}

#[inline]
fn derivative(field: &FieldCtx, f: &VecFunc, kind: Kind, c: Elem, a: Elem, x: Elem) -> Elem {
    let shifted = match kind {
        Kind::Cc => field.add(field.mul(c, x), a),
        Kind::C => field.add(x, a),
    };
    field.sub(f.eval(shifted), field.mul(c, f.eval(x)))
}

/// The derivative `x ↦ F(cx + a) - cF(x)` (or its c-variant) as a table.
pub fn derivative_fn(f: &VecFunc, kind: Kind, c: Elem, a: Elem) -> Result<VecFunc> {
    validate_c(f, c)?;
    f.field().elem(a.enc())?;
    let field = f.field().clone();
    VecFunc::from_fn(field.clone(), f.s(), |x| derivative(&field, f, kind, c, a, x))
}

/// Number of `x` with `derivative(x) = b`, by one pass over the domain.
pub fn ddt_entry(f: &VecFunc, kind: Kind, c: Elem, a: Elem, b: Elem) -> Result<u32> {
    validate_c(f, c)?;
    f.field().elem(a.enc())?;
    check_b(f, b)?;
    let field = &**f.field();
    Ok(field
        .elements()
        .filter(|&x| derivative(field, f, kind, c, a, x) == b)
        .count() as u32)
}

pub fn cc_ddt_entry(f: &VecFunc, c: Elem, a: Elem, b: Elem) -> Result<u32> {
    ddt_entry(f, Kind::Cc, c, a, b)
}

pub fn c_ddt_entry(f: &VecFunc, c: Elem, a: Elem, b: Elem) -> Result<u32> {
    ddt_entry(f, Kind::C, c, a, b)
}

/// Builds the complete table, parallel over rows.
pub fn ddt(f: &VecFunc, kind: Kind, c: Elem) -> Result<Ddt> {
    validate_c(f, c)?;
    let field = &**f.field();
    let sub = f.codomain();
    let width = sub.size() as usize;
    let q = field.order() as usize;
    let b_elems: Vec<Elem> = sub.elements().collect();
    let mut b_local = vec![u32::MAX; q];
    for (l, b) in b_elems.iter().enumerate() {
        b_local[b.enc() as usize] = l as u32;
    }
    // Precomputed c·x and c·F(x); the row loop is then one addition and one subtraction.
    let cx: Vec<Elem> = match kind {
        Kind::Cc => field.elements().map(|x| field.mul(c, x)).collect(),
        Kind::C => field.elements().collect(),
    };
    let cfx: Vec<Elem> = f.lut().iter().map(|&y| field.mul(c, y)).collect();
    let mut table = vec![0u32; q * width];
    let fill = |(a, row): (usize, &mut [u32])| {
        let a = Elem::from_enc(a as u32);
        for x in 0..q {
            let y = field.sub(f.eval(field.add(cx[x], a)), cfx[x]);
            row[b_local[y.enc() as usize] as usize] += 1;
        }
    };
    if q >= 256 {
        table.par_chunks_mut(width).enumerate().for_each(fill);
    } else {
        table.chunks_mut(width).enumerate().for_each(fill);
    }
    Ok(Ddt { kind, c, width, table, b_elems, b_local })
}

pub fn uniformity(f: &VecFunc, kind: Kind, c: Elem) -> Result<u32> {
    Ok(ddt(f, kind, c)?.uniformity())
}

pub fn spectrum(f: &VecFunc, kind: Kind, c: Elem) -> Result<Spectrum> {
    Ok(ddt(f, kind, c)?.spectrum())
}

pub fn cc_uniformity(f: &VecFunc, c: Elem) -> Result<u32> {
    uniformity(f, Kind::Cc, c)
}

pub fn cc_spectrum(f: &VecFunc, c: Elem) -> Result<Spectrum> {
    spectrum(f, Kind::Cc, c)
}

pub fn c_uniformity(f: &VecFunc, c: Elem) -> Result<u32> {
    uniformity(f, Kind::C, c)
}

pub fn c_spectrum(f: &VecFunc, c: Elem) -> Result<Spectrum> {
    spectrum(f, Kind::C, c)
}

/// cc-uniformity of a power map through its `a = 1` row.
///
/// For `F = x^d` with `c^{d-1} ≠ 1` every row `a ≠ 0` is a rescaling of row 1,
/// and row 0 contributes `gcd(d, p^n - 1)`. Returns `None` when `F` is not a
/// recorded power map on the full field or the shortcut does not apply.
pub fn cc_uniformity_power(f: &VecFunc, c: Elem) -> Result<Option<u32>> {
    validate_c(f, c)?;
    let field = &**f.field();
    let Origin::Power(d) = *f.origin() else {
        return Ok(None);
    };
    if f.s() != field.n() || field.pow(c, d - 1) == Elem::ONE {
        return Ok(None);
    }
    let mut counts = vec![0u32; field.order() as usize];
    for x in field.elements() {
        counts[derivative(field, f, Kind::Cc, c, Elem::ONE, x).enc() as usize] += 1;
    }
    let row1 = counts.into_iter().max().unwrap_or(0);
    let g = gcd(d, field.order() as u64 - 1) as u32;
    Ok(Some(row1.max(g)))
}

/// Default multiplier set: the nonzero codomain elements other than 1.
pub fn default_c_set(f: &VecFunc) -> Vec<Elem> {
    let mut cs: Vec<Elem> = f
        .codomain()
        .elements()
        .filter(|&c| !c.is_zero() && c != Elem::ONE)
        .collect();
    cs.sort();
    cs
}

/// Uniformity for every `c` in a set, and the multiset of those values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerCProfile {
    pub kind: Kind,
    pub values: BTreeMap<u32, u32>,
    pub spectrum: Spectrum,
}

pub fn per_c_profile(f: &VecFunc, kind: Kind, c_set: Option<&[Elem]>) -> Result<PerCProfile> {
    let cs = match c_set {
        Some(cs) => cs.to_vec(),
        None => default_c_set(f),
    };
    for &c in &cs {
        validate_c(f, c)?;
    }
    let results: Vec<(u32, u32)> = cs
        .par_iter()
        .map(|&c| uniformity(f, kind, c).map(|u| (c.enc(), u)))
        .collect::<Result<_>>()?;
    let values: BTreeMap<u32, u32> = results.into_iter().collect();
    let spectrum = Spectrum::from_values(values.values().copied());
    Ok(PerCProfile { kind, values, spectrum })
}

/// PccN (uniformity 1), APccN (uniformity 2), or the uniformity itself.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    PccN,
    APccN,
    Value(u32),
}

pub fn classify(f: &VecFunc, c: Elem) -> Result<Classification> {
    Ok(match cc_uniformity(f, c)? {
        1 => Classification::PccN,
        2 => Classification::APccN,
        k => Classification::Value(k),
    })
}

/// cc-table entry through preimage sets.
///
/// Writing `A_z = F^{-1}(z)`, the solutions are the union over codomain values `y`
/// of `A_{y/c} ∩ (A_{y+b} - a)/c`; the sets are disjoint across `y`.
pub fn cc_entry_by_preimages(f: &VecFunc, c: Elem, a: Elem, b: Elem) -> Result<u32> {
    validate_c(f, c)?;
    f.field().elem(a.enc())?;
    check_b(f, b)?;
    let field = &**f.field();
    let pre = f.preimages();
    let c_inv = field.inv(c)?;
    let mut total = 0u32;
    for y in f.codomain().elements() {
        let left = &pre[field.mul(y, c_inv).enc() as usize];
        if left.is_empty() {
            continue;
        }
        let right: std::collections::BTreeSet<Elem> = pre[field.add(y, b).enc() as usize]
            .iter()
            .map(|&z| field.mul(c_inv, field.sub(z, a)))
            .collect();
        total += left.iter().filter(|x| right.contains(x)).count() as u32;
    }
    Ok(total)
}

/// The entry at `(c, a, b)` and the entry at `(1/c, -a/c, -b/c)`; these agree.
pub fn cc_duality(f: &VecFunc, c: Elem, a: Elem, b: Elem) -> Result<(u32, u32)> {
    validate_c(f, c)?;
    let field = &**f.field();
    let ci = field.inv(c)?;
    let lhs = cc_ddt_entry(f, c, a, b)?;
    let rhs = cc_ddt_entry(f, ci, field.neg(field.mul(a, ci)), field.neg(field.mul(b, ci)))?;
    Ok((lhs, rhs))
}

/// Outcome of relating a DO function's cc-table at `c` to its c-table at `c'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoReduction {
    pub c: u32,
    pub c_prime: u32,
    /// `ccΔ(a, b) = c'Δ(a/c, b/c^{Σn})` for every `(a, b)`.
    pub entrywise: bool,
    pub cc_uniformity: u32,
    pub c_uniformity: u32,
}

impl DoReduction {
    pub fn uniformities_equal(&self) -> bool {
        self.cc_uniformity == self.c_uniformity
    }
}

/// For a DO function and `c ∈ F_p^×`, computes `c' = c^{1 - Σn}` and compares tables.
///
/// The entrywise relation always holds. The two uniformities can still differ
/// when `c ≠ 1` but `c' = 1`, since only the c-side then drops its `a = 0` row.
pub fn do_reduction(f: &VecFunc, c: Elem) -> Result<DoReduction> {
    let Origin::Do(desc) = f.origin() else {
        return Err(Error::NotDoOrigin);
    };
    validate_c(f, c)?;
    let field = &**f.field();
    if !field.in_subfield(c, 1) {
        return Err(Error::InvalidC(c.enc()));
    }
    let sigma = desc.type_sum();
    let c_prime = field.pow_signed(c, 1 - sigma)?;
    let c_sigma = field.pow_signed(c, sigma)?;
    let cc = ddt(f, Kind::Cc, c)?;
    let cp = ddt(f, Kind::C, c_prime)?;
    let ci = field.inv(c)?;
    let cs_inv = field.inv(c_sigma)?;
    let entrywise = field.elements().all(|a| {
        let a2 = field.mul(a, ci);
        cc.row_entries(a)
            .all(|(b, n)| cp.entry(a2, field.mul(b, cs_inv)) == n)
    });
    Ok(DoReduction {
        c: c.enc(),
        c_prime: c_prime.enc(),
        entrywise,
        cc_uniformity: cc.uniformity(),
        c_uniformity: cp.uniformity(),
    })
}

/// Result of perturbing `F` into `G = F + u·Tr^t_s(vF)`.
#[derive(Clone, Debug)]
pub struct TracePerturbation {
    pub g: VecFunc,
    pub f_uniformity: u32,
    pub g_uniformity: u32,
}

/// `G(x) = F(x) + u·Tr^t_s(v F(x))` on the codomain GF(p^s) of `F`, with `t | s`.
pub fn trace_perturb(f: &VecFunc, u: Elem, v: Elem, t: u32) -> Result<VecFunc> {
    let field = f.field().clone();
    let s = f.s();
    let sub = f.codomain();
    if !sub.contains(u) || !sub.contains(v) {
        return Err(Error::BadParameters("u and v must lie in the codomain".into()));
    }
    if t == 0 || !s.is_multiple_of(t) {
        return Err(Error::NotADivisor { s: t, n: s });
    }
    let lut = f
        .lut()
        .iter()
        .map(|&y| {
            let tr = field.relative_trace(field.mul(v, y), s, t)?;
            Ok(field.add(y, field.mul(u, tr)))
        })
        .collect::<Result<Vec<_>>>()?;
    VecFunc::from_lut(field, s, lut)
}

/// Builds the perturbation and both cc-uniformities at `c ∈ GF(p^t)^×`.
///
/// Requires `Tr^t_s(-uv) ≠ 1`, which makes `y ↦ y + u·Tr(vy)` a permutation.
pub fn trace_perturb_invariance(
    f: &VecFunc,
    u: Elem,
    v: Elem,
    t: u32,
    c: Elem,
) -> Result<TracePerturbation> {
    let field = &**f.field();
    let g = trace_perturb(f, u, v, t)?;
    if !field.in_subfield(c, t) {
        return Err(Error::InvalidC(c.enc()));
    }
    let tr = field.relative_trace(field.neg(field.mul(u, v)), f.s(), t)?;
    if tr == Elem::ONE {
        return Err(Error::HypothesisViolated(format!(
            "trace of -uv equals 1 for u = {u}, v = {v}"
        )));
    }
    Ok(TracePerturbation {
        f_uniformity: cc_uniformity(f, c)?,
        g_uniformity: cc_uniformity(&g, c)?,
        g,
    })
}

/// Symmetry class of a function under `x ↦ -x`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
    Neither,
}

/// Checks of the `c = -1` structure for one function in odd characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinusOneReport {
    /// Every entry with `b ≠ 2F(a/2)` is even.
    pub evenness: bool,
    /// Every equation `F(a-x) + F(x) = b` has no solution for `b ≠ 2F(a/2)` and
    /// only `x = a/2` otherwise.
    pub pccn_criterion: bool,
    pub is_pccn: bool,
    pub cc_uniformity: u32,
    pub parity: Parity,
    /// Odd `F`: `ccΔ(a, b) = Δ(-a, -b)` entrywise against the classical table.
    pub odd_identity: Option<bool>,
    /// Even `F`: `ccΔ(a, b) = cΔ(-a, b)` entrywise at `c = -1`.
    pub even_identity: Option<bool>,
}

impl MinusOneReport {
    /// The criterion and the direct uniformity agree on whether `F` is PccN.
    pub fn criterion_consistent(&self) -> bool {
        self.pccn_criterion == self.is_pccn
    }
}

pub fn parity(f: &VecFunc) -> Parity {
    let field = &**f.field();
    let neg = |x| field.neg(x);
    if field.elements().all(|x| f.eval(neg(x)) == neg(f.eval(x))) {
        Parity::Odd
    } else if field.elements().all(|x| f.eval(neg(x)) == f.eval(x)) {
        Parity::Even
    } else {
        Parity::Neither
    }
}

pub fn minus_one_checks(f: &VecFunc) -> Result<MinusOneReport> {
    let field = &**f.field();
    if field.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let m1 = field.neg(Elem::ONE);
    let half = field.inv(field.scalar(2))?;
    let cc = ddt(f, Kind::Cc, m1)?;
    let mut evenness = true;
    let mut pccn_criterion = true;
    for a in field.elements() {
        let mid = field.mul(a, half);
        let special = field.add(f.eval(mid), f.eval(mid));
        for (b, n) in cc.row_entries(a) {
            if b != special {
                evenness &= n % 2 == 0;
                pccn_criterion &= n == 0;
            } else {
                // x = a/2 always solves this one; it must be the only solution.
                pccn_criterion &= n == 1;
            }
        }
    }
    let cc_uniformity = cc.uniformity();
    let par = parity(f);
    let odd_identity = (par == Parity::Odd)
        .then(|| -> Result<bool> {
            let classical = ddt(f, Kind::C, Elem::ONE)?;
            Ok(field.elements().all(|a| {
                cc.row_entries(a)
                    .all(|(b, n)| classical.entry(field.neg(a), field.neg(b)) == n)
            }))
        })
        .transpose()?;
    let even_identity = (par == Parity::Even)
        .then(|| -> Result<bool> {
            let ctab = ddt(f, Kind::C, m1)?;
            Ok(field.elements().all(|a| {
                cc.row_entries(a).all(|(b, n)| ctab.entry(field.neg(a), b) == n)
            }))
        })
        .transpose()?;
    Ok(MinusOneReport {
        evenness,
        pccn_criterion,
        is_pccn: cc_uniformity == 1,
        cc_uniformity,
        parity: par,
        odd_identity,
        even_identity,
    })
}

/// For even `E` and affine `A`, the pair `(ccΔ_{E+A}, cΔ_E)` at `c = -1`.
pub fn even_plus_affine(e: &VecFunc, affine: &VecFunc) -> Result<(u32, u32)> {
    let field = &**e.field();
    if field.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let m1 = field.neg(Elem::ONE);
    let f = e.pointwise_add(affine)?;
    Ok((cc_uniformity(&f, m1)?, c_uniformity(e, m1)?))
}

/// JSON object `{"kind":..,"c":..,"spectrum":{..},"uniformity":..}`.
pub fn spectrum_json(table: &Ddt) -> serde_json::Value {
    serde_json::json!({
        "kind": table.kind(),
        "c": table.c().enc(),
        "spectrum": table.spectrum(),
        "uniformity": table.uniformity(),
    })
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
    fn c_one_zero_shift() {
        let f = gf(2, 4);
        let x3 = VecFunc::from_power(f.clone(), 3, 4).unwrap();
        assert_eq!(cc_ddt_entry(&x3, Elem::ONE, Elem::ZERO, Elem::from_enc(5)).unwrap(), 0);
        assert_eq!(cc_ddt_entry(&x3, Elem::ONE, Elem::ZERO, Elem::ZERO).unwrap(), 16);
        // Classical APN.
        assert_eq!(cc_uniformity(&x3, Elem::ONE).unwrap(), 2);
        assert_eq!(c_uniformity(&x3, Elem::ONE).unwrap(), 2);
    }

    #[test]
    fn invalid_multipliers() {
        let f = gf(2, 4);
        let x5 = VecFunc::from_power(f.clone(), 5, 2).unwrap();
        assert_eq!(cc_uniformity(&x5, Elem::ZERO), Err(Error::InvalidC(0)));
        // enc 2 is the generator x, outside F_4.
        assert_eq!(cc_uniformity(&x5, Elem::from_enc(2)), Err(Error::InvalidC(2)));
    }

    #[test]
    fn row_sums_and_mass() {
        let f = gf(3, 2);
        let g = VecFunc::from_power(f.clone(), 5, 2).unwrap();
        for c in f.nonzero_elements() {
            for kind in [Kind::C, Kind::Cc] {
                let t = ddt(&g, kind, c).unwrap();
                for a in f.elements() {
                    assert_eq!(t.row(a).iter().sum::<u32>(), 9);
                }
                assert_eq!(t.spectrum().total(), 81);
            }
        }
    }

    #[test]
    fn table_matches_single_entries() {
        let f = gf(2, 4);
        let g = VecFunc::from_power(f.clone(), 7, 4).unwrap();
        let c = Elem::from_enc(6);
        let t = ddt(&g, Kind::Cc, c).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(t.entry(a, b), cc_ddt_entry(&g, c, a, b).unwrap());
            }
        }
    }

    #[test]
    fn identity_is_forced_count() {
        let f = gf(3, 2);
        let id = VecFunc::identity(f.clone());
        assert_eq!(classify(&id, Elem::from_enc(2)).unwrap(), Classification::Value(9));
    }

    #[test]
    fn constant_preimage_oracle() {
        let f = gf(3, 2);
        let k = Elem::from_enc(7);
        let g = VecFunc::constant(f.clone(), k, 2).unwrap();
        let c = Elem::from_enc(4);
        let forced = f.mul(f.sub(Elem::ONE, c), k);
        for b in f.elements() {
            let want = if b == forced { 9 } else { 0 };
            assert_eq!(cc_entry_by_preimages(&g, c, Elem::from_enc(3), b).unwrap(), want);
        }
    }

    #[test]
    fn power_shortcut_matches_table() {
        for (p, n) in [(2, 4), (3, 2), (2, 5)] {
            let f = gf(p, n);
            for d in 1..f.order() as u64 - 1 {
                let g = VecFunc::from_power(f.clone(), d, n).unwrap();
                for c in f.nonzero_elements() {
                    if let Some(u) = cc_uniformity_power(&g, c).unwrap() {
                        assert_eq!(u, cc_uniformity(&g, c).unwrap(), "d={d} c={c}");
                    }
                }
            }
        }
    }

    #[test]
    fn csv_and_json_shapes() {
        let f = gf(2, 2);
        let g = VecFunc::from_power(f.clone(), 3, 2).unwrap();
        let t = ddt(&g, Kind::Cc, Elem::from_enc(2)).unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with("a,b,count\n0,0,"));
        assert_eq!(csv.lines().count(), 17);
        let js = spectrum_json(&t);
        assert_eq!(js["kind"], "cc");
        assert_eq!(js["c"], 2);
        assert!(js["spectrum"].is_object());
    }

    #[test]
    fn x_squared_minus_one() {
        let f = gf(3, 2);
        let sq = VecFunc::from_power(f, 2, 2).unwrap();
        let r = minus_one_checks(&sq).unwrap();
        assert!(r.evenness && r.criterion_consistent());
        assert_eq!(r.cc_uniformity, 2);
        assert_eq!(r.parity, Parity::Even);
        assert_eq!(r.even_identity, Some(true));
        let g2 = gf(2, 3);
        let x = VecFunc::identity(g2);
        assert_eq!(minus_one_checks(&x), Err(Error::EvenCharacteristic));
    }
}
