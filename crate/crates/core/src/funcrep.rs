//! Functions `GF(p^n) → GF(p^s)` with `s | n`, stored as full lookup tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx, Subfield};

const PAR_THRESHOLD: u32 = 1024;

/// Generalized Dembowski–Ostrom descriptor.
///
/// Evaluates `Σ a_{i_1…i_k} x^{n_1 p^{i_1} + … + n_k p^{i_k}}` where the type vector
/// holds `(n_1, …, n_k)` and the coefficient map is keyed by `(i_1, …, i_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoDescriptor {
    pub type_vector: Vec<i64>,
    pub coeffs: BTreeMap<Vec<u32>, Elem>,
}

impl DoDescriptor {
    pub fn new(type_vector: Vec<i64>, coeffs: BTreeMap<Vec<u32>, Elem>) -> DoDescriptor {
        DoDescriptor { type_vector, coeffs }
    }

    pub fn weight(&self) -> usize {
        self.type_vector.len()
    }

    /// `Σ n_s`.
    pub fn type_sum(&self) -> i64 {
        self.type_vector.iter().sum()
    }
}

/// How a table was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Power(u64),
    Univariate(Vec<Elem>),
    Do(DoDescriptor),
    Composite,
    Raw,
}

/// A total function from GF(p^n) into its subfield GF(p^s).
#[derive(Clone, Debug)]
pub struct VecFunc {
    field: Arc<FieldCtx>,
    s: u32,
    lut: Vec<Elem>,
    origin: Origin,
}

impl PartialEq for VecFunc {
    fn eq(&self, other: &Self) -> bool {
        self.s == other.s && *self.field == *other.field && self.lut == other.lut
    }
}

impl Eq for VecFunc {}

fn tabulate<G>(field: &FieldCtx, g: G) -> Vec<Elem>
where
    G: Fn(Elem) -> Elem + Sync + Send,
{
    if field.order() >= PAR_THRESHOLD {
        (0..field.order()).into_par_iter().map(|e| g(Elem::from_enc(e))).collect()
    } else {
        field.elements().map(g).collect()
    }
}

impl VecFunc {
    /// Wraps a table, checking its length and that every value lies in GF(p^s).
    pub fn from_lut(field: Arc<FieldCtx>, s: u32, lut: Vec<Elem>) -> Result<VecFunc> {
        Self::with_origin(field, s, lut, Origin::Raw)
    }

    fn with_origin(field: Arc<FieldCtx>, s: u32, lut: Vec<Elem>, origin: Origin) -> Result<VecFunc> {
        let sub = field.subfield(s)?;
        if lut.len() != field.order() as usize {
            return Err(Error::BadParameters(format!(
                "table has {} entries, expected {}",
                lut.len(),
                field.order()
            )));
        }
        for (i, &y) in lut.iter().enumerate() {
            if y.enc() >= field.order() || !sub.contains(y) {
                return Err(Error::CodomainViolation { input: i as u32, value: y.enc(), s });
            }
        }
        Ok(VecFunc { field, s, lut, origin })
    }

    /// Tabulates an arbitrary closure.
    pub fn from_fn<G>(field: Arc<FieldCtx>, s: u32, g: G) -> Result<VecFunc>
    where
        G: Fn(Elem) -> Elem + Sync + Send,
    {
        let lut = tabulate(&field, g);
        Self::from_lut(field, s, lut)
    }

    /// `x ↦ x^d` with `0^d = 0`.
    pub fn from_power(field: Arc<FieldCtx>, d: u64, s: u32) -> Result<VecFunc> {
        if d == 0 {
            return Err(Error::BadParameters("power exponent must be at least 1".into()));
        }
        let lut = tabulate(&field, |x| field.pow(x, d));
        Self::with_origin(field, s, lut, Origin::Power(d))
    }

    /// `x ↦ Σ coeffs[j] x^j` by Horner evaluation.
    pub fn from_univariate(field: Arc<FieldCtx>, coeffs: &[Elem], s: u32) -> Result<VecFunc> {
        if coeffs.len() > field.order() as usize {
            return Err(Error::BadParameters(format!(
                "{} coefficients exceed the field order {}",
                coeffs.len(),
                field.order()
            )));
        }
        for &c in coeffs {
            field.elem(c.enc())?;
        }
        let lut = tabulate(&field, |x| horner(&field, coeffs, x));
        Self::with_origin(field, s, lut, Origin::Univariate(coeffs.to_vec()))
    }

    /// Evaluates a generalized DO polynomial into the full field.
    ///
    /// Exponents are reduced mod `p^n - 1`. At `x = 0` a monomial contributes its
    /// coefficient only when its unreduced exponent is exactly zero.
    pub fn from_do(field: Arc<FieldCtx>, desc: &DoDescriptor) -> Result<VecFunc> {
        if desc.type_vector.is_empty() || desc.type_vector.contains(&0) {
            return Err(Error::BadParameters("DO type vector must hold nonzero integers".into()));
        }
        let q1 = field.order() as i64 - 1;
        let n = field.n();
        let mut terms = Vec::with_capacity(desc.coeffs.len());
        for (idx, &a) in &desc.coeffs {
            if idx.len() != desc.weight() || idx.iter().any(|&i| i >= n) {
                return Err(Error::BadParameters(format!("bad DO index tuple {idx:?}")));
            }
            field.elem(a.enc())?;
            let e: i64 = idx
                .iter()
                .zip(&desc.type_vector)
                .map(|(&i, &ns)| ns * (field.p() as i64).pow(i))
                .sum();
            terms.push((a, e, e.rem_euclid(q1) as u64));
        }
        let lut = tabulate(&field, |x| {
            terms.iter().fold(Elem::ZERO, |acc, &(a, e, r)| {
                let m = if x.is_zero() {
                    if e == 0 { Elem::ONE } else { Elem::ZERO }
                } else {
                    field.pow(x, r)
                };
                field.add(acc, field.mul(a, m))
            })
        });
        let n = field.n();
        Self::with_origin(field, n, lut, Origin::Do(desc.clone()))
    }

    pub fn identity(field: Arc<FieldCtx>) -> VecFunc {
        let n = field.n();
        let lut = field.elements().collect();
        VecFunc { field, s: n, lut, origin: Origin::Power(1) }
    }

    /// Uniformly random lookup table into GF(p^s).
    pub fn random<R: Rng + ?Sized>(field: Arc<FieldCtx>, s: u32, rng: &mut R) -> Result<VecFunc> {
        let cod = field.subfield(s)?;
        let lut = (0..field.order()).map(|_| cod.elem(rng.gen_range(0..cod.size()))).collect();
        Self::from_lut(field, s, lut)
    }

    /// Uniformly random permutation of GF(p^n).
    pub fn random_permutation<R: Rng + ?Sized>(field: Arc<FieldCtx>, rng: &mut R) -> VecFunc {
        use rand::seq::SliceRandom;
        let mut lut: Vec<Elem> = field.elements().collect();
        lut.shuffle(rng);
        let n = field.n();
        VecFunc { field, s: n, lut, origin: Origin::Raw }
    }

    pub fn constant(field: Arc<FieldCtx>, b: Elem, s: u32) -> Result<VecFunc> {
        let lut = vec![b; field.order() as usize];
        Self::from_lut(field, s, lut)
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    /// Codomain subfield degree.
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn codomain(&self) -> &Subfield {
        self.field.subfield(self.s).expect("s divides n by construction")
    }

    pub fn lut(&self) -> &[Elem] {
        &self.lut
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    #[inline]
    pub fn eval(&self, x: Elem) -> Elem {
        self.lut[x.enc() as usize]
    }

    /// Re-tags the codomain, checking that every value lies in GF(p^s).
    pub fn with_codomain(&self, s: u32) -> Result<VecFunc> {
        Self::with_origin(self.field.clone(), s, self.lut.clone(), self.origin.clone())
    }

    fn same_field(&self, other: &VecFunc) -> Result<()> {
        if *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    fn derived(&self, s: u32, lut: Vec<Elem>) -> Result<VecFunc> {
        Self::with_origin(self.field.clone(), s, lut, Origin::Composite)
    }

    /// `x ↦ outer(self(x))`.
    pub fn then(&self, outer: &VecFunc) -> Result<VecFunc> {
        compose(outer, self)
    }

    pub fn pointwise_add(&self, other: &VecFunc) -> Result<VecFunc> {
        self.same_field(other)?;
        if self.s != other.s {
            return Err(Error::DomainMismatch);
        }
        let f = &self.field;
        let lut = self.lut.iter().zip(&other.lut).map(|(&a, &b)| f.add(a, b)).collect();
        self.derived(self.s, lut)
    }

    pub fn neg(&self) -> VecFunc {
        let f = &self.field;
        let lut = self.lut.iter().map(|&a| f.neg(a)).collect();
        self.derived(self.s, lut).expect("subfields are closed under negation")
    }

    pub fn pointwise_sub(&self, other: &VecFunc) -> Result<VecFunc> {
        self.pointwise_add(&other.neg())
    }

    /// `x ↦ λ F(x)`; the codomain widens to GF(p^n) when `λ` is outside GF(p^s).
    pub fn scale(&self, lambda: Elem) -> Result<VecFunc> {
        let f = &self.field;
        f.elem(lambda.enc())?;
        let s = if self.codomain().contains(lambda) { self.s } else { f.n() };
        let lut = self.lut.iter().map(|&a| f.mul(lambda, a)).collect();
        self.derived(s, lut)
    }

    /// `x ↦ F(x + a)`.
    pub fn translate_in(&self, a: Elem) -> Result<VecFunc> {
        let f = &self.field;
        f.elem(a.enc())?;
        let lut = f.elements().map(|x| self.eval(f.add(x, a))).collect();
        self.derived(self.s, lut)
    }

    /// `x ↦ F(x) + b`.
    pub fn translate_out(&self, b: Elem) -> Result<VecFunc> {
        let f = &self.field;
        f.elem(b.enc())?;
        let s = if self.codomain().contains(b) { self.s } else { f.n() };
        let lut = self.lut.iter().map(|&y| f.add(y, b)).collect();
        self.derived(s, lut)
    }

    pub fn is_permutation(&self) -> bool {
        if self.s != self.field.n() {
            return self.field.order() == 1;
        }
        let mut seen = vec![false; self.lut.len()];
        self.lut.iter().all(|y| !std::mem::replace(&mut seen[y.enc() as usize], true))
    }

    pub fn inverse(&self) -> Result<VecFunc> {
        if !self.is_permutation() {
            return Err(Error::NotAPermutation);
        }
        let mut lut = vec![Elem::ZERO; self.lut.len()];
        for (x, y) in self.lut.iter().enumerate() {
            lut[y.enc() as usize] = Elem::from_enc(x as u32);
        }
        self.derived(self.s, lut)
    }

    /// Preimage sets `F^{-1}(y)`, keyed by the value's encoding.
    pub fn preimages(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.field.order() as usize];
        for (x, y) in self.lut.iter().enumerate() {
            out[y.enc() as usize].push(Elem::from_enc(x as u32));
        }
        out
    }

    /// Univariate coefficients `a_0, …` of the unique polynomial of degree `< p^n`
    /// agreeing with the table; trailing zeros are dropped, leaving at least one entry.
    pub fn interpolate(&self) -> Vec<Elem> {
        let f = &*self.field;
        let q = f.order() as u64;
        let coef = |j: u64| -> Elem {
            if j == 0 {
                return self.eval(Elem::ZERO);
            }
            let e = q - 1 - j;
            let sum = f
                .elements()
                .fold(Elem::ZERO, |acc, x| f.add(acc, f.mul(self.eval(x), f.pow(x, e))));
            f.neg(sum)
        };
        let mut out: Vec<Elem> = if q >= PAR_THRESHOLD as u64 {
            (0..q).into_par_iter().map(coef).collect()
        } else {
            (0..q).map(coef).collect()
        };
        while out.len() > 1 && out.last() == Some(&Elem::ZERO) {
            out.pop();
        }
        out
    }

    /// Largest p-weight of an exponent with nonzero coefficient; 0 for the zero function.
    pub fn algebraic_degree(&self) -> u32 {
        let p = self.field.p() as usize;
        self.interpolate()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, _)| p_weight(j, p))
            .max()
            .unwrap_or(0)
    }

    /// LUT text: header `p n s modulus_enc`, then one decimal encoding per line.
    pub fn to_lut_string(&self) -> String {
        let f = &self.field;
        let mut out = format!("{} {} {} {}\n", f.p(), f.n(), self.s, f.modulus());
        for y in &self.lut {
            writeln!(out, "{}", y.enc()).expect("write to String");
        }
        out
    }

    pub fn from_lut_str(text: &str) -> Result<VecFunc> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty LUT file".into()))?;
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad LUT header {header:?}"))))
            .collect::<Result<_>>()?;
        let [p, n, s, modulus] = nums[..] else {
            return Err(Error::Parse(format!("LUT header needs 4 fields, got {header:?}")));
        };
        let field = FieldCtx::new(p as u32, n as u32, Some(modulus))?;
        let lut = lines
            .map(|l| {
                l.parse::<u32>()
                    .map(Elem::from_enc)
                    .map_err(|_| Error::Parse(format!("bad LUT entry {l:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        VecFunc::from_lut(field, s as u32, lut)
    }
}

pub(crate) fn p_weight(mut j: usize, p: usize) -> u32 {
    let mut w = 0;
    while j > 0 {
        w += (j % p) as u32;
        j /= p;
    }
    w
}

fn horner(f: &FieldCtx, coeffs: &[Elem], x: Elem) -> Elem {
    coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

/// `x ↦ g(f(x))`; the codomain of `f` must sit inside the domain of `g`.
pub fn compose(g: &VecFunc, f: &VecFunc) -> Result<VecFunc> {
    f.same_field(g)?;
    let lut = f.lut.iter().map(|&y| g.eval(y)).collect();
    f.derived(g.s, lut)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, n: u32) -> Arc<FieldCtx> {
        FieldCtx::new(p, n, None).unwrap()
    }

    #[test]
    fn power_maps_and_permutations() {
        let f = gf(2, 4);
        let id = VecFunc::from_power(f.clone(), 1, 4).unwrap();
        assert_eq!(id, VecFunc::identity(f.clone()));
        assert_eq!(id.inverse().unwrap(), id);
        assert!(!VecFunc::from_power(f.clone(), 3, 4).unwrap().is_permutation());
        let x7 = VecFunc::from_power(f.clone(), 7, 4).unwrap();
        assert!(x7.is_permutation());
        let inv = x7.inverse().unwrap();
        for y in f.elements() {
            assert_eq!(x7.eval(inv.eval(y)), y);
        }
        assert_eq!(VecFunc::from_power(f, 3, 4).unwrap().inverse(), Err(Error::NotAPermutation));
        let g = gf(3, 2);
        let sq = VecFunc::from_power(g, 2, 2).unwrap();
        assert!(!sq.is_permutation());
        let mut image: Vec<_> = sq.lut().to_vec();
        image.sort();
        image.dedup();
        assert_eq!(image.len(), 5);
    }

    #[test]
    fn codomain_violation() {
        let f = gf(2, 4);
        assert!(matches!(
            VecFunc::from_power(f.clone(), 3, 2),
            Err(Error::CodomainViolation { .. })
        ));
        // x^5 maps F_16^× onto the cube roots of unity, i.e. into F_4.
        assert!(VecFunc::from_power(f, 5, 2).is_ok());
    }

    #[test]
    fn constant_and_monomial_interpolation() {
        let f = gf(2, 4);
        let k = VecFunc::constant(f.clone(), Elem::from_enc(9), 4).unwrap();
        assert_eq!(k.interpolate(), vec![Elem::from_enc(9)]);
        assert_eq!(k.algebraic_degree(), 0);
        let x3 = VecFunc::from_power(f.clone(), 3, 4).unwrap();
        let c = x3.interpolate();
        assert_eq!(c.len(), 4);
        assert_eq!(c[3], Elem::ONE);
        assert!(c[..3].iter().all(|e| e.is_zero()));
        assert_eq!(x3.algebraic_degree(), 2);
        let zero = VecFunc::constant(f, Elem::ZERO, 4).unwrap();
        assert_eq!(zero.algebraic_degree(), 0);
    }

    #[test]
    fn x_plus_trace_cube_two_ways() {
        let f = gf(2, 6);
        let direct = VecFunc::from_fn(f.clone(), 6, |x| {
            f.add(x, f.trace(f.pow(x, 3), 1).unwrap())
        })
        .unwrap();
        let mut coeffs = vec![Elem::ZERO; 49];
        coeffs[1] = Elem::ONE;
        for e in [3, 6, 12, 24, 48, 96 % 63] {
            coeffs[e] = Elem::ONE;
        }
        let poly = VecFunc::from_univariate(f, &coeffs, 6).unwrap();
        assert_eq!(poly, direct);
    }

    #[test]
    fn do_descriptors() {
        let f = gf(3, 2);
        // Weight 1, type (1): linearized polynomial a_0 x + a_1 x^3.
        let a0 = Elem::from_enc(2);
        let a1 = Elem::from_enc(5);
        let lin = DoDescriptor::new(vec![1], BTreeMap::from([(vec![0], a0), (vec![1], a1)]));
        let g = VecFunc::from_do(f.clone(), &lin).unwrap();
        for x in f.elements() {
            let want = f.add(f.mul(a0, x), f.mul(a1, f.pow(x, 3)));
            assert_eq!(g.eval(x), want);
        }
        // Weight 2, type (1,1), single coefficient at (1,0): x^{p+1}.
        let gold = DoDescriptor::new(vec![1, 1], BTreeMap::from([(vec![1, 0], Elem::ONE)]));
        assert_eq!(
            VecFunc::from_do(f.clone(), &gold).unwrap(),
            VecFunc::from_power(f.clone(), 4, 2).unwrap()
        );
        // Weight 1, type (-1): x^{-p}.
        let neg = DoDescriptor::new(vec![-1], BTreeMap::from([(vec![1], Elem::ONE)]));
        let h = VecFunc::from_do(f.clone(), &neg).unwrap();
        for x in f.nonzero_elements() {
            assert_eq!(h.eval(x), f.pow(x, 8 - 3));
        }
        assert_eq!(h.eval(Elem::ZERO), Elem::ZERO);
    }

    #[test]
    fn scale_matches_prescaled_input() {
        let f = gf(3, 2);
        let sq = VecFunc::from_power(f.clone(), 2, 2).unwrap();
        for r in f.nonzero_elements() {
            let c = f.mul(r, r);
            let scaled = sq.scale(c).unwrap();
            for x in f.elements() {
                assert_eq!(scaled.eval(x), sq.eval(f.mul(r, x)));
            }
        }
    }

    #[test]
    fn algebra_identities() {
        let f = gf(2, 4);
        let x3 = VecFunc::from_power(f.clone(), 3, 4).unwrap();
        let id = VecFunc::identity(f.clone());
        assert_eq!(compose(&id, &x3).unwrap(), x3);
        let zero = VecFunc::constant(f.clone(), Elem::ZERO, 4).unwrap();
        assert_eq!(x3.pointwise_add(&x3.neg()).unwrap(), zero);
        let other = gf(3, 2);
        assert_eq!(
            x3.pointwise_add(&VecFunc::identity(other)),
            Err(Error::DomainMismatch)
        );
    }

    #[test]
    fn lut_text_round_trip() {
        let f = gf(3, 2);
        let g = VecFunc::from_power(f, 5, 2).unwrap();
        let text = g.to_lut_string();
        assert!(text.starts_with("3 2 2 10\n"));
        assert_eq!(VecFunc::from_lut_str(&text).unwrap(), g);
        assert!(matches!(VecFunc::from_lut_str("3 2\n"), Err(Error::Parse(_))));
    }
}
