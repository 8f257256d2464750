//! Affine and c-affine maps, graph transforms, and the c-equivalence checks.
//!
//! Maps are F_p-matrices acting on coordinates. An element of GF(p^d) ⊆ GF(p^n)
//! is written in the coordinates of [`Subfield`](crate::gf::Subfield) `d`, so for
//! `d = n` the coordinates are the base-p digits of the encoding. Points of
//! `GF(p^n) × GF(p^s)` concatenate the two coordinate vectors.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::diffspec::{self, Spectrum};
use crate::error::{Error, Result};
use crate::funcrep::VecFunc;
use crate::gf::{gcd, Elem, FieldCtx, Subfield};
use crate::linalg::FpMatrix;

fn sub(field: &FieldCtx, d: u32) -> Result<&Subfield> {
    field.subfield(d)
}

fn coords(field: &FieldCtx, d: u32, x: Elem) -> Result<Vec<u32>> {
    sub(field, d)?
        .coords(x)
        .ok_or_else(|| Error::BadParameters(format!("{x} is not in GF(p^{d})")))
}

/// Matrix of `x ↦ c·x` on GF(p^d), or `None` when `c` is outside that subfield.
fn scaling_matrix(field: &FieldCtx, d: u32, c: Elem) -> Option<FpMatrix> {
    let s = field.subfield(d).ok()?;
    if !s.contains(c) {
        return None;
    }
    let cols: Vec<Vec<u32>> = s
        .basis()
        .iter()
        .map(|&b| s.coords(field.mul(c, b)).expect("subfield is closed"))
        .collect();
    Some(FpMatrix::from_cols(field.p(), &cols))
}

/// `A(x) = L(x) + A(0)` from GF(p^{in_deg}) to GF(p^{out_deg}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    field: Arc<FieldCtx>,
    in_deg: u32,
    out_deg: u32,
    matrix: FpMatrix,
    constant: Elem,
}

impl AffineMap {
    pub fn new(
        field: Arc<FieldCtx>,
        in_deg: u32,
        out_deg: u32,
        matrix: FpMatrix,
        constant: Elem,
    ) -> Result<AffineMap> {
        sub(&field, in_deg)?;
        if !sub(&field, out_deg)?.contains(constant) {
            return Err(Error::BadParameters("constant outside the codomain".into()));
        }
        if matrix.rows() != out_deg as usize || matrix.cols() != in_deg as usize || matrix.p() != field.p() {
            return Err(Error::BadParameters("matrix shape does not match degrees".into()));
        }
        Ok(AffineMap { field, in_deg, out_deg, matrix, constant })
    }

    /// Reads off the matrix from basis images and checks affinity at every point.
    pub fn from_fn<G: Fn(Elem) -> Elem>(
        field: Arc<FieldCtx>,
        in_deg: u32,
        out_deg: u32,
        g: G,
    ) -> Result<AffineMap> {
        let constant = g(Elem::ZERO);
        let cols = sub(&field, in_deg)?
            .basis()
            .iter()
            .map(|&b| coords(&field, out_deg, field.sub(g(b), constant)))
            .collect::<Result<Vec<_>>>()?;
        let matrix = FpMatrix::from_cols(field.p(), &cols);
        let map = AffineMap::new(field.clone(), in_deg, out_deg, matrix, constant)?;
        if sub(&field, in_deg)?.elements().any(|x| map.apply(x) != g(x)) {
            return Err(Error::BadParameters("function is not affine".into()));
        }
        Ok(map)
    }

    pub fn identity(field: Arc<FieldCtx>, deg: u32) -> Result<AffineMap> {
        let m = FpMatrix::identity(field.p(), deg as usize);
        AffineMap::new(field, deg, deg, m, Elem::ZERO)
    }

    pub fn zero(field: Arc<FieldCtx>, in_deg: u32, out_deg: u32) -> Result<AffineMap> {
        let m = FpMatrix::zeros(field.p(), out_deg as usize, in_deg as usize);
        AffineMap::new(field, in_deg, out_deg, m, Elem::ZERO)
    }

    /// `x ↦ λx + μ` on GF(p^deg).
    pub fn scalar(field: Arc<FieldCtx>, deg: u32, lambda: Elem, mu: Elem) -> Result<AffineMap> {
        let f = field.clone();
        AffineMap::from_fn(field, deg, deg, move |x| f.add(f.mul(lambda, x), mu))
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn in_deg(&self) -> u32 {
        self.in_deg
    }

    pub fn out_deg(&self) -> u32 {
        self.out_deg
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn constant(&self) -> Elem {
        self.constant
    }

    pub fn linear_part(&self, x: Elem) -> Elem {
        let v = coords(&self.field, self.in_deg, x).expect("input in domain");
        let out = self.matrix.mul_vec(&v);
        sub(&self.field, self.out_deg).expect("valid degree").from_coords(&out)
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.field.add(self.linear_part(x), self.constant)
    }

    pub fn is_permutation(&self) -> bool {
        self.in_deg == self.out_deg && self.matrix.is_invertible()
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let inv = self.matrix.inverse().filter(|_| self.in_deg == self.out_deg);
        let inv = inv.ok_or(Error::NotAPermutation)?;
        let mut map = AffineMap::new(self.field.clone(), self.out_deg, self.in_deg, inv, Elem::ZERO)?;
        map.constant = self.field.neg(map.linear_part(self.constant));
        Ok(map)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> Result<AffineMap> {
        if inner.out_deg != self.in_deg || *inner.field != *self.field {
            return Err(Error::DomainMismatch);
        }
        let matrix = self.matrix.mul(&inner.matrix);
        let constant = self.apply(inner.constant);
        AffineMap::new(self.field.clone(), inner.in_deg, self.out_deg, matrix, constant)
    }

    /// `L(cx) = cL(x)` on a basis; false when `c` is outside either subfield.
    pub fn is_c_affine(&self, c: Elem) -> bool {
        let (Some(ci), Some(co)) = (
            scaling_matrix(&self.field, self.in_deg, c),
            scaling_matrix(&self.field, self.out_deg, c),
        ) else {
            return false;
        };
        self.matrix.mul(&ci) == co.mul(&self.matrix)
    }

    /// The map as a function on the full field (requires `in_deg = n`).
    pub fn to_vecfunc(&self) -> Result<VecFunc> {
        if self.in_deg != self.field.n() {
            return Err(Error::DomainMismatch);
        }
        VecFunc::from_fn(self.field.clone(), self.out_deg, |x| self.apply(x))
    }
}

/// An affine map of `GF(p^n) × GF(p^s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductAffineMap {
    field: Arc<FieldCtx>,
    s: u32,
    matrix: FpMatrix,
    constant: (Elem, Elem),
}

impl ProductAffineMap {
    pub fn new(
        field: Arc<FieldCtx>,
        s: u32,
        matrix: FpMatrix,
        constant: (Elem, Elem),
    ) -> Result<ProductAffineMap> {
        let dim = (field.n() + s) as usize;
        let cod = sub(&field, s)?;
        field.elem(constant.0.enc())?;
        if !cod.contains(constant.1) {
            return Err(Error::BadParameters("constant outside the codomain".into()));
        }
        if matrix.rows() != dim || matrix.cols() != dim || matrix.p() != field.p() {
            return Err(Error::BadParameters(format!("product map needs a {dim}x{dim} matrix")));
        }
        Ok(ProductAffineMap { field, s, matrix, constant })
    }

    /// Reads off the matrix from basis images and checks affinity at every point.
    pub fn from_fn<G: Fn(Elem, Elem) -> (Elem, Elem)>(
        field: Arc<FieldCtx>,
        s: u32,
        g: G,
    ) -> Result<ProductAffineMap> {
        let n = field.n();
        let cod = sub(&field, s)?;
        let (c0, c1) = g(Elem::ZERO, Elem::ZERO);
        let mut cols = Vec::with_capacity((n + s) as usize);
        let dom_basis = sub(&field, n)?.basis().to_vec();
        let images = dom_basis
            .iter()
            .map(|&b| g(b, Elem::ZERO))
            .chain(cod.basis().iter().map(|&b| g(Elem::ZERO, b)));
        for (x, y) in images {
            let mut col = coords(&field, n, field.sub(x, c0))?;
            col.extend(coords(&field, s, field.sub(y, c1))?);
            cols.push(col);
        }
        let matrix = FpMatrix::from_cols(field.p(), &cols);
        let map = ProductAffineMap::new(field.clone(), s, matrix, (c0, c1))?;
        for x in field.elements() {
            for y in cod.elements() {
                if map.apply(x, y) != g(x, y) {
                    return Err(Error::BadParameters("map is not affine".into()));
                }
            }
        }
        Ok(map)
    }

    pub fn identity(field: Arc<FieldCtx>, s: u32) -> Result<ProductAffineMap> {
        let m = FpMatrix::identity(field.p(), (field.n() + s) as usize);
        ProductAffineMap::new(field, s, m, (Elem::ZERO, Elem::ZERO))
    }

    /// `(x, y) ↦ (y, x)`; needs `s = n`.
    pub fn swap(field: Arc<FieldCtx>) -> Result<ProductAffineMap> {
        let n = field.n();
        ProductAffineMap::from_fn(field, n, |x, y| (y, x))
    }

    /// `(x, y) ↦ (A_2^{-1}(x), A_1(y) + A_3(A_2^{-1}(x)))`, sending the graph of `F`
    /// to the graph of `A_1 ∘ F ∘ A_2 + A_3`.
    pub fn from_ea(a1: &AffineMap, a2: &AffineMap, a3: &AffineMap) -> Result<ProductAffineMap> {
        let field = a1.field().clone();
        let s = a1.out_deg();
        let a2_inv = a2.inverse()?;
        ProductAffineMap::from_fn(field.clone(), s, |x, y| {
            let z = a2_inv.apply(x);
            (z, field.add(a1.apply(y), a3.apply(z)))
        })
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn constant(&self) -> (Elem, Elem) {
        self.constant
    }

    fn split(&self, v: &[u32]) -> (Elem, Elem) {
        let n = self.field.n() as usize;
        let x = sub(&self.field, n as u32).expect("n | n").from_coords(&v[..n]);
        let y = sub(&self.field, self.s).expect("s | n").from_coords(&v[n..]);
        (x, y)
    }

    fn join(&self, x: Elem, y: Elem) -> Vec<u32> {
        let mut v = coords(&self.field, self.field.n(), x).expect("x in field");
        v.extend(coords(&self.field, self.s, y).expect("y in codomain"));
        v
    }

    pub fn apply_linear(&self, x: Elem, y: Elem) -> (Elem, Elem) {
        self.split(&self.matrix.mul_vec(&self.join(x, y)))
    }

    pub fn apply(&self, x: Elem, y: Elem) -> (Elem, Elem) {
        let (a, b) = self.apply_linear(x, y);
        (self.field.add(a, self.constant.0), self.field.add(b, self.constant.1))
    }

    pub fn is_permutation(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn inverse(&self) -> Result<ProductAffineMap> {
        let inv = self.matrix.inverse().ok_or(Error::NotAPermutation)?;
        let mut map = ProductAffineMap::new(self.field.clone(), self.s, inv, (Elem::ZERO, Elem::ZERO))?;
        let (a, b) = map.apply_linear(self.constant.0, self.constant.1);
        map.constant = (self.field.neg(a), self.field.neg(b));
        Ok(map)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ProductAffineMap) -> Result<ProductAffineMap> {
        if inner.s != self.s || *inner.field != *self.field {
            return Err(Error::DomainMismatch);
        }
        let matrix = self.matrix.mul(&inner.matrix);
        let constant = self.apply(inner.constant.0, inner.constant.1);
        ProductAffineMap::new(self.field.clone(), self.s, matrix, constant)
    }

    /// The linear part commutes with `(x, y) ↦ (cx, cy)`.
    pub fn is_c_affine(&self, c: Elem) -> bool {
        match product_scaling(&self.field, self.s, c) {
            Some(cm) => self.matrix.mul(&cm) == cm.mul(&self.matrix),
            None => false,
        }
    }

    /// Text form: `p n s`, then `n+s` matrix rows, then the constant pair `u v`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.field.p(), self.field.n(), self.s);
        for r in 0..self.matrix.rows() {
            let row: Vec<String> = self.matrix.row(r).iter().map(u32::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out.push_str(&format!("{} {}\n", self.constant.0.enc(), self.constant.1.enc()));
        out
    }

    pub fn from_text(field: Arc<FieldCtx>, text: &str) -> Result<ProductAffineMap> {
        let parse_row = |line: &str| -> Result<Vec<u32>> {
            line.split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad map entry {t:?}"))))
                .collect()
        };
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = parse_row(lines.next().ok_or_else(|| Error::Parse("empty map file".into()))?)?;
        let [p, n, s] = header[..] else {
            return Err(Error::Parse("map header must be `p n s`".into()));
        };
        if p != field.p() || n != field.n() {
            return Err(Error::DomainMismatch);
        }
        let dim = (n + s) as usize;
        let rows = (0..dim)
            .map(|_| {
                let row = parse_row(lines.next().ok_or_else(|| Error::Parse("map file too short".into()))?)?;
                if row.len() != dim || row.iter().any(|&e| e >= p) {
                    return Err(Error::Parse(format!("map rows need {dim} entries below {p}")));
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        let constant = parse_row(lines.next().ok_or_else(|| Error::Parse("missing constant row".into()))?)?;
        let [u, v] = constant[..] else {
            return Err(Error::Parse("constant row must be `u v`".into()));
        };
        if lines.next().is_some() {
            return Err(Error::Parse("trailing data after the constant row".into()));
        }
        let matrix = FpMatrix::from_rows(p, &rows);
        ProductAffineMap::new(field, s, matrix, (Elem::from_enc(u), Elem::from_enc(v)))
    }
}

fn product_scaling(field: &FieldCtx, s: u32, c: Elem) -> Option<FpMatrix> {
    let cn = scaling_matrix(field, field.n(), c)?;
    let cs = scaling_matrix(field, s, c)?;
    let n = field.n() as usize;
    let dim = n + s as usize;
    let mut m = FpMatrix::zeros(field.p(), dim, dim);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, cn.get(i, j));
        }
    }
    for i in 0..s as usize {
        for j in 0..s as usize {
            m.set(n + i, n + j, cs.get(i, j));
        }
    }
    Some(m)
}

/// Image of the graph of `F` under `A`, when it is again a graph.
pub fn graph_image(a: &ProductAffineMap, f: &VecFunc) -> Result<VecFunc> {
    if **a.field() != **f.field() || a.s() != f.s() {
        return Err(Error::DomainMismatch);
    }
    if !a.is_permutation() {
        return Err(Error::NotAPermutation);
    }
    let field = f.field();
    let mut lut = vec![None; field.order() as usize];
    for x in field.elements() {
        let (u, v) = a.apply(x, f.eval(x));
        let slot = &mut lut[u.enc() as usize];
        if slot.is_some() {
            return Err(Error::NotAGraph);
        }
        *slot = Some(v);
    }
    let lut = lut.into_iter().map(|v| v.expect("bijective first coordinate")).collect();
    VecFunc::from_lut(field.clone(), f.s(), lut)
}

/// `x ↦ b·F_2(F_1^{-1}(x/a))` where `A(x, F(x)) = (F_1(x), F_2(x))`.
///
/// The result is checked by comparing its graph with `{(a F_1(x), b F_2(x))}` as sets.
pub fn scaled_graph_map(
    a: &ProductAffineMap,
    a_scale: Elem,
    b_scale: Elem,
    f: &VecFunc,
) -> Result<VecFunc> {
    let field = f.field();
    if a_scale.is_zero() {
        return Err(Error::BadParameters("a_scale must be nonzero".into()));
    }
    if !f.codomain().contains(b_scale) {
        return Err(Error::BadParameters("b_scale must lie in the codomain".into()));
    }
    let pairs: Vec<(Elem, Elem)> = field.elements().map(|x| a.apply(x, f.eval(x))).collect();
    let mut f1_inv = vec![None; field.order() as usize];
    for (x, &(u, _)) in field.elements().zip(&pairs) {
        if f1_inv[u.enc() as usize].replace(x).is_some() {
            return Err(Error::NotAGraph);
        }
    }
    let a_inv = field.inv(a_scale)?;
    let g = VecFunc::from_fn(field.clone(), f.s(), |x| {
        let pre = f1_inv[field.mul(x, a_inv).enc() as usize].expect("F_1 is bijective");
        field.mul(b_scale, pairs[pre.enc() as usize].1)
    })?;
    let image: BTreeSet<(Elem, Elem)> = pairs
        .iter()
        .map(|&(u, v)| (field.mul(a_scale, u), field.mul(b_scale, v)))
        .collect();
    let graph: BTreeSet<(Elem, Elem)> = field.elements().map(|x| (x, g.eval(x))).collect();
    if image != graph {
        return Err(Error::NotAGraph);
    }
    Ok(g)
}

fn check_ea_shapes(a1: &AffineMap, f: &VecFunc, a2: &AffineMap, a3: &AffineMap) -> Result<()> {
    let n = f.field().n();
    let s = f.s();
    let ok = (a1.in_deg(), a1.out_deg()) == (s, s)
        && (a2.in_deg(), a2.out_deg()) == (n, n)
        && (a3.in_deg(), a3.out_deg()) == (n, s)
        && [a1.field(), a2.field(), a3.field()].iter().all(|g| ***g == **f.field());
    if ok {
        Ok(())
    } else {
        Err(Error::DomainMismatch)
    }
}

/// `A_1 ∘ F ∘ A_2 + A_3` without any c-affinity requirement.
pub fn affine_transform(a1: &AffineMap, f: &VecFunc, a2: &AffineMap, a3: &AffineMap) -> Result<VecFunc> {
    check_ea_shapes(a1, f, a2, a3)?;
    let field = f.field().clone();
    VecFunc::from_fn(field.clone(), f.s(), |x| {
        field.add(a1.apply(f.eval(a2.apply(x))), a3.apply(x))
    })
}

/// `A_1 ∘ F ∘ A_2 + A_3` with `A_1`, `A_2` c-affine permutations and `A_3` c-affine.
pub fn c_ea_apply(
    a1: &AffineMap,
    f: &VecFunc,
    a2: &AffineMap,
    a3: &AffineMap,
    c: Elem,
) -> Result<VecFunc> {
    check_ea_shapes(a1, f, a2, a3)?;
    if !(a1.is_c_affine(c) && a2.is_c_affine(c) && a3.is_c_affine(c)) {
        return Err(Error::NotCAffine(c.enc()));
    }
    if !(a1.is_permutation() && a2.is_permutation()) {
        return Err(Error::NotAPermutation);
    }
    affine_transform(a1, f, a2, a3)
}

/// Commutant of `x ↦ cx` on a coordinate space: a basis of `{M : MC = CM}`.
fn commutant_basis(cm: &FpMatrix) -> Vec<FpMatrix> {
    let p = cm.p();
    let d = cm.rows();
    // Unknown M[i][j] sits at index i*d + j; equation (i, j) is (MC - CM)[i][j] = 0.
    let mut sys = FpMatrix::zeros(p, d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let row = i * d + j;
            for k in 0..d {
                let a = sys.get(row, i * d + k);
                sys.set(row, i * d + k, a + cm.get(k, j));
                let b = sys.get(row, k * d + j);
                sys.set(row, k * d + j, b + p - cm.get(i, k));
            }
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|v| FpMatrix::from_rows(p, &v.chunks(d).map(<[u32]>::to_vec).collect::<Vec<_>>()))
        .collect()
}

fn random_commuting_invertible<R: Rng + ?Sized>(cm: &FpMatrix, rng: &mut R) -> FpMatrix {
    let p = cm.p();
    let basis = commutant_basis(cm);
    loop {
        let mut m = FpMatrix::zeros(p, cm.rows(), cm.cols());
        for b in &basis {
            let k: u32 = rng.gen_range(0..p);
            for _ in 0..k {
                m = m.add(b);
            }
        }
        if m.is_invertible() {
            return m;
        }
    }
}

/// Uniform-ish random c-affine permutation of GF(p^deg).
pub fn random_c_affine_perm<R: Rng + ?Sized>(
    field: &Arc<FieldCtx>,
    deg: u32,
    c: Elem,
    rng: &mut R,
) -> Result<AffineMap> {
    let cm = scaling_matrix(field, deg, c).ok_or(Error::InvalidC(c.enc()))?;
    let m = random_commuting_invertible(&cm, rng);
    let size = sub(field, deg)?.size();
    let k = sub(field, deg)?.elem(rng.gen_range(0..size));
    AffineMap::new(field.clone(), deg, deg, m, k)
}

/// Random c-affine map GF(p^{in_deg}) → GF(p^{out_deg}), not necessarily bijective.
pub fn random_c_affine<R: Rng + ?Sized>(
    field: &Arc<FieldCtx>,
    in_deg: u32,
    out_deg: u32,
    c: Elem,
    rng: &mut R,
) -> Result<AffineMap> {
    let ci = scaling_matrix(field, in_deg, c).ok_or(Error::InvalidC(c.enc()))?;
    let co = scaling_matrix(field, out_deg, c).ok_or(Error::InvalidC(c.enc()))?;
    // Solve M·C_in = C_out·M for rectangular M.
    let (r, k) = (out_deg as usize, in_deg as usize);
    let p = field.p();
    let mut sys = FpMatrix::zeros(p, r * k, r * k);
    for i in 0..r {
        for j in 0..k {
            let row = i * k + j;
            for t in 0..k {
                let a = sys.get(row, i * k + t);
                sys.set(row, i * k + t, a + ci.get(t, j));
            }
            for t in 0..r {
                let b = sys.get(row, t * k + j);
                sys.set(row, t * k + j, b + p - co.get(i, t));
            }
        }
    }
    let mut m = FpMatrix::zeros(p, r, k);
    for v in sys.nullspace() {
        let b = FpMatrix::from_rows(p, &v.chunks(k).map(<[u32]>::to_vec).collect::<Vec<_>>());
        for _ in 0..rng.gen_range(0..p) {
            m = m.add(&b);
        }
    }
    let size = sub(field, out_deg)?.size();
    let konst = sub(field, out_deg)?.elem(rng.gen_range(0..size));
    AffineMap::new(field.clone(), in_deg, out_deg, m, konst)
}

/// Random c-affine permutation of `GF(p^n) × GF(p^s)`.
pub fn random_c_affine_product<R: Rng + ?Sized>(
    field: &Arc<FieldCtx>,
    s: u32,
    c: Elem,
    rng: &mut R,
) -> Result<ProductAffineMap> {
    let cm = product_scaling(field, s, c).ok_or(Error::InvalidC(c.enc()))?;
    let m = random_commuting_invertible(&cm, rng);
    let u = Elem::from_enc(rng.gen_range(0..field.order()));
    let v = sub(field, s)?.elem(rng.gen_range(0..sub(field, s)?.size()));
    ProductAffineMap::new(field.clone(), s, m, (u, v))
}

/// Spectra and uniformities of `F` and its image under a product map.
#[derive(Clone, Debug, Serialize)]
pub struct CczReport {
    pub c: u32,
    pub c_affine: bool,
    pub spectrum_f: Spectrum,
    pub spectrum_image: Spectrum,
    pub uniformity_f: u32,
    pub uniformity_image: u32,
    #[serde(skip)]
    pub image: VecFunc,
}

impl CczReport {
    pub fn preserved(&self) -> bool {
        self.spectrum_f == self.spectrum_image && self.uniformity_f == self.uniformity_image
    }
}

/// Applies `A` to the graph of `F` and compares cc-spectra at `c`.
pub fn ccz_invariance_check(f: &VecFunc, a: &ProductAffineMap, c: Elem) -> Result<CczReport> {
    diffspec::validate_c(f, c)?;
    let image = graph_image(a, f)?;
    let tf = diffspec::ddt(f, diffspec::Kind::Cc, c)?;
    let ti = diffspec::ddt(&image, diffspec::Kind::Cc, c)?;
    Ok(CczReport {
        c: c.enc(),
        c_affine: a.is_c_affine(c),
        spectrum_f: tf.spectrum(),
        spectrum_image: ti.spectrum(),
        uniformity_f: tf.uniformity(),
        uniformity_image: ti.uniformity(),
        image,
    })
}

/// Outcome of a seeded sweep of random c-affine product maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub c: u32,
    pub trials: u32,
    pub graph_cases: u32,
    pub preserved: u32,
}

/// Random c-affine product map that is known to send the graph of `F` to a graph:
/// a c-EA map, preceded by the swap when `F` is a permutation and a coin says so.
pub fn random_graph_preserving_map<R: Rng + ?Sized>(
    f: &VecFunc,
    c: Elem,
    rng: &mut R,
) -> Result<ProductAffineMap> {
    let field = f.field();
    let (n, s) = (field.n(), f.s());
    let a1 = random_c_affine_perm(field, s, c, rng)?;
    let a2 = random_c_affine_perm(field, n, c, rng)?;
    let a3 = random_c_affine(field, n, s, c, rng)?;
    let ea = ProductAffineMap::from_ea(&a1, &a2, &a3)?;
    if s == n && rng.gen_bool(0.5) && f.is_permutation() {
        ea.compose(&ProductAffineMap::swap(field.clone())?)
    } else {
        Ok(ea)
    }
}

/// Samples c-affine product maps until `graph_cases` of them send the graph of
/// `F` to a graph (or `max_trials` is reached) and counts how many preserve the
/// cc-spectrum. Trials alternate between unstructured maps, which rarely give a
/// graph, and maps from [`random_graph_preserving_map`].
pub fn ccz_sweep<R: Rng + ?Sized>(
    f: &VecFunc,
    c: Elem,
    graph_cases: u32,
    max_trials: u32,
    rng: &mut R,
) -> Result<SweepReport> {
    let mut report = SweepReport { c: c.enc(), trials: 0, graph_cases: 0, preserved: 0 };
    while report.graph_cases < graph_cases && report.trials < max_trials {
        report.trials += 1;
        let a = if report.trials % 2 == 1 {
            random_c_affine_product(f.field(), f.s(), c, rng)?
        } else {
            random_graph_preserving_map(f, c, rng)?
        };
        match ccz_invariance_check(f, &a, c) {
            Ok(r) => {
                report.graph_cases += 1;
                report.preserved += u32::from(r.preserved());
            }
            Err(Error::NotAGraph) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// `(cΔ_F, cΔ_{A_1 ∘ F ∘ A_2})` for a c-affine permutation `A_1` and an affine permutation `A_2`.
pub fn c1_invariance_check(f: &VecFunc, a1: &AffineMap, a2: &AffineMap, c: Elem) -> Result<(u32, u32)> {
    if !a1.is_c_affine(c) {
        return Err(Error::NotCAffine(c.enc()));
    }
    if !(a1.is_permutation() && a2.is_permutation()) {
        return Err(Error::NotAPermutation);
    }
    let zero = AffineMap::zero(f.field().clone(), f.field().n(), f.s())?;
    let g = affine_transform(a1, f, a2, &zero)?;
    Ok((diffspec::c_uniformity(f, c)?, diffspec::c_uniformity(&g, c)?))
}

/// What a c-CCZ construction claims and what was verified.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionCertificate {
    pub c: u32,
    /// The product map is c-affine for this `c`.
    pub c_affine: bool,
    /// The map sends the graph of `F` onto the graph of the closed form.
    pub graph_matches: bool,
    /// `c·F(F_1^{-1}(x/c))` equals the closed form.
    pub scaled_form_matches: bool,
    /// `F_1` is an involution (Gold case) or its inverse formula holds (trace case).
    pub auxiliary_identity: bool,
    pub degree_f: u32,
    pub degree_f2: u32,
    pub spectra_equal: bool,
    pub uniformity_f: u32,
    pub uniformity_f2: u32,
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub f: VecFunc,
    pub f2: VecFunc,
    pub map: ProductAffineMap,
    pub certificate: ConstructionCertificate,
}

fn certify(
    f: &VecFunc,
    f2: &VecFunc,
    map: &ProductAffineMap,
    scaled: &VecFunc,
    auxiliary_identity: bool,
    c: Elem,
) -> Result<ConstructionCertificate> {
    let graph_matches = graph_image(map, f).map(|g| g == *f2).unwrap_or(false);
    let tf = diffspec::ddt(f, diffspec::Kind::Cc, c)?;
    let t2 = diffspec::ddt(f2, diffspec::Kind::Cc, c)?;
    Ok(ConstructionCertificate {
        c: c.enc(),
        c_affine: map.is_c_affine(c),
        graph_matches,
        scaled_form_matches: scaled == f2,
        auxiliary_identity,
        degree_f: f.algebraic_degree(),
        degree_f2: f2.algebraic_degree(),
        spectra_equal: tf.spectrum() == t2.spectrum(),
        uniformity_f: tf.uniformity(),
        uniformity_f2: t2.uniformity(),
    })
}

/// Gold map `x^{2^i+1}` on GF(2^m) and its image under `(x, y) ↦ (cx + c·Tr(y), cy)`.
pub fn gold_graph_construction(m: u32, i: u32, c_enc: u32) -> Result<Construction> {
    if m < 4 || !m.is_multiple_of(2) || i == 0 || gcd(m as u64, i as u64) != 1 {
        return Err(Error::BadParameters(format!(
            "need even m >= 4 and gcd(m, i) = 1, got m = {m}, i = {i}"
        )));
    }
    let field = FieldCtx::new(2, m, None)?;
    let c = field.elem(c_enc)?;
    if c.is_zero() {
        return Err(Error::InvalidC(0));
    }
    let d = (1u64 << i) + 1;
    let fld = &*field;
    let tr = |x: Elem| fld.trace(x, 1).expect("1 | m");
    let f = VecFunc::from_power(field.clone(), d, m)?;
    let f1 = VecFunc::from_fn(field.clone(), m, |x| fld.add(x, tr(f.eval(x))))?;
    let involution = f1.then(&f1)? == VecFunc::identity(field.clone());
    let ci = fld.inv(c)?;
    let two_i = 1u64 << i;
    let f2 = VecFunc::from_fn(field.clone(), m, |x| {
        let t = tr(fld.mul(fld.pow(x, d), fld.pow(ci, d)));
        let head = fld.mul(fld.pow(x, d), fld.pow(ci, two_i));
        let tail = fld.add(fld.add(fld.mul(fld.pow(x, two_i), fld.pow(ci, two_i - 1)), x), c);
        fld.add(head, fld.mul(tail, t))
    })?;
    let map = ProductAffineMap::from_fn(field.clone(), m, |x, y| {
        (fld.mul(c, fld.add(x, tr(y))), fld.mul(c, y))
    })?;
    let unscaled = ProductAffineMap::from_fn(field.clone(), m, |x, y| (fld.add(x, tr(y)), y))?;
    let scaled = scaled_graph_map(&unscaled, c, c, &f)?;
    let certificate = certify(&f, &f2, &map, &scaled, involution, c)?;
    Ok(Construction { f, f2, map, certificate })
}

/// `Tr^m_n(x^2 - x^{p+1})` on GF(p^n) and its image under `(x, y) ↦ (cx + c·Tr_m(y), cy)`.
pub fn trace_graph_construction(p: u32, n: u32, m: u32, c_enc: u32) -> Result<Construction> {
    if p == 2 || n < 3 || m <= 1 || !n.is_multiple_of(m) {
        return Err(Error::BadParameters(format!(
            "need odd p, n >= 3 and 1 < m | n, got p = {p}, n = {n}, m = {m}"
        )));
    }
    let field = FieldCtx::new(p, n, None)?;
    let c = field.elem(c_enc)?;
    if c.is_zero() || !field.in_subfield(c, m) {
        return Err(Error::InvalidC(c_enc));
    }
    let fld = &*field;
    let g = |x: Elem| fld.sub(fld.pow(x, 2), fld.pow(x, p as u64 + 1));
    let tr_nm = |x: Elem| fld.relative_trace(x, n, m).expect("m | n");
    let tr_n = |x: Elem| fld.abs_trace(x);
    let tr_m = |y: Elem| fld.relative_trace(y, m, 1).expect("1 | m");
    let f = VecFunc::from_fn(field.clone(), m, |x| tr_nm(g(x)))?;
    let f1 = VecFunc::from_fn(field.clone(), n, |x| fld.add(x, tr_m(f.eval(x))))?;
    let f1_inv = VecFunc::from_fn(field.clone(), n, |x| fld.sub(x, fld.scalar(tr_n(g(x)) as i64)))?;
    let id = VecFunc::identity(field.clone());
    let inverse_ok = f1.then(&f1_inv)? == id && f1_inv.then(&f1)? == id;
    let ci = fld.inv(c)?;
    let f2 = VecFunc::from_fn(field.clone(), m, |x| {
        let z = fld.mul(x, ci);
        let gz = g(z);
        let head = fld.mul(c, tr_nm(gz));
        let frob = fld.sub(fld.pow(z, p as u64), z);
        let tail = fld.mul(fld.mul(c, fld.scalar(tr_n(gz) as i64)), tr_nm(frob));
        fld.add(head, tail)
    })?;
    let map = ProductAffineMap::from_fn(field.clone(), m, |x, y| {
        (fld.mul(c, fld.add(x, tr_m(y))), fld.mul(c, y))
    })?;
    let unscaled = ProductAffineMap::from_fn(field.clone(), m, |x, y| (fld.add(x, tr_m(y)), y))?;
    let scaled = scaled_graph_map(&unscaled, c, c, &f)?;
    let certificate = certify(&f, &f2, &map, &scaled, inverse_ok, c)?;
    Ok(Construction { f, f2, map, certificate })
}

/// `x^{2^i+1} + (x^{2^i} + x + 1)·Tr(x^{2^i+1})` on GF(2^m), the classical CCZ
/// companion of the Gold map.
pub fn gold_ccz_companion(m: u32, i: u32) -> Result<VecFunc> {
    let field = FieldCtx::new(2, m, None)?;
    let fld = &*field;
    let d = (1u64 << i) + 1;
    VecFunc::from_fn(field.clone(), m, |x| {
        let xd = fld.pow(x, d);
        let t = fld.trace(xd, 1).expect("1 | m");
        let tail = fld.add(fld.add(fld.pow(x, 1 << i), x), Elem::ONE);
        fld.add(xd, fld.mul(tail, t))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u32, n: u32) -> Arc<FieldCtx> {
        FieldCtx::new(p, n, None).unwrap()
    }

    #[test]
    fn c_affinity_examples() {
        let f = gf(2, 4);
        let g = f.primitive_element();
        let frob = AffineMap::from_fn(f.clone(), 4, 4, |x| f.pow(x, 2)).unwrap();
        assert!(frob.is_c_affine(Elem::ONE));
        assert!(!frob.is_c_affine(g));
        let lam = AffineMap::scalar(f.clone(), 4, Elem::from_enc(7), Elem::from_enc(3)).unwrap();
        for c in f.nonzero_elements() {
            assert!(lam.is_c_affine(c));
        }
    }

    #[test]
    fn inverse_and_compose() {
        let f = gf(3, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c = Elem::from_enc(5);
        let a = random_c_affine_perm(&f, 2, c, &mut rng).unwrap();
        assert!(a.is_c_affine(c) && a.is_permutation());
        let inv = a.inverse().unwrap();
        assert!(inv.is_c_affine(c));
        let id = AffineMap::identity(f.clone(), 2).unwrap();
        assert_eq!(a.compose(&inv).unwrap(), id);
        for x in f.elements() {
            assert_eq!(inv.apply(a.apply(x)), x);
        }
    }

    #[test]
    fn swap_gives_inverse() {
        let f = gf(2, 4);
        let x7 = VecFunc::from_power(f.clone(), 7, 4).unwrap();
        let swap = ProductAffineMap::swap(f.clone()).unwrap();
        assert_eq!(graph_image(&swap, &x7).unwrap(), x7.inverse().unwrap());
        let x3 = VecFunc::from_power(f.clone(), 3, 4).unwrap();
        assert_eq!(graph_image(&swap, &x3), Err(Error::NotAGraph));
    }

    #[test]
    fn map_text_round_trip() {
        let f = gf(3, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_c_affine_product(&f, 2, Elem::from_enc(2), &mut rng).unwrap();
        let text = a.to_text();
        assert!(text.starts_with("3 2 2\n"));
        assert_eq!(ProductAffineMap::from_text(f, &text).unwrap(), a);
    }

    #[test]
    fn scaled_map_trivial_cases() {
        let f = gf(2, 4);
        let x3 = VecFunc::from_power(f.clone(), 3, 4).unwrap();
        let id = ProductAffineMap::identity(f.clone(), 4).unwrap();
        assert_eq!(scaled_graph_map(&id, Elem::ONE, Elem::ONE, &x3).unwrap(), x3);
        let zero = VecFunc::constant(f.clone(), Elem::ZERO, 4).unwrap();
        assert_eq!(scaled_graph_map(&id, Elem::from_enc(3), Elem::ZERO, &x3).unwrap(), zero);
    }

    #[test]
    fn gold_construction_at_one_is_companion() {
        let cons = gold_graph_construction(4, 1, 1).unwrap();
        assert_eq!(cons.f2, gold_ccz_companion(4, 1).unwrap());
        assert!(cons.certificate.c_affine);
        assert!(cons.certificate.spectra_equal);
    }
}
