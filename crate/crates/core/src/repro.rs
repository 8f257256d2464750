//! Reproduction suite: every numerically checkable claim, each as a named item
//! that reports what was expected and what was computed.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::diffspec::{self, Kind, Spectrum};
use crate::equivlab;
use crate::error::{Error, Result};
use crate::funcrep::{DoDescriptor, VecFunc};
use crate::gf::{gcd, is_prime, Elem, FieldCtx};
use crate::walshlab::{self, DEFAULT_WORK_LIMIT};

/// Outcome of one item before timing is attached.
#[derive(Clone, Debug)]
pub struct Check {
    pub passed: bool,
    pub expected: String,
    pub computed: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub expected: String,
    pub computed: String,
    pub elapsed_ms: u128,
    /// Time budget for the item, when one is pinned.
    pub budget_ms: Option<u128>,
}

impl Verdict {
    pub fn within_budget(&self) -> bool {
        self.budget_ms.is_none_or(|b| self.elapsed_ms <= b)
    }

    pub fn line(&self) -> String {
        format!(
            "[{}] {:<22} {}  expected: {}  computed: {}  ({} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.expected,
            self.computed,
            self.elapsed_ms
        )
    }
}

pub struct Item {
    pub id: &'static str,
    pub title: &'static str,
    pub budget: Option<Duration>,
    check: fn() -> Result<Check>,
}

impl Item {
    pub fn run(&self) -> Verdict {
        let start = Instant::now();
        let outcome = (self.check)();
        let elapsed_ms = start.elapsed().as_millis();
        let (passed, expected, computed) = match outcome {
            Ok(c) => (c.passed, c.expected, c.computed),
            Err(e) => (false, "no error".to_string(), format!("error: {e}")),
        };
        Verdict {
            id: self.id,
            title: self.title,
            passed,
            expected,
            computed,
            elapsed_ms,
            budget_ms: self.budget.map(|b| b.as_millis()),
        }
    }
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

static ITEMS: [Item; 12] = [
    Item {
        id: "ccz-companion-gf16",
        title: "x^3 vs its CCZ companion on GF(2^4)",
        budget: secs(1),
        check: ccz_companion_gf16,
    },
    Item {
        id: "ccz-companion-gf64",
        title: "x^3 vs a CCZ-equivalent H on GF(2^6)",
        budget: secs(10),
        check: ccz_companion_gf64,
    },
    Item {
        id: "trace-sum-profile",
        title: "per-c profiles of x + Tr(x^3) on GF(2^6)",
        budget: secs(10),
        check: trace_sum_profile,
    },
    Item { id: "gold-uniformity", title: "Gold maps x^(p^m+1)", budget: secs(60), check: gold_uniformity },
    Item {
        id: "monomial-reduction",
        title: "cc-table of x^d as a rescaled c-table",
        budget: None,
        check: monomial_reduction,
    },
    Item { id: "walsh-moments", title: "Walsh moments vs direct S-sums", budget: None, check: walsh_moments },
    Item {
        id: "walsh-certificates",
        title: "PccN / APccN Walsh certificates",
        budget: None,
        check: walsh_certificates,
    },
    Item {
        id: "c-ccz-invariance",
        title: "c-affine graph maps preserve cc-spectra",
        budget: None,
        check: c_ccz_invariance,
    },
    Item {
        id: "c-ccz-constructions",
        title: "graph-map constructions of degree 3",
        budget: secs(60),
        check: c_ccz_constructions,
    },
    Item { id: "minus-one-suite", title: "c = -1 in odd characteristic", budget: None, check: minus_one_suite },
    Item {
        id: "structural-lemmas",
        title: "structural identities, exhaustive",
        budget: None,
        check: structural_lemmas,
    },
    Item { id: "power-table", title: "tabulated power-map values", budget: None, check: power_table },
];

pub fn items() -> &'static [Item] {
    &ITEMS
}

pub fn find(id: &str) -> Option<&'static Item> {
    ITEMS.iter().find(|i| i.id == id)
}

pub fn run_all() -> Vec<Verdict> {
    ITEMS.iter().map(Item::run).collect()
}

fn gf(p: u32, n: u32) -> Result<Arc<FieldCtx>> {
    FieldCtx::new(p, n, None)
}

fn spectrum_of<I: IntoIterator<Item = u32>>(values: I) -> Spectrum {
    Spectrum::from_values(values)
}

fn ok_if(passed: bool, expected: impl Into<String>, computed: impl Into<String>) -> Result<Check> {
    Ok(Check { passed, expected: expected.into(), computed: computed.into() })
}

/// Tallies a batch of named sub-checks and reports the first failure.
#[derive(Default)]
struct Tally {
    total: u64,
    failed: u64,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.total += other.total;
        self.failed += other.failed;
        if self.first.is_none() {
            self.first = other.first;
        }
    }

    fn summary(&self) -> String {
        match &self.first {
            None => format!("{} checks, 0 failed", self.total),
            Some(f) => format!("{} checks, {} failed (first: {f})", self.total, self.failed),
        }
    }

    fn check(self, expected: &str) -> Result<Check> {
        ok_if(self.failed == 0 && self.total > 0, expected, self.summary())
    }
}

fn ccz_companion_gf16() -> Result<Check> {
    let field = gf(2, 4)?;
    let f = VecFunc::from_power(field.clone(), 3, 4)?;
    let g = equivlab::gold_ccz_companion(4, 1)?;
    let cs: Vec<Elem> = field.nonzero_elements().filter(|&c| !field.in_subfield(c, 2)).collect();
    let uf = spectrum_of(cs.iter().map(|&c| diffspec::cc_uniformity(&f, c)).collect::<Result<Vec<_>>>()?);
    let ug = spectrum_of(cs.iter().map(|&c| diffspec::cc_uniformity(&g, c)).collect::<Result<Vec<_>>>()?);
    let expected = (Spectrum::from_pairs([(3, 12)]), Spectrum::from_pairs([(4, 12)]));
    ok_if(
        cs.len() == 12 && (uf.clone(), ug.clone()) == expected,
        "over the 12 c outside GF(4): ccΔ_F {3^12}, ccΔ_G {4^12}",
        format!("over {} c: ccΔ_F {uf}, ccΔ_G {ug}", cs.len()),
    )
}

/// `(x + Tr^6_3(x^6 + x^12) + Tr(x)·Tr^6_3(x^3 + x^12))^3` on GF(2^6).
pub fn ccz_h_gf64() -> Result<VecFunc> {
    let field = gf(2, 6)?;
    let fld = &*field;
    let tr3 = |x: Elem| fld.relative_trace(x, 6, 3).expect("3 | 6");
    VecFunc::from_fn(field.clone(), 6, |x| {
        let a = tr3(fld.add(fld.pow(x, 6), fld.pow(x, 12)));
        let b = tr3(fld.add(fld.pow(x, 3), fld.pow(x, 12)));
        let t = Elem::from_enc(fld.abs_trace(x));
        fld.pow(fld.add(fld.add(x, a), fld.mul(t, b)), 3)
    })
}

fn ccz_companion_gf64() -> Result<Check> {
    let field = gf(2, 6)?;
    let f = VecFunc::from_power(field.clone(), 3, 6)?;
    let h = ccz_h_gf64()?;
    let cs: Vec<Elem> = field.nonzero_elements().filter(|&c| c != Elem::ONE).collect();
    let pf = diffspec::per_c_profile(&f, Kind::Cc, Some(&cs))?;
    let ph = diffspec::per_c_profile(&h, Kind::Cc, Some(&cs))?;
    let f_ok = pf.spectrum == Spectrum::from_pairs([(3, 62)]);
    let h_ok = ph.spectrum.iter().all(|(k, _)| (5..=9).contains(&k));
    ok_if(
        cs.len() == 62 && f_ok && h_ok,
        "over the 62 c outside GF(2): ccΔ_F = 3, ccΔ_H in {5,...,9}",
        format!("ccΔ_F {}, ccΔ_H {}", pf.spectrum, ph.spectrum),
    )
}

/// `x + Tr(x^3)` on GF(2^6).
pub fn trace_sum_gf64() -> Result<VecFunc> {
    let field = gf(2, 6)?;
    let fld = &*field;
    VecFunc::from_fn(field.clone(), 6, |x| fld.add(x, Elem::from_enc(fld.abs_trace(fld.pow(x, 3)))))
}

fn trace_sum_profile() -> Result<Check> {
    let f = trace_sum_gf64()?;
    let cc = diffspec::per_c_profile(&f, Kind::Cc, None)?.spectrum;
    let c = diffspec::per_c_profile(&f, Kind::C, None)?.spectrum;
    let want_cc = Spectrum::from_pairs([(40, 2), (26, 36), (28, 24)]);
    let want_c = Spectrum::from_pairs([(1, 2), (2, 60)]);
    ok_if(
        cc == want_cc && c == want_c,
        format!("cc {want_cc}, c {want_c}"),
        format!("cc {cc}, c {c}"),
    )
}

fn gold_uniformity() -> Result<Check> {
    let mut cases = Vec::new();
    for (p, max_n) in [(2u32, 8u32), (3, 5), (5, 3)] {
        for n in 1..=max_n {
            for m in 1..=n {
                cases.push((p, n, m));
            }
        }
    }
    let tallies = cases
        .par_iter()
        .map(|&(p, n, m)| -> Result<Tally> {
            let field = gf(p, n)?;
            let q = field.order() as u64;
            let d = (p as u64).pow(m) + 1;
            let g = gcd(m as u64, n as u64) as u32;
            let want = gcd(d, q - 1) as u32;
            let closed = if p == 2 {
                let g2 = gcd(2 * m as u64, n as u64) as u32;
                ((1u64 << g2) - 1) / ((1u64 << g) - 1)
            } else if (n / g) % 2 == 1 {
                2
            } else {
                (p as u64).pow(g) + 1
            };
            let f = VecFunc::from_power(field.clone(), d, n)?;
            let mut t = Tally::default();
            t.record(closed == want as u64, || format!("closed form {closed} vs gcd {want} at p={p} n={n} m={m}"));
            for c in field.subfield(g)?.sorted_elements() {
                if c.is_zero() || c == Elem::ONE {
                    continue;
                }
                let got = diffspec::cc_uniformity(&f, c)?;
                t.record(got == want, || format!("p={p} n={n} m={m} c={c}: {got} vs {want}"));
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = Tally::default();
    tallies.into_iter().for_each(|t| total.merge(t));
    total.check("ccΔ = gcd(p^m+1, p^n-1) for every admissible (p, n, m, c)")
}

fn monomial_reduction() -> Result<Check> {
    let mut t = Tally::default();
    for (p, n) in [(2u32, 4u32), (3, 2)] {
        let field = gf(p, n)?;
        let q = field.order();
        // q - 1 is below the sample size, so every exponent is covered.
        for d in 1..q as u64 {
            let f = VecFunc::from_power(field.clone(), d, n)?;
            for c in field.nonzero_elements() {
                let cp = field.pow_signed(c, 1 - d as i64)?;
                let cd_inv = field.inv(field.pow(c, d))?;
                let ci = field.inv(c)?;
                let cc = diffspec::ddt(&f, Kind::Cc, c)?;
                let ct = diffspec::ddt(&f, Kind::C, cp)?;
                let entrywise = field.elements().all(|a| {
                    cc.row_entries(a)
                        .all(|(b, k)| ct.entry(field.mul(a, ci), field.mul(b, cd_inv)) == k)
                });
                t.record(entrywise, || format!("GF({p}^{n}) d={d} c={c}"));
                if c != Elem::ONE && field.pow(c, d - 1) == Elem::ONE {
                    let u = cc.uniformity();
                    t.record(u == q, || format!("degenerate GF({p}^{n}) d={d} c={c}: {u}"));
                }
            }
        }
    }
    t.check("entrywise match for all d, c; ccΔ = p^n when c^(d-1) = 1 ≠ c")
}

/// Nonzero element of the codomain of `f`, uniformly.
fn random_c<R: Rng>(f: &VecFunc, rng: &mut R) -> Elem {
    let cod = f.codomain();
    cod.elem(rng.gen_range(1..cod.size()))
}

fn random_divisor<R: Rng>(field: &FieldCtx, rng: &mut R) -> u32 {
    let ds = field.divisors();
    ds[rng.gen_range(0..ds.len())]
}

fn walsh_moments() -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x57a1);
    let mut t = Tally::default();
    for (p, n, kmax) in [(2u32, 3u32, 3u32), (3, 2, 2)] {
        let field = gf(p, n)?;
        for trial in 0..25 {
            let s = random_divisor(&field, &mut rng);
            let f = VecFunc::random(field.clone(), s, &mut rng)?;
            let c = random_c(&f, &mut rng);
            let moments = walshlab::g_sums(&f, c, kmax, DEFAULT_WORK_LIMIT)?;
            // S(a, x) for every shift and base point, counted on the table.
            let mut s_values = Vec::with_capacity((field.order() * field.order()) as usize);
            for a in field.elements() {
                for x in field.elements() {
                    s_values.push(walshlab::s_count(&f, c, a, x)? as i128);
                }
            }
            for k in 1..=kmax {
                let g = &moments[k as usize - 1];
                let direct: i128 = s_values.iter().map(|v| v.pow(k)).sum();
                let lhs = walshlab::normalized_moment(&f, g, k)?;
                t.record(lhs == direct, || format!("GF({p}^{n}) s={s} trial {trial} k={k}: {lhs} vs {direct}"));
                if k <= 2 {
                    let naive = walshlab::g_sum_naive(&f, c, k, DEFAULT_WORK_LIMIT)?;
                    t.record(&naive == g, || format!("GF({p}^{n}) trial {trial} k={k}: naive moment differs"));
                }
            }
        }
    }
    t.check("p^-(n+s)k G_(k+1) = Σ S^k; convolution and naive moments agree")
}

fn walsh_certificates() -> Result<Check> {
    let field = gf(3, 3)?;
    let q = field.order();
    let target = 3i128.pow(3 * 3 + 3);
    let mut pccn = None;
    let mut three = None;
    'search: for d in 1..q as u64 {
        let f = VecFunc::from_power(field.clone(), d, 3)?;
        for c in field.nonzero_elements().filter(|&c| c != Elem::ONE) {
            match diffspec::cc_uniformity(&f, c)? {
                1 if pccn.is_none() => pccn = Some((d, c)),
                3 if three.is_none() => three = Some((d, c)),
                _ => {}
            }
            if pccn.is_some() && three.is_some() {
                break 'search;
            }
        }
    }
    let (Some((d1, c1)), Some((d3, c3))) = (pccn, three) else {
        return ok_if(false, "a PccN and a ccΔ = 3 power map on GF(3^3)", "search found none");
    };
    let g2 = |d: u64, c: Elem| -> Result<i128> {
        let f = VecFunc::from_power(field.clone(), d, 3)?;
        let g = walshlab::g_sum(&f, c, 1, DEFAULT_WORK_LIMIT)?;
        g.rational().ok_or_else(|| Error::NonRationalResult(g.to_string()))
    };
    let eq_value = g2(d1, c1)?;
    let slack = g2(d3, c3)? - target;
    // Exact slack from the table: p^(n+s) Σ N(N - 1) over all entries.
    let f3 = VecFunc::from_power(field.clone(), d3, 3)?;
    let table = diffspec::ddt(&f3, Kind::Cc, c3)?;
    let table_slack: i128 = field
        .elements()
        .flat_map(|a| table.row(a).iter().map(|&k| k as i128 * (k as i128 - 1)))
        .sum::<i128>()
        * 3i128.pow(6);

    let f9 = gf(3, 2)?;
    let sq = VecFunc::from_power(f9.clone(), 2, 2)?;
    let cert = walshlab::uniformity_certificate(&sq, f9.neg(Elem::ONE), 2, DEFAULT_WORK_LIMIT)?;
    let apccn_ok = cert.equality && cert.cc_uniformity == 2 && cert.lhs == cert.table_lhs;

    ok_if(
        eq_value == target && slack > 0 && slack == table_slack && apccn_ok,
        format!("G_2 = 3^12 = {target} on PccN; positive slack on ccΔ = 3; x^2 APccN equality at c = -1"),
        format!(
            "PccN x^{d1} c={c1}: G_2 = {eq_value}; ccΔ=3 x^{d3} c={c3}: slack {slack} (table {table_slack}); \
             x^2 m=2: lhs {} equality {}",
            cert.lhs, cert.equality
        ),
    )
}

fn c_ccz_invariance() -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0cc_2024);
    let mut t = Tally::default();
    let mut attempts = 0u32;
    for (p, n) in [(2u32, 4u32), (3, 2)] {
        let field = gf(p, n)?;
        let mut graphs = 0u32;
        while graphs < 200 {
            attempts += 1;
            let f = VecFunc::random(field.clone(), n, &mut rng)?;
            let c = random_c(&f, &mut rng);
            let map = if attempts % 2 == 1 {
                equivlab::random_c_affine_product(&field, n, c, &mut rng)?
            } else {
                equivlab::random_graph_preserving_map(&f, c, &mut rng)?
            };
            match equivlab::ccz_invariance_check(&f, &map, c) {
                Ok(r) => {
                    graphs += 1;
                    t.record(r.c_affine && r.preserved(), || {
                        format!("GF({p}^{n}) c={c}: {} -> {}", r.spectrum_f, r.spectrum_image)
                    });
                }
                Err(Error::NotAGraph) => {}
                Err(e) => return Err(e),
            }
        }
    }

    // Negative control: (x, y) -> (x + Tr(y), y) is only 1-affine.
    let field = gf(2, 4)?;
    let f = VecFunc::from_power(field.clone(), 3, 4)?;
    let map = equivlab::ProductAffineMap::from_fn(field.clone(), 4, |x, y| {
        (field.add(x, Elem::from_enc(field.abs_trace(y))), y)
    })?;
    let mut changed = 0;
    for c in field.nonzero_elements().filter(|&c| !field.in_subfield(c, 2)) {
        let r = equivlab::ccz_invariance_check(&f, &map, c)?;
        if !r.c_affine && (r.uniformity_f, r.uniformity_image) == (3, 4) {
            changed += 1;
        }
    }
    let control = changed == 12 && equivlab::graph_image(&map, &f)? == equivlab::gold_ccz_companion(4, 1)?;
    ok_if(
        t.failed == 0 && t.total == 400 && control,
        "400/400 graph cases preserve spectrum; plain CCZ control moves ccΔ 3 -> 4",
        format!("{} over {attempts} sampled maps; control changed {changed}/12", t.summary()),
    )
}

fn c_ccz_constructions() -> Result<Check> {
    let mut certs = Vec::new();
    for m in [4u32, 6] {
        for c in 2..7 {
            certs.push((format!("gold m={m} c={c}"), equivlab::gold_graph_construction(m, 1, c)?.certificate));
        }
    }
    let f81 = gf(3, 4)?;
    let cs: Vec<Elem> = f81
        .subfield(2)?
        .sorted_elements()
        .into_iter()
        .filter(|&c| !c.is_zero() && c != Elem::ONE)
        .take(3)
        .collect();
    for c in cs {
        certs.push((format!("trace c={c}"), equivlab::trace_graph_construction(3, 4, 2, c.enc())?.certificate));
    }
    let identities = certs
        .iter()
        .all(|(_, k)| k.graph_matches && k.scaled_form_matches && k.auxiliary_identity);
    let degrees = certs.iter().all(|(_, k)| (k.degree_f, k.degree_f2) == (2, 3));
    let unequal: Vec<String> = certs
        .iter()
        .filter(|(_, k)| !k.spectra_equal)
        .map(|(name, k)| format!("{name} (ccΔ {} vs {}, c-affine {})", k.uniformity_f, k.uniformity_f2, k.c_affine))
        .collect();
    ok_if(
        identities && degrees && unequal.is_empty(),
        "degrees (2,3), identities verified, equal cc-spectra for all 13 cases",
        format!(
            "identities {identities}, degrees {degrees}, spectra differ in {}/{}: {}",
            unequal.len(),
            certs.len(),
            unequal.join("; ")
        ),
    )
}

fn odd_fields(max_order: u32) -> Result<Vec<Arc<FieldCtx>>> {
    let mut out = Vec::new();
    for p in (3..=max_order).filter(|&p| is_prime(p as u64)) {
        let mut n = 1;
        while (p as u64).pow(n) <= max_order as u64 {
            out.push(gf(p, n)?);
            n += 1;
        }
    }
    Ok(out)
}

/// Random function with `F(-x) = sign·F(x)`.
fn random_symmetric<R: Rng>(field: &Arc<FieldCtx>, odd: bool, rng: &mut R) -> Result<VecFunc> {
    let mut lut = vec![None; field.order() as usize];
    for x in field.elements() {
        if lut[x.enc() as usize].is_some() {
            continue;
        }
        let y = if odd && x.is_zero() {
            Elem::ZERO
        } else {
            Elem::from_enc(rng.gen_range(0..field.order()))
        };
        lut[x.enc() as usize] = Some(y);
        lut[field.neg(x).enc() as usize] = Some(if odd { field.neg(y) } else { y });
    }
    VecFunc::from_lut(field.clone(), field.n(), lut.into_iter().map(Option::unwrap).collect())
}

fn minus_one_suite() -> Result<Check> {
    let fields = odd_fields(81)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0dd1);
    let mut parts = BTreeMap::new();

    // (a) evenness of entries off the special value.
    let mut a = Tally::default();
    for i in 0..100 {
        let field = &fields[i % fields.len()];
        let f = VecFunc::random(field.clone(), field.n(), &mut rng)?;
        let r = diffspec::minus_one_checks(&f)?;
        a.record(r.evenness && r.criterion_consistent(), || format!("GF({}^{}) trial {i}", field.p(), field.n()));
    }
    parts.insert("evenness", a);

    // (b) no PccN at c = -1: all power maps and 500 random functions.
    let mut functions: Vec<VecFunc> = Vec::new();
    for field in &fields {
        for d in 1..field.order() as u64 {
            functions.push(VecFunc::from_power(field.clone(), d, field.n())?);
        }
    }
    for i in 0..500 {
        let field = &fields[i % fields.len()];
        functions.push(VecFunc::random(field.clone(), field.n(), &mut rng)?);
    }
    let lows: Vec<Option<String>> = functions
        .par_iter()
        .map(|f| -> Result<Option<String>> {
            let field = f.field();
            let u = diffspec::cc_uniformity(f, field.neg(Elem::ONE))?;
            Ok((u < 2).then(|| format!("GF({}^{}) {:?} has ccΔ {u}", field.p(), field.n(), f.origin())))
        })
        .collect::<Result<_>>()?;
    let mut b = Tally::default();
    for low in lows {
        b.record(low.is_none(), || low.clone().unwrap_or_default());
    }
    parts.insert("no-pccn", b);

    // (c) odd and even entrywise identities.
    let mut c = Tally::default();
    for field in &fields {
        for odd in [true, false] {
            for trial in 0..5 {
                let f = random_symmetric(field, odd, &mut rng)?;
                let r = diffspec::minus_one_checks(&f)?;
                let ok = if odd { r.odd_identity == Some(true) } else { r.even_identity == Some(true) };
                c.record(ok, || format!("GF({}^{}) odd={odd} trial {trial}", field.p(), field.n()));
            }
        }
    }
    parts.insert("parity-identities", c);

    // (d) x^2 is APccN at c = -1.
    let mut d = Tally::default();
    for field in &fields {
        let sq = VecFunc::from_power(field.clone(), 2, field.n())?;
        let u = diffspec::cc_uniformity(&sq, field.neg(Elem::ONE))?;
        d.record(u == 2, || format!("GF({}^{}): {u}", field.p(), field.n()));
    }
    parts.insert("square-apccn", d);

    let passed = parts.values().all(|t| t.failed == 0 && t.total > 0);
    let computed = parts
        .iter()
        .map(|(k, t)| format!("{k}: {}", t.summary()))
        .collect::<Vec<_>>()
        .join("; ");
    ok_if(passed, "all four sub-suites hold on every odd field of order ≤ 81", computed)
}

fn structural_lemmas() -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e44a);
    let mut parts: BTreeMap<&str, Tally> = BTreeMap::new();
    for (p, n) in [(2u32, 4u32), (3, 2)] {
        let field = gf(p, n)?;
        let tag = |what: &str| format!("GF({p}^{n}) {what}");
        for trial in 0..3 {
            let s = random_divisor(&field, &mut rng);
            let f = VecFunc::random(field.clone(), s, &mut rng)?;
            for c in f.codomain().sorted_elements().into_iter().filter(|c| !c.is_zero()) {
                let table = diffspec::ddt(&f, Kind::Cc, c)?;
                for a in field.elements() {
                    for (b, k) in table.row_entries(a) {
                        let pre = diffspec::cc_entry_by_preimages(&f, c, a, b)?;
                        parts.entry("preimage-union").or_default().record(pre == k, || tag(&format!("trial {trial} c={c} a={a} b={b}")));
                        let (l, r) = diffspec::cc_duality(&f, c, a, b)?;
                        parts.entry("duality").or_default().record(l == r && l == k, || tag(&format!("c={c} a={a} b={b}")));
                    }
                }
                if s == n {
                    for u in field.elements() {
                        for v in field.elements() {
                            let e = walshlab::convolution_entry(&f, c, u, v)?;
                            parts.entry("convolution").or_default().record(e == table.entry(u, v), || tag(&format!("c={c} u={u} v={v}")));
                        }
                    }
                }
            }

            // Trace perturbation on a full-codomain function.
            let g = VecFunc::random(field.clone(), n, &mut rng)?;
            for t in field.divisors() {
                for u in field.elements() {
                    for v in field.elements() {
                        let tr = field.relative_trace(field.neg(field.mul(u, v)), n, t)?;
                        if tr == Elem::ONE {
                            continue;
                        }
                        let c = field.subfield(t)?.elem(rng.gen_range(1..field.subfield(t)?.size()));
                        let r = diffspec::trace_perturb_invariance(&g, u, v, t, c)?;
                        parts.entry("trace-perturbation").or_default().record(
                            r.f_uniformity == r.g_uniformity,
                            || tag(&format!("t={t} u={u} v={v} c={c}: {} vs {}", r.f_uniformity, r.g_uniformity)),
                        );
                    }
                }
            }

            // Inverse of a permutation.
            let perm = VecFunc::random_permutation(field.clone(), &mut rng);
            let inv = perm.inverse()?;
            for c in field.nonzero_elements() {
                let same = diffspec::cc_spectrum(&perm, c)? == diffspec::cc_spectrum(&inv, c)?;
                parts.entry("inverse").or_default().record(same, || tag(&format!("c={c}")));
            }

            // c1-equivalence.
            for c in field.nonzero_elements() {
                let a1 = equivlab::random_c_affine_perm(&field, n, c, &mut rng)?;
                let a2 = equivlab::random_c_affine_perm(&field, n, Elem::ONE, &mut rng)?;
                let (x, y) = equivlab::c1_invariance_check(&g, &a1, &a2, c)?;
                parts.entry("c1-equivalence").or_default().record(x == y, || tag(&format!("c={c}: {x} vs {y}")));
            }
        }

        // DO reduction on random two-term DO polynomials.
        for trial in 0..3 {
            let mut coeffs = BTreeMap::new();
            for i in 0..n {
                for j in 0..n {
                    coeffs.insert(vec![i, j], Elem::from_enc(rng.gen_range(0..field.order())));
                }
            }
            let f = VecFunc::from_do(field.clone(), &DoDescriptor::new(vec![1, 1], coeffs))?;
            for c in field.subfield(1)?.sorted_elements().into_iter().filter(|c| !c.is_zero()) {
                let r = diffspec::do_reduction(&f, c)?;
                let expected_cp = field.pow_signed(c, -1)?;
                parts.entry("do-reduction").or_default().record(
                    r.entrywise && r.c_prime == expected_cp.enc(),
                    || tag(&format!("trial {trial} c={c}")),
                );
            }
        }
    }
    let passed = parts.values().all(|t| t.failed == 0 && t.total > 0);
    let computed = parts
        .iter()
        .map(|(k, t)| format!("{k}: {}", t.summary()))
        .collect::<Vec<_>>()
        .join("; ");
    ok_if(passed, "every identity holds at every point", computed)
}

fn power_table() -> Result<Check> {
    let mut sq = Tally::default();
    for field in odd_fields(49)? {
        let f = VecFunc::from_power(field.clone(), 2, field.n())?;
        for c in field.nonzero_elements().filter(|&c| c != Elem::ONE) {
            let u = diffspec::cc_uniformity(&f, c)?;
            sq.record(u == 2, || format!("GF({}^{}) c={c}: {u}", field.p(), field.n()));
        }
    }
    let mut inv = Tally::default();
    for n in [4u32, 5, 6] {
        let field = gf(2, n)?;
        let d = (1u64 << n) - 2;
        let f = VecFunc::from_power(field.clone(), d, n)?;
        for c in field.nonzero_elements() {
            let cp = field.pow_signed(c, 1 - d as i64)?;
            if cp == Elem::ONE {
                continue;
            }
            let want = if field.abs_trace(cp) == 1 && field.abs_trace(field.inv(cp)?) == 1 { 2 } else { 3 };
            let u = diffspec::cc_uniformity(&f, c)?;
            inv.record(u == want, || format!("GF(2^{n}) c={c}: {u} vs {want}"));
        }
    }
    ok_if(
        sq.failed == 0 && inv.failed == 0,
        "x^2 APccN for odd p; inverse map 2 or 3 by the trace condition",
        format!("square: {}; inverse: {}", sq.summary(), inv.summary()),
    )
}
