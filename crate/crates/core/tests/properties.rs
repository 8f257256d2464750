use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use ccdiff::diffspec::{self, Kind};
use ccdiff::equivlab;
use ccdiff::walshlab::{self, DEFAULT_WORK_LIMIT};
use ccdiff::{Elem, FieldCtx, VecFunc};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SMALL: [(u32, u32); 6] = [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (7, 1)];
const ARITH: [(u32, u32); 7] = [(2, 4), (2, 8), (3, 3), (5, 2), (7, 2), (2, 21), (3, 13)];

fn field(i: usize, set: &[(u32, u32)]) -> Arc<FieldCtx> {
    static CACHE: Mutex<BTreeMap<(u32, u32), Arc<FieldCtx>>> = Mutex::new(BTreeMap::new());
    let key = set[i % set.len()];
    let mut cache = CACHE.lock().unwrap();
    cache.entry(key).or_insert_with(|| FieldCtx::new(key.0, key.1, None).unwrap()).clone()
}

fn el(f: &FieldCtx, raw: u32) -> Elem {
    Elem::from_enc(raw % f.order())
}

/// Random function with a random codomain degree, plus a legal nonzero c.
fn setup(idx: usize, seed: u64) -> (VecFunc, Elem) {
    use rand::Rng;
    let fld = field(idx, &SMALL);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ds = fld.divisors();
    let s = ds[rng.gen_range(0..ds.len())];
    let f = VecFunc::random(fld.clone(), s, &mut rng).unwrap();
    let cod = f.codomain();
    let c = cod.elem(rng.gen_range(1..cod.size()));
    (f, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(i in 0usize..7, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(i, &ARITH);
        let (a, b, c) = (el(&f, a), el(&f, b), el(&f, c));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul_poly(a, b));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            prop_assert_eq!(f.pow(a, f.order() as u64 - 1), Elem::ONE);
        }
    }

    #[test]
    fn trace_linear_and_transitive(i in 0usize..7, a in any::<u32>(), b in any::<u32>(), k in any::<u32>()) {
        let f = field(i, &ARITH);
        let (a, b) = (el(&f, a), el(&f, b));
        for s in f.divisors() {
            let lam = f.subfield(s).unwrap().elem(k % f.subfield(s).unwrap().size());
            let lhs = f.trace(f.add(f.mul(lam, a), b), s).unwrap();
            let rhs = f.add(f.mul(lam, f.trace(a, s).unwrap()), f.trace(b, s).unwrap());
            prop_assert_eq!(lhs, rhs);
            prop_assert!(f.in_subfield(f.trace(a, s).unwrap(), s));
            let via = f.relative_trace(f.trace(a, s).unwrap(), s, 1).unwrap();
            prop_assert_eq!(via.enc(), f.abs_trace(a));
        }
    }

    #[test]
    fn interpolation_reproduces_lut(idx in 0usize..6, seed in any::<u64>()) {
        let (f, _) = setup(idx, seed);
        let coeffs = f.interpolate();
        let back = VecFunc::from_univariate(f.field().clone(), &coeffs, f.s()).unwrap();
        prop_assert_eq!(back.lut(), f.lut());
    }

    #[test]
    fn walsh_parseval(idx in 0usize..6, seed in any::<u64>()) {
        let (f, _) = setup(idx, seed);
        let t = walshlab::walsh_table(&f);
        let q = f.field().order() as i128;
        for &v in t.v_elements() {
            let total = f.field().elements()
                .map(|u| t.get(u, v).norm_sq())
                .fold(walshlab::CycInt::zero(f.field().p()), |acc, x| acc.add(&x));
            prop_assert_eq!(total.rational(), Some(q * q));
        }
        if f.field().p() == 2 {
            let fast = walshlab::walsh_table_fwht(&f).unwrap();
            prop_assert_eq!(fast.values(), t.values());
        }
    }

    #[test]
    fn moments_match_direct_sums(idx in 0usize..6, seed in any::<u64>()) {
        let (f, c) = setup(idx, seed);
        let fld = f.field();
        let g = walshlab::g_sums(&f, c, 2, DEFAULT_WORK_LIMIT).unwrap();
        for k in 1..=2u32 {
            let mut direct = 0i128;
            for a in fld.elements() {
                for x in fld.elements() {
                    direct += (walshlab::s_count(&f, c, a, x).unwrap() as i128).pow(k);
                }
            }
            prop_assert_eq!(walshlab::normalized_moment(&f, &g[k as usize - 1], k).unwrap(), direct);
        }
    }

    #[test]
    fn certificates_agree_with_table(idx in 0usize..6, seed in any::<u64>(), m in 1u32..4) {
        let (f, c) = setup(idx, seed);
        let cert = walshlab::uniformity_certificate(&f, c, m, DEFAULT_WORK_LIMIT).unwrap();
        prop_assert_eq!(cert.lhs, cert.table_lhs);
        prop_assert!(cert.lhs >= 0);
        prop_assert!(cert.le_reading_holds);
        let table = diffspec::ddt(&f, Kind::Cc, c).unwrap();
        for pa in walshlab::per_a_certificates(&f, c, m, DEFAULT_WORK_LIMIT).unwrap() {
            prop_assert_eq!(pa.value, pa.direct);
            let row_max = *table.row(Elem::from_enc(pa.a)).iter().max().unwrap();
            prop_assert_eq!(pa.is_zero(), row_max <= m);
        }
    }

    #[test]
    fn table_identities(idx in 0usize..6, seed in any::<u64>(), a in any::<u32>(), b in any::<u32>()) {
        let (f, c) = setup(idx, seed);
        let fld = f.field();
        let a = el(fld, a);
        let b = f.codomain().elem(b % f.codomain().size());
        let k = diffspec::cc_ddt_entry(&f, c, a, b).unwrap();
        prop_assert_eq!(diffspec::cc_entry_by_preimages(&f, c, a, b).unwrap(), k);
        let (l, r) = diffspec::cc_duality(&f, c, a, b).unwrap();
        prop_assert_eq!((l, r), (k, k));
        if f.s() == fld.n() {
            prop_assert_eq!(walshlab::convolution_entry(&f, c, a, b).unwrap(), k);
        }
        // At c = 1 both notions coincide.
        prop_assert_eq!(
            diffspec::cc_ddt_entry(&f, Elem::ONE, a, b).unwrap(),
            diffspec::c_ddt_entry(&f, Elem::ONE, a, b).unwrap()
        );
    }

    #[test]
    fn inverse_has_same_spectrum(idx in 0usize..6, seed in any::<u64>()) {
        let fld = field(idx, &SMALL);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = VecFunc::random_permutation(fld.clone(), &mut rng);
        let g = f.inverse().unwrap();
        for c in fld.nonzero_elements() {
            prop_assert_eq!(diffspec::cc_spectrum(&f, c).unwrap(), diffspec::cc_spectrum(&g, c).unwrap());
        }
    }

    #[test]
    fn c_affine_maps_are_closed(idx in 0usize..6, seed in any::<u64>()) {
        use rand::Rng;
        let fld = field(idx, &SMALL);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = Elem::from_enc(rng.gen_range(1..fld.order()));
        let n = fld.n();
        let a = equivlab::random_c_affine_perm(&fld, n, c, &mut rng).unwrap();
        let b = equivlab::random_c_affine_perm(&fld, n, c, &mut rng).unwrap();
        prop_assert!(a.compose(&b).unwrap().is_c_affine(c));
        prop_assert!(a.inverse().unwrap().is_c_affine(c));
        let pa = equivlab::random_c_affine_product(&fld, n, c, &mut rng).unwrap();
        prop_assert!(pa.inverse().unwrap().is_c_affine(c));
        let id = equivlab::ProductAffineMap::identity(fld.clone(), n).unwrap();
        prop_assert_eq!(pa.compose(&pa.inverse().unwrap()).unwrap(), id);
    }

    #[test]
    fn graph_maps_preserve_spectrum(idx in 0usize..6, seed in any::<u64>()) {
        let (f, c) = setup(idx, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let map = equivlab::random_graph_preserving_map(&f, c, &mut rng).unwrap();
        let r = equivlab::ccz_invariance_check(&f, &map, c).unwrap();
        prop_assert!(r.c_affine && r.preserved());
    }

    #[test]
    fn odd_characteristic_parity(i in 0usize..4, seed in any::<u64>()) {
        let fld = field(i, &[(3, 2), (5, 2), (3, 3), (7, 1)]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = VecFunc::random(fld.clone(), fld.n(), &mut rng).unwrap();
        let r = diffspec::minus_one_checks(&f).unwrap();
        prop_assert!(r.evenness && r.criterion_consistent());
        prop_assert!(r.cc_uniformity >= 2);
        // Even part plus an affine map: ccΔ of the sum equals cΔ of the even part at c = -1.
        let neg = f.then(&VecFunc::identity(fld.clone())).unwrap();
        let mirrored = VecFunc::from_fn(fld.clone(), fld.n(), |x| neg.eval(fld.neg(x))).unwrap();
        let even = f.pointwise_add(&mirrored).unwrap();
        let lam = Elem::from_enc(1 + (seed % (fld.order() as u64 - 1)) as u32);
        let affine = VecFunc::from_fn(fld.clone(), fld.n(), |x| fld.add(fld.mul(lam, x), Elem::ONE)).unwrap();
        let (lhs, rhs) = diffspec::even_plus_affine(&even, &affine).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
