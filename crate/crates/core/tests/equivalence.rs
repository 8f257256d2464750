use ccdiff::diffspec::{self, Kind};
use ccdiff::equivlab::*;
use ccdiff::{Elem, Error, FieldCtx, VecFunc};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn c_ea_preserves_cc_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, n, d) in [(2u32, 4u32, 7u64), (3, 2, 5), (5, 2, 3)] {
        let field = FieldCtx::new(p, n, None).unwrap();
        let f = VecFunc::from_power(field.clone(), d, n).unwrap();
        for c in field.nonzero_elements().take(4) {
            let a1 = random_c_affine_perm(&field, n, c, &mut rng).unwrap();
            let a2 = random_c_affine_perm(&field, n, c, &mut rng).unwrap();
            let a3 = random_c_affine(&field, n, n, c, &mut rng).unwrap();
            assert!(a3.is_c_affine(c));
            let g = c_ea_apply(&a1, &f, &a2, &a3, c).unwrap();
            assert_eq!(diffspec::cc_spectrum(&f, c).unwrap(), diffspec::cc_spectrum(&g, c).unwrap());

            // The associated product map realizes the same transform on graphs.
            let ccz = ProductAffineMap::from_ea(&a1, &a2, &a3).unwrap();
            assert!(ccz.is_c_affine(c));
            assert_eq!(graph_image(&ccz, &f).unwrap(), g);
        }
    }
}

#[test]
fn c_ea_rejects_non_c_affine_parts() {
    let field = FieldCtx::new(2, 4, None).unwrap();
    let f = VecFunc::from_power(field.clone(), 3, 4).unwrap();
    let c = field.primitive_element();
    let frob = AffineMap::from_fn(field.clone(), 4, 4, |x| field.pow(x, 2)).unwrap();
    let id = AffineMap::identity(field.clone(), 4).unwrap();
    let zero = AffineMap::zero(field.clone(), 4, 4).unwrap();
    assert_eq!(c_ea_apply(&frob, &f, &id, &zero, c), Err(Error::NotCAffine(c.enc())));
    assert!(c_ea_apply(&frob, &f, &id, &zero, Elem::ONE).is_ok());
}

#[test]
fn random_ccz_sweep_preserves_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let field = FieldCtx::new(2, 4, None).unwrap();
    let f = VecFunc::from_power(field.clone(), 7, 4).unwrap();
    for c in [Elem::ONE, field.primitive_element()] {
        let r = ccz_sweep(&f, c, 8, 400, &mut rng).unwrap();
        assert!(r.graph_cases > 0);
        assert_eq!(r.preserved, r.graph_cases, "{r:?}");
    }
}

#[test]
fn c1_preserves_c_uniformity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let field = FieldCtx::new(3, 2, None).unwrap();
    let f = VecFunc::from_power(field.clone(), 5, 2).unwrap();
    for c in field.nonzero_elements() {
        let a1 = random_c_affine_perm(&field, 2, c, &mut rng).unwrap();
        let a2 = random_c_affine_perm(&field, 2, Elem::ONE, &mut rng).unwrap();
        let (before, after) = c1_invariance_check(&f, &a1, &a2, c).unwrap();
        assert_eq!(before, after);
    }
}

#[test]
fn plain_ccz_map_changes_cc_uniformity() {
    // (x, y) ↦ (x + Tr(y), y) sends x^3 to its classical companion, but is not
    // c-affine for c outside F_2, and the cc-uniformity moves from 3 to 4.
    let field = FieldCtx::new(2, 4, None).unwrap();
    let f = VecFunc::from_power(field.clone(), 3, 4).unwrap();
    let map = ProductAffineMap::from_fn(field.clone(), 4, |x, y| {
        (field.add(x, Elem::from_enc(field.abs_trace(y))), y)
    })
    .unwrap();
    let g = graph_image(&map, &f).unwrap();
    assert_eq!(g, gold_ccz_companion(4, 1).unwrap());
    let worst = |h: &VecFunc| {
        field
            .nonzero_elements()
            .filter(|&c| c != Elem::ONE)
            .map(|c| diffspec::uniformity(h, Kind::Cc, c).unwrap())
            .max()
            .unwrap()
    };
    assert_eq!((worst(&f), worst(&g)), (3, 4));
    let c = field.primitive_element();
    assert!(!map.is_c_affine(c));
    assert!(map.is_c_affine(Elem::ONE));
}

#[test]
fn gold_construction_certificate() {
    for c in 1..16 {
        let cons = gold_graph_construction(4, 1, c).unwrap();
        let cert = &cons.certificate;
        assert!(cert.graph_matches && cert.scaled_form_matches && cert.auxiliary_identity);
        assert_eq!(cert.degree_f, 2);
        // The scaled map is only c-affine when c lies in the prime field.
        assert_eq!(cert.c_affine, c == 1);
        if c == 1 {
            assert!(cert.spectra_equal);
        }
    }
    assert!(gold_graph_construction(4, 2, 3).is_err());
    assert!(gold_graph_construction(5, 1, 3).is_err());
}

#[test]
fn trace_construction_certificate() {
    let field = FieldCtx::new(3, 4, None).unwrap();
    let sub = field.subfield(2).unwrap().elements().filter(|x| !x.is_zero()).collect::<Vec<_>>();
    for c in sub {
        let cons = trace_graph_construction(3, 4, 2, c.enc()).unwrap();
        let cert = &cons.certificate;
        assert!(cert.graph_matches && cert.scaled_form_matches && cert.auxiliary_identity, "c = {c}");
        let prime = field.in_subfield(c, 1);
        assert_eq!(cert.c_affine, prime);
        if prime {
            assert!(cert.spectra_equal);
        }
    }
    assert!(trace_graph_construction(2, 4, 2, 1).is_err());
    assert!(trace_graph_construction(3, 4, 3, 1).is_err());
}
