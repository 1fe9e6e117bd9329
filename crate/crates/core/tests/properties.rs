use proptest::prelude::*;

use freeprod_core::factor::{FactorElement, FactorGroup};
use freeprod_core::group_ring::{certify_u_minus_one_not_unit, CoefficientRing, LaurentPoly};
use freeprod_core::{FreeProduct, NormalForm, Side};

fn products() -> Vec<FreeProduct> {
    vec![
        FreeProduct::cyclic_pair(2, 3).unwrap(),
        FreeProduct::cyclic_pair(2, 2).unwrap(),
        FreeProduct::cyclic_pair(4, 6).unwrap(),
        FreeProduct::new(
            FactorGroup::integers(),
            FactorGroup::cyclic_standard(3).unwrap(),
        ),
        FreeProduct::new(FactorGroup::free(2).unwrap(), FactorGroup::integers()),
    ]
}

/// An element given as a product of generator powers.
fn build(fp: &FreeProduct, spec: &[(usize, i64)]) -> NormalForm {
    let gens = fp.generator_letters();
    spec.iter().fold(NormalForm::identity(), |acc, &(i, k)| {
        let letter = &gens[i % gens.len()];
        let g = fp.normal_form(vec![letter.clone()]).unwrap();
        fp.multiply(&acc, &fp.power(&g, k))
    })
}

fn word() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..8, -3i64..=3), 0..10)
}

fn assert_invariants(fp: &FreeProduct, g: &NormalForm) {
    fp.validate(g).unwrap();
    for pair in g.letters().windows(2) {
        assert_ne!(pair[0].factor, pair[1].factor);
    }
}

proptest! {
    #[test]
    fn multiplication_is_associative(p in 0usize..5, x in word(), y in word(), z in word()) {
        let fp = &products()[p];
        let (x, y, z) = (build(fp, &x), build(fp, &y), build(fp, &z));
        let left = fp.multiply(&fp.multiply(&x, &y), &z);
        let right = fp.multiply(&x, &fp.multiply(&y, &z));
        assert_invariants(fp, &left);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identity_and_inverses(p in 0usize..5, x in word()) {
        let fp = &products()[p];
        let x = build(fp, &x);
        let e = NormalForm::identity();
        prop_assert_eq!(fp.multiply(&x, &e), x.clone());
        prop_assert_eq!(fp.multiply(&e, &x), x.clone());
        let inv = fp.invert(&x);
        assert_invariants(fp, &inv);
        prop_assert!(fp.multiply(&x, &inv).is_identity());
        prop_assert!(fp.multiply(&inv, &x).is_identity());
        prop_assert_eq!(fp.word_length(&x), fp.word_length(&inv));
    }

    #[test]
    fn word_length_is_subadditive(p in 0usize..5, x in word(), y in word()) {
        let fp = &products()[p];
        let (x, y) = (build(fp, &x), build(fp, &y));
        let xy = fp.multiply(&x, &y);
        prop_assert!(fp.word_length(&xy) <= fp.word_length(&x) + fp.word_length(&y));
    }

    #[test]
    fn cyclic_reduction_round_trips(p in 0usize..5, x in word()) {
        let fp = &products()[p];
        let g = build(fp, &x);
        let c = fp.cyclically_reduce(&g);
        assert_invariants(fp, &c.result);
        prop_assert!(fp.is_cyclically_reduced(&c.result));
        prop_assert!(c.result.len() <= g.len());
        prop_assert_eq!(fp.conjugate(&c.conjugator, &g), c.result.clone());
        prop_assert_eq!(fp.conjugate(&fp.invert(&c.conjugator), &c.result), g.clone());
        prop_assert!(c.result.len().is_multiple_of(2) || c.result.len() <= 1);
    }

    #[test]
    fn conjugates_share_a_key(p in 0usize..5, x in word(), h in word()) {
        let fp = &products()[p];
        let (g, h) = (build(fp, &x), build(fp, &h));
        let k = fp.conjugate(&h, &g);
        prop_assert!(fp.are_conjugate(&g, &k));
        prop_assert_eq!(fp.canonical_class_key(&g), fp.canonical_class_key(&k));
    }

    #[test]
    fn rendered_words_parse_back(p in 0usize..4, x in word()) {
        // The free-factor product renders parenthesized words, which the
        // token grammar does not accept, so it is left out.
        let fp = &products()[p];
        let g = build(fp, &x);
        let text = fp.render(&g);
        prop_assert_eq!(fp.parse_word(&text).unwrap(), g);
    }

    #[test]
    fn cyclic_factor_laws(n in 2u32..40, x in 0u32..1000, y in 0u32..1000) {
        let f = FactorGroup::cyclic_standard(n).unwrap();
        let (x, y) = (FactorElement::Finite(x % n), FactorElement::Finite(y % n));
        let inv = f.inverse(&x);
        prop_assert!(f.multiply(&x, &inv).is_none());
        prop_assert_eq!(f.word_length(&x), f.word_length(&inv));
        prop_assert_eq!(f.multiply(&x, &y), f.multiply(&y, &x));
        prop_assert!(f.word_length(&x) <= u64::from(n / 2));
    }

    #[test]
    fn laurent_products_commute_and_associate(
        ring in prop_oneof![Just(CoefficientRing::Integers), (2u64..=12).prop_map(CoefficientRing::Modulo)],
        a in prop::collection::vec((-10i64..10, -20i64..20), 0..6),
        b in prop::collection::vec((-10i64..10, -20i64..20), 0..6),
        c in prop::collection::vec((-10i64..10, -20i64..20), 0..6),
    ) {
        let (a, b, c) = (
            LaurentPoly::from_terms(ring, a).unwrap(),
            LaurentPoly::from_terms(ring, b).unwrap(),
            LaurentPoly::from_terms(ring, c).unwrap(),
        );
        prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
        prop_assert_eq!(
            a.multiply(&b).unwrap().multiply(&c).unwrap(),
            a.multiply(&b.multiply(&c).unwrap()).unwrap()
        );
        let ab_c = a.add(&b).unwrap().multiply(&c).unwrap();
        prop_assert_eq!(ab_c, a.multiply(&c).unwrap().add(&b.multiply(&c).unwrap()).unwrap());
        if !a.is_zero() {
            let cert = certify_u_minus_one_not_unit(&a).unwrap();
            prop_assert!(!cert.product.is_one());
        }
    }
}

#[test]
fn element_lookup_by_side() {
    let fp = FreeProduct::cyclic_pair(2, 3).unwrap();
    let b = fp.element(Side::Second, FactorElement::Finite(1)).unwrap();
    assert_eq!(fp.render(&b), "b");
    assert!(fp.element(Side::Second, FactorElement::Finite(3)).is_err());
}
