mod common;

use common::*;
use lieverify::endoscopy::{ClassDatum, EndoMatch, StableClass};
use lieverify::models::{fs_by_characters, SignExpr};
use lieverify::repchar::{decompose, dual, fs_indicator, irrep_character, tensor};
use proptest::prelude::*;

fn sign_expr() -> impl Strategy<Value = SignExpr> {
    (any::<bool>(), proptest::collection::btree_set("[a-d]", 0..4)).prop_map(|(neg, syms)| {
        let mut e = if neg { SignExpr::minus_one() } else { SignExpr::one() };
        for s in syms {
            e = e * SignExpr::symbol(s);
        }
        e
    })
}

fn small_weight() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0usize..SMALL_TYPES.len()).prop_flat_map(|t| {
        let rank = sc(SMALL_TYPES[t]).rank();
        (Just(t), proptest::collection::vec(0i64..3, rank))
    })
}

fn gu_class() -> impl Strategy<Value = (Vec<u8>, Vec<u8>, Vec<usize>)> {
    (
        proptest::collection::vec(0u8..2, 4),
        proptest::collection::vec(0u8..2, 4),
        proptest::sample::subsequence(vec![0usize, 1, 2, 3], 0..=4),
    )
}

fn raw(bits: Vec<u8>) -> ClassDatum {
    ClassDatum { stable: lieverify::endoscopy::main_shape(), bits, outer: None }
}

proptest! {
    #[test]
    fn sign_products_commute_and_square_to_one(a in sign_expr(), b in sign_expr(), c in sign_expr()) {
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert!((a.clone() * a.clone()).is_one());
        prop_assert_eq!(SignExpr::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn transfer_sign_is_a_character((x, y, minus) in gu_class()) {
        let m = EndoMatch::new(minus);
        let xy: Vec<u8> = x.iter().zip(&y).map(|(a, b)| a ^ b).collect();
        let s = |v: Vec<u8>| lieverify::endoscopy::transfer_sign(&raw(v), &m);
        prop_assert_eq!(s(xy), s(x.clone()) * s(y));
        prop_assert_eq!(s(vec![0; 4]), 1);
    }

    #[test]
    fn flip_changes_sign_uniformly((x, _y, minus) in gu_class()) {
        let m = EndoMatch::new(minus.clone());
        let c = raw(x);
        let f = c.flipped();
        let expected = if minus.len() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(
            lieverify::endoscopy::transfer_sign(&c, &m) * lieverify::endoscopy::transfer_sign(&f, &m),
            expected
        );
    }

    #[test]
    fn irreducible_characters_decompose_to_themselves((t, lam) in small_weight()) {
        let d = sc(SMALL_TYPES[t]);
        let chi = irrep_character(&d, &lam).unwrap();
        prop_assert_eq!(decompose(&chi).unwrap(), vec![(lam.clone(), 1)]);
        prop_assert_eq!(dual(&dual(&chi)), chi);
    }

    #[test]
    fn indicator_formula_matches_characters((t, lam) in small_weight()) {
        let d = sc(SMALL_TYPES[t]);
        prop_assume!(lieverify::repchar::dim_weyl(&d, &lam).unwrap() <= 64u32.into());
        let f = fs_indicator(&d, &lam).unwrap();
        prop_assert_eq!(i64::from(f), fs_by_characters(&d, &lam).unwrap());
    }

    #[test]
    fn tensor_dimension_multiplies((t, a) in small_weight(), b in proptest::collection::vec(0i64..2, 3)) {
        let d = sc(SMALL_TYPES[t]);
        let b: Vec<i64> = b.into_iter().take(d.rank()).collect();
        prop_assume!(b.len() == d.rank());
        let x = irrep_character(&d, &a).unwrap();
        let y = irrep_character(&d, &b).unwrap();
        prop_assume!(x.dim() * y.dim() <= 400);
        prop_assert_eq!(tensor(&x, &y).unwrap().dim(), x.dim() * y.dim());
    }
}

#[test]
fn split_factor_contributes_trivially() {
    let s = StableClass::parse("S:x E:y E:z").unwrap();
    let c = ClassDatum { stable: s, bits: vec![0, 1, 0], outer: None };
    assert_eq!(lieverify::endoscopy::transfer_sign(&c, &EndoMatch::new([0])), 1);
    assert_eq!(lieverify::endoscopy::transfer_sign(&c, &EndoMatch::new([0, 1])), -1);
}
