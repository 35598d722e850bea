mod common;

use std::collections::BTreeMap;

use common::*;
use lieverify::endoscopy::{stable_matches, sweep_shapes, verify_cancellation};
use lieverify::linalg::Rat;
use lieverify::repchar::{dim_weyl, irrep_character};
use lieverify::torsion::{elliptic_classes, enumerate_torsion};
use lieverify::build_datum;
use num_bigint::BigUint;
use num_traits::{Signed, Zero};

#[test]
fn freudenthal_matches_kostant_up_to_dim_200() {
    for t in SMALL_TYPES {
        let d = sc(t);
        let mut k = Kostant::new(&d);
        let mut checked = 0;
        for lam in dominant_box(d.rank(), 6) {
            let dim = dim_weyl(&d, &lam).unwrap();
            if dim > BigUint::from(200u32) {
                continue;
            }
            let chi = irrep_character(&d, &lam).unwrap();
            let shifted: Vec<i64> = lam.iter().zip(rho(&d)).map(|(a, b)| a + b).collect();
            let orbit = regular_orbit(&d, &shifted);
            let mut total = 0;
            for (mu, m) in chi.mults() {
                if d.is_dominant(mu).unwrap() {
                    assert_eq!(kostant_mult(&d, &mut k, &orbit, mu), *m, "{t} {lam:?} at {mu:?}");
                }
                total += m;
            }
            assert_eq!(BigUint::from(total as u64), dim, "{t} {lam:?}");
            checked += 1;
        }
        assert!(checked > 3, "{t}");
    }
}

#[test]
fn torsion_matches_brute_force() {
    for t in ["A1", "A2", "B2", "G2"] {
        for iso in ["sc", "ad"] {
            let d = build_datum(&format!("{t}:{iso}")).unwrap();
            for m in 1..=6 {
                let mut engine: Vec<(i64, usize)> = enumerate_torsion(&d, m)
                    .unwrap()
                    .iter()
                    .map(|c| {
                        let roots = d
                            .roots()
                            .iter()
                            .filter(|r| lieverify::linalg::dot_q(r, &c.point.x).is_integer())
                            .count();
                        (c.order, roots)
                    })
                    .collect();
                engine.sort();
                assert_eq!(engine, brute_force_torsion(&d, m), "{t}:{iso} m={m}");
            }
        }
    }
}

#[test]
fn elliptic_vertices_match_enumeration() {
    for desc in ["B3:sc", "C3:sc", "D4:sc", "G2:sc", "A3:sc", "D4:ad"] {
        let d = build_datum(desc).unwrap();
        let mut a: Vec<(String, i64)> =
            elliptic_classes(&d).unwrap().into_iter().map(|c| (c.centralizer, c.order)).collect();
        let mut b: Vec<(String, i64)> = enumerate_torsion(&d, 12)
            .unwrap()
            .into_iter()
            .filter(|c| c.elliptic)
            .map(|c| (c.centralizer, c.order))
            .collect();
        a.sort();
        b.sort();
        assert_eq!(a, b, "{desc}");
    }
}

#[test]
fn weyl_orders_by_orbit() {
    for t in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"] {
        let d = sc(t);
        assert_eq!(BigUint::from(weyl_order_brute(&d)), d.weyl_group_order(), "{t}");
    }
}

#[test]
fn cancellation_matches_direct_sum() {
    for s in sweep_shapes() {
        let flipping = s.factors.iter().filter(|f| f.flips()).count();
        assert_eq!(flipping % 2, 0, "oracle assumes flips keep the parity");
        for eta in [1i8, -1] {
            let mut worst = Rat::zero();
            for m in stable_matches(&s).unwrap() {
                let v = cancellation_oracle(&s, eta, &m);
                let engine = lieverify::endoscopy::cancellation_sum(&s, eta, &m).unwrap();
                assert_eq!(v, Rat::from_integer(engine), "{s} {eta} {}", m.describe(&s));
                if v.abs() > worst {
                    worst = v.abs();
                }
            }
            assert!(worst.is_zero());
            assert_eq!(verify_cancellation(&s, eta).unwrap(), 0);
        }
    }
}

#[test]
fn proper_matches_only_cancel() {
    // the stable match I⁻ = ∅ does not cancel: the sum counts the family
    let s = lieverify::endoscopy::main_shape();
    let m = lieverify::endoscopy::EndoMatch::new([]);
    assert_eq!(cancellation_oracle(&s, 1, &m), Rat::from_integer(4));
}

#[test]
fn match_counts_by_partition() {
    let mut counts = BTreeMap::new();
    for s in sweep_shapes() {
        counts.insert(s.to_string(), stable_matches(&s).unwrap().len());
    }
    assert_eq!(counts["E:a1 E:a2 | E:b1 E:b2"], 6);
    assert_eq!(counts["E:a1 E:a2 | K1:b"], 2);
    assert_eq!(counts["K1:a | K2:b"], 2);
}
