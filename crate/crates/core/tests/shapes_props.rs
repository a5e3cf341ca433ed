use fracterm_core::ratio::RatioNumber;
use fracterm_core::shapes::{
    self, bounded_instances, convert, decode, encode, instance_eq, label_eq, shape_add, shape_div, shape_mul,
    shape_neg, Instance, Label, ShapeId,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn enc(k: i64, shape: ShapeId) -> Instance {
    encode(&BigInt::from(k), shape).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rat_instance(n: i64, d: i64, shape: ShapeId) -> Instance {
    match shape {
        ShapeId::RatRns => Instance::Rns(RatioNumber::new(n, d)),
        _ => {
            let pcs = Instance::from_json(ShapeId::RatPcs, &serde_json::json!([n, d])).unwrap();
            convert(&pcs, shape).unwrap()
        }
    }
}

const NAT: [ShapeId; 5] =
    [ShapeId::NatDec, ShapeId::NatSdn, ShapeId::NatDedekind, ShapeId::NatVonNeumann, ShapeId::NatZermelo];
const INT: [ShapeId; 2] = [ShapeId::IntSigned, ShapeId::IntDiffPair];
const RAT: [ShapeId; 3] = [ShapeId::RatPcs, ShapeId::RatSsft, ShapeId::RatRns];

proptest! {
    #[test]
    fn nat_operations_commute_with_decode(a in 0i64..=50, b in 0i64..=50) {
        for shape in NAT {
            let (i, j) = (enc(a, shape), enc(b, shape));
            prop_assert_eq!(decode(&i), Some(q(a, 1)));
            prop_assert_eq!(decode(&shape_add(&i, &j).unwrap()), Some(q(a + b, 1)));
            prop_assert_eq!(decode(&shape_mul(&i, &j).unwrap()), Some(q(a * b, 1)));
        }
    }

    #[test]
    fn int_operations_commute_with_decode(a in -50i64..=50, b in -50i64..=50) {
        for shape in INT {
            let (i, j) = (enc(a, shape), enc(b, shape));
            prop_assert_eq!(decode(&shape_add(&i, &j).unwrap()), Some(q(a + b, 1)));
            prop_assert_eq!(decode(&shape_mul(&i, &j).unwrap()), Some(q(a * b, 1)));
            prop_assert_eq!(decode(&shape_neg(&i).unwrap()), Some(q(-a, 1)));
        }
    }

    #[test]
    fn rat_operations_commute_with_decode(
        a in -50i64..=50, b in 1i64..=50, c in -50i64..=50, d in 1i64..=50,
    ) {
        let (x, y) = (q(a, b), q(c, d));
        for shape in RAT {
            let (i, j) = (rat_instance(a, b, shape), rat_instance(c, d, shape));
            prop_assert_eq!(decode(&shape_add(&i, &j).unwrap()), Some(&x + &y));
            prop_assert_eq!(decode(&shape_mul(&i, &j).unwrap()), Some(&x * &y));
            prop_assert_eq!(decode(&shape_neg(&i).unwrap()), Some(-&x));
            if !y.is_zero() {
                prop_assert_eq!(decode(&shape_div(&i, &j).unwrap()), Some(&x / &y));
            }
        }
    }

    #[test]
    fn conversion_round_trips(k in 0i64..=50) {
        for s1 in NAT {
            for s2 in NAT {
                let i = enc(k, s1);
                let back = convert(&convert(&i, s2).unwrap(), s1).unwrap();
                prop_assert!(label_eq(&back, &i).unwrap());
            }
        }
    }

    #[test]
    fn int_and_rat_conversion_round_trips(a in -50i64..=50, b in 1i64..=50) {
        let (i, j) = (enc(a, ShapeId::IntSigned), enc(a, ShapeId::IntDiffPair));
        prop_assert!(label_eq(&convert(&convert(&i, ShapeId::IntDiffPair).unwrap(), ShapeId::IntSigned).unwrap(), &i).unwrap());
        prop_assert!(label_eq(&convert(&j, ShapeId::IntSigned).unwrap(), &i).unwrap());
        for s1 in RAT {
            for s2 in RAT {
                let x = rat_instance(a, b, s1);
                let back = convert(&convert(&x, s2).unwrap(), s1).unwrap();
                prop_assert!(label_eq(&back, &x).unwrap());
            }
        }
    }
}

#[test]
fn label_equality_is_an_equivalence_and_refined_by_instance_equality() {
    for shape in ShapeId::ALL {
        let sample = bounded_instances(shape, 100);
        let sample = &sample[..sample.len().min(130)];
        assert!(sample.len() >= 100, "{shape}: only {} instances", sample.len());
        for i in sample {
            assert!(label_eq(i, i).unwrap(), "{shape}: {i} not reflexive");
            for j in sample {
                let l = label_eq(i, j).unwrap();
                assert_eq!(l, label_eq(j, i).unwrap(), "{shape}: symmetry at {i}, {j}");
                if instance_eq(i, j).unwrap() {
                    assert!(l, "{shape}: {i} =_S {j} but not label-equal");
                }
                if !l {
                    continue;
                }
                for k in sample {
                    if label_eq(j, k).unwrap() {
                        assert!(label_eq(i, k).unwrap(), "{shape}: transitivity at {i}, {j}, {k}");
                    }
                }
            }
        }
    }
}

#[test]
fn normal_shapes_and_witnesses() {
    for shape in ShapeId::ALL {
        let n = shapes::is_normal(shape, 12).unwrap();
        let subnormal = matches!(shape, ShapeId::NatDec | ShapeId::RatRns | ShapeId::IntDiffPair);
        assert_eq!(n.normal, !subnormal, "{shape}");
        if let Some((i, j)) = n.witness {
            assert!(!instance_eq(&i, &j).unwrap() && label_eq(&i, &j).unwrap());
        }
    }
}

#[test]
fn von_neumann_order_is_membership() {
    for a in 0..=12 {
        for b in 0..=12 {
            let (Instance::VonNeumann(i), Instance::VonNeumann(j)) =
                (enc(a, ShapeId::NatVonNeumann), enc(b, ShapeId::NatVonNeumann))
            else {
                unreachable!()
            };
            assert_eq!(a < b, j.contains(&i), "{a} ∈ {b}");
        }
    }
}

#[test]
fn labels_of_shapes() {
    assert_eq!(ShapeId::NatZermelo.label(), Label::Nat);
    assert_eq!(ShapeId::IntDiffPair.label(), Label::Int);
    assert_eq!(ShapeId::RatRns.label(), Label::Rat);
    assert!(matches!("real".parse::<Label>(), Err(shapes::ShapeError::UnsupportedLabel(_))));
}
