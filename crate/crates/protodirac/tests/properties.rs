//! Randomized invariants of the algebraic layers, exercised through the
//! public API under proptest shrinking.

use proptest::prelude::*;
use protodirac::dirac::DiracOperator;
use protodirac::duality::bv_partial;
use protodirac::dull::DullStructure;
use protodirac::exterior::{masks_of_degree, pairing, Form, MultiVec};
use protodirac::io::{parse_poly, InputDocument};
use protodirac::proto::ProtoData;
use protodirac::ring::{rat, Poly, Rational};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-6i64..7, 1i64..5).prop_map(|(p, q)| rat(p, q))
}

fn arb_poly(vars: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(
        (proptest::collection::vec(0u32..3, vars), arb_rational()),
        0..3,
    )
    .prop_map(move |terms| {
        let mut p = Poly::zero(vars);
        for (e, c) in terms {
            p += &Poly::monomial(vars, e, c);
        }
        p
    })
}

fn arb_multivec(rank: usize, vars: usize) -> impl Strategy<Value = MultiVec> {
    proptest::collection::vec((0..(1u32 << rank), arb_poly(vars)), 0..4).prop_map(move |terms| {
        let mut v = MultiVec::zero(rank, vars);
        for (mask, p) in terms {
            v = v.add(&MultiVec::term(rank, vars, mask, p));
        }
        v
    })
}

fn arb_homogeneous<S: protodirac::exterior::Side>(
    rank: usize,
    vars: usize,
    degree: usize,
) -> impl Strategy<Value = protodirac::exterior::Exterior<S>> {
    let masks = masks_of_degree(rank, degree);
    proptest::collection::vec(arb_poly(vars), masks.len()).prop_map(move |coeffs| {
        let mut v = protodirac::exterior::Exterior::zero(rank, vars);
        for (mask, p) in masks.iter().zip(coeffs) {
            v = v.add(&protodirac::exterior::Exterior::term(rank, vars, *mask, p));
        }
        v
    })
}

fn arb_structure(rank: usize, vars: usize) -> impl Strategy<Value = DullStructure> {
    let pairs = rank * (rank - 1) / 2;
    (
        proptest::collection::vec(arb_poly(vars), pairs * rank),
        proptest::collection::vec(arb_poly(vars), rank * vars),
    )
        .prop_map(move |(brackets, anchors)| {
            let mut s = DullStructure::zero(rank, vars);
            let mut it = brackets.into_iter();
            for i in 0..rank {
                for j in (i + 1)..rank {
                    for k in 0..rank {
                        s.set_bracket(i, j, k, it.next().unwrap());
                    }
                }
            }
            let mut it = anchors.into_iter();
            for i in 0..rank {
                for alpha in 0..vars {
                    s.set_anchor(i, alpha, it.next().unwrap());
                }
            }
            s
        })
}

fn arb_proto(rank: usize, vars: usize) -> impl Strategy<Value = ProtoData> {
    (
        arb_structure(rank, vars),
        arb_structure(rank, vars),
        arb_homogeneous::<protodirac::exterior::VecSide>(rank, vars, 3),
        arb_homogeneous::<protodirac::exterior::FormSide>(rank, vars, 3),
    )
        .prop_map(|(a, star, tau, phi)| ProtoData::new(a, star, tau, phi).unwrap())
}

proptest! {
    #[test]
    fn poly_multiplication_distributes(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn partial_derivatives_satisfy_leibniz(a in arb_poly(2), b in arb_poly(2)) {
        for alpha in 0..2 {
            let lhs = (&a * &b).partial_diff(alpha);
            let rhs = &(&a.partial_diff(alpha) * &b) + &(&a * &b.partial_diff(alpha));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn wedge_is_associative(a in arb_multivec(4, 1), b in arb_multivec(4, 1), c in arb_multivec(4, 1)) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn wedge_is_graded_commutative(
        ka in 0usize..4,
        kb in 0usize..4,
        seed_a in proptest::collection::vec(arb_rational(), 8),
        seed_b in proptest::collection::vec(arb_rational(), 8),
    ) {
        let build = |k: usize, seed: &[Rational]| {
            let mut v = MultiVec::zero(4, 0);
            for (mask, c) in masks_of_degree(4, k).into_iter().zip(seed) {
                v = v.add(&MultiVec::term(4, 0, mask, Poly::constant(0, c.clone())));
            }
            v
        };
        let a = build(ka, &seed_a);
        let b = build(kb, &seed_b);
        let mut ba = b.wedge(&a);
        if (ka * kb) % 2 == 1 {
            ba = ba.neg();
        }
        prop_assert_eq!(a.wedge(&b), ba);
    }

    #[test]
    fn contraction_is_adjoint_to_wedging(
        y in arb_homogeneous::<protodirac::exterior::VecSide>(4, 1, 1),
        a in arb_multivec(4, 1),
    ) {
        // <iota_y c | a> = <c | y ^ a> for every basis form c
        for k in 1..=4usize {
            let masks = masks_of_degree(4, k);
            for mask in masks {
                let c = Form::basis(4, 1, mask);
                let lhs = pairing(&c.contract_by(&y), &a);
                let rhs = pairing(&c, &y.wedge(&a));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn degree_one_contractions_anticommute(
        xi_seed in proptest::collection::vec(arb_rational(), 4),
        eta_seed in proptest::collection::vec(arb_rational(), 4),
        v in arb_multivec(4, 0),
    ) {
        let build = |seed: &[Rational]| {
            let mut w = Form::zero(4, 0);
            for (i, c) in seed.iter().enumerate() {
                w = w.add(&Form::term(4, 0, 1 << i, Poly::constant(0, c.clone())));
            }
            w
        };
        let xi = build(&xi_seed);
        let eta = build(&eta_seed);
        let lhs = v.contract_by(&xi).contract_by(&eta);
        let rhs = v.contract_by(&eta).contract_by(&xi).neg();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_display_reparses(c in arb_rational()) {
        prop_assert_eq!(protodirac::io::parse_rational_strict(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn poly_display_reparses(p in arb_poly(2)) {
        prop_assert_eq!(parse_poly(&p.to_string(), 2).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn divergence_generates_the_schouten_bracket(
        s in arb_structure(3, 1),
        k1 in 1usize..3,
        k2 in 1usize..3,
        r1 in arb_multivec(3, 1),
        r2 in arb_multivec(3, 1),
    ) {
        let r1 = r1.homogeneous_part(k1);
        let r2 = r2.homogeneous_part(k2);
        let sign = if k1 % 2 == 0 { 1 } else { -1 };
        let lhs = s.schouten(&r1, &r2);
        let rhs = bv_partial(&s, &r1.wedge(&r2))
            .sub(&bv_partial(&s, &r1).wedge(&r2))
            .scale_rat(&protodirac::ring::int(sign))
            .sub(&r1.wedge(&bv_partial(&s, &r2)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_bracket_has_graded_symmetry(
        s in arb_structure(3, 1),
        k1 in 1usize..4,
        k2 in 1usize..4,
        r1 in arb_multivec(3, 1),
        r2 in arb_multivec(3, 1),
    ) {
        let r1 = r1.homogeneous_part(k1);
        let r2 = r2.homogeneous_part(k2);
        // [r1, r2] = -(-1)^((k1-1)(k2-1)) [r2, r1]
        let flipped = s.schouten(&r2, &r1);
        let expected = if (k1 - 1) * (k2 - 1) % 2 == 0 {
            flipped.neg()
        } else {
            flipped
        };
        prop_assert_eq!(s.schouten(&r1, &r2), expected);
    }

    #[test]
    fn modular_flows_recover_the_modular_sections(
        p in arb_proto(3, 1),
        xi in arb_homogeneous::<protodirac::exterior::FormSide>(3, 1, 1),
        x in arb_homogeneous::<protodirac::exterior::VecSide>(3, 1, 1),
    ) {
        let md = p.modular();
        prop_assert_eq!(p.modular_flow_along_form(&xi), pairing(&xi, &md.x0));
        prop_assert_eq!(p.modular_flow_along_section(&x), pairing(&md.xi0, &x));
    }

    #[test]
    fn square_decomposition_reassembles(
        p in arb_proto(3, 1),
        v in arb_multivec(3, 1),
    ) {
        let op = DiracOperator::new(&p);
        // the constructor of the decomposition asserts the six pieces sum
        // to the square; verify the residual form explicitly as well
        let dec = op.square_decomposition(&v);
        let residual = op.apply(&op.apply(&v)).sub(&v.scale(op.characteristic()));
        let mut obstruction_sum = MultiVec::zero(3, 1);
        for (_, piece) in dec.obstructions() {
            obstruction_sum = obstruction_sum.add(piece);
        }
        prop_assert_eq!(residual, obstruction_sum);
    }

    #[test]
    fn documents_round_trip(p in arb_proto(3, 1)) {
        let doc = InputDocument::from_proto(&p);
        let text = doc.to_json();
        let back = InputDocument::from_json(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        let q = back.to_proto().unwrap();
        prop_assert_eq!(InputDocument::from_proto(&q), doc);
    }

    #[test]
    fn characteristic_is_zero_when_nothing_twists(
        s in arb_structure(3, 1),
    ) {
        // with a zero dual side the modular section X0 vanishes, and the
        // modular form only ever enters paired against X0, so the scalar
        // is zero no matter the bracket
        let zero_star = DullStructure::zero(3, 1);
        let p = ProtoData::new(
            s,
            zero_star,
            MultiVec::zero(3, 1),
            Form::zero(3, 1),
        ).unwrap();
        let op = DiracOperator::new(&p);
        prop_assert!(op.x0().is_zero());
        prop_assert!(op.characteristic().is_zero());
    }
}
