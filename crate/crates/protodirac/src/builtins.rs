//! Ready-made structure data: named examples for the CLI and tests, a
//! rescaled three-dimensional family of solutions, and single-constant
//! perturbations used to probe the failure modes of the axiom checker.

use crate::dull::DullStructure;
use crate::exterior::{Form, MultiVec};
use crate::proto::ProtoData;
use crate::ring::{int, rat, Poly, Rational};
use crate::{Error, Result};

pub const NAMES: [&str; 4] = ["abelian", "sl2-proto", "lu-sl2", "euclidean-demo"];

/// Looks up a named example.
pub fn by_name(name: &str) -> Result<ProtoData> {
    match name {
        "abelian" => Ok(abelian()),
        "sl2-proto" => Ok(sl2_proto()),
        "lu-sl2" => Ok(lu_sl2()),
        "euclidean-demo" => Ok(euclidean_demo()),
        _ => Err(Error::UnknownBuiltin(format!(
            "{} (available: {})",
            name,
            NAMES.join(", ")
        ))),
    }
}

/// Rank 3 over a point with every table zero. Everything about it vanishes.
pub fn abelian() -> ProtoData {
    ProtoData::new(
        DullStructure::zero(3, 0),
        DullStructure::zero(3, 0),
        MultiVec::zero(3, 0),
        Form::zero(3, 0),
    )
    .expect("abelian data is well formed")
}

fn sl2_bracket(s: &mut DullStructure) {
    s.set_bracket(0, 1, 1, Poly::constant(0, int(2)));
    s.set_bracket(0, 2, 2, Poly::constant(0, int(-2)));
    s.set_bracket(1, 2, 0, Poly::one(0));
}

/// sl(2) with the dual bracket, trivector and three-form tuned so that all
/// five axioms hold with both modular sections zero. Its characteristic
/// scalar is -1.
pub fn sl2_proto() -> ProtoData {
    let mut a = DullStructure::zero(3, 0);
    sl2_bracket(&mut a);
    let mut star = DullStructure::zero(3, 0);
    star.set_bracket(0, 1, 1, Poly::constant(0, rat(1, 2)));
    star.set_bracket(0, 2, 2, Poly::constant(0, rat(-1, 2)));
    star.set_bracket(1, 2, 0, Poly::one(0));
    ProtoData::new(
        a,
        star,
        MultiVec::basis(3, 0, 0b111),
        Form::basis(3, 0, 0b111),
    )
    .expect("sl2 data is well formed")
}

/// sl(2) paired with a solvable dual bracket and no higher terms: a genuine
/// Lie bialgebra. Its vector modular section is e1/2 and its characteristic
/// scalar is 0.
pub fn lu_sl2() -> ProtoData {
    let mut a = DullStructure::zero(3, 0);
    sl2_bracket(&mut a);
    let mut star = DullStructure::zero(3, 0);
    star.set_bracket(0, 1, 1, Poly::constant(0, rat(1, 4)));
    star.set_bracket(0, 2, 2, Poly::constant(0, rat(1, 4)));
    ProtoData::new(a, star, MultiVec::zero(3, 0), Form::zero(3, 0)).expect("lu data is well formed")
}

/// Rank 5 over two coordinates: the tangent algebroid of the plane paired
/// with the cotangent algebroid of the Poisson bivector `q1 q2 d1 ^ d2`,
/// direct-summed with the sl(2) example. Nonconstant anchors on both sides,
/// characteristic scalar -1.
pub fn euclidean_demo() -> ProtoData {
    let m = 2;
    let p1 = Poly::var(m, 1); // dP/dq1 for P = q1 q2
    let p2 = Poly::var(m, 0); // dP/dq2
    let p = &Poly::var(m, 0) * &Poly::var(m, 1);

    let mut a = DullStructure::zero(5, m);
    // tangent block: identity anchor, zero bracket
    a.set_anchor(0, 0, Poly::one(m));
    a.set_anchor(1, 1, Poly::one(m));
    // sl(2) block on sections 3..5
    a.set_bracket(2, 3, 3, Poly::constant(m, int(2)));
    a.set_bracket(2, 4, 4, Poly::constant(m, int(-2)));
    a.set_bracket(3, 4, 2, Poly::one(m));

    let mut star = DullStructure::zero(5, m);
    // cotangent block: anchor is contraction into the bivector,
    // bracket sends (e^1, e^2) to the differential of P
    star.set_anchor(0, 1, p.clone());
    star.set_anchor(1, 0, -&p);
    star.set_bracket(0, 1, 0, p1);
    star.set_bracket(0, 1, 1, p2);
    // dual sl(2) block
    star.set_bracket(2, 3, 3, Poly::constant(m, rat(1, 2)));
    star.set_bracket(2, 4, 4, Poly::constant(m, rat(-1, 2)));
    star.set_bracket(3, 4, 2, Poly::one(m));

    ProtoData::new(
        a,
        star,
        MultiVec::basis(5, m, 0b11100),
        Form::basis(5, m, 0b11100),
    )
    .expect("euclidean data is well formed")
}

/// The rescaled sl(2) family: bracket scaled by `lambda` and `mu`, dual
/// bracket carrying the product `t = phi_bar * tau_bar` spread to keep the
/// axioms exact. Every member has zero modular sections and characteristic
/// scalar `-t`.
///
/// `lambda` and `mu` must be nonzero since they divide the dual table.
pub fn family_3d(
    lambda: &Rational,
    mu: &Rational,
    tau_bar: &Rational,
    phi_bar: &Rational,
) -> Result<ProtoData> {
    use num::Zero;
    if lambda.is_zero() || mu.is_zero() {
        return Err(Error::InvalidDocument(
            "family parameters lambda and mu must be nonzero".into(),
        ));
    }
    let two_lambda = &int(2) * lambda;
    let t = phi_bar * tau_bar;

    let mut a = DullStructure::zero(3, 0);
    a.set_bracket(0, 1, 1, Poly::constant(0, two_lambda.clone()));
    a.set_bracket(0, 2, 2, Poly::constant(0, -&two_lambda));
    a.set_bracket(1, 2, 0, Poly::constant(0, mu.clone()));

    let mut star = DullStructure::zero(3, 0);
    star.set_bracket(1, 2, 0, Poly::constant(0, &t / mu));
    star.set_bracket(0, 1, 1, Poly::constant(0, &t / &two_lambda));
    star.set_bracket(0, 2, 2, Poly::constant(0, -&(&t / &two_lambda)));

    ProtoData::new(
        a,
        star,
        MultiVec::basis(3, 0, 0b111).scale_rat(tau_bar),
        Form::basis(3, 0, 0b111).scale_rat(phi_bar),
    )
}

/// Number of scalar slots a rank-3 point-base candidate exposes: nine
/// bracket constants per side plus the two top coefficients.
pub const SL2_SLOTS: usize = 20;

/// Returns the sl(2) example with a single structure constant shifted by
/// `delta`, along with a label describing the slot. Slots 0..9 are bracket
/// constants, 9..18 dual bracket constants, 18 and 19 the trivector and
/// three-form coefficients.
pub fn perturb_sl2_slot(slot: usize, delta: &Rational) -> (String, ProtoData) {
    assert!(slot < SL2_SLOTS, "slot out of range");
    let base = sl2_proto();
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let mut a = base.a().clone();
    let mut star = base.star().clone();
    let mut tau = base.tau().clone();
    let mut phi = base.phi().clone();
    let label;
    if slot < 9 {
        let (i, j) = pairs[slot / 3];
        let k = slot % 3;
        let c = a
            .bracket_coeff(i, j, k)
            .as_constant()
            .expect("constant table");
        a.set_bracket(i, j, k, Poly::constant(0, &c + delta));
        label = format!("bracket[{},{}]^{} += {}", i + 1, j + 1, k + 1, delta);
    } else if slot < 18 {
        let local = slot - 9;
        let (i, j) = pairs[local / 3];
        let k = local % 3;
        let c = star
            .bracket_coeff(i, j, k)
            .as_constant()
            .expect("constant table");
        star.set_bracket(i, j, k, Poly::constant(0, &c + delta));
        label = format!("dual[{},{}]^{} += {}", i + 1, j + 1, k + 1, delta);
    } else if slot == 18 {
        tau = tau.add(&MultiVec::basis(3, 0, 0b111).scale_rat(delta));
        label = format!("tau += {} e1^e2^e3", delta);
    } else {
        phi = phi.add(&Form::basis(3, 0, 0b111).scale_rat(delta));
        label = format!("phi += {} e^1^e^2^e^3", delta);
    }
    let data = ProtoData::new(a, star, tau, phi).expect("perturbed data stays well formed");
    (label, data)
}
