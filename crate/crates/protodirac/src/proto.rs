//! Proto-bialgebroid data and its verification: a pair of dull structures in
//! duality plus a trivector `tau` and a three-form `phi` that absorb the
//! Jacobi defects of the two brackets.
//!
//! The five compatibility axioms are checked literally on probe sections
//! with polynomial coefficients. Alongside the axioms, this module computes
//! the two modular sections (closed form and flow-of-volume definitions),
//! the third-order contraction operators built from `tau` and `phi`, and a
//! suite of operator identities that must hold with zero residual whenever
//! the axioms do.

use crate::duality::{bv_partial, bv_partial_star, laplacian, laplacian_star, v_sharp};
use crate::dull::DullStructure;
use crate::exterior::{all_masks, pairing, Exterior, Form, MultiVec, Side};
use crate::ring::{rat, Poly};
use crate::{Error, Result};

/// Structure data for a split proto-bialgebroid candidate: brackets and
/// anchors on both sides, a trivector and a three-form.
///
/// Nothing is assumed beyond skew symmetry; whether the data satisfies the
/// compatibility axioms is what [`check_axioms`] decides.
#[derive(Clone, Debug)]
pub struct ProtoData {
    a: DullStructure,
    star: DullStructure,
    tau: MultiVec,
    phi: Form,
}

impl ProtoData {
    pub fn new(a: DullStructure, star: DullStructure, tau: MultiVec, phi: Form) -> Result<Self> {
        if a.rank() != star.rank() || a.vars() != star.vars() {
            return Err(Error::DimensionMismatch(format!(
                "sides disagree: rank {}/{} coordinates {}/{}",
                a.rank(),
                star.rank(),
                a.vars(),
                star.vars()
            )));
        }
        if tau.rank() != a.rank() || tau.vars() != a.vars() {
            return Err(Error::DimensionMismatch(
                "trivector does not match the structure dimensions".into(),
            ));
        }
        if phi.rank() != a.rank() || phi.vars() != a.vars() {
            return Err(Error::DimensionMismatch(
                "three-form does not match the structure dimensions".into(),
            ));
        }
        if !tau.is_zero() && !tau.is_homogeneous(3) {
            return Err(Error::InvalidDocument("tau must be a trivector".into()));
        }
        if !phi.is_zero() && !phi.is_homogeneous(3) {
            return Err(Error::InvalidDocument("phi must be a three-form".into()));
        }
        Ok(ProtoData { a, star, tau, phi })
    }

    pub fn a(&self) -> &DullStructure {
        &self.a
    }

    pub fn star(&self) -> &DullStructure {
        &self.star
    }

    pub fn tau(&self) -> &MultiVec {
        &self.tau
    }

    pub fn phi(&self) -> &Form {
        &self.phi
    }

    pub fn rank(&self) -> usize {
        self.a.rank()
    }

    pub fn vars(&self) -> usize {
        self.a.vars()
    }

    /// Both modular sections from the structure tables: the trace of the
    /// dual bracket plus the divergence of the dual anchor, and mirrored.
    pub fn modular(&self) -> ModularData {
        let n = self.rank();
        let m = self.vars();
        let mut x0 = MultiVec::zero(n, m);
        let mut xi0 = Form::zero(n, m);
        for i in 0..n {
            let mut cx = Poly::zero(m);
            let mut cxi = Poly::zero(m);
            for j in 0..n {
                cx += self.star.bracket_coeff(i, j, j);
                cxi += self.a.bracket_coeff(i, j, j);
            }
            for alpha in 0..m {
                cx += &self.star.anchor_coeff(i, alpha).partial_diff(alpha);
                cxi += &self.a.anchor_coeff(i, alpha).partial_diff(alpha);
            }
            x0 = x0.add(&MultiVec::term(n, m, 1 << i, cx));
            xi0 = xi0.add(&Form::term(n, m, 1 << i, cxi));
        }
        ModularData { x0, xi0 }
    }

    /// Flow of the berezinian line along a degree-1 form: the coefficient of
    /// `L_xi (Omega (x) s)`, which must equal the pairing of `xi` with the
    /// vector modular section. Computed from the definition, independently
    /// of [`ProtoData::modular`].
    pub fn modular_flow_along_form(&self, xi: &Form) -> Poly {
        let n = self.rank();
        let m = self.vars();
        let top = Form::top(n, m);
        let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
        &self.star.schouten(xi, &top).component(full) + &self.star.lie_volume(xi)
    }

    /// Mirror flow along a degree-1 section, equal to the pairing of the
    /// form modular section with the argument.
    pub fn modular_flow_along_section(&self, x: &MultiVec) -> Poly {
        let n = self.rank();
        let m = self.vars();
        let top = MultiVec::top(n, m);
        let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
        &self.a.schouten(x, &top).component(full) + &self.a.lie_volume(x)
    }
}

/// The two modular sections of a candidate structure.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularData {
    pub x0: MultiVec,
    pub xi0: Form,
}

/// Outcome of a single named check: pass, or fail with a witness string
/// describing the first offending probe and its residual.
#[derive(Clone, Debug)]
pub struct NamedCheck {
    pub name: &'static str,
    pub holds: bool,
    pub witness: Option<String>,
}

impl NamedCheck {
    pub fn pass(name: &'static str) -> Self {
        NamedCheck {
            name,
            holds: true,
            witness: None,
        }
    }

    pub fn fail(name: &'static str, witness: String) -> Self {
        NamedCheck {
            name,
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Per-axiom verdicts from [`check_axioms`].
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub axioms: Vec<NamedCheck>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.axioms.iter().all(|c| c.holds)
    }

    pub fn failed_names(&self) -> Vec<&'static str> {
        self.axioms
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name)
            .collect()
    }
}

/// Labelled degree-1 probe sections: every frame section and every
/// coordinate multiple of one, enough to pin first-order identities.
pub fn section_probes<S: Side>(rank: usize, vars: usize) -> Vec<(String, Exterior<S>)> {
    let mut out = Vec::new();
    for i in 0..rank {
        out.push((format!("{}{}", S::GEN, i + 1), Exterior::gen(rank, vars, i)));
    }
    for alpha in 0..vars {
        for i in 0..rank {
            out.push((
                format!("q{}*{}{}", alpha + 1, S::GEN, i + 1),
                Exterior::term(rank, vars, 1 << i, Poly::var(vars, alpha)),
            ));
        }
    }
    out
}

/// Labelled probes of every exterior degree: all basis wedges with
/// coefficient one or a single coordinate.
pub fn element_probes<S: Side>(rank: usize, vars: usize) -> Vec<(String, Exterior<S>)> {
    let mut out = Vec::new();
    for mask in all_masks(rank) {
        let label = render_mask::<S>(mask);
        out.push((label.clone(), Exterior::basis(rank, vars, mask)));
        for alpha in 0..vars {
            out.push((
                format!("q{}*{}", alpha + 1, label),
                Exterior::term(rank, vars, mask, Poly::var(vars, alpha)),
            ));
        }
    }
    out
}

fn render_mask<S: Side>(mask: u32) -> String {
    if mask == 0 {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        parts.push(format!("{}{}", S::GEN, i + 1));
    }
    parts.join("^")
}

/// Checks the five compatibility axioms on probe sections.
///
/// 1. the Jacobi defect of the bracket on A is generated by `phi` through
///    the dual differential;
/// 2. mirror statement for the dual bracket and `tau`;
/// 3. the dual differential is a derivation of the bracket up to the mixed
///    `tau`/`phi` correction;
/// 4. `phi` is closed for the differential of A;
/// 5. `tau` is closed for the dual differential.
pub fn check_axioms(p: &ProtoData) -> AxiomReport {
    let n = p.rank();
    let m = p.vars();
    let vec_probes = section_probes::<crate::exterior::VecSide>(n, m);
    let form_probes = section_probes::<crate::exterior::FormSide>(n, m);
    let mut axioms = Vec::new();

    // 1: Jac_A(x,y,z) = d_star(phi(x,y,z)) + iota_phi d_star(x^y^z)
    let mut check1 = NamedCheck::pass("bracket-jacobi");
    'ax1: for (lx, x) in &vec_probes {
        for (ly, y) in &vec_probes {
            for (lz, z) in &vec_probes {
                let jac =
                    p.a.bracket_sections(&p.a.bracket_sections(x, y), z)
                        .add(&p.a.bracket_sections(&p.a.bracket_sections(y, z), x))
                        .add(&p.a.bracket_sections(&p.a.bracket_sections(z, x), y));
                let scalar = p
                    .phi
                    .contract_by(x)
                    .contract_by(y)
                    .contract_by(z)
                    .scalar_part();
                let rhs = p
                    .star
                    .differential_function::<crate::exterior::VecSide>(&scalar)
                    .add(
                        &p.star
                            .differential(&x.wedge(y).wedge(z))
                            .contract_by(&p.phi),
                    );
                let residual = jac.sub(&rhs);
                if !residual.is_zero() {
                    check1 = NamedCheck::fail(
                        "bracket-jacobi",
                        format!("x={lx}, y={ly}, z={lz}: residual {residual}"),
                    );
                    break 'ax1;
                }
            }
        }
    }
    axioms.push(check1);

    // 2: Jac_star(xi,eta,chi) = d_A(tau(xi,eta,chi)) + iota_tau d_A(xi^eta^chi)
    let mut check2 = NamedCheck::pass("dual-jacobi");
    'ax2: for (lx, xi) in &form_probes {
        for (ly, eta) in &form_probes {
            for (lz, chi) in &form_probes {
                let jac = p
                    .star
                    .bracket_sections(&p.star.bracket_sections(xi, eta), chi)
                    .add(
                        &p.star
                            .bracket_sections(&p.star.bracket_sections(eta, chi), xi),
                    )
                    .add(
                        &p.star
                            .bracket_sections(&p.star.bracket_sections(chi, xi), eta),
                    );
                let scalar = p
                    .tau
                    .contract_by(xi)
                    .contract_by(eta)
                    .contract_by(chi)
                    .scalar_part();
                let rhs =
                    p.a.differential_function::<crate::exterior::FormSide>(&scalar)
                        .add(
                            &p.a.differential(&xi.wedge(eta).wedge(chi))
                                .contract_by(&p.tau),
                        );
                let residual = jac.sub(&rhs);
                if !residual.is_zero() {
                    check2 = NamedCheck::fail(
                        "dual-jacobi",
                        format!("xi={lx}, eta={ly}, chi={lz}: residual {residual}"),
                    );
                    break 'ax2;
                }
            }
        }
    }
    axioms.push(check2);

    // 3: d_star[x,y] = [d_star x, y] + [x, d_star y] + iota_{phi(x,y,.)} tau
    let mut check3 = NamedCheck::pass("mixed-derivation");
    'ax3: for (lx, x) in &vec_probes {
        for (ly, y) in &vec_probes {
            let lhs = p.star.differential(&p.a.bracket_sections(x, y));
            let correction = p.tau.contract_by(&p.phi.contract_by(x).contract_by(y));
            let rhs =
                p.a.schouten(&p.star.differential(x), y)
                    .add(&p.a.schouten(x, &p.star.differential(y)))
                    .add(&correction);
            let residual = lhs.sub(&rhs);
            if !residual.is_zero() {
                check3 = NamedCheck::fail(
                    "mixed-derivation",
                    format!("x={lx}, y={ly}: residual {residual}"),
                );
                break 'ax3;
            }
        }
    }
    axioms.push(check3);

    // 4: d_A phi = 0
    let dphi = p.a.differential(&p.phi);
    axioms.push(if dphi.is_zero() {
        NamedCheck::pass("phi-closed")
    } else {
        NamedCheck::fail("phi-closed", format!("d phi = {dphi}"))
    });

    // 5: d_star tau = 0
    let dtau = p.star.differential(&p.tau);
    axioms.push(if dtau.is_zero() {
        NamedCheck::pass("tau-closed")
    } else {
        NamedCheck::fail("tau-closed", format!("d_star tau = {dtau}"))
    });

    AxiomReport { axioms }
}

// ===== third-order contraction operators =====

/// Iterates the expansion of a degree-3 element over ordered basis triples
/// `(i < j < k)` with their polynomial weights.
fn triples<S: Side>(t: &Exterior<S>) -> Vec<(usize, usize, usize, Poly)> {
    let mut out = Vec::new();
    for (mask, c) in t.terms() {
        assert_eq!(mask.count_ones(), 3, "expected a degree-3 element");
        let i = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let j = rest.trailing_zeros() as usize;
        let k = (rest & (rest - 1)).trailing_zeros() as usize;
        out.push((i, j, k, c.clone()));
    }
    out
}

/// First contraction operator: one slot of the argument is contracted, two
/// slots of the partner element.
fn q_single<S: Side>(
    weights: &Exterior<S::Other>,
    partner: &Exterior<S>,
    v: &Exterior<S>,
) -> Exterior<S> {
    let mut out = Exterior::zero(v.rank(), v.vars());
    for (i, j, k, c) in triples(weights) {
        let t = partner
            .contract_gen(j)
            .contract_gen(k)
            .wedge(&v.contract_gen(i))
            .sub(
                &partner
                    .contract_gen(i)
                    .contract_gen(k)
                    .wedge(&v.contract_gen(j)),
            )
            .add(
                &partner
                    .contract_gen(i)
                    .contract_gen(j)
                    .wedge(&v.contract_gen(k)),
            );
        out = out.add(&t.scale(&c));
    }
    out
}

/// Second contraction operator: two slots of the argument are contracted,
/// one slot of the partner element.
fn q_double<S: Side>(
    weights: &Exterior<S::Other>,
    partner: &Exterior<S>,
    v: &Exterior<S>,
) -> Exterior<S> {
    let mut out = Exterior::zero(v.rank(), v.vars());
    for (i, j, k, c) in triples(weights) {
        let t = partner
            .contract_gen(k)
            .wedge(&v.contract_gen(i).contract_gen(j))
            .neg()
            .add(
                &partner
                    .contract_gen(j)
                    .wedge(&v.contract_gen(i).contract_gen(k)),
            )
            .sub(
                &partner
                    .contract_gen(i)
                    .wedge(&v.contract_gen(j).contract_gen(k)),
            );
        out = out.add(&t.scale(&c));
    }
    out
}

/// `Q1`: expands `phi` over basis triples, contracts `tau` twice and the
/// multivector argument once.
pub fn q1(p: &ProtoData, v: &MultiVec) -> MultiVec {
    q_single(&p.phi, &p.tau, v)
}

/// `Q2`: expands `phi` over basis triples, contracts `tau` once and the
/// multivector argument twice.
pub fn q2(p: &ProtoData, v: &MultiVec) -> MultiVec {
    q_double(&p.phi, &p.tau, v)
}

/// `Q3`: mirror of [`q1`] with the roles of `tau` and `phi` swapped.
pub fn q3(p: &ProtoData, w: &Form) -> Form {
    q_single(&p.tau, &p.phi, w)
}

/// `Q4`: mirror of [`q2`].
pub fn q4(p: &ProtoData, w: &Form) -> Form {
    q_double(&p.tau, &p.phi, w)
}

// ===== curvature-type endomorphisms =====

/// `K(x,y)(z) = iota_phi(d_star(x)^y^z) - iota_phi(x^d_star(y)^z)`.
pub fn k_endo(p: &ProtoData, x: &MultiVec, y: &MultiVec, z: &MultiVec) -> MultiVec {
    let dx = p.star.differential(x);
    let dy = p.star.differential(y);
    dx.wedge(y)
        .wedge(z)
        .contract_by(&p.phi)
        .sub(&x.wedge(&dy).wedge(z).contract_by(&p.phi))
}

/// Frame trace of `K(x,y)`.
pub fn k_trace(p: &ProtoData, x: &MultiVec, y: &MultiVec) -> Poly {
    let n = p.rank();
    let m = p.vars();
    let mut t = Poly::zero(m);
    for i in 0..n {
        t += &pairing(
            &Form::gen(n, m, i),
            &k_endo(p, x, y, &MultiVec::gen(n, m, i)),
        );
    }
    t
}

/// `L(xi,eta)(chi) = iota_{tau(eta,chi)} d_A(xi) + iota_{tau(chi,xi)} d_A(eta)`.
pub fn l_endo(p: &ProtoData, xi: &Form, eta: &Form, chi: &Form) -> Form {
    let dxi = p.a.differential(xi);
    let deta = p.a.differential(eta);
    let t_eta_chi = p.tau.contract_by(eta).contract_by(chi);
    let t_chi_xi = p.tau.contract_by(chi).contract_by(xi);
    dxi.contract_by(&t_eta_chi)
        .add(&deta.contract_by(&t_chi_xi))
}

/// Frame trace of `L(xi,eta)`.
pub fn l_trace(p: &ProtoData, xi: &Form, eta: &Form) -> Poly {
    let n = p.rank();
    let m = p.vars();
    let mut t = Poly::zero(m);
    for i in 0..n {
        t += &pairing(
            &l_endo(p, xi, eta, &Form::gen(n, m, i)),
            &MultiVec::gen(n, m, i),
        );
    }
    t
}

// ===== identity suite =====

/// Runs the operator identities that characterize the axioms through the
/// generating machinery. Every residual must vanish when [`check_axioms`]
/// passes; several of the items hold for arbitrary structure data and pin
/// sign conventions instead.
pub fn identity_suite(p: &ProtoData) -> Vec<NamedCheck> {
    let n = p.rank();
    let m = p.vars();
    let ModularData { x0, xi0 } = p.modular();
    let half = rat(1, 2);
    let a = &p.a;
    let star = &p.star;
    let vec_probes = section_probes::<crate::exterior::VecSide>(n, m);
    let form_probes = section_probes::<crate::exterior::FormSide>(n, m);
    let elem_vec = element_probes::<crate::exterior::VecSide>(n, m);
    let elem_form = element_probes::<crate::exterior::FormSide>(n, m);
    let mut out = Vec::new();

    // bv(tau) = 1/2 iota_xi0 tau + 1/2 d_star X0
    {
        let lhs = bv_partial(a, &p.tau);
        let rhs = p
            .tau
            .contract_by(&xi0)
            .scale_rat(&half)
            .add(&star.differential(&x0).scale_rat(&half));
        let r = lhs.sub(&rhs);
        out.push(if r.is_zero() {
            NamedCheck::pass("tau-divergence")
        } else {
            NamedCheck::fail("tau-divergence", format!("residual {r}"))
        });
    }

    // bv_star(phi) = 1/2 iota_X0 phi + 1/2 d_A xi0
    {
        let lhs = bv_partial_star(star, &p.phi);
        let rhs = p
            .phi
            .contract_by(&x0)
            .scale_rat(&half)
            .add(&a.differential(&xi0).scale_rat(&half));
        let r = lhs.sub(&rhs);
        out.push(if r.is_zero() {
            NamedCheck::pass("phi-divergence")
        } else {
            NamedCheck::fail("phi-divergence", format!("residual {r}"))
        });
    }

    // bv^2 = d_star iota_phi + iota_phi d_star + 1/2 iota_{iota_X0 phi} + 1/2 iota_{d_A xi0}
    {
        let phi_x0 = p.phi.contract_by(&x0);
        let dxi0 = a.differential(&xi0);
        let mut check = NamedCheck::pass("generator-square");
        for (label, v) in &elem_vec {
            let lhs = bv_partial(a, &bv_partial(a, v));
            let rhs = star
                .differential(&v.contract_by(&p.phi))
                .add(&star.differential(v).contract_by(&p.phi))
                .add(&v.contract_by(&phi_x0).scale_rat(&half))
                .add(&v.contract_by(&dxi0).scale_rat(&half));
            let r = lhs.sub(&rhs);
            if !r.is_zero() {
                check = NamedCheck::fail("generator-square", format!("v={label}: residual {r}"));
                break;
            }
        }
        out.push(check);
    }

    // pairing rules for the two Laplacians
    {
        let mut check_star = NamedCheck::pass("dual-laplacian-pairing");
        let mut check_vec = NamedCheck::pass("laplacian-pairing");
        'pairing: for (lx, xi) in &form_probes {
            for (ly, x) in &vec_probes {
                let cross = &pairing(xi, &laplacian(a, star, x))
                    + &pairing(&laplacian_star(a, star, xi), x);
                let defect =
                    pairing(&p.phi.contract_by(x), &p.tau.contract_by(xi)).scale(&rat(2, 1));
                let expected = &cross - &defect;
                let f = pairing(xi, x);
                let lhs_star =
                    laplacian_star(a, star, &Form::scalar(n, m, f.clone())).scalar_part();
                if &lhs_star - &expected != Poly::zero(m) {
                    check_star = NamedCheck::fail(
                        "dual-laplacian-pairing",
                        format!("xi={lx}, x={ly}: residual {}", &lhs_star - &expected),
                    );
                    break 'pairing;
                }
                let lhs_vec = laplacian(a, star, &MultiVec::scalar(n, m, f)).scalar_part();
                if &lhs_vec - &expected != Poly::zero(m) {
                    check_vec = NamedCheck::fail(
                        "laplacian-pairing",
                        format!("xi={lx}, x={ly}: residual {}", &lhs_vec - &expected),
                    );
                    break 'pairing;
                }
            }
        }
        out.push(check_star);
        out.push(check_vec);
    }

    // trace of the mixed commutator defect, taken over its action on forms
    {
        let mut check = NamedCheck::pass("commutator-trace");
        'trace: for (lx, x) in &vec_probes {
            for (ly, xi) in &form_probes {
                let op = mixed_defect_on_sections(p, x, xi);
                // C-infinity linearity of the defect operator
                for alpha in 0..m {
                    for i in 0..n {
                        let f = Poly::var(m, alpha);
                        let scaled = op(&MultiVec::term(n, m, 1 << i, f.clone()));
                        let linear = op(&MultiVec::gen(n, m, i)).scale(&f);
                        let r = scaled.sub(&linear);
                        if !r.is_zero() {
                            check = NamedCheck::fail(
                                "commutator-trace",
                                format!("x={lx}, xi={ly}: not linear over q{}: {r}", alpha + 1),
                            );
                            break 'trace;
                        }
                    }
                }
                let mut tr = Poly::zero(m);
                for i in 0..n {
                    tr += &pairing(
                        &mixed_defect_on_forms(p, x, xi, &Form::gen(n, m, i)),
                        &MultiVec::gen(n, m, i),
                    );
                }
                let expected = &pairing(&a.differential(xi), &star.differential(x))
                    .scale(&rat(2, 1))
                    - &pairing(&p.phi.contract_by(x), &p.tau.contract_by(xi)).scale(&rat(2, 1));
                let r = &tr - &expected;
                if !r.is_zero() {
                    check = NamedCheck::fail(
                        "commutator-trace",
                        format!("x={lx}, xi={ly}: residual {r}"),
                    );
                    break 'trace;
                }
            }
        }
        out.push(check);
    }

    // Laplacians against modular flows and contraction operators
    {
        let mut check = NamedCheck::pass("laplacian-on-functions");
        for alpha in 0..m {
            let f = Poly::var(m, alpha);
            let lhs_a = laplacian(a, star, &MultiVec::scalar(n, m, f.clone())).scalar_part();
            let lhs_star = laplacian_star(a, star, &Form::scalar(n, m, f.clone())).scalar_part();
            let flow = (&a.anchor_apply_section(&x0, &f) + &star.anchor_apply_section(&xi0, &f))
                .scale(&half);
            if &lhs_a - &flow != Poly::zero(m) || &lhs_star - &flow != Poly::zero(m) {
                check = NamedCheck::fail(
                    "laplacian-on-functions",
                    format!("f=q{}: {} vs {} vs {}", alpha + 1, lhs_a, lhs_star, flow),
                );
                break;
            }
        }
        out.push(check);
    }

    // full degree-by-degree decomposition of both Laplacians
    {
        let mut check = NamedCheck::pass("laplacian-decomposition");
        for (label, v) in &elem_vec {
            let lhs = laplacian(a, star, v);
            let rhs = a
                .schouten(&x0, v)
                .add(&star.lie_cartan(&xi0, v))
                .scale_rat(&half)
                .add(&q1(p, v))
                .add(&q2(p, v));
            let r = lhs.sub(&rhs);
            if !r.is_zero() {
                check = NamedCheck::fail(
                    "laplacian-decomposition",
                    format!("v={label}: residual {r}"),
                );
                break;
            }
        }
        out.push(check);

        let mut check_star = NamedCheck::pass("dual-laplacian-decomposition");
        for (label, w) in &elem_form {
            let lhs = laplacian_star(a, star, w);
            let rhs = star
                .schouten(&xi0, w)
                .add(&a.lie_cartan(&x0, w))
                .scale_rat(&half)
                .add(&q3(p, w))
                .add(&q4(p, w));
            let r = lhs.sub(&rhs);
            if !r.is_zero() {
                check_star = NamedCheck::fail(
                    "dual-laplacian-decomposition",
                    format!("w={label}: residual {r}"),
                );
                break;
            }
        }
        out.push(check_star);
    }

    // refined pairing flow of the mixed defect on forms
    {
        let mut check = NamedCheck::pass("pairing-flow");
        'flow: for (lx, x) in &vec_probes {
            for (lxi, xi) in &form_probes {
                for (leta, eta) in &form_probes {
                    let defect = mixed_defect_on_forms(p, x, xi, eta);
                    let t_xi_eta = p.tau.contract_by(xi).contract_by(eta);
                    for (ly, y) in &vec_probes {
                        let lhs = pairing(&defect, y);
                        let rhs = &pairing(
                            &a.differential(xi).contract_by(y),
                            &star.differential(x).contract_by(eta),
                        ) + &p
                            .phi
                            .contract_by(x)
                            .contract_by(&t_xi_eta)
                            .contract_by(y)
                            .scalar_part();
                        let r = &lhs - &rhs;
                        if !r.is_zero() {
                            check = NamedCheck::fail(
                                "pairing-flow",
                                format!("x={lx}, xi={lxi}, eta={leta}, y={ly}: residual {r}"),
                            );
                            break 'flow;
                        }
                    }
                }
            }
        }
        out.push(check);
    }

    // conjugating the generator square through the top duality
    {
        let phi_x0 = p.phi.contract_by(&x0);
        let dxi0 = a.differential(&xi0);
        let phi_div = bv_partial_star(star, &p.phi)
            .neg()
            .add(&phi_x0.scale_rat(&half))
            .add(&dxi0.scale_rat(&half));
        let mut check = NamedCheck::pass("conjugated-generator-square");
        for (label, w) in &elem_form {
            let v = v_sharp(w);
            let lhs = bv_partial(a, &bv_partial(a, &v))
                .sub(&star.differential(&v.contract_by(&p.phi)))
                .sub(&star.differential(&v).contract_by(&p.phi))
                .sub(&v.contract_by(&phi_x0).scale_rat(&half))
                .sub(&v.contract_by(&dxi0).scale_rat(&half));
            let rhs = v_sharp(
                &a.differential(&a.differential(w))
                    .add(&star.schouten(&p.phi, w))
                    .add(&phi_div.wedge(w)),
            )
            .neg();
            let r = lhs.sub(&rhs);
            if !r.is_zero() {
                check = NamedCheck::fail(
                    "conjugated-generator-square",
                    format!("w={label}: residual {r}"),
                );
                break;
            }
        }
        out.push(check);
    }

    out
}

/// `L_{x o xi} - [L_x, L_xi]` acting on sections of A, where
/// `x o xi = -iota_xi d_star(x) + L_x xi` is the mixed half of the Dorfman
/// product of `x` and `xi`.
fn mixed_defect_on_sections<'p>(
    p: &'p ProtoData,
    x: &MultiVec,
    xi: &Form,
) -> impl Fn(&MultiVec) -> MultiVec + 'p {
    let a = &p.a;
    let star = &p.star;
    let v = star.differential(x).contract_by(xi).neg();
    let w = a.lie_cartan(x, xi);
    let x = x.clone();
    let xi = xi.clone();
    move |y: &MultiVec| {
        let combined = a.schouten(&v, y).add(&star.lie_cartan(&w, y));
        let commutator = a
            .schouten(&x, &star.lie_cartan(&xi, y))
            .sub(&star.lie_cartan(&xi, &a.schouten(&x, y)));
        combined.sub(&commutator)
    }
}

/// The same defect operator acting on a degree-1 form argument.
fn mixed_defect_on_forms(p: &ProtoData, x: &MultiVec, xi: &Form, eta: &Form) -> Form {
    let a = &p.a;
    let star = &p.star;
    let v = star.differential(x).contract_by(xi).neg();
    let w = a.lie_cartan(x, xi);
    let combined = a.lie_cartan(&v, eta).add(&star.schouten(&w, eta));
    let commutator = a
        .lie_cartan(x, &star.schouten(xi, eta))
        .sub(&star.schouten(xi, &a.lie_cartan(x, eta)));
    combined.sub(&commutator)
}
