//! The split Courant algebroid candidate attached to proto data: sections
//! of `A + A*`, the canonical pairing, the Dorfman-type product twisted by
//! `tau` and `phi`, and the axioms the product has to satisfy.
//!
//! The product is checked literally: probe sections run over every frame
//! section of both sides and their coordinate multiples, because the axioms
//! mix derivative terms across slots.

use crate::dirac::{clifford_matrix, DiracOperator};
use crate::exterior::{pairing, Form, MultiVec};
use crate::proto::{NamedCheck, ProtoData};
use crate::ring::{rat, Poly};
use crate::Result;
use std::fmt;

/// A section of the split bundle: a degree-1 multivector part plus a
/// degree-1 form part, either of which may vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSection {
    vec: MultiVec,
    form: Form,
}

impl SplitSection {
    pub fn new(vec: MultiVec, form: Form) -> Self {
        assert!(
            vec.is_homogeneous(1) && form.is_homogeneous(1),
            "split sections have degree-1 parts"
        );
        assert_eq!(vec.rank(), form.rank(), "parts must share the frame");
        assert_eq!(vec.vars(), form.vars(), "parts must share the base");
        SplitSection { vec, form }
    }

    pub fn zero(rank: usize, vars: usize) -> Self {
        SplitSection::new(MultiVec::zero(rank, vars), Form::zero(rank, vars))
    }

    pub fn from_vec(vec: MultiVec) -> Self {
        let (rank, vars) = (vec.rank(), vec.vars());
        SplitSection::new(vec, Form::zero(rank, vars))
    }

    pub fn from_form(form: Form) -> Self {
        let (rank, vars) = (form.rank(), form.vars());
        SplitSection::new(MultiVec::zero(rank, vars), form)
    }

    pub fn vec_part(&self) -> &MultiVec {
        &self.vec
    }

    pub fn form_part(&self) -> &Form {
        &self.form
    }

    pub fn rank(&self) -> usize {
        self.vec.rank()
    }

    pub fn vars(&self) -> usize {
        self.vec.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero() && self.form.is_zero()
    }

    pub fn add(&self, other: &SplitSection) -> SplitSection {
        SplitSection::new(self.vec.add(&other.vec), self.form.add(&other.form))
    }

    pub fn sub(&self, other: &SplitSection) -> SplitSection {
        SplitSection::new(self.vec.sub(&other.vec), self.form.sub(&other.form))
    }

    pub fn scale(&self, f: &Poly) -> SplitSection {
        SplitSection::new(self.vec.scale(f), self.form.scale(f))
    }
}

impl fmt::Display for SplitSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.vec.is_zero(), self.form.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.vec),
            (true, false) => write!(f, "{}", self.form),
            (false, false) => {
                let form = self.form.to_string();
                match form.strip_prefix('-') {
                    Some(rest) => write!(f, "{} - {rest}", self.vec),
                    None => write!(f, "{} + {form}", self.vec),
                }
            }
        }
    }
}

/// The canonical symmetric pairing: `<x + xi, y + eta> = (xi(y) + eta(x))/2`.
pub fn metric(e1: &SplitSection, e2: &SplitSection) -> Poly {
    (&pairing(&e1.form, &e2.vec) + &pairing(&e2.form, &e1.vec)).scale(&rat(1, 2))
}

/// The combined anchor applied to a function.
pub fn anchor_rho(p: &ProtoData, e: &SplitSection, f: &Poly) -> Poly {
    &p.a().anchor_apply_section(&e.vec, f) + &p.star().anchor_apply_section(&e.form, f)
}

/// `D f`: both differentials of a function, bundled as a section. Pairs
/// with any section to half the anchor derivative of `f`.
pub fn dmap(p: &ProtoData, f: &Poly) -> SplitSection {
    SplitSection::new(
        p.star().differential_function(f),
        p.a().differential_function(f),
    )
}

/// The Dorfman-type product on split sections.
///
/// Vector part: `[x,y] + L_xi y - iota_eta d_star(x) - iota_eta iota_xi tau`.
/// Form part: `[xi,eta] + L_x eta - iota_y d(xi) - iota_y iota_x phi`.
pub fn dorfman(p: &ProtoData, e1: &SplitSection, e2: &SplitSection) -> SplitSection {
    let a = p.a();
    let star = p.star();
    let (x, xi) = (&e1.vec, &e1.form);
    let (y, eta) = (&e2.vec, &e2.form);
    let vec = a
        .bracket_sections(x, y)
        .add(&star.lie_cartan(xi, y))
        .sub(&star.differential(x).contract_by(eta))
        .sub(&p.tau().contract_by(xi).contract_by(eta));
    let form = star
        .bracket_sections(xi, eta)
        .add(&a.lie_cartan(x, eta))
        .sub(&a.differential(xi).contract_by(y))
        .sub(&p.phi().contract_by(x).contract_by(y));
    SplitSection::new(vec, form)
}

/// Labelled probe sections: both frames and their coordinate multiples.
pub fn split_probes(p: &ProtoData) -> Vec<(String, SplitSection)> {
    let n = p.rank();
    let m = p.vars();
    let mut out = Vec::new();
    for i in 0..n {
        out.push((
            format!("e{}", i + 1),
            SplitSection::from_vec(MultiVec::gen(n, m, i)),
        ));
        out.push((
            format!("e^{}", i + 1),
            SplitSection::from_form(Form::gen(n, m, i)),
        ));
    }
    for alpha in 0..m {
        for i in 0..n {
            out.push((
                format!("q{}*e{}", alpha + 1, i + 1),
                SplitSection::from_vec(MultiVec::term(n, m, 1 << i, Poly::var(m, alpha))),
            ));
            out.push((
                format!("q{}*e^{}", alpha + 1, i + 1),
                SplitSection::from_form(Form::term(n, m, 1 << i, Poly::var(m, alpha))),
            ));
        }
    }
    out
}

/// Checks the Courant algebroid axioms for the Dorfman-type product on
/// probe sections:
///
/// 1. the product acts as a derivation of itself (Leibniz form of Jacobi);
/// 2. the anchor sends products to commutators of vector fields;
/// 3. Leibniz rule for scaling the right slot;
/// 4. the symmetrized product is the differential of the pairing;
/// 5. the anchor flow of the pairing splits over the product.
pub fn check_courant(p: &ProtoData) -> Vec<NamedCheck> {
    let m = p.vars();
    let probes = split_probes(p);
    let mut out = Vec::new();

    let mut jacobi = NamedCheck::pass("leibniz-jacobi");
    'jac: for (l1, e1) in &probes {
        for (l2, e2) in &probes {
            let e12 = dorfman(p, e1, e2);
            for (l3, e3) in &probes {
                let lhs = dorfman(p, e1, &dorfman(p, e2, e3));
                let rhs = dorfman(p, &e12, e3).add(&dorfman(p, e2, &dorfman(p, e1, e3)));
                let r = lhs.sub(&rhs);
                if !r.is_zero() {
                    jacobi = NamedCheck::fail(
                        "leibniz-jacobi",
                        format!("e1={l1}, e2={l2}, e3={l3}: residual {r}"),
                    );
                    break 'jac;
                }
            }
        }
    }
    out.push(jacobi);

    let mut anchor = NamedCheck::pass("anchor-morphism");
    'anchor: for (l1, e1) in &probes {
        for (l2, e2) in &probes {
            let e12 = dorfman(p, e1, e2);
            for alpha in 0..m {
                let f = Poly::var(m, alpha);
                let lhs = anchor_rho(p, &e12, &f);
                let rhs = &anchor_rho(p, e1, &anchor_rho(p, e2, &f))
                    - &anchor_rho(p, e2, &anchor_rho(p, e1, &f));
                if &lhs - &rhs != Poly::zero(m) {
                    anchor = NamedCheck::fail(
                        "anchor-morphism",
                        format!("e1={l1}, e2={l2}, f=q{}: {} vs {}", alpha + 1, lhs, rhs),
                    );
                    break 'anchor;
                }
            }
        }
    }
    out.push(anchor);

    let mut scaling = NamedCheck::pass("leibniz-scaling");
    let mut scale_fns = vec![];
    for alpha in 0..m {
        scale_fns.push(Poly::var(m, alpha));
        for beta in alpha..m {
            scale_fns.push(&Poly::var(m, alpha) * &Poly::var(m, beta));
        }
    }
    'scaling: for (l1, e1) in &probes {
        for (l2, e2) in &probes {
            let e12 = dorfman(p, e1, e2);
            for f in &scale_fns {
                let lhs = dorfman(p, e1, &e2.scale(f));
                let rhs = e12.scale(f).add(&e2.scale(&anchor_rho(p, e1, f)));
                let r = lhs.sub(&rhs);
                if !r.is_zero() {
                    scaling = NamedCheck::fail(
                        "leibniz-scaling",
                        format!("e1={l1}, e2={l2}, f={f}: residual {r}"),
                    );
                    break 'scaling;
                }
            }
        }
    }
    out.push(scaling);

    let mut symmetric = NamedCheck::pass("symmetric-part");
    'symm: for (l1, e1) in &probes {
        for (l2, e2) in &probes {
            let lhs = dorfman(p, e1, e2).add(&dorfman(p, e2, e1));
            let rhs = dmap(p, &metric(e1, e2)).scale(&Poly::constant(m, rat(2, 1)));
            let r = lhs.sub(&rhs);
            if !r.is_zero() {
                symmetric =
                    NamedCheck::fail("symmetric-part", format!("e1={l1}, e2={l2}: residual {r}"));
                break 'symm;
            }
        }
    }
    out.push(symmetric);

    let mut invariance = NamedCheck::pass("metric-invariance");
    'inv: for (l1, e) in &probes {
        for (l2, h1) in &probes {
            let eh1 = dorfman(p, e, h1);
            for (l3, h2) in &probes {
                let lhs = anchor_rho(p, e, &metric(h1, h2));
                let rhs = &metric(&eh1, h2) + &metric(h1, &dorfman(p, e, h2));
                if &lhs - &rhs != Poly::zero(m) {
                    invariance = NamedCheck::fail(
                        "metric-invariance",
                        format!("e={l1}, h1={l2}, h2={l3}: {} vs {}", lhs, rhs),
                    );
                    break 'inv;
                }
            }
        }
    }
    out.push(invariance);

    out
}

/// Compares, entry by entry over the whole spinor space, the iterated
/// graded commutator of the Dirac operator with two Clifford actions
/// against the Clifford action of the Dorfman product. Point base only.
pub fn derived_bracket_check(p: &ProtoData) -> Result<NamedCheck> {
    let op = DiracOperator::new(p);
    let d = op.matrix()?;
    let probes = split_probes(p);
    for (l1, e1) in &probes {
        let c1 = clifford_matrix(e1)?;
        // odd times odd: the graded bracket is the anticommutator
        let step = d.mul(&c1).add(&c1.mul(&d));
        for (l2, e2) in &probes {
            let c2 = clifford_matrix(e2)?;
            let lhs = step.mul(&c2).sub(&c2.mul(&step));
            let rhs = clifford_matrix(&dorfman(p, e1, e2))?;
            if lhs != rhs {
                return Ok(NamedCheck::fail(
                    "derived-bracket",
                    format!("e1={l1}, e2={l2}: matrices differ"),
                ));
            }
        }
    }
    Ok(NamedCheck::pass("derived-bracket"))
}

/// The commutator of the Dirac operator with multiplication by `f` must be
/// the Clifford action of `dmap(f)`. Point bases have no coordinates, so
/// the check is vacuous there; with coordinates it is matrix-free.
pub fn function_bracket_check(p: &ProtoData) -> NamedCheck {
    let n = p.rank();
    let m = p.vars();
    let op = DiracOperator::new(p);
    for alpha in 0..m {
        let f = Poly::var(m, alpha);
        let df = dmap(p, &f);
        for (label, v) in crate::proto::element_probes::<crate::exterior::VecSide>(n, m) {
            let lhs = op.apply(&v.scale(&f)).sub(&op.apply(&v).scale(&f));
            let rhs = df.vec_part().wedge(&v).add(&v.contract_by(df.form_part()));
            let r = lhs.sub(&rhs);
            if !r.is_zero() {
                return NamedCheck::fail(
                    "function-bracket",
                    format!("f=q{}, v={label}: residual {r}", alpha + 1),
                );
            }
        }
    }
    NamedCheck::pass("function-bracket")
}
