//! Anchored skew-symmetric brackets from structure constants, with no Jacobi
//! assumption, together with the operators they induce on the exterior
//! algebras: Schouten-type bracket extension, de Rham-type differential, Lie
//! derivatives and the volume flow on the base.
//!
//! A structure is side neutral: the same code serves the bracket on A (acting
//! on multivectors, differential on forms) and the bracket on A* (acting on
//! forms, differential on multivectors). The caller supplies the element
//! types; `proto` and up keep the sides straight.
//!
//! Local model on sections `s_1..s_n` over coordinates `q1..qm`:
//! `[s_i, s_j] = sum_k c_ij^k s_k` with `c_ij^k = -c_ji^k`, and anchor
//! `a(s_i) = sum_alpha a_i^alpha d/dq^alpha`, all coefficients polynomial.

use crate::exterior::{Exterior, Side};
use crate::ring::Poly;

/// A dull algebroid structure in a fixed frame: bracket table plus anchor.
#[derive(Clone, Debug, PartialEq)]
pub struct DullStructure {
    rank: usize,
    vars: usize,
    // bracket[i][j][k] = coefficient of s_k in [s_i, s_j]
    bracket: Vec<Vec<Vec<Poly>>>,
    // anchor[i][alpha] = coefficient of d/dq^alpha in a(s_i)
    anchor: Vec<Vec<Poly>>,
}

impl DullStructure {
    /// The zero structure (abelian bracket, zero anchor).
    pub fn zero(rank: usize, vars: usize) -> Self {
        DullStructure {
            rank,
            vars,
            bracket: vec![vec![vec![Poly::zero(vars); rank]; rank]; rank],
            anchor: vec![vec![Poly::zero(vars); vars]; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Sets `[s_i, s_j] = sum_k coeffs_k s_k` and the skew partner entry.
    ///
    /// Panics if `i == j` or an index is out of range.
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, c: Poly) {
        assert!(
            i < self.rank && j < self.rank && k < self.rank,
            "bracket index out of range"
        );
        assert!(
            i != j,
            "bracket of a section with itself is zero by skew symmetry"
        );
        assert_eq!(c.vars(), self.vars, "coefficient coordinate count mismatch");
        self.bracket[j][i][k] = -&c;
        self.bracket[i][j][k] = c;
    }

    /// Sets the `d/dq^alpha` component of the anchor of `s_i`.
    pub fn set_anchor(&mut self, i: usize, alpha: usize, c: Poly) {
        assert!(i < self.rank, "section index out of range");
        assert!(alpha < self.vars, "coordinate index out of range");
        assert_eq!(c.vars(), self.vars, "coefficient coordinate count mismatch");
        self.anchor[i][alpha] = c;
    }

    pub fn bracket_coeff(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.bracket[i][j][k]
    }

    pub fn anchor_coeff(&self, i: usize, alpha: usize) -> &Poly {
        &self.anchor[i][alpha]
    }

    /// Applies the anchor vector field of basis section `s_i` to a function.
    pub fn anchor_apply(&self, i: usize, f: &Poly) -> Poly {
        let mut out = Poly::zero(self.vars);
        for alpha in 0..self.vars {
            if self.anchor[i][alpha].is_zero() {
                continue;
            }
            out += &(&self.anchor[i][alpha] * &f.partial_diff(alpha));
        }
        out
    }

    /// Applies the anchor of a degree-1 section `x = sum_i g^i s_i` to `f`.
    pub fn anchor_apply_section<S: Side>(&self, x: &Exterior<S>, f: &Poly) -> Poly {
        assert!(
            x.is_homogeneous(1),
            "anchor application needs a degree-1 section"
        );
        let mut out = Poly::zero(self.vars);
        for (mask, g) in x.terms() {
            let i = mask.trailing_zeros() as usize;
            out += &(g * &self.anchor_apply(i, f));
        }
        out
    }

    /// The element `[s_i, s_j]` of the structure's own side.
    pub fn bracket_elem<S: Side>(&self, i: usize, j: usize) -> Exterior<S> {
        let mut out = Exterior::zero(self.rank, self.vars);
        for k in 0..self.rank {
            let c = &self.bracket[i][j][k];
            if !c.is_zero() {
                out = out.add(&Exterior::term(self.rank, self.vars, 1 << k, c.clone()));
            }
        }
        out
    }

    /// Bracket of two degree-1 sections with the Leibniz rule in both slots:
    /// `[g s_i, h s_j] = g h [s_i,s_j] + g a(s_i)(h) s_j - h a(s_j)(g) s_i`.
    pub fn bracket_sections<S: Side>(&self, x: &Exterior<S>, y: &Exterior<S>) -> Exterior<S> {
        assert!(
            x.is_homogeneous(1) && y.is_homogeneous(1),
            "bracket needs degree-1 sections"
        );
        let mut out = Exterior::zero(self.rank, self.vars);
        for (mx, g) in x.terms() {
            let i = mx.trailing_zeros() as usize;
            for (my, h) in y.terms() {
                let j = my.trailing_zeros() as usize;
                out = out.add(&self.bracket_elem::<S>(i, j).scale(&(g * h)));
                out = out.add(&Exterior::term(
                    self.rank,
                    self.vars,
                    my,
                    g * &self.anchor_apply(i, h),
                ));
                out = out.sub(&Exterior::term(
                    self.rank,
                    self.vars,
                    mx,
                    h * &self.anchor_apply(j, g),
                ));
            }
        }
        out
    }

    /// Schouten-type bracket on whole exterior algebras: the biderivation
    /// extension of the section bracket and the anchor action, graded
    /// symmetric after the degree shift by one.
    pub fn schouten<S: Side>(&self, a: &Exterior<S>, b: &Exterior<S>) -> Exterior<S> {
        assert_eq!(a.rank(), self.rank, "exterior rank mismatch");
        assert_eq!(b.rank(), self.rank, "exterior rank mismatch");
        let mut out = Exterior::zero(self.rank, self.vars);
        for (ma, pa) in a.terms() {
            for (mb, pb) in b.terms() {
                out = out.add(&self.schouten_terms(ma, pa, mb, pb));
            }
        }
        out
    }

    /// `[pa e_A, pb e_B]` via the two-sided Leibniz expansion.
    fn schouten_terms<S: Side>(&self, ma: u32, pa: &Poly, mb: u32, pb: &Poly) -> Exterior<S> {
        let ka = ma.count_ones() as usize;
        let kb = mb.count_ones() as usize;
        // pa pb [e_A, e_B]
        let mut out = self.bracket_wedges::<S>(ma, mb).scale(&(pa * pb));
        // pa ([e_A, pb] ^ e_B)
        out = out.add(
            &self
                .anchor_derivative::<S>(ma, pb)
                .wedge(&Exterior::basis(self.rank, self.vars, mb))
                .scale(pa),
        );
        // (-1)^(|A|(|B|-1)+|B|) pb ([e_B, pa] ^ e_A)
        let tail = self
            .anchor_derivative::<S>(mb, pa)
            .wedge(&Exterior::basis(self.rank, self.vars, ma))
            .scale(pb);
        let flip = (ka * (kb + 1) + kb) % 2 == 1;
        out = if flip { out.sub(&tail) } else { out.add(&tail) };
        out
    }

    /// `[e_A, p]` for a pure basis wedge and a function: recursively
    /// `[e_u ^ r, p] = e_u ^ [r, p] + (-1)^{|r|} a(e_u)(p) r`.
    fn anchor_derivative<S: Side>(&self, mask: u32, p: &Poly) -> Exterior<S> {
        if mask == 0 {
            return Exterior::zero(self.rank, self.vars);
        }
        let u = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let krest = rest.count_ones() as usize;
        let out = Exterior::<S>::gen(self.rank, self.vars, u)
            .wedge(&self.anchor_derivative::<S>(rest, p));
        let mut head = Exterior::term(self.rank, self.vars, rest, self.anchor_apply(u, p));
        if krest % 2 == 1 {
            head = head.neg();
        }
        out.add(&head)
    }

    /// `[e_A, e_B]` for pure basis wedges: recursively
    /// `[e_u ^ r, e_B] = e_u ^ [r, e_B] + (-1)^{|r|(|B|-1)} [e_u, e_B] ^ r`.
    fn bracket_wedges<S: Side>(&self, ma: u32, mb: u32) -> Exterior<S> {
        if ma == 0 || mb == 0 {
            return Exterior::zero(self.rank, self.vars);
        }
        if ma.count_ones() == 1 {
            return self.derive_wedge(ma.trailing_zeros() as usize, mb);
        }
        let u = ma.trailing_zeros() as usize;
        let rest = ma & (ma - 1);
        let krest = rest.count_ones() as usize;
        let kb = mb.count_ones() as usize;
        let out =
            Exterior::<S>::gen(self.rank, self.vars, u).wedge(&self.bracket_wedges::<S>(rest, mb));
        let mut head = self
            .derive_wedge::<S>(u, mb)
            .wedge(&Exterior::basis(self.rank, self.vars, rest));
        if (krest * (kb + 1)) % 2 == 1 {
            head = head.neg();
        }
        out.add(&head)
    }

    /// `[s_i, e_B]`: degree-1 sections act as plain derivations of the wedge.
    fn derive_wedge<S: Side>(&self, i: usize, mb: u32) -> Exterior<S> {
        let mut out = Exterior::zero(self.rank, self.vars);
        let mut rest = mb;
        while rest != 0 {
            let t = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let below = mb & ((1u32 << t) - 1);
            let above = mb & !((1u32 << (t + 1)) - 1);
            let replaced = Exterior::<S>::basis(self.rank, self.vars, below)
                .wedge(&self.bracket_elem(i, t))
                .wedge(&Exterior::basis(self.rank, self.vars, above));
            out = out.add(&replaced);
        }
        out
    }

    /// The degree +1 differential induced on the opposite side: on functions
    /// `d f = sum_i a(s_i)(f) t^i`, on dual generators
    /// `d t^i = - sum_{j<k} c_jk^i t^j ^ t^k`, extended as an odd derivation.
    /// No square-zero property is assumed or used.
    pub fn differential<T: Side>(&self, w: &Exterior<T>) -> Exterior<T> {
        assert_eq!(w.rank(), self.rank, "exterior rank mismatch");
        let mut out = Exterior::zero(self.rank, self.vars);
        for (mask, p) in w.terms() {
            // d(p) ^ e_mask
            out = out.add(
                &self
                    .differential_function::<T>(p)
                    .wedge(&Exterior::basis(self.rank, self.vars, mask)),
            );
            // p * sum_slots +- (in-place replacement by the generator image)
            let mut pos = 0usize;
            let mut rest = mask;
            while rest != 0 {
                let t = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let below = mask & ((1u32 << t) - 1);
                let above = mask & !((1u32 << (t + 1)) - 1);
                let mut piece = Exterior::<T>::basis(self.rank, self.vars, below)
                    .wedge(&self.differential_gen(t))
                    .wedge(&Exterior::basis(self.rank, self.vars, above))
                    .scale(p);
                if pos % 2 == 1 {
                    piece = piece.neg();
                }
                out = out.add(&piece);
                pos += 1;
            }
        }
        out
    }

    /// `d f` as a degree-1 element of the opposite side.
    pub fn differential_function<T: Side>(&self, f: &Poly) -> Exterior<T> {
        let mut out = Exterior::zero(self.rank, self.vars);
        for i in 0..self.rank {
            let c = self.anchor_apply(i, f);
            if !c.is_zero() {
                out = out.add(&Exterior::term(self.rank, self.vars, 1 << i, c));
            }
        }
        out
    }

    /// `d t^i = - sum_{j<k} c_jk^i t^j ^ t^k`.
    fn differential_gen<T: Side>(&self, i: usize) -> Exterior<T> {
        let mut out = Exterior::zero(self.rank, self.vars);
        for j in 0..self.rank {
            for k in (j + 1)..self.rank {
                let c = &self.bracket[j][k][i];
                if !c.is_zero() {
                    out = out.add(&Exterior::term(
                        self.rank,
                        self.vars,
                        (1 << j) | (1 << k),
                        -c,
                    ));
                }
            }
        }
        out
    }

    /// Lie derivative along a degree-1 section of this structure's side,
    /// acting on the structure's own exterior algebra: `[x, t]` via the
    /// Schouten extension.
    pub fn lie_same_side<S: Side>(&self, x: &Exterior<S>, t: &Exterior<S>) -> Exterior<S> {
        assert!(
            x.is_homogeneous(1),
            "Lie derivative needs a degree-1 section"
        );
        self.schouten(x, t)
    }

    /// Lie derivative along a degree-1 section of this structure's side,
    /// acting on the opposite exterior algebra, by the Cartan formula
    /// `L_x = d . iota_x + iota_x . d` with this structure's differential.
    pub fn lie_cartan<T: Side>(&self, x: &Exterior<T::Other>, w: &Exterior<T>) -> Exterior<T> {
        assert!(
            x.is_homogeneous(1),
            "Lie derivative needs a degree-1 section"
        );
        self.differential(&w.contract_by(x))
            .add(&self.differential(w).contract_by(x))
    }

    /// Divergence of the anchor image: `L_{a(x)} (dq1 ^ .. ^ dqm) = div * s`
    /// for a degree-1 section `x`; returns the divergence.
    pub fn lie_volume<S: Side>(&self, x: &Exterior<S>) -> Poly {
        assert!(x.is_homogeneous(1), "volume flow needs a degree-1 section");
        let mut out = Poly::zero(self.vars);
        for (mask, g) in x.terms() {
            let i = mask.trailing_zeros() as usize;
            for alpha in 0..self.vars {
                out += &(g * &self.anchor[i][alpha]).partial_diff(alpha);
            }
        }
        out
    }
}
