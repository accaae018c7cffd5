//! Exterior algebras over a free module and its dual, with polynomial
//! coefficients.
//!
//! Elements of Lambda(A) and Lambda(A*) share one representation: a map from
//! basis subsets (bitmasks over the `rank` generators, bit `i` = generator
//! `i+1`) to polynomial coefficients. Signs come from popcount parity, so all
//! products and contractions are exact. Inhomogeneous elements are first
//! class; a term with mask 0 is the scalar part.
//!
//! The two sides are distinguished at the type level (`MultiVec` vs `Form`)
//! through a phantom side tag, which makes mixing sides a compile error while
//! keeping a single implementation of the algebra.
//!
//! Conventions, fixed once here and relied on everywhere else:
//! * contraction by a single dual generator removes the first matching slot:
//!   `(iota_xi r)(eta, ...) = r(xi, eta, ...)`;
//! * contraction by a wedge applies the first wedge factor first,
//!   `iota_{a wedge b} = iota_b . iota_a`;
//! * the pairing of equal-degree elements is the full contraction, equal to
//!   the permutation sum `sum_sigma sign(sigma) prod_i xi_i(x_sigma(i))`.

use crate::ring::{Poly, Rational};
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

/// Marker for which side of the duality an element lives on.
pub trait Side: 'static {
    /// The opposite side.
    type Other: Side<Other = Self>;
    /// Generator rendering, `e` for sections of A, `e^` for the dual.
    const GEN: &'static str;
}

/// Side tag for Lambda(A).
pub enum VecSide {}

/// Side tag for Lambda(A*).
pub enum FormSide {}

impl Side for VecSide {
    type Other = FormSide;
    const GEN: &'static str = "e";
}

impl Side for FormSide {
    type Other = VecSide;
    const GEN: &'static str = "e^";
}

/// An element of the exterior algebra on one side of the duality.
pub struct Exterior<S: Side> {
    rank: usize,
    vars: usize,
    terms: BTreeMap<u32, Poly>,
    _side: PhantomData<S>,
}

/// Element of Lambda(A): multivector with polynomial coefficients.
pub type MultiVec = Exterior<VecSide>;

/// Element of Lambda(A*): form with polynomial coefficients.
pub type Form = Exterior<FormSide>;

impl<S: Side> Clone for Exterior<S> {
    fn clone(&self) -> Self {
        Exterior {
            rank: self.rank,
            vars: self.vars,
            terms: self.terms.clone(),
            _side: PhantomData,
        }
    }
}

impl<S: Side> PartialEq for Exterior<S> {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.vars == other.vars && self.terms == other.terms
    }
}

impl<S: Side> Eq for Exterior<S> {}

impl<S: Side> fmt::Debug for Exterior<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Sign of `e_A wedge e_B` as +-1, or 0 when the masks overlap.
fn wedge_sign(a: u32, b: u32) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0u32;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        inversions += (b & ((1u32 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All basis masks of the given popcount, ascending.
pub fn masks_of_degree(rank: usize, degree: usize) -> Vec<u32> {
    (0u32..1 << rank)
        .filter(|m| m.count_ones() as usize == degree)
        .collect()
}

/// All basis masks, ascending (the full 2^rank spinor basis).
pub fn all_masks(rank: usize) -> impl Iterator<Item = u32> {
    0u32..1 << rank
}

impl<S: Side> Exterior<S> {
    /// The zero element.
    pub fn zero(rank: usize, vars: usize) -> Self {
        assert!(rank <= 31, "rank {rank} exceeds bitmask width");
        Exterior {
            rank,
            vars,
            terms: BTreeMap::new(),
            _side: PhantomData,
        }
    }

    /// A degree-0 element given by a polynomial.
    pub fn scalar(rank: usize, vars: usize, p: Poly) -> Self {
        Self::term(rank, vars, 0, p)
    }

    /// The basis element for a subset mask, coefficient 1.
    pub fn basis(rank: usize, vars: usize, mask: u32) -> Self {
        Self::term(rank, vars, mask, Poly::one(vars))
    }

    /// The single generator with zero-based index `i`.
    pub fn gen(rank: usize, vars: usize, i: usize) -> Self {
        assert!(i < rank, "generator index {i} out of range");
        Self::basis(rank, vars, 1 << i)
    }

    /// A single term `p * e_mask`.
    pub fn term(rank: usize, vars: usize, mask: u32, p: Poly) -> Self {
        let mut out = Self::zero(rank, vars);
        assert!(mask < (1u32 << rank), "mask {mask:#b} out of range");
        assert_eq!(p.vars(), vars, "coefficient coordinate count mismatch");
        if !p.is_zero() {
            out.terms.insert(mask, p);
        }
        out
    }

    /// The top generator wedge, all bits set.
    pub fn top(rank: usize, vars: usize) -> Self {
        Self::basis(rank, vars, (1u32 << rank) - 1)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(mask, coefficient)` terms in ascending mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Poly)> {
        self.terms.iter().map(|(m, p)| (*m, p))
    }

    /// The coefficient of a basis mask (zero polynomial when absent).
    pub fn component(&self, mask: u32) -> Poly {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.vars))
    }

    /// The degree-0 coefficient.
    pub fn scalar_part(&self) -> Poly {
        self.component(0)
    }

    /// Largest degree with a nonzero term; 0 for the zero element.
    pub fn max_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// True when every term has the given degree (vacuously true when zero).
    pub fn is_homogeneous(&self, degree: usize) -> bool {
        self.terms.keys().all(|m| m.count_ones() as usize == degree)
    }

    /// Projection onto terms of one degree.
    pub fn homogeneous_part(&self, degree: usize) -> Self {
        let mut out = Self::zero(self.rank, self.vars);
        for (m, p) in &self.terms {
            if m.count_ones() as usize == degree {
                out.terms.insert(*m, p.clone());
            }
        }
        out
    }

    fn add_term(&mut self, mask: u32, p: Poly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &p;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_same_shape(&self, other: &Self) {
        assert_eq!(self.rank, other.rank, "exterior rank mismatch");
        assert_eq!(
            self.vars, other.vars,
            "coefficient coordinate count mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        let mut out = self.clone();
        for (m, p) in &other.terms {
            out.add_term(*m, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        let mut out = self.clone();
        for (m, p) in &other.terms {
            out.add_term(*m, -p);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.rank, self.vars);
        for (m, p) in &self.terms {
            out.terms.insert(*m, -p);
        }
        out
    }

    /// Multiplication by a polynomial coefficient.
    pub fn scale(&self, p: &Poly) -> Self {
        assert_eq!(p.vars(), self.vars, "coefficient coordinate count mismatch");
        let mut out = Self::zero(self.rank, self.vars);
        for (m, c) in &self.terms {
            out.add_term(*m, c * p);
        }
        out
    }

    /// Multiplication by a rational scalar.
    pub fn scale_rat(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.rank, self.vars);
        for (m, c) in &self.terms {
            out.add_term(*m, c.scale(r));
        }
        out
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        let mut out = Self::zero(self.rank, self.vars);
        for (ma, pa) in &self.terms {
            for (mb, pb) in &other.terms {
                let sign = wedge_sign(*ma, *mb);
                if sign == 0 {
                    continue;
                }
                let mut c = pa * pb;
                if sign < 0 {
                    c = -c;
                }
                out.add_term(ma | mb, c);
            }
        }
        out
    }

    /// Contraction by a single opposite-side generator (zero-based index):
    /// the antiderivation that removes the first matching wedge slot.
    pub fn contract_gen(&self, i: usize) -> Self {
        assert!(i < self.rank, "generator index {i} out of range");
        let bit = 1u32 << i;
        let mut out = Self::zero(self.rank, self.vars);
        for (m, p) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let sign_flips = (m & (bit - 1)).count_ones();
            let c = if sign_flips % 2 == 0 { p.clone() } else { -p };
            out.add_term(m & !bit, c);
        }
        out
    }

    /// Contraction by an opposite-side element, extended bilinearly over
    /// coefficients. For a wedge of generators the first factor acts first.
    pub fn contract_by(&self, c: &Exterior<S::Other>) -> Self {
        assert_eq!(self.rank, c.rank, "exterior rank mismatch");
        assert_eq!(self.vars, c.vars, "coefficient coordinate count mismatch");
        let mut out = Self::zero(self.rank, self.vars);
        for (cm, cp) in &c.terms {
            let mut partial = self.clone();
            let mut rest = *cm;
            while rest != 0 && !partial.is_zero() {
                let i = rest.trailing_zeros() as usize;
                partial = partial.contract_gen(i);
                rest &= rest - 1;
            }
            for (m, p) in &partial.terms {
                out.add_term(*m, p * cp);
            }
        }
        out
    }
}

/// Full pairing of equal-degree elements, `<c|v>`, as the scalar part of the
/// complete contraction. Mismatched degrees contribute nothing.
pub fn pairing<S: Side>(c: &Exterior<S::Other>, v: &Exterior<S>) -> Poly {
    v.contract_by(c).scalar_part()
}

impl<S: Side> fmt::Display for Exterior<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut pieces = Vec::new();
        for (mask, p) in &self.terms {
            if *mask == 0 {
                pieces.push(p.to_string());
                continue;
            }
            let mut basis = Vec::new();
            for i in 0..self.rank {
                if mask & (1 << i) != 0 {
                    basis.push(format!("{}{}", S::GEN, i + 1));
                }
            }
            let basis = basis.join("^");
            let piece = if p.as_constant() == Some(crate::ring::int(1)) {
                basis
            } else if p.as_constant() == Some(crate::ring::int(-1)) {
                format!("-{basis}")
            } else if p.terms().count() == 1 {
                format!("{p}\u{b7}{basis}")
            } else {
                format!("({p})\u{b7}{basis}")
            };
            pieces.push(piece);
        }
        write!(f, "{}", pieces[0])?;
        for piece in &pieces[1..] {
            match piece.strip_prefix('-') {
                Some(rest) => write!(f, " - {rest}")?,
                None => write!(f, " + {piece}")?,
            }
        }
        Ok(())
    }
}
