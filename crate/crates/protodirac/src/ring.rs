//! Coefficient ring: exact rationals and sparse multivariate polynomials.
//!
//! Polynomials live in coordinates `q1..qm` over an `m`-dimensional base.
//! `m = 0` is allowed and means the base is a point, so every polynomial is a
//! rational constant. All arithmetic is exact; coefficients are arbitrary
//! precision rationals kept in lowest terms with positive denominator.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Exact rational scalar. Always in lowest terms, denominator positive.
pub type Rational = BigRational;

/// Builds a rational from a small numerator/denominator pair.
///
/// Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    assert!(q != 0, "rational denominator must be nonzero");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Builds an integer rational.
pub fn int(p: i64) -> Rational {
    Rational::from(BigInt::from(p))
}

/// Sparse polynomial over the rationals in `vars` base coordinates.
///
/// Terms are keyed by exponent vectors of length `vars`; zero coefficients are
/// never stored, so the zero polynomial has an empty term map and equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    /// The zero polynomial in `vars` coordinates.
    pub fn zero(vars: usize) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// A constant polynomial.
    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    /// The constant polynomial 1.
    pub fn one(vars: usize) -> Self {
        Poly::constant(vars, int(1))
    }

    /// The coordinate `q{alpha+1}` (zero-based index).
    ///
    /// Panics if `alpha >= vars`.
    pub fn var(vars: usize, alpha: usize) -> Self {
        assert!(alpha < vars, "coordinate index {alpha} out of range");
        let mut exps = vec![0; vars];
        exps[alpha] = 1;
        let mut p = Poly::zero(vars);
        p.terms.insert(exps, int(1));
        p
    }

    /// A single monomial `c * q^exps`.
    ///
    /// Panics if `exps.len() != vars`.
    pub fn monomial(vars: usize, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), vars, "exponent vector length mismatch");
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Sums an iterator of `(exponents, coefficient)` terms, combining and
    /// dropping zeros.
    pub fn from_terms<I>(vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Poly::zero(vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars, "exponent vector length mismatch");
            p.add_term(exps, c);
        }
        p
    }

    /// Number of base coordinates.
    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns the constant value if the polynomial has no coordinate
    /// dependence, `None` otherwise.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(int(0)),
            1 => {
                let (exps, c) = self.terms.iter().next().unwrap();
                if exps.iter().all(|&e| e == 0) {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Iterates terms as `(exponents, coefficient)` in deterministic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars);
        }
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Formal partial derivative with respect to `q{alpha+1}`.
    pub fn partial_diff(&self, alpha: usize) -> Poly {
        assert!(alpha < self.vars, "coordinate index {alpha} out of range");
        let mut out = Poly::zero(self.vars);
        for (exps, c) in &self.terms {
            let e = exps[alpha];
            if e == 0 {
                continue;
            }
            let mut new_exps = exps.clone();
            new_exps[alpha] = e - 1;
            out.add_term(new_exps, c * int(e as i64));
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "polynomial coordinate count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "polynomial coordinate count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "polynomial coordinate count mismatch");
        let mut out = Poly::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.vars, rhs.vars, "polynomial coordinate count mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.vars, rhs.vars, "polynomial coordinate count mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            let is_const_term = exps.iter().all(|&e| e == 0);
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let mut wrote_factor = false;
            if !abs.is_one() || is_const_term {
                write!(f, "{abs}")?;
                wrote_factor = true;
            }
            for (alpha, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "\u{b7}")?;
                }
                write!(f, "q{}", alpha + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote_factor = true;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_canonical() {
        let r = rat(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert!(r.denom() > &BigInt::from(0));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(rat(4, 2).to_string(), "2");
    }

    #[test]
    fn constant_base_means_rational() {
        let p = Poly::constant(0, rat(5, 3));
        assert_eq!(p.as_constant(), Some(rat(5, 3)));
        assert_eq!(p.total_degree(), 0);
        let q = &p * &p;
        assert_eq!(q.as_constant(), Some(rat(25, 9)));
    }

    #[test]
    fn arithmetic_small_cases() {
        // (q1 + 2)(q1 - 2) = q1^2 - 4
        let m = 2;
        let q1 = Poly::var(m, 0);
        let two = Poly::constant(m, int(2));
        let prod = &(&q1 + &two) * &(&q1 - &two);
        let expected = &(&q1 * &q1) - &Poly::constant(m, int(4));
        assert_eq!(prod, expected);
    }

    #[test]
    fn zero_terms_are_dropped() {
        let m = 1;
        let q1 = Poly::var(m, 0);
        let diff = &q1 - &q1;
        assert!(diff.is_zero());
        assert_eq!(diff, Poly::zero(m));
    }

    #[test]
    fn partial_diff_basics() {
        // d/dq1 (q1^3 q2) = 3 q1^2 q2, d/dq2 (q1^3 q2) = q1^3
        let m = 2;
        let p = Poly::monomial(m, vec![3, 1], int(1));
        assert_eq!(p.partial_diff(0), Poly::monomial(m, vec![2, 1], int(3)));
        assert_eq!(p.partial_diff(1), Poly::monomial(m, vec![3, 0], int(1)));
        assert!(p
            .partial_diff(0)
            .partial_diff(1)
            .partial_diff(0)
            .partial_diff(0)
            .partial_diff(0)
            .is_zero());
    }

    #[test]
    fn partial_diff_product_rule() {
        let m = 2;
        let p = &Poly::var(m, 0) * &Poly::var(m, 1);
        let q = &Poly::monomial(m, vec![2, 0], rat(1, 2)) + &Poly::constant(m, int(3));
        let lhs = (&p * &q).partial_diff(0);
        let rhs = &(&p.partial_diff(0) * &q) + &(&p * &q.partial_diff(0));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_rendering() {
        let m = 2;
        let p = &Poly::monomial(m, vec![1, 0], rat(3, 2)) - &Poly::monomial(m, vec![0, 2], int(1));
        assert_eq!(p.to_string(), "-q2^2 + 3/2\u{b7}q1");
        assert_eq!(Poly::zero(m).to_string(), "0");
        assert_eq!(Poly::one(0).to_string(), "1");
    }
}
