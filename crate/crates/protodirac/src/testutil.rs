//! Shared builders for unit tests: seeded random structures and the sl(2)
//! bracket table.

use crate::dull::DullStructure;
use crate::ring::{int, Poly};
use rand::Rng;

/// Random polynomial with small integer coefficients and per-variable
/// exponents below `max_exp`.
pub(crate) fn rand_poly(rng: &mut impl Rng, vars: usize, max_exp: u32, max_terms: usize) -> Poly {
    let mut p = Poly::zero(vars);
    let n_terms = rng.gen_range(0..=max_terms);
    for _ in 0..n_terms {
        let exps: Vec<u32> = (0..vars).map(|_| rng.gen_range(0..max_exp)).collect();
        p += &Poly::monomial(vars, exps, int(rng.gen_range(-3..4)));
    }
    p
}

/// A structure with random polynomial bracket and anchor tables. No axioms
/// hold for it beyond skew symmetry of the bracket.
pub(crate) fn random_structure(rng: &mut impl Rng, rank: usize, vars: usize) -> DullStructure {
    let mut s = DullStructure::zero(rank, vars);
    for i in 0..rank {
        for j in (i + 1)..rank {
            for k in 0..rank {
                s.set_bracket(i, j, k, rand_poly(rng, vars, 2, 2));
            }
        }
        for alpha in 0..vars {
            s.set_anchor(i, alpha, rand_poly(rng, vars, 2, 2));
        }
    }
    s
}

/// sl(2) bracket table: [e1,e2] = 2 e2, [e1,e3] = -2 e3, [e2,e3] = e1.
pub(crate) fn sl2() -> DullStructure {
    let mut s = DullStructure::zero(3, 0);
    s.set_bracket(0, 1, 1, Poly::constant(0, int(2)));
    s.set_bracket(0, 2, 2, Poly::constant(0, int(-2)));
    s.set_bracket(1, 2, 0, Poly::one(0));
    s
}
