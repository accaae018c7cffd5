//! Top-degree duality between the two exterior algebras and the generating
//! operators it induces.
//!
//! With the frame volume elements `Omega = e^1 ^ .. ^ e^n` and
//! `V = e_1 ^ .. ^ e_n`, contraction into the top element of the opposite
//! side gives mutually inverse (up to sign) isomorphisms between degree `k`
//! on one side and degree `n - k` on the other. Conjugating a differential
//! through this duality yields a degree -1 operator that behaves as minus a
//! divergence; the bracket it generates by the failure of the Leibniz rule
//! coincides with the Schouten extension of the structure bracket. That
//! generator relation is the cross-check the tests lean on.

use crate::dull::DullStructure;
use crate::exterior::{Exterior, Form, MultiVec, Side};

/// `r` maps to the contraction of `e^1 ^ .. ^ e^n` by `r`.
pub fn omega_sharp(r: &MultiVec) -> Form {
    Form::top(r.rank(), r.vars()).contract_by(r)
}

/// `w` maps to the contraction of `e_1 ^ .. ^ e_n` by `w`.
pub fn v_sharp(w: &Form) -> MultiVec {
    MultiVec::top(w.rank(), w.vars()).contract_by(w)
}

fn top_dual<S: Side>(t: &Exterior<S>) -> Exterior<S::Other> {
    Exterior::<S::Other>::top(t.rank(), t.vars()).contract_by(t)
}

/// Degree -1 generator obtained by conjugating the differential of `s`
/// through the top-degree duality, with the degree-dependent sign
/// `-(-1)^{n(k+1)}` on the degree `k` part.
///
/// `s` must be the structure whose sections live on the side of `t`; its
/// differential then acts on the dual side, where the conjugation happens.
/// On a degree-1 section `x` this returns minus the divergence-type scalar:
/// `bv_partial(f x) = f bv_partial(x) - a(x)(f)`.
pub fn bv_partial<S: Side>(s: &DullStructure, t: &Exterior<S>) -> Exterior<S> {
    let n = t.rank();
    let mut out = Exterior::zero(n, t.vars());
    for k in 0..=t.max_degree() {
        let part = t.homogeneous_part(k);
        if part.is_zero() {
            continue;
        }
        let mut conj = top_dual(&s.differential(&top_dual(&part)));
        if (n * (k + 1)) % 2 == 0 {
            conj = conj.neg();
        }
        out = out.add(&conj);
    }
    out
}

/// The degree -1 generator on forms, mirror of [`bv_partial`]: conjugates
/// the differential of the dual-side structure through the same duality.
pub fn bv_partial_star(star: &DullStructure, w: &Form) -> Form {
    bv_partial(star, w)
}

/// `d_star . bv_partial + bv_partial . d_star` on multivectors, where `own`
/// carries the bracket on the multivector side and `other` the dual bracket
/// whose differential raises multivector degree.
pub fn laplacian<S: Side>(
    own: &DullStructure,
    other: &DullStructure,
    t: &Exterior<S>,
) -> Exterior<S> {
    other
        .differential(&bv_partial(own, t))
        .add(&bv_partial(own, &other.differential(t)))
}

/// `d . bv_partial_star + bv_partial_star . d` on forms.
pub fn laplacian_star(a: &DullStructure, star: &DullStructure, w: &Form) -> Form {
    laplacian(star, a, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::all_masks;
    use crate::ring::{int, Poly};
    use crate::testutil::{rand_poly, random_structure, sl2};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn double_dual_sign() {
        for n in 1..=6usize {
            for mask in all_masks(n) {
                let k = mask.count_ones() as usize;
                let v = MultiVec::basis(n, 0, mask);
                let round = v_sharp(&omega_sharp(&v));
                let expected = if (k * (n + 1)) % 2 == 0 {
                    v.clone()
                } else {
                    v.neg()
                };
                assert_eq!(round, expected, "n={n} mask={mask:#b}");
                let w = Form::basis(n, 0, mask);
                let round_w = omega_sharp(&v_sharp(&w));
                let expected_w = if (k * (n + 1)) % 2 == 0 {
                    w.clone()
                } else {
                    w.neg()
                };
                assert_eq!(round_w, expected_w, "form n={n} mask={mask:#b}");
            }
        }
    }

    #[test]
    fn generator_on_basis_sections_is_the_bracket_trace() {
        let mut rng = StdRng::seed_from_u64(31);
        for (rank, vars) in [(3usize, 0usize), (3, 2), (4, 1)] {
            let s = random_structure(&mut rng, rank, vars);
            for i in 0..rank {
                let mut trace = Poly::zero(vars);
                for j in 0..rank {
                    trace += s.bracket_coeff(i, j, j);
                }
                let d = bv_partial(&s, &MultiVec::gen(rank, vars, i));
                assert_eq!(
                    d,
                    MultiVec::scalar(rank, vars, trace),
                    "rank={rank} vars={vars} i={i}"
                );
            }
        }
    }

    #[test]
    fn generator_on_a_section_pair() {
        // on e_i ^ e_j: -[e_i,e_j] + trace_i e_j - trace_j e_i
        let mut rng = StdRng::seed_from_u64(37);
        let s = random_structure(&mut rng, 4, 1);
        let trace = |i: usize| -> Poly {
            let mut t = Poly::zero(1);
            for j in 0..4 {
                t += s.bracket_coeff(i, j, j);
            }
            t
        };
        for i in 0..4 {
            for j in (i + 1)..4 {
                let pair = MultiVec::gen(4, 1, i).wedge(&MultiVec::gen(4, 1, j));
                let expected = s
                    .bracket_elem::<crate::exterior::VecSide>(i, j)
                    .neg()
                    .add(&MultiVec::term(4, 1, 1 << j, trace(i)))
                    .sub(&MultiVec::term(4, 1, 1 << i, trace(j)));
                assert_eq!(bv_partial(&s, &pair), expected, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn generator_picks_up_anchor_derivatives() {
        // bv_partial(f x) = f bv_partial(x) - a(x)(f)
        let mut rng = StdRng::seed_from_u64(41);
        let s = random_structure(&mut rng, 3, 2);
        for i in 0..3 {
            for trial in 0..4 {
                let f = rand_poly(&mut rng, 2, 3, 3);
                let x = MultiVec::gen(3, 2, i);
                let lhs = bv_partial(&s, &x.scale(&f));
                let rhs = bv_partial(&s, &x).scale(&f).sub(&MultiVec::scalar(
                    3,
                    2,
                    s.anchor_apply(i, &f),
                ));
                assert_eq!(lhs, rhs, "i={i} trial={trial}");
            }
        }
    }

    #[test]
    fn generator_produces_the_schouten_bracket() {
        // [r1, r2] = (-1)^k (bv(r1 ^ r2) - bv(r1) ^ r2) - r1 ^ bv(r2), k = |r1|,
        // on random structures with no axioms assumed.
        let mut rng = StdRng::seed_from_u64(43);
        for (rank, vars) in [(3usize, 1usize), (4, 2)] {
            let s = random_structure(&mut rng, rank, vars);
            let q = Poly::var(vars, 0);
            for ma in all_masks(rank) {
                for mb in all_masks(rank) {
                    let r1 = MultiVec::term(rank, vars, ma, q.clone());
                    let r2 = MultiVec::term(rank, vars, mb, &q + &Poly::one(vars));
                    let k = ma.count_ones() as usize;
                    let mut rhs =
                        bv_partial(&s, &r1.wedge(&r2)).sub(&bv_partial(&s, &r1).wedge(&r2));
                    if k % 2 == 1 {
                        rhs = rhs.neg();
                    }
                    rhs = rhs.sub(&r1.wedge(&bv_partial(&s, &r2)));
                    assert_eq!(
                        s.schouten(&r1, &r2),
                        rhs,
                        "rank={rank} ma={ma:#b} mb={mb:#b}"
                    );
                }
            }
        }
    }

    #[test]
    fn mirror_generator_produces_the_dual_schouten_bracket() {
        let mut rng = StdRng::seed_from_u64(47);
        let star = random_structure(&mut rng, 3, 2);
        let q = Poly::var(2, 1);
        for ma in all_masks(3) {
            for mb in all_masks(3) {
                let w1 = Form::term(3, 2, ma, q.clone());
                let w2 = Form::basis(3, 2, mb);
                let k = ma.count_ones() as usize;
                let mut rhs = bv_partial_star(&star, &w1.wedge(&w2))
                    .sub(&bv_partial_star(&star, &w1).wedge(&w2));
                if k % 2 == 1 {
                    rhs = rhs.neg();
                }
                rhs = rhs.sub(&w1.wedge(&bv_partial_star(&star, &w2)));
                assert_eq!(star.schouten(&w1, &w2), rhs, "ma={ma:#b} mb={mb:#b}");
            }
        }
    }

    #[test]
    fn duality_square_commutes_with_the_differential() {
        // -v_sharp(d w) = (-1)^k bv_partial(v_sharp(w)) for w of degree k
        let mut rng = StdRng::seed_from_u64(53);
        let s = random_structure(&mut rng, 4, 1);
        for mask in all_masks(4) {
            let w = Form::term(4, 1, mask, Poly::var(1, 0));
            let k = mask.count_ones() as usize;
            let lhs = v_sharp(&s.differential(&w)).neg();
            let mut rhs = bv_partial(&s, &v_sharp(&w));
            if k % 2 == 1 {
                rhs = rhs.neg();
            }
            assert_eq!(lhs, rhs, "mask={mask:#b}");
        }
    }

    #[test]
    fn mirror_duality_square_commutes_with_the_dual_differential() {
        // d_star(v_sharp(w)) = (-1)^k v_sharp(bv_partial_star(w))
        let mut rng = StdRng::seed_from_u64(59);
        let star = random_structure(&mut rng, 4, 1);
        for mask in all_masks(4) {
            let w = Form::term(4, 1, mask, Poly::var(1, 0));
            let k = mask.count_ones() as usize;
            let lhs = star.differential(&v_sharp(&w));
            let mut rhs = v_sharp(&bv_partial_star(&star, &w));
            if k % 2 == 1 {
                rhs = rhs.neg();
            }
            assert_eq!(lhs, rhs, "mask={mask:#b}");
        }
    }

    #[test]
    fn generator_square_measures_the_bracket_defect() {
        // bv(bv(x ^ y)) = [bv x, y] + [x, bv y] - bv [x, y] for sections x, y
        let mut rng = StdRng::seed_from_u64(61);
        let s = random_structure(&mut rng, 4, 2);
        let q = Poly::var(2, 0);
        for i in 0..4 {
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let x = MultiVec::term(4, 2, 1 << i, q.clone());
                let y = MultiVec::gen(4, 2, j);
                let lhs = bv_partial(&s, &bv_partial(&s, &x.wedge(&y)));
                let rhs = s
                    .schouten(&bv_partial(&s, &x), &y)
                    .add(&s.schouten(&x, &bv_partial(&s, &y)))
                    .sub(&bv_partial(&s, &s.schouten(&x, &y)));
                assert_eq!(lhs, rhs, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn generator_on_triple_wedges() {
        // bv(t1^t2^t3) = t1^[t2,t3] + [t1,t3]^t2 - [t1,t2]^t3
        //              + bv(t1) t2^t3 - bv(t2) t1^t3 + bv(t3) t1^t2
        let mut rng = StdRng::seed_from_u64(67);
        let s = random_structure(&mut rng, 3, 1);
        let t1 = MultiVec::gen(3, 1, 0);
        let t2 = MultiVec::term(3, 1, 0b010, Poly::var(1, 0));
        let t3 = MultiVec::gen(3, 1, 2);
        let lhs = bv_partial(&s, &t1.wedge(&t2).wedge(&t3));
        let rhs = t1
            .wedge(&s.schouten(&t2, &t3))
            .add(&s.schouten(&t1, &t3).wedge(&t2))
            .sub(&s.schouten(&t1, &t2).wedge(&t3))
            .add(&t2.wedge(&t3).scale(&bv_partial(&s, &t1).scalar_part()))
            .sub(&t1.wedge(&t3).scale(&bv_partial(&s, &t2).scalar_part()))
            .add(&t1.wedge(&t2).scale(&bv_partial(&s, &t3).scalar_part()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sl2_is_unimodular_for_the_generator() {
        let s = sl2();
        for i in 0..3 {
            assert!(
                bv_partial(&s, &MultiVec::gen(3, 0, i)).is_zero(),
                "generator should vanish on e_{}",
                i + 1
            );
        }
        // but not on wedges: bv(e1 ^ e2) = -[e1,e2] = -2 e2
        assert_eq!(
            bv_partial(&s, &MultiVec::basis(3, 0, 0b011)),
            MultiVec::basis(3, 0, 0b010).scale_rat(&int(-2))
        );
    }

    #[test]
    fn laplacian_mixes_both_structures() {
        let mut rng = StdRng::seed_from_u64(71);
        let a = random_structure(&mut rng, 3, 1);
        let star = random_structure(&mut rng, 3, 1);
        // on functions the Laplacian is bv . d_star (the bv of a function is 0)
        let f = Poly::var(1, 0);
        let v = MultiVec::scalar(3, 1, f.clone());
        assert!(bv_partial(&a, &v).is_zero());
        assert_eq!(
            laplacian(&a, &star, &v),
            bv_partial(&a, &star.differential(&v))
        );
        // mirror side typechecks and matches its own composition
        let w = Form::scalar(3, 1, f);
        assert_eq!(
            laplacian_star(&a, &star, &w),
            bv_partial_star(&star, &a.differential(&w))
        );
    }
}
