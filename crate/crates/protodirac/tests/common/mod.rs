#![allow(dead_code)]

use protodirac::dull::DullStructure;
use protodirac::exterior::{masks_of_degree, Form, MultiVec};
use protodirac::proto::ProtoData;
use protodirac::ring::{int, Poly};
use rand::Rng;

pub fn rand_poly(rng: &mut impl Rng, vars: usize, max_exp: u32, max_terms: usize) -> Poly {
    let mut p = Poly::zero(vars);
    let n_terms = rng.gen_range(0..=max_terms);
    for _ in 0..n_terms {
        let exps: Vec<u32> = (0..vars).map(|_| rng.gen_range(0..max_exp)).collect();
        p += &Poly::monomial(vars, exps, int(rng.gen_range(-3..4)));
    }
    p
}

pub fn random_structure(rng: &mut impl Rng, rank: usize, vars: usize) -> DullStructure {
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

pub fn random_proto(rng: &mut impl Rng, rank: usize, vars: usize) -> ProtoData {
    let a = random_structure(rng, rank, vars);
    let star = random_structure(rng, rank, vars);
    let mut tau = MultiVec::zero(rank, vars);
    let mut phi = Form::zero(rank, vars);
    for mask in masks_of_degree(rank, 3) {
        if rng.gen_bool(0.7) {
            tau = tau.add(&MultiVec::term(
                rank,
                vars,
                mask,
                rand_poly(rng, vars, 1, 2),
            ));
        }
        if rng.gen_bool(0.7) {
            phi = phi.add(&Form::term(rank, vars, mask, rand_poly(rng, vars, 1, 2)));
        }
    }
    ProtoData::new(a, star, tau, phi).unwrap()
}
