#![allow(dead_code)]

use num_bigint::BigInt;
use pcml_core::{CommMonomial, CommPoly, LieExpr, LieMonomial, LiePoly, Vertex};
use proptest::prelude::*;

pub const N: Vertex = 4;

pub fn letters(max_len: usize) -> impl Strategy<Value = Vec<Vertex>> {
    prop::collection::vec(1..=N, 1..=max_len)
}

/// A raw word, normal-formed in the free ring.
pub fn word_poly(max_len: usize) -> impl Strategy<Value = LiePoly> {
    letters(max_len).prop_map(|w| pcml_core::freemetab::word(&w))
}

pub fn lie_poly(max_len: usize, max_terms: usize) -> impl Strategy<Value = LiePoly> {
    prop::collection::vec((letters(max_len), -9i64..=9), 0..=max_terms).prop_map(|terms| {
        let mut p = LiePoly::zero();
        for (w, c) in terms {
            p.add_scaled(&pcml_core::freemetab::word(&w), &BigInt::from(c));
        }
        p
    })
}

/// Elements of the derived subalgebra.
pub fn derived_poly(max_len: usize, max_terms: usize) -> impl Strategy<Value = LiePoly> {
    prop::collection::vec((prop::collection::vec(1..=N, 2..=max_len), -9i64..=9), 1..=max_terms).prop_map(
        |terms| {
            let mut p = LiePoly::zero();
            for (w, c) in terms {
                p.add_scaled(&pcml_core::freemetab::word(&w), &BigInt::from(c));
            }
            p
        },
    )
}

pub fn comm_poly(max_deg: usize, max_terms: usize) -> impl Strategy<Value = CommPoly> {
    prop::collection::vec((prop::collection::vec(1..=N, 0..=max_deg), -9i64..=9), 0..=max_terms).prop_map(
        |terms| {
            terms
                .into_iter()
                .map(|(l, c)| (CommMonomial::from_letters(&l), BigInt::from(c)))
                .collect()
        },
    )
}

/// Nested raw expressions: brackets of sums of brackets.
pub fn expr() -> impl Strategy<Value = LieExpr> {
    let leaf = (1..=N).prop_map(LieExpr::Generator);
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(LieExpr::Bracket),
            prop::collection::vec((-3i64..=3, inner), 1..=2)
                .prop_map(|ts| LieExpr::Sum(ts.into_iter().map(|(c, e)| (BigInt::from(c), e)).collect())),
        ]
    })
}

pub fn mono(l: &[Vertex]) -> LiePoly {
    LiePoly::term(LieMonomial::new(l), 1)
}
