//! Seeded random elements for the randomized drivers.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use pcml_core::freemetab;
use pcml_core::{CommMonomial, CommPoly, Graph, LieMonomial, LiePoly, MultiDegree, Vertex};

/// A multidegree on `n` generators with total degree in `min..=max`.
pub fn multidegree<R: Rng>(rng: &mut R, n: usize, min: u32, max: u32) -> MultiDegree {
    let total = rng.gen_range(min..=max);
    let mut counts = vec![0u32; n];
    for _ in 0..total {
        counts[rng.gen_range(0..n)] += 1;
    }
    MultiDegree::from_counts(counts)
}

fn coefficient<R: Rng>(rng: &mut R, bound: i64) -> BigInt {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return BigInt::from(c);
        }
    }
}

/// Up to `terms` left-normed words in the letters of `d`, shuffled, with
/// coefficients in `[-bound, bound]`.
pub fn homogeneous<R: Rng>(rng: &mut R, d: &MultiDegree, terms: usize, bound: i64) -> LiePoly {
    let mut letters = d.letters();
    let mut out = LiePoly::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        letters.shuffle(rng);
        out.add_scaled(&freemetab::word(&letters), &coefficient(rng, bound));
    }
    out
}

/// A random element of the edge ideal in the component `d`: a combination
/// of `[xj, xi].f` over edges `{i, j}` inside `d`.
pub fn ideal_element<R: Rng>(rng: &mut R, g: &Graph, d: &MultiDegree, terms: usize, bound: i64) -> LiePoly {
    let n = g.n();
    let edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .into_iter()
        .filter(|&(i, j)| {
            if i == j {
                return false;
            }
            d.checked_sub(&MultiDegree::of_letters(n, &[i, j])).is_some()
        })
        .collect();
    let mut out = LiePoly::zero();
    if edges.is_empty() {
        return out;
    }
    for _ in 0..rng.gen_range(1..=terms) {
        let (i, j) = *edges.choose(rng).expect("edges is nonempty");
        let rest = d
            .checked_sub(&MultiDegree::of_letters(n, &[i, j]))
            .expect("edge lies inside d");
        let f = CommPoly::term(CommMonomial::from_multidegree(&rest), 1);
        let u = LiePoly::term(LieMonomial::new(&[j, i]), coefficient(rng, bound));
        let w = freemetab::act(&u, &f).expect("a bracket is in the derived subalgebra");
        out = &out + &w;
    }
    out
}
