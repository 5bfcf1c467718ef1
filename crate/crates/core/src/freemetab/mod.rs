//! The free metabelian Lie ring over the integers.
//!
//! Elements are kept in the basis of left-normed monomials
//! `[x_{i1}, x_{i2}, …, x_{im}]` with `i2 < i1` and `i2 <= i3 <= … <= im`,
//! plus the generators. The derived subalgebra is a module over the
//! commutative polynomial ring, acting by `u.y = [u, y]`.

mod monomial;
mod poly;

use std::cmp::Ordering;

use num_traits::One;
use smallvec::SmallVec;

pub use monomial::{CommMonomial, LieMonomial, MultiDegree};
pub use poly::{Coeff, CommPoly, Linear, LiePoly};

use crate::error::{Error, Result};
use crate::expr::LieExpr;
use crate::graph::Vertex;
use monomial::Letters;

/// Standard order on monomials.
pub fn compare_std(u: &LieMonomial, v: &LieMonomial) -> Ordering {
    u.cmp(v)
}

/// Rewrites one left-normed word into the free basis. The result has at most
/// two signed terms.
///
/// Letters from position 3 on commute, so the tail is sorted first. The
/// smallest letter `z` of the word then has to reach position 2: if it is
/// the first letter, anti-symmetry swaps the first two; if it sits in the
/// tail, one Jacobi step
/// `[a, b, z, …] = [a, z, b, …] - [b, z, a, …]`
/// puts it there in both summands. Each summand then has its minimum in
/// position 2, a strictly larger first letter and a sortable tail, so a
/// single rewriting step always terminates in basis shape.
pub fn normalize_word(word: &[Vertex]) -> SmallVec<[(i8, LieMonomial); 2]> {
    let mut out = SmallVec::new();
    match word.len() {
        0 => {}
        1 => out.push((1, LieMonomial::generator(word[0]))),
        _ => {
            let (a, b) = (word[0], word[1]);
            if a == b {
                return out;
            }
            let mut tail: Letters = word[2..].iter().copied().collect();
            tail.sort_unstable();
            let tail_min = tail.first().copied().unwrap_or(Vertex::MAX);
            if b < a && b <= tail_min {
                out.push((1, assemble(a, b, &tail)));
            } else if a < b && a <= tail_min {
                out.push((-1, assemble(b, a, &tail)));
            } else {
                let z = tail_min;
                let rest = &tail[1..];
                out.push((1, assemble(a, z, &insert_sorted(rest, b))));
                out.push((-1, assemble(b, z, &insert_sorted(rest, a))));
            }
        }
    }
    out
}

fn assemble(first: Vertex, second: Vertex, tail: &[Vertex]) -> LieMonomial {
    let mut letters: Letters = SmallVec::with_capacity(tail.len() + 2);
    letters.push(first);
    letters.push(second);
    letters.extend_from_slice(tail);
    LieMonomial(letters)
}

fn insert_sorted(sorted: &[Vertex], v: Vertex) -> Letters {
    let mut out: Letters = sorted.iter().copied().collect();
    let pos = out.partition_point(|&w| w < v);
    out.insert(pos, v);
    out
}

/// Adds `c` times the normal form of `word` to `acc`.
pub(crate) fn accumulate_word(acc: &mut LiePoly, word: &[Vertex], c: &Coeff) {
    for (sign, m) in normalize_word(word) {
        if sign > 0 {
            acc.add_term(m, c.clone());
        } else {
            acc.add_term(m, -c.clone());
        }
    }
}

/// Normal form of a left-normed word.
pub fn word(letters: &[Vertex]) -> LiePoly {
    let mut p = LiePoly::zero();
    accumulate_word(&mut p, letters, &Coeff::one());
    p
}

/// Normal form of an arbitrary bracket expression, nested brackets included.
pub fn normal_form(expr: &LieExpr) -> LiePoly {
    match expr {
        LieExpr::Generator(v) => LiePoly::generator(*v),
        LieExpr::Bracket(items) => {
            let mut it = items.iter();
            let first = normal_form(it.next().expect("bracket has entries"));
            it.fold(first, |acc, e| bracket(&acc, &normal_form(e)))
        }
        LieExpr::Sum(terms) => {
            let mut acc = LiePoly::zero();
            for (c, e) in terms {
                acc.add_scaled(&normal_form(e), c);
            }
            acc
        }
    }
}

/// `[p, q]` in the free metabelian ring. Brackets of two elements of the
/// derived subalgebra vanish.
pub fn bracket(p: &LiePoly, q: &LiePoly) -> LiePoly {
    let mut out = LiePoly::zero();
    let mut buf: Vec<Vertex> = Vec::new();
    for (u, a) in p.iter() {
        for (v, b) in q.iter() {
            let c = a * b;
            buf.clear();
            match (u.len(), v.len()) {
                (1, _) if v.len() >= 2 => {
                    buf.extend_from_slice(v.letters());
                    buf.extend_from_slice(u.letters());
                    accumulate_word(&mut out, &buf, &-c);
                }
                (_, 1) => {
                    buf.extend_from_slice(u.letters());
                    buf.extend_from_slice(v.letters());
                    accumulate_word(&mut out, &buf, &c);
                }
                _ => {}
            }
        }
    }
    out
}

/// Module action `u.f` of a commutative polynomial on an element of the
/// derived subalgebra.
pub fn act(u: &LiePoly, f: &CommPoly) -> Result<LiePoly> {
    if !u.is_derived() {
        return Err(Error::NotInDerivedSubalgebra);
    }
    let mut out = LiePoly::zero();
    let mut buf: Vec<Vertex> = Vec::new();
    for (m, a) in u.iter() {
        for (w, b) in f.iter() {
            buf.clear();
            buf.extend_from_slice(m.letters());
            buf.extend_from_slice(w.letters());
            accumulate_word(&mut out, &buf, &(a * b));
        }
    }
    Ok(out)
}

/// Whether `u.f = 0` with `u` and `f` both non-zero. The free derived
/// subalgebra is torsion-free, so this is always `false`; it exists as a hook
/// for checking exactly that.
pub fn is_torsion_pair(u: &LiePoly, f: &CommPoly) -> bool {
    if u.is_zero() || f.is_zero() {
        return false;
    }
    match act(u, f) {
        Ok(r) => r.is_zero(),
        Err(_) => false,
    }
}
