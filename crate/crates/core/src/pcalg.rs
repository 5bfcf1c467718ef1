//! The partially commutative quotient `M(X;G)`.
//!
//! A free basis monomial `[a, m, t3, …]` vanishes in `M(X;G)` exactly when
//! `a` and `m` lie in one connected component of `G_u`, the subgraph induced
//! on the letters of the monomial. Otherwise its class is represented by the
//! monomial whose first letter is the largest letter of that component.

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::expr::LieExpr;
use crate::freemetab::{self, CommPoly, LieMonomial, LiePoly, MultiDegree};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PCAlgebra {
    graph: Graph,
}

impl PCAlgebra {
    pub fn new(graph: Graph) -> Self {
        PCAlgebra { graph }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Connected component of `start` inside the subgraph induced on
    /// `letters` (which may repeat).
    fn component_in(&self, letters: &[Vertex], start: Vertex) -> SmallVec<[Vertex; 8]> {
        let mut distinct: SmallVec<[Vertex; 8]> = letters.iter().copied().collect();
        distinct.sort_unstable();
        distinct.dedup();
        let mut block: SmallVec<[Vertex; 8]> = SmallVec::new();
        block.push(start);
        let mut k = 0;
        while k < block.len() {
            let v = block[k];
            for &w in &distinct {
                if !block.contains(&w) && self.graph.has_edge(v, w) {
                    block.push(w);
                }
            }
            k += 1;
        }
        block
    }

    /// Whether a free basis monomial of length at least 2 is zero in `M(X;G)`.
    pub fn monomial_is_zero(&self, u: &LieMonomial) -> bool {
        let letters = u.letters();
        if letters.len() < 2 {
            return false;
        }
        self.component_in(letters, letters[0]).contains(&letters[1])
    }

    /// Class representative of a free basis monomial, `None` when it is zero.
    pub fn canonical_representative(&self, u: &LieMonomial) -> Option<LieMonomial> {
        let letters = u.letters();
        if letters.len() < 2 {
            return Some(u.clone());
        }
        let block = self.component_in(letters, letters[0]);
        if block.contains(&letters[1]) {
            return None;
        }
        let b = block.iter().copied().max().expect("block holds the first letter");
        if b == letters[0] {
            return Some(u.clone());
        }
        let mut out: SmallVec<[Vertex; 8]> = SmallVec::with_capacity(letters.len());
        out.push(b);
        out.push(letters[1]);
        let mut tail: SmallVec<[Vertex; 8]> = letters[2..].iter().copied().collect();
        let pos = tail.iter().position(|&v| v == b).expect("b occurs in the tail");
        tail[pos] = letters[0];
        tail.sort_unstable();
        out.extend_from_slice(&tail);
        Some(LieMonomial::new(&out))
    }

    /// Maps a polynomial in the free basis to the basis of `M(X;G)`.
    pub fn reduce(&self, p: &LiePoly) -> LiePoly {
        let mut out = LiePoly::zero();
        for (m, c) in p.iter() {
            if let Some(r) = self.canonical_representative(m) {
                out.add_term(r, c.clone());
            }
        }
        out
    }

    pub fn check_poly(&self, p: &LiePoly) -> Result<()> {
        let v = p.max_vertex();
        if v as usize > self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(())
    }

    pub fn check_comm(&self, f: &CommPoly) -> Result<()> {
        let v = f.max_vertex();
        if v as usize > self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(())
    }

    /// Canonical form of an arbitrary expression.
    pub fn normal_form(&self, expr: &LieExpr) -> Result<LiePoly> {
        let v = expr.max_vertex();
        if v as usize > self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(self.reduce(&freemetab::normal_form(expr)))
    }

    pub fn bracket(&self, p: &LiePoly, q: &LiePoly) -> LiePoly {
        self.reduce(&freemetab::bracket(p, q))
    }

    pub fn act(&self, u: &LiePoly, f: &CommPoly) -> Result<LiePoly> {
        Ok(self.reduce(&freemetab::act(u, f)?))
    }

    /// Basis of the homogeneous component of multidegree `d`, in standard
    /// order, smallest first.
    pub fn basis_for_multidegree(&self, d: &MultiDegree) -> Vec<LieMonomial> {
        let letters = d.letters();
        match letters.len() {
            0 => return Vec::new(),
            1 => return vec![LieMonomial::generator(letters[0])],
            _ => {}
        }
        let support = d.support();
        let m = support[0];
        let mut out: Vec<LieMonomial> = support[1..]
            .iter()
            .filter_map(|&a| {
                let mut word: Vec<Vertex> = vec![a, m];
                let mut rest = letters.clone();
                for x in [a, m] {
                    let pos = rest.iter().position(|&v| v == x).expect("letter in multidegree");
                    rest.remove(pos);
                }
                word.extend(rest);
                self.canonical_representative(&LieMonomial::new(&word))
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// All basis monomials of total degree at most `k`, grouped by
    /// multidegree in increasing order.
    pub fn enumerate_basis(&self, k: u32) -> Vec<(MultiDegree, Vec<LieMonomial>)> {
        MultiDegree::all_up_to(self.n(), k)
            .into_iter()
            .map(|d| {
                let b = self.basis_for_multidegree(&d);
                (d, b)
            })
            .filter(|(_, b)| !b.is_empty())
            .collect()
    }
}
