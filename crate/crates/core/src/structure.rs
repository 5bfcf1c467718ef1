//! Annihilators of `[xi, xj]`, centralizers of generators and of their
//! linear combinations, and checkers for the two existential formulas that
//! separate the universal theories of tree rings.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::freemetab::{CommMonomial, CommPoly, LieMonomial, LiePoly, MultiDegree};
use crate::graph::{Graph, Vertex};
use crate::pcalg::PCAlgebra;

/// The monomial ideal generated by the interior products of all simple paths
/// from `xi` to `xj`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathIdeal {
    pub pair: (Vertex, Vertex),
    pub generators: Vec<CommMonomial>,
}

impl PathIdeal {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains_monomial(&self, m: &CommMonomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn contains(&self, f: &CommPoly) -> bool {
        f.monomials().all(|m| self.contains_monomial(m))
    }
}

impl fmt::Display for PathIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "0");
        }
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "{}", gens.join(", "))
    }
}

fn check_pair(alg: &PCAlgebra, i: Vertex, j: Vertex) -> Result<()> {
    let g = alg.graph();
    g.check_vertex(i)?;
    g.check_vertex(j)?;
    if i == j || g.has_edge(i, j) {
        return Err(Error::AdjacentPair(i, j));
    }
    Ok(())
}

/// Annihilator of `[xi, xj]` in the polynomial ring.
pub fn annihilator_generators(alg: &PCAlgebra, i: Vertex, j: Vertex) -> Result<PathIdeal> {
    check_pair(alg, i, j)?;
    let mut generators: Vec<CommMonomial> = alg
        .graph()
        .simple_paths(i, j)
        .iter()
        .map(|interior| CommMonomial::from_letters(interior))
        .collect();
    generators.sort();
    generators.dedup();
    Ok(PathIdeal { pair: (i, j), generators })
}

pub fn in_annihilator(alg: &PCAlgebra, i: Vertex, j: Vertex, f: &CommPoly) -> Result<bool> {
    alg.check_comm(f)?;
    Ok(annihilator_generators(alg, i, j)?.contains(f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralizerCase {
    Isolated,
    Endpoint,
    General,
}

impl fmt::Display for CentralizerCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CentralizerCase::Isolated => "isolated",
            CentralizerCase::Endpoint => "endpoint",
            CentralizerCase::General => "general",
        })
    }
}

/// The centralizer of a generator `x`: integer combinations of the `linear`
/// generators plus `[xi, xj].f_ij` for every `quadratic` pair, with `f_ij`
/// a polynomial not involving `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerDescription {
    pub target: Vertex,
    pub case: CentralizerCase,
    pub linear: Vec<Vertex>,
    pub quadratic: Vec<(Vertex, Vertex)>,
}

pub fn centralizer_description(alg: &PCAlgebra, x: Vertex) -> Result<CentralizerDescription> {
    let g = alg.graph();
    g.check_vertex(x)?;
    let nbrs = g.neighbors(x);
    let case = match nbrs.len() {
        0 => CentralizerCase::Isolated,
        1 => CentralizerCase::Endpoint,
        _ => CentralizerCase::General,
    };
    let mut linear: Vec<Vertex> = nbrs.to_vec();
    linear.push(x);
    linear.sort_unstable();
    let mut quadratic = Vec::new();
    if case == CentralizerCase::General {
        for (k, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[k + 1..] {
                quadratic.push((a, b));
            }
        }
    }
    Ok(CentralizerDescription { target: x, case, linear, quadratic })
}

impl CentralizerDescription {
    /// `Σ α_k x_k + Σ [x_i, x_j].f_ij` with `linear_coeffs` matching
    /// `self.linear` and `polys` matching `self.quadratic`.
    pub fn element(&self, alg: &PCAlgebra, linear_coeffs: &[BigInt], polys: &[CommPoly]) -> Result<LiePoly> {
        if linear_coeffs.len() != self.linear.len() || polys.len() != self.quadratic.len() {
            return Err(Error::InvalidInput("coefficient count does not match the description".into()));
        }
        let mut out = LiePoly::zero();
        for (&v, a) in self.linear.iter().zip(linear_coeffs) {
            out.add_term(LieMonomial::generator(v), a.clone());
        }
        for (&(i, j), f) in self.quadratic.iter().zip(polys) {
            if f.monomials().any(|m| m.letters().contains(&self.target)) {
                return Err(Error::InvalidInput(format!(
                    "f_{{{i},{j}}} involves x{}",
                    self.target
                )));
            }
            let w = alg.act(&LiePoly::term(LieMonomial::new(&[j, i]), 1), f)?;
            out = &out + &w;
        }
        Ok(alg.reduce(&out))
    }

    /// Elements of multidegree `d` that span the part of the centralizer in
    /// that component.
    pub fn spanning_elements(&self, alg: &PCAlgebra, d: &MultiDegree) -> Vec<LiePoly> {
        let n = alg.n();
        if d.total() == 1 {
            let v = d.support()[0];
            return if self.linear.contains(&v) { vec![LiePoly::generator(v)] } else { Vec::new() };
        }
        if d.get(self.target) > 0 {
            return Vec::new();
        }
        self.quadratic
            .iter()
            .filter_map(|&(i, j)| {
                let pair = MultiDegree::of_letters(n, &[i, j]);
                let rest = d.checked_sub(&pair)?;
                let f = CommPoly::term(CommMonomial::from_multidegree(&rest), 1);
                let u = LiePoly::term(LieMonomial::new(&[j, i]), 1);
                Some(alg.act(&u, &f).expect("u is a bracket"))
            })
            .collect()
    }
}

impl fmt::Display for CentralizerDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lin: Vec<String> = self.linear.iter().map(|v| format!("x{v}")).collect();
        writeln!(f, "case: {}", self.case)?;
        writeln!(f, "linear: {}", lin.join(" "))?;
        let quad: Vec<String> = self
            .quadratic
            .iter()
            .map(|(i, j)| format!("[x{j},x{i}]"))
            .collect();
        write!(f, "quadratic: {}", if quad.is_empty() { "none".to_string() } else { quad.join(" ") })?;
        if !self.quadratic.is_empty() {
            write!(f, " (times polynomials without x{})", self.target)?;
        }
        Ok(())
    }
}

/// Whether `[v, u] = 0`.
pub fn in_centralizer(alg: &PCAlgebra, u: &LiePoly, v: &LiePoly) -> bool {
    alg.bracket(v, u).is_zero()
}

/// For `c` in the derived subalgebra, `(c centralizes Σ α x, c centralizes
/// every x)`.
pub fn centralizer_intersection_check(
    alg: &PCAlgebra,
    combination: &[(Vertex, BigInt)],
    c: &LiePoly,
) -> Result<(bool, bool)> {
    if combination.is_empty() {
        return Err(Error::InvalidInput("empty linear combination".into()));
    }
    if combination.iter().any(|(_, a)| a.is_zero()) {
        return Err(Error::ZeroCoefficient);
    }
    if !c.is_derived() {
        return Err(Error::NotInDerivedSubalgebra);
    }
    alg.check_poly(c)?;
    let mut sum = LiePoly::zero();
    for (v, a) in combination {
        alg.graph().check_vertex(*v)?;
        sum.add_term(LieMonomial::generator(*v), a.clone());
    }
    let lhs = in_centralizer(alg, &sum, c);
    let rhs = combination
        .iter()
        .all(|(v, _)| in_centralizer(alg, &LiePoly::generator(*v), c));
    Ok((lhs, rhs))
}

/// One checked conjunct of an existential formula under a fixed assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjunct {
    pub expr: String,
    pub expected: bool,
    pub got: bool,
}

impl Conjunct {
    pub fn holds(&self) -> bool {
        self.expected == self.got
    }
}

impl fmt::Display for Conjunct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CONJUNCT {} EXPECTED {} GOT {}", self.expr, self.expected, self.got)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    /// Variable name and the generator assigned to it.
    pub assignment: Vec<(String, Vertex)>,
    pub conjuncts: Vec<Conjunct>,
}

impl WitnessReport {
    pub fn verified(&self) -> bool {
        self.conjuncts.iter().all(Conjunct::holds)
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let assign: Vec<String> = self.assignment.iter().map(|(n, v)| format!("{n}=x{v}")).collect();
        writeln!(f, "ASSIGN {}", assign.join(" "))?;
        for c in &self.conjuncts {
            writeln!(f, "{c}")?;
        }
        write!(f, "VERIFIED {}", self.verified())
    }
}

/// Checks `[w] = 0` or `[w] != 0` for a left-normed word of generators.
fn word_conjunct(alg: &PCAlgebra, word: &[Vertex], zero: bool) -> Conjunct {
    let letters: Vec<String> = word.iter().map(|v| format!("x{v}")).collect();
    let value = alg.reduce(&crate::freemetab::word(word));
    Conjunct {
        expr: format!("[{}]{}0", letters.join(","), if zero { "=" } else { "!=" }),
        expected: true,
        got: value.is_zero() == zero,
    }
}

fn require_tree(t: &Graph) -> Result<()> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    Ok(())
}

/// The formula `Φ(T)` under the assignment `z_i` = the non-endpoints in
/// order, `u_i`, `v_i` = the two smallest neighbors of `z_i`.
pub fn phi_formula_witness(t: &Graph) -> Result<WitnessReport> {
    require_tree(t)?;
    if t.n() < 2 {
        return Err(Error::TooSmall(t.n()));
    }
    let alg = PCAlgebra::new(t.clone());
    let z = t.classify_vertices().non_endpoints;
    if z.is_empty() {
        return Err(Error::NoNonEndpoint);
    }
    let uv: Vec<(Vertex, Vertex)> = z.iter().map(|&zi| (t.neighbors(zi)[0], t.neighbors(zi)[1])).collect();
    let mut assignment = Vec::new();
    for (k, (&zi, &(u, v))) in z.iter().zip(&uv).enumerate() {
        assignment.push((format!("z{}", k + 1), zi));
        assignment.push((format!("u{}", k + 1), u));
        assignment.push((format!("v{}", k + 1), v));
    }
    let mut conjuncts = Vec::new();
    for &(u, v) in &uv {
        conjuncts.push(word_conjunct(&alg, &[u, v], false));
    }
    for (&zi, &(u, v)) in z.iter().zip(&uv) {
        conjuncts.push(word_conjunct(&alg, &[u, v, zi], true));
    }
    for (i, &(u, v)) in uv.iter().enumerate() {
        for (j, &zj) in z.iter().enumerate() {
            if i != j {
                conjuncts.push(word_conjunct(&alg, &[u, v, zj], false));
            }
        }
    }
    for (i, &a) in z.iter().enumerate() {
        for &b in &z[i + 1..] {
            conjuncts.push(word_conjunct(&alg, &[a, b], t.has_edge(a, b)));
        }
    }
    Ok(WitnessReport { assignment, conjuncts })
}

/// An induced path `z1 - z2 - z3 - z4` with `z2`, `z3` non-endpoints (the
/// lexicographically smallest one) and the six (in)equalities it satisfies.
/// `None` when the tree has fewer than two non-endpoints.
pub fn two_nonendpoint_witness(t: &Graph) -> Result<Option<WitnessReport>> {
    require_tree(t)?;
    let mut best: Option<[Vertex; 4]> = None;
    for (a, b) in t.edges() {
        for (z2, z3) in [(a, b), (b, a)] {
            if t.degree(z2) < 2 || t.degree(z3) < 2 {
                continue;
            }
            let z1 = t.neighbors(z2).iter().copied().find(|&w| w != z3).expect("degree >= 2");
            let z4 = t.neighbors(z3).iter().copied().find(|&w| w != z2).expect("degree >= 2");
            let cand = [z1, z2, z3, z4];
            if best.is_none_or(|b| cand < b) {
                best = Some(cand);
            }
        }
    }
    let Some(z) = best else {
        return Ok(None);
    };
    let alg = PCAlgebra::new(t.clone());
    let assignment = z.iter().enumerate().map(|(k, &v)| (format!("v{}", k + 1), v)).collect();
    let conjuncts = vec![
        word_conjunct(&alg, &[z[0], z[1]], true),
        word_conjunct(&alg, &[z[1], z[2]], true),
        word_conjunct(&alg, &[z[2], z[3]], true),
        word_conjunct(&alg, &[z[0], z[2]], false),
        word_conjunct(&alg, &[z[0], z[3]], false),
        word_conjunct(&alg, &[z[1], z[3]], false),
    ];
    Ok(Some(WitnessReport { assignment, conjuncts }))
}
