//! Brute-force model of one homogeneous component of `M(X;G)`.
//!
//! The component of multidegree `δ` is the quotient of the free component
//! (spanned by all basis-shaped words with letters `δ`) by the integer span of
//! the relations `[xi, xj].f` for edges `{xi, xj}` and commutative monomials
//! `f` of degree `δ - ei - ej`. Nothing here looks at connected components or
//! class representatives, so it can be used to check [`crate::pcalg`].

pub mod intmat;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freemetab::{self, CommMonomial, LieMonomial, LiePoly, MultiDegree};
use crate::graph::{Graph, Vertex};
pub use intmat::{IntMatrix, Smith};

#[derive(Debug, Clone)]
enum CoordinateMap {
    /// Every Hermite pivot is 1; the non-pivot ambient monomials form a basis.
    Pivots { free: Vec<usize> },
    /// Coordinates are the trailing entries of `v V`.
    Smith,
}

#[derive(Debug, Clone)]
pub struct QuotientComponent {
    delta: MultiDegree,
    ambient: Vec<LieMonomial>,
    index: HashMap<LieMonomial, usize>,
    relations: IntMatrix,
    hermite: IntMatrix,
    pivots: Vec<usize>,
    smith: Smith,
    map: CoordinateMap,
}

/// Distinct permutations of a sorted multiset.
fn permutations(sorted: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

impl QuotientComponent {
    pub fn build(g: &Graph, delta: &MultiDegree) -> QuotientComponent {
        assert_eq!(delta.n(), g.n(), "multidegree length must match the graph");
        assert!(delta.total() >= 1, "empty multidegree");
        let letters = delta.letters();
        let mut ambient: Vec<LieMonomial> = if letters.len() == 1 {
            vec![LieMonomial::generator(letters[0])]
        } else {
            permutations(&letters)
                .into_iter()
                .map(|w| LieMonomial::new(&w))
                .filter(LieMonomial::is_basis_shape)
                .collect()
        };
        ambient.sort_by(|a, b| b.cmp(a));
        let index: HashMap<LieMonomial, usize> =
            ambient.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();

        let mut rows = Vec::new();
        for (i, j) in g.edges() {
            let mut pair = MultiDegree::zero(g.n());
            pair = pair.plus_vertex(i).plus_vertex(j);
            let Some(rest) = delta.checked_sub(&pair) else {
                continue;
            };
            let mut word = vec![j, i];
            word.extend(rest.letters());
            let row = vector(&index, ambient.len(), &freemetab::word(&word));
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
        let relations = IntMatrix::from_rows(ambient.len(), rows);
        let (hermite, pivots) = relations.hermite();
        let smith = relations.smith();
        assert!(
            smith.is_free(),
            "component {delta} of the graph with edges {:?} has torsion: {:?}",
            g.edges(),
            smith.diagonal
        );
        let map = if (0..hermite.rows()).all(|k| hermite[(k, pivots[k])].is_one()) {
            let free = (0..ambient.len()).filter(|c| !pivots.contains(c)).collect();
            CoordinateMap::Pivots { free }
        } else {
            CoordinateMap::Smith
        };
        QuotientComponent {
            delta: delta.clone(),
            ambient,
            index,
            relations,
            hermite,
            pivots,
            smith,
            map,
        }
    }

    pub fn multidegree(&self) -> &MultiDegree {
        &self.delta
    }

    /// Free basis monomials of the component, greatest first.
    pub fn ambient(&self) -> &[LieMonomial] {
        &self.ambient
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn hermite(&self) -> (&IntMatrix, &[usize]) {
        (&self.hermite, &self.pivots)
    }

    pub fn elementary_divisors(&self) -> &[BigInt] {
        &self.smith.diagonal
    }

    /// Rank of the quotient.
    pub fn rank(&self) -> usize {
        self.ambient.len() - self.smith.rank()
    }

    /// Whether the chosen quotient basis consists of ambient monomials.
    pub fn uses_pivot_basis(&self) -> bool {
        matches!(self.map, CoordinateMap::Pivots { .. })
    }

    fn check(&self, p: &LiePoly) -> Result<()> {
        let n = self.delta.n();
        for m in p.monomials() {
            if m.max_letter() as usize > n || m.multidegree(n) != self.delta {
                return Err(Error::DegreeMismatch);
            }
        }
        Ok(())
    }

    /// Coefficient vector of `p` over the ambient monomials.
    pub fn ambient_vector(&self, p: &LiePoly) -> Result<Vec<BigInt>> {
        self.check(p)?;
        let mut normal = LiePoly::zero();
        for (m, c) in p.iter() {
            if m.is_basis_shape() {
                normal.add_term(m.clone(), c.clone());
            } else {
                normal.add_scaled(&freemetab::word(m.letters()), c);
            }
        }
        Ok(vector(&self.index, self.ambient.len(), &normal))
    }

    /// Coordinates of the image of `p` in the quotient basis.
    pub fn coordinates(&self, p: &LiePoly) -> Result<Vec<BigInt>> {
        let v = self.ambient_vector(p)?;
        Ok(self.reduce_vector(v))
    }

    fn reduce_vector(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        match &self.map {
            CoordinateMap::Pivots { free } => {
                for (k, &p) in self.pivots.iter().enumerate() {
                    let q = v[p].clone();
                    if q.is_zero() {
                        continue;
                    }
                    for (x, h) in v.iter_mut().zip(self.hermite.row(k)) {
                        *x -= &q * h;
                    }
                }
                free.iter().map(|&c| v[c].clone()).collect()
            }
            CoordinateMap::Smith => {
                let w = self.smith.v.left_mul(&v);
                w[self.smith.rank()..].to_vec()
            }
        }
    }

    /// Free-algebra elements whose images form the quotient basis.
    pub fn basis_lifts(&self) -> Vec<LiePoly> {
        match &self.map {
            CoordinateMap::Pivots { free } => free
                .iter()
                .map(|&c| LiePoly::term(self.ambient[c].clone(), 1))
                .collect(),
            CoordinateMap::Smith => (self.smith.rank()..self.ambient.len())
                .map(|k| self.poly_of(self.smith.v_inv.row(k)))
                .collect(),
        }
    }

    /// Free-algebra element with the given quotient coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> LiePoly {
        let mut out = LiePoly::zero();
        for (b, c) in self.basis_lifts().iter().zip(coords) {
            out.add_scaled(b, c);
        }
        out
    }

    fn poly_of(&self, v: &[BigInt]) -> LiePoly {
        self.ambient
            .iter()
            .zip(v)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }

    /// Determinant of the coordinate matrix of `elements`, `None` unless
    /// their number equals the rank. `±1` certifies a basis.
    pub fn basis_determinant(&self, elements: &[LiePoly]) -> Result<Option<BigInt>> {
        if elements.len() != self.rank() {
            return Ok(None);
        }
        let rows = elements
            .iter()
            .map(|p| self.coordinates(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(IntMatrix::from_rows(self.rank(), rows).det()))
    }
}

fn vector(index: &HashMap<LieMonomial, usize>, len: usize, p: &LiePoly) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    for (m, c) in p.iter() {
        let k = index[m];
        v[k] += c;
    }
    v
}

/// Components of one graph, built on demand.
#[derive(Debug, Clone)]
pub struct Oracle {
    graph: Graph,
    cache: HashMap<MultiDegree, QuotientComponent>,
}

impl Oracle {
    pub fn new(graph: Graph) -> Self {
        Oracle {
            graph,
            cache: HashMap::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn component(&mut self, delta: &MultiDegree) -> &QuotientComponent {
        let g = &self.graph;
        self.cache
            .entry(delta.clone())
            .or_insert_with(|| QuotientComponent::build(g, delta))
    }

    /// Whether `p` is zero in `M(X;G)`, component by component.
    pub fn is_zero(&mut self, p: &LiePoly) -> bool {
        let n = self.graph.n();
        p.homogeneous_components(n).into_iter().all(|(d, q)| {
            self.component(&d)
                .coordinates(&q)
                .expect("component matches its multidegree")
                .iter()
                .all(Zero::is_zero)
        })
    }

    pub fn equal(&mut self, p: &LiePoly, q: &LiePoly) -> bool {
        self.is_zero(&(p - q))
    }

    /// Integer kernel of `c -> c.f` from the component `source` to the
    /// component `target`, in source coordinates.
    pub fn kernel_of_action(
        &mut self,
        source: &MultiDegree,
        target: &MultiDegree,
        f: &CommMonomial,
    ) -> Result<Vec<Vec<BigInt>>> {
        let expected = MultiDegree::of_letters(self.graph.n(), &[source.letters(), f.letters().to_vec()].concat());
        if &expected != target {
            return Err(Error::DegreeMismatch);
        }
        let fp = crate::freemetab::CommPoly::term(f.clone(), 1);
        let lifts = self.component(source).basis_lifts();
        let images = lifts
            .iter()
            .map(|b| freemetab::act(b, &fp))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.kernel_of_images(&images, std::slice::from_ref(target)))
    }

    /// Integer kernel of `c -> [c, v]` on the component `source`, in source
    /// coordinates. `v` may span several multidegrees.
    pub fn kernel_of_bracket(&mut self, source: &MultiDegree, v: &LiePoly) -> Vec<Vec<BigInt>> {
        let n = self.graph.n();
        let mut targets: Vec<MultiDegree> = v
            .monomials()
            .map(|m| {
                let mut letters = source.letters();
                letters.extend_from_slice(m.letters());
                MultiDegree::of_letters(n, &letters)
            })
            .collect();
        targets.sort();
        targets.dedup();
        let lifts = self.component(source).basis_lifts();
        let images: Vec<LiePoly> = lifts.iter().map(|b| freemetab::bracket(b, v)).collect();
        self.kernel_of_images(&images, &targets)
    }

    fn kernel_of_images(&mut self, images: &[LiePoly], targets: &[MultiDegree]) -> Vec<Vec<BigInt>> {
        let n = self.graph.n();
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); images.len()];
        for d in targets {
            let qc = self.component(d).clone();
            for (row, img) in rows.iter_mut().zip(images) {
                let part: LiePoly = img
                    .iter()
                    .filter(|(m, _)| &m.multidegree(n) == d)
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect();
                row.extend(qc.coordinates(&part).expect("part has the target multidegree"));
            }
        }
        let cols = rows.first().map_or(0, Vec::len);
        IntMatrix::from_rows(cols, rows).left_kernel()
    }

    /// Free-algebra element with the given coordinates in the component `d`.
    pub fn lift(&mut self, d: &MultiDegree, coords: &[BigInt]) -> LiePoly {
        self.component(d).lift(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcalg::PCAlgebra;

    fn md(c: &[u32]) -> MultiDegree {
        MultiDegree::from_counts(c.to_vec())
    }

    fn mono(l: &[Vertex]) -> LiePoly {
        LiePoly::term(LieMonomial::new(l), 1)
    }

    #[test]
    fn ranks() {
        assert_eq!(QuotientComponent::build(&Graph::empty(2), &md(&[1, 1])).rank(), 1);
        assert_eq!(QuotientComponent::build(&Graph::path(2), &md(&[1, 1])).rank(), 0);
        assert_eq!(QuotientComponent::build(&Graph::path(4), &md(&[1, 0, 1, 1])).rank(), 1);
        assert_eq!(QuotientComponent::build(&Graph::empty(3), &md(&[1, 1, 1])).rank(), 2);
        assert_eq!(QuotientComponent::build(&Graph::empty(3), &md(&[2, 0, 0])).rank(), 0);
        assert_eq!(QuotientComponent::build(&Graph::empty(3), &md(&[0, 1, 0])).rank(), 1);
    }

    #[test]
    fn coordinates_identify_equal_classes() {
        let qc = QuotientComponent::build(&Graph::path(4), &md(&[1, 0, 1, 1]));
        let a = qc.coordinates(&mono(&[3, 1, 4])).unwrap();
        let b = qc.coordinates(&mono(&[4, 1, 3])).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().any(|x| !x.is_zero()));
        assert!(qc.coordinates(&LiePoly::zero()).unwrap().iter().all(Zero::is_zero));
        assert_eq!(qc.coordinates(&mono(&[2, 1])), Err(Error::DegreeMismatch));

        let qc = QuotientComponent::build(&Graph::path(2), &md(&[1, 1]));
        assert!(qc.coordinates(&mono(&[2, 1])).unwrap().is_empty());
    }

    #[test]
    fn kernels() {
        let mut free = Oracle::new(Graph::empty(2));
        let k = free
            .kernel_of_action(&md(&[1, 1]), &md(&[2, 1]), &CommMonomial::from_letters(&[1]))
            .unwrap();
        assert!(k.is_empty());
        assert_eq!(
            free.kernel_of_action(&md(&[1, 1]), &md(&[1, 1]), &CommMonomial::from_letters(&[1])),
            Err(Error::DegreeMismatch)
        );

        let mut star = Oracle::new(Graph::star(3));
        let k = star.kernel_of_bracket(&md(&[1, 1, 0, 0]), &LiePoly::generator(4));
        assert_eq!(k.len(), 1);
        let elem = star.lift(&md(&[1, 1, 0, 0]), &k[0]);
        let alg = PCAlgebra::new(Graph::star(3));
        assert_eq!(alg.reduce(&elem).len(), 1);
        assert!(star.equal(&elem, &mono(&[2, 1])) || star.equal(&elem, &-&mono(&[2, 1])));

        let mut p4 = Oracle::new(Graph::path(4));
        let v = &LiePoly::generator(2) + &LiePoly::generator(3);
        for d in MultiDegree::all_up_to(4, 4).iter().filter(|d| d.total() >= 2) {
            assert!(p4.kernel_of_bracket(d, &v).is_empty(), "{d}");
        }
    }

    #[test]
    fn smith_coordinates_match_pivot_coordinates() {
        let g = Graph::cycle(4);
        for d in MultiDegree::all_up_to(4, 5) {
            let pivot = QuotientComponent::build(&g, &d);
            let mut smith = pivot.clone();
            smith.map = CoordinateMap::Smith;
            for (k, b) in smith.basis_lifts().iter().enumerate() {
                let mut e = vec![BigInt::zero(); smith.rank()];
                e[k] = BigInt::one();
                assert_eq!(smith.coordinates(b).unwrap(), e);
            }
            // both maps have the same kernel on every ambient monomial pair
            for a in pivot.ambient() {
                for b in pivot.ambient() {
                    let diff = &LiePoly::term(a.clone(), 1) - &LiePoly::term(b.clone(), 1);
                    let z1 = pivot.coordinates(&diff).unwrap().iter().all(Zero::is_zero);
                    let z2 = smith.coordinates(&diff).unwrap().iter().all(Zero::is_zero);
                    assert_eq!(z1, z2);
                }
            }
        }
    }

    #[test]
    fn multiset_permutations() {
        assert_eq!(permutations(&[1, 1, 2]).len(), 3);
        assert_eq!(permutations(&[1, 2, 3]).len(), 6);
    }
}
