use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{CommMonomial, LieMonomial, MultiDegree};
use crate::graph::Vertex;

/// Integer coefficients.
pub type Coeff = BigInt;

/// Finite integer linear combination of monomials with no zero coefficients.
/// Iteration goes from the greatest monomial to the smallest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Linear<M: Ord> {
    terms: BTreeMap<M, Coeff>,
}

/// Element of the free metabelian ring or of a partially commutative
/// quotient, written in the corresponding basis.
pub type LiePoly = Linear<LieMonomial>;

/// Commutative polynomial acting on the derived subalgebra.
pub type CommPoly = Linear<CommMonomial>;

impl<M: Ord> Default for Linear<M> {
    fn default() -> Self {
        Linear {
            terms: BTreeMap::new(),
        }
    }
}

impl<M: Ord + Clone> Linear<M> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(m: M, c: impl Into<Coeff>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: M, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn coeff(&self, m: &M) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms from greatest to smallest.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&M, &Coeff)> {
        self.terms.iter().rev()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &M> {
        self.terms.keys().rev()
    }

    /// Greatest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&M, &Coeff)> {
        self.terms.iter().next_back()
    }
}

impl<M: Ord + Clone> FromIterator<(M, Coeff)> for Linear<M> {
    fn from_iter<I: IntoIterator<Item = (M, Coeff)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }
}

impl<M: Ord + Clone> IntoIterator for Linear<M> {
    type Item = (M, Coeff);
    type IntoIter = std::iter::Rev<btree_map::IntoIter<M, Coeff>>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter().rev()
    }
}

impl<M: Ord + Clone> Add for &Linear<M> {
    type Output = Linear<M>;

    fn add(self, rhs: Self) -> Linear<M> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Coeff::one());
        out
    }
}

impl<M: Ord + Clone> Sub for &Linear<M> {
    type Output = Linear<M>;

    fn sub(self, rhs: Self) -> Linear<M> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Coeff::one());
        out
    }
}

impl<M: Ord + Clone> Neg for &Linear<M> {
    type Output = Linear<M>;

    fn neg(self) -> Linear<M> {
        self.scale(&-Coeff::one())
    }
}

impl LiePoly {
    pub fn generator(v: Vertex) -> Self {
        LiePoly::term(LieMonomial::generator(v), 1)
    }

    /// Every term has length at least 2.
    pub fn is_derived(&self) -> bool {
        self.monomials().all(|m| m.len() >= 2)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.monomials();
        match it.next() {
            None => true,
            Some(first) => {
                let mut key: Vec<Vertex> = first.letters().to_vec();
                key.sort_unstable();
                it.all(|m| {
                    let mut k: Vec<Vertex> = m.letters().to_vec();
                    k.sort_unstable();
                    k == key
                })
            }
        }
    }

    /// Splits into homogeneous components, greatest multidegree first.
    pub fn homogeneous_components(&self, n: usize) -> Vec<(MultiDegree, LiePoly)> {
        let mut parts: BTreeMap<(usize, MultiDegree), LiePoly> = BTreeMap::new();
        for (m, c) in self.iter() {
            parts
                .entry((m.len(), m.multidegree(n)))
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        parts.into_iter().rev().map(|((_, d), p)| (d, p)).collect()
    }

    /// Largest letter index occurring in the polynomial, or 0.
    pub fn max_vertex(&self) -> Vertex {
        self.monomials().map(LieMonomial::max_letter).max().unwrap_or(0)
    }
}

impl CommPoly {
    pub fn one() -> Self {
        CommPoly::term(CommMonomial::one(), 1)
    }

    pub fn variable(v: Vertex) -> Self {
        CommPoly::term(CommMonomial::from_letters(&[v]), 1)
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    pub fn max_vertex(&self) -> Vertex {
        self.monomials()
            .filter_map(|m| m.letters().last().copied())
            .max()
            .unwrap_or(0)
    }
}

/// Writes `c*m` terms joined by ` + ` / ` - `; unit coefficients are
/// omitted, and `unit` is how the monomial `1` is shown.
fn write_linear<M: Ord + Clone + fmt::Display>(
    p: &Linear<M>,
    f: &mut fmt::Formatter<'_>,
    is_unit: impl Fn(&M) -> bool,
) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (m, c)) in p.iter().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let a = c.abs();
        if is_unit(m) {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{m}")?;
        } else {
            write!(f, "{a}*{m}")?;
        }
    }
    Ok(())
}

impl fmt::Display for LiePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(self, f, |_| false)
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(self, f, |m| m.degree() == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_drops_terms() {
        let m = LieMonomial::new(&[4, 1]);
        let mut p = LiePoly::term(m.clone(), 3);
        p.add_term(m, Coeff::from(-3));
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn display_greatest_first() {
        let p: LiePoly = [
            (LieMonomial::new(&[2, 1]), Coeff::from(-1)),
            (LieMonomial::new(&[4, 1, 3]), Coeff::from(2)),
            (LieMonomial::generator(1), Coeff::from(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(p.to_string(), "2*[x4,x1,x3] - [x2,x1] + x1");
        assert_eq!((-&p).to_string(), "-2*[x4,x1,x3] + [x2,x1] - x1");
    }

    #[test]
    fn comm_display_and_product() {
        let f = &CommPoly::variable(1) + &CommPoly::one();
        let g = f.mul(&f);
        assert_eq!(g.to_string(), "x1^2 + 2*x1 + 1");
        assert_eq!(CommPoly::one().scale(&Coeff::from(-3)).to_string(), "-3");
    }

    #[test]
    fn components_split_by_degree() {
        let p: LiePoly = [
            (LieMonomial::new(&[2, 1]), Coeff::from(1)),
            (LieMonomial::new(&[3, 1]), Coeff::from(1)),
            (LieMonomial::generator(2), Coeff::from(1)),
        ]
        .into_iter()
        .collect();
        let parts = p.homogeneous_components(3);
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0].0, MultiDegree::from_counts(vec![1, 0, 1]));
        assert!(parts.iter().all(|(_, q)| q.is_homogeneous()));
        assert!(!p.is_homogeneous());
    }
}
