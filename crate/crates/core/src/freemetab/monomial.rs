use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::graph::Vertex;

pub(crate) type Letters = SmallVec<[Vertex; 8]>;

/// Occurrence count of every generator, indexed by `vertex - 1`.
///
/// Ordered by the last coordinate where two vectors differ: `δ > γ` iff
/// `δ_k > γ_k` for the largest `k` with `δ_k != γ_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiDegree(Vec<u32>);

impl MultiDegree {
    pub fn zero(n: usize) -> Self {
        MultiDegree(vec![0; n])
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        MultiDegree(counts)
    }

    pub fn of_letters(n: usize, letters: &[Vertex]) -> Self {
        let mut counts = vec![0; n];
        for &v in letters {
            counts[v as usize - 1] += 1;
        }
        MultiDegree(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, v: Vertex) -> u32 {
        self.0[v as usize - 1]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Vertices with a positive count, in increasing order.
    pub fn support(&self) -> Vec<Vertex> {
        (1..=self.0.len() as Vertex)
            .filter(|&v| self.get(v) > 0)
            .collect()
    }

    /// The letters of the degree as a sorted multiset.
    pub fn letters(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.total() as usize);
        for (k, &c) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat_n(k as Vertex + 1, c as usize));
        }
        out
    }

    pub fn plus_vertex(&self, v: Vertex) -> Self {
        let mut counts = self.0.clone();
        counts[v as usize - 1] += 1;
        MultiDegree(counts)
    }

    /// `self - other` if non-negative in every coordinate.
    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(MultiDegree)
    }

    /// Every multidegree on `n` generators with total in `1..=max_total`,
    /// ordered by total and then by the multidegree order.
    pub fn all_up_to(n: usize, max_total: u32) -> Vec<MultiDegree> {
        let mut out = Vec::new();
        for total in 1..=max_total {
            let mut level = Vec::new();
            let mut counts = vec![0u32; n];
            compositions(&mut counts, 0, total, &mut level);
            level.sort();
            out.extend(level);
        }
        out
    }
}

fn compositions(counts: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<MultiDegree>) {
    if pos + 1 == counts.len() {
        counts[pos] = left;
        out.push(MultiDegree(counts.clone()));
        counts[pos] = 0;
        return;
    }
    if counts.is_empty() {
        return;
    }
    for c in 0..=left {
        counts[pos] = c;
        compositions(counts, pos + 1, left - c, out);
    }
    counts[pos] = 0;
}

impl Ord for MultiDegree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for MultiDegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Compares two letter multisets of equal size by the multidegree order.
/// Sorting both descending turns the rule into a plain lexicographic comparison.
fn cmp_letter_multisets(a: &[Vertex], b: &[Vertex]) -> Ordering {
    let mut a: Letters = a.iter().copied().collect();
    let mut b: Letters = b.iter().copied().collect();
    a.sort_unstable_by(|x, y| y.cmp(x));
    b.sort_unstable_by(|x, y| y.cmp(x));
    a.cmp(&b)
}

/// Left-normed Lie monomial `[x_{i1}, x_{i2}, …, x_{im}]`, `m >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieMonomial(pub(crate) Letters);

impl LieMonomial {
    pub fn new(letters: &[Vertex]) -> Self {
        assert!(!letters.is_empty(), "a Lie monomial has at least one letter");
        LieMonomial(letters.iter().copied().collect())
    }

    pub fn generator(v: Vertex) -> Self {
        LieMonomial(smallvec::smallvec![v])
    }

    pub fn letters(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Vertex {
        self.0[0]
    }

    pub fn multidegree(&self, n: usize) -> MultiDegree {
        MultiDegree::of_letters(n, &self.0)
    }

    pub fn max_letter(&self) -> Vertex {
        *self.0.iter().max().expect("non-empty")
    }

    /// Shape of the free basis: a generator, or `i2 < i1` and
    /// `i2 <= i3 <= … <= im`.
    pub fn is_basis_shape(&self) -> bool {
        match self.0.len() {
            0 => false,
            1 => true,
            _ => {
                let w = &self.0;
                w[1] < w[0] && w[1..].windows(2).all(|p| p[0] <= p[1])
            }
        }
    }
}

/// Standard order. Monomials of different length compare by length first;
/// equal lengths compare by multidegree, then lexicographically.
impl Ord for LieMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| cmp_letter_multisets(&self.0, &other.0))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for LieMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LieMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [v] = self.0[..] {
            return write!(f, "x{v}");
        }
        write!(f, "[")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{v}")?;
        }
        write!(f, "]")
    }
}

/// Commutative monomial, stored as its sorted multiset of letters.
/// The empty multiset is the unit `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CommMonomial(pub(crate) Letters);

impl CommMonomial {
    pub fn one() -> Self {
        CommMonomial::default()
    }

    pub fn from_letters(letters: &[Vertex]) -> Self {
        let mut l: Letters = letters.iter().copied().collect();
        l.sort_unstable();
        CommMonomial(l)
    }

    pub fn from_multidegree(d: &MultiDegree) -> Self {
        CommMonomial(d.letters().into_iter().collect())
    }

    pub fn letters(&self) -> &[Vertex] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn multidegree(&self, n: usize) -> MultiDegree {
        MultiDegree::of_letters(n, &self.0)
    }

    pub fn mul(&self, other: &CommMonomial) -> CommMonomial {
        let mut l = self.0.clone();
        l.extend_from_slice(&other.0);
        l.sort_unstable();
        CommMonomial(l)
    }

    /// Multiset inclusion.
    pub fn divides(&self, other: &CommMonomial) -> bool {
        let mut rest = other.0.iter().peekable();
        'outer: for &v in &self.0 {
            while let Some(&&w) = rest.peek() {
                rest.next();
                match w.cmp(&v) {
                    Ordering::Less => continue,
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// Exponent pairs `(vertex, exponent)` in increasing vertex order.
    pub fn exponents(&self) -> Vec<(Vertex, u32)> {
        let mut out: Vec<(Vertex, u32)> = Vec::new();
        for &v in &self.0 {
            match out.last_mut() {
                Some((w, e)) if *w == v => *e += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }
}

/// Total degree first, then the multidegree order.
impl Ord for CommMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for CommMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CommMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.exponents().into_iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multidegree_order() {
        let a = MultiDegree::from_counts(vec![1, 0, 1]);
        let b = MultiDegree::from_counts(vec![0, 2, 0]);
        assert!(a > b);
        assert_eq!(a.cmp(&a), Ordering::Equal);
        let ma = LieMonomial::new(&[3, 1]);
        let mb = LieMonomial::new(&[2, 2]);
        assert!(ma > mb);
    }

    #[test]
    fn lexicographic_tie_break() {
        let u = LieMonomial::new(&[2, 1, 3]);
        let v = LieMonomial::new(&[3, 1, 2]);
        assert!(v > u);
        assert_eq!(u.cmp(&u.clone()), Ordering::Equal);
    }

    #[test]
    fn longer_monomials_are_greater() {
        assert!(LieMonomial::new(&[2, 1, 1]) > LieMonomial::new(&[5, 4]));
    }

    #[test]
    fn basis_shape() {
        assert!(LieMonomial::new(&[3]).is_basis_shape());
        assert!(LieMonomial::new(&[2, 1, 1, 3]).is_basis_shape());
        assert!(!LieMonomial::new(&[1, 1]).is_basis_shape());
        assert!(!LieMonomial::new(&[1, 2]).is_basis_shape());
        assert!(!LieMonomial::new(&[3, 1, 4, 2]).is_basis_shape());
        assert!(!LieMonomial::new(&[3, 2, 1]).is_basis_shape());
    }

    #[test]
    fn comm_monomials() {
        let a = CommMonomial::from_letters(&[3, 1, 1]);
        assert_eq!(a.to_string(), "x1^2*x3");
        assert_eq!(CommMonomial::one().to_string(), "1");
        assert!(CommMonomial::from_letters(&[1, 3]).divides(&a));
        assert!(!CommMonomial::from_letters(&[3, 3]).divides(&a));
        assert!(!CommMonomial::from_letters(&[2]).divides(&a));
        assert!(CommMonomial::one().divides(&a));
        assert_eq!(a.exponents(), vec![(1, 2), (3, 1)]);
        assert!(CommMonomial::from_letters(&[3]) > CommMonomial::from_letters(&[2]));
        assert!(CommMonomial::from_letters(&[1, 1]) > CommMonomial::from_letters(&[3]));
    }

    #[test]
    fn multidegree_enumeration() {
        let all = MultiDegree::all_up_to(3, 2);
        assert_eq!(all.len(), 3 + 6);
        assert!(all.windows(2).all(|w| w[0].total() < w[1].total() || w[0] < w[1]));
    }
}
