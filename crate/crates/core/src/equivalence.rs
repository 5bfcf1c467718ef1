//! Universal equivalence of rings defined by trees: `M(X;T1)` and `M(Y;T2)`
//! are universally equivalent exactly when `T1*` and `T2*` are isomorphic.

use std::collections::HashMap;
use std::fmt;

use crate::error::Result;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    /// Canonical forms of `T1*` and `T2*`.
    pub certificate: (String, String),
    /// Canonical forms of `T1'` and `T2'`.
    pub t_prime: (String, String),
}

impl fmt::Display for EquivalenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.equivalent { "equivalent" } else { "inequivalent" })?;
        writeln!(f, "T1* {}", self.certificate.0)?;
        write!(f, "T2* {}", self.certificate.1)
    }
}

/// Canonical form of `T*`, the key the decider compares.
pub fn class_key(t: &Graph) -> Result<String> {
    t.t_star()?.graph.tree_canonical_form()
}

pub fn decide_universal_equivalence(t1: &Graph, t2: &Graph) -> Result<EquivalenceVerdict> {
    let s1 = class_key(t1)?;
    let s2 = class_key(t2)?;
    let p1 = t1.t_prime()?.graph.tree_canonical_form()?;
    let p2 = t2.t_prime()?.graph.tree_canonical_form()?;
    Ok(EquivalenceVerdict {
        equivalent: s1 == s2,
        certificate: (s1, s2),
        t_prime: (p1, p2),
    })
}

/// Partition of `trees` (by index) into universal-equivalence classes,
/// classes ordered by their first member.
pub fn equivalence_classes(trees: &[Graph]) -> Result<Vec<Vec<usize>>> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (k, t) in trees.iter().enumerate() {
        let key = class_key(t)?;
        let slot = *index.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(k);
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{labeled_trees, unlabeled_trees};
    use crate::error::Error;

    #[test]
    fn examples() {
        let leafy = Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (2, 5)]).unwrap();
        assert!(decide_universal_equivalence(&Graph::path(4), &leafy).unwrap().equivalent);
        let v = decide_universal_equivalence(&Graph::path(4), &Graph::path(5)).unwrap();
        assert!(!v.equivalent);
        assert_ne!(v.certificate.0, v.certificate.1);
        let v = decide_universal_equivalence(&Graph::path(2), &Graph::path(2)).unwrap();
        assert!(v.equivalent);
        assert_eq!(v.certificate.0, "empty");
    }

    #[test]
    fn errors() {
        assert_eq!(decide_universal_equivalence(&Graph::cycle(4), &Graph::path(4)), Err(Error::NotATree));
        assert_eq!(decide_universal_equivalence(&Graph::empty(1), &Graph::path(4)), Err(Error::TooSmall(1)));
        assert_eq!(decide_universal_equivalence(&Graph::empty(2), &Graph::path(2)), Err(Error::NotATree));
    }

    #[test]
    fn classes() {
        let four = unlabeled_trees(4);
        assert_eq!(equivalence_classes(&four).unwrap().len(), 2);
        assert_eq!(equivalence_classes(&[Graph::path(3)]).unwrap(), vec![vec![0]]);
        let small: Vec<Graph> = (2..=5).flat_map(labeled_trees).collect();
        let keys: Vec<String> = equivalence_classes(&small)
            .unwrap()
            .iter()
            .map(|c| class_key(&small[c[0]]).unwrap())
            .collect();
        assert_eq!(keys, vec!["empty", "()", "(())", "(()())"]);
    }
}
