//! Lattice structure on a finite poset.
//!
//! A finite poset is a lattice iff it has a top, a bottom and binary meets
//! and joins; finite lattices are automatically complete. `Lattice` wraps a
//! poset with precomputed meet/join tables; querying meets or joins on a
//! non-lattice is rejected at construction.

use crate::bits::BitSet;
use crate::poset::Poset;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("not a lattice: {0}")]
    NotALattice(String),
}

#[derive(Debug, Clone)]
pub struct Lattice {
    poset: Arc<Poset>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    top: usize,
    bottom: usize,
}

impl Lattice {
    pub fn new(poset: Arc<Poset>) -> Result<Lattice, LatticeError> {
        let n = poset.len();
        if n == 0 {
            return Err(LatticeError::NotALattice("empty poset".into()));
        }
        let top = poset
            .top()
            .ok_or_else(|| LatticeError::NotALattice("no top element".into()))?;
        let bottom = poset
            .bottom()
            .ok_or_else(|| LatticeError::NotALattice("no bottom element".into()))?;
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let pair = BitSet::from_indices(n, [i, j]);
                meet[i][j] = poset.meet_of(&pair).ok_or_else(|| {
                    LatticeError::NotALattice(format!(
                        "{} and {} have no meet",
                        poset.label(i),
                        poset.label(j)
                    ))
                })?;
                join[i][j] = poset.join_of(&pair).ok_or_else(|| {
                    LatticeError::NotALattice(format!(
                        "{} and {} have no join",
                        poset.label(i),
                        poset.label(j)
                    ))
                })?;
            }
        }
        Ok(Lattice { poset, meet, join, top, bottom })
    }

    pub fn is_lattice(poset: &Poset) -> bool {
        Lattice::new(Arc::new(poset.clone())).is_ok()
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Meet of a subset; the empty meet is the top element.
    pub fn meet_of(&self, set: &BitSet) -> usize {
        set.iter().fold(self.top, |acc, i| self.meet[acc][i])
    }

    /// Join of a subset; the empty join is the bottom element.
    pub fn join_of(&self, set: &BitSet) -> usize {
        set.iter().fold(self.bottom, |acc, i| self.join[acc][i])
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// A triple `(a, b, c)` with `a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c)`, if any.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.meet[a][self.join[b][c]];
                    let rhs = self.join[self.meet[a][b]][self.meet[a][c]];
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Join-irreducible elements: non-bottom elements that are not the join
    /// of the elements strictly below them.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| {
                if x == self.bottom {
                    return false;
                }
                let below = BitSet::from_indices(
                    self.len(),
                    (0..self.len()).filter(|&y| self.poset.lt(y, x)),
                );
                self.join_of(&below) != x
            })
            .collect()
    }
}

/// The classic five-element non-distributive lattices, used as negative
/// controls throughout the test suites.
pub fn diamond_m3() -> Poset {
    Poset::new(
        vec!["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
    .unwrap()
}

pub fn pentagon_n5() -> Poset {
    Poset::new(
        vec!["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("b", "c"), ("a", "1"), ("c", "1")],
    )
    .unwrap()
}

/// The Boolean square 2².
pub fn boolean_square() -> Poset {
    Poset::new(
        vec!["0", "a", "b", "1"],
        &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
    )
    .unwrap()
}
