//! Finite partially ordered sets.
//!
//! A `Poset` stores its order relation densely: `up[i]` is the bit set of all
//! `j` with `i ≤ j`. Construction from generating pairs takes the
//! reflexive-transitive closure and rejects cycles (antisymmetry violations)
//! with the offending cycle. All values are immutable after construction and
//! all operations here are pure.

use crate::bits::BitSet;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("antisymmetry violated by cycle: {}", .0.join(" ≤ "))]
    Cycle(Vec<String>),
    #[error("relation is not {0}")]
    InvalidRelation(&'static str),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    labels: Vec<String>,
    up: Vec<BitSet>,
}

impl Poset {
    /// Builds a poset from labels and generating `(below, above)` pairs.
    /// The reflexive-transitive closure is applied; a cycle through distinct
    /// elements is an antisymmetry violation and is rejected.
    pub fn new<S: Into<String>>(
        labels: Vec<S>,
        pairs: &[(&str, &str)],
    ) -> Result<Poset, PosetError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let mut up = vec![BitSet::empty(n); n];
        for i in 0..n {
            up[i].insert(i);
        }
        for (a, b) in pairs {
            let i = *index
                .get(*a)
                .ok_or_else(|| PosetError::UnknownLabel((*a).to_string()))?;
            let j = *index
                .get(*b)
                .ok_or_else(|| PosetError::UnknownLabel((*b).to_string()))?;
            up[i].insert(j);
        }
        transitive_close(&mut up);
        check_antisymmetry(&labels, &up)?;
        Ok(Poset { labels, up })
    }

    /// Wraps an already reflexive-transitive-antisymmetric relation.
    /// Panics (debug) if the invariants do not hold; use only on relations
    /// produced by code that maintains them.
    pub(crate) fn from_up_rows(labels: Vec<String>, up: Vec<BitSet>) -> Poset {
        debug_assert_eq!(labels.len(), up.len());
        debug_assert!(is_reflexive(&up) && is_transitive(&up), "invalid order relation");
        debug_assert!(check_antisymmetry(&labels, &up).is_ok());
        Poset { labels, up }
    }

    pub fn chain(n: usize) -> Poset {
        let labels = default_labels(n);
        let up = (0..n)
            .map(|i| BitSet::from_indices(n, i..n))
            .collect();
        Poset { labels, up }
    }

    pub fn antichain(n: usize) -> Poset {
        let labels = default_labels(n);
        let up = (0..n).map(|i| BitSet::singleton(n, i)).collect();
        Poset { labels, up }
    }

    pub fn empty() -> Poset {
        Poset { labels: vec![], up: vec![] }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    /// `{ j | i ≤ j }`
    pub fn up_set(&self, i: usize) -> &BitSet {
        &self.up[i]
    }

    /// `{ j | j ≤ i }`
    pub fn down_set(&self, i: usize) -> BitSet {
        BitSet::from_indices(self.len(), (0..self.len()).filter(|&j| self.le(j, i)))
    }

    pub fn up_closure(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::empty(self.len());
        for i in set.iter() {
            out.union_with(&self.up[i]);
        }
        out
    }

    pub fn down_closure(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::empty(self.len());
        for j in 0..self.len() {
            if self.up[j].intersects(set) {
                out.insert(j);
            }
        }
        out
    }

    pub fn is_up_set(&self, set: &BitSet) -> bool {
        set.iter().all(|i| self.up[i].is_subset(set))
    }

    pub fn is_down_set(&self, set: &BitSet) -> bool {
        (0..self.len()).all(|j| !self.up[j].intersects(set) || set.contains(j))
    }

    pub fn upper_bounds(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.len());
        for i in set.iter() {
            out.intersect_with(&self.up[i]);
        }
        out
    }

    pub fn lower_bounds(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&j| set.iter().all(|i| self.le(j, i))),
        )
    }

    /// Greatest element of `set`, if it has one.
    pub fn maximum_of(&self, set: &BitSet) -> Option<usize> {
        set.iter().find(|&m| set.iter().all(|i| self.le(i, m)))
    }

    pub fn minimum_of(&self, set: &BitSet) -> Option<usize> {
        set.iter().find(|&m| set.iter().all(|i| self.le(m, i)))
    }

    /// Least upper bound of `set`, if it exists.
    pub fn join_of(&self, set: &BitSet) -> Option<usize> {
        self.minimum_of(&self.upper_bounds(set))
    }

    pub fn meet_of(&self, set: &BitSet) -> Option<usize> {
        self.maximum_of(&self.lower_bounds(set))
    }

    pub fn top(&self) -> Option<usize> {
        self.maximum_of(&BitSet::full(self.len()))
    }

    pub fn bottom(&self) -> Option<usize> {
        self.minimum_of(&BitSet::full(self.len()))
    }

    pub fn maximal_elements(&self, set: &BitSet) -> Vec<usize> {
        set.iter()
            .filter(|&i| set.iter().all(|j| !self.lt(i, j)))
            .collect()
    }

    /// Nonempty and every pair has an upper bound inside the set.
    pub fn is_directed(&self, set: &BitSet) -> bool {
        if set.is_empty() {
            return false;
        }
        set.iter().all(|i| {
            set.iter()
                .all(|j| set.iter().any(|z| self.le(i, z) && self.le(j, z)))
        })
    }

    /// Indices in an order compatible with ≤ (minimal elements first).
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut out = Vec::with_capacity(n);
        let mut placed = BitSet::empty(n);
        while out.len() < n {
            for i in 0..n {
                if !placed.contains(i)
                    && (0..n).all(|j| placed.contains(j) || !self.lt(j, i))
                {
                    placed.insert(i);
                    out.push(i);
                }
            }
        }
        out
    }

    pub fn dual(&self) -> Poset {
        let n = self.len();
        let up = (0..n)
            .map(|i| BitSet::from_indices(n, (0..n).filter(|&j| self.le(j, i))))
            .collect();
        Poset { labels: self.labels.clone(), up }
    }

    /// Full sub-poset on the given indices (in the order listed), keeping labels.
    pub fn restrict(&self, indices: &[usize]) -> Poset {
        let n = indices.len();
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let up = indices
            .iter()
            .map(|&i| {
                BitSet::from_indices(
                    n,
                    indices
                        .iter()
                        .enumerate()
                        .filter(|(_, &j)| self.le(i, j))
                        .map(|(k, _)| k),
                )
            })
            .collect();
        Poset { labels, up }
    }

    /// Streams every up-set of the poset. Returns false if the visitor
    /// aborted the enumeration.
    pub fn for_each_up_set(&self, mut f: impl FnMut(&BitSet) -> bool) -> bool {
        let order = self.linear_extension();
        let n = self.len();
        let mut inside = BitSet::empty(n);
        let mut outside = BitSet::empty(n);
        self.up_sets_rec(&order, 0, &mut inside, &mut outside, &mut f)
    }

    fn up_sets_rec(
        &self,
        order: &[usize],
        pos: usize,
        inside: &mut BitSet,
        outside: &mut BitSet,
        f: &mut impl FnMut(&BitSet) -> bool,
    ) -> bool {
        // skip elements already forced
        let mut pos = pos;
        while pos < order.len() {
            let x = order[pos];
            if inside.contains(x) || outside.contains(x) {
                pos += 1;
            } else {
                break;
            }
        }
        if pos == order.len() {
            return f(inside);
        }
        let x = order[pos];
        // branch: x outside the up-set forces everything below x outside
        let forced_out = self.down_set(x);
        if !forced_out.intersects(inside) {
            let saved = outside.clone();
            outside.union_with(&forced_out);
            if !self.up_sets_rec(order, pos + 1, inside, outside, f) {
                return false;
            }
            *outside = saved;
        }
        // branch: x inside forces everything above x inside
        let forced_in = self.up_set(x).clone();
        if !forced_in.intersects(outside) {
            let saved = inside.clone();
            inside.union_with(&forced_in);
            if !self.up_sets_rec(order, pos + 1, inside, outside, f) {
                return false;
            }
            *inside = saved;
        }
        true
    }

    /// All up-sets, sorted canonically.
    pub fn all_up_sets(&self) -> Vec<BitSet> {
        let mut out = Vec::new();
        self.for_each_up_set(|s| {
            out.push(s.clone());
            true
        });
        out.sort();
        out
    }

    pub fn all_down_sets(&self) -> Vec<BitSet> {
        self.dual().all_up_sets()
    }

    pub fn for_each_down_set(&self, f: impl FnMut(&BitSet) -> bool) -> bool {
        self.dual().for_each_up_set(f)
    }
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset[")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, " |")?;
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j && self.le(i, j) {
                    write!(f, " {}≤{}", self.labels[i], self.labels[j])?;
                }
            }
        }
        write!(f, "]")
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if n <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

fn transitive_close(up: &mut [BitSet]) {
    let n = up.len();
    // Warshall over the "above" rows
    for k in 0..n {
        for i in 0..n {
            if up[i].contains(k) {
                let row = up[k].clone();
                up[i].union_with(&row);
            }
        }
    }
}

fn is_reflexive(up: &[BitSet]) -> bool {
    up.iter().enumerate().all(|(i, r)| r.contains(i))
}

fn is_transitive(up: &[BitSet]) -> bool {
    let n = up.len();
    (0..n).all(|i| up[i].iter().all(|k| up[k].is_subset(&up[i])))
}

fn check_antisymmetry(labels: &[String], up: &[BitSet]) -> Result<(), PosetError> {
    let n = up.len();
    for i in 0..n {
        for j in i + 1..n {
            if up[i].contains(j) && up[j].contains(i) {
                // collect the whole mutual-reachability class through i
                let mut cycle: Vec<String> = (0..n)
                    .filter(|&k| up[i].contains(k) && up[k].contains(i))
                    .map(|k| labels[k].clone())
                    .collect();
                cycle.push(labels[i].clone());
                return Err(PosetError::Cycle(cycle));
            }
        }
    }
    Ok(())
}
