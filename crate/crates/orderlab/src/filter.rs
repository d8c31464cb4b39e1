//! Filters on the open-set lattice of a finite space.
//!
//! A filter is an up-closed, binary-meet-closed subset of `Ω X` containing
//! the full set, stored extensionally as a bit set over the open list. On a
//! finite space every filter is principal; that fact is *not* assumed
//! anywhere here; enumeration works by constraint propagation over
//! membership decisions, and principality is asserted by the test suites as
//! a theorem.

use crate::bits::BitSet;
use crate::space::FinSpace;
use std::sync::Arc;

/// A filter on `Ω X`, as the set of member opens (indices into
/// `space.opens()`).
#[derive(Clone, PartialEq, Eq)]
pub struct Filter {
    pub space: Arc<FinSpace>,
    pub members: BitSet,
}

impl Filter {
    pub fn contains_open_index(&self, k: usize) -> bool {
        self.members.contains(k)
    }

    /// Proper: the empty open is not a member.
    pub fn is_proper(&self) -> bool {
        let empty_idx = self
            .space
            .open_index_of(&BitSet::empty(self.space.len()))
            .expect("spaces always carry the empty open");
        !self.members.contains(empty_idx)
    }

    /// Prime: proper, and a member union of two opens forces one of them to
    /// be a member.
    pub fn is_prime(&self) -> bool {
        if !self.is_proper() {
            return false;
        }
        let opens = self.space.opens();
        for i in 0..opens.len() {
            for j in 0..opens.len() {
                let u = opens[i].union(&opens[j]);
                let k = self.space.open_index_of(&u).expect("opens union-closed");
                if self.members.contains(k)
                    && !self.members.contains(i)
                    && !self.members.contains(j)
                {
                    return false;
                }
            }
        }
        true
    }

    /// Completely prime: for every family of opens whose union is a member,
    /// some open of the family is a member. The empty family is included,
    /// so completely prime implies proper. Equivalent to: no union of
    /// non-member opens is a member, which is what the loop below decides
    /// exactly (the achievable unions of non-members form a finite
    /// ∪-closed family).
    pub fn is_completely_prime(&self) -> bool {
        let opens = self.space.opens();
        let non_members: Vec<&BitSet> = (0..opens.len())
            .filter(|k| !self.members.contains(*k))
            .map(|k| &opens[k])
            .collect();
        // all unions of subfamilies of the non-members, empty union included
        let mut achieved: Vec<BitSet> = vec![BitSet::empty(self.space.len())];
        let mut frontier = achieved.clone();
        while let Some(u) = frontier.pop() {
            for nm in &non_members {
                let bigger = u.union(nm);
                if !achieved.contains(&bigger) {
                    achieved.push(bigger.clone());
                    frontier.push(bigger);
                }
            }
        }
        for u in &achieved {
            if let Some(k) = self.space.open_index_of(u) {
                if self.members.contains(k) {
                    return false;
                }
            }
        }
        true
    }

    /// The member opens as point sets.
    pub fn member_opens(&self) -> Vec<BitSet> {
        self.members
            .iter()
            .map(|k| self.space.opens()[k].clone())
            .collect()
    }
}

impl std::fmt::Debug for Filter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .member_opens()
            .iter()
            .map(|o| {
                let names: Vec<&str> = o.iter().map(|i| self.space.point_label(i)).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        write!(f, "⟨{}⟩", parts.join(", "))
    }
}

/// The neighbourhood filter `Ω(x)` of a point.
pub fn neighborhood_filter(space: &Arc<FinSpace>, x: usize) -> Filter {
    Filter {
        space: space.clone(),
        members: space.neighborhood_opens(x),
    }
}

/// Is `members` up-closed, binary-meet-closed and does it contain the full
/// open?
pub fn is_filter(space: &FinSpace, members: &BitSet) -> bool {
    let opens = space.opens();
    let full = space
        .open_index_of(&BitSet::full(space.len()))
        .expect("full open present");
    if !members.contains(full) {
        return false;
    }
    for i in members.iter() {
        for j in 0..opens.len() {
            if opens[i].is_subset(&opens[j]) && !members.contains(j) {
                return false;
            }
        }
        for j in members.iter() {
            let m = opens[i].intersection(&opens[j]);
            let k = space.open_index_of(&m).expect("opens meet-closed");
            if !members.contains(k) {
                return false;
            }
        }
    }
    true
}

/// Every filter on `Ω X`, in canonical sorted order.
///
/// Recursive membership decisions with forcing: including an open forces all
/// supersets (already decided, checked) and all meets with current members;
/// excluding an open forces all its subsets out. Solutions are exactly the
/// filters; no principality shortcut is taken.
pub fn all_filters(space: &FinSpace) -> Vec<BitSet> {
    let opens = space.opens();
    let m = opens.len();
    if m == 0 {
        return vec![];
    }
    // precompute meet indices and subset masks
    let meet: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    space
                        .open_index_of(&opens[i].intersection(&opens[j]))
                        .expect("opens meet-closed")
                })
                .collect()
        })
        .collect();
    let subsets_of: Vec<BitSet> = (0..m)
        .map(|i| {
            BitSet::from_indices(m, (0..m).filter(|&j| opens[j].is_subset(&opens[i])))
        })
        .collect();
    let supersets_of: Vec<BitSet> = (0..m)
        .map(|i| {
            BitSet::from_indices(m, (0..m).filter(|&j| opens[i].is_subset(&opens[j])))
        })
        .collect();
    // process opens from largest to smallest so meets land on undecided or
    // already-included indices
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(opens[i].count()));

    let full = space
        .open_index_of(&BitSet::full(space.len()))
        .expect("full open present");
    let mut members = BitSet::empty(m);
    members.insert(full);
    let mut excluded = BitSet::empty(m);
    let mut out = Vec::new();
    rec(
        &order, 0, &meet, &subsets_of, &supersets_of, &mut members, &mut excluded, &mut out,
    );
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn rec(
    order: &[usize],
    pos: usize,
    meet: &[Vec<usize>],
    subsets_of: &[BitSet],
    supersets_of: &[BitSet],
    members: &mut BitSet,
    excluded: &mut BitSet,
    out: &mut Vec<BitSet>,
) {
    let mut pos = pos;
    while pos < order.len() {
        let k = order[pos];
        if members.contains(k) || excluded.contains(k) {
            pos += 1;
        } else {
            break;
        }
    }
    if pos == order.len() {
        out.push(members.clone());
        return;
    }
    let k = order[pos];

    // branch: exclude k, forcing out all subsets of k (up-closure in
    // contrapositive)
    if !subsets_of[k].intersects(members) {
        let saved = excluded.clone();
        excluded.union_with(&subsets_of[k]);
        rec(order, pos + 1, meet, subsets_of, supersets_of, members, excluded, out);
        *excluded = saved;
    }

    // branch: include k, forcing in all supersets and all meets with the
    // current members; a forced open that was excluded kills the branch
    {
        let mut forced = vec![k];
        let saved = members.clone();
        let mut ok = true;
        while let Some(x) = forced.pop() {
            if members.contains(x) {
                continue;
            }
            if excluded.contains(x) {
                ok = false;
                break;
            }
            members.insert(x);
            for w in supersets_of[x].iter() {
                if !members.contains(w) {
                    forced.push(w);
                }
            }
            for y in members.clone().iter() {
                let z = meet[x][y];
                if !members.contains(z) {
                    forced.push(z);
                }
            }
        }
        if ok {
            rec(order, pos + 1, meet, subsets_of, supersets_of, members, excluded, out);
        }
        *members = saved;
    }
}

/// The filter space `FX`: one point per filter, topology generated by the
/// sets `A# = { f | A ∈ f }` for `A` open (closed under unions; the
/// generators are already closed under intersections since
/// `A# ∩ B# = (A ∩ B)#`).
pub struct FilterSpace {
    pub space: FinSpace,
    /// filter of each point, as a bit set over the base space's opens
    pub filters: Vec<BitSet>,
    /// `A#` point sets, indexed like the base space's opens
    pub sharps: Vec<BitSet>,
}

pub fn filter_space(base: &FinSpace) -> FilterSpace {
    let filters = all_filters(base);
    let n = filters.len();
    let sharps: Vec<BitSet> = (0..base.open_count())
        .map(|a| {
            BitSet::from_indices(n, (0..n).filter(|&f| filters[f].contains(a)))
        })
        .collect();
    // close the sharps under arbitrary unions (the empty union included)
    let mut opens: Vec<BitSet> = vec![BitSet::empty(n)];
    let mut frontier = opens.clone();
    while let Some(u) = frontier.pop() {
        for s in &sharps {
            let bigger = u.union(s);
            if !opens.contains(&bigger) {
                opens.push(bigger.clone());
                frontier.push(bigger);
            }
        }
    }
    let labels: Vec<String> = (0..n).map(|i| format!("f{i}")).collect();
    let space = FinSpace::new(labels, opens).expect("generated topology is a topology");
    FilterSpace { space, filters, sharps }
}
