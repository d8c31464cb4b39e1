//! Monotone maps between finite posets.
//!
//! Maps own their endpoints through `Arc` so enumerations can share the
//! (sometimes large) carrier posets. Monotonicity is validated on
//! construction; `compose` checks endpoint compatibility.

use crate::bits::BitSet;
use crate::poset::Poset;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("assignment has length {got}, domain has {want} elements")]
    WrongLength { got: usize, want: usize },
    #[error("value {value} out of range for codomain of size {size}")]
    OutOfRange { value: usize, size: usize },
    #[error("not monotone: {x} ≤ {y} but f({x}) ≰ f({y})")]
    NotMonotone { x: String, y: String },
    #[error("endpoint mismatch: codomain of inner map differs from domain of outer map")]
    EndpointMismatch,
}

#[derive(Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    dom: Arc<Poset>,
    cod: Arc<Poset>,
    map: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(
        dom: impl Into<Arc<Poset>>,
        cod: impl Into<Arc<Poset>>,
        map: Vec<usize>,
    ) -> Result<MonotoneMap, MapError> {
        let dom = dom.into();
        let cod = cod.into();
        if map.len() != dom.len() {
            return Err(MapError::WrongLength { got: map.len(), want: dom.len() });
        }
        if let Some(&v) = map.iter().find(|&&v| v >= cod.len()) {
            return Err(MapError::OutOfRange { value: v, size: cod.len() });
        }
        for i in 0..dom.len() {
            for j in 0..dom.len() {
                if dom.le(i, j) && !cod.le(map[i], map[j]) {
                    return Err(MapError::NotMonotone {
                        x: dom.label(i).to_string(),
                        y: dom.label(j).to_string(),
                    });
                }
            }
        }
        Ok(MonotoneMap { dom, cod, map })
    }

    /// Caller guarantees monotonicity (hot paths that construct maps by
    /// provably monotone formulas).
    pub(crate) fn new_unchecked(
        dom: impl Into<Arc<Poset>>,
        cod: impl Into<Arc<Poset>>,
        map: Vec<usize>,
    ) -> MonotoneMap {
        let m = MonotoneMap { dom: dom.into(), cod: cod.into(), map };
        debug_assert!(
            MonotoneMap::new(m.dom.clone(), m.cod.clone(), m.map.clone()).is_ok(),
            "new_unchecked given a non-monotone assignment"
        );
        m
    }

    pub fn identity(p: impl Into<Arc<Poset>>) -> MonotoneMap {
        let p = p.into();
        let map = (0..p.len()).collect();
        MonotoneMap { dom: p.clone(), cod: p, map }
    }

    /// Constant map; `cod` must be nonempty unless `dom` is empty.
    pub fn constant(
        dom: impl Into<Arc<Poset>>,
        cod: impl Into<Arc<Poset>>,
        value: usize,
    ) -> MonotoneMap {
        let dom = dom.into();
        let cod = cod.into();
        let map = vec![value; dom.len()];
        MonotoneMap { dom, cod, map }
    }

    pub fn dom(&self) -> &Arc<Poset> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Poset> {
        &self.cod
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &MonotoneMap) -> Result<MonotoneMap, MapError> {
        if !Arc::ptr_eq(&self.dom, &inner.cod) && *self.dom != *inner.cod {
            return Err(MapError::EndpointMismatch);
        }
        let map = inner.map.iter().map(|&i| self.map[i]).collect();
        Ok(MonotoneMap { dom: inner.dom.clone(), cod: self.cod.clone(), map })
    }

    pub fn is_identity(&self) -> bool {
        *self.dom == *self.cod && self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn image(&self) -> BitSet {
        BitSet::from_indices(self.cod.len(), self.map.iter().copied())
    }

    pub fn is_surjective(&self) -> bool {
        self.image().count() == self.cod.len()
    }

    pub fn is_injective(&self) -> bool {
        self.image().count() == self.dom.len()
    }

    pub fn preimage(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(
            self.dom.len(),
            (0..self.dom.len()).filter(|&i| set.contains(self.map[i])),
        )
    }

    /// Pointwise `self(x) ≤ other(x)` in the codomain order.
    pub fn pointwise_le(&self, other: &MonotoneMap) -> bool {
        debug_assert!(*self.dom == *other.dom && *self.cod == *other.cod);
        self.map
            .iter()
            .zip(&other.map)
            .all(|(&a, &b)| self.cod.le(a, b))
    }

    /// Order-reflecting: `f(x) ≤ f(y)` implies `x ≤ y`. Equivalent to the
    /// order-mono condition (probing with singletons suffices in Pos).
    pub fn is_order_reflecting(&self) -> bool {
        let n = self.dom.len();
        (0..n).all(|i| {
            (0..n).all(|j| !self.cod.le(self.map[i], self.map[j]) || self.dom.le(i, j))
        })
    }

    pub fn is_order_mono(&self) -> bool {
        self.is_order_reflecting()
    }
}

impl std::fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, &v) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}↦{}", self.dom.label(i), self.cod.label(v))?;
        }
        write!(f, "]")
    }
}
