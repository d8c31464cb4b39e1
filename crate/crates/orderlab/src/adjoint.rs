//! Adjunctions between finite posets, relative to an enrichment orientation.
//!
//! Every category instance bundled here carries one `Enrichment` tag that
//! fixes how hom-sets are ordered: `Pointwise` (Pos and the lattice
//! counterexample base) or `DualPointwise` (T0 spaces, where hom-sets carry
//! the dual of the pointwise specialisation order). All adjunction tests take
//! the tag as a parameter so the "left adjoint interchanges with right
//! adjoint" trap stays in one place.

use crate::bits::BitSet;
use crate::map::MonotoneMap;
use crate::poset::Poset;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Enrichment {
    Pointwise,
    DualPointwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `f ≤ g` in the hom-poset under the given enrichment.
pub fn le_maps(f: &MonotoneMap, g: &MonotoneMap, enrich: Enrichment) -> bool {
    match enrich {
        Enrichment::Pointwise => f.pointwise_le(g),
        Enrichment::DualPointwise => g.pointwise_le(f),
    }
}

/// `f ⊣ g` under the enrichment: `id ≤ g∘f` and `f∘g ≤ id` in hom-order.
pub fn is_adjunction(f: &MonotoneMap, g: &MonotoneMap, enrich: Enrichment) -> bool {
    if *f.cod() != *g.dom() || *g.cod() != *f.dom() {
        return false;
    }
    let gf = g.compose(f).expect("endpoints checked");
    let fg = f.compose(g).expect("endpoints checked");
    le_maps(&MonotoneMap::identity(f.dom().clone()), &gf, enrich)
        && le_maps(&fg, &MonotoneMap::identity(g.dom().clone()), enrich)
}

/// A validated adjoint pair `left ⊣ right`.
#[derive(Debug, Clone)]
pub struct Adjunction {
    pub left: MonotoneMap,
    pub right: MonotoneMap,
}

impl Adjunction {
    pub fn new(left: MonotoneMap, right: MonotoneMap, enrich: Enrichment) -> Option<Adjunction> {
        if is_adjunction(&left, &right, enrich) {
            Some(Adjunction { left, right })
        } else {
            None
        }
    }
}

/// The unique adjoint of `f` on the requested side, when it exists.
///
/// With `side = Right` the result `g` satisfies `f ⊣ g`; with `side = Left`
/// it satisfies `g ⊣ f`. Existence is decided exactly: the candidate value at
/// `q` is the maximum of `{p | f(p) ≤ q}` (or the dual minimum), and the
/// candidate is then checked for totality, monotonicity and the two
/// adjunction inequalities.
pub fn try_adjoint(f: &MonotoneMap, side: Side, enrich: Enrichment) -> Option<MonotoneMap> {
    let wants_upper = match (side, enrich) {
        (Side::Right, Enrichment::Pointwise) => true,
        (Side::Left, Enrichment::DualPointwise) => true,
        (Side::Left, Enrichment::Pointwise) => false,
        (Side::Right, Enrichment::DualPointwise) => false,
    };
    let g = if wants_upper {
        upper_adjoint(f)?
    } else {
        lower_adjoint(f)?
    };
    let ok = match side {
        Side::Right => is_adjunction(f, &g, enrich),
        Side::Left => is_adjunction(&g, f, enrich),
    };
    ok.then_some(g)
}

/// `g` with `f ⊣ g` as a Galois connection in the underlying orders:
/// `g(y) = max { x | f(x) ≤ y }`.
fn upper_adjoint(f: &MonotoneMap) -> Option<MonotoneMap> {
    let dom: &Arc<Poset> = f.dom();
    let cod = f.cod();
    let mut map = Vec::with_capacity(cod.len());
    for y in 0..cod.len() {
        let set = BitSet::from_indices(
            dom.len(),
            (0..dom.len()).filter(|&x| cod.le(f.apply(x), y)),
        );
        map.push(dom.maximum_of(&set)?);
    }
    MonotoneMap::new(cod.clone(), dom.clone(), map).ok()
}

/// `g` with `g ⊣ f` in the underlying orders: `g(y) = min { x | y ≤ f(x) }`.
fn lower_adjoint(f: &MonotoneMap) -> Option<MonotoneMap> {
    let dom = f.dom();
    let cod = f.cod();
    let mut map = Vec::with_capacity(cod.len());
    for y in 0..cod.len() {
        let set = BitSet::from_indices(
            dom.len(),
            (0..dom.len()).filter(|&x| cod.le(y, f.apply(x))),
        );
        map.push(dom.minimum_of(&set)?);
    }
    MonotoneMap::new(cod.clone(), dom.clone(), map).ok()
}

/// Bounded order-epi test at the default probe bound `|cod| + 2`.
///
/// Sound but not complete: no finite characterisation of order-epis is
/// available, so only the bounded definitional check is exposed.
pub fn is_order_epi(f: &MonotoneMap) -> bool {
    is_order_epi_bounded(f, f.cod().len() + 2)
}

/// Bounded order-epi test: sound for probe objects up to `max_probe`
/// elements, not a complete characterisation.
pub fn is_order_epi_bounded(f: &MonotoneMap, max_probe: usize) -> bool {
    use crate::enumerate::{enumerate_monotone_maps, enumerate_posets};
    for n in 0..=max_probe {
        for probe in enumerate_posets(n) {
            let probe = Arc::new(probe);
            let maps = enumerate_monotone_maps(f.cod(), &probe);
            for u in &maps {
                for v in &maps {
                    let uf = u.compose(f).unwrap();
                    let vf = v.compose(f).unwrap();
                    if uf.pointwise_le(&vf) && !u.pointwise_le(v) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
