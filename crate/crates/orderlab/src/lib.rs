//! orderlab: a finite-instance workbench for order-enriched monads on
//! posets and finite T0 spaces.
//!
//! The library computes with small concrete instances: finite posets and
//! their monotone maps, finite T0 spaces and continuous maps, a family of
//! monads on those categories (down-sets, ideals, open filters and their
//! proper/prime/completely-prime restrictions, and a bounds-adjoining
//! counterexample), Eilenberg–Moore algebras and their splittings, the
//! Kleisli category with its idempotent split completion, domain-theoretic
//! predicates, and the double-dualisation machinery for regular
//! cogenerators. Everything is exhaustive and deterministic; bounded
//! searches state their bounds.
//!
//! All values are immutable after construction and all operations are pure,
//! so sweeps can be sharded across workers freely.

pub mod adjoint;
pub mod algebra;
pub mod bits;
pub mod domain;
pub mod enumerate;
pub mod filter;
pub mod json;
pub mod kleisli;
pub mod lattice;
pub mod limits;
pub mod map;
pub mod monad;
pub mod poset;
pub mod space;
pub mod weighted;

pub use adjoint::{is_adjunction, le_maps, try_adjoint, Adjunction, Enrichment, Side};
pub use bits::BitSet;
pub use lattice::Lattice;
pub use map::MonotoneMap;
pub use poset::Poset;
