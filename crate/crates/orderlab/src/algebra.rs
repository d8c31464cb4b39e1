//! Eilenberg–Moore algebras for the bundled monads: structure discovery by
//! adjunction, homomorphisms, injectivity and Kan-injectivity, homomorphic
//! splittings, and the two routes to algebraicity (direct free-algebra
//! search and the intrinsic equaliser characterisation).

use crate::adjoint::{le_maps, try_adjoint, Enrichment, Side};
use crate::bits::BitSet;
use crate::enumerate::{enumerate_monotone_maps, enumerate_posets, order_isomorphisms};
use crate::kleisli::is_t_dense;
use crate::limits::equalizer;
use crate::map::MonotoneMap;
use crate::monad::MonadInstance;
use crate::poset::Poset;
use std::sync::Arc;
use thiserror::Error;

/// An Eilenberg–Moore algebra `α : TX → X`.
#[derive(Clone)]
pub struct Algebra {
    pub monad: MonadInstance,
    pub carrier: Arc<Poset>,
    pub structure: MonotoneMap,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra({}, {:?})", self.monad.name(), self.carrier)
    }
}

impl Algebra {
    /// Unit law and associativity, checked elementwise.
    pub fn satisfies_laws(&self) -> bool {
        let t = self.monad;
        let t1 = t.apply(&self.carrier);
        let e = t.unit_with(&self.carrier, &t1);
        if !self
            .structure
            .compose(&e)
            .expect("endpoints")
            .is_identity()
        {
            return false;
        }
        let t2 = t.apply(&t1.carrier);
        let t_alpha = t.map_with(&self.structure, &t2, &t1);
        let m = t.mult_with(&self.carrier, &t1, &t2);
        self.structure.compose(&t_alpha).expect("endpoints")
            == self.structure.compose(&m).expect("endpoints")
    }
}

/// A homomorphic splitting `t ⊣ α ⊣ e`.
#[derive(Clone, Debug)]
pub struct Splitting {
    /// t : X → TX
    pub t: MonotoneMap,
}

/// Finds the algebra structure on `x` as the adjoint of the unit (absence
/// means `x` carries no structure). The returned map is validated against
/// the unit law and the associativity square.
pub fn find_algebra_structure(t: MonadInstance, x: &Arc<Poset>) -> Option<Algebra> {
    let enrich = t.enrichment();
    let t1 = t.apply(x);
    let e = t.unit_with(x, &t1);
    let alpha = try_adjoint(&e, Side::Left, enrich)?;
    let algebra = Algebra {
        monad: t,
        carrier: x.clone(),
        structure: alpha,
    };
    algebra.satisfies_laws().then_some(algebra)
}

/// All structure maps on `x` satisfying the algebra laws, by brute force
/// over monotone maps `TX → X`. For Kock-Zöberlein instances this has at
/// most one member.
pub fn enumerate_algebra_structures(t: MonadInstance, x: &Arc<Poset>) -> Vec<Algebra> {
    let t1 = t.apply(x);
    enumerate_monotone_maps(&t1.carrier, x)
        .into_iter()
        .map(|alpha| Algebra {
            monad: t,
            carrier: x.clone(),
            structure: alpha,
        })
        .filter(Algebra::satisfies_laws)
        .collect()
}

/// `β ∘ Tf = f ∘ α`, elementwise.
pub fn is_homomorphism(f: &MonotoneMap, a: &Algebra, b: &Algebra) -> bool {
    debug_assert_eq!(a.monad, b.monad);
    let t = a.monad;
    let tf = t.map(f);
    b.structure.compose(&tf).expect("endpoints") == f.compose(&a.structure).expect("endpoints")
}

/// Every left adjoint between algebras is a homomorphism; verified over all
/// algebra pairs on objects of size ≤ `bound`.
pub fn check_left_adjoints_are_homs(t: MonadInstance, bound: usize) -> bool {
    let enrich = t.enrichment();
    let algebras = algebras_up_to(t, bound);
    for a in &algebras {
        for b in &algebras {
            for f in enumerate_monotone_maps(&a.carrier, &b.carrier) {
                if try_adjoint(&f, Side::Right, enrich).is_some() && !is_homomorphism(&f, a, b)
                {
                    return false;
                }
            }
        }
    }
    true
}

/// All objects of size ≤ `bound` carrying an algebra structure.
pub fn algebras_up_to(t: MonadInstance, bound: usize) -> Vec<Algebra> {
    let mut out = Vec::new();
    for n in 0..=bound {
        for p in enumerate_posets(n) {
            if !t.admits_object(&p) {
                continue;
            }
            if let Some(a) = find_algebra_structure(t, &Arc::new(p)) {
                out.push(a);
            }
        }
    }
    out
}

/// Plain injectivity of the object `a` with respect to a class of
/// morphisms: every map into `a` extends along every class member.
pub fn is_injective_wrt(a: &Arc<Poset>, class: &[MonotoneMap]) -> bool {
    for h in class {
        let extensions = enumerate_monotone_maps(h.cod(), a);
        let restricted: Vec<MonotoneMap> = extensions
            .iter()
            .map(|g| g.compose(h).expect("endpoints"))
            .collect();
        for f in enumerate_monotone_maps(h.dom(), a) {
            if !restricted.contains(&f) {
                return false;
            }
        }
    }
    true
}

/// The hom-poset `X(x, a)` under the enrichment order, with its elements.
pub fn hom_poset(
    x: &Arc<Poset>,
    a: &Arc<Poset>,
    enrich: Enrichment,
) -> (Arc<Poset>, Vec<MonotoneMap>) {
    let maps = enumerate_monotone_maps(x, a);
    let n = maps.len();
    let labels: Vec<String> = (0..n).map(|i| format!("h{i}")).collect();
    let up = (0..n)
        .map(|i| {
            BitSet::from_indices(
                n,
                (0..n).filter(|&j| le_maps(&maps[i], &maps[j], enrich)),
            )
        })
        .collect();
    (Arc::new(Poset::from_up_rows(labels, up)), maps)
}

/// The hom-map `X(h, a) : X(Y, a) → X(X, a)` (precomposition) as a monotone
/// map between hom-posets, together with both hom-poset element lists.
fn hom_map(
    h: &MonotoneMap,
    a: &Arc<Poset>,
    enrich: Enrichment,
) -> (MonotoneMap, Vec<MonotoneMap>, Vec<MonotoneMap>) {
    let (hp_y, maps_y) = hom_poset(h.cod(), a, enrich);
    let (hp_x, maps_x) = hom_poset(h.dom(), a, enrich);
    let assignment: Vec<usize> = maps_y
        .iter()
        .map(|g| {
            let gh = g.compose(h).expect("endpoints");
            maps_x.iter().position(|f| *f == gh).expect("closed")
        })
        .collect();
    (
        MonotoneMap::new_unchecked(hp_y, hp_x, assignment),
        maps_y,
        maps_x,
    )
}

/// Left Kan-injectivity of the object `a` with respect to `h`: the hom-map
/// `X(h, a)` is a right adjoint retraction in Pos.
pub fn is_kan_injective_object(t: MonadInstance, a: &Arc<Poset>, h: &MonotoneMap) -> bool {
    let (hm, _, _) = hom_map(h, a, t.enrichment());
    match try_adjoint(&hm, Side::Left, Enrichment::Pointwise) {
        Some(l) => hm.compose(&l).expect("endpoints").is_identity(),
        None => false,
    }
}

/// Kan-injectivity of a morphism `f : a → b` with respect to `h`: both
/// objects are Kan-injective and the square of left adjoints commutes with
/// the induced post-composition maps.
pub fn is_kan_injective_morphism(
    t: MonadInstance,
    f: &MonotoneMap,
    h: &MonotoneMap,
) -> bool {
    let enrich = t.enrichment();
    let a = f.dom();
    let b = f.cod();
    let (hm_a, maps_ya, maps_xa) = hom_map(h, a, enrich);
    let (hm_b, maps_yb, maps_xb) = hom_map(h, b, enrich);
    let (Some(l_a), Some(l_b)) = (
        try_adjoint(&hm_a, Side::Left, Enrichment::Pointwise),
        try_adjoint(&hm_b, Side::Left, Enrichment::Pointwise),
    ) else {
        return false;
    };
    if !hm_a.compose(&l_a).expect("endpoints").is_identity()
        || !hm_b.compose(&l_b).expect("endpoints").is_identity()
    {
        return false;
    }
    // post-composition with f on each hom-poset
    let post = |maps_from: &[MonotoneMap], maps_to: &[MonotoneMap], g: &MonotoneMap| {
        let fg = f.compose(g).expect("endpoints");
        let _ = maps_from;
        maps_to.iter().position(|k| *k == fg).expect("closed")
    };
    // X(Y,f) ∘ (X(h,a))* = (X(h,b))* ∘ X(X,f) : X(X,a) → X(Y,b)
    (0..maps_xa.len()).all(|i| {
        let lhs = post(&maps_ya, &maps_yb, &maps_ya[l_a.apply(i)]);
        let rhs = l_b.apply(post(&maps_xa, &maps_xb, &maps_xa[i]));
        lhs == rhs
    })
}

/// The homomorphic splitting `t ⊣ α`, validated: `α∘t = id`, `t` is a
/// homomorphism into the free algebra, `t ≤ e` and `t∘t = t` in the Kleisli
/// category.
pub fn find_splitting(a: &Algebra) -> Option<Splitting> {
    let t = a.monad;
    let enrich = t.enrichment();
    let t_map = try_adjoint(&a.structure, Side::Left, enrich)?;
    if !a
        .structure
        .compose(&t_map)
        .expect("endpoints")
        .is_identity()
    {
        return None;
    }
    let t1 = t.apply(&a.carrier);
    let t2 = t.apply(&t1.carrier);
    let e = t.unit_with(&a.carrier, &t1);
    let m = t.mult_with(&a.carrier, &t1, &t2);
    let tt = t.map_with(&t_map, &t1, &t2);
    // homomorphism into (TX, m): m ∘ Tt = t ∘ α
    if m.compose(&tt).expect("endpoints") != t_map.compose(&a.structure).expect("endpoints") {
        return None;
    }
    // t ≤ e in the enrichment and Kleisli idempotency m ∘ Tt ∘ t = t
    if !le_maps(&t_map, &e, enrich) {
        return None;
    }
    let ttt = m
        .compose(&tt)
        .expect("endpoints")
        .compose(&t_map)
        .expect("endpoints");
    if ttt != t_map {
        return None;
    }
    Some(Splitting { t: t_map })
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharError {
    #[error("algebra is not split")]
    NotSplit,
}

/// Result of the intrinsic algebraicity test: the equaliser `i : A₀ → X` of
/// the unit and the splitting, T-density of `i`, and the epimorphism check
/// on `α · Ti` (surjectivity, guarded by a bounded definitional probe).
#[derive(Debug)]
pub struct CharReport {
    pub algebraic: bool,
    pub core: Arc<Poset>,
    pub include: MonotoneMap,
    pub t_dense: bool,
    pub epi: bool,
}

/// Algebraicity via the equaliser characterisation.
pub fn is_algebraic_char(a: &Algebra) -> Result<CharReport, CharError> {
    let t = a.monad;
    let splitting = find_splitting(a).ok_or(CharError::NotSplit)?;
    let t1 = t.apply(&a.carrier);
    let e = t.unit_with(&a.carrier, &t1);
    let eq = equalizer(&e, &splitting.t).expect("parallel pair");
    let i = eq.include.clone();
    // the instance-level assumption: T sends this regular mono to a mono
    let ti = t.map(&i);
    debug_assert!(ti.is_injective(), "T must preserve regular monos as monos");
    let t_dense = is_t_dense(t, &i);
    let alpha_ti = a.structure.compose(&ti).expect("endpoints");
    let epi = alpha_ti.is_surjective();
    // bounded definitional probe as a guard on the surjectivity criterion
    let probe_bound = (a.carrier.len() + 2).min(4);
    debug_assert_eq!(epi, is_epi_bounded(&alpha_ti, probe_bound));
    Ok(CharReport {
        algebraic: t_dense && epi,
        core: eq.poset,
        include: i,
        t_dense,
        epi,
    })
}

/// Bounded definitional epimorphism probe: `u∘h = v∘h` forces `u = v` for
/// all maps into probe objects of size ≤ `max_probe`.
pub fn is_epi_bounded(h: &MonotoneMap, max_probe: usize) -> bool {
    for n in 1..=max_probe {
        for b in enumerate_posets(n) {
            let b = Arc::new(b);
            let maps = enumerate_monotone_maps(h.cod(), &b);
            for u in &maps {
                for v in &maps {
                    if u.compose(h).expect("endpoints") == v.compose(h).expect("endpoints")
                        && u != v
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Searches base objects of size ≤ `size_bound` for one whose free algebra
/// is isomorphic to `a`; returns the witness.
pub fn is_algebraic_direct(a: &Algebra, size_bound: usize) -> Option<Arc<Poset>> {
    let t = a.monad;
    for n in 0..=size_bound {
        for y in enumerate_posets(n) {
            if !t.admits_object(&y) {
                continue;
            }
            let y = Arc::new(y);
            let ty = t.apply(&y);
            if ty.carrier.len() != a.carrier.len() {
                continue;
            }
            let tty = t.apply(&ty.carrier);
            let m = t.mult_with(&y, &ty, &tty);
            let free = Algebra {
                monad: t,
                carrier: ty.carrier.clone(),
                structure: m,
            };
            if algebras_isomorphic(a, &free) {
                return Some(y);
            }
        }
    }
    None
}

/// Algebra isomorphism: an order-isomorphism of carriers commuting with the
/// structure maps.
pub fn algebras_isomorphic(a: &Algebra, b: &Algebra) -> bool {
    if a.monad != b.monad || a.carrier.len() != b.carrier.len() {
        return false;
    }
    let t = a.monad;
    let ta = t.apply(&a.carrier);
    let tb = t.apply(&b.carrier);
    for perm in order_isomorphisms(&a.carrier, &b.carrier) {
        let phi = MonotoneMap::new_unchecked(a.carrier.clone(), b.carrier.clone(), perm);
        let t_phi = t.map_with(&phi, &ta, &tb);
        if phi.compose(&a.structure).expect("endpoints")
            == b.structure.compose(&t_phi).expect("endpoints")
        {
            return true;
        }
    }
    false
}

/// The canonical `e`-style class used by the injectivity theorem: the units
/// of all objects of size ≤ `bound`.
pub fn unit_class(t: MonadInstance, bound: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    for n in 0..=bound {
        for p in enumerate_posets(n) {
            if !t.admits_object(&p) {
                continue;
            }
            out.push(t.unit(&Arc::new(p)));
        }
    }
    out
}

/// All `M_T` members between objects of size ≤ `bound`.
pub fn m_t_class(t: MonadInstance, bound: usize) -> Vec<MonotoneMap> {
    use crate::kleisli::in_m_t;
    let mut out = Vec::new();
    for n in 0..=bound {
        for m_size in 0..=bound {
            for p in enumerate_posets(n) {
                if !t.admits_object(&p) {
                    continue;
                }
                for q in enumerate_posets(m_size) {
                    if !t.admits_object(&q) {
                        continue;
                    }
                    let p = Arc::new(p.clone());
                    let q = Arc::new(q);
                    for h in enumerate_monotone_maps(&p, &q) {
                        if in_m_t(t, &h) {
                            out.push(h);
                        }
                    }
                }
            }
        }
    }
    out
}
