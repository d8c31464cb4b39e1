//! The Kleisli category of a bundled monad: arrows `X ⊸ Y` are base
//! morphisms `X → TY`, composed by `s ∘ r = m · Ts · r`, ordered by the
//! enrichment. T-density, membership in the class `M_T`, Cauchy
//! completeness, and the idempotent split completion `kar` live here.
//!
//! The equivalence between split algebras and kar requires the base to be
//! idempotent split complete; the finite poset and space instances here
//! satisfy that through equalisers, which is recorded rather than proved in
//! code.

use crate::adjoint::{le_maps, try_adjoint, Side};
use crate::algebra::{find_splitting, Algebra, Splitting};
use crate::map::MonotoneMap;
use crate::monad::MonadInstance;
use crate::poset::Poset;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KleisliError {
    #[error("arrows are not composable")]
    NotComposable,
    #[error("not idempotent in the Kleisli category")]
    NotIdempotent,
    #[error("idempotent does not sit below the unit")]
    NotBelowUnit,
    #[error("splitting produced an invalid algebra")]
    BadSplit,
}

/// An arrow `X ⊸ Y`: a base morphism `X → TY`.
#[derive(Clone, PartialEq, Eq)]
pub struct KleisliArrow {
    pub monad: MonadInstance,
    pub cod: Arc<Poset>,
    /// the underlying base morphism X → T(cod)
    pub map: MonotoneMap,
}

impl std::fmt::Debug for KleisliArrow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "⊸{:?}", self.map)
    }
}

impl KleisliArrow {
    pub fn new(monad: MonadInstance, cod: Arc<Poset>, map: MonotoneMap) -> KleisliArrow {
        debug_assert_eq!(
            **map.cod(),
            *monad.apply(&cod).carrier,
            "map must land in T(cod)"
        );
        KleisliArrow { monad, cod, map }
    }

    pub fn dom(&self) -> &Arc<Poset> {
        self.map.dom()
    }
}

/// `f_* = e_Y ∘ f`.
pub fn to_kleisli(t: MonadInstance, f: &MonotoneMap) -> KleisliArrow {
    let e = t.unit(f.cod());
    KleisliArrow::new(t, f.cod().clone(), e.compose(f).expect("endpoints"))
}

/// The Kleisli identity at `x` is the unit.
pub fn kleisli_id(t: MonadInstance, x: &Arc<Poset>) -> KleisliArrow {
    KleisliArrow::new(t, x.clone(), t.unit(x))
}

/// `s ∘ r = m · Ts · r`.
pub fn kleisli_compose(s: &KleisliArrow, r: &KleisliArrow) -> Result<KleisliArrow, KleisliError> {
    if s.monad != r.monad || **s.map.dom() != *r.cod {
        return Err(KleisliError::NotComposable);
    }
    let t = s.monad;
    let t_mid = t.apply(&r.cod);
    let t_cod = t.apply(&s.cod);
    let tt_cod = t.apply(&t_cod.carrier);
    let ts = t.map_with(&s.map, &t_mid, &tt_cod);
    let m = t.mult_with(&s.cod, &t_cod, &tt_cod);
    let composite = m
        .compose(&ts)
        .expect("endpoints")
        .compose(&r.map)
        .expect("endpoints");
    Ok(KleisliArrow::new(t, s.cod.clone(), composite))
}

/// Hom-order on Kleisli arrows: the enrichment order on the underlying base
/// morphisms.
pub fn kleisli_le(r1: &KleisliArrow, r2: &KleisliArrow) -> bool {
    le_maps(&r1.map, &r2.map, r1.monad.enrichment())
}

/// `r ⊣ s` in the Kleisli category: `e_X ≤ s∘r` and `r∘s ≤ e_Y`.
pub fn kleisli_adjunction(r: &KleisliArrow, s: &KleisliArrow) -> bool {
    if **s.map.dom() != *r.cod || **r.map.dom() != *s.cod {
        return false;
    }
    let sr = match kleisli_compose(s, r) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let rs = match kleisli_compose(r, s) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let ex = kleisli_id(r.monad, r.map.dom());
    let ey = kleisli_id(r.monad, &r.cod);
    kleisli_le(&ex, &sr) && kleisli_le(&rs, &ey)
}

/// T-dense: `f_*` has a right adjoint in the Kleisli category, equivalently
/// `Tf` is a left adjoint in the base.
pub fn is_t_dense(t: MonadInstance, f: &MonotoneMap) -> bool {
    let tf = t.map(f);
    try_adjoint(&tf, Side::Right, t.enrichment()).is_some()
}

/// The right adjoint `f^* = g ∘ e_Y` of `f_*`, when `f` is T-dense.
pub fn t_dense_right_adjoint(t: MonadInstance, f: &MonotoneMap) -> Option<KleisliArrow> {
    let tf = t.map(f);
    let g = try_adjoint(&tf, Side::Right, t.enrichment())?;
    let ey = t.unit(f.cod());
    let map = g.compose(&ey).expect("endpoints");
    Some(KleisliArrow::new(t, f.dom().clone(), map))
}

/// Membership in `M_T`: `Th` has a right adjoint `g` with `g · Th = id`.
pub fn in_m_t(t: MonadInstance, h: &MonotoneMap) -> bool {
    let th = t.map(h);
    match try_adjoint(&th, Side::Right, t.enrichment()) {
        Some(g) => g.compose(&th).expect("endpoints").is_identity(),
        None => false,
    }
}

/// A Kleisli left adjoint `r : X ⊸ Y` that is not of the form `f_*`.
pub struct CauchyCounterexample {
    pub probe: Arc<Poset>,
    pub adjoint_arrow: KleisliArrow,
}

/// Cauchy completeness of `y`: every left adjoint `r : X ⊸ Y` with
/// `|X| ≤ probe_bound` is `f_*` for some base `f : X → Y`.
///
/// For each candidate `r` the unique possible right adjoint is computed
/// directly (the base right adjoint `u` of `r̂ = m·Tr` composed with the
/// unit), then the two Kleisli inequalities are verified; this decides left
/// adjointness exactly without searching over partners.
pub fn is_cauchy_complete(t: MonadInstance, y: &Arc<Poset>, probe_bound: usize) -> bool {
    cauchy_counterexample(t, y, probe_bound).is_none()
}

pub fn cauchy_counterexample(
    t: MonadInstance,
    y: &Arc<Poset>,
    probe_bound: usize,
) -> Option<CauchyCounterexample> {
    use crate::enumerate::{enumerate_monotone_maps, enumerate_posets};
    let enrich = t.enrichment();
    let ty = t.apply(y);
    let tty = t.apply(&ty.carrier);
    let m_y = t.mult_with(y, &ty, &tty);
    let e_y = t.unit_with(y, &ty);
    for n in 0..=probe_bound {
        for x in enumerate_posets(n) {
            if !t.admits_object(&x) {
                continue;
            }
            let x = Arc::new(x);
            let tx = t.apply(&x);
            let ttx = t.apply(&tx.carrier);
            let m_x = t.mult_with(&x, &tx, &ttx);
            let e_x = t.unit_with(&x, &tx);
            for r in enumerate_monotone_maps(&x, &ty.carrier) {
                let tr = t.map_with(&r, &tx, &tty);
                let r_hat = m_y.compose(&tr).expect("endpoints");
                let Some(u) = try_adjoint(&r_hat, Side::Right, enrich) else {
                    continue;
                };
                // the only possible Kleisli right adjoint
                let s = u.compose(&e_y).expect("endpoints");
                let ts = t.map_with(&s, &ty, &ttx);
                let s_r = m_x
                    .compose(&ts)
                    .expect("endpoints")
                    .compose(&r)
                    .expect("endpoints");
                let r_s = r_hat.compose(&s).expect("endpoints");
                if !(le_maps(&e_x, &s_r, enrich) && le_maps(&r_s, &e_y, enrich)) {
                    continue; // r is not a left adjoint
                }
                // r must be f_* = e_Y ∘ f for a base morphism f
                let mut f_assign = Vec::with_capacity(x.len());
                let mut ok = true;
                for p in 0..x.len() {
                    match (0..y.len()).find(|&q| e_y.apply(q) == r.apply(p)) {
                        Some(q) => f_assign.push(q),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                let of_kleisli_form = ok
                    && MonotoneMap::new(x.clone(), y.clone(), f_assign.clone())
                        .ok()
                        .map(|f| e_y.compose(&f).expect("endpoints") == r)
                        .unwrap_or(false);
                if !of_kleisli_form {
                    return Some(CauchyCounterexample {
                        probe: x.clone(),
                        adjoint_arrow: KleisliArrow::new(t, y.clone(), r),
                    });
                }
            }
        }
    }
    None
}

/// An object of the idempotent split completion: `(X, t)` with `t∘t = t` in
/// the Kleisli category and `t ≤ e_X` in the enrichment.
#[derive(Clone)]
pub struct KarObject {
    pub monad: MonadInstance,
    pub carrier: Arc<Poset>,
    /// t : X → TX
    pub idem: MonotoneMap,
}

impl std::fmt::Debug for KarObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?}, {:?})", self.carrier, self.idem)
    }
}

impl KarObject {
    pub fn new(
        monad: MonadInstance,
        carrier: Arc<Poset>,
        idem: MonotoneMap,
    ) -> Result<KarObject, KleisliError> {
        let arrow = KleisliArrow::new(monad, carrier.clone(), idem.clone());
        let tt = kleisli_compose(&arrow, &arrow)?;
        if tt.map != idem {
            return Err(KleisliError::NotIdempotent);
        }
        let e = kleisli_id(monad, &carrier);
        if !kleisli_le(&arrow, &e) {
            return Err(KleisliError::NotBelowUnit);
        }
        Ok(KarObject { monad, carrier, idem })
    }

    pub fn arrow(&self) -> KleisliArrow {
        KleisliArrow::new(self.monad, self.carrier.clone(), self.idem.clone())
    }
}

/// Precomputed data for one Kleisli endpoint: `TX`, `TTX`, unit and
/// multiplication. Compositions against a context avoid rebuilding the
/// functor applications per arrow, which matters in the kar sweeps.
pub struct KleisliCtx {
    pub monad: MonadInstance,
    pub object: Arc<Poset>,
    pub t_obj: crate::monad::TObject,
    pub tt_obj: crate::monad::TObject,
    pub unit: MonotoneMap,
    pub mult: MonotoneMap,
}

impl KleisliCtx {
    pub fn new(t: MonadInstance, x: &Arc<Poset>) -> KleisliCtx {
        let t_obj = t.apply(x);
        let tt_obj = t.apply(&t_obj.carrier);
        let unit = t.unit_with(x, &t_obj);
        let mult = t.mult_with(x, &t_obj, &tt_obj);
        KleisliCtx { monad: t, object: x.clone(), t_obj, tt_obj, unit, mult }
    }

    /// `s ∘ r = m · Ts · r` for raw assignments `r : X → TY`, `s : Y → TZ`
    /// with `mid` the context of Y and `self` the context of Z.
    fn compose(&self, s: &MonotoneMap, mid: &KleisliCtx, r: &MonotoneMap) -> MonotoneMap {
        let ts = self.monad.map_with(s, &mid.t_obj, &self.tt_obj);
        self.mult
            .compose(&ts)
            .expect("endpoints")
            .compose(r)
            .expect("endpoints")
    }
}

/// Morphisms `(X,t) → (Y,u)` in kar are Kleisli arrows `r : X ⊸ Y` with
/// `u∘r = r = r∘t`; two objects are isomorphic when mutually inverse such
/// arrows compose to the idempotents.
pub fn kar_isomorphic(k1: &KarObject, k2: &KarObject) -> bool {
    let cx = KleisliCtx::new(k1.monad, &k1.carrier);
    let cy = KleisliCtx::new(k2.monad, &k2.carrier);
    kar_isomorphic_ctx(k1, &cx, k2, &cy)
}

fn kar_isomorphic_ctx(k1: &KarObject, cx: &KleisliCtx, k2: &KarObject, cy: &KleisliCtx) -> bool {
    use crate::enumerate::enumerate_monotone_maps;
    // kar morphisms in each direction
    let rs: Vec<MonotoneMap> = enumerate_monotone_maps(&k1.carrier, &cy.t_obj.carrier)
        .into_iter()
        .filter(|r| {
            cy.compose(&k2.idem, cy, r) == *r && cy.compose(r, cx, &k1.idem) == *r
        })
        .collect();
    if rs.is_empty() {
        return false;
    }
    let ss: Vec<MonotoneMap> = enumerate_monotone_maps(&k2.carrier, &cx.t_obj.carrier)
        .into_iter()
        .filter(|s| {
            cx.compose(&k1.idem, cx, s) == *s && cx.compose(s, cy, &k2.idem) == *s
        })
        .collect();
    for r in &rs {
        for s in &ss {
            if cx.compose(s, cy, r) == k1.idem && cy.compose(r, cx, s) == k2.idem {
                return true;
            }
        }
    }
    false
}

/// All kar objects over base objects of size ≤ `bound`, deduplicated up to
/// kar-isomorphism.
pub fn enumerate_kar(t: MonadInstance, bound: usize) -> Vec<KarObject> {
    use crate::enumerate::{enumerate_monotone_maps, enumerate_posets};
    let mut out: Vec<(KarObject, KleisliCtx)> = Vec::new();
    for n in 0..=bound {
        for x in enumerate_posets(n) {
            if !t.admits_object(&x) {
                continue;
            }
            let x = Arc::new(x);
            let ctx = KleisliCtx::new(t, &x);
            for map in enumerate_monotone_maps(&x, &ctx.t_obj.carrier) {
                // t ≤ e in the enrichment, then Kleisli idempotency
                if !le_maps(&map, &ctx.unit, t.enrichment()) {
                    continue;
                }
                if ctx.compose(&map, &ctx, &map) != map {
                    continue;
                }
                let k = KarObject { monad: t, carrier: x.clone(), idem: map };
                if !out
                    .iter()
                    .any(|(k2, c2)| kar_isomorphic_ctx(&k, &ctx, k2, c2))
                {
                    out.push((k, KleisliCtx::new(t, &x)));
                }
            }
        }
    }
    out.into_iter().map(|(k, _)| k).collect()
}

/// Splits the induced algebra endomorphism `t̂ = m · Tt : TX → TX` in Pos
/// and equips the image with its induced algebra structure.
pub fn split_kar(k: &KarObject) -> Result<(Algebra, Splitting), KleisliError> {
    let t = k.monad;
    let tx = t.apply(&k.carrier);
    let ttx = t.apply(&tx.carrier);
    let m = t.mult_with(&k.carrier, &tx, &ttx);
    let t_idem = t.map_with(&k.idem, &tx, &ttx);
    let t_hat = m.compose(&t_idem).expect("endpoints");
    let (y, r, s) = crate::limits::split_idempotent(&t_hat)
        .map_err(|_| KleisliError::NotIdempotent)?;
    // β = r ∘ m ∘ Ts : TY → Y
    let ty = t.apply(&y);
    let ts = t.map_with(&s, &ty, &ttx);
    let beta = r
        .compose(&m)
        .expect("endpoints")
        .compose(&ts)
        .expect("endpoints");
    let e_y = t.unit_with(&y, &ty);
    if !beta.compose(&e_y).expect("endpoints").is_identity() {
        return Err(KleisliError::BadSplit);
    }
    let algebra = Algebra {
        monad: t,
        carrier: y.clone(),
        structure: beta,
    };
    if !algebra.satisfies_laws() {
        return Err(KleisliError::BadSplit);
    }
    let splitting = find_splitting(&algebra).ok_or(KleisliError::BadSplit)?;
    Ok((algebra, splitting))
}
