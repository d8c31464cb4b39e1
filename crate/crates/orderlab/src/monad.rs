//! The bundled monad instances and the generic monad/KZ law verifiers.
//!
//! Seven instances over three bases: the down-set monad `D` and ideal monad
//! `I` on Pos (pointwise enrichment), the open-filter monad `F` with its
//! proper (`F1`), prime (`F2`) and completely prime (`Fc`) restrictions on
//! T0 spaces (dual-pointwise enrichment of the specialisation order), and
//! the bounds-adjoining monad on finite lattices with all monotone maps, a
//! reflection whose induced monad fails every KZ condition.
//!
//! Base objects are always presented as posets; for the filter family the
//! poset is the specialisation order and the space is its Alexandrov
//! topology, which is no loss of generality at finite scale.
//!
//! The n-prime filter monads for 2 < n < ∞ are not separate instances: on a
//! finite space every union of opens is a finite union of the distinct
//! opens involved, so their carriers coincide with the prime (equivalently
//! completely prime) one, which the test suites assert exactly.

use crate::adjoint::{is_adjunction, le_maps, Enrichment};
use crate::bits::BitSet;
use crate::filter::{all_filters, Filter};
use crate::lattice::Lattice;
use crate::map::MonotoneMap;
use crate::poset::Poset;
use crate::space::{alexandrov, FinSpace};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonadKind {
    Downset,
    Ideal,
    Filter,
    ProperFilter,
    PrimeFilter,
    CompletelyPrimeFilter,
    AdjoinBounds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseCategory {
    /// Posets and monotone maps, pointwise hom order.
    Pos,
    /// Finite T0 spaces and continuous maps, dual-pointwise specialisation
    /// hom order.
    Top0,
    /// Finite lattices and **all** monotone maps, pointwise hom order.
    FinLat,
}

/// A named monad bundle: object map, morphism map, unit and multiplication,
/// evaluated on demand. Instances are stateless and freely shareable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonadInstance {
    pub kind: MonadKind,
}

pub const DOWNSET: MonadInstance = MonadInstance { kind: MonadKind::Downset };
pub const IDEAL: MonadInstance = MonadInstance { kind: MonadKind::Ideal };
pub const FILTER: MonadInstance = MonadInstance { kind: MonadKind::Filter };
pub const PROPER_FILTER: MonadInstance = MonadInstance { kind: MonadKind::ProperFilter };
pub const PRIME_FILTER: MonadInstance = MonadInstance { kind: MonadKind::PrimeFilter };
pub const COMPLETELY_PRIME_FILTER: MonadInstance =
    MonadInstance { kind: MonadKind::CompletelyPrimeFilter };
pub const ADJOIN_BOUNDS: MonadInstance = MonadInstance { kind: MonadKind::AdjoinBounds };

/// The six Kock-Zöberlein instances (everything except the bounds-adjoining
/// counterexample).
pub const KZ_MONADS: [MonadInstance; 6] = [
    DOWNSET,
    IDEAL,
    FILTER,
    PROPER_FILTER,
    PRIME_FILTER,
    COMPLETELY_PRIME_FILTER,
];

pub const ALL_MONADS: [MonadInstance; 7] = [
    DOWNSET,
    IDEAL,
    FILTER,
    PROPER_FILTER,
    PRIME_FILTER,
    COMPLETELY_PRIME_FILTER,
    ADJOIN_BOUNDS,
];

/// `T X` together with a description of what its points are.
pub struct TObject {
    pub carrier: Arc<Poset>,
    pub elems: TElements,
}

pub enum TElements {
    /// Down-sets over the base elements (D, I).
    Sets(Vec<BitSet>),
    /// Filters over the open list of the base space (F family); the space
    /// is the Alexandrov space of the base poset.
    Filters { space: Arc<FinSpace>, members: Vec<BitSet> },
    /// Freely adjoined bounds: index 0 is the new bottom, `1..=inner` the
    /// base elements, `inner + 1` the new top.
    Bounds { inner: usize },
}

impl TObject {
    /// Lookup table from element descriptor to carrier index (set-valued
    /// families only).
    pub fn descriptor_index(&self) -> HashMap<BitSet, usize> {
        match &self.elems {
            TElements::Sets(v) => v.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect(),
            TElements::Filters { members, .. } => {
                members.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()
            }
            TElements::Bounds { .. } => HashMap::new(),
        }
    }
}

impl MonadInstance {
    pub fn name(&self) -> &'static str {
        match self.kind {
            MonadKind::Downset => "D",
            MonadKind::Ideal => "I",
            MonadKind::Filter => "F",
            MonadKind::ProperFilter => "F1",
            MonadKind::PrimeFilter => "F2",
            MonadKind::CompletelyPrimeFilter => "Fc",
            MonadKind::AdjoinBounds => "adjbounds",
        }
    }

    pub fn from_name(name: &str) -> Option<MonadInstance> {
        ALL_MONADS.iter().copied().find(|m| m.name() == name)
    }

    pub fn base(&self) -> BaseCategory {
        match self.kind {
            MonadKind::Downset | MonadKind::Ideal => BaseCategory::Pos,
            MonadKind::AdjoinBounds => BaseCategory::FinLat,
            _ => BaseCategory::Top0,
        }
    }

    pub fn enrichment(&self) -> Enrichment {
        match self.base() {
            BaseCategory::Pos | BaseCategory::FinLat => Enrichment::Pointwise,
            BaseCategory::Top0 => Enrichment::DualPointwise,
        }
    }

    pub fn is_kz_candidate(&self) -> bool {
        self.kind != MonadKind::AdjoinBounds
    }

    /// Does the base category contain this object?
    pub fn admits_object(&self, x: &Poset) -> bool {
        match self.base() {
            BaseCategory::Pos | BaseCategory::Top0 => true,
            BaseCategory::FinLat => Lattice::is_lattice(x),
        }
    }

    fn filter_flag(&self, f: &Filter) -> bool {
        match self.kind {
            MonadKind::Filter => true,
            MonadKind::ProperFilter => f.is_proper(),
            MonadKind::PrimeFilter => f.is_prime(),
            MonadKind::CompletelyPrimeFilter => f.is_completely_prime(),
            _ => unreachable!("not a filter monad"),
        }
    }

    pub fn apply(&self, x: &Arc<Poset>) -> TObject {
        assert!(
            self.admits_object(x),
            "{} applied outside its base category",
            self.name()
        );
        match self.kind {
            MonadKind::Downset | MonadKind::Ideal => {
                let mut sets = x.all_down_sets();
                if self.kind == MonadKind::Ideal {
                    sets.retain(|s| x.is_directed(s));
                }
                let labels: Vec<String> = sets.iter().map(|s| set_label(x, s)).collect();
                let n = sets.len();
                let up = (0..n)
                    .map(|i| {
                        BitSet::from_indices(
                            n,
                            (0..n).filter(|&j| sets[i].is_subset(&sets[j])),
                        )
                    })
                    .collect();
                let carrier = Arc::new(Poset::from_up_rows(labels, up));
                TObject { carrier, elems: TElements::Sets(sets) }
            }
            MonadKind::AdjoinBounds => {
                let n = x.len();
                let mut bot = "bot".to_string();
                let mut top = "top".to_string();
                while x.labels().contains(&bot) {
                    bot.insert(0, '_');
                }
                while x.labels().contains(&top) {
                    top.insert(0, '_');
                }
                let mut labels = Vec::with_capacity(n + 2);
                labels.push(bot);
                labels.extend(x.labels().iter().cloned());
                labels.push(top);
                let m = n + 2;
                let up = (0..m)
                    .map(|i| {
                        if i == 0 {
                            BitSet::full(m)
                        } else if i == m - 1 {
                            BitSet::singleton(m, m - 1)
                        } else {
                            let mut s = BitSet::from_indices(
                                m,
                                x.up_set(i - 1).iter().map(|j| j + 1),
                            );
                            s.insert(m - 1);
                            s
                        }
                    })
                    .collect();
                let carrier = Arc::new(Poset::from_up_rows(labels, up));
                TObject { carrier, elems: TElements::Bounds { inner: n } }
            }
            _ => {
                let space = Arc::new(alexandrov(x));
                let members: Vec<BitSet> = all_filters(&space)
                    .into_iter()
                    .filter(|m| {
                        self.filter_flag(&Filter { space: space.clone(), members: m.clone() })
                    })
                    .collect();
                let n = members.len();
                let labels: Vec<String> = (0..n).map(|i| format!("f{i}")).collect();
                let up = (0..n)
                    .map(|i| {
                        BitSet::from_indices(
                            n,
                            (0..n).filter(|&j| members[i].is_subset(&members[j])),
                        )
                    })
                    .collect();
                let carrier = Arc::new(Poset::from_up_rows(labels, up));
                TObject {
                    carrier,
                    elems: TElements::Filters { space, members },
                }
            }
        }
    }

    /// Unit `e_X : X → TX`.
    pub fn unit(&self, x: &Arc<Poset>) -> MonotoneMap {
        let t = self.apply(x);
        self.unit_with(x, &t)
    }

    pub fn unit_with(&self, x: &Arc<Poset>, t: &TObject) -> MonotoneMap {
        let assignment: Vec<usize> = match &t.elems {
            TElements::Sets(sets) => {
                let idx = index_of(sets);
                (0..x.len()).map(|p| idx[&x.down_set(p)]).collect()
            }
            TElements::Filters { space, members } => {
                let idx = index_of(members);
                (0..x.len()).map(|p| idx[&space.neighborhood_opens(p)]).collect()
            }
            TElements::Bounds { .. } => (0..x.len()).map(|p| p + 1).collect(),
        };
        MonotoneMap::new_unchecked(x.clone(), t.carrier.clone(), assignment)
    }

    /// Functor action on a monotone (= continuous) base morphism.
    pub fn map(&self, f: &MonotoneMap) -> MonotoneMap {
        let td = self.apply(f.dom());
        let tc = self.apply(f.cod());
        self.map_with(f, &td, &tc)
    }

    pub fn map_with(&self, f: &MonotoneMap, td: &TObject, tc: &TObject) -> MonotoneMap {
        let assignment: Vec<usize> = match (&td.elems, &tc.elems) {
            (TElements::Sets(dsets), TElements::Sets(csets)) => {
                let idx = index_of(csets);
                dsets
                    .iter()
                    .map(|a| {
                        let image = BitSet::from_indices(
                            f.cod().len(),
                            a.iter().map(|p| f.apply(p)),
                        );
                        idx[&f.cod().down_closure(&image)]
                    })
                    .collect()
            }
            (
                TElements::Filters { space: sd, members: md },
                TElements::Filters { space: sc, members: mc },
            ) => {
                let idx = index_of(mc);
                md.iter()
                    .map(|phi| {
                        let mut out = BitSet::empty(sc.open_count());
                        for (b, open) in sc.opens().iter().enumerate() {
                            let pre = BitSet::from_indices(
                                sd.len(),
                                (0..sd.len()).filter(|&i| open.contains(f.apply(i))),
                            );
                            let k = sd
                                .open_index_of(&pre)
                                .expect("preimage of an open is open");
                            if phi.contains(k) {
                                out.insert(b);
                            }
                        }
                        *idx.get(&out).unwrap_or_else(|| {
                            panic!("{}: image filter left the carrier", self.name())
                        })
                    })
                    .collect()
            }
            (TElements::Bounds { inner }, TElements::Bounds { .. }) => {
                let n = *inner;
                let m = f.cod().len();
                (0..n + 2)
                    .map(|i| {
                        if i == 0 {
                            0
                        } else if i == n + 1 {
                            m + 1
                        } else {
                            f.apply(i - 1) + 1
                        }
                    })
                    .collect()
            }
            _ => unreachable!("mismatched element families"),
        };
        MonotoneMap::new_unchecked(td.carrier.clone(), tc.carrier.clone(), assignment)
    }

    /// Multiplication `m_X : TTX → TX`.
    pub fn mult(&self, x: &Arc<Poset>) -> MonotoneMap {
        let t1 = self.apply(x);
        let t2 = self.apply(&t1.carrier);
        self.mult_with(x, &t1, &t2)
    }

    pub fn mult_with(&self, _x: &Arc<Poset>, t1: &TObject, t2: &TObject) -> MonotoneMap {
        let assignment: Vec<usize> = match (&t1.elems, &t2.elems) {
            (TElements::Sets(sets1), TElements::Sets(sets2)) => {
                let idx = index_of(sets1);
                sets2
                    .iter()
                    .map(|dd| {
                        let mut union = BitSet::empty(base_universe(sets1));
                        for a in dd.iter() {
                            union.union_with(&sets1[a]);
                        }
                        idx[&union]
                    })
                    .collect()
            }
            (
                TElements::Filters { space: s1, members: m1 },
                TElements::Filters { space: s2, members: m2 },
            ) => {
                // s2 is the Alexandrov space of the carrier of TX; the sharp
                // of a base open A is an open of that space
                let idx = index_of(m1);
                let sharp_index: Vec<usize> = (0..s1.open_count())
                    .map(|a| {
                        let sharp = BitSet::from_indices(
                            m1.len(),
                            (0..m1.len()).filter(|&f| m1[f].contains(a)),
                        );
                        s2.open_index_of(&sharp).expect("sharps are open")
                    })
                    .collect();
                m2.iter()
                    .map(|big| {
                        let out = BitSet::from_indices(
                            s1.open_count(),
                            (0..s1.open_count()).filter(|&a| big.contains(sharp_index[a])),
                        );
                        *idx.get(&out).unwrap_or_else(|| {
                            panic!("{}: multiplication left the carrier", self.name())
                        })
                    })
                    .collect()
            }
            (TElements::Bounds { inner }, TElements::Bounds { .. }) => {
                let n = *inner;
                // TTX = bot2 + (bot1 + X + top1) + top2
                (0..n + 4)
                    .map(|i| {
                        if i == 0 {
                            0
                        } else if i == n + 3 {
                            n + 1
                        } else {
                            i - 1
                        }
                    })
                    .collect()
            }
            _ => unreachable!("mismatched element families"),
        };
        MonotoneMap::new_unchecked(t2.carrier.clone(), t1.carrier.clone(), assignment)
    }
}

fn index_of(sets: &[BitSet]) -> HashMap<BitSet, usize> {
    sets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()
}

fn base_universe(sets: &[BitSet]) -> usize {
    sets.first().map_or(0, |s| s.universe())
}

fn set_label(x: &Poset, s: &BitSet) -> String {
    let parts: Vec<&str> = s.iter().map(|i| x.label(i)).collect();
    format!("{{{}}}", parts.join(","))
}

/// Report of the three equivalent Kock-Zöberlein conditions at one object:
/// (i) `Te_X ≤ e_TX`, (ii) `m_X ⊣ e_TX`, (iii) `Te_X ⊣ m_X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KzReport {
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
}

impl KzReport {
    pub fn all(&self) -> bool {
        self.cond_i && self.cond_ii && self.cond_iii
    }

    /// The three conditions are provably equivalent; any instance where they
    /// disagree is a bug.
    pub fn agree(&self) -> bool {
        self.cond_i == self.cond_ii && self.cond_ii == self.cond_iii
    }
}

pub fn verify_kz(t: MonadInstance, x: &Arc<Poset>) -> KzReport {
    let enrich = t.enrichment();
    let t1 = t.apply(x);
    let t2 = t.apply(&t1.carrier);
    let e = t.unit_with(x, &t1);
    let te = t.map_with(&e, &t1, &t2);
    let e_t = t.unit_with(&t1.carrier, &t2);
    let m = t.mult_with(x, &t1, &t2);
    KzReport {
        cond_i: le_maps(&te, &e_t, enrich),
        cond_ii: is_adjunction(&m, &e_t, enrich),
        cond_iii: is_adjunction(&te, &m, enrich),
    }
}

#[derive(Debug, Clone)]
pub struct LawFailure {
    pub law: &'static str,
    pub witness: String,
}

/// Monad-law report for one object: both unit laws checked exhaustively on
/// `TX`, identity preservation of the functor, and associativity checked
/// elementwise on `TTTX` (streamed; `associativity_complete` records whether
/// the stream was exhausted within the cap).
#[derive(Debug, Clone)]
pub struct LawsReport {
    pub functor_preserves_identity: bool,
    pub unit_law_m_te: bool,
    pub unit_law_m_et: bool,
    pub associativity_checked: usize,
    pub associativity_complete: bool,
    pub failure: Option<LawFailure>,
}

impl LawsReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
            && self.functor_preserves_identity
            && self.unit_law_m_te
            && self.unit_law_m_et
            && self.associativity_complete
    }
}

pub const DEFAULT_ASSOC_CAP: usize = 2_000_000;

pub fn verify_monad_laws(t: MonadInstance, x: &Arc<Poset>, assoc_cap: usize) -> LawsReport {
    let t1 = t.apply(x);
    let t2 = t.apply(&t1.carrier);
    let e = t.unit_with(x, &t1);
    let m = t.mult_with(x, &t1, &t2);
    verify_monad_laws_with(t, x, &t1, &t2, &e, &m, assoc_cap)
}

/// Law checks against explicitly supplied unit/mult tables, so corrupted
/// structure maps can be exercised as negative controls.
pub fn verify_monad_laws_with(
    t: MonadInstance,
    x: &Arc<Poset>,
    t1: &TObject,
    t2: &TObject,
    e: &MonotoneMap,
    m: &MonotoneMap,
    assoc_cap: usize,
) -> LawsReport {
    let mut failure = None;

    let tid = t.map_with(&MonotoneMap::identity(x.clone()), t1, t1);
    let functor_preserves_identity = tid.is_identity();
    if !functor_preserves_identity && failure.is_none() {
        failure = Some(LawFailure { law: "T(id) = id", witness: format!("{tid:?}") });
    }

    let te = t.map_with(e, t1, t2);
    let m_te = m.compose(&te).expect("endpoints");
    let unit_law_m_te = m_te.is_identity();
    if !unit_law_m_te && failure.is_none() {
        let w = (0..t1.carrier.len()).find(|&i| m_te.apply(i) != i).unwrap();
        failure = Some(LawFailure {
            law: "m ∘ Te = id",
            witness: format!("at {}", t1.carrier.label(w)),
        });
    }

    let e_t = t.unit_with(&t1.carrier, t2);
    let m_et = m.compose(&e_t).expect("endpoints");
    let unit_law_m_et = m_et.is_identity();
    if !unit_law_m_et && failure.is_none() {
        let w = (0..t1.carrier.len()).find(|&i| m_et.apply(i) != i).unwrap();
        failure = Some(LawFailure {
            law: "m ∘ eT = id",
            witness: format!("at {}", t1.carrier.label(w)),
        });
    }

    // associativity m ∘ Tm = m ∘ mT, elementwise over T³X
    let mut checked = 0usize;
    let mut complete = true;
    let mut assoc_witness: Option<String> = None;
    {
        let m_table: Vec<usize> = (0..t2.carrier.len()).map(|i| m.apply(i)).collect();
        match (&t1.elems, &t2.elems) {
            (TElements::Sets(sets1), TElements::Sets(sets2)) => {
                let idx2 = index_of(sets2);
                let directed_only = t.kind == MonadKind::Ideal;
                let carrier2 = t2.carrier.clone();
                carrier2.for_each_down_set(|el| {
                    if directed_only && !carrier2.is_directed(el) {
                        return true;
                    }
                    if checked >= assoc_cap {
                        complete = false;
                        return false;
                    }
                    checked += 1;
                    // mT side: union of the members of el (down-sets of TX)
                    let mut mt = BitSet::empty(sets1.len());
                    for a in el.iter() {
                        mt.union_with(&sets2[a]);
                    }
                    // Tm side: down-closure of { m(A) | A ∈ el } in TX
                    let hits = BitSet::from_indices(
                        sets1.len(),
                        el.iter().map(|a| m_table[a]),
                    );
                    let tm = t1.carrier.down_closure(&hits);
                    let lhs = idx2.get(&tm).map(|&j| m_table[j]);
                    let rhs = idx2.get(&mt).map(|&j| m_table[j]);
                    if lhs != rhs || lhs.is_none() {
                        assoc_witness = Some(format!("element {el:?} of T³X"));
                        return false;
                    }
                    true
                });
            }
            (
                TElements::Filters { .. },
                TElements::Filters { space: s2, members: m2 },
            ) => {
                // s2 = alexandrov(TX); elements of T³X are filters on the
                // opens of T³X's base space s3 = alexandrov(T²X)
                let idx2 = index_of(m2);
                let s3 = Arc::new(alexandrov(&t2.carrier));
                // for each open B of TX's space: index of B# (as an open of
                // T²X's space) and of m⁻¹(B)
                let sharp_index: Vec<usize> = (0..s2.open_count())
                    .map(|b| {
                        let sharp = BitSet::from_indices(
                            m2.len(),
                            (0..m2.len()).filter(|&f| m2[f].contains(b)),
                        );
                        s3.open_index_of(&sharp).expect("sharps are open")
                    })
                    .collect();
                let m_preimage_index: Vec<usize> = (0..s2.open_count())
                    .map(|b| {
                        let open_b = &s2.opens()[b];
                        let pre = BitSet::from_indices(
                            m2.len(),
                            (0..m2.len()).filter(|&i| open_b.contains(m_table[i])),
                        );
                        s3.open_index_of(&pre).expect("preimage of open is open")
                    })
                    .collect();
                for big in all_filters(&s3) {
                    if !t.filter_flag(&Filter { space: s3.clone(), members: big.clone() }) {
                        continue;
                    }
                    if checked >= assoc_cap {
                        complete = false;
                        break;
                    }
                    checked += 1;
                    // Tm(big) = { B ∈ Ω(TX) | m⁻¹(B) ∈ big }
                    let tm_filter = BitSet::from_indices(
                        s2.open_count(),
                        (0..s2.open_count()).filter(|&b| big.contains(m_preimage_index[b])),
                    );
                    // mT(big) = { B ∈ Ω(TX) | B# ∈ big }
                    let mt_filter = BitSet::from_indices(
                        s2.open_count(),
                        (0..s2.open_count()).filter(|&b| big.contains(sharp_index[b])),
                    );
                    let lhs = idx2.get(&tm_filter).map(|&j| m_table[j]);
                    let rhs = idx2.get(&mt_filter).map(|&j| m_table[j]);
                    if lhs != rhs || lhs.is_none() {
                        assoc_witness = Some(format!("filter {big:?} of T³X"));
                        break;
                    }
                }
            }
            (TElements::Bounds { inner }, TElements::Bounds { .. }) => {
                // T³X is small and explicit: bot3 + TTX + top3
                let n = *inner;
                let t3_size = n + 6;
                let mult_at_tx: Vec<usize> = {
                    // m_{TX} : T³X → T²X by the same collapse formula
                    (0..t3_size)
                        .map(|i| {
                            if i == 0 {
                                0
                            } else if i == t3_size - 1 {
                                n + 3
                            } else {
                                i - 1
                            }
                        })
                        .collect()
                };
                let t_m: Vec<usize> = {
                    // T(m): bot ↦ bot, top ↦ top, middle via m
                    (0..t3_size)
                        .map(|i| {
                            if i == 0 {
                                0
                            } else if i == t3_size - 1 {
                                n + 3
                            } else {
                                m_table[i - 1] + 1
                            }
                        })
                        .collect()
                };
                for el in 0..t3_size {
                    checked += 1;
                    let lhs = m_table[t_m[el]];
                    let rhs = m_table[mult_at_tx[el]];
                    if lhs != rhs {
                        assoc_witness = Some(format!("index {el} of T³X"));
                        break;
                    }
                }
            }
            _ => unreachable!(),
        }
    }
    if let Some(w) = assoc_witness {
        if failure.is_none() {
            failure = Some(LawFailure { law: "m ∘ Tm = m ∘ mT", witness: w });
        }
    }

    LawsReport {
        functor_preserves_identity,
        unit_law_m_te,
        unit_law_m_et,
        associativity_checked: checked,
        associativity_complete: complete,
        failure,
    }
}

/// Naturality of unit and multiplication at a base morphism.
pub fn verify_naturality(t: MonadInstance, f: &MonotoneMap) -> bool {
    let tx = t.apply(f.dom());
    let ty = t.apply(f.cod());
    let tf = t.map_with(f, &tx, &ty);
    let ex = t.unit_with(f.dom(), &tx);
    let ey = t.unit_with(f.cod(), &ty);
    if tf.compose(&ex).expect("endpoints") != ey.compose(f).expect("endpoints") {
        return false;
    }
    let ttx = t.apply(&tx.carrier);
    let tty = t.apply(&ty.carrier);
    let ttf = t.map_with(&tf, &ttx, &tty);
    let mx = t.mult_with(f.dom(), &tx, &ttx);
    let my = t.mult_with(f.cod(), &ty, &tty);
    my.compose(&ttf).expect("endpoints") == tf.compose(&mx).expect("endpoints")
}

/// Order-faithfulness of the functor over all map pairs between admitted
/// objects of size ≤ `bound`: `Tf ≤ Tg` implies `f ≤ g` in the enrichment.
pub fn is_order_faithful(t: MonadInstance, bound: usize) -> bool {
    use crate::enumerate::{enumerate_monotone_maps, enumerate_posets};
    let enrich = t.enrichment();
    for n in 0..=bound {
        for p in enumerate_posets(n) {
            if !t.admits_object(&p) {
                continue;
            }
            let p = Arc::new(p);
            let tp = t.apply(&p);
            for m_size in 0..=bound {
                for q in enumerate_posets(m_size) {
                    if !t.admits_object(&q) {
                        continue;
                    }
                    let q = Arc::new(q);
                    let tq = t.apply(&q);
                    let maps = enumerate_monotone_maps(&p, &q);
                    let tmaps: Vec<MonotoneMap> =
                        maps.iter().map(|f| t.map_with(f, &tp, &tq)).collect();
                    for (i, f) in maps.iter().enumerate() {
                        for (j, g) in maps.iter().enumerate() {
                            if le_maps(&tmaps[i], &tmaps[j], enrich)
                                && !le_maps(f, g, enrich)
                            {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// Prop-style cross-check: the unit is order-mono at every object of size
/// ≤ `bound` iff the functor is order-faithful at that bound.
pub fn units_are_order_mono(t: MonadInstance, bound: usize) -> bool {
    use crate::enumerate::enumerate_posets;
    for n in 0..=bound {
        for p in enumerate_posets(n) {
            if !t.admits_object(&p) {
                continue;
            }
            let p = Arc::new(p);
            if !t.unit(&p).is_order_mono() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{are_isomorphic, enumerate_posets};
    use crate::lattice::boolean_square;

    fn arc(p: Poset) -> Arc<Poset> {
        Arc::new(p)
    }

    #[test]
    fn downset_of_point_is_two_chain() {
        let d = DOWNSET.apply(&arc(Poset::chain(1)));
        assert!(are_isomorphic(&d.carrier, &Poset::chain(2)));
    }

    #[test]
    fn downset_of_antichain_is_boolean_square() {
        let d = DOWNSET.apply(&arc(Poset::antichain(2)));
        assert!(are_isomorphic(&d.carrier, &boolean_square()));
    }

    #[test]
    fn downset_unit_on_two_chain() {
        let x = arc(Poset::chain(2));
        let t = DOWNSET.apply(&x);
        let e = DOWNSET.unit_with(&x, &t);
        // e(⊥) = {⊥}
        let TElements::Sets(sets) = &t.elems else { panic!() };
        assert_eq!(sets[e.apply(0)], BitSet::from_indices(2, [0]));
        assert_eq!(sets[e.apply(1)], BitSet::full(2));
    }

    #[test]
    fn ideal_monad_collapses_to_principal_downsets() {
        let i = IDEAL.apply(&arc(Poset::antichain(2)));
        assert!(are_isomorphic(&i.carrier, &Poset::antichain(2)));
        let i = IDEAL.apply(&arc(Poset::chain(1)));
        assert!(are_isomorphic(&i.carrier, &Poset::chain(1)));
        let i = IDEAL.apply(&arc(Poset::chain(2)));
        assert!(are_isomorphic(&i.carrier, &Poset::chain(2)));
    }

    #[test]
    fn filter_monad_on_point_is_sierpinski() {
        let f = FILTER.apply(&arc(Poset::chain(1)));
        assert!(are_isomorphic(&f.carrier, &Poset::chain(2)));
        // and the space view is Sierpinski
        let sp = alexandrov(&f.carrier);
        assert_eq!(sp.open_count(), 3);
    }

    #[test]
    fn proper_and_prime_filters_on_sierpinski_give_sierpinski() {
        let s = arc(Poset::chain(2)); // specialisation poset of Sierpinski
        for t in [PROPER_FILTER, PRIME_FILTER] {
            let f = t.apply(&s);
            assert!(
                are_isomorphic(&f.carrier, &Poset::chain(2)),
                "{} S should be S",
                t.name()
            );
        }
    }

    #[test]
    fn filter_carrier_size_is_open_count() {
        for n in 0..=3 {
            for p in enumerate_posets(n) {
                let p = arc(p);
                let f = FILTER.apply(&p);
                assert_eq!(f.carrier.len(), alexandrov(&p).open_count());
            }
        }
    }

    #[test]
    fn prime_and_completely_prime_carriers_coincide() {
        // arbitrary unions of opens reduce to finite unions at this scale
        for n in 0..=3 {
            for p in enumerate_posets(n) {
                let p = arc(p);
                let f2 = PRIME_FILTER.apply(&p);
                let fc = COMPLETELY_PRIME_FILTER.apply(&p);
                let (TElements::Filters { members: m2, .. }, TElements::Filters { members: mc, .. }) =
                    (&f2.elems, &fc.elems)
                else {
                    panic!()
                };
                assert_eq!(m2, mc, "F2 and Fc carriers must coincide at {p:?}");
            }
        }
    }

    #[test]
    fn adjoin_bounds_on_point_is_three_chain() {
        let t = ADJOIN_BOUNDS.apply(&arc(Poset::chain(1)));
        assert!(are_isomorphic(&t.carrier, &Poset::chain(3)));
    }

    #[test]
    fn kz_holds_for_downset_small() {
        for n in 0..=3 {
            for p in enumerate_posets(n) {
                let p = arc(p);
                let r = verify_kz(DOWNSET, &p);
                assert!(r.all(), "KZ must hold for D at {p:?}");
                assert!(r.agree());
            }
        }
    }

    #[test]
    fn kz_holds_for_filter_small() {
        for n in 0..=2 {
            for p in enumerate_posets(n) {
                let p = arc(p);
                for t in [FILTER, PROPER_FILTER, PRIME_FILTER, COMPLETELY_PRIME_FILTER] {
                    let r = verify_kz(t, &p);
                    assert!(r.all(), "KZ must hold for {} at {p:?}", t.name());
                    assert!(r.agree());
                }
            }
        }
    }

    #[test]
    fn kz_fails_for_adjoin_bounds_on_point() {
        let r = verify_kz(ADJOIN_BOUNDS, &arc(Poset::chain(1)));
        assert!(!r.cond_i && !r.cond_ii && !r.cond_iii);
        assert!(r.agree());
    }

    #[test]
    fn monad_laws_hold_small() {
        for n in 0..=2 {
            for p in enumerate_posets(n) {
                let p = arc(p);
                for t in ALL_MONADS {
                    if !t.admits_object(&p) {
                        continue;
                    }
                    let r = verify_monad_laws(t, &p, DEFAULT_ASSOC_CAP);
                    assert!(r.pass(), "{} at {p:?}: {:?}", t.name(), r.failure);
                }
            }
        }
    }

    #[test]
    fn corrupted_mult_fails_with_witness() {
        let x = arc(Poset::chain(2));
        let t1 = DOWNSET.apply(&x);
        let t2 = DOWNSET.apply(&t1.carrier);
        let e = DOWNSET.unit_with(&x, &t1);
        // constant mult: collapses everything to the empty down-set
        let bad_m = MonotoneMap::constant(t2.carrier.clone(), t1.carrier.clone(), 0);
        let r = verify_monad_laws_with(DOWNSET, &x, &t1, &t2, &e, &bad_m, DEFAULT_ASSOC_CAP);
        assert!(!r.pass());
        assert!(r.failure.is_some());
    }

    #[test]
    fn naturality_small() {
        use crate::enumerate::enumerate_monotone_maps;
        for n in 1..=2 {
            for m in 1..=2 {
                for p in enumerate_posets(n) {
                    for q in enumerate_posets(m) {
                        let p = arc(p.clone());
                        let q = arc(q);
                        for f in enumerate_monotone_maps(&p, &q) {
                            for t in [DOWNSET, IDEAL, FILTER] {
                                assert!(verify_naturality(t, &f));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn functors_are_order_faithful_small() {
        for t in [DOWNSET, IDEAL, FILTER] {
            assert!(is_order_faithful(t, 2), "{}", t.name());
            assert_eq!(is_order_faithful(t, 2), units_are_order_mono(t, 2));
        }
    }
}
