//! Weighted-limit building blocks in Pos: products, equalisers, inserters,
//! cotensors, idempotent splitting, and general weighted limits over a
//! finite shape category.
//!
//! The general weighted limit is built the canonical way: as the equaliser of
//! the two comparison maps between products of cotensors. Conical limits are
//! the constant-singleton-weight special case; their projections are jointly
//! order-monic. Inserters here use the pointwise order of the ambient poset;
//! callers working in a dually enriched setting pass arguments accordingly.

use crate::bits::BitSet;
use crate::map::MonotoneMap;
use crate::poset::Poset;
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LimitError {
    #[error("maps are not a parallel pair")]
    NotParallel,
    #[error("map is not an endomorphism")]
    NotEndo,
    #[error("map is not idempotent: e(e({0})) ≠ e({0})")]
    NotIdempotent(String),
    #[error("diagram is not functorial: {0}")]
    NotFunctorial(String),
    #[error("diagram shapes disagree")]
    ShapeMismatch,
}

pub struct ProductResult {
    pub poset: Arc<Poset>,
    pub projections: Vec<MonotoneMap>,
    /// element index → component indices
    pub tuples: Vec<Vec<usize>>,
}

/// Conical product with componentwise order and tuple labels.
pub fn product(factors: &[Arc<Poset>]) -> ProductResult {
    let sizes: Vec<usize> = factors.iter().map(|p| p.len()).collect();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for &s in &sizes {
        let mut next = Vec::new();
        for t in &tuples {
            for v in 0..s {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
            }
        }
        tuples = next;
    }
    let n = tuples.len();
    let labels: Vec<String> = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t
                .iter()
                .enumerate()
                .map(|(k, &v)| factors[k].label(v))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let up = (0..n)
        .map(|i| {
            BitSet::from_indices(
                n,
                (0..n).filter(|&j| {
                    tuples[i]
                        .iter()
                        .zip(&tuples[j])
                        .enumerate()
                        .all(|(k, (&a, &b))| factors[k].le(a, b))
                }),
            )
        })
        .collect();
    let poset = Arc::new(Poset::from_up_rows(labels, up));
    let projections = (0..factors.len())
        .map(|k| {
            MonotoneMap::new_unchecked(
                poset.clone(),
                factors[k].clone(),
                tuples.iter().map(|t| t[k]).collect(),
            )
        })
        .collect();
    ProductResult { poset, projections, tuples }
}

pub struct SubobjectResult {
    pub poset: Arc<Poset>,
    pub include: MonotoneMap,
    /// indices into the ambient poset
    pub indices: Vec<usize>,
}

fn subobject(ambient: &Arc<Poset>, keep: impl Fn(usize) -> bool) -> SubobjectResult {
    let indices: Vec<usize> = (0..ambient.len()).filter(|&i| keep(i)).collect();
    let poset = Arc::new(ambient.restrict(&indices));
    let include = MonotoneMap::new_unchecked(poset.clone(), ambient.clone(), indices.clone());
    SubobjectResult { poset, include, indices }
}

/// Equaliser of a parallel pair: the full sub-poset where `f = g`.
pub fn equalizer(f: &MonotoneMap, g: &MonotoneMap) -> Result<SubobjectResult, LimitError> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(LimitError::NotParallel);
    }
    Ok(subobject(f.dom(), |i| f.apply(i) == g.apply(i)))
}

/// Inserter of a parallel pair: the full sub-poset where `f(x) ≤ g(x)`.
pub fn inserter(f: &MonotoneMap, g: &MonotoneMap) -> Result<SubobjectResult, LimitError> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(LimitError::NotParallel);
    }
    let cod = f.cod().clone();
    Ok(subobject(f.dom(), |i| cod.le(f.apply(i), g.apply(i))))
}

pub struct CotensorResult {
    pub poset: Arc<Poset>,
    /// projections `l^i`, one per element of the weight poset, with
    /// `l^i ≤ l^j` whenever `i ≤ j`
    pub projections: Vec<MonotoneMap>,
    /// element index → the underlying monotone assignment weight → target
    pub maps: Vec<Vec<usize>>,
    pub index: HashMap<Vec<usize>, usize>,
}

/// Cotensor `⋔(I, X)`: the poset of monotone maps I → X under pointwise
/// order.
pub fn cotensor(weight: &Arc<Poset>, target: &Arc<Poset>) -> CotensorResult {
    let maps: Vec<Vec<usize>> = crate::enumerate::enumerate_monotone_maps(weight, target)
        .into_iter()
        .map(|m| m.assignment().to_vec())
        .collect();
    let n = maps.len();
    let labels: Vec<String> = maps
        .iter()
        .map(|m| {
            let parts: Vec<&str> = m.iter().map(|&v| target.label(v)).collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let up = (0..n)
        .map(|i| {
            BitSet::from_indices(
                n,
                (0..n).filter(|&j| {
                    maps[i]
                        .iter()
                        .zip(&maps[j])
                        .all(|(&a, &b)| target.le(a, b))
                }),
            )
        })
        .collect();
    let poset = Arc::new(Poset::from_up_rows(labels, up));
    let projections = (0..weight.len())
        .map(|i| {
            MonotoneMap::new_unchecked(
                poset.clone(),
                target.clone(),
                maps.iter().map(|m| m[i]).collect(),
            )
        })
        .collect();
    let index = maps
        .iter()
        .enumerate()
        .map(|(k, m)| (m.clone(), k))
        .collect();
    CotensorResult { poset, projections, maps, index }
}

/// Splits an idempotent `e = s ∘ r` with `r ∘ s = id` through the image
/// poset.
pub fn split_idempotent(
    e: &MonotoneMap,
) -> Result<(Arc<Poset>, MonotoneMap, MonotoneMap), LimitError> {
    if e.dom() != e.cod() {
        return Err(LimitError::NotEndo);
    }
    let ee = e.compose(e).expect("endo");
    if ee != *e {
        let w = (0..e.dom().len())
            .find(|&i| ee.apply(i) != e.apply(i))
            .unwrap();
        return Err(LimitError::NotIdempotent(e.dom().label(w).to_string()));
    }
    let fixed: Vec<usize> = (0..e.dom().len()).filter(|&i| e.apply(i) == i).collect();
    let sub = e.dom().restrict(&fixed);
    let y = Arc::new(sub);
    let s = MonotoneMap::new_unchecked(y.clone(), e.dom().clone(), fixed.clone());
    let back: Vec<usize> = (0..e.dom().len())
        .map(|i| fixed.iter().position(|&x| x == e.apply(i)).unwrap())
        .collect();
    let r = MonotoneMap::new_unchecked(e.dom().clone(), y.clone(), back);
    Ok((y, r, s))
}

/// A finite category presented with an explicit composition table.
#[derive(Debug, Clone)]
pub struct FinCat {
    pub objects: usize,
    /// morphism id → (src, tgt)
    pub mors: Vec<(usize, usize)>,
    /// object → identity morphism id
    pub identities: Vec<usize>,
    /// compose[g][f] = Some(g∘f) when tgt(f) = src(g)
    pub compose: Vec<Vec<Option<usize>>>,
}

impl FinCat {
    /// One object, one identity.
    pub fn unit() -> FinCat {
        FinCat {
            objects: 1,
            mors: vec![(0, 0)],
            identities: vec![0],
            compose: vec![vec![Some(0)]],
        }
    }

    /// Two objects with a parallel pair of arrows 0 → 1.
    pub fn parallel_pair() -> FinCat {
        // mors: 0 = id_a, 1 = id_b, 2 = f, 3 = g
        let mors = vec![(0, 0), (1, 1), (0, 1), (0, 1)];
        let mut compose = vec![vec![None; 4]; 4];
        for (m, &(s, t)) in mors.iter().enumerate() {
            compose[m][if s == 0 { 0 } else { 1 }] = Some(m);
            let _ = t;
        }
        // g ∘ f only defined against identities here
        compose[0][0] = Some(0);
        compose[1][1] = Some(1);
        compose[2][0] = Some(2);
        compose[3][0] = Some(3);
        compose[1][2] = Some(2);
        compose[1][3] = Some(3);
        FinCat { objects: 2, mors, identities: vec![0, 1], compose }
    }

    pub fn validate(&self) -> Result<(), LimitError> {
        for (o, &i) in self.identities.iter().enumerate() {
            if self.mors.get(i).copied() != Some((o, o)) {
                return Err(LimitError::NotFunctorial(format!(
                    "identity of object {o} is not an endo-arrow"
                )));
            }
        }
        for g in 0..self.mors.len() {
            for f in 0..self.mors.len() {
                let composable = self.mors[f].1 == self.mors[g].0;
                match self.compose[g][f] {
                    Some(h) => {
                        if !composable
                            || self.mors[h] != (self.mors[f].0, self.mors[g].1)
                        {
                            return Err(LimitError::NotFunctorial(format!(
                                "bad composite {g}∘{f}"
                            )));
                        }
                    }
                    None => {
                        if composable {
                            return Err(LimitError::NotFunctorial(format!(
                                "missing composite {g}∘{f}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A functor from a finite shape into Pos: a poset per object, a monotone
/// map per morphism.
#[derive(Clone)]
pub struct PosDiagram {
    pub shape: FinCat,
    pub objects: Vec<Arc<Poset>>,
    pub arrows: Vec<MonotoneMap>,
}

impl PosDiagram {
    pub fn validate(&self) -> Result<(), LimitError> {
        self.shape.validate()?;
        if self.objects.len() != self.shape.objects || self.arrows.len() != self.shape.mors.len() {
            return Err(LimitError::ShapeMismatch);
        }
        for (m, &(s, t)) in self.shape.mors.iter().enumerate() {
            if **self.arrows[m].dom() != *self.objects[s] || **self.arrows[m].cod() != *self.objects[t] {
                return Err(LimitError::NotFunctorial(format!(
                    "arrow {m} endpoints disagree with shape"
                )));
            }
        }
        for (o, &i) in self.shape.identities.iter().enumerate() {
            if !self.arrows[i].is_identity() {
                return Err(LimitError::NotFunctorial(format!(
                    "identity of object {o} not sent to an identity map"
                )));
            }
        }
        for g in 0..self.shape.mors.len() {
            for f in 0..self.shape.mors.len() {
                if let Some(h) = self.shape.compose[g][f] {
                    let gf = self.arrows[g].compose(&self.arrows[f]).expect("validated");
                    if gf != self.arrows[h] {
                        return Err(LimitError::NotFunctorial(format!(
                            "functor breaks composite {g}∘{f}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

pub struct WeightedLimit {
    pub poset: Arc<Poset>,
    /// projections `l_d^x`, keyed by (diagram object d, weight element x)
    pub projections: Vec<((usize, usize), MonotoneMap)>,
}

/// Limit of `diagram` weighted by `weights`, built as the equaliser of the
/// two comparison maps between products of cotensors.
pub fn weighted_limit(
    diagram: &PosDiagram,
    weights: &PosDiagram,
) -> Result<WeightedLimit, LimitError> {
    diagram.validate()?;
    weights.validate()?;
    if diagram.shape.mors != weights.shape.mors
        || diagram.shape.objects != weights.shape.objects
    {
        return Err(LimitError::ShapeMismatch);
    }
    let shape = &diagram.shape;
    let cot: Vec<CotensorResult> = (0..shape.objects)
        .map(|o| cotensor(&weights.objects[o], &diagram.objects[o]))
        .collect();
    let source = product(&cot.iter().map(|c| c.poset.clone()).collect::<Vec<_>>());

    // comparison maps, one component per non-identity morphism n: a → b:
    //   Φ: postcompose with D(n):  w ∈ W(a) ↦ D(n)(tuple[a](w))
    //   Ψ: precompose with W(n):   w ∈ W(a) ↦ tuple[b](W(n)(w))
    let non_id: Vec<usize> = (0..shape.mors.len())
        .filter(|m| !shape.identities.contains(m))
        .collect();
    let target_cots: Vec<CotensorResult> = non_id
        .iter()
        .map(|&m| {
            let (a, b) = shape.mors[m];
            cotensor(&weights.objects[a], &diagram.objects[b])
        })
        .collect();
    let target = product(&target_cots.iter().map(|c| c.poset.clone()).collect::<Vec<_>>());

    let mut phi_assign = Vec::with_capacity(source.poset.len());
    let mut psi_assign = Vec::with_capacity(source.poset.len());
    for tuple in &source.tuples {
        let mut phi_components = Vec::with_capacity(non_id.len());
        let mut psi_components = Vec::with_capacity(non_id.len());
        for (k, &m) in non_id.iter().enumerate() {
            let (a, b) = shape.mors[m];
            let wa = weights.objects[a].len();
            let fam_a = &cot[a].maps[tuple[a]];
            let fam_b = &cot[b].maps[tuple[b]];
            let phi_fam: Vec<usize> = (0..wa)
                .map(|w| diagram.arrows[m].apply(fam_a[w]))
                .collect();
            let psi_fam: Vec<usize> = (0..wa)
                .map(|w| fam_b[weights.arrows[m].apply(w)])
                .collect();
            phi_components.push(target_cots[k].index[&phi_fam]);
            psi_components.push(target_cots[k].index[&psi_fam]);
        }
        phi_assign.push(tuple_index(&target.tuples, &phi_components));
        psi_assign.push(tuple_index(&target.tuples, &psi_components));
    }
    let phi = MonotoneMap::new_unchecked(source.poset.clone(), target.poset.clone(), phi_assign);
    let psi = MonotoneMap::new_unchecked(source.poset.clone(), target.poset.clone(), psi_assign);
    let eq = equalizer(&phi, &psi)?;

    let mut projections = Vec::new();
    for o in 0..shape.objects {
        for x in 0..weights.objects[o].len() {
            let proj = cot[o].projections[x]
                .compose(&source.projections[o])
                .expect("endpoints")
                .compose(&eq.include)
                .expect("endpoints");
            projections.push(((o, x), proj));
        }
    }
    Ok(WeightedLimit { poset: eq.poset, projections })
}

fn tuple_index(tuples: &[Vec<usize>], t: &[usize]) -> usize {
    tuples.iter().position(|u| u == t).expect("component in range")
}

/// Conical limit: weighted limit with every weight the singleton poset.
pub fn conical_limit(diagram: &PosDiagram) -> Result<WeightedLimit, LimitError> {
    let one = Arc::new(Poset::chain(1));
    let weights = PosDiagram {
        shape: diagram.shape.clone(),
        objects: vec![one.clone(); diagram.shape.objects],
        arrows: (0..diagram.shape.mors.len())
            .map(|_| MonotoneMap::identity(one.clone()))
            .collect(),
    };
    weighted_limit(diagram, &weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::are_isomorphic;

    fn square() -> Arc<Poset> {
        Arc::new(crate::lattice::boolean_square())
    }

    #[test]
    fn inserter_of_equal_maps_is_whole_domain() {
        let p = Arc::new(Poset::chain(3));
        let f = MonotoneMap::identity(p.clone());
        let r = inserter(&f, &f).unwrap();
        assert_eq!(r.poset.len(), 3);
        let e = equalizer(&f, &f).unwrap();
        assert_eq!(e.poset.len(), 3);
    }

    #[test]
    fn inserter_of_id_and_const_bottom() {
        // pointwise comparison oracle: x ≤ ⊥ only at ⊥
        let c2 = Arc::new(Poset::chain(2));
        let id = MonotoneMap::identity(c2.clone());
        let bot = MonotoneMap::constant(c2.clone(), c2.clone(), 0);
        let r = inserter(&id, &bot).unwrap();
        assert_eq!(r.poset.len(), 1);
        assert_eq!(r.poset.label(0), "a");
        // and the reverse inserter is everything
        let r = inserter(&bot, &id).unwrap();
        assert_eq!(r.poset.len(), 2);
    }

    #[test]
    fn cotensor_by_singleton_and_empty() {
        let x = square();
        let one = Arc::new(Poset::chain(1));
        let c = cotensor(&one, &x);
        assert!(are_isomorphic(&c.poset, &x));
        let empty = Arc::new(Poset::empty());
        let c = cotensor(&empty, &x);
        assert_eq!(c.poset.len(), 1);
    }

    #[test]
    fn cotensor_two_chains_is_three_chain() {
        // oracle: the 3 monotone endomaps of the 2-chain, pointwise ordered
        let c2 = Arc::new(Poset::chain(2));
        let c = cotensor(&c2, &c2);
        assert_eq!(c.poset.len(), 3);
        assert!(are_isomorphic(&c.poset, &Poset::chain(3)));
        // projections are jointly order-monic: distinct elements differ at
        // some index, and order is determined pointwise
        for i in 0..3 {
            for j in 0..3 {
                let le_pointwise = (0..2).all(|k| {
                    let pi = &c.projections[k];
                    c2.le(pi.apply(i), pi.apply(j))
                });
                assert_eq!(c.poset.le(i, j), le_pointwise);
            }
        }
        // l^i ≤ l^j for i ≤ j in the weight
        assert!(c.projections[0].pointwise_le(&c.projections[1]));
    }

    #[test]
    fn split_identity_and_constant() {
        let c2 = Arc::new(Poset::chain(2));
        let id = MonotoneMap::identity(c2.clone());
        let (y, r, s) = split_idempotent(&id).unwrap();
        assert!(are_isomorphic(&y, &c2));
        assert!(r.compose(&s).unwrap().is_identity());
        let bot = MonotoneMap::constant(c2.clone(), c2.clone(), 0);
        let (y, r, s) = split_idempotent(&bot).unwrap();
        assert_eq!(y.len(), 1);
        assert!(r.compose(&s).unwrap().is_identity());
        assert_eq!(s.compose(&r).unwrap(), bot);
    }

    #[test]
    fn split_three_chain_collapse() {
        // e on the 3-chain sending the middle down to the bottom
        let c3 = Arc::new(Poset::chain(3));
        let e = MonotoneMap::new(c3.clone(), c3.clone(), vec![0, 0, 2]).unwrap();
        let (y, r, s) = split_idempotent(&e).unwrap();
        assert!(are_isomorphic(&y, &Poset::chain(2)));
        assert!(r.compose(&s).unwrap().is_identity());
        assert_eq!(s.compose(&r).unwrap(), e);
    }

    #[test]
    fn non_idempotent_is_rejected() {
        let c3 = Arc::new(Poset::chain(3));
        // f(x) = x+1 capped: f∘f ≠ f
        let f = MonotoneMap::new(c3.clone(), c3.clone(), vec![1, 2, 2]).unwrap();
        assert!(matches!(split_idempotent(&f), Err(LimitError::NotIdempotent(_))));
    }

    #[test]
    fn unit_shape_weighted_limit_is_cotensor() {
        let x = square();
        let w = Arc::new(Poset::chain(2));
        let diagram = PosDiagram {
            shape: FinCat::unit(),
            objects: vec![x.clone()],
            arrows: vec![MonotoneMap::identity(x.clone())],
        };
        let weights = PosDiagram {
            shape: FinCat::unit(),
            objects: vec![w.clone()],
            arrows: vec![MonotoneMap::identity(w.clone())],
        };
        let lim = weighted_limit(&diagram, &weights).unwrap();
        let cot = cotensor(&w, &x);
        assert!(are_isomorphic(&lim.poset, &cot.poset));
    }

    #[test]
    fn inserter_shape_reproduces_inserter() {
        // f = id, g = const bottom on the square
        let x = square();
        let f = MonotoneMap::identity(x.clone());
        let g = MonotoneMap::constant(x.clone(), x.clone(), 0);
        let shape = FinCat::parallel_pair();
        let diagram = PosDiagram {
            shape: shape.clone(),
            objects: vec![x.clone(), x.clone()],
            arrows: vec![
                MonotoneMap::identity(x.clone()),
                MonotoneMap::identity(x.clone()),
                f.clone(),
                g.clone(),
            ],
        };
        let one = Arc::new(Poset::chain(1));
        let two = Arc::new(Poset::chain(2));
        let weights = PosDiagram {
            shape,
            objects: vec![one.clone(), two.clone()],
            arrows: vec![
                MonotoneMap::identity(one.clone()),
                MonotoneMap::identity(two.clone()),
                MonotoneMap::new(one.clone(), two.clone(), vec![0]).unwrap(),
                MonotoneMap::new(one.clone(), two.clone(), vec![1]).unwrap(),
            ],
        };
        let lim = weighted_limit(&diagram, &weights).unwrap();
        let ins = inserter(&f, &g).unwrap();
        assert!(are_isomorphic(&lim.poset, &ins.poset));
    }

    #[test]
    fn conical_limit_of_parallel_pair_is_equalizer() {
        let c3 = Arc::new(Poset::chain(3));
        let f = MonotoneMap::identity(c3.clone());
        let g = MonotoneMap::new(c3.clone(), c3.clone(), vec![0, 1, 1]).unwrap();
        let shape = FinCat::parallel_pair();
        let diagram = PosDiagram {
            shape,
            objects: vec![c3.clone(), c3.clone()],
            arrows: vec![
                MonotoneMap::identity(c3.clone()),
                MonotoneMap::identity(c3.clone()),
                f.clone(),
                g.clone(),
            ],
        };
        let lim = conical_limit(&diagram).unwrap();
        let eq = equalizer(&f, &g).unwrap();
        assert!(are_isomorphic(&lim.poset, &eq.poset));
        // jointly order-monic projections: order determined by components
        for i in 0..lim.poset.len() {
            for j in 0..lim.poset.len() {
                let by_proj = lim
                    .projections
                    .iter()
                    .all(|(_, p)| p.cod().le(p.apply(i), p.apply(j)));
                assert_eq!(lim.poset.le(i, j), by_proj);
            }
        }
    }

    #[test]
    fn non_functorial_diagram_is_rejected() {
        let c2 = Arc::new(Poset::chain(2));
        let shape = FinCat::unit();
        let bad = PosDiagram {
            shape,
            objects: vec![c2.clone()],
            // identity of the unit category mapped to a non-identity
            arrows: vec![MonotoneMap::constant(c2.clone(), c2.clone(), 0)],
        };
        assert!(matches!(bad.validate(), Err(LimitError::NotFunctorial(_))));
    }

    #[test]
    fn product_of_chains() {
        let c2 = Arc::new(Poset::chain(2));
        let r = product(&[c2.clone(), c2.clone()]);
        assert!(are_isomorphic(&r.poset, &crate::lattice::boolean_square()));
        assert_eq!(r.projections.len(), 2);
    }
}
