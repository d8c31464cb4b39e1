//! Subcommand handlers. Each returns a certificate or an input-error
//! message; sweeps shard isomorphism classes across a worker pool and merge
//! results in canonical order.

use crate::cert::{Certificate, Verdict};
use crate::Ctx;
use orderlab::adjoint::is_adjunction;
use orderlab::algebra::{
    algebras_isomorphic, find_algebra_structure, find_splitting, is_algebraic_char,
    is_algebraic_direct, is_injective_wrt, is_kan_injective_object, m_t_class, unit_class,
};
use orderlab::domain::{classify, splitting_sweep_row, Classification};
use orderlab::enumerate::{enumerate_lattices, enumerate_monotone_maps, enumerate_posets};
use orderlab::json;
use orderlab::kleisli::{enumerate_kar, in_m_t, is_cauchy_complete, is_t_dense, split_kar};
use orderlab::lattice::Lattice;
use orderlab::monad::{
    verify_kz, verify_monad_laws, MonadInstance, TElements, DEFAULT_ASSOC_CAP, KZ_MONADS,
};
use orderlab::poset::Poset;
use orderlab::space::{alexandrov, is_sober, FinSpace};
use orderlab::weighted::{is_regular_cogenerator_instance, CategoryClass, WeightedError};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::sync::Arc;

type CmdResult = Result<Certificate, String>;

/// Input may be a poset or a space; both views are returned when possible.
struct LoadedObject {
    poset: Arc<Poset>,
    space: FinSpace,
    name: String,
}

fn load_object(ctx: &Ctx, file: &str) -> Result<LoadedObject, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))?;
    let value = json::parse(&text).map_err(|e| e.to_string())?;
    let obj = value
        .as_object()
        .ok_or_else(|| "top-level JSON object expected".to_string())?;
    let (poset, space) = if obj.contains_key("elements") {
        let p = json::poset_from_value(&value, "").map_err(|e| e.to_string())?;
        let s = alexandrov(&p);
        (p, s)
    } else {
        let s = json::space_from_value(&value, "").map_err(|e| e.to_string())?;
        let p = s
            .specialization_poset()
            .map_err(|e| e.to_string())?;
        (p, s)
    };
    if poset.len() > ctx.max_elements {
        return Err(format!(
            "object has {} elements; ORDERLAB_MAX_ELEMENTS caps inputs at {}",
            poset.len(),
            ctx.max_elements
        ));
    }
    Ok(LoadedObject {
        poset: Arc::new(poset),
        space,
        name: file.to_string(),
    })
}

fn monad_by_name(name: &str) -> Result<MonadInstance, String> {
    MonadInstance::from_name(name)
        .ok_or_else(|| format!("unknown monad `{name}` (expect D, I, F, F1, F2, Fc, adjbounds)"))
}

fn clamp_size(ctx: &Ctx, requested: Option<usize>, default: usize) -> usize {
    requested.unwrap_or(default).min(ctx.max_elements)
}

pub fn check(ctx: &Ctx, predicate: &str, file: &str) -> CmdResult {
    let obj = load_object(ctx, file)?;
    let flags = classify(&obj.poset);
    let flag = |b: bool| -> (Verdict, Option<Value>) {
        (if b { Verdict::Pass } else { Verdict::Fail }, None)
    };
    let (verdict, witness) = match predicate {
        "lattice" => flag(flags.lattice),
        "distributive" => match Lattice::new(obj.poset.clone()) {
            Err(_) => (Verdict::Fail, Some(json!({ "reason": "not a lattice" }))),
            Ok(l) => match l.distributivity_witness() {
                None => (Verdict::Pass, None),
                Some((a, b, c)) => (
                    Verdict::Fail,
                    Some(json!({
                        "a": obj.poset.label(a),
                        "b": obj.poset.label(b),
                        "c": obj.poset.label(c),
                        "lhs": obj.poset.label(l.meet(a, l.join(b, c))),
                        "rhs": obj.poset.label(l.join(l.meet(a, b), l.meet(a, c))),
                    })),
                ),
            },
        },
        "frame" => flag(flags.frame),
        "coframe" => flag(flags.coframe),
        "continuous" => flag(flags.continuous),
        "algebraic-domain" => flag(flags.algebraic_domain),
        "completely-distributive" => flag(flags.completely_distributive),
        "totally-algebraic" => flag(flags.totally_algebraic),
        "bounded-complete" => flag(flags.bounded_complete),
        "directed-complete" => flag(flags.directed_complete),
        "sober" => flag(is_sober(&obj.space)),
        "t0" => flag(obj.space.is_t0()),
        other => return Err(format!("unknown predicate `{other}`")),
    };
    Ok(Certificate::new(verdict, format!("check:{predicate}"), obj.name)
        .with_witness_opt(witness))
}

impl Certificate {
    fn with_witness_opt(mut self, witness: Option<Value>) -> Self {
        self.witness = witness;
        self
    }
}

fn describe_elements(t: &orderlab::monad::TObject, base_space: &FinSpace) -> Value {
    match &t.elems {
        TElements::Sets(sets) => Value::Array(
            sets.iter()
                .map(|s| {
                    Value::Array(
                        s.iter()
                            .map(|i| json!(base_space.point_label(i)))
                            .collect(),
                    )
                })
                .collect(),
        ),
        TElements::Filters { space, members } => Value::Array(
            members
                .iter()
                .map(|m| {
                    Value::Array(
                        m.iter()
                            .map(|k| {
                                Value::Array(
                                    space.opens()[k]
                                        .iter()
                                        .map(|i| json!(space.point_label(i)))
                                        .collect(),
                                )
                            })
                            .collect(),
                    )
                })
                .collect(),
        ),
        TElements::Bounds { inner } => json!({ "adjoined": ["bot", "top"], "inner": inner }),
    }
}

pub fn monad(ctx: &Ctx, name: &str, action: &str, file: &str) -> CmdResult {
    let t = monad_by_name(name)?;
    let obj = load_object(ctx, file)?;
    if !t.admits_object(&obj.poset) {
        return Err(format!("{} requires a lattice input", t.name()));
    }
    let law = format!("monad:{}:{}", t.name(), action);
    match action {
        "apply" => {
            let applied = t.apply(&obj.poset);
            let details = json!({
                "carrier": json::poset_to_value(&applied.carrier),
                "elements": describe_elements(&applied, &obj.space),
            });
            Ok(Certificate::new(Verdict::Pass, law, obj.name).with_details(details))
        }
        "unit" => {
            let e = t.unit(&obj.poset);
            Ok(Certificate::new(Verdict::Pass, law, obj.name)
                .with_details(json::map_to_value(&e)))
        }
        "mult" => {
            let m = t.mult(&obj.poset);
            Ok(Certificate::new(Verdict::Pass, law, obj.name)
                .with_details(json::map_to_value(&m)))
        }
        "kz-verify" => {
            let r = verify_kz(t, &obj.poset);
            let verdict = if r.all() { Verdict::Pass } else { Verdict::Fail };
            Ok(Certificate::new(verdict, law, obj.name).with_details(json!({
                "cond_i_Te_le_eT": r.cond_i,
                "cond_ii_m_adjoint_eT": r.cond_ii,
                "cond_iii_Te_adjoint_m": r.cond_iii,
                "conditions_agree": r.agree(),
            })))
        }
        "laws" => {
            let r = verify_monad_laws(t, &obj.poset, DEFAULT_ASSOC_CAP);
            let verdict = if r.pass() { Verdict::Pass } else { Verdict::Fail };
            let witness = r
                .failure
                .as_ref()
                .map(|f| json!({ "law": f.law, "at": f.witness }));
            Ok(Certificate::new(verdict, law, obj.name)
                .with_witness_opt(witness)
                .with_details(json!({
                    "functor_preserves_identity": r.functor_preserves_identity,
                    "unit_law_m_te": r.unit_law_m_te,
                    "unit_law_m_et": r.unit_law_m_et,
                    "associativity_checked": r.associativity_checked,
                    "associativity_complete": r.associativity_complete,
                })))
        }
        other => Err(format!("unknown monad action `{other}`")),
    }
}

pub fn algebra(
    ctx: &Ctx,
    name: &str,
    action: &str,
    file: &str,
    max_size: Option<usize>,
) -> CmdResult {
    let t = monad_by_name(name)?;
    let obj = load_object(ctx, file)?;
    if !t.admits_object(&obj.poset) {
        return Err(format!("{} requires a lattice input", t.name()));
    }
    let law = format!("algebra:{}:{}", t.name(), action);
    let found = find_algebra_structure(t, &obj.poset);
    match action {
        "find" => match found {
            Some(a) => Ok(Certificate::new(Verdict::Pass, law, obj.name)
                .with_details(json::map_to_value(&a.structure))),
            None => Ok(Certificate::new(Verdict::Absent, law, obj.name)
                .with_witness(json!({ "reason": "the unit has no adjoint on this object" }))),
        },
        "split" => match found {
            Some(a) => match find_splitting(&a) {
                Some(s) => Ok(Certificate::new(Verdict::Pass, law, obj.name)
                    .with_details(json::map_to_value(&s.t))),
                None => Ok(Certificate::new(Verdict::Absent, law, obj.name).with_witness(
                    json!({ "reason": "the structure map has no further adjoint" }),
                )),
            },
            None => Ok(Certificate::new(Verdict::Absent, law, obj.name)
                .with_witness(json!({ "reason": "no algebra structure" }))),
        },
        "algebraic" => match found {
            Some(a) => match is_algebraic_char(&a) {
                Ok(r) => {
                    let verdict = if r.algebraic { Verdict::Pass } else { Verdict::Fail };
                    Ok(Certificate::new(verdict, law, obj.name).with_details(json!({
                        "core": json::poset_to_value(&r.core),
                        "include": json::map_to_value(&r.include),
                        "core_is_dense": r.t_dense,
                        "structure_image_is_epi": r.epi,
                    })))
                }
                Err(e) => Ok(Certificate::new(Verdict::Absent, law, obj.name)
                    .with_witness(json!({ "reason": e.to_string() }))),
            },
            None => Ok(Certificate::new(Verdict::Absent, law, obj.name)
                .with_witness(json!({ "reason": "no algebra structure" }))),
        },
        "algebraic-direct" => match found {
            Some(a) => {
                let bound = clamp_size(ctx, max_size, obj.poset.len());
                match is_algebraic_direct(&a, bound) {
                    Some(y) => Ok(Certificate::new(Verdict::Pass, law, obj.name)
                        .with_details(json!({ "free_on": json::poset_to_value(&y) }))),
                    None => Ok(Certificate::new(Verdict::Absent, law, obj.name).with_witness(
                        json!({ "reason": format!("no witness up to size {bound}") }),
                    )),
                }
            }
            None => Ok(Certificate::new(Verdict::Absent, law, obj.name)
                .with_witness(json!({ "reason": "no algebra structure" }))),
        },
        other => Err(format!("unknown algebra action `{other}`")),
    }
}

fn posets_up_to(bound: usize) -> Vec<Arc<Poset>> {
    let mut out = Vec::new();
    for n in 0..=bound {
        for p in enumerate_posets(n) {
            out.push(Arc::new(p));
        }
    }
    out
}

pub fn verify(ctx: &Ctx, law: &str, max_size: Option<usize>, class: Option<&str>) -> CmdResult {
    match law {
        "kz-equiv" => {
            let bound = clamp_size(ctx, max_size, 3);
            let mut rows = Vec::new();
            let mut ok = true;
            for t in KZ_MONADS {
                for x in posets_up_to(bound) {
                    let r = verify_kz(t, &x);
                    ok &= r.agree() && r.all();
                    rows.push(json!({
                        "monad": t.name(),
                        "object": format!("{:?}", x),
                        "all": r.all(),
                        "agree": r.agree(),
                    }));
                }
            }
            for x in lattices_up_to(bound.max(1)) {
                let r = verify_kz(orderlab::monad::ADJOIN_BOUNDS, &x);
                ok &= r.agree() && !r.all();
                rows.push(json!({
                    "monad": "adjbounds",
                    "object": format!("{:?}", x),
                    "all": r.all(),
                    "agree": r.agree(),
                }));
            }
            sweep_certificate("verify:kz-equiv", bound, ok, rows)
        }
        "em-adjoint" => {
            let bound = clamp_size(ctx, max_size, 3);
            let mut rows = Vec::new();
            let mut ok = true;
            for t in KZ_MONADS {
                let enrich = t.enrichment();
                for x in posets_up_to(bound) {
                    let t1 = t.apply(&x);
                    let t2 = t.apply(&t1.carrier);
                    let e = t.unit_with(&x, &t1);
                    let m = t.mult_with(&x, &t1, &t2);
                    let mut divergences = 0usize;
                    let mut candidates = 0usize;
                    for alpha in enumerate_monotone_maps(&t1.carrier, &x) {
                        candidates += 1;
                        let unit_law = alpha.compose(&e).unwrap().is_identity();
                        let adj = is_adjunction(&alpha, &e, enrich);
                        let t_alpha = t.map_with(&alpha, &t2, &t1);
                        let laws = unit_law
                            && alpha.compose(&t_alpha).unwrap() == alpha.compose(&m).unwrap();
                        if unit_law != adj || adj != laws {
                            divergences += 1;
                        }
                    }
                    ok &= divergences == 0;
                    rows.push(json!({
                        "monad": t.name(),
                        "object": format!("{:?}", x),
                        "candidates": candidates,
                        "divergences": divergences,
                    }));
                }
            }
            sweep_certificate("verify:em-adjoint", bound, ok, rows)
        }
        "injectivity" => {
            let bound = clamp_size(ctx, max_size, 3);
            let mut rows = Vec::new();
            let mut ok = true;
            for t in [orderlab::monad::DOWNSET, orderlab::monad::IDEAL, orderlab::monad::FILTER] {
                let units = unit_class(t, bound);
                let m_t = m_t_class(t, bound);
                for a in posets_up_to(bound) {
                    let is_algebra = find_algebra_structure(t, &a).is_some();
                    let inj_units = is_injective_wrt(&a, &units);
                    let inj_m_t = is_injective_wrt(&a, &m_t);
                    let kan = m_t.iter().all(|h| is_kan_injective_object(t, &a, h));
                    let agree = is_algebra == inj_units && inj_units == inj_m_t && inj_m_t == kan;
                    ok &= agree;
                    rows.push(json!({
                        "monad": t.name(),
                        "object": format!("{:?}", a),
                        "algebra": is_algebra,
                        "four_way_agree": agree,
                    }));
                }
            }
            sweep_certificate("verify:injectivity", bound, ok, rows)
        }
        "cauchy" => {
            let bound = clamp_size(ctx, max_size, 3);
            let mut rows = Vec::new();
            let mut ok = true;
            for t in KZ_MONADS {
                for y in posets_up_to(bound) {
                    let complete = is_cauchy_complete(t, &y, 3);
                    ok &= complete;
                    rows.push(json!({
                        "monad": t.name(),
                        "object": format!("{:?}", y),
                        "cauchy_complete": complete,
                    }));
                }
            }
            sweep_certificate("verify:cauchy", bound, ok, rows)
        }
        "kar-spl" => {
            let bound = clamp_size(ctx, max_size, 2);
            let mut rows = Vec::new();
            let mut ok = true;
            for t in [orderlab::monad::DOWNSET, orderlab::monad::FILTER] {
                let kar = enumerate_kar(t, bound);
                let mut images = Vec::new();
                for k in &kar {
                    match split_kar(k) {
                        Ok((algebra, _)) => images.push(algebra),
                        Err(e) => {
                            ok = false;
                            rows.push(json!({
                                "monad": t.name(),
                                "error": e.to_string(),
                            }));
                        }
                    }
                }
                let mut split_algebras = Vec::new();
                for x in posets_up_to(bound) {
                    if let Some(a) = find_algebra_structure(t, &x) {
                        if find_splitting(&a).is_some() {
                            split_algebras.push(a);
                        }
                    }
                }
                let covered = split_algebras
                    .iter()
                    .all(|a| images.iter().any(|b| algebras_isomorphic(a, b)));
                let small_images_covered = images
                    .iter()
                    .filter(|b| b.carrier.len() <= bound)
                    .all(|b| split_algebras.iter().any(|a| algebras_isomorphic(a, b)));
                ok &= covered && small_images_covered;
                rows.push(json!({
                    "monad": t.name(),
                    "kar_classes": kar.len(),
                    "split_algebras": split_algebras.len(),
                    "classes_coincide": covered && small_images_covered,
                }));
            }
            sweep_certificate("verify:kar-spl", bound, ok, rows)
        }
        "char-algebraic" => {
            let bound = clamp_size(ctx, max_size, 4);
            let mut rows = Vec::new();
            let mut ok = true;
            for x in lattices_up_to(bound) {
                let a = find_algebra_structure(orderlab::monad::DOWNSET, &x)
                    .expect("lattices carry D-algebras");
                let direct = is_algebraic_direct(&a, x.len()).is_some();
                let chr = is_algebraic_char(&a).map(|r| r.algebraic).unwrap_or(false);
                ok &= direct == chr;
                rows.push(json!({
                    "lattice": format!("{:?}", x),
                    "direct": direct,
                    "characterisation": chr,
                }));
            }
            sweep_certificate("verify:char-algebraic", bound, ok, rows)
        }
        "thm6" => {
            let bound = clamp_size(ctx, max_size, 6);
            // shard the isomorphism classes across the worker pool and
            // merge rows in canonical order
            let lattices: Vec<Lattice> = (1..=bound).flat_map(enumerate_lattices).collect();
            let mut computed: Vec<(usize, orderlab::domain::SplittingSweepRow)> = lattices
                .par_iter()
                .enumerate()
                .map(|(i, l)| (i, splitting_sweep_row(l)))
                .collect();
            computed.sort_by_key(|(i, _)| *i);
            let ok = computed.iter().all(|(_, r)| r.consistent());
            let rows: Vec<Value> = computed
                .iter()
                .map(|(_, r)| {
                    json!({
                        "lattice": r.description,
                        "size": r.size,
                        "split": r.split,
                        "psi": r.psi_ok,
                        "compacts_coframe": r.compacts_coframe,
                        "consistent": r.consistent(),
                    })
                })
                .collect();
            sweep_certificate("verify:thm6", bound, ok, rows)
        }
        "regcogen" => {
            let class = CategoryClass::from_name(class.unwrap_or("alat"))
                .ok_or_else(|| "unknown class (expect alat, adom, spec)".to_string())?;
            let bound = clamp_size(ctx, max_size, 4);
            let mut rows = Vec::new();
            let mut ok = true;
            let mut verified = 0usize;
            for x in class.objects_up_to(bound) {
                if x.is_empty() {
                    continue;
                }
                match is_regular_cogenerator_instance(&x, class) {
                    Ok(rep) => {
                        ok &= rep.holds;
                        verified += 1;
                        rows.push(json!({
                            "object": format!("{:?}", x),
                            "equalizer_holds": rep.holds,
                            "equalizer_size": rep.equalizer_size,
                        }));
                    }
                    Err(WeightedError::LambdaTooLarge(n)) => {
                        rows.push(json!({
                            "object": format!("{:?}", x),
                            "refused": format!("|Λ| = {n} over the cap"),
                        }));
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
            ok &= verified > 0;
            sweep_certificate(&format!("verify:regcogen:{}", class.name()), bound, ok, rows)
        }
        "mt-identity" => {
            let bound = clamp_size(ctx, max_size, 3);
            let mut rows = Vec::new();
            let mut ok = true;
            for t in [orderlab::monad::DOWNSET, orderlab::monad::IDEAL, orderlab::monad::FILTER] {
                let mut maps = 0usize;
                let mut divergences = 0usize;
                for p in posets_up_to(bound) {
                    for q in posets_up_to(bound) {
                        for h in enumerate_monotone_maps(&p, &q) {
                            maps += 1;
                            if in_m_t(t, &h) != (is_t_dense(t, &h) && h.is_order_mono()) {
                                divergences += 1;
                            }
                        }
                    }
                }
                ok &= divergences == 0;
                rows.push(json!({
                    "monad": t.name(),
                    "maps": maps,
                    "divergences": divergences,
                }));
            }
            sweep_certificate("verify:mt-identity", bound, ok, rows)
        }
        other => Err(format!("unknown law `{other}`")),
    }
}

fn lattices_up_to(bound: usize) -> Vec<Arc<Poset>> {
    (1..=bound)
        .flat_map(enumerate_lattices)
        .map(|l| l.poset().clone())
        .collect()
}

fn sweep_certificate(law: &str, bound: usize, ok: bool, rows: Vec<Value>) -> CmdResult {
    let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
    let failing: Vec<&Value> = rows
        .iter()
        .filter(|r| {
            r.get("consistent").map(|v| v == false).unwrap_or(false)
                || r.get("four_way_agree").map(|v| v == false).unwrap_or(false)
                || r.get("divergences")
                    .and_then(Value::as_u64)
                    .map(|d| d > 0)
                    .unwrap_or(false)
        })
        .collect();
    let mut cert = Certificate::new(verdict, law, format!("sweep up to size {bound}"))
        .with_details(Value::Array(rows.clone()));
    if !ok && !failing.is_empty() {
        cert.witness = Some(json!(failing));
    }
    Ok(cert)
}

pub fn search(ctx: &Ctx, expr: &str, max_size: usize) -> CmdResult {
    let bound = max_size.min(ctx.max_elements);
    let atoms: Vec<(bool, String)> = expr
        .split('&')
        .map(|tok| {
            let tok = tok.trim();
            match tok.strip_prefix('!') {
                Some(rest) => (false, rest.trim().to_string()),
                None => (true, tok.to_string()),
            }
        })
        .collect();
    let eval = |flags: &Classification, name: &str| -> Result<bool, String> {
        Ok(match name {
            "lattice" => flags.lattice,
            "distributive" => flags.distributive,
            "frame" => flags.frame,
            "coframe" => flags.coframe,
            "continuous" => flags.continuous,
            "algebraic-domain" => flags.algebraic_domain,
            "completely-distributive" => flags.completely_distributive,
            "totally-algebraic" => flags.totally_algebraic,
            "bounded-complete" => flags.bounded_complete,
            "directed-complete" => flags.directed_complete,
            other => return Err(format!("unknown flag `{other}`")),
        })
    };
    let mut scanned = 0usize;
    for n in 0..=bound {
        for p in enumerate_posets(n) {
            scanned += 1;
            let p = Arc::new(p);
            let flags = classify(&p);
            let mut matches = true;
            for (want, name) in &atoms {
                if eval(&flags, name)? != *want {
                    matches = false;
                    break;
                }
            }
            if matches {
                return Ok(Certificate::new(
                    Verdict::Pass,
                    format!("search:{expr}"),
                    format!("first match at size {n}"),
                )
                .with_witness(json::poset_to_value(&p)));
            }
        }
    }
    Ok(Certificate::new(
        Verdict::Absent,
        format!("search:{expr}"),
        format!("exhausted {scanned} isomorphism classes up to size {bound}"),
    ))
}

pub fn kar_enumerate(ctx: &Ctx, name: &str, max_size: usize) -> CmdResult {
    let t = monad_by_name(name)?;
    let bound = max_size.min(ctx.max_elements);
    let kar = enumerate_kar(t, bound);
    let rows: Vec<Value> = kar
        .iter()
        .map(|k| {
            json!({
                "carrier": json::poset_to_value(&k.carrier),
                "idempotent": json::map_to_value(&k.idem),
            })
        })
        .collect();
    Ok(Certificate::new(
        Verdict::Pass,
        format!("kar:{}:enumerate", t.name()),
        format!("{} classes up to size {bound}", kar.len()),
    )
    .with_details(Value::Array(rows)))
}

pub fn kleisli_dense(ctx: &Ctx, name: &str, file: &str) -> CmdResult {
    let t = monad_by_name(name)?;
    let text = std::fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))?;
    let value = json::parse(&text).map_err(|e| e.to_string())?;
    let f = json::map_from_value(&value, "").map_err(|e| e.to_string())?;
    if f.dom().len() > ctx.max_elements || f.cod().len() > ctx.max_elements {
        return Err("map endpoints exceed ORDERLAB_MAX_ELEMENTS".to_string());
    }
    let dense = is_t_dense(t, &f);
    let verdict = if dense { Verdict::Pass } else { Verdict::Fail };
    Ok(Certificate::new(
        verdict,
        format!("kleisli:dense:{}", t.name()),
        file.to_string(),
    ))
}
