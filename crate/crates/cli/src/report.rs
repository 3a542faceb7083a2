//! Deterministic JSON reports. Identical inputs produce byte-identical
//! reports: no timestamps, all orderings fixed, witnesses embedded so a
//! reader can re-check every verdict through the library.

use cragged_core::craggedness::{CraggednessReport, IntegralityPattern, LagrangianFiber};
use cragged_core::homtheta::HomDimension;
use cragged_core::lattice::{CokernelPresentation, SublatticeIndex};
use cragged_core::polyhedra::Cone;
use cragged_core::stackyfan::FanJson;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: &str = "1";

pub fn int_value(x: &BigInt) -> Value {
    let v = i64::try_from(x).expect("value exceeds the interchange range");
    Value::from(v)
}

pub fn int_vec_value(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

pub fn int_rows_value(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(rows.iter().map(|r| int_vec_value(r)).collect())
}

pub fn rat_value(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

pub fn rat_vec_value(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(rat_value).collect())
}

pub fn cone_value(c: &Cone) -> Value {
    json!({
        "rays": int_rows_value(c.rays()),
        "lineality": int_rows_value(c.lineality()),
    })
}

pub fn fiber_value(f: &LagrangianFiber) -> Value {
    json!({
        "phi": rat_vec_value(&f.phi),
        "s_phi": f.s_phi,
        "fiber_cones": Value::Array(f.fiber_cones.iter().map(cone_value).collect()),
        "convex": f.convex,
        "hull": cone_value(&f.hull),
    })
}

pub fn pattern_value(p: &IntegralityPattern) -> Value {
    json!({
        "zero_set": p.zero_set.iter().copied().collect::<Vec<usize>>(),
        "representative_phi": rat_vec_value(&p.representative_phi),
        "s_phi": p.s_phi,
    })
}

pub fn index_value(ix: &SublatticeIndex) -> Value {
    match ix {
        SublatticeIndex::Index(k) => int_value(k),
        SublatticeIndex::RankDrop => Value::String("rank_drop".into()),
        SublatticeIndex::NotContained => Value::String("not_contained".into()),
    }
}

pub fn craggedness_value(r: &CraggednessReport) -> Value {
    let unimod = r.unimodularity_witness.as_ref().map(|w| {
        json!({
            "ray_indices": w.ray_indices,
            "n_t_basis": int_rows_value(&w.n_t_basis),
            "index": index_value(&w.index),
        })
    });
    json!({
        "exhaustive": r.exhaustive,
        "exhaustiveness_witness": r.exhaustiveness_witness,
        "unimodular": r.unimodular,
        "unimodularity_witness": unimod,
        "cragged": r.cragged,
        "fiber_witness": r.fiber_witness.as_ref().map(fiber_value),
        "cross_check": r.cross_check.as_ref().map(|c| json!({
            "patterns_checked": c.patterns_checked,
            "nonconvex_zero_sets": c.nonconvex_zero_sets.iter()
                .map(|s| s.iter().copied().collect::<Vec<usize>>())
                .collect::<Vec<_>>(),
            "agrees": c.agrees,
        })),
    })
}

pub fn hom_value(h: &HomDimension) -> Value {
    json!({
        "zero": h.zero,
        "truncated_count": h.truncated_count,
        "box_bound": h.box_bound,
        "basis_points": int_rows_value(&h.basis_points),
    })
}

pub fn gale_value(g: &CokernelPresentation) -> Value {
    json!({
        "free_rank": g.free_rank,
        "torsion_factors": Value::Array(g.torsion_factors.iter().map(int_value).collect()),
        "projection": int_rows_value(&g.projection.row_vecs()),
    })
}

/// Canonical fan JSON text: the round-trip fixed point of the interchange
/// format, also the content that is hashed for the input digest.
pub fn canonical_fan_text(fan: &cragged_core::StackyFan) -> String {
    let j = FanJson::from_fan(fan).expect("fan fits the interchange format");
    serde_json::to_string_pretty(&j).expect("serialization is infallible")
}

pub fn input_digest(fan: &cragged_core::StackyFan) -> String {
    let mut h = Sha256::new();
    h.update(canonical_fan_text(fan).as_bytes());
    format!("sha256:{:x}", h.finalize())
}

/// Assemble the report envelope. Field order is fixed by insertion order
/// being irrelevant: serde_json's map is sorted, which is what makes byte
/// determinism trivial to audit.
pub fn report(digest: &str, verb: &str, payload: Value, witnesses: Vec<Value>) -> String {
    let mut m = Map::new();
    m.insert("schema_version".into(), Value::String(SCHEMA_VERSION.into()));
    m.insert("input_digest".into(), Value::String(digest.into()));
    m.insert("verb".into(), Value::String(verb.into()));
    m.insert("payload".into(), payload);
    m.insert("witnesses".into(), Value::Array(witnesses));
    serde_json::to_string_pretty(&Value::Object(m)).expect("serialization is infallible")
}
