use serde::Serialize;

use crate::construction::ManifoldState;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceJson {
    pub name: String,
    pub genus: u32,
    pub square: i64,
    pub tags: Vec<&'static str>,
}

/// Serialized form of a state; field order is part of the format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateJson {
    pub e: i64,
    pub sigma: i64,
    pub c1sq: i64,
    pub chi_h: Option<i64>,
    pub b2plus: Option<i64>,
    pub b2minus: Option<i64>,
    pub spin: &'static str,
    pub pi1: String,
    pub surfaces: Vec<SurfaceJson>,
    pub provenance: Vec<String>,
}

pub fn state_json(s: &ManifoldState) -> StateJson {
    let v = s.invariants;
    StateJson {
        e: v.e,
        sigma: v.sigma,
        c1sq: v.c1_sq(),
        chi_h: v.chi_h().value(),
        b2plus: v.b2_plus(),
        b2minus: v.b2_minus(),
        spin: v.spin.as_str(),
        pi1: s.pi1_summary(),
        surfaces: s
            .surfaces
            .iter()
            .map(|t| SurfaceJson {
                name: t.name.clone(),
                genus: t.genus,
                square: t.self_intersection,
                tags: t.tags.iter().map(|g| g.as_str()).collect(),
            })
            .collect(),
        provenance: s.provenance.iter().map(|p| p.to_string()).collect(),
    }
}
