//! Flat "olog" schema: objects, non-identity arrows and an explicit
//! composition table, so a category can be stored as plain data.
//!
//! Object `i` has id `o{i}`; arrow `i` has id `a{i}`. Identities are not
//! listed; a composition whose result is an identity names it `id:o{i}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::category::{CategoryBuilder, CategoryError, FiniteCategory, ObjectInfo};
use crate::linear_rep::QuiverOutput;
use crate::matrix::{Matrix, Rational};
use crate::perm_group::{FiniteGroup, SubgroupLattice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OlogObject {
    pub id: String,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup_class: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component_id: Option<usize>,
    pub aut_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OlogArrow {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OlogComposition {
    pub left: String,
    pub right: String,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct OlogExport {
    pub objects: Vec<OlogObject>,
    pub arrows: Vec<OlogArrow>,
    pub compositions: Vec<OlogComposition>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OlogError {
    #[error("duplicate id '{0}'")]
    DuplicateId(String),
    #[error("arrow '{arrow}' refers to missing object '{object}'")]
    DanglingArrow { arrow: String, object: String },
    #[error("composition refers to unknown arrow '{0}'")]
    UnknownArrow(String),
    #[error("composition {left} ∘ {right} = {result} is inconsistent: {reason}")]
    InconsistentComposition { left: String, right: String, result: String, reason: String },
    #[error("composite {left} ∘ {right} is not recorded")]
    MissingComposite { left: String, right: String },
    #[error("associativity fails on {a}, {b}, {c}")]
    NotAssociative { a: String, b: String, c: String },
    #[error("object '{id}' declares autOrder {declared} but has {actual} automorphisms")]
    AutOrderMismatch { id: String, declared: usize, actual: usize },
    #[error("invalid category: {0}")]
    Category(String),
}

pub const IDENTITY_LABEL: &str = "id";

pub fn object_id(i: usize) -> String {
    format!("o{i}")
}

fn arrow_id(cat: &FiniteCategory, i: usize) -> String {
    if cat.is_identity(i) {
        format!("id:{}", object_id(cat.arrows()[i].src))
    } else {
        format!("a{i}")
    }
}

pub fn export_olog(cat: &FiniteCategory) -> OlogExport {
    let objects = cat
        .objects()
        .iter()
        .enumerate()
        .map(|(i, o)| OlogObject {
            id: object_id(i),
            label: o.label.clone(),
            subgroup_class: o.subgroup_class,
            component_id: o.component,
            aut_order: cat.aut_order(i),
        })
        .collect();
    let arrows = cat
        .arrows()
        .iter()
        .enumerate()
        .filter(|&(i, _)| !cat.is_identity(i))
        .map(|(i, a)| OlogArrow { id: arrow_id(cat, i), src: object_id(a.src), dst: object_id(a.dst), label: a.label.clone() })
        .collect();
    let mut pairs: Vec<(usize, usize)> =
        cat.composable_pairs().filter(|&(l, r)| !cat.is_identity(l) && !cat.is_identity(r)).collect();
    pairs.sort_unstable();
    let compositions = pairs
        .into_iter()
        .map(|(l, r)| {
            let result = cat.compose(l, r).expect("validated category");
            OlogComposition { left: arrow_id(cat, l), right: arrow_id(cat, r), result: arrow_id(cat, result) }
        })
        .collect();
    OlogExport { objects, arrows, compositions }
}

/// An imported category with the ids of its objects and arrows.
#[derive(Clone, Debug)]
pub struct OlogImport {
    pub category: FiniteCategory,
    pub object_ids: Vec<String>,
    /// One id per arrow index; identities are `id:<object id>`.
    pub arrow_ids: Vec<String>,
}

pub fn import_olog(data: &OlogExport) -> Result<OlogImport, OlogError> {
    let mut object_index: HashMap<&str, usize> = HashMap::new();
    for (i, o) in data.objects.iter().enumerate() {
        if object_index.insert(o.id.as_str(), i).is_some() {
            return Err(OlogError::DuplicateId(o.id.clone()));
        }
    }
    let n = data.objects.len();
    let infos: Vec<ObjectInfo> = data
        .objects
        .iter()
        .map(|o| ObjectInfo { label: o.label.clone(), subgroup_class: o.subgroup_class, component: o.component_id })
        .collect();
    let mut builder = CategoryBuilder::new(infos, vec![IDENTITY_LABEL.to_string(); n]);

    let mut arrow_ids: Vec<String> = data.objects.iter().map(|o| format!("id:{}", o.id)).collect();
    let mut endpoints: Vec<(usize, usize)> = (0..n).map(|o| (o, o)).collect();
    let mut arrow_index: HashMap<String, usize> = arrow_ids.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    for a in &data.arrows {
        let resolve = |id: &str| {
            object_index
                .get(id)
                .copied()
                .ok_or_else(|| OlogError::DanglingArrow { arrow: a.id.clone(), object: id.to_string() })
        };
        let (s, d) = (resolve(&a.src)?, resolve(&a.dst)?);
        if object_index.contains_key(a.id.as_str()) || arrow_index.contains_key(&a.id) {
            return Err(OlogError::DuplicateId(a.id.clone()));
        }
        let idx = builder.add_arrow(s, d, a.label.clone());
        arrow_index.insert(a.id.clone(), idx);
        arrow_ids.push(a.id.clone());
        endpoints.push((s, d));
    }

    let mut recorded: HashMap<(usize, usize), usize> = HashMap::new();
    for c in &data.compositions {
        let lookup = |id: &str| arrow_index.get(id).copied().ok_or_else(|| OlogError::UnknownArrow(id.to_string()));
        let (l, r, res) = (lookup(&c.left)?, lookup(&c.right)?, lookup(&c.result)?);
        let bad = |reason: &str| OlogError::InconsistentComposition {
            left: c.left.clone(),
            right: c.right.clone(),
            result: c.result.clone(),
            reason: reason.to_string(),
        };
        if endpoints[r].1 != endpoints[l].0 {
            return Err(bad("arrows are not composable"));
        }
        if endpoints[res] != (endpoints[r].0, endpoints[l].1) {
            return Err(bad("result has the wrong endpoints"));
        }
        if (l < n && res != r) || (r < n && res != l) {
            return Err(bad("contradicts the unit law"));
        }
        if let Some(&prev) = recorded.get(&(l, r)) {
            if prev != res {
                return Err(bad("conflicts with an earlier record"));
            }
        }
        recorded.insert((l, r), res);
        if l >= n && r >= n {
            builder.set_composite(l, r, res);
        }
    }

    let category = builder.finish().map_err(|e| match e {
        CategoryError::MissingComposite { left, right } => {
            OlogError::MissingComposite { left: arrow_ids[left].clone(), right: arrow_ids[right].clone() }
        }
        CategoryError::NotAssociative { a, b, c } => {
            OlogError::NotAssociative { a: arrow_ids[a].clone(), b: arrow_ids[b].clone(), c: arrow_ids[c].clone() }
        }
        other => OlogError::Category(other.to_string()),
    })?;
    for (i, o) in data.objects.iter().enumerate() {
        let actual = category.aut_order(i);
        if actual != o.aut_order {
            return Err(OlogError::AutOrderMismatch { id: o.id.clone(), declared: o.aut_order, actual });
        }
    }
    let object_ids = data.objects.iter().map(|o| o.id.clone()).collect();
    Ok(OlogImport { category, object_ids, arrow_ids })
}

pub fn to_json(export: &OlogExport) -> String {
    serde_json::to_string_pretty(export).expect("plain data serializes")
}

pub fn from_json(text: &str) -> Result<OlogExport, serde_json::Error> {
    serde_json::from_str(text)
}

fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_json(&m.row(i))).collect())
}

/// JSON document for a degeneracy quiver, rationals as strings.
pub fn quiver_json(group: &FiniteGroup, lattice: &SubgroupLattice, quiver: &QuiverOutput) -> Value {
    let cycles = |g: usize| group.element(g).cycle_notation();
    let nodes: Vec<Value> = quiver
        .nodes
        .iter()
        .map(|n| {
            json!({
                "class": n.class_index,
                "label": lattice.classes[n.class_index].label(),
                "order": n.order,
                "fixDim": n.fix_dim,
                "movingDim": n.moving_dim,
                "fixBasis": n.fix_basis.iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let arrows: Vec<Value> = quiver
        .arrows
        .iter()
        .map(|a| {
            json!({
                "source": a.source,
                "target": a.target,
                "witness": cycles(a.witness),
                "sourceFixDim": a.normal.source_fix_dim,
                "targetFixDim": a.normal.target_fix_dim,
                "normalDim": a.normal.dim(),
                "normalBasis": a.normal.basis.iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
                "acting": a.normal.acting.iter().map(|&g| cycles(g)).collect::<Vec<_>>(),
                "matrices": a.normal.matrices.iter().map(matrix_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "nodes": nodes, "arrows": arrows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_arrow() -> FiniteCategory {
        let mut b = CategoryBuilder::new(vec![ObjectInfo::labeled("a"), ObjectInfo::labeled("b")], vec!["1".into(); 2]);
        b.add_arrow(0, 1, "f");
        b.finish().unwrap()
    }

    #[test]
    fn single_object() {
        let cat = CategoryBuilder::new(vec![ObjectInfo::labeled("pt")], vec!["1".into()]).finish().unwrap();
        let e = export_olog(&cat);
        assert_eq!((e.objects.len(), e.arrows.len(), e.compositions.len()), (1, 0, 0));
        assert_eq!(e.objects[0].aut_order, 1);
    }

    #[test]
    fn dangling_arrow_named() {
        let mut e = export_olog(&one_arrow());
        e.arrows[0].dst = "o9".into();
        assert_eq!(
            import_olog(&e).unwrap_err(),
            OlogError::DanglingArrow { arrow: "a2".into(), object: "o9".into() }
        );
    }

    #[test]
    fn inconsistent_composition_named() {
        let mut e = export_olog(&one_arrow());
        e.compositions.push(OlogComposition { left: "a2".into(), right: "a2".into(), result: "a2".into() });
        let err = import_olog(&e).unwrap_err();
        assert!(matches!(err, OlogError::InconsistentComposition { ref left, .. } if left == "a2"));
    }

    #[test]
    fn json_round_trip() {
        let e = export_olog(&one_arrow());
        let back = from_json(&to_json(&e)).unwrap();
        assert_eq!(back, e);
        let imported = import_olog(&back).unwrap();
        assert_eq!(export_olog(&imported.category), e);
        assert_eq!(imported.arrow_ids, vec!["id:o0", "id:o1", "a2"]);
    }
}
