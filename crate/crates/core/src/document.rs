//! Self-describing JSON document formats: operator descriptions,
//! generator-set descriptions for the standalone closure tool, and the
//! serialized form of closed subgroups. All scalar entries are strings
//! in the expression grammar.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::KVector;
use crate::operator::{AtomConvention, LevyOperator, MeasureComponent};
use crate::scalar::{Field, FieldDescriptor, Scalar};
use crate::subgroup::{ClosedSubgroup, GeneratorSet};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorDocument {
    pub dimension: usize,
    pub field: FieldDescriptor,
    #[serde(default)]
    pub sigma: Vec<Vec<String>>,
    pub drift: Vec<String>,
    #[serde(default = "canonical_str")]
    pub drift_convention: String,
    #[serde(default)]
    pub components: Vec<ComponentDoc>,
}

fn canonical_str() -> String {
    "canonical".to_string()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ComponentDoc {
    Atom {
        position: Vec<String>,
        weight: String,
        #[serde(default = "canonical_str")]
        convention: String,
    },
    Sphere {
        radius: String,
        surface_weight: String,
    },
    StableSubspace {
        basis: Vec<Vec<String>>,
        alpha: String,
        scale: String,
    },
    BallSupport {
        center: Vec<String>,
        radius: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorDocument {
    pub dimension: usize,
    pub field: FieldDescriptor,
    #[serde(default)]
    pub atoms: Vec<Vec<String>>,
    #[serde(default)]
    pub lines: Vec<Vec<String>>,
    /// Optional explicit prediction for the oracle to check against
    /// (otherwise the exact closure is used).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted: Option<GroupDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupDoc {
    pub v_basis: Vec<Vec<String>>,
    pub lattice_basis: Vec<Vec<String>>,
}

fn parse_vector(field: &Field, texts: &[String], what: &str) -> Result<KVector> {
    texts
        .iter()
        .map(|t| {
            field.parse(t).map_err(|e| match e {
                Error::SyntaxError { .. } | Error::UnknownToken(_) => {
                    Error::InvalidDocument(format!("{what}: {e}"))
                }
                other => other,
            })
        })
        .collect()
}

fn parse_rational(field_free: &str, what: &str) -> Result<BigRational> {
    let rational_field = Field::new(FieldDescriptor::Rational)?;
    let s = rational_field
        .parse(field_free)
        .map_err(|e| Error::InvalidDocument(format!("{what}: {e}")))?;
    s.rational_content()
        .ok_or_else(|| Error::InvalidDocument(format!("{what}: expected a rational value")))
}

fn render_vector(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.render()).collect()
}

fn render_rational(q: &BigRational) -> String {
    if q.denom() == &num_bigint::BigInt::from(1) {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl OperatorDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    pub fn build(&self) -> Result<(Field, LevyOperator)> {
        if self.drift_convention != "canonical" {
            return Err(Error::InvalidDocument(format!(
                "drift_convention must be \"canonical\", got {:?}",
                self.drift_convention
            )));
        }
        let field = Field::new(self.field.clone())?;
        let sigma: Vec<KVector> = self
            .sigma
            .iter()
            .enumerate()
            .map(|(j, col)| parse_vector(&field, col, &format!("sigma column {j}")))
            .collect::<Result<_>>()?;
        let drift = parse_vector(&field, &self.drift, "drift")?;
        let mut components = Vec::with_capacity(self.components.len());
        for (k, comp) in self.components.iter().enumerate() {
            let built = match comp {
                ComponentDoc::Atom { position, weight, convention } => {
                    let convention = match convention.as_str() {
                        "canonical" => AtomConvention::Canonical,
                        "pure_difference" => AtomConvention::PureDifference,
                        other => {
                            return Err(Error::InvalidDocument(format!(
                                "atom {k}: unknown convention {other:?}"
                            )))
                        }
                    };
                    MeasureComponent::Atom {
                        position: parse_vector(&field, position, &format!("atom {k} position"))?,
                        weight: parse_rational(weight, &format!("atom {k} weight"))?,
                        convention,
                    }
                }
                ComponentDoc::Sphere { radius, surface_weight } => MeasureComponent::Sphere {
                    radius: field
                        .parse(radius)
                        .map_err(|e| Error::InvalidDocument(format!("sphere radius: {e}")))?,
                    surface_weight: parse_rational(surface_weight, "sphere weight")?,
                },
                ComponentDoc::StableSubspace { basis, alpha, scale } => {
                    MeasureComponent::StableSubspace {
                        basis: basis
                            .iter()
                            .map(|b| parse_vector(&field, b, "stable basis"))
                            .collect::<Result<_>>()?,
                        alpha: parse_rational(alpha, "stable alpha")?,
                        scale: parse_rational(scale, "stable scale")?,
                    }
                }
                ComponentDoc::BallSupport { center, radius } => MeasureComponent::BallSupport {
                    center: parse_vector(&field, center, "ball center")?,
                    radius: field
                        .parse(radius)
                        .map_err(|e| Error::InvalidDocument(format!("ball radius: {e}")))?,
                },
            };
            components.push(built);
        }
        let op = LevyOperator::new(self.dimension, field.clone(), sigma, drift, components)?;
        Ok((field, op))
    }

    /// Echo of an operator in document form; re-parsing yields an
    /// operator with the identical verdict.
    pub fn from_operator(op: &LevyOperator) -> Self {
        OperatorDocument {
            dimension: op.dim,
            field: op.field.descriptor().clone(),
            sigma: op.sigma.iter().map(|c| render_vector(c)).collect(),
            drift: render_vector(&op.drift),
            drift_convention: canonical_str(),
            components: op
                .components
                .iter()
                .map(|c| match c {
                    MeasureComponent::Atom { position, weight, convention } => ComponentDoc::Atom {
                        position: render_vector(position),
                        weight: render_rational(weight),
                        convention: match convention {
                            AtomConvention::Canonical => "canonical".into(),
                            AtomConvention::PureDifference => "pure_difference".into(),
                        },
                    },
                    MeasureComponent::Sphere { radius, surface_weight } => ComponentDoc::Sphere {
                        radius: radius.render(),
                        surface_weight: render_rational(surface_weight),
                    },
                    MeasureComponent::StableSubspace { basis, alpha, scale } => {
                        ComponentDoc::StableSubspace {
                            basis: basis.iter().map(|b| render_vector(b)).collect(),
                            alpha: render_rational(alpha),
                            scale: render_rational(scale),
                        }
                    }
                    MeasureComponent::BallSupport { center, radius } => ComponentDoc::BallSupport {
                        center: render_vector(center),
                        radius: radius.render(),
                    },
                })
                .collect(),
        }
    }
}

impl GeneratorDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))
    }

    pub fn build(&self) -> Result<(Field, GeneratorSet, Option<ClosedSubgroup>)> {
        let field = Field::new(self.field.clone())?;
        let gen = GeneratorSet {
            dim: self.dimension,
            field: field.clone(),
            atoms: self
                .atoms
                .iter()
                .map(|a| parse_vector(&field, a, "atom"))
                .collect::<Result<_>>()?,
            lines: self
                .lines
                .iter()
                .map(|l| parse_vector(&field, l, "line"))
                .collect::<Result<_>>()?,
        };
        let predicted = match &self.predicted {
            None => None,
            Some(doc) => Some(group_from_doc(doc, self.dimension, &field)?),
        };
        Ok((field, gen, predicted))
    }
}

pub fn group_to_doc(g: &ClosedSubgroup) -> GroupDoc {
    GroupDoc {
        v_basis: g.v_basis().iter().map(|v| render_vector(v)).collect(),
        lattice_basis: g.lattice_basis().iter().map(|v| render_vector(v)).collect(),
    }
}

pub fn group_from_doc(doc: &GroupDoc, dim: usize, field: &Field) -> Result<ClosedSubgroup> {
    let v_basis = doc
        .v_basis
        .iter()
        .map(|v| parse_vector(field, v, "v_basis vector"))
        .collect::<Result<Vec<_>>>()?;
    let lattice = doc
        .lattice_basis
        .iter()
        .map(|v| parse_vector(field, v, "lattice_basis vector"))
        .collect::<Result<Vec<_>>>()?;
    ClosedSubgroup::from_parts(dim, field.clone(), v_basis, lattice)
}

/// Used for the truncation caveat in reports: operators with atomic mass
/// may be finite truncations of an intended infinite support.
pub fn has_atoms(op: &LevyOperator) -> bool {
    op.components.iter().any(|c| matches!(c, MeasureComponent::Atom { .. }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_document_roundtrip() {
        let text = r#"{
            "dimension": 2,
            "field": {"kind": "multi-quadratic", "radicands": [2, 3]},
            "sigma": [["1", "0"]],
            "drift": ["0", "sqrt2"],
            "components": [
                {"type": "atom", "position": ["1", "0"], "weight": "1",
                 "convention": "pure_difference"},
                {"type": "sphere", "radius": "1", "surface_weight": "1/2"},
                {"type": "stable_subspace", "basis": [["0", "1"]],
                 "alpha": "1/2", "scale": "1"},
                {"type": "ball_support", "center": ["0", "0"], "radius": "2"}
            ]
        }"#;
        let doc = OperatorDocument::from_json(text).unwrap();
        let (_, op) = doc.build().unwrap();
        assert_eq!(op.dim, 2);
        assert_eq!(op.components.len(), 4);
        let echo = OperatorDocument::from_operator(&op);
        let (_, op2) = echo.build().unwrap();
        assert_eq!(op2.drift, op.drift);
    }

    #[test]
    fn rejects_unknown_convention() {
        let text = r#"{
            "dimension": 1,
            "field": {"kind": "rational"},
            "drift": ["0"],
            "drift_convention": "levy-ito"
        }"#;
        let doc = OperatorDocument::from_json(text).unwrap();
        assert!(matches!(doc.build(), Err(Error::InvalidDocument(_))));
    }

    #[test]
    fn rejects_bad_scalar() {
        let text = r#"{
            "dimension": 1,
            "field": {"kind": "multi-quadratic", "radicands": [2, 3]},
            "drift": ["sqrt5"]
        }"#;
        let doc = OperatorDocument::from_json(text).unwrap();
        assert!(matches!(doc.build(), Err(Error::InvalidDocument(_))));
    }

    #[test]
    fn generator_document_with_prediction() {
        let text = r#"{
            "dimension": 1,
            "field": {"kind": "rational"},
            "atoms": [["1/2"], ["1/3"]],
            "predicted": {"v_basis": [], "lattice_basis": [["1/6"]]}
        }"#;
        let doc = GeneratorDocument::from_json(text).unwrap();
        let (_, gen, predicted) = doc.build().unwrap();
        assert_eq!(gen.atoms.len(), 2);
        let predicted = predicted.unwrap();
        let exact = crate::subgroup::closure(&gen).unwrap();
        assert!(exact.equals(&predicted).unwrap());
    }

    #[test]
    fn group_doc_roundtrip() {
        let f = Field::new(FieldDescriptor::multi_quadratic(&[2])).unwrap();
        let g = ClosedSubgroup::from_parts(
            2,
            f.clone(),
            vec![vec![f.parse("1").unwrap(), f.parse("sqrt2").unwrap()]],
            vec![vec![f.parse("1").unwrap(), f.parse("0").unwrap()]],
        )
        .unwrap();
        let doc = group_to_doc(&g);
        let back = group_from_doc(&doc, 2, &f).unwrap();
        assert!(g.equals(&back).unwrap());
    }
}
