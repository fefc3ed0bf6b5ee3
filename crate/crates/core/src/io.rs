//! JSON instance and solution documents.
//!
//! Instance document:
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "alpha": 1.0,
//!   "move_cost": 1.0,
//!   "sensors": [{ "x": 0.0, "battery": 1.0 }, { "x": 1.0, "battery": 1.0 }],
//!   "order": [1, 2],
//!   "metadata": { "seed": 7, "generator": "random" }
//! }
//! ```
//!
//! `move_cost` is a nonnegative number or the string `"static"`. Each sensor
//! carries `rho` for fixed radii; either every sensor has it or none does.
//! `order` (1-based) and `metadata` are optional. Numbers are written in the
//! shortest form that parses back to the same `f64`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{MoveCost, OrderConstraint, ProblemInstance, Sensor, Solution};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensorRecord {
    pub x: f64,
    pub battery: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub schema_version: u32,
    pub alpha: f64,
    #[serde(with = "move_cost_field")]
    pub move_cost: MoveCost<f64>,
    pub sensors: Vec<SensorRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

mod move_cost_field {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Number(f64),
        Token(String),
    }

    pub fn serialize<Ser: Serializer>(cost: &MoveCost<f64>, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        match cost {
            MoveCost::Finite(a) => ser.serialize_f64(*a),
            MoveCost::Static => ser.serialize_str("static"),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<MoveCost<f64>, D::Error> {
        match Raw::deserialize(de)? {
            Raw::Number(a) => Ok(MoveCost::Finite(a)),
            Raw::Token(t) if t == "static" => Ok(MoveCost::Static),
            Raw::Token(t) => Err(serde::de::Error::custom(format!(
                "move_cost must be a number or \"static\", got \"{t}\""
            ))),
        }
    }
}

impl InstanceDocument {
    pub fn from_instance(inst: &ProblemInstance<f64>) -> Self {
        InstanceDocument {
            schema_version: SCHEMA_VERSION,
            alpha: inst.alpha(),
            move_cost: inst.move_cost(),
            sensors: inst
                .sensors()
                .iter()
                .map(|s| SensorRecord {
                    x: s.x,
                    battery: s.battery,
                    rho: s.rho,
                })
                .collect(),
            order: None,
            metadata: None,
        }
    }

    pub fn instance(&self) -> Result<ProblemInstance<f64>> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::instance(
                "schema_version",
                format!("expected {SCHEMA_VERSION}, got {}", self.schema_version),
            ));
        }
        let sensors = self
            .sensors
            .iter()
            .map(|s| Sensor {
                x: s.x,
                battery: s.battery,
                rho: s.rho,
            })
            .collect();
        ProblemInstance::new(self.alpha, self.move_cost, sensors)
    }

    /// The embedded order, validated against the sensor count.
    pub fn order_constraint(&self) -> Result<Option<OrderConstraint>> {
        let Some(order) = &self.order else {
            return Ok(None);
        };
        let order = OrderConstraint::from_one_based(order).map_err(|e| Error::instance("order", e.to_string()))?;
        if order.len() != self.sensors.len() {
            return Err(Error::instance(
                "order",
                format!("has {} entries for {} sensors", order.len(), self.sensors.len()),
            ));
        }
        Ok(Some(order))
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses and validates an instance document, order included.
pub fn parse_instance_document(text: &str) -> Result<InstanceDocument> {
    let doc: InstanceDocument = serde_json::from_str(text).map_err(parse_error)?;
    doc.instance()?;
    doc.order_constraint()?;
    Ok(doc)
}

pub fn parse_instance(text: &str) -> Result<ProblemInstance<f64>> {
    parse_instance_document(text)?.instance()
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("documents serialize to JSON");
    out.push('\n');
    out
}

pub fn serialize_instance(doc: &InstanceDocument) -> String {
    to_pretty(doc)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Placement {
    pub y: f64,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDocument {
    pub solver: String,
    pub lifetime: f64,
    pub achievable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    /// Left-to-right order of the deployment, 1-based.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
    pub sensors: Vec<Placement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl SolutionDocument {
    pub fn from_solution(sol: &Solution<f64>, solver: &str, epsilon: Option<f64>, order: Option<&OrderConstraint>) -> Self {
        SolutionDocument {
            solver: solver.to_string(),
            lifetime: sol.lifetime,
            achievable: sol.achievable,
            epsilon,
            order: order.map(OrderConstraint::to_one_based),
            sensors: sol.y.iter().zip(&sol.r).map(|(&y, &r)| Placement { y, r }).collect(),
            wall_time_ms: None,
        }
    }

    pub fn solution(&self) -> Solution<f64> {
        Solution {
            y: self.sensors.iter().map(|p| p.y).collect(),
            r: self.sensors.iter().map(|p| p.r).collect(),
            lifetime: self.lifetime,
            achievable: self.achievable,
        }
    }
}

pub fn parse_solution(text: &str) -> Result<SolutionDocument> {
    serde_json::from_str(text).map_err(parse_error)
}

pub fn serialize_solution(doc: &SolutionDocument) -> String {
    to_pretty(doc)
}
