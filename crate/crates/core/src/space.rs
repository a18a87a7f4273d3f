//! The minimal vector-space interface shared by every graded component.

use std::fmt::Debug;

use serde_json::Value;

use crate::algebra::GVector;

pub trait Vector: Clone + Debug + Send + Sync {
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, a: f64) -> Self;
    fn norm(&self) -> f64;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Serialized form used for witnesses in reports.
    fn to_json(&self) -> Value;
}

impl Vector for f64 {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, a: f64) -> Self {
        self * a
    }
    fn norm(&self) -> f64 {
        self.abs()
    }
    fn to_json(&self) -> Value {
        Value::from(*self)
    }
}

impl Vector for GVector {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, a: f64) -> Self {
        self * a
    }
    fn norm(&self) -> f64 {
        nalgebra::DVector::norm(self)
    }
    fn to_json(&self) -> Value {
        Value::from(self.as_slice().to_vec())
    }
}

/// The zero vector space.
impl Vector for () {
    fn add(&self, _: &Self) -> Self {}
    fn scale(&self, _: f64) -> Self {}
    fn norm(&self) -> f64 {
        0.0
    }
    fn to_json(&self) -> Value {
        Value::Null
    }
}
