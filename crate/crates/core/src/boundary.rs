//! The general neutrality boundary value and its canonical transform.
//!
//! For an observed contrast `delta`, a neutral reference `delta0` and a
//! positive scale `S`, the neutrality boundary value is
//!
//! ```text
//! nb = |delta - delta0| / (|delta - delta0| + S)
//! ```
//!
//! which lies in `[0, 1)`, is zero exactly on the neutrality boundary and
//! grows monotonically with the distance from it. Every domain-specific
//! metric in this crate reduces to this form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{NbError, Result};

/// Statistical context an [`NbValue`] was computed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    General,
    Binary2x2,
    ContingencyRxc,
    Anova,
    Correlation,
}

/// A validated neutrality boundary value in `[0, 1)`.
///
/// Construction fails for anything outside that interval. Values are never
/// clamped, so a formula that strays out of range surfaces as an error.
#[derive(Debug, Clone, PartialEq)]
pub struct NbValue {
    value: f64,
    domain: Domain,
    metric_name: &'static str,
}

impl NbValue {
    pub fn new(value: f64, domain: Domain, metric_name: &'static str) -> Result<Self> {
        if !(0.0..1.0).contains(&value) {
            return Err(NbError::validation(
                "nb",
                format!("{value} is outside [0, 1)"),
            ));
        }
        Ok(Self {
            value,
            domain,
            metric_name,
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn metric_name(&self) -> &'static str {
        self.metric_name
    }

    pub(crate) fn relabel(self, domain: Domain, metric_name: &'static str) -> Self {
        Self {
            domain,
            metric_name,
            ..self
        }
    }
}

impl fmt::Display for NbValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.value, self.metric_name)
    }
}

/// An observed contrast, its neutral reference and a positive scale, all in
/// the same units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contrast {
    delta: f64,
    delta0: f64,
    scale: f64,
}

impl Contrast {
    pub fn new(delta: f64, delta0: f64, scale: f64) -> Result<Self> {
        if !delta.is_finite() {
            return Err(NbError::validation(
                "delta",
                format!("{delta} is not finite"),
            ));
        }
        if !delta0.is_finite() {
            return Err(NbError::validation(
                "delta0",
                format!("{delta0} is not finite"),
            ));
        }
        if !scale.is_finite() || scale <= 0.0 {
            return Err(NbError::validation(
                "scale",
                format!("{scale} must be finite and strictly positive"),
            ));
        }
        Ok(Self {
            delta,
            delta0,
            scale,
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn delta0(&self) -> f64 {
        self.delta0
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `|delta - delta0|`.
    pub fn distance(&self) -> f64 {
        (self.delta - self.delta0).abs()
    }
}

/// `|delta - delta0| / (|delta - delta0| + S)`.
pub fn nb_general(contrast: &Contrast) -> Result<NbValue> {
    let distance = contrast.distance();
    if !distance.is_finite() {
        return Err(NbError::validation(
            "delta",
            "|delta - delta0| overflows binary64",
        ));
    }
    let denom = distance + contrast.scale;
    if !denom.is_finite() {
        return Err(NbError::validation(
            "scale",
            "|delta - delta0| + scale overflows binary64",
        ));
    }
    // One Newton correction using the exact rounding error of the sum keeps
    // the quotient within about half an ulp.
    let sum_err = {
        let b = denom - distance;
        (distance - (denom - b)) + (contrast.scale - b)
    };
    let q = distance / denom;
    let residual = (-q).mul_add(denom, distance) - q * sum_err;
    NbValue::new(q + residual / denom, Domain::General, "nb")
}

/// `x / (1 + x)`, mapping `[0, inf)` onto `[0, 1)`.
pub fn canonical_transform(x: f64) -> Result<NbValue> {
    if !x.is_finite() || x < 0.0 {
        return Err(NbError::validation(
            "x",
            format!("{x} must be finite and nonnegative"),
        ));
    }
    let denom = 1.0 + x;
    // 1 + x rounds to x once x exceeds 2^53, which would yield exactly 1.
    if denom == x {
        return Err(NbError::validation(
            "x",
            format!("{x} is too large to map strictly below 1"),
        ));
    }
    NbValue::new(x / denom, Domain::General, "x/(1+x)")
}
