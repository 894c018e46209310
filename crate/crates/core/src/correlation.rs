//! Distance to independence for Pearson correlations.
//!
//! `nb = |z| / (1 + |z|)` with `z = atanh(r)`, i.e. the general form with
//! `delta = |z|`, `delta0 = 0` and unit scale on the Fisher z axis.

use serde::{Deserialize, Serialize};

use crate::boundary::{nb_general, Contrast, Domain, NbValue};
use crate::error::{NbError, Result};

/// Correlations this close to +-1 are rejected as degenerate.
pub const DEGENERATE_R_MARGIN: f64 = 1e-12;

/// Paired observations, at least three, all finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct PairedSample {
    pairs: Vec<(f64, f64)>,
}

impl PairedSample {
    pub fn new(pairs: Vec<(f64, f64)>) -> Result<Self> {
        if pairs.len() < 3 {
            return Err(NbError::validation(
                "pairs",
                format!("need at least 3 pairs, got {}", pairs.len()),
            ));
        }
        if let Some(i) = pairs
            .iter()
            .position(|(x, y)| !x.is_finite() || !y.is_finite())
        {
            return Err(NbError::validation(
                "pairs",
                format!("pair {} is not finite", i + 1),
            ));
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl TryFrom<Vec<(f64, f64)>> for PairedSample {
    type Error = NbError;

    fn try_from(pairs: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(pairs)
    }
}

impl From<PairedSample> for Vec<(f64, f64)> {
    fn from(sample: PairedSample) -> Self {
        sample.pairs
    }
}

/// A correlation strictly inside `(-1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct CorrelationValue(f64);

impl CorrelationValue {
    pub fn new(r: f64) -> Result<Self> {
        if !(r.is_finite() && r.abs() < 1.0) {
            return Err(NbError::Domain {
                what: "r",
                value: r,
            });
        }
        Ok(Self(r))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for CorrelationValue {
    type Error = NbError;

    fn try_from(r: f64) -> Result<Self> {
        Self::new(r)
    }
}

impl From<CorrelationValue> for f64 {
    fn from(r: CorrelationValue) -> Self {
        r.0
    }
}

fn mean(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let n = values.clone().count() as f64;
    let m = values.clone().sum::<f64>() / n;
    m + values.map(|v| v - m).sum::<f64>() / n
}

/// Product-moment correlation with centred (two-pass) sums.
pub fn pearson_r(sample: &PairedSample) -> Result<CorrelationValue> {
    let xs = sample.pairs.iter().map(|p| p.0);
    let ys = sample.pairs.iter().map(|p| p.1);
    let (mx, my) = (mean(xs), mean(ys));

    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in &sample.pairs {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(NbError::UndefinedCorrelation("x"));
    }
    if syy == 0.0 {
        return Err(NbError::UndefinedCorrelation("y"));
    }

    let r = (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0);
    if r.abs() >= 1.0 - DEGENERATE_R_MARGIN {
        return Err(NbError::DegenerateCorrelation(r));
    }
    CorrelationValue::new(r)
}

/// `atanh(r)`, evaluated as `sign(r) * log1p(2|r| / (1 - |r|)) / 2` so the
/// result is exactly odd in `r`.
pub fn fisher_z(r: CorrelationValue) -> f64 {
    let a = r.0.abs();
    let z = 0.5 * (2.0 * a / (1.0 - a)).ln_1p();
    z.copysign(r.0)
}

/// `|z| / (1 + |z|)`.
pub fn nb_dti(r: CorrelationValue) -> Result<NbValue> {
    let contrast = Contrast::new(fisher_z(r).abs(), 0.0, 1.0)?;
    Ok(nb_general(&contrast)?.relabel(Domain::Correlation, "DTI"))
}
