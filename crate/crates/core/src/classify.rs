//! Qualitative robustness bands for neutrality boundary values.

use serde::{Deserialize, Serialize};

use crate::boundary::NbValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandLabel {
    ExtremelyFragile,
    Fragile,
    ModeratelyRobust,
    Robust,
    VeryRobust,
}

impl BandLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            BandLabel::ExtremelyFragile => "extremely_fragile",
            BandLabel::Fragile => "fragile",
            BandLabel::ModeratelyRobust => "moderately_robust",
            BandLabel::Robust => "robust",
            BandLabel::VeryRobust => "very_robust",
        }
    }
}

/// A half-open interval `[lower, upper)` of nb values and its reading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobustnessBand {
    pub label: BandLabel,
    pub interpretation: &'static str,
    pub meaning: &'static str,
    pub lower: f64,
    pub upper: f64,
}

impl RobustnessBand {
    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value < self.upper
    }
}

/// Bands in increasing order; together they partition `[0, 1)`.
pub const BANDS: [RobustnessBand; 5] = [
    RobustnessBand {
        label: BandLabel::ExtremelyFragile,
        interpretation: "Extremely fragile",
        meaning: "Near neutrality",
        lower: 0.0,
        upper: 0.05,
    },
    RobustnessBand {
        label: BandLabel::Fragile,
        interpretation: "Fragile",
        meaning: "Slight separation",
        lower: 0.05,
        upper: 0.10,
    },
    RobustnessBand {
        label: BandLabel::ModeratelyRobust,
        interpretation: "Moderately robust",
        meaning: "Stable separation",
        lower: 0.10,
        upper: 0.25,
    },
    RobustnessBand {
        label: BandLabel::Robust,
        interpretation: "Robust",
        meaning: "Strong separation",
        lower: 0.25,
        upper: 0.50,
    },
    RobustnessBand {
        label: BandLabel::VeryRobust,
        interpretation: "Very robust",
        meaning: "Far from neutrality",
        lower: 0.50,
        upper: 1.0,
    },
];

pub fn classify(nb: &NbValue) -> &'static RobustnessBand {
    classify_value(nb.value())
}

// Boundary values belong to the stronger band.
pub(crate) fn classify_value(value: f64) -> &'static RobustnessBand {
    BANDS
        .iter()
        .rev()
        .find(|band| value >= band.lower)
        .unwrap_or(&BANDS[0])
}
