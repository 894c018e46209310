//! One-way fixed-effect ANOVA: partial eta squared and Cohen's f.
//!
//! The neutrality boundary value is `df_b * F / (df_b * F + df_w)`, which
//! for one-way designs equals `SS_between / (SS_between + SS_within)`.
//! Neutrality is equality of all group means.

use serde::{Deserialize, Serialize};

use crate::boundary::{canonical_transform, nb_general, Contrast, Domain, NbValue};
use crate::error::{NbError, Result};

/// Degrees of freedom and F statistic of a one-way ANOVA.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnovaSummary {
    df_between: u64,
    df_within: u64,
    f_stat: f64,
}

impl AnovaSummary {
    pub fn new(df_between: u64, df_within: u64, f_stat: f64) -> Result<Self> {
        if df_between < 1 {
            return Err(NbError::validation("df_between", "must be at least 1"));
        }
        if df_within < 1 {
            return Err(NbError::validation("df_within", "must be at least 1"));
        }
        if !f_stat.is_finite() || f_stat < 0.0 {
            return Err(NbError::validation(
                "f_stat",
                format!("{f_stat} must be finite and nonnegative"),
            ));
        }
        Ok(Self {
            df_between,
            df_within,
            f_stat,
        })
    }

    pub fn df_between(&self) -> u64 {
        self.df_between
    }

    pub fn df_within(&self) -> u64 {
        self.df_within
    }

    pub fn f_stat(&self) -> f64 {
        self.f_stat
    }
}

/// A labelled group of observations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Group {
    pub label: String,
    pub values: Vec<f64>,
}

/// Observations for `k >= 2` groups, each with at least two finite values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Group>", into = "Vec<Group>")]
pub struct GroupData {
    groups: Vec<Group>,
}

impl GroupData {
    pub fn new(groups: Vec<Group>) -> Result<Self> {
        if groups.len() < 2 {
            return Err(NbError::validation(
                "groups",
                format!("need at least 2 groups, got {}", groups.len()),
            ));
        }
        for g in &groups {
            if g.values.len() < 2 {
                return Err(NbError::validation(
                    "groups",
                    format!(
                        "group '{}' has {} observation(s), need at least 2",
                        g.label,
                        g.values.len()
                    ),
                ));
            }
            if let Some(v) = g.values.iter().find(|v| !v.is_finite()) {
                return Err(NbError::validation(
                    "groups",
                    format!("group '{}' contains non-finite value {v}", g.label),
                ));
            }
        }
        Ok(Self { groups })
    }

    /// Unlabelled groups, named `1`, `2`, ... in order.
    pub fn from_values(groups: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(
            groups
                .into_iter()
                .enumerate()
                .map(|(i, values)| Group {
                    label: (i + 1).to_string(),
                    values,
                })
                .collect(),
        )
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn num_observations(&self) -> usize {
        self.groups.iter().map(|g| g.values.len()).sum()
    }

    /// Applies `f` to every observation.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            self.groups
                .iter()
                .map(|g| Group {
                    label: g.label.clone(),
                    values: g.values.iter().map(|&v| f(v)).collect(),
                })
                .collect(),
        )
    }
}

impl TryFrom<Vec<Group>> for GroupData {
    type Error = NbError;

    fn try_from(groups: Vec<Group>) -> Result<Self> {
        Self::new(groups)
    }
}

impl From<GroupData> for Vec<Group> {
    fn from(data: GroupData) -> Self {
        data.groups
    }
}

/// Between- and within-group sums of squares.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumsOfSquares {
    pub between: f64,
    pub within: f64,
}

// Mean with one correction pass over the residuals.
fn mean<'a>(values: impl Iterator<Item = &'a f64> + Clone) -> f64 {
    let (sum, count) = values
        .clone()
        .fold((0.0, 0usize), |(s, n), &v| (s + v, n + 1));
    let m = sum / count as f64;
    m + values.map(|&v| v - m).sum::<f64>() / count as f64
}

/// Two-pass sums of squares about the group and grand means.
pub fn sums_of_squares(data: &GroupData) -> SumsOfSquares {
    let grand = mean(data.groups.iter().flat_map(|g| g.values.iter()));
    let mut between = 0.0;
    let mut within = 0.0;
    for g in &data.groups {
        let m = mean(g.values.iter());
        between += g.values.len() as f64 * (m - grand).powi(2);
        within += g.values.iter().map(|&v| (v - m).powi(2)).sum::<f64>();
    }
    SumsOfSquares { between, within }
}

/// Derives `(df_b, df_w, F)` from raw group observations.
pub fn anova_from_raw(data: &GroupData) -> Result<AnovaSummary> {
    let k = data.num_groups() as u64;
    let n = data.num_observations() as u64;
    let df_between = k - 1;
    let df_within = n - k;
    let ss = sums_of_squares(data);
    if ss.within == 0.0 {
        return Err(if ss.between == 0.0 {
            NbError::IndeterminateF
        } else {
            NbError::InfiniteF
        });
    }
    let f_stat = (ss.between / df_between as f64) / (ss.within / df_within as f64);
    if !f_stat.is_finite() {
        return Err(NbError::InfiniteF);
    }
    AnovaSummary::new(df_between, df_within, f_stat)
}

/// Partial eta squared, `df_b * F / (df_b * F + df_w)`.
pub fn nb_partial_eta_sq(summary: &AnovaSummary) -> Result<NbValue> {
    let contrast = Contrast::new(
        summary.df_between as f64 * summary.f_stat,
        0.0,
        summary.df_within as f64,
    )?;
    Ok(nb_general(&contrast)?.relabel(Domain::Anova, "partial eta squared"))
}

/// Cohen's f, `sqrt(eta^2 / (1 - eta^2))`.
pub fn cohens_f(eta_sq: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&eta_sq) {
        return Err(NbError::validation(
            "eta_sq",
            format!("{eta_sq} is outside [0, 1)"),
        ));
    }
    Ok((eta_sq / (1.0 - eta_sq)).sqrt())
}

/// `f / (1 + f)` with `f` the Cohen's f of the partial eta squared.
pub fn nb_cohens_f(summary: &AnovaSummary) -> Result<NbValue> {
    let eta_sq = nb_partial_eta_sq(summary)?.value();
    let f = cohens_f(eta_sq)?;
    Ok(canonical_transform(f)?.relabel(Domain::Anova, "Cohen's f nb"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(dfb: u64, dfw: u64, f: f64) -> AnovaSummary {
        AnovaSummary::new(dfb, dfw, f).unwrap()
    }

    #[test]
    fn identical_groups_give_zero_f() {
        let data = GroupData::from_values(vec![vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0]]).unwrap();
        let s = anova_from_raw(&data).unwrap();
        assert_eq!(s.f_stat(), 0.0);
        assert_eq!((s.df_between(), s.df_within()), (1, 4));
    }

    #[test]
    fn hand_worked_two_groups() {
        // means 0.5 and 1.5, grand mean 1: SS_b = 2, SS_w = 2
        let data = GroupData::from_values(vec![vec![0.0, 0.0, 1.0, 1.0], vec![1.0, 1.0, 2.0, 2.0]])
            .unwrap();
        let ss = sums_of_squares(&data);
        assert_eq!((ss.between, ss.within), (2.0, 2.0));
        let s = anova_from_raw(&data).unwrap();
        assert_eq!((s.df_between(), s.df_within()), (1, 6));
        assert_eq!(s.f_stat(), 6.0);
        assert_eq!(nb_partial_eta_sq(&s).unwrap().value(), 0.5);
    }

    #[test]
    fn zero_variance_errors() {
        let flat = GroupData::from_values(vec![vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(anova_from_raw(&flat), Err(NbError::IndeterminateF));
        let split = GroupData::from_values(vec![vec![1.0, 1.0], vec![2.0, 2.0]]).unwrap();
        assert_eq!(anova_from_raw(&split), Err(NbError::InfiniteF));
    }

    #[test]
    fn group_validation() {
        assert!(GroupData::from_values(vec![vec![1.0, 2.0]]).is_err());
        assert!(GroupData::from_values(vec![vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(GroupData::from_values(vec![vec![1.0, f64::NAN], vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn summary_validation() {
        assert!(AnovaSummary::new(0, 5, 1.0).is_err());
        assert!(AnovaSummary::new(1, 0, 1.0).is_err());
        assert!(AnovaSummary::new(1, 5, -0.1).is_err());
        assert!(AnovaSummary::new(1, 5, f64::INFINITY).is_err());
    }

    #[test]
    fn partial_eta_sq_examples() {
        assert_eq!(
            nb_partial_eta_sq(&summary(2, 27, 0.0)).unwrap().value(),
            0.0
        );
        assert_eq!(
            nb_partial_eta_sq(&summary(2, 27, 4.5)).unwrap().value(),
            0.25
        );
        let v = nb_partial_eta_sq(&summary(1, 6, 8.0)).unwrap().value();
        assert!((v - 8.0 / 14.0).abs() < 1e-15);
    }

    #[test]
    fn synthetic_data_reproduces_f_4_5() {
        // three groups of ten with means -1, 0, 1: SS_b = 20, SS_w = 60
        let pattern = [2.0, -2.0, 2.0, -2.0, 1.0, -1.0, 1.0, -1.0, 0.0, 0.0];
        let data = GroupData::from_values(
            [-1.0, 0.0, 1.0]
                .iter()
                .map(|m| pattern.iter().map(|p| m + p).collect())
                .collect(),
        )
        .unwrap();
        let s = anova_from_raw(&data).unwrap();
        assert_eq!((s.df_between(), s.df_within()), (2, 27));
        assert!((s.f_stat() - 4.5).abs() < 1e-12);
        let ss = sums_of_squares(&data);
        let oracle = ss.between / (ss.between + ss.within);
        assert!((nb_partial_eta_sq(&s).unwrap().value() - oracle).abs() < 1e-12);
        assert!((oracle - 0.25).abs() < 1e-15);
    }

    #[test]
    fn cohens_f_examples() {
        assert_eq!(cohens_f(0.0).unwrap(), 0.0);
        assert_eq!(cohens_f(0.5).unwrap(), 1.0);
        assert!((cohens_f(0.25).unwrap() - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!(cohens_f(1.0).is_err());
        assert!(cohens_f(-0.1).is_err());
    }

    #[test]
    fn nb_cohens_f_examples() {
        assert_eq!(nb_cohens_f(&summary(2, 27, 0.0)).unwrap().value(), 0.0);
        // eta^2 = 0.5 when df_b * F = df_w
        assert_eq!(nb_cohens_f(&summary(3, 12, 4.0)).unwrap().value(), 0.5);
        let f = (1.0f64 / 3.0).sqrt();
        let v = nb_cohens_f(&summary(2, 27, 4.5)).unwrap().value();
        assert!((v - f / (1.0 + f)).abs() < 1e-15);
        assert!((v - 0.366025).abs() < 1e-6);
    }

    #[test]
    fn huge_f_stays_below_one_or_errors() {
        let v = nb_partial_eta_sq(&summary(1, 10, 1e12)).unwrap().value();
        assert!(v < 1.0);
        assert!(nb_partial_eta_sq(&summary(1, 1, 1e300)).is_err());
    }
}
