//! Report assembly and rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::anova::{self, AnovaSummary, GroupData};
use crate::classify::{classify, classify_value, BandLabel};
use crate::contingency::{self, ContingencyTable};
use crate::correlation::{self, CorrelationValue, PairedSample};
use crate::error::Result;
use crate::simulation::SimulationResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    #[serde(rename = "nb_2x2")]
    Nb2x2,
    #[serde(rename = "nb_rxc")]
    NbRxc,
    #[serde(rename = "partial_eta_sq")]
    PartialEtaSq,
    #[serde(rename = "cohens_f_nb")]
    CohensFNb,
    #[serde(rename = "dti")]
    Dti,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Nb2x2 => "nb_2x2",
            Metric::NbRxc => "nb_rxc",
            Metric::PartialEtaSq => "partial_eta_sq",
            Metric::CohensFNb => "cohens_f_nb",
            Metric::Dti => "dti",
        }
    }
}

/// Parsed inputs echoed into a report, enough to recompute its value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Inputs {
    Table { cells: ContingencyTable },
    Groups { groups: GroupData },
    Summary(AnovaSummary),
    Correlation { r: CorrelationValue },
    Pairs { pairs: PairedSample },
}

/// One metric evaluation with its band, intermediates and inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub metric: Metric,
    pub value: f64,
    pub band: BandLabel,
    pub interpretation: String,
    pub meaning: String,
    /// Named intermediates such as `rq`, `z` or `f_stat`.
    #[serde(flatten)]
    pub auxiliary: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
    pub inputs: Inputs,
}

impl RobustnessReport {
    fn new(metric: Metric, value: f64, inputs: Inputs) -> Self {
        let band = classify_value(value);
        Self {
            metric,
            value,
            band: band.label,
            interpretation: band.interpretation.to_string(),
            meaning: band.meaning.to_string(),
            auxiliary: BTreeMap::new(),
            warnings: Vec::new(),
            inputs,
        }
    }

    fn aux(mut self, name: &str, value: f64) -> Self {
        self.auxiliary.insert(name.to_string(), value);
        self
    }

    /// Recomputes the metric from the echoed inputs.
    pub fn recompute(&self) -> Result<f64> {
        recompute(self.metric, &self.inputs)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "metric: {}", self.metric.as_str());
        let _ = writeln!(out, "value: {}", format_sig6(self.value));
        let _ = writeln!(out, "band: {}", self.band.as_str());
        let _ = writeln!(out, "interpretation: {}", self.interpretation);
        let _ = writeln!(out, "meaning: {}", self.meaning);
        for (name, v) in &self.auxiliary {
            let _ = writeln!(out, "{name}: {}", format_sig6(*v));
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

pub fn recompute(metric: Metric, inputs: &Inputs) -> Result<f64> {
    let summary = |inputs: &Inputs| -> Result<Option<AnovaSummary>> {
        Ok(match inputs {
            Inputs::Summary(s) => Some(*s),
            Inputs::Groups { groups } => Some(anova::anova_from_raw(groups)?),
            _ => None,
        })
    };
    let r = |inputs: &Inputs| -> Result<Option<CorrelationValue>> {
        Ok(match inputs {
            Inputs::Correlation { r } => Some(*r),
            Inputs::Pairs { pairs } => Some(correlation::pearson_r(pairs)?),
            _ => None,
        })
    };
    let mismatch = || {
        crate::error::NbError::validation(
            "inputs",
            format!("cannot compute {} from these inputs", metric.as_str()),
        )
    };

    let value = match metric {
        Metric::Nb2x2 | Metric::NbRxc => {
            let Inputs::Table { cells } = inputs else {
                return Err(mismatch());
            };
            if metric == Metric::Nb2x2 {
                contingency::nb_2x2(cells)?
            } else {
                contingency::nb_rxc(cells)?
            }
        }
        Metric::PartialEtaSq => anova::nb_partial_eta_sq(&summary(inputs)?.ok_or_else(mismatch)?)?,
        Metric::CohensFNb => anova::nb_cohens_f(&summary(inputs)?.ok_or_else(mismatch)?)?,
        Metric::Dti => correlation::nb_dti(r(inputs)?.ok_or_else(mismatch)?)?,
    };
    Ok(value.value())
}

/// Fourfold tables use `nb_2x2` unless `force_rxc`; larger tables always
/// use the generalized form.
pub fn table_report(table: ContingencyTable, force_rxc: bool) -> Result<RobustnessReport> {
    let (metric, nb, rq) = if table.is_2x2() && !force_rxc {
        (
            Metric::Nb2x2,
            contingency::nb_2x2(&table)?,
            contingency::rq_2x2(&table)?,
        )
    } else {
        (
            Metric::NbRxc,
            contingency::nb_rxc(&table)?,
            contingency::rq_rxc(&table)?,
        )
    };
    let degenerate = table.has_degenerate_margins();
    let mut report =
        RobustnessReport::new(metric, nb.value(), Inputs::Table { cells: table }).aux("rq", rq);
    if degenerate {
        report
            .warnings
            .push("a row or column total is zero; some expected counts are 0".to_string());
    }
    Ok(report)
}

fn anova_report(
    summary: AnovaSummary,
    inputs: Inputs,
    primary: Metric,
) -> Result<RobustnessReport> {
    let eta = anova::nb_partial_eta_sq(&summary)?.value();
    let f_nb = anova::nb_cohens_f(&summary)?.value();
    let value = if primary == Metric::CohensFNb {
        f_nb
    } else {
        eta
    };
    Ok(RobustnessReport::new(primary, value, inputs)
        .aux("f_stat", summary.f_stat())
        .aux("df_between", summary.df_between() as f64)
        .aux("df_within", summary.df_within() as f64)
        .aux("eta_sq", eta)
        .aux("cohens_f", anova::cohens_f(eta)?)
        .aux("cohens_f_nb", f_nb))
}

/// `primary` selects `PartialEtaSq` (default) or `CohensFNb`.
pub fn anova_summary_report(summary: AnovaSummary, primary: Metric) -> Result<RobustnessReport> {
    anova_report(summary, Inputs::Summary(summary), primary)
}

pub fn anova_raw_report(groups: GroupData, primary: Metric) -> Result<RobustnessReport> {
    let summary = anova::anova_from_raw(&groups)?;
    anova_report(summary, Inputs::Groups { groups }, primary)
}

pub fn correlation_report(r: CorrelationValue) -> Result<RobustnessReport> {
    correlation_from(r, Inputs::Correlation { r })
}

pub fn pairs_report(pairs: PairedSample) -> Result<RobustnessReport> {
    let r = correlation::pearson_r(&pairs)?;
    correlation_from(r, Inputs::Pairs { pairs })
}

fn correlation_from(r: CorrelationValue, inputs: Inputs) -> Result<RobustnessReport> {
    let nb = correlation::nb_dti(r)?;
    Ok(RobustnessReport::new(Metric::Dti, nb.value(), inputs)
        .aux("r", r.get())
        .aux("z", correlation::fisher_z(r)))
}

/// Band lookup for a bare nb value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub value: f64,
    pub band: BandLabel,
    pub interpretation: String,
    pub meaning: String,
}

impl ClassifyReport {
    pub fn new(nb: &crate::boundary::NbValue) -> Self {
        let band = classify(nb);
        Self {
            value: nb.value(),
            band: band.label,
            interpretation: band.interpretation.to_string(),
            meaning: band.meaning.to_string(),
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "value: {}\nband: {}\ninterpretation: {}\nmeaning: {}\n",
            format_sig6(self.value),
            self.band.as_str(),
            self.interpretation,
            self.meaning
        )
    }
}

pub fn simulation_text(result: &SimulationResult) -> String {
    let mut out = String::new();
    let pop = result.population.probs().map(format_sig6).join(",");
    let _ = writeln!(out, "population: {pop}");
    let _ = writeln!(out, "population_nb: {}", format_sig6(result.population_nb));
    let _ = writeln!(out, "seed: {}", result.seed);
    let _ = writeln!(out, "rng: {}", result.rng_algorithm);
    for est in &result.per_n_estimates {
        let sd = est
            .sd_nb_hat
            .map_or_else(|| "undefined".to_string(), format_sig6);
        let _ = writeln!(
            out,
            "n: {} mean_nb_hat: {} sd_nb_hat: {} replicates: {}",
            est.n,
            format_sig6(est.mean_nb_hat),
            sd,
            est.replicates
        );
    }
    for w in &result.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

/// Six significant digits in the style of C's `%g`: trailing zeros dropped,
/// exponent notation outside `[1e-4, 1e6)`.
pub fn format_sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (5 - exp) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig6_formatting() {
        assert_eq!(format_sig6(2.0 / 7.0), "0.285714");
        assert_eq!(format_sig6(0.4), "0.4");
        assert_eq!(format_sig6(0.49999990716352505), "0.5");
        assert_eq!(format_sig6(8.0), "8");
        assert_eq!(format_sig6(123456.7), "123457");
        assert_eq!(format_sig6(999999.7), "1e+06");
        assert_eq!(format_sig6(1234567.0), "1.23457e+06");
        assert_eq!(format_sig6(0.0001), "0.0001");
        assert_eq!(format_sig6(0.00001234), "1.234e-05");
        assert_eq!(format_sig6(-0.5), "-0.5");
        assert_eq!(format_sig6(0.0), "0");
    }

    #[test]
    fn table_report_fields() {
        let table = ContingencyTable::two_by_two(30, 20, 10, 40).unwrap();
        let report = table_report(table.clone(), false).unwrap();
        assert_eq!(report.metric, Metric::Nb2x2);
        assert_eq!(report.band, BandLabel::Robust);
        assert_eq!(report.auxiliary["rq"], 0.4);
        assert!(report.warnings.is_empty());

        let forced = table_report(table, true).unwrap();
        assert_eq!(forced.metric, Metric::NbRxc);
        assert!((forced.value - report.value).abs() <= f64::EPSILON);
    }

    #[test]
    fn degenerate_margins_warn() {
        let table = ContingencyTable::new(vec![vec![0, 0], vec![3, 4]]).unwrap();
        let report = table_report(table, false).unwrap();
        assert_eq!(report.value, 0.0);
        assert_eq!(report.warnings.len(), 1);
    }

    #[test]
    fn json_shape() {
        let r = CorrelationValue::new(0.5).unwrap();
        let report = correlation_report(r).unwrap();
        let json: serde_json::Value = serde_json::to_value(&report).unwrap();
        assert_eq!(json["metric"], "dti");
        assert_eq!(json["band"], "robust");
        assert_eq!(json["meaning"], "Strong separation");
        assert_eq!(json["r"], 0.5);
        assert!(json["z"].is_number());
        assert_eq!(json["inputs"]["kind"], "correlation");
        assert!(json["warnings"].as_array().unwrap().is_empty());
    }

    #[test]
    fn recompute_rejects_mismatched_inputs() {
        let inputs = Inputs::Correlation {
            r: CorrelationValue::new(0.2).unwrap(),
        };
        assert!(recompute(Metric::Nb2x2, &inputs).is_err());
        assert!(recompute(Metric::PartialEtaSq, &inputs).is_err());
        assert!(recompute(Metric::Dti, &inputs).is_ok());
    }

    #[test]
    fn anova_primary_switch() {
        let s = AnovaSummary::new(2, 27, 4.5).unwrap();
        let eta = anova_summary_report(s, Metric::PartialEtaSq).unwrap();
        assert_eq!(eta.value, 0.25);
        assert!(eta.auxiliary.contains_key("cohens_f_nb"));
        let f = anova_summary_report(s, Metric::CohensFNb).unwrap();
        assert_eq!(f.value, eta.auxiliary["cohens_f_nb"]);
        assert_eq!(f.auxiliary["eta_sq"], 0.25);
    }
}
