use std::path::Path;

use crate::bounds::{
    cor1_delta_budget, cor3_iteration_budget, thm1_bound, thm1_condition, thm2_bound, thm2_conditions,
    BoundInputs, BoundValue, SpectrumGaps, Thm2Conditions,
};
use crate::csvio::{fmt_f64, CsvWriter};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub k: usize,
    pub thm1: BoundValue,
    pub thm2: BoundValue,
    /// Measured `‖v_k − u*_k‖`.
    pub empirical_err: f64,
    pub cond7: bool,
    pub cond12: bool,
    pub cond13: bool,
    /// Per-step error budget, when a target accuracy is set.
    pub cor1_budget: Option<f64>,
    /// Iteration predictor, when a target accuracy is set.
    pub cor3_budget: Option<f64>,
}

impl BoundRow {
    /// `bound / empirical`; `None` when the bound is gated off.
    pub fn slack_thm1(&self) -> Option<f64> {
        self.thm1.value().map(|b| b / self.empirical_err)
    }

    pub fn slack_thm2(&self) -> Option<f64> {
        self.thm2.value().map(|b| b / self.empirical_err)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
    pub conditions: Thm2Conditions,
}

/// Evaluates every bound and condition against measured errors `empirical[k-1]`.
pub fn build_bound_report(inputs: &BoundInputs, gaps: &SpectrumGaps, empirical: &[f64]) -> Result<BoundReport> {
    if empirical.len() != inputs.k_count {
        return Err(Error::DimensionMismatch { expected: inputs.k_count, got: empirical.len() });
    }
    let conditions = thm2_conditions(inputs, gaps)?;
    let mut rows = Vec::with_capacity(inputs.k_count);
    for k in 1..=inputs.k_count {
        let (cor1_budget, cor3_budget) = match inputs.epsilon {
            Some(eps) => (
                Some(cor1_delta_budget(eps, inputs, gaps, k)?),
                Some(cor3_iteration_budget(inputs, gaps, k)?),
            ),
            None => (None, None),
        };
        rows.push(BoundRow {
            k,
            thm1: thm1_bound(inputs, gaps, k)?,
            thm2: thm2_bound(inputs, gaps, k)?,
            empirical_err: empirical[k - 1],
            cond7: thm1_condition(inputs, gaps, k)?,
            cond12: conditions.floor_ok[k - 1],
            cond13: conditions.tail_ok,
            cor1_budget,
            cor3_budget,
        });
    }
    Ok(BoundReport { rows, conditions })
}

fn fmt_bound(b: BoundValue) -> String {
    match b {
        BoundValue::Value(v) => fmt_f64(v),
        BoundValue::PreconditionFailed => "precondition-failed".into(),
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".into(), fmt_f64)
}

/// Writes `bounds.csv`; budget columns are added when any row carries them.
pub fn write_bounds_csv(path: &Path, report: &BoundReport) -> Result<()> {
    let with_budget = report.rows.iter().any(|r| r.cor1_budget.is_some());
    let mut header = vec![
        "k", "thm1_bound", "thm2_bound", "empirical_err", "slack_thm1", "slack_thm2", "cond7", "cond12", "cond13",
    ];
    if with_budget {
        header.extend(["cor1_delta_budget", "cor3_t_budget"]);
    }
    let mut w = CsvWriter::new(&header);
    for r in &report.rows {
        let mut fields = vec![
            r.k.to_string(),
            fmt_bound(r.thm1),
            fmt_bound(r.thm2),
            fmt_f64(r.empirical_err),
            fmt_opt(r.slack_thm1()),
            fmt_opt(r.slack_thm2()),
            r.cond7.to_string(),
            r.cond12.to_string(),
            r.cond13.to_string(),
        ];
        if with_budget {
            fields.push(fmt_opt(r.cor1_budget));
            fields.push(fmt_opt(r.cor3_budget));
        }
        w.row(&fields);
    }
    w.write_to(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::eigengaps;

    #[test]
    fn gated_rows_are_tagged_not_nan() {
        let l = vec![1.0, 0.5];
        let gaps = eigengaps(&l).unwrap();
        let inputs = BoundInputs::new(l, vec![0.5, 0.5], 1.0, 1, 2).unwrap();
        let report = build_bound_report(&inputs, &gaps, &[0.5, 0.6]).unwrap();
        assert_eq!(report.rows[1].thm1, BoundValue::PreconditionFailed);
        assert_eq!(report.rows[1].slack_thm1(), None);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bounds.csv");
        write_bounds_csv(&p, &report).unwrap();
        let text = std::fs::read_to_string(p).unwrap();
        assert!(text.contains("precondition-failed"));
        assert!(!text.contains("NaN"));
    }
}
