use std::path::Path;

use crate::csvio::{fmt_f64, CsvWriter};
use crate::diagnostics::StepDiagnostics;
use crate::error::Result;

/// `fig2.csv`: directional gap per step `k` and eigen-index `j` (both 1-based).
pub fn write_fig2(path: &Path, diags: &[StepDiagnostics], slices: &[usize]) -> Result<()> {
    let mut w = CsvWriter::new(&["k", "j", "directional_gap"]);
    for d in diags {
        for &j in slices {
            w.row(&[d.k.to_string(), j.to_string(), fmt_f64(d.directional_gaps[j - 1])]);
        }
    }
    w.write_to(path)
}

/// `fig3.csv`: `|v_kᵀu*_j|` and `|u_kᵀu*_j|`.
pub fn write_fig3(path: &Path, diags: &[StepDiagnostics], slices: &[usize]) -> Result<()> {
    let mut w = CsvWriter::new(&["k", "j", "v_align", "u_align"]);
    for d in diags {
        for &j in slices {
            w.row(&[
                d.k.to_string(),
                j.to_string(),
                fmt_f64(d.v_alignments[j - 1]),
                fmt_f64(d.u_alignments[j - 1]),
            ]);
        }
    }
    w.write_to(path)
}

/// `fig4.csv`: inner gap at step `k` next to the directional gap for `j`.
pub fn write_fig4(path: &Path, diags: &[StepDiagnostics], slices: &[usize]) -> Result<()> {
    let mut w = CsvWriter::new(&["k", "j", "inner_gap", "directional_gap"]);
    for d in diags {
        for &j in slices {
            w.row(&[
                d.k.to_string(),
                j.to_string(),
                fmt_f64(d.inner_gap),
                fmt_f64(d.directional_gaps[j - 1]),
            ]);
        }
    }
    w.write_to(path)
}

/// Writes all three figure files into `dir`.
pub fn write_figures(dir: &Path, diags: &[StepDiagnostics], slices: &[usize]) -> Result<()> {
    write_fig2(&dir.join("fig2.csv"), diags, slices)?;
    write_fig3(&dir.join("fig3.csv"), diags, slices)?;
    write_fig4(&dir.join("fig4.csv"), diags, slices)
}
