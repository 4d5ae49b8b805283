//! Deflates a d = 100 covariance with `λ_k = 1/k` and prints, for a few
//! eigenvector indices `j`, where the directional error `‖(Σ_k − Σ*_k) u*_j‖`
//! first exceeds 1e-5.
//!
//! ```text
//! cargo run --release --example sequential_growth -- 42
//! ```

use deflatrix::cli::commands::simulate_deflation;
use deflatrix::diagnostics::diagnose_run;
use deflatrix::linalg::SpectrumKind;

fn main() -> deflatrix::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let d = 100;
    let exp = simulate_deflation(d, &SpectrumKind::PowerLaw(1.0), d, 200, seed, None)?;
    let diags = diagnose_run(&exp.run, &exp.trace)?;
    for j in [25, 50, 75, 100] {
        let first = diags.iter().find(|g| g.directional_gaps[j - 1] >= 1e-5).map(|g| g.k);
        match first {
            Some(k) => println!("j = {j:>3}: first crossing at k = {k}"),
            None => println!("j = {j:>3}: never crosses"),
        }
    }
    Ok(())
}
