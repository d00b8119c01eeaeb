//! Spectrum, operator norm and the spectral radius formula for a matrix file.
//!
//!     cargo run --example spectra -- crates/core/data/matrix.json

use std::path::PathBuf;

use opalg::algebra::{inverse, op_norm, spectral_radius_sequence, spectrum};
use opalg::io::read_matrix;
use opalg::ToleranceContext;

fn main() -> opalg::Result<()> {
    let path: PathBuf = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/matrix.json").into())
        .into();
    let ctx = ToleranceContext::default();
    let a = read_matrix(&path)?;
    let spec = spectrum(&a, &ctx)?;

    println!("{} x {} from {}", a.dim(), a.dim(), path.display());
    for z in &spec.eigenvalues {
        println!("  lambda = {:+.6} {:+.6}i   |lambda| = {:.6}", z.re, z.im, z.norm());
    }
    let norm = op_norm(&a);
    println!("||A||      = {norm:.6}");
    println!("r(A)       = {:.6}", spec.radius);
    println!(
        "||A*A||/||A||^2 - 1 = {:.2e}",
        op_norm(&(&a.adjoint() * &a)) / (norm * norm) - 1.0
    );

    println!("\nrepeated squaring ||A^(2^k)||^(2^-k):");
    for (k, r) in spectral_radius_sequence(&a, 12).iter().enumerate() {
        println!("  k = {k:>2}  {r:.10}");
    }

    match inverse(&a, &ctx) {
        Ok(inv) => println!("\nr(A^-1) = {:.6}", spectrum(&inv, &ctx)?.radius),
        Err(e) => println!("\nnot invertible: {e}"),
    }
    Ok(())
}
