//! Assemble a singularly perturbed family at several ε, certify each member,
//! then reduce the fast block away and inspect what survives.
//!
//! The family here is the cautionary one: every member is realizable and
//! minimal, yet the slow reduction is only marginally stable and loses both
//! controllability and observability.
//!
//! Run with: cargo run --example slow_reduction

use qpert::catalog::pathological_example;
use qpert::linalg::{eig, Tolerances};
use qpert::qsys::{
    find_commutation_matrix, lossless_bounded_real_check, minimality_check, FrequencyGrid,
};
use qpert::singular::{assemble_full, reduce_slow};

fn main() -> qpert::Result<()> {
    let tol = Tolerances::default();
    let grid = FrequencyGrid::default_grid();
    let entry = pathological_example();
    println!("{}: {}\n", entry.name, entry.summary);

    for eps in [1.0, 0.1, 0.01] {
        let sys = assemble_full(&entry.partitioned, eps)?;
        let eigs = eig(sys.f())?;
        let max_re = eigs.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
        let report = find_commutation_matrix(&sys, &tol)?;
        let lossless = lossless_bounded_real_check(&sys, &grid, &tol)?;
        let minimal = minimality_check(&sys, &tol)?;
        println!(
            "ε = {eps:<5} max Re λ = {max_re:+.4e}  realizable: {}  {}  {}",
            report.realizable, lossless.verdict, minimal.verdict
        );
        if let Some(w) = report.witness {
            let diag: Vec<String> = (0..4)
                .map(|i| format!("{:.3}", w.theta().get(i, i).re))
                .collect();
            println!("          certificate Θ = diag({})", diag.join(", "));
        }
    }

    let reduced = reduce_slow(&entry.partitioned, &tol)?;
    println!("\nslow reduction (ε → 0):");
    println!("F0 =\n{}", reduced.f());
    println!("G0 max |entry| = {}", reduced.g().max_abs());
    println!("H0 max |entry| = {}", reduced.h().max_abs());
    println!("K0 =\n{}", reduced.k());

    let eigs = eig(reduced.f())?;
    println!(
        "reduced spectrum: {:?}",
        eigs.iter().map(|l| format!("{l:.3}")).collect::<Vec<_>>()
    );
    let report = find_commutation_matrix(&reduced, &tol)?;
    let lossless = lossless_bounded_real_check(&reduced, &grid, &tol)?;
    let minimal = minimality_check(&reduced, &tol)?;
    println!(
        "reduced verdicts: realizable: {} (a closed oscillator), {}, {}",
        report.realizable, lossless.verdict, minimal.verdict
    );
    println!(
        "grid unitarity defect of the reduction: {:.2e} (the response is the constant −I)",
        lossless.max_unitarity_defect
    );
    Ok(())
}
