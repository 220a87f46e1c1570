//! Walk every built-in system through the full pipeline and compare against
//! the frozen expected values.
//!
//! Run with: cargo run --example catalog_tour

use qpert::catalog;
use qpert::linalg::Tolerances;
use qpert::qsys::{
    find_commutation_matrix, lossless_bounded_real_check, minimality_check, FrequencyGrid,
};
use qpert::singular::{assemble_full, reduce_slow};

fn main() -> qpert::Result<()> {
    let tol = Tolerances::default();
    let grid = FrequencyGrid::default_grid();

    for entry in catalog::entries() {
        println!("== {} ==", entry.name);
        println!("{}", entry.summary);
        println!(
            "dims: n1 = {}, n2 = {}, m = {}",
            entry.partitioned.n1(),
            entry.partitioned.n2(),
            entry.partitioned.inputs()
        );

        let eps = 0.1;
        let sys = assemble_full(&entry.partitioned, eps)?;
        let report = find_commutation_matrix(&sys, &tol)?;
        print!("assembled at ε = {eps}: realizable = {}", report.realizable);
        if let (Some(w), Some(theta_fn)) = (&report.witness, &entry.expected.theta) {
            let expected = theta_fn(eps);
            println!(
                ", certificate matches the frozen Θ(ε) to {:.2e}",
                w.theta().max_abs_diff(&expected)
            );
        } else {
            println!();
        }

        let reduced = reduce_slow(&entry.partitioned, &tol)?;
        let dist = [
            (reduced.f(), entry.expected.reduced.f()),
            (reduced.g(), entry.expected.reduced.g()),
            (reduced.h(), entry.expected.reduced.h()),
            (reduced.k(), entry.expected.reduced.k()),
        ]
        .iter()
        .map(|(a, b)| a.max_abs_diff(b))
        .fold(0.0, f64::max);
        println!("slow reduction matches the frozen quadruple to {dist:.2e}");

        let lossless = lossless_bounded_real_check(&reduced, &grid, &tol)?;
        let minimal = minimality_check(&reduced, &tol)?;
        println!(
            "reduced verdicts: {} (expected {}), {} (expected {})",
            lossless.verdict,
            entry.expected.reduced_lossless,
            minimal.verdict,
            entry.expected.reduced_minimality
        );

        println!("origins of the frozen values:");
        for (item, origin) in entry.expected.provenance {
            println!("  {item}: {origin}");
        }
        println!();
    }
    Ok(())
}
