//! Build a system from physical parameters, decide its realizability from
//! the state-space data alone, and recover the parameters back.
//!
//! Run with: cargo run --example realizability

use qpert::linalg::{ComplexMatrix, Tolerances};
use qpert::qsys::{find_commutation_matrix, realize_from_physical, recover_physical};
use qpert::PhysicalRealization;

fn fmt_c(z: qpert::Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn main() -> qpert::Result<()> {
    let tol = Tolerances::default();

    // A single lossy cavity mode: commutation matrix 1, trivial scattering,
    // coupling strength √γ, no internal Hamiltonian.
    let gamma = 2.0_f64;
    let params = PhysicalRealization::new(
        ComplexMatrix::real_scalar(1.0),
        ComplexMatrix::real_scalar(1.0),
        ComplexMatrix::real_scalar(gamma.sqrt()),
        ComplexMatrix::real_scalar(0.0),
        &tol,
    )?;

    let sys = realize_from_physical(&params);
    println!("state-space model generated by (Θ=1, S=1, Λ=√{gamma}, M=0):");
    println!("  F = {}", fmt_c(sys.f().get(0, 0)));
    println!("  G = {}", fmt_c(sys.g().get(0, 0)));
    println!("  H = {}", fmt_c(sys.h().get(0, 0)));
    println!("  K = {}", fmt_c(sys.k().get(0, 0)));

    // Forget the parameters; decide realizability from (F, G, H, K) alone.
    let report = find_commutation_matrix(&sys, &tol)?;
    println!("\nrealizability decision:");
    println!("  realizable: {}", report.realizable);
    println!(
        "  residuals:  lyapunov {:.2e}, coupling {:.2e}, K unitarity {:.2e}",
        report.residuals.lyapunov, report.residuals.coupling, report.residuals.unitary_k
    );
    let witness = report.witness.expect("realizable systems carry a witness");
    println!("  witness Θ = {}", fmt_c(witness.theta().get(0, 0)));

    // Recover the physical parameters from the witness.
    let recovery = recover_physical(&sys, witness.theta(), &tol)?;
    println!("\nrecovered parameters:");
    println!("  Λ = {}", fmt_c(recovery.physical.coupling().get(0, 0)));
    println!("  S = {}", fmt_c(recovery.physical.scattering().get(0, 0)));
    println!(
        "  M = {} (Hermitian defect before averaging: {:.2e})",
        fmt_c(recovery.physical.hamiltonian().get(0, 0)),
        recovery.m_asymmetry
    );

    // A system that cannot be a quantum system: non-unitary feedthrough.
    let broken = qpert::QuantumLinearSystem::new(
        ComplexMatrix::real_scalar(-1.0),
        ComplexMatrix::real_scalar(1.0),
        ComplexMatrix::real_scalar(1.0),
        ComplexMatrix::real_scalar(2.0),
    )?;
    let report = find_commutation_matrix(&broken, &tol)?;
    println!(
        "\nwith K = 2: realizable = {}, reason: {}",
        report.realizable,
        report.failure_reason.unwrap_or_default()
    );
    Ok(())
}
