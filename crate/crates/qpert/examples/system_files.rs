//! The JSON system-file format: write a family, read it back losslessly,
//! and drive the same pipeline the CLI exposes.
//!
//! Run with: cargo run --example system_files

use qpert::catalog::cavity_example;
use qpert::fileio::{LoadedSystem, SystemFile};
use qpert::linalg::Tolerances;
use qpert::singular::reduce_slow;

fn main() -> qpert::Result<()> {
    let tol = Tolerances::default();
    let entry = cavity_example(4.0, 1.0)?;

    // Serialize the partitioned family.
    let file = SystemFile::from_partitioned(&entry.partitioned);
    let json = file.to_json();
    println!("partitioned system file:\n{json}\n");

    // Round trip is bit-exact: shortest round-trip decimals.
    let back = SystemFile::parse(&json)?;
    assert_eq!(file, back);
    println!("write-then-read reproduces the file exactly");

    // Load dispatches on the declared kind.
    match back.load(&tol)? {
        LoadedSystem::Partitioned(p) => {
            let reduced = reduce_slow(&p, &tol)?;
            let plain = SystemFile::from_plain(&reduced);
            println!("\nreduced plain file:\n{}", plain.to_json());
        }
        _ => unreachable!("the file declares kind = partitioned"),
    }

    // Malformed input is rejected with a description, not a panic.
    let bad = r#"{
        "schema_version": 1,
        "kind": "plain",
        "dims": { "n": 1, "m": 1 },
        "matrices": { "F": [[[0.0, 0.0]]] },
        "surprise": 42
    }"#;
    match SystemFile::parse(bad) {
        Err(e) => println!("\nmalformed file rejected: {e}"),
        Ok(_) => unreachable!("unknown fields are rejected"),
    }
    Ok(())
}
