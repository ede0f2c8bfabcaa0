//! Figures of merit over emitter parameters, printed as the same CSV the
//! command-line sweep writes.

use std::io;

use qudit_herald::sweep::{run_sweep, write_csv, SweepGrid, SweepTarget};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let target = SweepTarget::parse("d4n2b0")?;
    let grid = SweepGrid::new(
        vec![1.0, 5.0, 10.0, 40.0, 100.0],
        vec![0.0, 0.05, 0.1, 0.2],
    )?;
    let rows = run_sweep(&target, &grid)?;
    write_csv(&rows, io::stdout().lock())?;

    // The full 40 x 41 grid is one command away:
    //   qudit-herald sweep --scheme d4n2b0 --format csv
    let best = rows
        .iter()
        .max_by(|a, b| a.fidelity.total_cmp(&b.fidelity))
        .expect("grid is not empty");
    eprintln!(
        "best point: P = {}, detuning = {}, F = {:.8}",
        best.purcell, best.detuning, best.fidelity
    );
    Ok(())
}
