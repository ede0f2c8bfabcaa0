//! Load a shipped netlist, execute it, and show that the canonical
//! printer reproduces the file byte for byte.

use std::fs;
use std::path::Path;

use qudit_herald::netlist::{parse_netlist, print_netlist};
use qudit_herald::scattering::{reflection_coefficient, ScatteringParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("netlists/fig5a_x.net");
    let text = fs::read_to_string(&path)?;
    let doc = parse_netlist(&text)?;

    println!("{}", path.display());
    print!("{text}");
    assert_eq!(print_netlist(&doc), text, "printer drifted from the file");

    let params = ScatteringParams::new(40.0, 0.0)?;
    let (state, metrics) = doc.execute(&reflection_coefficient(&params)?)?;
    let metrics = metrics.expect("this netlist carries a MEASURE line");
    println!("executed at P = 40: {} nonzero amplitudes", state.components().filter(|(_, a)| a.norm() > 1e-14).count());
    println!("fidelity {:.8}, efficiency {:.8}", metrics.fidelity, metrics.efficiency);
    Ok(())
}
