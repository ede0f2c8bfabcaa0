//! The single scattering parameter behind everything: r as a function of
//! Purcell factor and detuning, and what a detuned operating point does
//! to the heralded pair.

use qudit_herald::metrics::{efficiency, fidelity};
use qudit_herald::scattering::{reflection_coefficient, ScatteringParams};
use qudit_herald::schemes::{generate_entangled, ideal_state, SchemeSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("reflection coefficient r(P, delta):");
    for (p, delta) in [(1.0, 0.0), (40.0, 0.0), (25.0, 0.05), (25.0, 0.2)] {
        let rt = reflection_coefficient(&ScatteringParams::new(p, delta)?)?;
        println!(
            "  P = {p:5}, delta = {delta:4}:  r = {:+.6}{:+.6}i  |r|^2 = {:.6}  loss = {:.6}",
            rt.r.re,
            rt.r.im,
            rt.r.norm_sqr(),
            1.0 - rt.r.norm_sqr() - rt.t.norm_sqr()
        );
    }

    let spec = SchemeSpec::direct(4, 2, 0)?;
    let params = ScatteringParams::new(25.0, 0.05)?;
    let raw = generate_entangled(&spec, &params)?;
    let ideal = ideal_state(&spec)?;
    let f = fidelity(&raw, &ideal)?;
    let e = efficiency(&raw, &ideal)?;

    // Closed form for the pair: F = |1 + r|^4 / (4 (1 + |r|^2)^2) and
    // E = |1 + r|^4 / 16 with the scattering factor rho = -r.
    let rho = -reflection_coefficient(&params)?.r;
    let gain = (1.0 + rho).norm_sqr().powi(2);
    let f_model = gain / (4.0 * (1.0 + rho.norm_sqr()).powi(2));
    let e_model = gain / 16.0;

    println!("pair at P = 25, delta = 0.05:");
    println!("  circuit     F = {f:.8}  E = {e:.8}");
    println!("  closed form F = {f_model:.8}  E = {e_model:.8}");
    println!("  (the quoted operating-point values F = 98.23%, E = 91.70% are not");
    println!("   reproduced by this reflection model; see `qudit-herald verify`)");
    Ok(())
}
