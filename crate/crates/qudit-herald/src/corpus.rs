//! The bundled reference circuits, rebuilt from the scheme builders so the
//! plain-text corpus under `netlists/` can never drift from the code that
//! generates it. Each document carries a MEASURE target and executes
//! stand-alone.

use std::sync::Arc;

use crate::netlist::{MeasureSpec, NetlistDoc, NetlistError};
use crate::schemes::{direct_circuit, x_gate_elements, SchemeSpec};
use crate::state::{EmitterInit, PolInit};

fn direct_doc(d: usize, n: usize, b: usize, k: usize) -> Result<NetlistDoc, NetlistError> {
    let spec = SchemeSpec::direct_with_phase(d, n, b, k)?;
    let (circuit, _) = direct_circuit(&spec)?;
    let layout = circuit.layout().clone();
    let inits = vec![EmitterInit::Plus; layout.n_emitters()];
    let elements = circuit.elements().to_vec();
    NetlistDoc::from_parts(
        layout,
        PolInit::Superposition,
        "a1",
        inits,
        elements,
        Some(MeasureSpec {
            d,
            n,
            k,
            shifts: vec![b; n - 1],
        }),
    )
}

/// Three-qudit generation followed by an X^m block pair on the second
/// stationary qudit. The generated support has even photon-target parity,
/// so the block pattern for m is used as-is.
fn gated_doc(m: usize) -> Result<NetlistDoc, NetlistError> {
    let spec = SchemeSpec::direct(4, 3, 0)?;
    let (circuit, _) = direct_circuit(&spec)?;
    let rails = ["a1x".to_string(), "a2x".to_string()];
    let layout = Arc::new(circuit.layout().with_extra_paths(rails.clone())?);
    let hi = layout.emitters()[2].clone();
    let lo = layout.emitters()[3].clone();
    let mut elements = circuit.elements().to_vec();
    elements.extend(x_gate_elements(&rails, &hi, &lo, m));
    let inits = vec![EmitterInit::Plus; layout.n_emitters()];
    NetlistDoc::from_parts(
        layout,
        PolInit::Superposition,
        "a1",
        inits,
        elements,
        Some(MeasureSpec {
            d: 4,
            n: 3,
            k: 0,
            shifts: vec![0, m % 4],
        }),
    )
}

/// Every bundled circuit, keyed by file stem. Covers the four base shifts
/// of pair generation, the three phase-stage variants, three-, four- and
/// five-qudit chains, the three X-gate compositions, and the d = 8 pair.
pub fn corpus_documents() -> Result<Vec<(&'static str, NetlistDoc)>, NetlistError> {
    Ok(vec![
        ("fig2_q0", direct_doc(4, 2, 0, 0)?),
        ("fig2_q1", direct_doc(4, 2, 1, 0)?),
        ("fig2_q2", direct_doc(4, 2, 2, 0)?),
        ("fig2_q3", direct_doc(4, 2, 3, 0)?),
        ("fig3_z", direct_doc(4, 2, 0, 1)?),
        ("fig3_z2", direct_doc(4, 2, 0, 2)?),
        ("fig3_zdag", direct_doc(4, 2, 0, 3)?),
        ("fig4_b0", direct_doc(4, 3, 0, 0)?),
        ("fig5a_x", gated_doc(1)?),
        ("fig5a_xdag", gated_doc(3)?),
        ("fig5b_x2", gated_doc(2)?),
        ("fig6_n4", direct_doc(4, 4, 0, 0)?),
        ("fig6_n5", direct_doc(4, 5, 0, 0)?),
        ("fig7b_q0", direct_doc(8, 2, 0, 0)?),
    ])
}
