//! Deterministic simulator for heralded generation of high-dimensional
//! entanglement between a polarization-path photonic qudit and registers
//! of waveguide-coupled emitters.
//!
//! Everything downstream hinges on a single physical quantity, the
//! reflection coefficient r of a photon scattering off an emitter, fixed
//! by the Purcell factor and the detuning. The crate builds linear
//! optical circuits around that primitive, runs them exactly on hybrid
//! photon plus emitter registers, and reports fidelity and efficiency
//! surfaces of the heralded output.

pub mod corpus;
pub mod elements;
pub mod metrics;
pub mod netlist;
pub mod scattering;
pub mod schemes;
pub mod state;
pub mod sweep;
pub mod verify;

pub use corpus::corpus_documents;
pub use elements::{run_circuit, run_circuit_at, Circuit, Element, PolFilter};
pub use metrics::{
    entanglement_entropy, fidelity, efficiency, herald_failure, report, schmidt_spectrum, Cut,
    MetricsReport,
};
pub use scattering::{
    heralded_failure_probability, reflection_coefficient, union_scatter,
    ReflectionCoefficients, ScatteringParams,
};
pub use schemes::{
    apply_x_gate, apply_z_gate, compose_table2, compose_table2_at, direct_circuit,
    generate_entangled, generate_entangled_at, ideal_state, ideal_state_on, routing,
    table2_operation, x_gate_benchmark, PortAssignment, SchemeError, SchemeSpec, TABLE2,
};
pub use netlist::{parse_netlist, print_netlist, MeasureSpec, NetlistDoc, NetlistError, ParseError};
pub use state::{
    dump_state_json, inner_product, HybridState, Pol, QuditEncoding, RegisterLayout,
    StateError,
};
pub use sweep::{run_sweep, write_csv, write_json, SweepGrid, SweepRow, SweepTarget};
pub use verify::{run_all_suites, run_suite, CheckResult, Suite, SuiteReport};
