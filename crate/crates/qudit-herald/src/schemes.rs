//! Entanglement-generation schemes and the single-qudit gate set.
//!
//! A scheme prepares (1/sqrt(d)) * sum_l exp(2 pi i l k / d)
//! |l> |l + q_2> ... |l + q_n> (addition mod d) between one photonic qudit
//! and n-1 emitter-pair qudits. The builder lays the photon over d/2 main
//! paths with a beam-splitter tree, then routes each (polarization, path)
//! branch carrying photon level l through the emitters whose bits are set
//! in the target level tau = (l + b) mod d, raising every stationary
//! qudit from level 0 to tau. Each pass through an emitter contributes a
//! factor -r and one bit flip, so the generated state carries
//! (1/sqrt(d)) * (-r)^((n-1) * popcount(tau)) on the component
//! |l>|tau>...|tau> and nothing anywhere else.
//!
//! Branch bookkeeping inside a block: a pass through an emitter union
//! flips polarization, so a branch that must scatter gets half-wave
//! plates at the ends to enter V-polarized and leave with its original
//! polarization. The V component of each main path is processed on a
//! dedicated rail and merged back through a final PBS.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::elements::{
    run_circuit_at, Circuit, Element, ElementError, PolFilter,
};
use crate::scattering::{
    reflection_coefficient, ReflectionCoefficients, ScatteringError, ScatteringParams,
};
use crate::state::{HybridState, Pol, QuditEncoding, RegisterLayout, StateError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchemeError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    /// Direct generation needs every stationary qudit shifted by the same
    /// base value.
    #[error("direct generation requires equal shifts, got {0:?}")]
    UnequalShifts(Vec<usize>),
    /// A register count must be at least two qudits.
    #[error("need at least 2 qudits (got n = {0})")]
    TooFewQudits(usize),
    /// A shift or phase index left the 0..d range.
    #[error("{what} = {value} is out of range for d = {d}")]
    IndexOutOfRange {
        what: &'static str,
        value: usize,
        d: usize,
    },
    /// The path-conditioned X gate only exists for the d = 4 encoding.
    #[error("the X gate requires the d = 4 encoding (layout has {0} paths of 2 needed)")]
    XGateUnsupportedLayout(usize),
    /// The X gate conditions its emitter flips on the photon path, which
    /// only shifts cleanly on states whose photon level is correlated
    /// with the target qudit level.
    #[error("the X gate needs support correlated between photon and target qudit")]
    XGateUncorrelatedSupport,
    /// The phase stage is diagonal in the photon encoding; a state must
    /// expose the main paths to receive it.
    #[error("phase gate needs the d = {0} main paths")]
    PhaseGateUnsupportedLayout(usize),
}

pub type SchemeResult<T> = Result<T, SchemeError>;

/// Full description of a target state: dimension d, qudit count n, the
/// generation base shift b, the phase index k, and the per-qudit shifts
/// (q_2 .. q_n). Direct generation requires all shifts equal to b;
/// unequal shifts are reached by composing an X gate afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeSpec {
    pub d: usize,
    pub n: usize,
    pub base: usize,
    pub phase: usize,
    pub shifts: Vec<usize>,
}

impl SchemeSpec {
    pub fn direct(d: usize, n: usize, b: usize) -> SchemeResult<SchemeSpec> {
        SchemeSpec::new(d, n, b, 0, vec![b; n.saturating_sub(1)])
    }

    pub fn direct_with_phase(d: usize, n: usize, b: usize, k: usize) -> SchemeResult<SchemeSpec> {
        SchemeSpec::new(d, n, b, k, vec![b; n.saturating_sub(1)])
    }

    /// d = 4 three-qudit target |phi_{k p q}> reached by generating at
    /// base p and shifting the third qudit to q.
    pub fn composed(k: usize, p: usize, q: usize) -> SchemeResult<SchemeSpec> {
        SchemeSpec::new(4, 3, p, k, vec![p, q])
    }

    pub fn new(
        d: usize,
        n: usize,
        base: usize,
        phase: usize,
        shifts: Vec<usize>,
    ) -> SchemeResult<SchemeSpec> {
        QuditEncoding::new(d)?;
        if n < 2 {
            return Err(SchemeError::TooFewQudits(n));
        }
        if base >= d {
            return Err(SchemeError::IndexOutOfRange {
                what: "base shift",
                value: base,
                d,
            });
        }
        if phase >= d {
            return Err(SchemeError::IndexOutOfRange {
                what: "phase index",
                value: phase,
                d,
            });
        }
        if shifts.len() != n - 1 {
            return Err(SchemeError::UnequalShifts(shifts));
        }
        for &q in &shifts {
            if q >= d {
                return Err(SchemeError::IndexOutOfRange {
                    what: "shift",
                    value: q,
                    d,
                });
            }
        }
        Ok(SchemeSpec {
            d,
            n,
            base,
            phase,
            shifts,
        })
    }

    pub fn encoding(&self) -> QuditEncoding {
        QuditEncoding::new(self.d).expect("spec was validated")
    }

    pub fn is_direct(&self) -> bool {
        self.shifts.iter().all(|&q| q == self.base)
    }
}

/// Emitters needed for n qudits of dimension d: log2(d) per stationary
/// qudit. A linear-in-d count (n-1)(4+d)/4 happens to agree at d = 4 and
/// d = 8 but diverges from d = 16 up; the binary encoding is what scales.
pub fn emitters_required(d: usize, n: usize) -> usize {
    (n - 1) * (d.trailing_zeros() as usize)
}

/// Canonical emitter names: a, b for the first qudit pair, c, d for the
/// next, and so on.
pub fn emitter_names(d: usize, n: usize) -> Vec<String> {
    (0..emitters_required(d, n))
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("e{i}")
            }
        })
        .collect()
}

fn main_paths(d: usize) -> Vec<String> {
    (0..d / 2).map(|i| format!("a{}", i + 1)).collect()
}

/// Emitters a branch must scatter off, in qudit-major, high-bit-first
/// order. `level` is the photon level carried by the branch; the flips
/// raise every stationary qudit from level 0 to (level + b) mod d.
fn branch_emitters(d: usize, n: usize, b: usize, level: usize) -> Vec<usize> {
    let m = d.trailing_zeros() as usize;
    let pattern = (level + b) % d;
    let mut out = Vec::new();
    for t in 0..n - 1 {
        for j in (0..m).rev() {
            if (pattern >> j) & 1 == 1 {
                out.push(t * m + (m - 1 - j));
            }
        }
    }
    out
}

enum Rails {
    VOnly { v: String },
    HOnly { v: String },
    Full { v: String, u: String, g: String, t: String },
}

struct PathBlock {
    main: String,
    sh: Vec<usize>,
    sv: Vec<usize>,
    rails: Rails,
}

fn plan_blocks(spec: &SchemeSpec) -> Vec<PathBlock> {
    let half = spec.d / 2;
    let mains = main_paths(spec.d);
    (0..half)
        .map(|i| {
            let sh = branch_emitters(spec.d, spec.n, spec.base, i);
            let sv = branch_emitters(spec.d, spec.n, spec.base, half + i);
            debug_assert!(!(sh.is_empty() && sv.is_empty()));
            let main = mains[i].clone();
            let rails = if sh.is_empty() {
                Rails::VOnly {
                    v: format!("{main}v"),
                }
            } else if sv.is_empty() {
                Rails::HOnly {
                    v: format!("{main}v"),
                }
            } else {
                Rails::Full {
                    v: format!("{main}v"),
                    u: format!("{main}u"),
                    g: format!("{main}g"),
                    t: format!("{main}t"),
                }
            };
            PathBlock {
                main,
                sh,
                sv,
                rails,
            }
        })
        .collect()
}

/// Register layout of the generation circuit for this spec: the d/2 main
/// paths first, then each block's rails, then the emitters.
pub fn generation_layout(spec: &SchemeSpec) -> SchemeResult<Arc<RegisterLayout>> {
    let mut paths = main_paths(spec.d);
    for block in plan_blocks(spec) {
        match block.rails {
            Rails::VOnly { v } | Rails::HOnly { v } => paths.push(v),
            Rails::Full { v, u, g, t } => paths.extend([v, u, g, t]),
        }
    }
    Ok(Arc::new(RegisterLayout::new(
        paths,
        emitter_names(spec.d, spec.n),
    )?))
}

fn pbs_rail(a: &str, b: &str) -> Element {
    Element::Pbs {
        in1: a.into(),
        in2: b.into(),
        out1: a.into(),
        out2: b.into(),
    }
}

fn scatter(emitter: &str, path: &str) -> Element {
    Element::EmitterUnion {
        emitter: emitter.into(),
        path: path.into(),
    }
}

fn hwp(path: &str) -> Element {
    Element::HalfWavePlate { path: path.into() }
}

/// Beam-splitter tree spreading the photon from the first main path over
/// all d/2 of them with uniform positive amplitudes.
fn bs_tree(d: usize) -> Vec<Element> {
    let mains = main_paths(d);
    let half = d / 2;
    let mut elements = Vec::new();
    let mut step = half;
    while step >= 2 {
        let hop = step / 2;
        let mut i = 0;
        while i < half {
            elements.push(Element::BeamSplitter {
                p1: mains[i].clone(),
                p2: mains[i + hop].clone(),
            });
            i += step;
        }
        step = hop;
    }
    elements
}

fn block_elements(block: &PathBlock, emitters: &[String]) -> Vec<Element> {
    let p = block.main.as_str();
    let mut out = Vec::new();
    match &block.rails {
        Rails::VOnly { v } => {
            out.push(pbs_rail(p, v));
            for &e in &block.sv {
                out.push(scatter(&emitters[e], v));
            }
            if block.sv.len() % 2 == 1 {
                out.push(hwp(v));
            }
            out.push(pbs_rail(p, v));
        }
        Rails::HOnly { v } => {
            out.push(pbs_rail(p, v));
            out.push(hwp(p));
            for &e in &block.sh {
                out.push(scatter(&emitters[e], p));
            }
            if block.sh.len() % 2 == 0 {
                out.push(hwp(p));
            }
            out.push(pbs_rail(p, v));
        }
        Rails::Full { v, u, g, t } => {
            out.push(pbs_rail(p, v));
            out.push(hwp(p));
            for &e in &block.sh {
                out.push(scatter(&emitters[e], p));
            }
            if block.sh.len() % 2 == 0 {
                out.push(hwp(p));
            }
            out.push(pbs_rail(p, g));
            out.push(pbs_rail(v, u));
            for &e in &block.sv {
                out.push(scatter(&emitters[e], u));
            }
            if block.sv.len() % 2 == 1 {
                out.push(hwp(u));
            }
            out.push(pbs_rail(u, t));
            out.push(pbs_rail(p, t));
        }
    }
    out
}

/// Phase stage exp(2 pi i l k / d) applied per photon level, one shifter
/// per level with a nonzero phase.
fn phase_stage(d: usize, k: usize) -> Vec<Element> {
    let enc = QuditEncoding::new(d).expect("caller validated d");
    let mains = main_paths(d);
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    for level in 1..d {
        let theta = 2.0 * std::f64::consts::PI * ((level * k) % d) as f64 / d as f64;
        if theta == 0.0 {
            continue;
        }
        let (pol, path) = enc.photon_slot(level).expect("level in range");
        out.push(Element::PhaseShift {
            path: mains[path].clone(),
            filter: if pol == Pol::H {
                PolFilter::H
            } else {
                PolFilter::V
            },
            theta,
        });
    }
    out
}

/// Generation circuit and its initial state: photon in (|H> + |V>)/sqrt(2)
/// on the first main path, every emitter in |+>.
pub fn direct_circuit(spec: &SchemeSpec) -> SchemeResult<(Circuit, HybridState)> {
    if !spec.is_direct() {
        return Err(SchemeError::UnequalShifts(spec.shifts.clone()));
    }
    let layout = generation_layout(spec)?;
    let emitters = emitter_names(spec.d, spec.n);
    let mut elements = bs_tree(spec.d);
    for block in plan_blocks(spec) {
        elements.extend(block_elements(&block, &emitters));
    }
    elements.extend(phase_stage(spec.d, spec.phase));
    let circuit = Circuit::new(layout.clone(), elements)?;
    let initial = HybridState::product(
        layout,
        crate::state::PolInit::Superposition,
        "a1",
        &vec![crate::state::EmitterInit::Plus; emitters.len()],
    )?;
    Ok((circuit, initial))
}

/// Run the generation circuit at explicit reflection coefficients. The
/// result is left unnormalized; the missing weight is the heralded
/// failure probability.
pub fn generate_entangled_at(
    spec: &SchemeSpec,
    coeffs: &ReflectionCoefficients,
) -> SchemeResult<HybridState> {
    let (circuit, initial) = direct_circuit(spec)?;
    Ok(run_circuit_at(&circuit, coeffs, &initial)?)
}

/// Run the generation circuit for physical emitter parameters.
pub fn generate_entangled(
    spec: &SchemeSpec,
    params: &ScatteringParams,
) -> SchemeResult<HybridState> {
    let coeffs = reflection_coefficient(params)?;
    generate_entangled_at(spec, &coeffs)
}

/// Exact target state on the layout of this spec's generation circuit.
pub fn ideal_state(spec: &SchemeSpec) -> SchemeResult<HybridState> {
    let layout = generation_layout(spec)?;
    ideal_state_on(&layout, spec)
}

/// Exact target state embedded in an arbitrary compatible layout: first
/// d/2 paths are the mains, emitters grouped per qudit in declaration
/// order, rails left empty.
pub fn ideal_state_on(
    layout: &Arc<RegisterLayout>,
    spec: &SchemeSpec,
) -> SchemeResult<HybridState> {
    let enc = spec.encoding();
    enc.check_layout(layout, spec.n - 1)?;
    let mut state = HybridState::zero(layout.clone());
    let scale = C64::new(1.0 / (spec.d as f64).sqrt(), 0.0);
    for l in 0..spec.d {
        let (pol, path) = enc.photon_slot(l)?;
        let levels: Vec<usize> = spec.shifts.iter().map(|&q| (l + q) % spec.d).collect();
        let bits = enc.emitter_bits(&levels)?;
        let phase = 2.0 * std::f64::consts::PI * (l * spec.phase) as f64 / spec.d as f64;
        *state.amplitude_mut(pol, path, bits) = scale * C64::from_polar(1.0, phase);
    }
    Ok(state)
}

/// Amplitude of the encoded component |photon level> |levels...>.
pub fn encoded_amplitude(
    state: &HybridState,
    d: usize,
    level: usize,
    stationary: &[usize],
) -> SchemeResult<C64> {
    let enc = QuditEncoding::new(d)?;
    let (pol, path) = enc.photon_slot(level)?;
    let bits = enc.emitter_bits(stationary)?;
    Ok(state.amplitude(pol, path, bits))
}

/// Z^m phase elements in the d = 4 photon encoding: one shifter per
/// nonzero level phase (levels 1, 2, 3 on H a2, V a1, V a2).
pub fn z_gate_elements(m: usize) -> Vec<Element> {
    phase_stage(4, m % 4)
}

/// Z^m on a d = 4 encoded state: |l> picks up exp(2 pi i l m / 4).
pub fn apply_z_gate(state: &HybridState, m: usize) -> SchemeResult<HybridState> {
    if state.layout().n_paths() < 2 {
        return Err(SchemeError::PhaseGateUnsupportedLayout(4));
    }
    let mut out = state.clone();
    for element in z_gate_elements(m) {
        out = match element {
            Element::PhaseShift {
                path,
                filter,
                theta,
            } => crate::elements::apply_phase(&out, &path, filter, theta)?,
            _ => unreachable!("phase stage emits phase shifters only"),
        };
    }
    Ok(out)
}

/// Emitter-flip pattern of the path-conditioned X^m hardware, wired for
/// support parity 0 (photon level congruent to the target level mod 2).
/// Per main path: which of the target qudit's (high, low) emitters flip.
fn x_flip_pattern(hardware_m: usize) -> [(bool, bool); 2] {
    match hardware_m {
        // a1 branches flip the low emitter, a2 branches flip both
        1 => [(false, true), (true, true)],
        // every branch flips the high emitter
        2 => [(true, false), (true, false)],
        // mirror of m = 1
        3 => [(true, true), (false, true)],
        _ => unreachable!("hardware m is 1..=3"),
    }
}

fn x_block(main: &str, rail: &str, hi: &str, lo: &str, flips: (bool, bool)) -> Vec<Element> {
    let mut emitters = Vec::new();
    if flips.0 {
        emitters.push(hi);
    }
    if flips.1 {
        emitters.push(lo);
    }
    debug_assert!(!emitters.is_empty());
    let mut out = vec![pbs_rail(main, rail)];
    out.push(hwp(main));
    for e in &emitters {
        out.push(scatter(e, main));
    }
    if emitters.len() % 2 == 0 {
        out.push(hwp(main));
    }
    for e in &emitters {
        out.push(scatter(e, rail));
    }
    if emitters.len() % 2 == 1 {
        out.push(hwp(rail));
    }
    out.push(pbs_rail(main, rail));
    out
}

/// X^m gate elements for a target emitter pair, plus the rail names the
/// layout must provide. `hardware_m` already accounts for support parity.
pub fn x_gate_elements(
    rails: &[String; 2],
    hi: &str,
    lo: &str,
    hardware_m: usize,
) -> Vec<Element> {
    let pattern = x_flip_pattern(hardware_m);
    let mains = main_paths(4);
    let mut out = Vec::new();
    for i in 0..2 {
        out.extend(x_block(&mains[i], &rails[i], hi, lo, pattern[i]));
    }
    out
}

fn fresh_rail(layout: &RegisterLayout, base: &str) -> String {
    if layout.path_index(base).is_err() {
        return base.to_string();
    }
    let mut k = 2usize;
    loop {
        let name = format!("{base}{k}");
        if layout.path_index(&name).is_err() {
            return name;
        }
        k += 1;
    }
}

/// Support parity between the photon level and the target qudit level,
/// read off the state's nonzero components.
fn support_parity(state: &HybridState, stationary_index: usize) -> SchemeResult<usize> {
    let layout = state.layout();
    let enc = QuditEncoding::new(4)?;
    let n_stationary = layout.n_emitters() / 2;
    let mut parity: Option<usize> = None;
    for (c, a) in state.components() {
        if a.norm() < 1e-12 {
            continue;
        }
        if c.path >= 2 {
            return Err(SchemeError::XGateUncorrelatedSupport);
        }
        let l = enc.photon_level(c.pol, c.path)?;
        let lt = enc.stationary_levels(c.bits, n_stationary)[stationary_index];
        let this = (l ^ lt) & 1;
        match parity {
            None => parity = Some(this),
            Some(p) if p == this => {}
            Some(_) => return Err(SchemeError::XGateUncorrelatedSupport),
        }
    }
    parity.ok_or(SchemeError::XGateUncorrelatedSupport)
}

/// X^m on the target qudit (numbering the photon as qudit 1, so targets
/// start at 3). The gate conditions emitter flips on the photon path, so
/// it acts as the clean level shift |l_t> -> |l_t + m> exactly on states
/// whose photon and target levels are correlated, which is what every
/// generation scheme emits. The returned state lives on a layout extended
/// by two gate rails.
pub fn apply_x_gate(
    state: &HybridState,
    target_qudit: usize,
    m: usize,
    coeffs: &ReflectionCoefficients,
) -> SchemeResult<HybridState> {
    let layout = state.layout();
    if layout.n_paths() < 2 {
        return Err(SchemeError::XGateUnsupportedLayout(layout.n_paths()));
    }
    if layout.n_emitters() % 2 != 0 || layout.n_emitters() == 0 {
        return Err(SchemeError::XGateUnsupportedLayout(layout.n_paths()));
    }
    let n_stationary = layout.n_emitters() / 2;
    let n_qudits = n_stationary + 1;
    if target_qudit < 3 || target_qudit > n_qudits {
        return Err(SchemeError::IndexOutOfRange {
            what: "target qudit",
            value: target_qudit,
            d: n_qudits + 1,
        });
    }
    let m = m % 4;
    if m == 0 {
        return Ok(state.clone());
    }
    let t = target_qudit - 2;
    let hi = layout.emitters()[2 * t].clone();
    let lo = layout.emitters()[2 * t + 1].clone();

    let hardware_m = if m % 2 == 1 && support_parity(state, t)? == 1 {
        4 - m
    } else {
        m
    };

    let rails = [
        fresh_rail(layout, "a1x"),
        fresh_rail(layout, "a2x"),
    ];
    let extended = state.extend_paths(rails.clone())?;
    let elements = x_gate_elements(&rails, &hi, &lo, hardware_m);
    let circuit = Circuit::new(extended.layout().clone(), elements)?;
    Ok(run_circuit_at(&circuit, coeffs, &extended)?)
}

/// Printed composition table: operation reaching |phi_{k p q}> from the
/// directly generated |phi_{0 p p}>, laid out as rows k = 0..3 and
/// columns p * 4 + q.
pub const TABLE2: [[&str; 16]; 4] = [
    [
        "Z⁰", "X", "X²", "X†", "X†", "Z⁰", "X", "X²", "X²", "X†", "Z⁰", "X", "X", "X²", "X†", "Z⁰",
    ],
    [
        "Z", "XZ", "X²Z", "X†Z", "X†Z", "Z", "XZ", "X²Z", "X²Z", "X†Z", "Z", "XZ", "XZ", "X²Z",
        "X†Z", "Z",
    ],
    [
        "Z²", "XZ²", "X²Z²", "X†Z²", "X†Z²", "Z²", "XZ²", "X²Z²", "X²Z²", "X†Z²", "Z²", "XZ²",
        "XZ²", "X²Z²", "X†Z²", "Z²",
    ],
    [
        "Z†", "XZ†", "X²Z†", "X†Z†", "X†Z†", "Z†", "XZ†", "X²Z†", "X²Z†", "X†Z†", "Z†", "XZ†",
        "XZ†", "X²Z†", "X†Z†", "Z†",
    ],
];

/// Closed rule behind [`TABLE2`]: X to the power (q - p) mod 4, then Z^k.
pub fn table2_operation(k: usize, p: usize, q: usize) -> String {
    let m = (4 + q - p) % 4;
    let x = ["", "X", "X²", "X†"][m];
    let z = ["", "Z", "Z²", "Z†"][k % 4];
    if x.is_empty() && z.is_empty() {
        "Z⁰".to_string()
    } else {
        format!("{x}{z}")
    }
}

/// Generate |phi_{0 p p}>, shift the third qudit by (q - p) with the X
/// gate, then apply Z^k, at explicit reflection coefficients.
pub fn compose_table2_at(
    k: usize,
    p: usize,
    q: usize,
    coeffs: &ReflectionCoefficients,
) -> SchemeResult<HybridState> {
    let spec = SchemeSpec::direct(4, 3, p)?;
    if k >= 4 || q >= 4 {
        return Err(SchemeError::IndexOutOfRange {
            what: "table index",
            value: k.max(q),
            d: 4,
        });
    }
    let generated = generate_entangled_at(&spec, coeffs)?;
    let m = (4 + q - p) % 4;
    let shifted = if m == 0 {
        generated
    } else {
        apply_x_gate(&generated, 3, m, coeffs)?
    };
    apply_z_gate(&shifted, k)
}

/// [`compose_table2_at`] with r derived from physical parameters.
pub fn compose_table2(
    k: usize,
    p: usize,
    q: usize,
    params: &ScatteringParams,
) -> SchemeResult<HybridState> {
    let coeffs = reflection_coefficient(params)?;
    compose_table2_at(k, p, q, &coeffs)
}

/// X^m benchmark: the gate applied to the exact |phi_{0 0 0}> input with
/// target qudit `target_qudit`, returning the gate output and the exact
/// shifted target on the same layout.
pub fn x_gate_benchmark(
    target_qudit: usize,
    m: usize,
    coeffs: &ReflectionCoefficients,
) -> SchemeResult<(HybridState, HybridState)> {
    let n = target_qudit.max(3);
    let spec = SchemeSpec::direct(4, n, 0)?;
    let input = ideal_state(&spec)?;
    let output = apply_x_gate(&input, target_qudit, m, coeffs)?;
    let mut shifts = vec![0usize; n - 1];
    shifts[target_qudit - 2] = m % 4;
    let target = SchemeSpec::new(4, n, 0, 0, shifts)?;
    let ideal = ideal_state_on(output.layout(), &target)?;
    Ok((output, ideal))
}

/// Interaction-region input port for each main path, plus the auxiliary
/// half-wave plates the wiring needs. Ports cycle through the unprimed
/// and primed labels as the base shift grows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortAssignment {
    pub ports: Vec<String>,
    pub aux_hwps: Vec<String>,
    pub h2_present: bool,
}

/// Port wiring that realizes base shift b for dimension d.
pub fn routing(d: usize, b: usize) -> SchemeResult<PortAssignment> {
    QuditEncoding::new(d)?;
    if b >= d {
        return Err(SchemeError::IndexOutOfRange {
            what: "base shift",
            value: b,
            d,
        });
    }
    let stems: &[&str] = match d {
        4 => &["a_i", "a_j"],
        8 => &["a_i", "a_j", "a_s", "a_t"],
        _ => {
            return Err(SchemeError::IndexOutOfRange {
                what: "routing table dimension",
                value: d,
                d,
            })
        }
    };
    let cycle: Vec<String> = stems
        .iter()
        .map(|s| s.to_string())
        .chain(stems.iter().map(|s| format!("{s}'")))
        .collect();
    let ports = (0..d / 2).map(|row| cycle[(b + row) % d].clone()).collect();
    let (aux_hwps, h2_present) = if d == 4 {
        match b {
            0 => (vec![], true),
            1 => (vec!["H3".into(), "H4".into(), "H5".into()], true),
            2 => (vec!["H6".into(), "H7".into()], true),
            _ => (vec!["H6".into(), "H7".into()], false),
        }
    } else {
        (vec![], true)
    };
    Ok(PortAssignment {
        ports,
        aux_hwps,
        h2_present,
    })
}
