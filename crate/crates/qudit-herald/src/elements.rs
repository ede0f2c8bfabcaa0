//! Linear-optics circuit elements and the sequential executor.
//!
//! Elements act on the whole hybrid state, one after the other. All of
//! them are norm-preserving except [`Element::EmitterUnion`], which is the
//! heralded scattering pass and shrinks the norm by the discarded detector
//! branch.
//!
//! The polarizing beam splitter is modeled as the bidirectional four-port
//! device: H couples `in1 <-> out1` and `in2 <-> out2`, V couples
//! `in1 <-> out2` and `in2 <-> out1`. Written with repeated ports,
//! `PBS p w p w` is the workhorse idiom that moves the V component of `p`
//! onto the rail `w` (and back, when the rail carries V and `p` does not).

use std::sync::Arc;

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::scattering::{
    reflection_coefficient, ReflectionCoefficients, ScatteringError, ScatteringParams,
};
use crate::state::{HybridState, Pol, RegisterLayout, StateError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ElementError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    /// A beam splitter must join two distinct paths.
    #[error("beam splitter needs two distinct paths (got `{0}` twice)")]
    DegenerateBeamSplitter(String),
    /// The four PBS ports must pair into a consistent routing.
    #[error("pbs ports ({in1}, {in2}, {out1}, {out2}) do not form a consistent routing")]
    InconsistentPbs {
        in1: String,
        in2: String,
        out1: String,
        out2: String,
    },
}

pub type ElementResult<T> = Result<T, ElementError>;

/// Which polarization a phase shifter acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolFilter {
    H,
    V,
    Both,
}

impl PolFilter {
    pub fn matches(self, pol: Pol) -> bool {
        match self {
            PolFilter::H => pol == Pol::H,
            PolFilter::V => pol == Pol::V,
            PolFilter::Both => true,
        }
    }
}

/// One circuit element, addressing registers by name.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    /// 50:50 beam splitter on two paths, polarization-independent,
    /// its own inverse.
    BeamSplitter { p1: String, p2: String },
    /// Polarizing beam splitter; see the module notes for the port rule.
    Pbs {
        in1: String,
        in2: String,
        out1: String,
        out2: String,
    },
    /// Half-wave plate at 45 degrees: swaps H and V on one path.
    HalfWavePlate { path: String },
    /// Multiplies matching components on one path by exp(i*theta).
    PhaseShift {
        path: String,
        filter: PolFilter,
        theta: f64,
    },
    /// Heralded scattering pass of one path off one emitter.
    EmitterUnion { emitter: String, path: String },
}

/// A validated element sequence over a fixed register layout.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    layout: Arc<RegisterLayout>,
    elements: Vec<Element>,
}

impl Circuit {
    pub fn new(layout: Arc<RegisterLayout>, elements: Vec<Element>) -> ElementResult<Circuit> {
        for element in &elements {
            validate_element(&layout, element)?;
        }
        Ok(Circuit { layout, elements })
    }

    pub fn layout(&self) -> &Arc<RegisterLayout> {
        &self.layout
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }
}

pub(crate) fn validate_element(layout: &RegisterLayout, element: &Element) -> ElementResult<()> {
    match element {
        Element::BeamSplitter { p1, p2 } => {
            layout.path_index(p1)?;
            layout.path_index(p2)?;
            if p1 == p2 {
                return Err(ElementError::DegenerateBeamSplitter(p1.clone()));
            }
        }
        Element::Pbs {
            in1,
            in2,
            out1,
            out2,
        } => {
            let ports = [
                layout.path_index(in1)?,
                layout.path_index(in2)?,
                layout.path_index(out1)?,
                layout.path_index(out2)?,
            ];
            if pbs_permutations(layout.n_paths(), ports).is_none() {
                return Err(ElementError::InconsistentPbs {
                    in1: in1.clone(),
                    in2: in2.clone(),
                    out1: out1.clone(),
                    out2: out2.clone(),
                });
            }
        }
        Element::HalfWavePlate { path } => {
            layout.path_index(path)?;
        }
        Element::PhaseShift { path, .. } => {
            layout.path_index(path)?;
        }
        Element::EmitterUnion { emitter, path } => {
            layout.emitter_index(emitter)?;
            layout.path_index(path)?;
        }
    }
    Ok(())
}

/// Per-polarization path permutations of a PBS, or `None` if the port
/// pairings clash. Each sector is a product of (at most two) swaps, so the
/// device is always unitary when well-formed.
fn pbs_permutations(n_paths: usize, ports: [usize; 4]) -> Option<(Vec<usize>, Vec<usize>)> {
    let [in1, in2, out1, out2] = ports;
    let build = |pairs: [(usize, usize); 2]| -> Option<Vec<usize>> {
        let mut perm: Vec<usize> = (0..n_paths).collect();
        for (x, y) in pairs {
            if perm[x] == y && perm[y] == x {
                continue;
            }
            if perm[x] != x || perm[y] != y {
                return None;
            }
            perm[x] = y;
            perm[y] = x;
        }
        Some(perm)
    };
    let h = build([(in1, out1), (in2, out2)])?;
    let v = build([(in1, out2), (in2, out1)])?;
    Some((h, v))
}

/// Two disjoint mutable sector slices out of the flat amplitude vector.
fn two_sectors_mut(
    amps: &mut [C64],
    a: std::ops::Range<usize>,
    b: std::ops::Range<usize>,
) -> (&mut [C64], &mut [C64]) {
    debug_assert!(a.end <= b.start || b.end <= a.start);
    if a.start < b.start {
        let (left, right) = amps.split_at_mut(b.start);
        let blen = b.len();
        (&mut left[a], &mut right[..blen])
    } else {
        let (left, right) = amps.split_at_mut(a.start);
        let alen = a.len();
        (&mut right[..alen], &mut left[b])
    }
}

fn bs_in_place(state: &mut HybridState, i1: usize, i2: usize) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for pol in [Pol::H, Pol::V] {
        let (r1, r2) = (state.sector(pol, i1), state.sector(pol, i2));
        let (x, y) = two_sectors_mut(state.amps_mut(), r1, r2);
        for (a, b) in x.iter_mut().zip(y.iter_mut()) {
            let (u, v) = (*a, *b);
            *a = (u + v) * s;
            *b = (u - v) * s;
        }
    }
}

fn swap_paths_in_place(state: &mut HybridState, pol: Pol, i: usize, j: usize) {
    let (ri, rj) = (state.sector(pol, i), state.sector(pol, j));
    let (x, y) = two_sectors_mut(state.amps_mut(), ri, rj);
    x.swap_with_slice(y);
}

fn union_in_place(state: &mut HybridState, e: usize, p: usize, r: C64) {
    let mask = state.layout().emitter_mask(e);
    let (rh, rv) = (state.sector(Pol::H, p), state.sector(Pol::V, p));
    let (h, v) = two_sectors_mut(state.amps_mut(), rh, rv);
    // pairs (H, bits) <-> (V, bits ^ mask) are disjoint two-cycles
    for bits in 0..h.len() {
        let tmp = h[bits];
        h[bits] = -r * v[bits ^ mask];
        v[bits ^ mask] = -r * tmp;
    }
}

/// 50:50 beam splitter on two named paths.
pub fn apply_bs(state: &HybridState, p1: &str, p2: &str) -> ElementResult<HybridState> {
    let i1 = state.layout().path_index(p1)?;
    let i2 = state.layout().path_index(p2)?;
    if i1 == i2 {
        return Err(ElementError::DegenerateBeamSplitter(p1.to_string()));
    }
    let mut out = state.clone();
    bs_in_place(&mut out, i1, i2);
    Ok(out)
}

/// Polarizing beam splitter on four named ports.
pub fn apply_pbs(
    state: &HybridState,
    in1: &str,
    in2: &str,
    out1: &str,
    out2: &str,
) -> ElementResult<HybridState> {
    let layout = state.layout().clone();
    let ports = [
        layout.path_index(in1)?,
        layout.path_index(in2)?,
        layout.path_index(out1)?,
        layout.path_index(out2)?,
    ];
    let (h_perm, v_perm) =
        pbs_permutations(layout.n_paths(), ports).ok_or(ElementError::InconsistentPbs {
            in1: in1.to_string(),
            in2: in2.to_string(),
            out1: out1.to_string(),
            out2: out2.to_string(),
        })?;
    let mut out = state.clone();
    pbs_in_place(&mut out, &h_perm, &v_perm);
    Ok(out)
}

fn pbs_in_place(state: &mut HybridState, h_perm: &[usize], v_perm: &[usize]) {
    for (pol, perm) in [(Pol::H, h_perm), (Pol::V, v_perm)] {
        for i in 0..perm.len() {
            if perm[i] > i {
                swap_paths_in_place(state, pol, i, perm[i]);
            }
        }
    }
}

fn hwp_in_place(state: &mut HybridState, p: usize) {
    let (rh, rv) = (state.sector(Pol::H, p), state.sector(Pol::V, p));
    let (h, v) = two_sectors_mut(state.amps_mut(), rh, rv);
    h.swap_with_slice(v);
}

fn phase_in_place(state: &mut HybridState, p: usize, filter: PolFilter, theta: f64) {
    let factor = C64::from_polar(1.0, theta);
    for pol in [Pol::H, Pol::V] {
        if filter.matches(pol) {
            let range = state.sector(pol, p);
            for a in &mut state.amps_mut()[range] {
                *a *= factor;
            }
        }
    }
}

/// Half-wave plate at 45 degrees on one path.
pub fn apply_hwp45(state: &HybridState, path: &str) -> ElementResult<HybridState> {
    let p = state.layout().path_index(path)?;
    let mut out = state.clone();
    hwp_in_place(&mut out, p);
    Ok(out)
}

/// Phase shifter on one path, restricted to a polarization if asked.
pub fn apply_phase(
    state: &HybridState,
    path: &str,
    filter: PolFilter,
    theta: f64,
) -> ElementResult<HybridState> {
    let p = state.layout().path_index(path)?;
    let mut out = state.clone();
    phase_in_place(&mut out, p, filter, theta);
    Ok(out)
}

pub(crate) fn apply_element_in_place(
    state: &mut HybridState,
    element: &Element,
    coeffs: &ReflectionCoefficients,
) -> ElementResult<()> {
    match element {
        Element::BeamSplitter { p1, p2 } => {
            let i1 = state.layout().path_index(p1)?;
            let i2 = state.layout().path_index(p2)?;
            if i1 == i2 {
                return Err(ElementError::DegenerateBeamSplitter(p1.clone()));
            }
            bs_in_place(state, i1, i2);
        }
        Element::Pbs {
            in1,
            in2,
            out1,
            out2,
        } => {
            let layout = state.layout();
            let ports = [
                layout.path_index(in1)?,
                layout.path_index(in2)?,
                layout.path_index(out1)?,
                layout.path_index(out2)?,
            ];
            let (h_perm, v_perm) = pbs_permutations(layout.n_paths(), ports).ok_or(
                ElementError::InconsistentPbs {
                    in1: in1.clone(),
                    in2: in2.clone(),
                    out1: out1.clone(),
                    out2: out2.clone(),
                },
            )?;
            pbs_in_place(state, &h_perm, &v_perm);
        }
        Element::HalfWavePlate { path } => {
            let p = state.layout().path_index(path)?;
            hwp_in_place(state, p);
        }
        Element::PhaseShift {
            path,
            filter,
            theta,
        } => {
            let p = state.layout().path_index(path)?;
            phase_in_place(state, p, *filter, *theta);
        }
        Element::EmitterUnion { emitter, path } => {
            let e = state.layout().emitter_index(emitter)?;
            let p = state.layout().path_index(path)?;
            union_in_place(state, e, p, coeffs.r);
        }
    }
    Ok(())
}

/// Run every element in order with explicit reflection coefficients.
pub fn run_circuit_at(
    circuit: &Circuit,
    coeffs: &ReflectionCoefficients,
    initial: &HybridState,
) -> ElementResult<HybridState> {
    if initial.layout() != circuit.layout() {
        return Err(StateError::LayoutMismatch.into());
    }
    let mut state = initial.clone();
    for element in &circuit.elements {
        apply_element_in_place(&mut state, element, coeffs)?;
    }
    Ok(state)
}

/// Run every element in order, deriving r from physical parameters.
pub fn run_circuit(
    circuit: &Circuit,
    params: &ScatteringParams,
    initial: &HybridState,
) -> ElementResult<HybridState> {
    let coeffs = reflection_coefficient(params)?;
    run_circuit_at(circuit, &coeffs, initial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::union_scatter;
    use crate::state::{EmitterInit, PolInit};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn layout2() -> Arc<RegisterLayout> {
        Arc::new(RegisterLayout::from_names(&["a1", "a2"], &["a"]).unwrap())
    }

    fn messy_state(layout: &Arc<RegisterLayout>) -> HybridState {
        let mut state = HybridState::zero(layout.clone());
        let dim = state.dim();
        for i in 0..dim {
            let comp = layout.decode(i);
            *state.amplitude_mut(comp.pol, comp.path, comp.bits) =
                c((i as f64 * 0.37).sin(), (i as f64 * 0.61).cos()) / (dim as f64).sqrt();
        }
        state
    }

    #[test]
    fn bs_splits_with_plus_signs_from_port_one_and_minus_from_port_two() {
        let layout = layout2();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let from1 =
            HybridState::product(layout.clone(), PolInit::H, "a1", &[EmitterInit::Plus]).unwrap();
        let split = apply_bs(&from1, "a1", "a2").unwrap();
        assert!((split.amplitude(Pol::H, 0, 0) - c(s, 0.0)).norm() < 1e-15);
        assert!((split.amplitude(Pol::H, 1, 0) - c(s, 0.0)).norm() < 1e-15);
        let from2 =
            HybridState::product(layout, PolInit::H, "a2", &[EmitterInit::Plus]).unwrap();
        let split2 = apply_bs(&from2, "a1", "a2").unwrap();
        assert!((split2.amplitude(Pol::H, 0, 0) - c(s, 0.0)).norm() < 1e-15);
        assert!((split2.amplitude(Pol::H, 1, 0) - c(-s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn bs_is_an_involution_and_preserves_norm() {
        let layout = layout2();
        let state = messy_state(&layout);
        let once = apply_bs(&state, "a1", "a2").unwrap();
        assert!((once.norm_sqr() - state.norm_sqr()).abs() < 1e-12);
        let twice = apply_bs(&once, "a1", "a2").unwrap();
        for (x, y) in twice.amplitudes().iter().zip(state.amplitudes()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn pbs_routes_by_polarization_across_four_ports() {
        let layout =
            Arc::new(RegisterLayout::from_names(&["i1", "i2", "o1", "o2"], &[]).unwrap());
        let mut state = HybridState::zero(layout.clone());
        *state.amplitude_mut(Pol::H, 0, 0) = c(1.0, 0.0);
        *state.amplitude_mut(Pol::V, 0, 0) = c(2.0, 0.0);
        *state.amplitude_mut(Pol::H, 1, 0) = c(3.0, 0.0);
        *state.amplitude_mut(Pol::V, 1, 0) = c(4.0, 0.0);
        let out = apply_pbs(&state, "i1", "i2", "o1", "o2").unwrap();
        assert_eq!(out.amplitude(Pol::H, 2, 0), c(1.0, 0.0)); // H in1 -> out1
        assert_eq!(out.amplitude(Pol::V, 3, 0), c(2.0, 0.0)); // V in1 -> out2
        assert_eq!(out.amplitude(Pol::H, 3, 0), c(3.0, 0.0)); // H in2 -> out2
        assert_eq!(out.amplitude(Pol::V, 2, 0), c(4.0, 0.0)); // V in2 -> out1
        assert_eq!(out.amplitude(Pol::H, 0, 0), c(0.0, 0.0));
    }

    #[test]
    fn pbs_rail_idiom_moves_v_and_merges_back() {
        let layout = Arc::new(RegisterLayout::from_names(&["p", "w"], &[]).unwrap());
        let mut state = HybridState::zero(layout.clone());
        *state.amplitude_mut(Pol::H, 0, 0) = c(0.6, 0.0);
        *state.amplitude_mut(Pol::V, 0, 0) = c(0.8, 0.0);
        let split = apply_pbs(&state, "p", "w", "p", "w").unwrap();
        assert_eq!(split.amplitude(Pol::H, 0, 0), c(0.6, 0.0));
        assert_eq!(split.amplitude(Pol::V, 1, 0), c(0.8, 0.0));
        assert_eq!(split.amplitude(Pol::V, 0, 0), c(0.0, 0.0));
        let merged = apply_pbs(&split, "p", "w", "p", "w").unwrap();
        for (x, y) in merged.amplitudes().iter().zip(state.amplitudes()) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn inconsistent_pbs_ports_are_rejected() {
        let layout = Arc::new(RegisterLayout::from_names(&["a", "b", "c"], &[]).unwrap());
        let state = HybridState::zero(layout);
        assert!(matches!(
            apply_pbs(&state, "a", "b", "a", "c"),
            Err(ElementError::InconsistentPbs { .. })
        ));
    }

    #[test]
    fn hwp_swaps_polarizations_on_one_path_only() {
        let layout = layout2();
        let state = messy_state(&layout);
        let out = apply_hwp45(&state, "a1").unwrap();
        for bits in 0..2 {
            assert_eq!(out.amplitude(Pol::H, 0, bits), state.amplitude(Pol::V, 0, bits));
            assert_eq!(out.amplitude(Pol::V, 0, bits), state.amplitude(Pol::H, 0, bits));
            assert_eq!(out.amplitude(Pol::H, 1, bits), state.amplitude(Pol::H, 1, bits));
        }
        let back = apply_hwp45(&out, "a1").unwrap();
        assert_eq!(back, state);
    }

    #[test]
    fn phase_shifts_compose_additively() {
        let layout = layout2();
        let state = messy_state(&layout);
        let a = apply_phase(&state, "a2", PolFilter::V, 0.7).unwrap();
        let b = apply_phase(&a, "a2", PolFilter::V, 0.9).unwrap();
        let direct = apply_phase(&state, "a2", PolFilter::V, 1.6).unwrap();
        for (x, y) in b.amplitudes().iter().zip(direct.amplitudes()) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn in_place_union_matches_the_component_map_reference() {
        let layout = Arc::new(RegisterLayout::from_names(&["a1", "a2"], &["a", "b"]).unwrap());
        let state = messy_state(&layout);
        let coeffs = ReflectionCoefficients::from_reflection(c(-0.83, 0.12));
        for (emitter, path) in [("a", "a1"), ("b", "a2"), ("b", "a1")] {
            let reference = union_scatter(&state, emitter, path, coeffs.r).unwrap();
            let mut fast = state.clone();
            apply_element_in_place(
                &mut fast,
                &Element::EmitterUnion {
                    emitter: emitter.into(),
                    path: path.into(),
                },
                &coeffs,
            )
            .unwrap();
            for (x, y) in fast.amplitudes().iter().zip(reference.amplitudes()) {
                assert!((x - y).norm() < 1e-15, "{emitter} {path}");
            }
        }
    }

    #[test]
    fn every_element_but_the_union_preserves_norm() {
        let layout = layout2();
        let state = messy_state(&layout);
        let n0 = state.norm_sqr();
        let cases = [
            apply_bs(&state, "a1", "a2").unwrap(),
            apply_pbs(&state, "a1", "a2", "a1", "a2").unwrap(),
            apply_hwp45(&state, "a2").unwrap(),
            apply_phase(&state, "a1", PolFilter::Both, 1.1).unwrap(),
        ];
        for out in cases {
            assert!((out.norm_sqr() - n0).abs() < 1e-12);
        }
        let r = c(-40.0 / 41.0, 0.0);
        let union = union_scatter(&state, "a", "a1", r).unwrap();
        assert!(union.norm_sqr() < n0);
    }

    #[test]
    fn run_circuit_is_linear_and_matches_stepwise_application() {
        let layout = layout2();
        let circuit = Circuit::new(
            layout.clone(),
            vec![
                Element::BeamSplitter {
                    p1: "a1".into(),
                    p2: "a2".into(),
                },
                Element::EmitterUnion {
                    emitter: "a".into(),
                    path: "a2".into(),
                },
                Element::HalfWavePlate { path: "a2".into() },
                Element::PhaseShift {
                    path: "a1".into(),
                    filter: PolFilter::H,
                    theta: 0.4,
                },
            ],
        )
        .unwrap();
        let params = ScatteringParams::new(12.0, 0.03).unwrap();
        let coeffs = reflection_coefficient(&params).unwrap();

        let u = HybridState::product(layout.clone(), PolInit::H, "a1", &[EmitterInit::Plus])
            .unwrap();
        let v = HybridState::product(layout, PolInit::V, "a2", &[EmitterInit::GMinus]).unwrap();
        let alpha = c(0.2, -0.5);
        let combined = u.scaled(alpha).add(&v).unwrap();
        let lhs = run_circuit(&circuit, &params, &combined).unwrap();
        let rhs = run_circuit_at(&circuit, &coeffs, &u)
            .unwrap()
            .scaled(alpha)
            .add(&run_circuit_at(&circuit, &coeffs, &v).unwrap())
            .unwrap();
        for (x, y) in lhs.amplitudes().iter().zip(rhs.amplitudes()) {
            assert!((x - y).norm() < 1e-13);
        }
    }

    #[test]
    fn circuit_validation_catches_unknown_names() {
        let layout = layout2();
        let err = Circuit::new(
            layout,
            vec![Element::EmitterUnion {
                emitter: "zz".into(),
                path: "a1".into(),
            }],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            ElementError::State(StateError::UnknownEmitter(_))
        ));
    }
}
