//! Dense state vectors for the hybrid photon-emitter register.
//!
//! The joint Hilbert space is
//! (polarization) x (photon path) x (emitter 1) x ... x (emitter E),
//! with every emitter stored in its {|+>, |->} basis. A basis component is
//! addressed as `((pol * n_paths) + path) * 2^E + bits`, so polarization is
//! the slowest axis, then the path, then the emitter bitstring with the
//! first declared emitter as the most significant bit (bit 0 = |+>,
//! bit 1 = |->).
//!
//! States are not forced to stay normalized: heralded interactions shrink
//! the norm, and the missing weight is exactly the probability that a
//! detector fired and the attempt was discarded.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by layout construction, indexing, and state arithmetic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    /// A path name was used that the layout does not declare.
    #[error("unknown path `{0}`")]
    UnknownPath(String),
    /// An emitter name was used that the layout does not declare.
    #[error("unknown emitter `{0}`")]
    UnknownEmitter(String),
    /// Path or emitter names must be unique within a layout.
    #[error("duplicate register name `{0}`")]
    DuplicateName(String),
    /// A layout needs at least one photon path.
    #[error("layout declares no photon paths")]
    EmptyLayout,
    /// Two states were combined that live on different layouts.
    #[error("states live on different register layouts")]
    LayoutMismatch,
    /// An operation that renormalizes was asked for a zero state.
    #[error("state has zero norm")]
    ZeroNorm,
    /// Heralded evolution can only shrink the norm; anything above one
    /// signals an inconsistent state.
    #[error("squared norm {0} exceeds unity beyond tolerance")]
    NormExceedsUnity(f64),
    /// Qudit dimensions are restricted to powers of two starting at four.
    #[error("d must be a power of two >= 4 (got {0})")]
    BadDimension(usize),
    /// The encoding needs `d/2` main paths and a whole number of
    /// `log2(d)`-sized emitter groups.
    #[error("layout does not fit a d={d} encoding: {reason}")]
    EncodingMismatch { d: usize, reason: String },
}

pub type StateResult<T> = Result<T, StateError>;

/// Photon polarization. `H` indexes before `V` everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pol {
    H,
    V,
}

impl Pol {
    pub fn flipped(self) -> Pol {
        match self {
            Pol::H => Pol::V,
            Pol::V => Pol::H,
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Pol::H => 0,
            Pol::V => 1,
        }
    }

    pub fn from_bit(bit: usize) -> Pol {
        if bit == 0 {
            Pol::H
        } else {
            Pol::V
        }
    }
}

impl fmt::Display for Pol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pol::H => write!(f, "H"),
            Pol::V => write!(f, "V"),
        }
    }
}

/// Named photon paths and emitters, fixing the basis order of a state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    paths: Vec<String>,
    emitters: Vec<String>,
}

impl RegisterLayout {
    pub fn new(paths: Vec<String>, emitters: Vec<String>) -> StateResult<RegisterLayout> {
        if paths.is_empty() {
            return Err(StateError::EmptyLayout);
        }
        let mut seen = std::collections::HashSet::new();
        for name in paths.iter().chain(emitters.iter()) {
            if !seen.insert(name.clone()) {
                return Err(StateError::DuplicateName(name.clone()));
            }
        }
        Ok(RegisterLayout { paths, emitters })
    }

    pub fn from_names(paths: &[&str], emitters: &[&str]) -> StateResult<RegisterLayout> {
        RegisterLayout::new(
            paths.iter().map(|s| s.to_string()).collect(),
            emitters.iter().map(|s| s.to_string()).collect(),
        )
    }

    pub fn paths(&self) -> &[String] {
        &self.paths
    }

    pub fn emitters(&self) -> &[String] {
        &self.emitters
    }

    pub fn n_paths(&self) -> usize {
        self.paths.len()
    }

    pub fn n_emitters(&self) -> usize {
        self.emitters.len()
    }

    pub fn dim(&self) -> usize {
        2 * self.n_paths() * (1 << self.n_emitters())
    }

    pub fn path_index(&self, name: &str) -> StateResult<usize> {
        self.paths
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| StateError::UnknownPath(name.to_string()))
    }

    pub fn emitter_index(&self, name: &str) -> StateResult<usize> {
        self.emitters
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| StateError::UnknownEmitter(name.to_string()))
    }

    /// Bit mask of one emitter inside the bitstring axis. The first
    /// declared emitter occupies the most significant bit.
    pub fn emitter_mask(&self, emitter: usize) -> usize {
        1 << (self.n_emitters() - 1 - emitter)
    }

    pub fn index(&self, pol: Pol, path: usize, bits: usize) -> usize {
        debug_assert!(path < self.n_paths());
        debug_assert!(bits < (1 << self.n_emitters()));
        ((pol.bit() * self.n_paths()) + path) * (1 << self.n_emitters()) + bits
    }

    pub fn decode(&self, index: usize) -> BasisComponent {
        let cells = 1 << self.n_emitters();
        let bits = index % cells;
        let slot = index / cells;
        let path = slot % self.n_paths();
        let pol = Pol::from_bit(slot / self.n_paths());
        BasisComponent { pol, path, bits }
    }

    /// New layout with extra paths appended after the existing ones.
    pub fn with_extra_paths<I>(&self, extra: I) -> StateResult<RegisterLayout>
    where
        I: IntoIterator,
        I::Item: Into<String>,
    {
        let mut paths = self.paths.clone();
        paths.extend(extra.into_iter().map(Into::into));
        RegisterLayout::new(paths, self.emitters.clone())
    }
}

/// One basis component: polarization, path index, emitter bitstring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisComponent {
    pub pol: Pol,
    pub path: usize,
    pub bits: usize,
}

/// Initial photon polarization for state preparation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolInit {
    H,
    V,
    /// (|H> + |V>) / sqrt(2)
    Superposition,
}

/// Initial single-emitter state. The `G*` variants are the bare ground
/// states, expanded into the |+-> storage basis:
/// |g+> = (|+> - |->)/sqrt(2), |g-> = (|+> + |->)/sqrt(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitterInit {
    Plus,
    Minus,
    GPlus,
    GMinus,
}

impl EmitterInit {
    fn amplitudes(self) -> [C64; 2] {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            EmitterInit::Plus => [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            EmitterInit::Minus => [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            EmitterInit::GPlus => [C64::new(s, 0.0), C64::new(-s, 0.0)],
            EmitterInit::GMinus => [C64::new(s, 0.0), C64::new(s, 0.0)],
        }
    }
}

/// Dense complex state over a [`RegisterLayout`].
#[derive(Debug, Clone, PartialEq)]
pub struct HybridState {
    layout: Arc<RegisterLayout>,
    amps: Vec<C64>,
}

impl HybridState {
    pub fn zero(layout: Arc<RegisterLayout>) -> HybridState {
        let dim = layout.dim();
        HybridState {
            layout,
            amps: vec![C64::new(0.0, 0.0); dim],
        }
    }

    pub fn layout(&self) -> &Arc<RegisterLayout> {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, pol: Pol, path: usize, bits: usize) -> C64 {
        self.amps[self.layout.index(pol, path, bits)]
    }

    pub fn amplitude_mut(&mut self, pol: Pol, path: usize, bits: usize) -> &mut C64 {
        let idx = self.layout.index(pol, path, bits);
        &mut self.amps[idx]
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    /// Contiguous amplitude range of one (polarization, path) sector.
    pub(crate) fn sector(&self, pol: Pol, path: usize) -> std::ops::Range<usize> {
        let cells = 1usize << self.layout.n_emitters();
        let start = ((pol.bit() * self.layout.n_paths()) + path) * cells;
        start..start + cells
    }

    pub fn components(&self) -> impl Iterator<Item = (BasisComponent, C64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .map(|(i, &a)| (self.layout.decode(i), a))
    }

    /// Product state: one photon with the given polarization on one path,
    /// every emitter initialized independently.
    pub fn product(
        layout: Arc<RegisterLayout>,
        pol: PolInit,
        path: &str,
        emitters: &[EmitterInit],
    ) -> StateResult<HybridState> {
        if emitters.len() != layout.n_emitters() {
            return Err(StateError::EncodingMismatch {
                d: 0,
                reason: format!(
                    "expected {} emitter initializers, got {}",
                    layout.n_emitters(),
                    emitters.len()
                ),
            });
        }
        let path = layout.path_index(path)?;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let pol_amps: Vec<(Pol, C64)> = match pol {
            PolInit::H => vec![(Pol::H, C64::new(1.0, 0.0))],
            PolInit::V => vec![(Pol::V, C64::new(1.0, 0.0))],
            PolInit::Superposition => {
                vec![(Pol::H, C64::new(s, 0.0)), (Pol::V, C64::new(s, 0.0))]
            }
        };
        let mut state = HybridState::zero(layout);
        let n_emit = state.layout.n_emitters();
        for bits in 0..(1usize << n_emit) {
            let mut factor = C64::new(1.0, 0.0);
            for (e, init) in emitters.iter().enumerate() {
                let bit = (bits >> (n_emit - 1 - e)) & 1;
                factor *= init.amplitudes()[bit];
            }
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            for &(p, a) in &pol_amps {
                *state.amplitude_mut(p, path, bits) += a * factor;
            }
        }
        Ok(state)
    }

    /// Shared kernel for conditional amplitude maps. Components matched by
    /// `pred` are multiplied by `factor` and optionally moved by flipping
    /// the polarization and/or a set of emitter bits; everything else is
    /// carried over unchanged. The map is linear by construction.
    pub fn map_component<F>(
        &self,
        pred: F,
        factor: C64,
        flip_pol: bool,
        flip_emitters: &[usize],
    ) -> HybridState
    where
        F: Fn(&BasisComponent) -> bool,
    {
        let mut mask = 0usize;
        for &e in flip_emitters {
            mask |= self.layout.emitter_mask(e);
        }
        let mut out = HybridState::zero(self.layout.clone());
        for (i, &a) in self.amps.iter().enumerate() {
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            let c = self.layout.decode(i);
            if pred(&c) {
                let pol = if flip_pol { c.pol.flipped() } else { c.pol };
                let j = self.layout.index(pol, c.path, c.bits ^ mask);
                out.amps[j] += factor * a;
            } else {
                out.amps[i] += a;
            }
        }
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> StateResult<HybridState> {
        let n2 = self.norm_sqr();
        if n2 <= 0.0 {
            return Err(StateError::ZeroNorm);
        }
        let scale = 1.0 / n2.sqrt();
        let mut out = self.clone();
        for a in &mut out.amps {
            *a *= scale;
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: C64) -> HybridState {
        let mut out = self.clone();
        for a in &mut out.amps {
            *a *= factor;
        }
        out
    }

    pub fn add(&self, other: &HybridState) -> StateResult<HybridState> {
        if self.layout != other.layout {
            return Err(StateError::LayoutMismatch);
        }
        let mut out = self.clone();
        for (a, b) in out.amps.iter_mut().zip(other.amps.iter()) {
            *a += b;
        }
        Ok(out)
    }

    /// Re-embed into a layout that appends extra paths; amplitudes keep
    /// their (pol, path, bits) addresses.
    pub fn extend_paths<I>(&self, extra: I) -> StateResult<HybridState>
    where
        I: IntoIterator,
        I::Item: Into<String>,
    {
        let layout = Arc::new(self.layout.with_extra_paths(extra)?);
        let mut out = HybridState::zero(layout);
        for (c, a) in self.components() {
            if a != C64::new(0.0, 0.0) {
                *out.amplitude_mut(c.pol, c.path, c.bits) = a;
            }
        }
        Ok(out)
    }
}

/// <a|b>, conjugate-linear in the first argument.
pub fn inner_product(a: &HybridState, b: &HybridState) -> StateResult<C64> {
    if a.layout != b.layout {
        return Err(StateError::LayoutMismatch);
    }
    Ok(a.amps
        .iter()
        .zip(b.amps.iter())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Amplitudes below this magnitude are dropped from state dumps.
pub const DUMP_EPSILON: f64 = 1e-14;

/// One line of a JSON state dump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateRecord {
    pub pol: String,
    pub path: String,
    pub emitters: String,
    pub re: f64,
    pub im: f64,
}

/// Basis-ordered dump records, omitting amplitudes below [`DUMP_EPSILON`].
pub fn dump_records(state: &HybridState) -> Vec<StateRecord> {
    let layout = state.layout();
    state
        .components()
        .filter(|(_, a)| a.norm() >= DUMP_EPSILON)
        .map(|(c, a)| {
            let n_emit = layout.n_emitters();
            let emitters: String = (0..n_emit)
                .map(|e| {
                    if (c.bits >> (n_emit - 1 - e)) & 1 == 0 {
                        '+'
                    } else {
                        '-'
                    }
                })
                .collect();
            StateRecord {
                pol: c.pol.to_string(),
                path: layout.paths()[c.path].clone(),
                emitters,
                re: a.re,
                im: a.im,
            }
        })
        .collect()
}

/// JSON state dump (array of records, basis order).
pub fn dump_state_json(state: &HybridState) -> String {
    serde_json::to_string_pretty(&dump_records(state)).expect("state records serialize")
}

/// Binary photon-level encoding of a d-dimensional qudit register.
///
/// The photon qudit uses level = pol * d/2 + path over the first d/2
/// declared paths (H before V). Each stationary qudit groups log2(d)
/// consecutive emitters, most significant first, with |+> = 0 and |-> = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuditEncoding {
    d: usize,
}

impl QuditEncoding {
    pub fn new(d: usize) -> StateResult<QuditEncoding> {
        if d < 4 || !d.is_power_of_two() {
            return Err(StateError::BadDimension(d));
        }
        Ok(QuditEncoding { d })
    }

    pub fn d(self) -> usize {
        self.d
    }

    /// Bits per stationary qudit.
    pub fn bits_per_qudit(self) -> usize {
        self.d.trailing_zeros() as usize
    }

    pub fn photon_level(self, pol: Pol, path: usize) -> StateResult<usize> {
        if path >= self.d / 2 {
            return Err(StateError::EncodingMismatch {
                d: self.d,
                reason: format!("path index {path} is not a main path"),
            });
        }
        Ok(pol.bit() * (self.d / 2) + path)
    }

    pub fn photon_slot(self, level: usize) -> StateResult<(Pol, usize)> {
        if level >= self.d {
            return Err(StateError::EncodingMismatch {
                d: self.d,
                reason: format!("photon level {level} out of range"),
            });
        }
        Ok((Pol::from_bit(level / (self.d / 2)), level % (self.d / 2)))
    }

    /// Check that a layout can host `n_stationary` encoded qudits and
    /// return the emitter count per qudit.
    pub fn check_layout(
        self,
        layout: &RegisterLayout,
        n_stationary: usize,
    ) -> StateResult<usize> {
        let m = self.bits_per_qudit();
        if layout.n_paths() < self.d / 2 {
            return Err(StateError::EncodingMismatch {
                d: self.d,
                reason: format!(
                    "need at least {} paths, layout has {}",
                    self.d / 2,
                    layout.n_paths()
                ),
            });
        }
        if layout.n_emitters() != n_stationary * m {
            return Err(StateError::EncodingMismatch {
                d: self.d,
                reason: format!(
                    "need exactly {} emitters for {} stationary qudits, layout has {}",
                    n_stationary * m,
                    n_stationary,
                    layout.n_emitters()
                ),
            });
        }
        Ok(m)
    }

    /// Emitter bitstring realizing the given stationary-qudit levels.
    pub fn emitter_bits(self, levels: &[usize]) -> StateResult<usize> {
        let m = self.bits_per_qudit();
        let mut bits = 0usize;
        for &level in levels {
            if level >= self.d {
                return Err(StateError::EncodingMismatch {
                    d: self.d,
                    reason: format!("stationary level {level} out of range"),
                });
            }
            bits = (bits << m) | level;
        }
        Ok(bits)
    }

    /// Stationary-qudit levels read out of an emitter bitstring.
    pub fn stationary_levels(self, bits: usize, n_stationary: usize) -> Vec<usize> {
        let m = self.bits_per_qudit();
        (0..n_stationary)
            .map(|t| (bits >> (m * (n_stationary - 1 - t))) & ((1 << m) - 1))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn small_layout() -> Arc<RegisterLayout> {
        Arc::new(RegisterLayout::from_names(&["a1", "a2", "a3", "a4"], &["a", "b", "c", "d"]).unwrap())
    }

    #[test]
    fn index_is_a_bijection_on_the_two_by_four_by_sixteen_layout() {
        let layout = small_layout();
        assert_eq!(layout.dim(), 2 * 4 * 16);
        let mut seen = vec![false; layout.dim()];
        for pol in [Pol::H, Pol::V] {
            for path in 0..4 {
                for bits in 0..16 {
                    let idx = layout.index(pol, path, bits);
                    assert!(!seen[idx], "index {idx} hit twice");
                    seen[idx] = true;
                    let back = layout.decode(idx);
                    assert_eq!(back, BasisComponent { pol, path, bits });
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn polarization_is_the_slowest_axis_and_first_emitter_is_msb() {
        let layout = small_layout();
        assert_eq!(layout.index(Pol::H, 0, 0), 0);
        assert_eq!(layout.index(Pol::V, 0, 0), 4 * 16);
        assert_eq!(layout.emitter_mask(0), 0b1000);
        assert_eq!(layout.emitter_mask(3), 0b0001);
    }

    #[test]
    fn duplicate_names_are_rejected() {
        assert_eq!(
            RegisterLayout::from_names(&["a1", "a1"], &["x"]).unwrap_err(),
            StateError::DuplicateName("a1".into())
        );
        assert_eq!(
            RegisterLayout::from_names(&["a1"], &["a1"]).unwrap_err(),
            StateError::DuplicateName("a1".into())
        );
    }

    #[test]
    fn product_state_matches_hand_expansion() {
        let layout = Arc::new(RegisterLayout::from_names(&["a1", "a2"], &["a", "b"]).unwrap());
        let state = HybridState::product(
            layout.clone(),
            PolInit::Superposition,
            "a1",
            &[EmitterInit::Plus, EmitterInit::Plus],
        )
        .unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((state.amplitude(Pol::H, 0, 0) - c(s, 0.0)).norm() < 1e-15);
        assert!((state.amplitude(Pol::V, 0, 0) - c(s, 0.0)).norm() < 1e-15);
        assert!((state.norm_sqr() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn g_basis_initializers_expand_correctly() {
        let layout = Arc::new(RegisterLayout::from_names(&["a1"], &["a"]).unwrap());
        let state =
            HybridState::product(layout, PolInit::H, "a1", &[EmitterInit::GPlus]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((state.amplitude(Pol::H, 0, 0) - c(s, 0.0)).norm() < 1e-15);
        assert!((state.amplitude(Pol::H, 0, 1) - c(-s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn map_component_identity_and_involution() {
        let layout = small_layout();
        let state = HybridState::product(
            layout,
            PolInit::Superposition,
            "a2",
            &[
                EmitterInit::Plus,
                EmitterInit::Minus,
                EmitterInit::GPlus,
                EmitterInit::GMinus,
            ],
        )
        .unwrap();
        let same = state.map_component(|_| true, c(1.0, 0.0), false, &[]);
        assert_eq!(same, state);
        let twice = state
            .map_component(|_| true, c(1.0, 0.0), true, &[1])
            .map_component(|_| true, c(1.0, 0.0), true, &[1]);
        for (x, y) in twice.amplitudes().iter().zip(state.amplitudes()) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn map_component_phase_flips_one_component() {
        let layout = Arc::new(RegisterLayout::from_names(&["a1", "a2"], &["a"]).unwrap());
        let state = HybridState::product(
            layout,
            PolInit::Superposition,
            "a1",
            &[EmitterInit::Plus],
        )
        .unwrap();
        let theta = std::f64::consts::PI;
        let flipped = state.map_component(
            |c| c.pol == Pol::V,
            C64::from_polar(1.0, theta),
            false,
            &[],
        );
        assert!((flipped.amplitude(Pol::V, 0, 0) + state.amplitude(Pol::V, 0, 0)).norm() < 1e-15);
        assert_eq!(flipped.amplitude(Pol::H, 0, 0), state.amplitude(Pol::H, 0, 0));
    }

    #[test]
    fn inner_product_is_conjugate_linear_in_first_argument() {
        let layout = Arc::new(RegisterLayout::from_names(&["a1"], &[]).unwrap());
        let mut a = HybridState::zero(layout.clone());
        let mut b = HybridState::zero(layout);
        *a.amplitude_mut(Pol::H, 0, 0) = c(0.0, 1.0);
        *b.amplitude_mut(Pol::H, 0, 0) = c(1.0, 0.0);
        assert_eq!(inner_product(&a, &b).unwrap(), c(0.0, -1.0));
    }

    #[test]
    fn photon_levels_follow_the_binary_encoding() {
        let enc = QuditEncoding::new(4).unwrap();
        assert_eq!(enc.photon_level(Pol::H, 0).unwrap(), 0);
        assert_eq!(enc.photon_level(Pol::H, 1).unwrap(), 1);
        assert_eq!(enc.photon_level(Pol::V, 0).unwrap(), 2);
        assert_eq!(enc.photon_level(Pol::V, 1).unwrap(), 3);
        let enc8 = QuditEncoding::new(8).unwrap();
        for level in 0..8 {
            let (pol, path) = enc8.photon_slot(level).unwrap();
            assert_eq!(enc8.photon_level(pol, path).unwrap(), level);
        }
    }

    #[test]
    fn stationary_levels_round_trip() {
        let enc = QuditEncoding::new(8).unwrap();
        let bits = enc.emitter_bits(&[5, 2]).unwrap();
        assert_eq!(bits, 0b101_010);
        assert_eq!(enc.stationary_levels(bits, 2), vec![5, 2]);
    }

    #[test]
    fn bad_dimensions_are_rejected() {
        assert!(matches!(
            QuditEncoding::new(9),
            Err(StateError::BadDimension(9))
        ));
        assert!(matches!(
            QuditEncoding::new(2),
            Err(StateError::BadDimension(2))
        ));
    }

    #[test]
    fn dump_omits_negligible_amplitudes_and_orders_by_index() {
        let layout = Arc::new(RegisterLayout::from_names(&["a1", "a2"], &["a"]).unwrap());
        let mut state = HybridState::zero(layout);
        *state.amplitude_mut(Pol::V, 1, 1) = c(0.5, -0.25);
        *state.amplitude_mut(Pol::H, 0, 0) = c(1e-15, 0.0);
        *state.amplitude_mut(Pol::H, 1, 0) = c(0.1, 0.0);
        let records = dump_records(&state);
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].path, "a2");
        assert_eq!(records[0].pol, "H");
        assert_eq!(records[1].pol, "V");
        assert_eq!(records[1].emitters, "-");
        assert_eq!(records[1].im, -0.25);
    }

    #[test]
    fn extend_paths_preserves_addresses() {
        let layout = Arc::new(RegisterLayout::from_names(&["a1"], &["a"]).unwrap());
        let mut state = HybridState::zero(layout);
        *state.amplitude_mut(Pol::V, 0, 1) = c(0.3, 0.4);
        let wider = state.extend_paths(["x1", "x2"]).unwrap();
        assert_eq!(wider.layout().n_paths(), 3);
        assert_eq!(wider.amplitude(Pol::V, 0, 1), c(0.3, 0.4));
        assert!((wider.norm_sqr() - state.norm_sqr()).abs() < 1e-15);
    }
}
