//! Plain-text circuit descriptions.
//!
//! A netlist declares the registers, the photon source, the element
//! sequence, and optionally a target to measure against:
//!
//! ```text
//! # comment
//! PATH a1 a2 a1v
//! EMITTER a +
//! EMITTER b +
//! SOURCE HV a1
//! BS a1 a2
//! PBS a1 a1v a1 a1v
//! SCATTER a a1v
//! HWP a1v
//! PS a2 H 1.5707963267948966
//! MEASURE ideal d=4 n=2 k=0 q=0
//! ```
//!
//! Declarations come first, exactly one SOURCE follows, and every name
//! must be declared before use. The first d/2 declared paths carry the
//! photonic qudit when a MEASURE target is present.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::elements::{validate_element, Circuit, Element, ElementError, PolFilter};
use crate::metrics::{report, MetricsReport};
use crate::scattering::ReflectionCoefficients;
use crate::schemes::{ideal_state_on, SchemeError, SchemeSpec};
use crate::state::{EmitterInit, HybridState, PolInit, RegisterLayout, StateError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum NetlistError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// Target declared by a MEASURE line: the ideal state with the given
/// dimension, qudit count, phase index, and shifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureSpec {
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub shifts: Vec<usize>,
}

impl MeasureSpec {
    pub fn to_scheme(&self) -> Result<SchemeSpec, SchemeError> {
        let base = self.shifts.first().copied().unwrap_or(0);
        SchemeSpec::new(self.d, self.n, base, self.k, self.shifts.clone())
    }
}

/// Parsed circuit description, ready to print or execute.
#[derive(Debug, Clone)]
pub struct NetlistDoc {
    layout: Arc<RegisterLayout>,
    source_pol: PolInit,
    source_path: String,
    emitter_inits: Vec<EmitterInit>,
    circuit: Circuit,
    measure: Option<MeasureSpec>,
}

impl NetlistDoc {
    pub fn from_parts(
        layout: Arc<RegisterLayout>,
        source_pol: PolInit,
        source_path: &str,
        emitter_inits: Vec<EmitterInit>,
        elements: Vec<Element>,
        measure: Option<MeasureSpec>,
    ) -> Result<NetlistDoc, NetlistError> {
        layout.path_index(source_path)?;
        if emitter_inits.len() != layout.n_emitters() {
            return Err(NetlistError::State(StateError::LayoutMismatch));
        }
        let circuit = Circuit::new(layout.clone(), elements)?;
        Ok(NetlistDoc {
            layout,
            source_pol,
            source_path: source_path.to_string(),
            emitter_inits,
            circuit,
            measure,
        })
    }

    pub fn layout(&self) -> &Arc<RegisterLayout> {
        &self.layout
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn measure(&self) -> Option<&MeasureSpec> {
        self.measure.as_ref()
    }

    pub fn initial_state(&self) -> Result<HybridState, StateError> {
        HybridState::product(
            self.layout.clone(),
            self.source_pol,
            &self.source_path,
            &self.emitter_inits,
        )
    }

    /// Run the circuit at the given reflection coefficients. When the
    /// netlist carries a MEASURE target the returned report compares the
    /// raw output against it.
    pub fn execute(
        &self,
        coeffs: &ReflectionCoefficients,
    ) -> Result<(HybridState, Option<MetricsReport>), NetlistError> {
        let initial = self.initial_state()?;
        let raw = crate::elements::run_circuit_at(&self.circuit, coeffs, &initial)?;
        let metrics = match &self.measure {
            None => None,
            Some(measure) => {
                let spec = measure.to_scheme()?;
                let ideal = ideal_state_on(&self.layout, &spec)?;
                Some(report(&raw, &ideal)?)
            }
        };
        Ok((raw, metrics))
    }
}

fn filter_token(filter: PolFilter) -> &'static str {
    match filter {
        PolFilter::H => "H",
        PolFilter::V => "V",
        PolFilter::Both => "*",
    }
}

/// Canonical text form: PATH line, EMITTER lines, SOURCE, elements in
/// order, MEASURE last. Parsing the output reproduces the document.
pub fn print_netlist(doc: &NetlistDoc) -> String {
    let mut out = String::new();
    out.push_str("PATH");
    for p in doc.layout.paths() {
        out.push(' ');
        out.push_str(p);
    }
    out.push('\n');
    for (name, init) in doc.layout.emitters().iter().zip(&doc.emitter_inits) {
        let sign = match init {
            EmitterInit::Plus | EmitterInit::GPlus => "+",
            EmitterInit::Minus | EmitterInit::GMinus => "-",
        };
        out.push_str(&format!("EMITTER {name} {sign}\n"));
    }
    let pol = match doc.source_pol {
        PolInit::H => "H",
        PolInit::V => "V",
        PolInit::Superposition => "HV",
    };
    out.push_str(&format!("SOURCE {pol} {}\n", doc.source_path));
    for element in doc.circuit.elements() {
        let line = match element {
            Element::BeamSplitter { p1, p2 } => format!("BS {p1} {p2}"),
            Element::Pbs {
                in1,
                in2,
                out1,
                out2,
            } => format!("PBS {in1} {in2} {out1} {out2}"),
            Element::HalfWavePlate { path } => format!("HWP {path}"),
            Element::PhaseShift {
                path,
                filter,
                theta,
            } => format!("PS {path} {} {theta}", filter_token(*filter)),
            Element::EmitterUnion { emitter, path } => format!("SCATTER {emitter} {path}"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    if let Some(m) = &doc.measure {
        let shifts: Vec<String> = m.shifts.iter().map(|q| q.to_string()).collect();
        out.push_str(&format!(
            "MEASURE ideal d={} n={} k={} q={}\n",
            m.d,
            m.n,
            m.k,
            shifts.join(",")
        ));
    }
    out
}

impl fmt::Display for NetlistDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_netlist(self))
    }
}

struct Tok<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut col = 0usize;
    for (byte, ch) in line.char_indices() {
        col += 1;
        if ch == '#' {
            if let Some((b, c)) = start.take() {
                out.push(Tok {
                    text: &line[b..byte],
                    col: c,
                });
            }
            return out;
        }
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                out.push(Tok {
                    text: &line[b..byte],
                    col: c,
                });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        out.push(Tok {
            text: &line[b..],
            col: c,
        });
    }
    out
}

struct LineParser<'a> {
    toks: &'a [Tok<'a>],
    line: usize,
    next: usize,
}

impl<'a> LineParser<'a> {
    fn take(&mut self, what: &str) -> Result<&'a Tok<'a>, ParseError> {
        let tok = self.toks.get(self.next).ok_or_else(|| {
            let col = self
                .toks
                .last()
                .map(|t| t.col + t.text.chars().count())
                .unwrap_or(1);
            ParseError::new(self.line, col, format!("expected {what}"))
        })?;
        self.next += 1;
        Ok(tok)
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.toks.get(self.next) {
            None => Ok(()),
            Some(extra) => Err(ParseError::new(
                self.line,
                extra.col,
                format!("unexpected trailing token '{}'", extra.text),
            )),
        }
    }

    fn usize_field(&mut self, key: &str) -> Result<usize, ParseError> {
        let tok = self.take(&format!("{key}=<integer>"))?;
        let value = tok
            .text
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| {
                ParseError::new(
                    self.line,
                    tok.col,
                    format!("expected {key}=<integer>, got '{}'", tok.text),
                )
            })?;
        value.parse().map_err(|_| {
            ParseError::new(
                self.line,
                tok.col,
                format!("invalid integer '{value}' for {key}"),
            )
        })
    }
}

#[derive(Default)]
struct Declarations {
    paths: Vec<String>,
    emitters: Vec<String>,
    inits: Vec<EmitterInit>,
}

impl Declarations {
    fn declare_path(&mut self, tok: &Tok<'_>, line: usize) -> Result<(), ParseError> {
        if self.knows(tok.text) {
            return Err(ParseError::new(
                line,
                tok.col,
                format!("duplicate name '{}'", tok.text),
            ));
        }
        self.paths.push(tok.text.to_string());
        Ok(())
    }

    fn knows(&self, name: &str) -> bool {
        self.paths.iter().any(|p| p == name) || self.emitters.iter().any(|e| e == name)
    }

    fn path(&self, tok: &Tok<'_>, line: usize) -> Result<String, ParseError> {
        if self.paths.iter().any(|p| p == tok.text) {
            Ok(tok.text.to_string())
        } else {
            Err(ParseError::new(
                line,
                tok.col,
                format!("unknown path '{}'", tok.text),
            ))
        }
    }

    fn emitter(&self, tok: &Tok<'_>, line: usize) -> Result<String, ParseError> {
        if self.emitters.iter().any(|e| e == tok.text) {
            Ok(tok.text.to_string())
        } else {
            Err(ParseError::new(
                line,
                tok.col,
                format!("unknown emitter '{}'", tok.text),
            ))
        }
    }
}

/// Parse netlist text. Errors carry the 1-based line and column of the
/// offending token.
pub fn parse_netlist(text: &str) -> Result<NetlistDoc, ParseError> {
    let mut decls = Declarations::default();
    let mut source: Option<(PolInit, String)> = None;
    let mut elements: Vec<(Element, usize)> = Vec::new();
    let mut measure: Option<MeasureSpec> = None;
    let mut layout: Option<Arc<RegisterLayout>> = None;

    for (line_idx, raw_line) in text.lines().enumerate() {
        let line = line_idx + 1;
        let toks = tokenize(raw_line);
        if toks.is_empty() {
            continue;
        }
        let keyword = &toks[0];
        let mut p = LineParser {
            toks: &toks,
            line,
            next: 1,
        };
        let declaring = matches!(keyword.text, "PATH" | "EMITTER");
        if declaring && layout.is_some() {
            return Err(ParseError::new(
                line,
                keyword.col,
                "declarations must precede SOURCE and elements",
            ));
        }
        if !declaring && layout.is_none() {
            if decls.paths.is_empty() {
                return Err(ParseError::new(
                    line,
                    keyword.col,
                    "at least one PATH must be declared first",
                ));
            }
            layout = Some(Arc::new(
                RegisterLayout::new(decls.paths.clone(), decls.emitters.clone())
                    .expect("declarations were checked for duplicates"),
            ));
        }
        match keyword.text {
            "PATH" => {
                let first = p.take("a path name")?;
                decls.declare_path(first, line)?;
                while p.next < toks.len() {
                    let tok = p.take("a path name")?;
                    decls.declare_path(tok, line)?;
                }
            }
            "EMITTER" => {
                let name = p.take("an emitter name")?;
                if decls.knows(name.text) {
                    return Err(ParseError::new(
                        line,
                        name.col,
                        format!("duplicate name '{}'", name.text),
                    ));
                }
                let sign = p.take("+ or -")?;
                let init = match sign.text {
                    "+" => EmitterInit::Plus,
                    "-" => EmitterInit::Minus,
                    other => {
                        return Err(ParseError::new(
                            line,
                            sign.col,
                            format!("expected + or -, got '{other}'"),
                        ))
                    }
                };
                p.finish()?;
                decls.emitters.push(name.text.to_string());
                decls.inits.push(init);
            }
            "SOURCE" => {
                if source.is_some() {
                    return Err(ParseError::new(
                        line,
                        keyword.col,
                        "a netlist has exactly one SOURCE",
                    ));
                }
                let pol_tok = p.take("H, V, or HV")?;
                let pol = match pol_tok.text {
                    "H" => PolInit::H,
                    "V" => PolInit::V,
                    "HV" => PolInit::Superposition,
                    other => {
                        return Err(ParseError::new(
                            line,
                            pol_tok.col,
                            format!("expected H, V, or HV, got '{other}'"),
                        ))
                    }
                };
                let path = decls.path(p.take("a path name")?, line)?;
                p.finish()?;
                source = Some((pol, path));
            }
            "BS" => {
                let p1 = decls.path(p.take("a path name")?, line)?;
                let p2 = decls.path(p.take("a path name")?, line)?;
                p.finish()?;
                elements.push((Element::BeamSplitter { p1, p2 }, line));
            }
            "PBS" => {
                let in1 = decls.path(p.take("a path name")?, line)?;
                let in2 = decls.path(p.take("a path name")?, line)?;
                let out1 = decls.path(p.take("a path name")?, line)?;
                let out2 = decls.path(p.take("a path name")?, line)?;
                p.finish()?;
                elements.push((
                    Element::Pbs {
                        in1,
                        in2,
                        out1,
                        out2,
                    },
                    line,
                ));
            }
            "HWP" => {
                let path = decls.path(p.take("a path name")?, line)?;
                p.finish()?;
                elements.push((Element::HalfWavePlate { path }, line));
            }
            "PS" => {
                let path = decls.path(p.take("a path name")?, line)?;
                let filter_tok = p.take("H, V, or *")?;
                let filter = match filter_tok.text {
                    "H" => PolFilter::H,
                    "V" => PolFilter::V,
                    "*" => PolFilter::Both,
                    other => {
                        return Err(ParseError::new(
                            line,
                            filter_tok.col,
                            format!("expected H, V, or *, got '{other}'"),
                        ))
                    }
                };
                let theta_tok = p.take("a phase in radians")?;
                let theta: f64 = theta_tok.text.parse().map_err(|_| {
                    ParseError::new(
                        line,
                        theta_tok.col,
                        format!("invalid phase '{}'", theta_tok.text),
                    )
                })?;
                p.finish()?;
                elements.push((
                    Element::PhaseShift {
                        path,
                        filter,
                        theta,
                    },
                    line,
                ));
            }
            "SCATTER" => {
                let emitter = decls.emitter(p.take("an emitter name")?, line)?;
                let path = decls.path(p.take("a path name")?, line)?;
                p.finish()?;
                elements.push((Element::EmitterUnion { emitter, path }, line));
            }
            "MEASURE" => {
                if measure.is_some() {
                    return Err(ParseError::new(
                        line,
                        keyword.col,
                        "a netlist has at most one MEASURE",
                    ));
                }
                let kind = p.take("the word 'ideal'")?;
                if kind.text != "ideal" {
                    return Err(ParseError::new(
                        line,
                        kind.col,
                        format!("expected 'ideal', got '{}'", kind.text),
                    ));
                }
                let d = p.usize_field("d")?;
                let n = p.usize_field("n")?;
                let k = p.usize_field("k")?;
                let q_tok = p.take("q=<shift,...>")?;
                let q_body = q_tok
                    .text
                    .strip_prefix("q=")
                    .ok_or_else(|| {
                        ParseError::new(
                            line,
                            q_tok.col,
                            format!("expected q=<shift,...>, got '{}'", q_tok.text),
                        )
                    })?;
                let mut shifts = Vec::new();
                for piece in q_body.split(',') {
                    let q: usize = piece.parse().map_err(|_| {
                        ParseError::new(
                            line,
                            q_tok.col,
                            format!("invalid shift '{piece}' in q list"),
                        )
                    })?;
                    shifts.push(q);
                }
                if shifts.len() != n.saturating_sub(1) {
                    return Err(ParseError::new(
                        line,
                        q_tok.col,
                        format!("q lists {} shifts but n = {n} needs {}", shifts.len(), n - 1),
                    ));
                }
                p.finish()?;
                measure = Some(MeasureSpec { d, n, k, shifts });
            }
            other => {
                return Err(ParseError::new(
                    line,
                    keyword.col,
                    format!("unknown keyword '{other}'"),
                ));
            }
        }
        if let (Some(layout), Some((element, element_line))) = (&layout, elements.last()) {
            validate_element(layout, element).map_err(|e| {
                ParseError::new(*element_line, 1, e.to_string())
            })?;
        }
    }

    let layout = match layout {
        Some(layout) => layout,
        None => {
            if decls.paths.is_empty() {
                return Err(ParseError::new(1, 1, "at least one PATH must be declared"));
            }
            Arc::new(
                RegisterLayout::new(decls.paths.clone(), decls.emitters.clone())
                    .expect("declarations were checked for duplicates"),
            )
        }
    };
    let (source_pol, source_path) = source.ok_or_else(|| {
        ParseError::new(
            text.lines().count().max(1),
            1,
            "a netlist has exactly one SOURCE",
        )
    })?;
    let circuit = Circuit::new(
        layout.clone(),
        elements.into_iter().map(|(e, _)| e).collect(),
    )
    .expect("elements were validated during parsing");
    Ok(NetlistDoc {
        layout,
        source_pol,
        source_path,
        emitter_inits: decls.inits,
        circuit,
        measure,
    })
}
