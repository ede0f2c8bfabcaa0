//! The shipped .net files are the canonical printouts of the built-in
//! circuit documents. Regenerate them with
//! `cargo test -p qudit-herald --test netlists -- --ignored`.

use std::fs;
use std::path::PathBuf;

use qudit_herald::corpus_documents;
use qudit_herald::netlist::parse_netlist;
use qudit_herald::print_netlist;
use qudit_herald::scattering::ReflectionCoefficients;

fn netlist_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("netlists")
}

#[test]
fn shipped_files_match_the_builders_byte_for_byte() {
    for (name, doc) in corpus_documents().expect("corpus builds") {
        let path = netlist_dir().join(format!("{name}.net"));
        let shipped = fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(shipped, print_netlist(&doc), "{name}.net drifted");
    }
}

#[test]
fn shipped_files_parse_and_herald_their_targets() {
    let ideal = ReflectionCoefficients::ideal();
    for (name, _) in corpus_documents().expect("corpus builds") {
        let path = netlist_dir().join(format!("{name}.net"));
        let text = fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let doc = parse_netlist(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let (_, metrics) = doc.execute(&ideal).unwrap_or_else(|e| panic!("{name}: {e}"));
        let metrics = metrics.unwrap_or_else(|| panic!("{name} lacks a MEASURE line"));
        assert!(
            (metrics.fidelity - 1.0).abs() < 1e-12,
            "{name}: fidelity {} at r = -1",
            metrics.fidelity
        );
    }
}

#[test]
#[ignore = "writes the shipped netlist files"]
fn regenerate_netlist_files() {
    let dir = netlist_dir();
    fs::create_dir_all(&dir).expect("netlists directory");
    for (name, doc) in corpus_documents().expect("corpus builds") {
        fs::write(dir.join(format!("{name}.net")), print_netlist(&doc)).expect("write netlist");
    }
}
