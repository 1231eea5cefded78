//! Reading inputs: JSON files and the named lattice and poset families.

use std::fs;
use std::path::Path;

use endoforge::algebra::{Lattice, Monoid, Poset, DEFAULT_SIZE_CAP};
use endoforge::graphcore::ArcColoredDigraph;
use endoforge::io::{self, AnyGraph};

use crate::Failure;

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn malformed(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

pub fn monoid(path: &Path) -> Result<Monoid, Failure> {
    io::parse_monoid(&read(path)?).map_err(malformed)
}

pub fn digraph(path: &Path) -> Result<ArcColoredDigraph, Failure> {
    io::parse_digraph(&read(path)?).map_err(malformed)
}

pub fn any_graph(path: &Path) -> Result<AnyGraph, Failure> {
    io::parse_any_graph(&read(path)?).map_err(malformed)
}

fn number(s: &str, what: &str) -> Result<usize, Failure> {
    s.parse().map_err(|_| Failure::Input(format!("{what}: expected a number, got {s:?}")))
}

/// Named posets: chain:N, antichain:N, bn:N; anything else is read as a poset JSON file.
pub fn poset(spec: &str) -> Result<Poset, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["chain", n] => Ok(Poset::chain(number(n, "chain")?)),
        ["antichain", n] => Ok(Poset::antichain(number(n, "antichain")?)),
        ["bn", n] => Poset::boolean_lattice_poset(number(n, "bn")?, DEFAULT_SIZE_CAP).map_err(malformed),
        _ => io::parse_poset(&read(Path::new(spec))?).map_err(malformed),
    }
}

/// Named lattices: chain:N, bn:N, m3, n5, example (the four-element Boolean lattice) and
/// ideals:P for a poset spec P; anything else is read as a poset JSON file.
pub fn lattice(spec: &str) -> Result<Lattice, Failure> {
    if let Some(rest) = spec.strip_prefix("ideals:") {
        return Lattice::ideal_lattice(&poset(rest)?, DEFAULT_SIZE_CAP)
            .map(|i| i.lattice)
            .map_err(malformed);
    }
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["chain", n] => {
            let n = number(n, "chain")?;
            if n == 0 {
                return Err(Failure::Input("a lattice needs at least one element".into()));
            }
            Ok(Lattice::chain(n))
        }
        ["bn", n] => Lattice::boolean(number(n, "bn")?).map_err(malformed),
        ["m3"] => Ok(Lattice::m3()),
        ["n5"] => Ok(Lattice::n5()),
        ["example"] => Lattice::boolean(2).map_err(malformed),
        _ => {
            let p = io::parse_poset(&read(Path::new(spec))?).map_err(malformed)?;
            Lattice::from_poset(p).map_err(malformed)
        }
    }
}

/// Comma-separated element list.
pub fn elements(s: &str) -> Result<Vec<usize>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| number(x.trim(), "element list")).collect()
}
