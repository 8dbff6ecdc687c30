//! Named pattern families: K_r, paths, cycles, stars, H_{k,l}, rotated
//! cliques, and `+`-separated disjoint unions.

use thiserror::Error;

use crate::graph::Pattern;
use crate::structure::{hkl_template, rotated_clique};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("bad pattern spec `{0}`: {1}")]
pub struct PatternSpecError(pub String, pub String);

pub fn clique(r: usize) -> Pattern {
    let mut edges = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            edges.push((a, b));
        }
    }
    Pattern::new(r, &edges).unwrap()
}

pub fn path(k: usize) -> Pattern {
    let edges: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
    Pattern::new(k, &edges).unwrap()
}

pub fn cycle(k: usize) -> Pattern {
    let mut edges: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
    edges.push((0, k - 1));
    Pattern::new(k, &edges).unwrap()
}

/// The k-star K_{1,k}: centre 0 with k leaves.
pub fn star(k: usize) -> Pattern {
    let edges: Vec<(usize, usize)> = (1..=k).map(|i| (0, i)).collect();
    Pattern::new(k + 1, &edges).unwrap()
}

fn err(spec: &str, msg: impl Into<String>) -> PatternSpecError {
    PatternSpecError(spec.to_string(), msg.into())
}

fn parse_single(spec: &str) -> Result<Pattern, PatternSpecError> {
    let s = spec.trim();
    let num = |tail: &str, min: usize| -> Result<usize, PatternSpecError> {
        let v: usize = tail
            .parse()
            .map_err(|_| err(spec, format!("expected an integer, got `{tail}`")))?;
        if v < min {
            return Err(err(spec, format!("parameter must be at least {min}")));
        }
        Ok(v)
    };
    if let Some(tail) = s.strip_prefix("rotated_K") {
        let r = num(tail, 4)?;
        return Ok(rotated_clique(r));
    }
    if let Some(tail) = s.strip_prefix("H_") {
        let parts: Vec<&str> = tail.split('_').collect();
        if parts.len() != 2 {
            return Err(err(spec, "expected H_<k>_<l>"));
        }
        let k = num(parts[0], 3)?;
        let l = num(parts[1], 1)?;
        if l >= k {
            return Err(err(spec, "need l < k"));
        }
        return Ok(hkl_template(k, l));
    }
    if let Some(tail) = s.strip_prefix('K') {
        return Ok(clique(num(tail, 2)?));
    }
    if let Some(tail) = s.strip_prefix('P') {
        return Ok(path(num(tail, 2)?));
    }
    if let Some(tail) = s.strip_prefix('C') {
        return Ok(cycle(num(tail, 3)?));
    }
    if let Some(tail) = s.strip_prefix('S') {
        return Ok(star(num(tail, 1)?));
    }
    Err(err(spec, "unknown family"))
}

/// Parses a family spec (`K4`, `P4`, `C5`, `S3`, `H_4_2`, `rotated_K4`) or a
/// `+`-separated union of these (`K3+K2`).
pub fn parse_pattern(spec: &str) -> Result<Pattern, PatternSpecError> {
    let mut parts = spec.split('+');
    let first = parts
        .next()
        .ok_or_else(|| err(spec, "empty pattern spec"))?;
    let mut pat = parse_single(first)?;
    for part in parts {
        pat = pat.union(&parse_single(part)?);
    }
    Ok(pat)
}
