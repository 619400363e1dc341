//! Plain-text algebra files.
//!
//! ```text
//! # comment
//! dim 3
//! label 1 H            (optional; defaults to T1..Tn)
//! form 1 1 8
//! form 2 3 4
//! bracket 1 2 2 2
//! bracket 2 3 1 1
//! ```
//!
//! Indices are 1-based and omitted entries are zero. `bracket j k l v` also
//! sets `f_kj^l = -v`; `form j k v` also sets `B_kj = v`. Entries that
//! contradict an earlier (implied) entry are rejected.

use std::fmt::Write as _;

use super::{LieAlgebra, Scalar};
use crate::error::{Error, Result};

pub fn parse_algebra(name: &str, text: &str) -> Result<LieAlgebra> {
    let mut dim: Option<usize> = None;
    let mut structure: Vec<Option<Scalar>> = Vec::new();
    let mut form: Vec<Option<Scalar>> = Vec::new();
    let mut labels: Vec<String> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let keyword = tokens[0];

        if keyword == "dim" {
            if dim.is_some() {
                return Err(err("duplicate `dim` line".into()));
            }
            if tokens.len() != 2 {
                return Err(err("expected `dim n`".into()));
            }
            let n: usize = tokens[1].parse().map_err(|_| err(format!("bad dimension `{}`", tokens[1])))?;
            if n == 0 {
                return Err(err("dimension must be positive".into()));
            }
            dim = Some(n);
            structure = vec![None; n * n * n];
            form = vec![None; n * n];
            labels = (1..=n).map(|i| format!("T{i}")).collect();
            continue;
        }

        let n = dim.ok_or_else(|| err("`dim n` must come first".into()))?;
        let index = |tok: &str| -> Result<usize> {
            let i: usize = tok.parse().map_err(|_| err(format!("bad index `{tok}`")))?;
            if i == 0 || i > n {
                return Err(err(format!("index {i} outside 1..={n}")));
            }
            Ok(i - 1)
        };

        match keyword {
            "label" => {
                if tokens.len() != 3 {
                    return Err(err("expected `label j name`".into()));
                }
                let j = index(tokens[1])?;
                let name = tokens[2];
                if !name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                    || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    return Err(err(format!("label `{name}` is not an identifier")));
                }
                labels[j] = name.to_string();
            }
            "form" => {
                if tokens.len() < 4 {
                    return Err(err("expected `form j k value`".into()));
                }
                let (j, k) = (index(tokens[1])?, index(tokens[2])?);
                let v: Scalar = tokens[3..].join("").parse().map_err(err)?;
                set(&mut form, j * n + k, v.clone()).map_err(|m| err(format!("form ({},{}): {m}", j + 1, k + 1)))?;
                set(&mut form, k * n + j, v).map_err(|m| err(format!("form ({},{}): {m}", k + 1, j + 1)))?;
            }
            "bracket" => {
                if tokens.len() < 5 {
                    return Err(err("expected `bracket j k l value`".into()));
                }
                let (j, k, l) = (index(tokens[1])?, index(tokens[2])?, index(tokens[3])?);
                let v: Scalar = tokens[4..].join("").parse().map_err(err)?;
                if j == k && !v.is_zero() {
                    return Err(err(format!("[T{0},T{0}] must vanish", j + 1)));
                }
                let here = (j * n + k) * n + l;
                let there = (k * n + j) * n + l;
                set(&mut structure, here, v.clone())
                    .map_err(|m| err(format!("bracket ({},{},{}): {m}", j + 1, k + 1, l + 1)))?;
                set(&mut structure, there, v.neg()).map_err(|m| {
                    err(format!("bracket ({},{},{}) conflicts with antisymmetry: {m}", k + 1, j + 1, l + 1))
                })?;
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }

    dim.ok_or(Error::Parse { line: 0, msg: "missing `dim n`".into() })?;
    let fill = |v: Vec<Option<Scalar>>| v.into_iter().map(|s| s.unwrap_or_else(Scalar::zero)).collect();
    LieAlgebra::new(name, labels, fill(structure), fill(form))
}

fn set(slot: &mut [Option<Scalar>], i: usize, v: Scalar) -> std::result::Result<(), String> {
    match &slot[i] {
        Some(old) if *old != v => Err(format!("conflicting values {old} and {v}")),
        _ => {
            slot[i] = Some(v);
            Ok(())
        }
    }
}

/// Serializes an algebra in the file format; `parse_algebra` reads it back.
pub fn write_algebra(a: &LieAlgebra) -> String {
    let n = a.dim();
    let mut out = String::new();
    let _ = writeln!(out, "# {}", a.name());
    let _ = writeln!(out, "dim {n}");
    for (j, l) in a.labels().iter().enumerate() {
        let _ = writeln!(out, "label {} {l}", j + 1);
    }
    for j in 0..n {
        for k in j..n {
            let v = a.form_entry(j, k);
            if !v.is_zero() {
                let _ = writeln!(out, "form {} {} {}", j + 1, k + 1, literal(v));
            }
        }
    }
    for j in 0..n {
        for k in j + 1..n {
            for l in 0..n {
                let v = a.structure_constant(j, k, l);
                if !v.is_zero() {
                    let _ = writeln!(out, "bracket {} {} {} {}", j + 1, k + 1, l + 1, literal(v));
                }
            }
        }
    }
    out
}

fn literal(v: &Scalar) -> String {
    match v {
        Scalar::Exact(r) => r.to_string(),
        Scalar::Approx(c) => format!("{:?}{:+?}i", c.re, c.im),
    }
}
