//! Parsing of `--omega` arguments.
//!
//! Accepted forms:
//! * `random:<count>:<seed>`
//! * comma-separated complex coordinates, e.g. `0.3, 1-2i, 0`
//! * linear combinations of basis labels, e.g. `0.3*H + 1.2*E - F`
//!
//! Several explicit elements may be separated by `;`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{parse_complex, AlgebraElement, LieAlgebra};
use crate::rmat::seeded_elements;
use crate::tol::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OmegaSpec {
    Random { count: usize, seed: u64 },
    Explicit { text: String },
}

impl OmegaSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("random:") {
            let mut parts = rest.split(':');
            let count = parts.next().and_then(|c| c.trim().parse().ok());
            let seed = parts.next().and_then(|c| c.trim().parse().ok());
            return match (count, seed, parts.next()) {
                (Some(count), Some(seed), None) => Ok(OmegaSpec::Random { count, seed }),
                _ => Err(Error::Usage(format!("expected random:<count>:<seed>, got `{s}`"))),
            };
        }
        if s.is_empty() {
            return Err(Error::Usage("empty omega".into()));
        }
        Ok(OmegaSpec::Explicit { text: s.to_string() })
    }

    pub fn resolve(&self, a: &LieAlgebra, tol: &Tolerances) -> Result<Vec<AlgebraElement>> {
        match self {
            OmegaSpec::Random { count, seed } => Ok(seeded_elements(a, *count, *seed, tol)),
            OmegaSpec::Explicit { text } => text.split(';').map(|part| parse_element(a, part)).collect(),
        }
    }
}

/// One element, either as coordinates or as a label combination.
pub fn parse_element(a: &LieAlgebra, text: &str) -> Result<AlgebraElement> {
    let text = text.trim();
    let has_label = a.labels().iter().any(|l| contains_label(text, l));
    if text.contains('*') || has_label {
        parse_combination(a, text)
    } else {
        parse_coordinates(a, text)
    }
}

fn contains_label(text: &str, label: &str) -> bool {
    text.split(|c: char| !(c.is_alphanumeric() || c == '_')).any(|tok| tok == label)
}

fn parse_coordinates(a: &LieAlgebra, text: &str) -> Result<AlgebraElement> {
    let coords = text
        .split(',')
        .map(|t| parse_complex(t.trim()).map_err(|e| Error::Usage(format!("bad coordinate `{}`: {e}", t.trim()))))
        .collect::<Result<Vec<Complex64>>>()?;
    if coords.len() != a.dim() {
        return Err(Error::Dimension { expected: a.dim(), found: coords.len() });
    }
    Ok(AlgebraElement::new(coords))
}

/// Splits `c1*L1 + c2*L2 - L3` into signed terms.
fn split_terms(text: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut depth = 0i32;
    let chars: Vec<char> = text.chars().collect();
    for (i, &ch) in chars.iter().enumerate() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let prev = chars[..i].iter().rev().find(|c| !c.is_whitespace()).copied();
        let exponent = matches!(prev, Some('e') | Some('E'))
            && chars[..i].iter().rev().nth(1).is_some_and(|c| c.is_ascii_digit() || *c == '.');
        if depth == 0 && (ch == '+' || ch == '-') && !current.trim().is_empty() && !exponent
            && !matches!(prev, Some('*'))
        {
            terms.push(std::mem::take(&mut current));
        }
        current.push(ch);
    }
    if !current.trim().is_empty() {
        terms.push(current);
    }
    terms
}

fn parse_combination(a: &LieAlgebra, text: &str) -> Result<AlgebraElement> {
    let mut w = AlgebraElement::zero(a.dim());
    for term in split_terms(text) {
        let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
        let (coef, label) = match term.rsplit_once('*') {
            Some((c, l)) => {
                let c = c.trim_start_matches('+');
                let c = c.strip_prefix('(').and_then(|c| c.strip_suffix(')')).unwrap_or(c);
                let z = parse_complex(c).map_err(|e| Error::Usage(format!("bad coefficient `{c}`: {e}")))?;
                (z, l.to_string())
            }
            None => {
                let (sign, l) = match term.strip_prefix('-') {
                    Some(l) => (-1.0, l),
                    None => (1.0, term.trim_start_matches('+')),
                };
                (Complex64::new(sign, 0.0), l.to_string())
            }
        };
        let j = a
            .label_index(&label)
            .ok_or_else(|| Error::Usage(format!("unknown basis label `{label}` (have {})", a.labels().join(", "))))?;
        w.coords[j] += coef;
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::catalog;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn random_spec() {
        assert_eq!(OmegaSpec::parse("random:20:42").unwrap(), OmegaSpec::Random { count: 20, seed: 42 });
        assert!(OmegaSpec::parse("random:20").is_err());
        let a = catalog("sl2").unwrap();
        let t = Tolerances::default();
        let w1 = OmegaSpec::parse("random:3:9").unwrap().resolve(&a, &t).unwrap();
        let w2 = OmegaSpec::parse("random:3:9").unwrap().resolve(&a, &t).unwrap();
        assert_eq!(w1, w2);
        assert!(w1.iter().all(|w| w.max_abs() <= 1.0));
    }

    #[test]
    fn coordinates() {
        let a = catalog("sl2").unwrap();
        let w = parse_element(&a, "0.3, 1-2i, -i").unwrap();
        assert_eq!(w.coords.as_slice(), &[c(0.3, 0.), c(1., -2.), c(0., -1.)]);
        assert!(matches!(parse_element(&a, "1,2"), Err(Error::Dimension { .. })));
    }

    #[test]
    fn combinations() {
        let a = catalog("sl2").unwrap();
        let w = parse_element(&a, "0.3*H + 1.2*E - F").unwrap();
        assert_eq!(w.coords.as_slice(), &[c(0.3, 0.), c(1.2, 0.), c(-1., 0.)]);
        let w = parse_element(&a, "2.5i*H").unwrap();
        assert_eq!(w.coords[0], c(0., 2.5));
        let w = parse_element(&a, "1e-3*E - 2.5e+1*F").unwrap();
        assert_eq!(w.coords.as_slice(), &[c(0., 0.), c(1e-3, 0.), c(-25., 0.)]);
        let w = parse_element(&a, "(1+2i)*E").unwrap();
        assert_eq!(w.coords[1], c(1., 2.));
        assert!(parse_element(&a, "2*Q").is_err());
    }

    #[test]
    fn several_elements() {
        let a = catalog("sl2").unwrap();
        let spec = OmegaSpec::parse("E; 0.5*H").unwrap();
        assert_eq!(spec.resolve(&a, &Tolerances::default()).unwrap().len(), 2);
    }
}
