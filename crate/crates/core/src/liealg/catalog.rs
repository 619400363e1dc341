use num_rational::BigRational;
use num_traits::Zero;

use super::{LieAlgebra, Scalar};
use crate::error::{Error, Result};

/// Human-readable description of a built-in algebra family.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub syntax: &'static str,
    pub example: &'static str,
    pub form: &'static str,
}

pub fn catalog_entries() -> &'static [CatalogEntry] {
    &[
        CatalogEntry {
            name: "abelian",
            syntax: "abelian(n)",
            example: "abelian(3)",
            form: "identity",
        },
        CatalogEntry {
            name: "sl2",
            syntax: "sl2",
            example: "sl2",
            form: "Killing: <H,H>=8, <E,F>=4",
        },
        CatalogEntry {
            name: "sl2_real",
            syntax: "sl2_real",
            example: "sl2_real",
            form: "Killing of the compact real form: <X_i,X_j>=-2 delta_ij",
        },
        CatalogEntry {
            name: "oscillator",
            syntax: "oscillator",
            example: "oscillator",
            form: "<N,C>=<Ap,Am>=1",
        },
        CatalogEntry {
            name: "direct_sum",
            syntax: "direct_sum(a,b)",
            example: "direct_sum(sl2,sl2)",
            form: "orthogonal sum of the summands' forms",
        },
    ]
}

/// Resolves a catalog expression such as `sl2`, `abelian(3)` or
/// `direct_sum(sl2,oscillator)`.
pub fn catalog(name: &str) -> Result<LieAlgebra> {
    let name = name.trim();
    let (head, args) = split_call(name)?;
    match (head, args.as_slice()) {
        ("sl2", []) => Ok(sl2()),
        ("sl2_real", []) => Ok(sl2_compact()),
        ("oscillator", []) => Ok(oscillator()),
        ("abelian", [n]) => {
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| Error::UnknownAlgebra(format!("abelian dimension `{n}`")))?;
            abelian(n)
        }
        ("direct_sum", [a, b]) => direct_sum(&catalog(a)?, &catalog(b)?),
        _ => Err(Error::UnknownAlgebra(name.to_string())),
    }
}

/// Splits `head(arg1,arg2)` at top-level commas.
fn split_call(s: &str) -> Result<(&str, Vec<&str>)> {
    let Some(open) = s.find('(') else {
        return Ok((s, Vec::new()));
    };
    let inner = s[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::UnknownAlgebra(s.to_string()))?;
    let mut args = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1).ok_or_else(|| Error::UnknownAlgebra(s.to_string()))?,
            ',' if depth == 0 => {
                args.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    args.push(&inner[start..]);
    Ok((s[..open].trim(), args))
}

struct Builder {
    n: usize,
    structure: Vec<Scalar>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Self { n, structure: vec![Scalar::zero(); n * n * n] }
    }

    /// Sets `[T_j, T_k] = v T_l` together with its antisymmetric partner.
    fn bracket(&mut self, j: usize, k: usize, l: usize, v: i64) -> &mut Self {
        let n = self.n;
        self.structure[(j * n + k) * n + l] = Scalar::int(v);
        self.structure[(k * n + j) * n + l] = Scalar::int(-v);
        self
    }

    /// Killing form `B_jk = tr(ad T_j ad T_k) = f_jm^l f_kl^m`, in exact arithmetic.
    fn killing(&self) -> Vec<Scalar> {
        let n = self.n;
        let f = |j: usize, k: usize, l: usize| match &self.structure[(j * n + k) * n + l] {
            Scalar::Exact(r) => r.clone(),
            Scalar::Approx(_) => unreachable!(),
        };
        let mut out = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                let mut acc = BigRational::zero();
                for l in 0..n {
                    for m in 0..n {
                        acc += f(j, m, l) * f(k, l, m);
                    }
                }
                out.push(Scalar::Exact(acc));
            }
        }
        out
    }

    fn finish(self, name: &str, labels: &[&str], form: Vec<Scalar>) -> LieAlgebra {
        let labels = labels.iter().map(|s| s.to_string()).collect();
        LieAlgebra::new(name, labels, self.structure, form).expect("catalog data is well-formed")
    }
}

fn sl2() -> LieAlgebra {
    let mut b = Builder::new(3);
    b.bracket(0, 1, 1, 2).bracket(0, 2, 2, -2).bracket(1, 2, 0, 1);
    let form = b.killing();
    b.finish("sl2", &["H", "E", "F"], form)
}

/// su(2): `[X_1,X_2] = X_3` and cyclic.
fn sl2_compact() -> LieAlgebra {
    let mut b = Builder::new(3);
    b.bracket(0, 1, 2, 1).bracket(1, 2, 0, 1).bracket(2, 0, 1, 1);
    let form = b.killing();
    b.finish("sl2_real", &["X1", "X2", "X3"], form)
}

fn oscillator() -> LieAlgebra {
    let n = 4;
    let mut b = Builder::new(n);
    // basis (N, Ap, Am, C)
    b.bracket(0, 1, 1, 1).bracket(0, 2, 2, -1).bracket(1, 2, 3, 1);
    let mut form = vec![Scalar::zero(); n * n];
    for (j, k) in [(0, 3), (3, 0), (1, 2), (2, 1)] {
        form[j * n + k] = Scalar::int(1);
    }
    b.finish("oscillator", &["N", "Ap", "Am", "C"], form)
}

fn abelian(n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::UnknownAlgebra("abelian(0)".into()));
    }
    let b = Builder::new(n);
    let form = (0..n * n).map(|i| Scalar::int((i / n == i % n) as i64)).collect();
    let labels: Vec<String> = (1..=n).map(|i| format!("T{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    Ok(b.finish(&format!("abelian({n})"), &refs, form))
}

pub(crate) fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> Result<LieAlgebra> {
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let mut structure = vec![Scalar::zero(); n * n * n];
    let mut form = vec![Scalar::zero(); n * n];
    for (alg, off) in [(a, 0), (b, na)] {
        let m = alg.dim();
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    structure[((j + off) * n + k + off) * n + l + off] = alg.structure_constant(j, k, l).clone();
                }
                form[(j + off) * n + k + off] = alg.form_entry(j, k).clone();
            }
        }
    }
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("{l}_1"))
        .chain(b.labels().iter().map(|l| format!("{l}_2")))
        .collect();
    LieAlgebra::new(format!("direct_sum({},{})", a.name(), b.name()), labels, structure, form)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_has_zero_brackets_and_identity_form() {
        let a = catalog("abelian(3)").unwrap();
        assert_eq!(a.dim(), 3);
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    assert!(a.structure_constant(j, k, l).is_zero());
                }
                assert_eq!(*a.form_entry(j, k), Scalar::int((j == k) as i64));
            }
        }
    }

    #[test]
    fn sl2_killing_form_values() {
        let a = catalog("sl2").unwrap();
        assert_eq!(*a.form_entry(0, 0), Scalar::int(8));
        assert_eq!(*a.form_entry(1, 2), Scalar::int(4));
        assert_eq!(*a.form_entry(2, 1), Scalar::int(4));
        assert!(a.form_entry(1, 1).is_zero());
        assert!(a.form_entry(0, 1).is_zero());
    }

    #[test]
    fn compact_form_is_negative_definite() {
        let a = catalog("sl2_real").unwrap();
        for j in 0..3 {
            assert_eq!(*a.form_entry(j, j), Scalar::int(-2));
        }
        assert!(a.is_real());
    }

    #[test]
    fn direct_sum_nests_and_relabels() {
        let a = catalog("direct_sum(sl2, direct_sum(abelian(1),oscillator))").unwrap();
        assert_eq!(a.dim(), 8);
        assert_eq!(a.labels()[0], "H_1");
        assert_eq!(a.labels()[3], "T1_1_2");
        assert_eq!(a.label_index("C_2_2"), Some(7));
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(matches!(catalog("so5"), Err(Error::UnknownAlgebra(_))));
        assert!(catalog("abelian(x)").is_err());
        assert!(catalog("abelian(0)").is_err());
        assert!(catalog("direct_sum(sl2)").is_err());
    }
}
