use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// A structure constant or form entry: exact rational when the source data is
/// rational, complex double otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Approx(Complex64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn int(v: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::Exact(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Approx(c) => *c == Complex64::new(0.0, 0.0),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Scalar::Exact(_) => true,
            Scalar::Approx(c) => c.im == 0.0,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(r) => Complex64::new(rational_to_f64(r), 0.0),
            Scalar::Approx(c) => *c,
        }
    }

    pub fn abs(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(&r.abs()),
            Scalar::Approx(c) => c.norm(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => Scalar::Approx(self.to_complex() + other.to_complex()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            _ => Scalar::Approx(self.to_complex() - other.to_complex()),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            _ => Scalar::Approx(self.to_complex() * other.to_complex()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Approx(c) => Scalar::Approx(-c),
        }
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Approx(c) if c.im == 0.0 => write!(f, "{:e}", c.re),
            Scalar::Approx(c) => write!(f, "{:e}{:+e}i", c.re, c.im),
        }
    }
}

/// Parses `p/q`, integers, plain decimals (kept exact), or complex literals
/// such as `1.5`, `2i`, `-0.5+3i`, `1e-3-2.5e-1i`.
impl FromStr for Scalar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty value".into());
        }
        if let Some(r) = parse_exact(s) {
            return Ok(Scalar::Exact(r));
        }
        parse_complex(s).map(Scalar::Approx)
    }
}

fn parse_exact(s: &str) -> Option<BigRational> {
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    parse_decimal(s)
}

/// Exact value of a plain decimal literal (no exponent).
fn parse_decimal(s: &str) -> Option<BigRational> {
    let (neg, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit() || c == '.') {
        return None;
    }
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(&digits).ok()?;
    if neg {
        num = -num;
    }
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(BigRational::new(num, den))
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
                break;
            }
        }
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let re: f64 = re.parse().map_err(|_| format!("bad real part in `{s}`"))?;
        let im: f64 = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            v => v.parse().map_err(|_| format!("bad imaginary part in `{s}`"))?,
        };
        Ok(Complex64::new(re, im))
    } else {
        s.parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| format!("bad number `{s}`"))
    }
}
