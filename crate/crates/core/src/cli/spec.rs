// Copyright 2026 The mcdec Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


//! Gate selection from command-line text.

use crate::qmat::{Complex, GateKind, Mat2, QmatError};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SpecError {
    #[error("unknown gate '{0}'")]
    UnknownGate(String),
    #[error("gate '{0}' needs --theta")]
    MissingTheta(String),
    #[error("gate '{0}' takes no angle")]
    UnexpectedTheta(String),
    #[error("give either --gate or --matrix")]
    NoGate,
    #[error("bad complex number '{0}'")]
    BadComplex(String),
    #[error("matrix needs two rows of two entries, separated by ';' and ','")]
    BadShape,
    #[error("invalid matrix: {0}")]
    Matrix(#[from] QmatError),
}

pub fn parse_gate(name: &str, theta: Option<f64>) -> Result<GateKind, SpecError> {
    let lower = name.to_ascii_lowercase();
    let angle = |t: Option<f64>| t.ok_or_else(|| SpecError::MissingTheta(lower.clone()));
    let g = match lower.as_str() {
        "x" | "y" | "z" | "h" if theta.is_some() => return Err(SpecError::UnexpectedTheta(lower)),
        "x" => GateKind::X,
        "y" => GateKind::Y,
        "z" => GateKind::Z,
        "h" => GateKind::H,
        "p" => GateKind::P(angle(theta)?),
        "rx" => GateKind::RX(angle(theta)?),
        "ry" => GateKind::RY(angle(theta)?),
        "rz" => GateKind::RZ(angle(theta)?),
        _ => return Err(SpecError::UnknownGate(name.to_string())),
    };
    Ok(g)
}

/// Parses `re+imi`, `re`, `imi`, `i`, `-i` and friends.
pub fn parse_complex(text: &str) -> Result<Complex, SpecError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || SpecError::BadComplex(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return s.parse::<f64>().map(|re| Complex::new(re, 0.0)).map_err(|_| bad());
    };
    // Split before the last sign that is not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_txt, im_txt) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_txt.is_empty() {
        0.0
    } else {
        re_txt.parse::<f64>().map_err(|_| bad())?
    };
    let im = match im_txt {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().map_err(|_| bad())?,
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex::new(re, im))
}

/// `"a,b;c,d"` row-major. Must be unitary.
pub fn parse_matrix(text: &str) -> Result<GateKind, SpecError> {
    let rows: Vec<&str> = text.split(';').collect();
    if rows.len() != 2 {
        return Err(SpecError::BadShape);
    }
    let mut entries = Vec::with_capacity(4);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        if cols.len() != 2 {
            return Err(SpecError::BadShape);
        }
        for c in cols {
            entries.push(parse_complex(c)?);
        }
    }
    let m = Mat2::new(entries[0], entries[1], entries[2], entries[3]);
    Ok(GateKind::u2(m)?)
}

pub fn resolve(gate: Option<&str>, theta: Option<f64>, matrix: Option<&str>) -> Result<GateKind, SpecError> {
    match (gate, matrix) {
        (Some(g), None) => parse_gate(g, theta),
        (None, Some(m)) => {
            if theta.is_some() {
                return Err(SpecError::UnexpectedTheta("matrix".into()));
            }
            parse_matrix(m)
        }
        _ => Err(SpecError::NoGate),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let c = |s| parse_complex(s).unwrap();
        assert_eq!(c("1"), Complex::new(1.0, 0.0));
        assert_eq!(c("i"), Complex::new(0.0, 1.0));
        assert_eq!(c("-i"), Complex::new(0.0, -1.0));
        assert_eq!(c("0.5-0.25i"), Complex::new(0.5, -0.25));
        assert_eq!(c("-1e-3+2E-1i"), Complex::new(-1e-3, 0.2));
        assert_eq!(c("3e2i"), Complex::new(0.0, 300.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+").is_err());
    }

    #[test]
    fn matrix_forms() {
        assert_eq!(parse_matrix("0,1;1,0").unwrap().matrix(), Mat2::x());
        assert!(matches!(parse_matrix("0,-i;-i,0"), Ok(GateKind::U2(_))));
        assert!(matches!(parse_matrix("1,1;0,1"), Err(SpecError::Matrix(QmatError::NotUnitary { .. }))));
        assert_eq!(parse_matrix("1,0,0;0,1"), Err(SpecError::BadShape));
    }

    #[test]
    fn named_gates() {
        assert_eq!(parse_gate("Z", None).unwrap(), GateKind::Z);
        assert_eq!(parse_gate("rx", Some(0.5)).unwrap(), GateKind::RX(0.5));
        assert!(matches!(parse_gate("p", None), Err(SpecError::MissingTheta(_))));
        assert!(matches!(parse_gate("cx", None), Err(SpecError::UnknownGate(_))));
    }
}
