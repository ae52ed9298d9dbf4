//! JSON lattice documents: a field declaration and basis columns of exact entries.
//!
//! ```json
//! {"field":{"kind":"quadratic","D":3},"basis":[["1","0"],["1/2","0+1/2*sqrt(3)"]]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heights::FieldDescriptor;
use crate::lattice::Lattice;
use crate::scalar::{parse_entry, Scalar};

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawField {
    Rational,
    Quadratic {
        #[serde(rename = "D")]
        d: i64,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    field: RawField,
    basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDocument {
    pub field: FieldDescriptor,
    pub columns: Vec<Vec<Scalar>>,
}

fn parse_error(location: String, message: impl Into<String>) -> Error {
    Error::Parse { location, message: message.into() }
}

impl LatticeDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawDocument = serde_json::from_str(text)
            .map_err(|e| parse_error(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        let (field, d) = match raw.field {
            RawField::Rational => (FieldDescriptor::Rationals, None),
            RawField::Quadratic { d } => {
                let f = FieldDescriptor::quadratic(d).map_err(|e| parse_error("field.D".into(), e.to_string()))?;
                (f, Some(d))
            }
        };
        if raw.basis.is_empty() {
            return Err(parse_error("basis".into(), "no columns"));
        }
        let m = raw.basis[0].len();
        let mut columns = Vec::with_capacity(raw.basis.len());
        for (j, col) in raw.basis.iter().enumerate() {
            if col.len() != m {
                return Err(parse_error(format!("basis[{j}]"), format!("column has {} entries, expected {m}", col.len())));
            }
            let mut v = Vec::with_capacity(m);
            for (i, text) in col.iter().enumerate() {
                let x = parse_entry(text, d)
                    .map_err(|e| parse_error(format!("basis[{j}][{i}] offset {}", e.offset), e.message))?;
                v.push(x);
            }
            columns.push(v);
        }
        Ok(LatticeDocument { field, columns })
    }

    pub fn from_lattice(l: &Lattice) -> Self {
        LatticeDocument { field: FieldDescriptor::of_radicand(l.radicand()), columns: l.columns() }
    }

    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::from_columns(self.columns.clone())
    }

    /// Compact JSON with entries in canonical form.
    pub fn to_json(&self) -> String {
        let field = match self.field {
            FieldDescriptor::Rationals => RawField::Rational,
            FieldDescriptor::RealQuadratic(d) => RawField::Quadratic { d },
        };
        let basis = self.columns.iter().map(|c| c.iter().map(ToString::to_string).collect()).collect();
        serde_json::to_string(&RawDocument { field, basis }).expect("serializable")
    }
}
