//! JSON interchange format for knot complexes.
//!
//! Generators are written at their `i = 0` translate; Maslov gradings are
//! stored quadrupled so that quarter-integral values stay exact.

use serde::{Deserialize, Serialize};

use crate::complex::{q, FilteredComplex, Generator, Q};
use crate::error::{FloerError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonGenerator {
    pub name: String,
    pub alexander: i64,
    pub maslov_x4: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonEntry {
    pub from: String,
    pub to: String,
    pub u_power: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonComplex {
    pub generators: Vec<JsonGenerator>,
    pub differential: Vec<JsonEntry>,
}

/// An exact fraction as `{"num": …, "den": …}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonFraction {
    pub num: String,
    pub den: String,
}

impl From<&num_rational::BigRational> for JsonFraction {
    fn from(r: &num_rational::BigRational) -> Self {
        JsonFraction { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

impl From<Q> for JsonFraction {
    fn from(r: Q) -> Self {
        JsonFraction { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

fn exact(v: Q, what: &str, name: &str) -> Result<i64> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(FloerError::Json(format!("{what} of {name} is not representable: {v}")))
    }
}

impl JsonComplex {
    /// Moves every generator to its `i = 0` translate; fails on fractional levels.
    pub fn from_complex(c: &FilteredComplex) -> Result<Self> {
        let mut c = c.clone();
        for k in 0..c.len() {
            let g = c.generator(k);
            let m = exact(g.i, "filtration level i", &g.name)?;
            c.retranslate(k, m);
        }
        let mut generators = Vec::with_capacity(c.len());
        for g in c.generators() {
            generators.push(JsonGenerator {
                name: g.name.clone(),
                alexander: exact(g.j, "Alexander grading", &g.name)?,
                maslov_x4: exact(g.maslov * 4, "Maslov grading", &g.name)?,
            });
        }
        let mut differential = Vec::with_capacity(c.entry_count());
        for (f, t, p) in c.entries() {
            if p < 0 {
                return Err(FloerError::Json(format!(
                    "entry {} -> {} has a negative U power",
                    c.generator(f).name,
                    c.generator(t).name
                )));
            }
            differential.push(JsonEntry {
                from: c.generator(f).name.clone(),
                to: c.generator(t).name.clone(),
                u_power: p,
            });
        }
        Ok(JsonComplex { generators, differential })
    }

    pub fn to_complex(&self) -> Result<FilteredComplex> {
        let mut c = FilteredComplex::new();
        for g in &self.generators {
            let maslov = Q::new(g.maslov_x4, 4);
            c.add_generator(Generator::new(g.name.clone(), q(0), q(g.alexander), maslov))
                .map_err(|e| FloerError::Json(e.to_string()))?;
        }
        for e in &self.differential {
            if e.u_power < 0 {
                return Err(FloerError::Json(format!("negative u_power on {} -> {}", e.from, e.to)));
            }
            let from = c.index_of(&e.from).ok_or_else(|| FloerError::Json(format!("unknown generator {}", e.from)))?;
            let to = c.index_of(&e.to).ok_or_else(|| FloerError::Json(format!("unknown generator {}", e.to)))?;
            if c.entry(from, to).is_some() {
                return Err(FloerError::Json(format!("duplicate entry {} -> {}", e.from, e.to)));
            }
            c.toggle_entry(from, to, e.u_power).map_err(|e| FloerError::Json(e.to_string()))?;
        }
        Ok(c)
    }
}

pub fn complex_to_json(c: &FilteredComplex) -> Result<String> {
    let doc = JsonComplex::from_complex(c)?;
    let mut text = serde_json::to_string_pretty(&doc).map_err(|e| FloerError::Json(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Parses a complex; structural problems (unknown names, duplicates) are `Json` errors.
/// Whether the result is a chain complex is left to `check_complex`.
pub fn complex_from_json(text: &str) -> Result<FilteredComplex> {
    let doc: JsonComplex = serde_json::from_str(text).map_err(|e| FloerError::Json(e.to_string()))?;
    doc.to_complex()
}
