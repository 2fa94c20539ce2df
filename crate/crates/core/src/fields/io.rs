//! JSON interchange for polynomial forms.
//!
//! ```json
//! {"degree": 2, "parity": "ee",
//!  "components": {"01": [[[0, 0, 0, 1], "3/2"]], "23": [[[0, 0, 0, 0], "-1"]]}}
//! ```
//!
//! Each component is a list of `[exponents, coefficient]` terms, with exact
//! rational coefficients written as strings (`"p/q"`, integers or decimals).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::PolyForm;
use crate::exterior::{basis, IndexSet, ParityTS};
use crate::poly::{Exponents, PolyScalar};
use crate::scalar::{format_rational, parse_rational};

#[derive(Debug, Error)]
pub enum FieldFileError {
    #[error("malformed field file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid field file: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldFile {
    pub degree: usize,
    pub parity: String,
    #[serde(default)]
    pub components: BTreeMap<String, Vec<(Exponents, String)>>,
}

impl FieldFile {
    pub fn parse(text: &str) -> Result<Self, FieldFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("field file serializes")
    }

    pub fn to_form(&self) -> Result<PolyForm, FieldFileError> {
        let invalid = FieldFileError::Invalid;
        if self.degree > 4 {
            return Err(invalid(format!("degree {} exceeds 4", self.degree)));
        }
        let parity: ParityTS = self
            .parity
            .parse()
            .map_err(|_| invalid(format!("unknown parity '{}'", self.parity)))?;
        let mut form = PolyForm::zero(self.degree, parity);
        for (label, terms) in &self.components {
            let set = IndexSet::parse_label(label).map_err(|e| invalid(e.to_string()))?;
            if set.len() != self.degree {
                return Err(invalid(format!("component '{label}' does not have {} indices", self.degree)));
            }
            let mut coef = PolyScalar::zero();
            for (exps, text) in terms {
                let c = parse_rational(text).ok_or_else(|| invalid(format!("bad coefficient '{text}'")))?;
                coef.add_term(*exps, c);
            }
            form = form
                .try_add(&PolyForm::term(coef, set, parity))
                .map_err(|e| invalid(e.to_string()))?;
        }
        Ok(form)
    }

    pub fn from_form(form: &PolyForm) -> Self {
        let mut components = BTreeMap::new();
        for &set in basis(form.degree()) {
            let p = form.component(set);
            if p.is_zero() {
                continue;
            }
            let terms = p.terms().map(|(e, c)| (*e, format_rational(c))).collect();
            components.insert(set.label(), terms);
        }
        FieldFile { degree: form.degree(), parity: form.parity().to_string(), components }
    }
}
