//! Result of comparing two sides of an identity.

use serde::{Deserialize, Serialize};

use crate::series::DeformationSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Outcome {
    pub pass: bool,
    /// Lowest power of `h` at which the two sides differ.
    pub first_order: Option<usize>,
    /// Rendering of the first offending sample or term.
    pub sample: Option<String>,
}

impl Outcome {
    pub fn ok() -> Self {
        Outcome { pass: true, first_order: None, sample: None }
    }

    pub fn fail(order: usize, sample: impl Into<String>) -> Self {
        Outcome { pass: false, first_order: Some(order), sample: Some(sample.into()) }
    }

    /// Keeps the failure with the lowest order.
    pub fn merge(self, other: Outcome) -> Outcome {
        match (self.pass, other.pass) {
            (true, _) => other,
            (false, true) => self,
            (false, false) => {
                if other.first_order < self.first_order {
                    other
                } else {
                    self
                }
            }
        }
    }

    pub fn all(items: impl IntoIterator<Item = Outcome>) -> Outcome {
        items.into_iter().fold(Outcome::ok(), Outcome::merge)
    }
}

/// Lowest order with a nonzero coefficient across a set of coefficients.
pub fn min_valuation<'a>(it: impl IntoIterator<Item = &'a DeformationSeries>) -> Option<usize> {
    it.into_iter().filter_map(|s| s.valuation()).min()
}
