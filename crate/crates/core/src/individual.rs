use crate::bitstring::BitString;

/// A chromosome paired with its (shifted, non-negative) fitness.
#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub bits: BitString,
    pub fitness: f64,
}

impl Individual {
    pub fn new(bits: BitString, fitness: f64) -> Self {
        Self { bits, fitness }
    }
}
