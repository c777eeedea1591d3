//! placeholder
pub struct HPComplex;
