//! Incident waves and far fields.

pub struct PlaneWave;
pub struct FarFieldPattern;
