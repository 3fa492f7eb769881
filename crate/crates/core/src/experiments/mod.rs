//! Batch experiment harnesses.
