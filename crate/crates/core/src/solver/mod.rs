//! P1 finite-element solvers.

pub struct ComplexField;
pub struct DtnOperator;
