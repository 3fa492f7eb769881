//! Conforming triangulation of the truncated exterior domain.

pub struct DomainSpec;
pub struct TriMesh;
