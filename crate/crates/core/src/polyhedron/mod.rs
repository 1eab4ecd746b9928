//! Rational cones and sigma-polyhedra: double description, duality,
//! Minkowski sums and face lattices.

mod cone;
mod dd;
mod poly;

pub use cone::Cone;
pub use poly::{
    common_face_check, cone_face_lattice, face_lattice, lambda_cone, minkowski_sum, FaceRecord,
    Overlap, Polyhedron,
};

use crate::error::Result;
use crate::exactlin::ExactVector;

pub fn cone_from_generators(gens: &[ExactVector], ambient_rank: usize) -> Result<Cone> {
    Cone::from_generators(gens, ambient_rank)
}

pub fn dual_cone(c: &Cone) -> Cone {
    c.dual()
}
