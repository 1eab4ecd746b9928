use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{self, ExactVector};

use super::dd;

/// A rational polyhedral cone with both representations.
///
/// `rays` are primitive extreme rays taken modulo the lineality space (each
/// projected orthogonally off it), `facets` are primitive inward normals taken
/// modulo the orthogonal complement of the span. Both lists are sorted, so two
/// cones are equal as sets exactly when their fields are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient_rank: usize,
    dim: usize,
    rays: Vec<ExactVector>,
    lineality: Vec<ExactVector>,
    facets: Vec<ExactVector>,
    equations: Vec<ExactVector>,
}

impl Cone {
    /// The cone generated by `gens`. Lines are allowed; see [`Cone::is_strongly_convex`].
    pub fn from_generators(gens: &[ExactVector], ambient_rank: usize) -> Result<Cone> {
        check_rank(gens, ambient_rank)?;
        // dual first: its generators are our facet normals and equations
        let dual = dd::generators_of(ambient_rank, gens);
        let mut inequalities = dual.rays.clone();
        for l in &dual.lineality {
            inequalities.push(l.clone());
            inequalities.push(-l);
        }
        let primal = dd::generators_of(ambient_rank, &inequalities);
        Ok(Cone::assemble(ambient_rank, primal, dual))
    }

    /// The cone `{x : <a, x> >= 0 for a in inequalities, <e, x> = 0 for e in equations}`.
    pub fn from_inequalities(
        inequalities: &[ExactVector],
        equations: &[ExactVector],
        ambient_rank: usize,
    ) -> Result<Cone> {
        check_rank(inequalities, ambient_rank)?;
        check_rank(equations, ambient_rank)?;
        let mut all = inequalities.to_vec();
        for e in equations {
            all.push(e.clone());
            all.push(-e);
        }
        let primal = dd::generators_of(ambient_rank, &all);
        let mut gens = primal.rays.clone();
        for l in &primal.lineality {
            gens.push(l.clone());
            gens.push(-l);
        }
        let dual = dd::generators_of(ambient_rank, &gens);
        Ok(Cone::assemble(ambient_rank, primal, dual))
    }

    pub fn zero(ambient_rank: usize) -> Cone {
        Cone::from_generators(&[], ambient_rank).expect("rank checked")
    }

    pub fn full_space(ambient_rank: usize) -> Cone {
        Cone::from_inequalities(&[], &[], ambient_rank).expect("rank checked")
    }

    fn assemble(ambient_rank: usize, primal: dd::Generators, dual: dd::Generators) -> Cone {
        let lineality = exactlin::canonical_basis(&primal.lineality, ambient_rank);
        let equations = exactlin::canonical_basis(&dual.lineality, ambient_rank);
        let rays = canonical_modulo(&primal.rays, &lineality);
        let facets = canonical_modulo(&dual.rays, &equations);
        let dim = ambient_rank - equations.len();
        Cone {
            ambient_rank,
            dim,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme rays (modulo lineality), primitive and sorted.
    pub fn rays(&self) -> &[ExactVector] {
        &self.rays
    }

    /// Basis of the lineality space; empty for strongly convex cones.
    pub fn lineality(&self) -> &[ExactVector] {
        &self.lineality
    }

    /// Inward facet normals, primitive and sorted.
    pub fn facet_normals(&self) -> &[ExactVector] {
        &self.facets
    }

    /// Basis of the orthogonal complement of the linear span.
    pub fn equations(&self) -> &[ExactVector] {
        &self.equations
    }

    /// A full generating set: the rays plus both directions of each lineality vector.
    pub fn generators(&self) -> Vec<ExactVector> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(-l);
        }
        out
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_rank
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn contains(&self, v: &ExactVector) -> bool {
        self.equations.iter().all(|e| e.dot(v).is_zero())
            && self.facets.iter().all(|f| !f.dot(v).is_negative())
    }

    /// Relative-interior membership.
    pub fn contains_in_relative_interior(&self, v: &ExactVector) -> bool {
        self.equations.iter().all(|e| e.dot(v).is_zero())
            && self.facets.iter().all(|f| f.dot(v).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// The dual cone `{m : <m, v> >= 0 for all v in self}`.
    pub fn dual(&self) -> Cone {
        Cone {
            ambient_rank: self.ambient_rank,
            dim: self.ambient_rank - self.lineality.len(),
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(&ineqs, &eqs, self.ambient_rank).expect("same rank")
    }

    /// The smallest face of `self` containing every point of `other`
    /// (which must lie in `self`).
    pub fn smallest_face_containing(&self, other: &Cone) -> Cone {
        let gens = other.generators();
        let tight: Vec<&ExactVector> = self
            .facets
            .iter()
            .filter(|f| gens.iter().all(|g| f.dot(g).is_zero()))
            .collect();
        let mut face_gens: Vec<ExactVector> = self
            .rays
            .iter()
            .filter(|r| tight.iter().all(|f| f.dot(r).is_zero()))
            .cloned()
            .collect();
        for l in &self.lineality {
            face_gens.push(l.clone());
            face_gens.push(-l);
        }
        Cone::from_generators(&face_gens, self.ambient_rank).expect("same rank")
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        if !other.contains_cone(self) {
            return false;
        }
        if !self.lineality.is_empty() || !other.lineality.is_empty() {
            return &other.smallest_face_containing(self) == self;
        }
        let tight: Vec<&ExactVector> = other
            .facets
            .iter()
            .filter(|f| self.rays.iter().all(|g| f.dot(g).is_zero()))
            .collect();
        let face_rays = other
            .rays
            .iter()
            .filter(|r| tight.iter().all(|f| f.dot(r).is_zero()));
        face_rays.eq(self.rays.iter())
    }

    /// The face `tau^perp ∩ self^∨` of the dual cone, for a face `tau` of `self`.
    pub fn dual_face(&self, tau: &Cone) -> Cone {
        let mut eqs = tau.generators();
        eqs.retain(|g| !g.is_zero());
        let dual = self.dual();
        Cone::from_inequalities(dual.facet_normals(), &[dual.equations(), &eqs[..]].concat(), self.ambient_rank)
            .expect("same rank")
    }

    /// Sum of the extreme rays and lineality generators: a lattice point in
    /// the relative interior (the apex for the zero cone).
    pub fn interior_point(&self) -> ExactVector {
        self.generators()
            .iter()
            .fold(ExactVector::zero(self.ambient_rank), |acc, g| &acc + g)
    }

    /// All faces (strongly convex cones only), as sorted ray subsets.
    pub fn face_ray_sets(&self) -> Vec<Vec<usize>> {
        let incidence: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| (0..self.rays.len()).filter(|&i| f.dot(&self.rays[i]).is_zero()).collect())
            .collect();
        let mut faces: Vec<Vec<usize>> = vec![(0..self.rays.len()).collect()];
        let mut frontier = faces.clone();
        while let Some(face) = frontier.pop() {
            for inc in &incidence {
                let sub: Vec<usize> = face.iter().copied().filter(|i| inc.contains(i)).collect();
                if sub.len() < face.len() && !faces.contains(&sub) {
                    faces.push(sub.clone());
                    frontier.push(sub);
                }
            }
        }
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        faces
    }

    /// All faces as cones, lowest dimension first.
    pub fn faces(&self) -> Vec<Cone> {
        let mut out: Vec<Cone> = self
            .face_ray_sets()
            .into_iter()
            .map(|set| {
                let mut gens: Vec<ExactVector> = set.iter().map(|&i| self.rays[i].clone()).collect();
                for l in &self.lineality {
                    gens.push(l.clone());
                    gens.push(-l);
                }
                Cone::from_generators(&gens, self.ambient_rank).expect("same rank")
            })
            .collect();
        out.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.cmp(b)));
        out
    }

    /// Generators linearly independent.
    pub fn is_simplicial(&self) -> bool {
        self.is_strongly_convex() && self.rays.len() == self.dim
    }

    /// Generators part of a lattice basis.
    pub fn is_smooth(&self) -> bool {
        self.is_simplicial()
            && exactlin::extends_to_lattice_basis(&self.rays, self.ambient_rank).unwrap_or(false)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone(")?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

fn check_rank(vectors: &[ExactVector], rank: usize) -> Result<()> {
    match vectors.iter().find(|v| v.ambient_rank() != rank) {
        Some(v) => Err(Error::DimensionMismatch {
            expected: rank,
            found: v.ambient_rank(),
        }),
        None => Ok(()),
    }
}

/// Projects each vector off `subspace` (canonical basis), makes it primitive,
/// and sorts/deduplicates.
fn canonical_modulo(vectors: &[ExactVector], subspace: &[ExactVector]) -> Vec<ExactVector> {
    let orth = exactlin::gram_schmidt(subspace);
    let mut out: Vec<ExactVector> = vectors
        .iter()
        .map(|v| exactlin::project_out(v, &orth))
        .filter(|v| !v.is_zero())
        .map(|v| exactlin::primitive(&v).expect("nonzero"))
        .collect();
    out.sort();
    out.dedup();
    out
}
