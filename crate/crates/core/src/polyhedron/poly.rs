use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{self, ExactVector, Rational};

use super::cone::Cone;

/// A sigma-polyhedron `conv(vertices) + tail` with strongly convex tail.
///
/// Internally the polyhedron is carried by its homogenisation, the cone over
/// `P x {1}` in one more dimension; tail rays sit at height zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polyhedron {
    vertices: Vec<ExactVector>,
    tail: Cone,
    homogenized: Cone,
}

/// One face of a polyhedron. The empty face has dimension -1 and no data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRecord {
    pub id: usize,
    pub dim: isize,
    /// Faces covering this one (one dimension higher).
    pub parent_ids: Vec<usize>,
    pub vertices: Vec<ExactVector>,
    /// Tail rays of the face's recession cone.
    pub rays: Vec<ExactVector>,
}

impl FaceRecord {
    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }
}

/// Verdict of [`common_face_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Overlap {
    Disjoint,
    CommonFace(Polyhedron),
    Violation(Polyhedron),
}

impl Polyhedron {
    /// `conv(points) + tail`.
    pub fn new(points: &[ExactVector], tail: &Cone) -> Result<Polyhedron> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if !tail.is_strongly_convex() {
            return Err(Error::NotStronglyConvex);
        }
        let rank = tail.ambient_rank();
        let mut gens = Vec::with_capacity(points.len() + tail.rays().len());
        for p in points {
            if p.ambient_rank() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: p.ambient_rank(),
                });
            }
            gens.push(p.extended(Rational::one()));
        }
        for r in tail.rays() {
            gens.push(r.extended(Rational::zero()));
        }
        let homogenized = Cone::from_generators(&gens, rank + 1)?;
        Ok(Polyhedron::from_homogenized(homogenized)?.expect("points were given"))
    }

    /// `{0} + sigma`.
    pub fn from_cone(tail: &Cone) -> Result<Polyhedron> {
        Polyhedron::new(&[ExactVector::zero(tail.ambient_rank())], tail)
    }

    /// Recovers the polyhedron from a cone in the upper half-space; `None`
    /// when the cone has no point at positive height (empty polyhedron).
    pub fn from_homogenized(homogenized: Cone) -> Result<Option<Polyhedron>> {
        if !homogenized.is_strongly_convex() {
            return Err(Error::NotStronglyConvex);
        }
        let rank = homogenized.ambient_rank() - 1;
        let mut vertices = Vec::new();
        let mut tail_rays = Vec::new();
        for r in homogenized.rays() {
            let h = r.last();
            if h.is_positive() {
                vertices.push(r.truncated().scale(&h.recip()));
            } else if h.is_zero() {
                tail_rays.push(r.truncated());
            } else {
                return Err(Error::Precondition(format!(
                    "homogenized cone has a ray {r} below height zero"
                )));
            }
        }
        if vertices.is_empty() {
            return Ok(None);
        }
        vertices.sort();
        let tail = Cone::from_generators(&tail_rays, rank)?;
        Ok(Some(Polyhedron {
            vertices,
            tail,
            homogenized,
        }))
    }

    pub fn point(p: &ExactVector) -> Polyhedron {
        Polyhedron::new(std::slice::from_ref(p), &Cone::zero(p.ambient_rank())).expect("valid point")
    }

    pub fn ambient_rank(&self) -> usize {
        self.tail.ambient_rank()
    }

    pub fn vertices(&self) -> &[ExactVector] {
        &self.vertices
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    /// The cone over `P x {1}` in rank + 1.
    pub fn homogenized(&self) -> &Cone {
        &self.homogenized
    }

    pub fn dim(&self) -> usize {
        self.homogenized.dim() - 1
    }

    pub fn is_bounded(&self) -> bool {
        self.tail.is_zero()
    }

    /// True when the polyhedron is exactly its tail cone.
    pub fn is_tail_cone(&self) -> bool {
        self.vertices.len() == 1 && self.vertices[0].is_zero()
    }

    pub fn contains(&self, v: &ExactVector) -> bool {
        self.homogenized.contains(&v.extended(Rational::one()))
    }

    /// Inequalities `<a, x> >= b`, one per facet, as pairs `(a, b)`.
    pub fn inequalities(&self) -> Vec<(ExactVector, Rational)> {
        let rank = self.ambient_rank();
        self.homogenized
            .facet_normals()
            .iter()
            .filter(|f| !f.truncated().is_zero())
            .map(|f| (f.truncated(), -f.get(rank).clone()))
            .collect()
    }

    /// `min <m, x>` over the polyhedron, or `None` when unbounded below.
    pub fn minimize(&self, m: &ExactVector) -> Option<Rational> {
        if !self.tail.dual().contains(m) {
            return None;
        }
        self.vertices.iter().map(|v| m.dot(v)).min()
    }

    pub fn intersection(&self, other: &Polyhedron) -> Option<Polyhedron> {
        let meet = self.homogenized.intersection(&other.homogenized);
        Polyhedron::from_homogenized(meet).expect("intersection of pointed cones is pointed")
    }

    pub fn is_face_of(&self, other: &Polyhedron) -> bool {
        self.homogenized.is_face_of(&other.homogenized)
    }

    /// Minkowski sum of two polyhedra.
    pub fn minkowski_add(&self, other: &Polyhedron) -> Polyhedron {
        let mut points = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                points.push(a + b);
            }
        }
        let mut tail_gens = self.tail.rays().to_vec();
        tail_gens.extend(other.tail.rays().iter().cloned());
        let tail = Cone::from_generators(&tail_gens, self.ambient_rank()).expect("same rank");
        Polyhedron::new(&points, &tail).expect("sum of sigma-polyhedra")
    }

    /// Normal cone at a face intersected with the dual of the tail:
    /// `{m in tail^∨ : <m, v' - v> >= 0 for v' in P, v in face}`.
    pub fn lambda_face_cone(&self, face: &Polyhedron) -> Result<Cone> {
        if !face.is_face_of(self) {
            return Err(Error::NotAFace);
        }
        let mut gens: Vec<ExactVector> = Vec::new();
        for v in face.vertices() {
            for w in &self.vertices {
                if w != v {
                    gens.push(w - v);
                }
            }
        }
        gens.extend(self.tail.rays().iter().cloned());
        gens.extend(face.tail().rays().iter().map(|r| -r));
        Ok(Cone::from_generators(&gens, self.ambient_rank())?.dual())
    }

    /// Weight cone at a vertex.
    pub fn lambda_cone(&self, vertex: &ExactVector) -> Result<Cone> {
        if !self.vertices.contains(vertex) {
            return Err(Error::NotAVertex(vertex.to_string()));
        }
        self.lambda_face_cone(&Polyhedron::point(vertex))
    }

    /// All non-empty faces as polyhedra, lowest dimension first.
    pub fn faces(&self) -> Vec<Polyhedron> {
        self.homogenized
            .faces()
            .into_iter()
            .filter_map(|c| Polyhedron::from_homogenized(c).expect("faces of a pointed cone"))
            .collect()
    }

    /// The full face lattice, empty face first, graded by dimension.
    pub fn face_lattice(&self) -> Vec<FaceRecord> {
        let rays = self.homogenized.rays();
        let rank = self.ambient_rank();
        let mut faces: Vec<(Vec<usize>, FaceRecord)> = Vec::new();
        for set in self.homogenized.face_ray_sets() {
            if !set.iter().any(|&i| rays[i].get(rank).is_positive()) {
                continue;
            }
            let mut vertices = Vec::new();
            let mut tail_rays = Vec::new();
            for &i in &set {
                let r = &rays[i];
                if r.get(rank).is_positive() {
                    vertices.push(r.truncated().scale(&r.get(rank).recip()));
                } else {
                    tail_rays.push(r.truncated());
                }
            }
            vertices.sort();
            tail_rays.sort();
            let gens: Vec<ExactVector> = set.iter().map(|&i| rays[i].clone()).collect();
            let dim = exactlin::rank_of(&gens, rank + 1) as isize - 1;
            faces.push((
                set,
                FaceRecord {
                    id: 0,
                    dim,
                    parent_ids: Vec::new(),
                    vertices,
                    rays: tail_rays,
                },
            ));
        }
        faces.push((
            Vec::new(),
            FaceRecord {
                id: 0,
                dim: -1,
                parent_ids: Vec::new(),
                vertices: Vec::new(),
                rays: Vec::new(),
            },
        ));
        faces.sort_by(|(_, a), (_, b)| {
            a.dim
                .cmp(&b.dim)
                .then_with(|| a.vertices.cmp(&b.vertices))
                .then_with(|| a.rays.cmp(&b.rays))
        });
        let sets: Vec<Vec<usize>> = faces.iter().map(|(s, _)| s.clone()).collect();
        let mut records: Vec<FaceRecord> = faces.into_iter().map(|(_, f)| f).collect();
        let dims: Vec<isize> = records.iter().map(|f| f.dim).collect();
        for (i, rec) in records.iter_mut().enumerate() {
            rec.id = i;
            rec.parent_ids = (0..sets.len())
                .filter(|&j| {
                    dims[j] == dims[i] + 1 && sets[i].iter().all(|x| sets[j].contains(x))
                })
                .collect();
        }
        records
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")?;
        if !self.tail.is_zero() {
            write!(f, " + {}", self.tail)?;
        }
        Ok(())
    }
}

/// `conv(points) + sigma`, with redundant points pruned.
pub fn minkowski_sum(points: &[ExactVector], sigma: &Cone) -> Result<Polyhedron> {
    Polyhedron::new(points, sigma)
}

pub fn face_lattice(p: &Polyhedron) -> Vec<FaceRecord> {
    p.face_lattice()
}

/// Faces of a strongly convex cone seen as the polyhedron `{0} + sigma`.
pub fn cone_face_lattice(sigma: &Cone) -> Result<Vec<FaceRecord>> {
    Ok(Polyhedron::from_cone(sigma)?.face_lattice())
}

pub fn lambda_cone(p: &Polyhedron, vertex: &ExactVector) -> Result<Cone> {
    p.lambda_cone(vertex)
}

/// Decides whether two polyhedra are disjoint, meet in a common face, or overlap badly.
pub fn common_face_check(p1: &Polyhedron, p2: &Polyhedron) -> Result<Overlap> {
    if p1.ambient_rank() != p2.ambient_rank() {
        return Err(Error::DimensionMismatch {
            expected: p1.ambient_rank(),
            found: p2.ambient_rank(),
        });
    }
    Ok(match p1.intersection(p2) {
        None => Overlap::Disjoint,
        Some(meet) if meet.is_face_of(p1) && meet.is_face_of(p2) => Overlap::CommonFace(meet),
        Some(meet) => Overlap::Violation(meet),
    })
}
