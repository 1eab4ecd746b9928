//! Rational polyhedral fans: construction, completeness, smoothness, star
//! subdivision and the dual face poset.

mod poset;

use std::collections::{BTreeMap, BTreeSet};

pub use poset::FacePoset;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::exactlin::{self, ExactVector};
use crate::polyhedron::Cone;

/// A fan, closed under taking faces.
///
/// Cones are sorted by dimension and then by rays; `ray_sets[i]` lists the
/// indices (into [`Fan::rays`]) of the rays of cone `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient_rank: usize,
    cones: Vec<Cone>,
    rays: Vec<ExactVector>,
    ray_sets: Vec<Vec<usize>>,
    maximal: Vec<usize>,
}

impl Fan {
    /// Checks that the cones pairwise meet in common faces and closes the
    /// collection under faces.
    pub fn new(cones: &[Cone], ambient_rank: usize) -> Result<Fan> {
        Fan::new_with(cones, ambient_rank, Strategy::default())
    }

    pub fn new_with(cones: &[Cone], ambient_rank: usize, strategy: Strategy) -> Result<Fan> {
        for c in cones {
            if c.ambient_rank() != ambient_rank {
                return Err(Error::DimensionMismatch {
                    expected: ambient_rank,
                    found: c.ambient_rank(),
                });
            }
            if !c.is_strongly_convex() {
                return Err(Error::NotStronglyConvex);
            }
        }
        // faces of other inputs need no check of their own
        let outer: Vec<usize> = (0..cones.len())
            .filter(|&i| {
                !(0..cones.len()).any(|j| {
                    j != i
                        && cones[j].dim() > cones[i].dim()
                        && cones[i].is_face_of(&cones[j])
                })
            })
            .collect();
        let pairs: Vec<(usize, usize)> = outer
            .iter()
            .enumerate()
            .flat_map(|(k, &i)| outer[k + 1..].iter().map(move |&j| (i, j)))
            .collect();
        let bad = strategy.map(&pairs, |&(i, j)| {
            let meet = cones[i].intersection(&cones[j]);
            if meet.is_face_of(&cones[i]) && meet.is_face_of(&cones[j]) {
                None
            } else {
                Some(Error::FanOverlap {
                    first: i,
                    second: j,
                    intersection: meet.to_string(),
                })
            }
        });
        if let Some(err) = bad.into_iter().flatten().next() {
            return Err(err);
        }
        Ok(Fan::close(cones, ambient_rank))
    }

    /// The fan generated by cones already known to form a fan.
    fn close(cones: &[Cone], ambient_rank: usize) -> Fan {
        let mut all: BTreeSet<Cone> = BTreeSet::new();
        for c in cones {
            if all.contains(c) {
                continue;
            }
            all.extend(c.faces());
        }
        let cones: Vec<Cone> = all.into_iter().collect();
        let mut rays: Vec<ExactVector> = cones
            .iter()
            .filter(|c| c.dim() == 1)
            .map(|c| c.rays()[0].clone())
            .collect();
        rays.sort();
        let ray_sets: Vec<Vec<usize>> = cones
            .iter()
            .map(|c| {
                c.rays()
                    .iter()
                    .map(|r| rays.binary_search(r).expect("rays of faces are fan rays"))
                    .collect::<BTreeSet<usize>>()
                    .into_iter()
                    .collect()
            })
            .collect();
        let maximal: Vec<usize> = (0..cones.len())
            .filter(|&i| {
                !(0..cones.len())
                    .any(|j| j != i && is_subset(&ray_sets[i], &ray_sets[j]))
            })
            .collect();
        Fan {
            ambient_rank,
            cones,
            rays,
            ray_sets,
            maximal,
        }
    }

    /// The fan consisting of all faces of a single cone.
    pub fn from_cone(cone: &Cone) -> Result<Fan> {
        Fan::new(std::slice::from_ref(cone), cone.ambient_rank())
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// All cones, lowest dimension first.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Primitive ray generators, sorted.
    pub fn rays(&self) -> &[ExactVector] {
        &self.rays
    }

    pub fn ray_set(&self, i: usize) -> &[usize] {
        &self.ray_sets[i]
    }

    pub fn maximal_indices(&self) -> &[usize] {
        &self.maximal
    }

    pub fn maximal_cones(&self) -> Vec<Cone> {
        self.maximal.iter().map(|&i| self.cones[i].clone()).collect()
    }

    pub fn cones_of_dim(&self, d: usize) -> impl Iterator<Item = &Cone> {
        self.cones.iter().filter(move |c| c.dim() == d)
    }

    pub fn index_of(&self, cone: &Cone) -> Option<usize> {
        self.cones.binary_search(cone).ok()
    }

    /// Whether `tau` (index) is a face of `sigma` (index).
    pub fn is_face(&self, tau: usize, sigma: usize) -> bool {
        is_subset(&self.ray_sets[tau], &self.ray_sets[sigma])
    }

    /// Number of cones of each dimension `0..=rank`.
    pub fn face_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.ambient_rank + 1];
        for c in &self.cones {
            counts[c.dim()] += 1;
        }
        counts
    }

    pub fn support_contains(&self, v: &ExactVector) -> bool {
        self.maximal.iter().any(|&i| self.cones[i].contains(v))
    }

    /// The smallest cone containing `v` in its relative interior.
    pub fn carrier(&self, v: &ExactVector) -> Option<usize> {
        (0..self.cones.len()).find(|&i| self.cones[i].contains_in_relative_interior(v))
    }

    /// Every maximal cone is full-dimensional, every codimension-one cone
    /// lies in exactly two of them, and they are connected through those
    /// walls.
    pub fn is_complete(&self) -> bool {
        let n = self.ambient_rank;
        if self.cones.is_empty() || n == 0 {
            return !self.cones.is_empty();
        }
        if self.maximal.iter().any(|&i| self.cones[i].dim() != n) {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.maximal.len()).collect();
        for (w, wall) in self.cones.iter().enumerate() {
            if wall.dim() + 1 != n {
                continue;
            }
            let around: Vec<usize> = (0..self.maximal.len())
                .filter(|&k| self.is_face(w, self.maximal[k]))
                .collect();
            if around.len() != 2 {
                return false;
            }
            let (a, b) = (find(&mut parent, around[0]), find(&mut parent, around[1]));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..self.maximal.len()).all(|k| find(&mut parent, k) == root)
    }

    pub fn is_simplicial(&self) -> bool {
        self.maximal.iter().all(|&i| self.cones[i].is_simplicial())
    }

    pub fn is_smooth(&self) -> bool {
        self.maximal.iter().all(|&i| self.cones[i].is_smooth())
    }

    /// Every cone of `self` lies in a cone of `coarser`, and both fans have
    /// the same support.
    pub fn refines(&self, coarser: &Fan) -> bool {
        if self.ambient_rank != coarser.ambient_rank {
            return false;
        }
        let inside = self.maximal.iter().all(|&i| {
            coarser
                .maximal
                .iter()
                .any(|&j| coarser.cones[j].contains_cone(&self.cones[i]))
        });
        inside && self.same_support_as(coarser)
    }

    // each maximal cone of the coarser fan is tiled by the finer cones inside it
    fn same_support_as(&self, coarser: &Fan) -> bool {
        coarser.maximal.iter().all(|&j| {
            let c = &coarser.cones[j];
            let inner: Vec<&Cone> = self
                .maximal
                .iter()
                .map(|&i| &self.cones[i])
                .filter(|s| c.contains_cone(s) && s.dim() == c.dim())
                .collect();
            if inner.is_empty() {
                return false;
            }
            // every wall of an inner cone that is not on the boundary of c
            // must be shared by two inner cones
            let mut walls: BTreeMap<Cone, usize> = BTreeMap::new();
            for s in &inner {
                for f in s.faces().into_iter().filter(|f| f.dim() + 1 == s.dim()) {
                    *walls.entry(f).or_default() += 1;
                }
            }
            walls.iter().all(|(wall, &count)| {
                let on_boundary = c
                    .faces()
                    .iter()
                    .filter(|g| g.dim() + 1 == c.dim())
                    .any(|g| g.contains_cone(wall));
                if on_boundary {
                    count == 1
                } else {
                    count == 2
                }
            })
        })
    }

    /// Star subdivision at the primitive vector along `ray`.
    ///
    /// Cones not containing the ray are kept; every cone `sigma` containing
    /// it is replaced by the joins `cone(tau, ray)` over faces `tau` of `sigma`
    /// that miss the ray. At an existing ray of a non-simplicial cone this
    /// triangulates the cone by pulling that ray.
    pub fn star_subdivide(&self, ray: &ExactVector) -> Result<Fan> {
        if ray.ambient_rank() != self.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                found: ray.ambient_rank(),
            });
        }
        let rho = exactlin::primitive(ray)?;
        if !self.support_contains(&rho) {
            return Err(Error::RayOutsideSupport(rho.to_string()));
        }
        let containing: Vec<usize> = (0..self.cones.len())
            .filter(|&i| self.cones[i].contains(&rho))
            .collect();
        let mut out: Vec<Cone> = Vec::new();
        for (i, tau) in self.cones.iter().enumerate() {
            if tau.contains(&rho) {
                continue;
            }
            out.push(tau.clone());
            if containing.iter().any(|&s| self.is_face(i, s)) {
                let mut gens = tau.rays().to_vec();
                gens.push(rho.clone());
                out.push(Cone::from_generators(&gens, self.ambient_rank)?);
            }
        }
        if out.is_empty() {
            out.push(Cone::from_generators(&[rho], self.ambient_rank)?);
        }
        let out = maximal_only(out);
        let fan = Fan::new(&out, self.ambient_rank)?;
        Ok(fan)
    }

    /// Pulls existing rays in lexicographic order until every cone is
    /// simplicial. Introduces no new rays and refines `self`.
    pub fn simplicialize(&self) -> Result<Fan> {
        let mut fan = self.clone();
        let mut passes = 0;
        while !fan.is_simplicial() {
            let before = fan.clone();
            for ray in self.rays.iter() {
                let offending = fan.maximal.iter().any(|&i| {
                    let c = &fan.cones[i];
                    !c.is_simplicial() && c.rays().contains(ray)
                });
                if offending {
                    fan = fan.star_subdivide(ray)?;
                }
                if fan.is_simplicial() {
                    break;
                }
            }
            passes += 1;
            if fan == before || passes > self.rays.len() + 1 {
                return Err(Error::Invariant(
                    "pulling the existing rays did not triangulate the fan".into(),
                ));
            }
        }
        Ok(fan)
    }

    /// The poset of faces of the dual polyhedral complex: a cone of
    /// dimension `k` becomes a face of dimension `n - k`, ordered by reverse
    /// inclusion, with an empty face of dimension -1 added at the bottom.
    pub fn dual_face_poset(&self) -> Result<FacePoset> {
        if !self.is_complete() {
            return Err(Error::NotComplete);
        }
        let n = self.ambient_rank as isize;
        let m = self.cones.len();
        // element 0 is the empty face; element k+1 is cone k
        let mut dims = vec![-1];
        dims.extend(self.cones.iter().map(|c| n - c.dim() as isize));
        let mut below: Vec<Vec<usize>> = vec![Vec::new()];
        for i in 0..m {
            let mut b = vec![0];
            b.extend((0..m).filter(|&j| j != i && self.is_face(i, j)).map(|j| j + 1));
            below.push(b);
        }
        FacePoset::new(dims, below)
    }
}

impl Fan {
    /// The cones ordered by inclusion: a cone of dimension `k` becomes a face
    /// of dimension `k - 1`, the zero cone is the empty face, and a maximum
    /// of dimension `n` is added. For a complete fan this is the face lattice
    /// of a polytope whose face fan is the fan, the poset whose h-polynomial
    /// gives the intersection cohomology.
    pub fn cone_poset(&self) -> Result<FacePoset> {
        if !self.is_complete() {
            return Err(Error::NotComplete);
        }
        let m = self.cones.len();
        let mut dims: Vec<isize> = self.cones.iter().map(|c| c.dim() as isize - 1).collect();
        dims.push(self.ambient_rank as isize);
        let mut below: Vec<Vec<usize>> = (0..m)
            .map(|i| (0..m).filter(|&j| j != i && self.is_face(j, i)).collect())
            .collect();
        below.push((0..m).collect());
        FacePoset::new(dims, below)
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn maximal_only(mut cones: Vec<Cone>) -> Vec<Cone> {
    cones.sort();
    cones.dedup();
    let keep: Vec<bool> = (0..cones.len())
        .map(|i| {
            !(0..cones.len()).any(|j| {
                j != i && cones[j].dim() > cones[i].dim() && cones[j].contains_cone(&cones[i])
            })
        })
        .collect();
    cones
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

/// Builds a fan from generator lists.
pub fn build_fan(generators: &[Vec<ExactVector>], ambient_rank: usize) -> Result<Fan> {
    let cones = generators
        .iter()
        .map(|g| Cone::from_generators(g, ambient_rank))
        .collect::<Result<Vec<_>>>()?;
    Fan::new(&cones, ambient_rank)
}

pub fn star_subdivide(fan: &Fan, ray: &ExactVector) -> Result<Fan> {
    fan.star_subdivide(ray)
}

pub fn simplicialize(fan: &Fan) -> Result<Fan> {
    fan.simplicialize()
}

pub fn dual_face_poset(fan: &Fan) -> Result<FacePoset> {
    fan.dual_face_poset()
}

pub fn cone_poset(fan: &Fan) -> Result<FacePoset> {
    fan.cone_poset()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> ExactVector {
        ExactVector::from_ints(x)
    }

    fn fan(gens: &[&[&[i64]]], n: usize) -> Result<Fan> {
        let g: Vec<Vec<ExactVector>> = gens
            .iter()
            .map(|c| c.iter().map(|r| v(r)).collect())
            .collect();
        build_fan(&g, n)
    }

    fn projective_plane() -> Fan {
        fan(
            &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[-1, -1]], &[&[-1, -1], &[1, 0]]],
            2,
        )
        .unwrap()
    }

    #[test]
    fn overlap_is_reported() {
        let err = fan(&[&[&[1, 0], &[1, 2]], &[&[1, 1], &[0, 1]]], 2).unwrap_err();
        match err {
            Error::FanOverlap { first, second, .. } => assert_eq!((first, second), (0, 1)),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn three_cone_fan() {
        let f = projective_plane();
        assert_eq!(f.face_counts(), vec![1, 3, 3]);
        assert!(f.is_complete());
        assert!(f.is_smooth());
        let p = f.dual_face_poset().unwrap();
        assert_eq!(p.face_counts(), vec![1, 3, 3, 1]);
        assert!(p.is_eulerian());
    }

    #[test]
    fn incomplete_fans() {
        let f = fan(&[&[&[1, 0], &[0, 1]]], 2).unwrap();
        assert!(!f.is_complete());
        assert!(matches!(f.dual_face_poset(), Err(Error::NotComplete)));
        // a half-plane made of two quadrants is not complete either
        let f = fan(&[&[&[1, 0], &[0, 1]], &[&[0, 1], &[-1, 0]]], 2).unwrap();
        assert!(!f.is_complete());
    }

    #[test]
    fn quadrilateral_dual_poset() {
        let f = fan(
            &[
                &[&[1, 0], &[0, 1]],
                &[&[0, 1], &[-1, 0]],
                &[&[-1, 0], &[0, -1]],
                &[&[0, -1], &[1, 0]],
            ],
            2,
        )
        .unwrap();
        let p = f.dual_face_poset().unwrap();
        assert_eq!(p.face_counts(), vec![1, 4, 4, 1]);
    }

    #[test]
    fn star_subdivision_new_ray() {
        let f = fan(&[&[&[1, 0], &[1, 2]]], 2).unwrap();
        assert!(!f.is_smooth());
        let g = f.star_subdivide(&v(&[1, 1])).unwrap();
        assert_eq!(g.maximal_cones().len(), 2);
        assert!(g.is_smooth());
        assert!(g.refines(&f));
    }

    #[test]
    fn star_at_existing_ray() {
        let f = projective_plane();
        let g = f.star_subdivide(&v(&[1, 0])).unwrap();
        assert_eq!(g, f);
        let square = fan(&[&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]], 3).unwrap();
        let pulled = square.star_subdivide(&v(&[1, 0, 1])).unwrap();
        assert_eq!(pulled.maximal_cones().len(), 2);
        let centred = square.star_subdivide(&v(&[0, 0, 1])).unwrap();
        assert_eq!(centred.maximal_cones().len(), 4);
    }

    #[test]
    fn star_outside_support() {
        let f = fan(&[&[&[1, 0], &[0, 1]]], 2).unwrap();
        assert!(matches!(
            f.star_subdivide(&v(&[-1, 0])),
            Err(Error::RayOutsideSupport(_))
        ));
    }

    #[test]
    fn simplicialize_square_pyramid_fan() {
        let square = fan(&[&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]], 3).unwrap();
        let s = square.simplicialize().unwrap();
        assert!(s.is_simplicial());
        assert_eq!(s.rays(), square.rays());
        assert!(s.refines(&square));
    }
}
