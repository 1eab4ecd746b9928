//! Double-description conversion from inequalities to generators.
//!
//! Given `{x : <a_i, x> >= 0}` we build the cone incrementally, one
//! inequality at a time, keeping a basis of the lineality space and a list of
//! extreme rays modulo that space.

use num_traits::{Signed, Zero};

use crate::exactlin::{self, ExactVector, Rational};

/// Generators of a polyhedral cone: `lin(lineality) + cone(rays)`.
#[derive(Clone, Debug)]
pub(crate) struct Generators {
    pub lineality: Vec<ExactVector>,
    pub rays: Vec<ExactVector>,
}

struct Ray {
    vector: ExactVector,
    // indices of processed inequalities tight at this ray
    tight: Vec<usize>,
}

/// Converts an H-representation into generators.
///
/// Rays come back primitive but are not canonicalised against the lineality
/// space; callers project them.
pub(crate) fn generators_of(rank: usize, inequalities: &[ExactVector]) -> Generators {
    let mut lineality: Vec<ExactVector> = (0..rank).map(|i| ExactVector::unit(rank, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed: Vec<ExactVector> = Vec::new();

    for a in inequalities {
        if a.is_zero() {
            continue;
        }
        let idx = processed.len();
        processed.push(a.clone());

        if let Some(pos) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            // a cuts the lineality space: l0 turns into a ray pointing into a >= 0
            let mut l0 = lineality.remove(pos);
            let mut a_l0 = a.dot(&l0);
            if a_l0.is_negative() {
                l0 = -&l0;
                a_l0 = -a_l0;
            }
            lineality = lineality
                .iter()
                .map(|l| {
                    let c = a.dot(l) / &a_l0;
                    if c.is_zero() {
                        l.clone()
                    } else {
                        l - &l0.scale(&c)
                    }
                })
                .collect();
            for r in rays.iter_mut() {
                let c = a.dot(&r.vector) / &a_l0;
                if !c.is_zero() {
                    r.vector = exactlin::primitive(&(&r.vector - &l0.scale(&c)))
                        .expect("ray independent of lineality");
                }
                r.tight.push(idx);
            }
            // the tight sets of the existing rays already include every
            // earlier inequality; l0 is tight on all of them as well
            let tight: Vec<usize> = (0..idx).collect();
            rays.push(Ray {
                vector: exactlin::primitive(&l0).expect("lineality vector is nonzero"),
                tight,
            });
            continue;
        }

        let values: Vec<Rational> = rays.iter().map(|r| a.dot(&r.vector)).collect();
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if negative.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.tight.push(idx);
                }
            }
            continue;
        }

        // two extreme rays are adjacent when no third ray is tight on
        // every constraint they share
        let target = rank - lineality.len();
        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &positive {
            for &n in &negative {
                let common = intersect_sorted(&rays[p].tight, &rays[n].tight);
                if common.len() + 2 < target {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(k, r)| {
                    k != p && k != n && includes_sorted(&r.tight, &common)
                });
                if blocked {
                    continue;
                }
                let combo = &rays[n].vector.scale(&values[p]) - &rays[p].vector.scale(&values[n]);
                let mut tight = common;
                tight.push(idx);
                fresh.push(Ray {
                    vector: exactlin::primitive(&combo).expect("adjacent rays are independent"),
                    tight,
                });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                r.tight.push(idx);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    Generators {
        lineality,
        rays: rays.into_iter().map(|r| r.vector).collect(),
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn includes_sorted(big: &[usize], small: &[usize]) -> bool {
    let mut i = 0;
    for x in small {
        while i < big.len() && big[i] < *x {
            i += 1;
        }
        if i == big.len() || big[i] != *x {
            return false;
        }
        i += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> ExactVector {
        ExactVector::from_ints(x)
    }

    #[test]
    fn orthant() {
        let g = generators_of(2, &[v(&[1, 0]), v(&[0, 1])]);
        assert!(g.lineality.is_empty());
        let mut rays = g.rays;
        rays.sort();
        assert_eq!(rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn half_plane_keeps_a_line() {
        let g = generators_of(2, &[v(&[1, 0])]);
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.rays.len(), 1);
    }

    #[test]
    fn redundant_inequality_is_dropped() {
        let g = generators_of(2, &[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]);
        assert_eq!(g.rays.len(), 2);
    }

    #[test]
    fn square_cone() {
        // cone over the square [-1,1]^2 at height 1
        let ineqs = [v(&[1, 0, 1]), v(&[-1, 0, 1]), v(&[0, 1, 1]), v(&[0, -1, 1])];
        let g = generators_of(3, &ineqs);
        assert!(g.lineality.is_empty());
        let mut rays = g.rays;
        rays.sort();
        assert_eq!(
            rays,
            vec![v(&[-1, -1, 1]), v(&[-1, 1, 1]), v(&[1, -1, 1]), v(&[1, 1, 1])]
        );
    }

    #[test]
    fn contradictory_pair_gives_a_hyperplane() {
        let g = generators_of(2, &[v(&[1, 0]), v(&[-1, 0])]);
        assert_eq!(g.lineality.len(), 1);
        assert!(g.rays.is_empty());
    }
}
