#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tvariety::divisorial::{
    self, glue_example1, toric_downgrade, trivial_fan, Curve, DivisorialFan, PolyhedralDivisor,
};
use tvariety::exactlin::{rat, ratio, ExactVector};
use tvariety::fan::Fan;
use tvariety::hpoly::IntPolynomial;
use tvariety::polyhedron::{Cone, Polyhedron};

pub fn v(x: &[i64]) -> ExactVector {
    ExactVector::from_ints(x)
}

pub fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::new(c.to_vec())
}

pub fn cone(gens: &[&[i64]]) -> Cone {
    let n = gens.first().map(|g| g.len()).unwrap_or(1);
    let g: Vec<ExactVector> = gens.iter().map(|x| v(x)).collect();
    Cone::from_generators(&g, n).unwrap()
}

pub fn fan_of(gens: &[&[&[i64]]], n: usize) -> Fan {
    let cones: Vec<Cone> = gens
        .iter()
        .map(|c| Cone::from_generators(&c.iter().map(|x| v(x)).collect::<Vec<_>>(), n).unwrap())
        .collect();
    Fan::new(&cones, n).unwrap()
}

pub fn fan_from_rays(rays: &[Vec<i64>], cones: &[Vec<usize>]) -> Fan {
    let n = rays[0].len();
    let cs: Vec<Cone> = cones
        .iter()
        .map(|c| {
            let g: Vec<ExactVector> = c.iter().map(|&i| v(&rays[i])).collect();
            Cone::from_generators(&g, n).unwrap()
        })
        .collect();
    Fan::new(&cs, n).unwrap()
}

pub fn projective_line() -> Fan {
    fan_of(&[&[&[1]], &[&[-1]]], 1)
}

pub fn projective_plane() -> Fan {
    fan_of(&[&[&[1, 0], &[0, 1]], &[&[0, 1], &[-1, -1]], &[&[-1, -1], &[1, 0]]], 2)
}

pub fn product_of_lines() -> Fan {
    fan_of(
        &[
            &[&[1, 0], &[0, 1]],
            &[&[0, 1], &[-1, 0]],
            &[&[-1, 0], &[0, -1]],
            &[&[0, -1], &[1, 0]],
        ],
        2,
    )
}

pub fn hirzebruch(a: i64) -> Fan {
    fan_of(
        &[
            &[&[1, 0], &[0, 1]],
            &[&[0, 1], &[-1, a]],
            &[&[-1, a], &[0, -1]],
            &[&[0, -1], &[1, 0]],
        ],
        2,
    )
}

/// The eight orthants of rank 3; its dual poset is the cube.
pub fn cube_dual() -> Fan {
    let mut cones = Vec::new();
    for sx in [1, -1] {
        for sy in [1, -1] {
            for sz in [1, -1] {
                cones.push(vec![vec![sx, 0, 0], vec![0, sy, 0], vec![0, 0, sz]]);
            }
        }
    }
    let cs: Vec<Cone> = cones
        .iter()
        .map(|c| Cone::from_generators(&c.iter().map(|x| v(x)).collect::<Vec<_>>(), 3).unwrap())
        .collect();
    Fan::new(&cs, 3).unwrap()
}

pub fn projective_space3() -> Fan {
    let rays = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]];
    let cones: Vec<Vec<usize>> = (0..4)
        .map(|skip| (0..4).filter(|&i| i != skip).collect())
        .collect();
    fan_from_rays(&rays, &cones)
}

/// Face fan of a square pyramid around the origin; its dual poset is
/// again a square pyramid.
pub fn square_pyramid_fan() -> Fan {
    let base = [[1, 1, -1], [1, -1, -1], [-1, -1, -1], [-1, 1, -1]];
    let mut cones = vec![base.iter().map(|b| v(b)).collect::<Vec<_>>()];
    for i in 0..4 {
        cones.push(vec![v(&base[i]), v(&base[(i + 1) % 4]), v(&[0, 0, 1])]);
    }
    let cs: Vec<Cone> = cones
        .iter()
        .map(|g| Cone::from_generators(g, 3).unwrap())
        .collect();
    Fan::new(&cs, 3).unwrap()
}

/// `f x {Q>=0, Q<=0}` in one more dimension.
pub fn product_with_line(f: &Fan) -> Fan {
    let n = f.ambient_rank();
    let up = v(&{
        let mut e = vec![0; n + 1];
        e[n] = 1;
        e
    });
    let down = -&up;
    let mut cones = Vec::new();
    for &i in f.maximal_indices() {
        let c = &f.cones()[i];
        for dir in [&up, &down] {
            let mut g: Vec<ExactVector> = c
                .rays()
                .iter()
                .map(|r| r.extended(rat(0)))
                .collect();
            g.push(dir.clone());
            cones.push(Cone::from_generators(&g, n + 1).unwrap());
        }
    }
    Fan::new(&cones, n + 1).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn primitive_ints(x: &[i64]) -> Vec<i64> {
    let g = x.iter().fold(0, |acc, &c| gcd(acc, c));
    x.iter().map(|c| c / g).collect()
}

/// Random complete simplicial fan in rank 2: rays sorted by angle with
/// every gap below a half-turn.
pub fn random_fan_rank2(rng: &mut ChaCha8Rng) -> Fan {
    loop {
        let k = rng.gen_range(3..=7);
        let mut rays: Vec<Vec<i64>> = Vec::new();
        for _ in 0..k {
            let x: Vec<i64> = vec![rng.gen_range(-4..=4), rng.gen_range(-4..=4)];
            if x == [0, 0] {
                continue;
            }
            let p = primitive_ints(&x);
            if !rays.contains(&p) {
                rays.push(p);
            }
        }
        if rays.len() < 3 {
            continue;
        }
        rays.sort_by(|a, b| {
            let ta = (a[1] as f64).atan2(a[0] as f64);
            let tb = (b[1] as f64).atan2(b[0] as f64);
            ta.partial_cmp(&tb).unwrap()
        });
        let m = rays.len();
        let ok = (0..m).all(|i| {
            let a = &rays[i];
            let b = &rays[(i + 1) % m];
            a[0] * b[1] - a[1] * b[0] > 0
        });
        if !ok {
            continue;
        }
        let cones: Vec<Vec<usize>> = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
        return fan_from_rays(&rays, &cones);
    }
}

/// Face fan of the convex hull of random lattice points with the origin
/// in the interior, possibly non-simplicial.
pub fn random_face_fan_rank3(rng: &mut ChaCha8Rng) -> Fan {
    loop {
        let k = rng.gen_range(5..=8);
        let pts: Vec<ExactVector> = (0..k)
            .map(|_| v(&[rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2)]))
            .filter(|p| !p.is_zero())
            .collect();
        if pts.len() < 4 {
            continue;
        }
        let hull = Polyhedron::new(&pts, &Cone::zero(3)).unwrap();
        if hull.dim() != 3 {
            continue;
        }
        let interior = hull
            .inequalities()
            .iter()
            .all(|(_, b)| *b < rat(0));
        if !interior {
            continue;
        }
        let cones: Vec<Cone> = hull
            .face_lattice()
            .iter()
            .filter(|f| f.dim == 2)
            .map(|f| Cone::from_generators(&f.vertices, 3).unwrap())
            .collect();
        return Fan::new(&cones, 3).unwrap();
    }
}

/// A random complete simplicial fan of rank 1, 2 or 3.
pub fn random_simplicial_fan(rng: &mut ChaCha8Rng) -> Fan {
    match rng.gen_range(0..4) {
        0 => projective_line(),
        1 => random_fan_rank2(rng),
        _ => random_face_fan_rank3(rng).simplicialize().unwrap(),
    }
}

/// A random complete fan of rank 2 or 3, not necessarily simplicial.
pub fn random_fan(rng: &mut ChaCha8Rng) -> Fan {
    if rng.gen_bool(0.4) {
        random_fan_rank2(rng)
    } else {
        random_face_fan_rank3(rng)
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<i64> {
    loop {
        let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if x.iter().any(|&c| c != 0) {
            return primitive_ints(&x);
        }
    }
}

/// Star subdivisions of `T x P^1` at random vectors whose last coordinate
/// has the requested sign pattern; the level-zero hyperplane stays a union
/// of cones.
pub fn random_slice_fan(rng: &mut ChaCha8Rng, tail: &Fan, upper_only: bool, steps: usize) -> Fan {
    let n = tail.ambient_rank() + 1;
    let mut f = product_with_line(tail);
    for _ in 0..steps {
        let mut x = random_vector(rng, n, 3);
        if upper_only {
            if x[n - 1] == 0 {
                x[n - 1] = 1;
            }
            x[n - 1] = x[n - 1].abs();
            x = primitive_ints(&x);
        }
        if let Ok(g) = f.star_subdivide(&v(&x)) {
            f = g;
        }
    }
    f
}

/// A small random complete fan to serve as the tail: rank 1 or 2.
pub fn random_tail(rng: &mut ChaCha8Rng) -> Fan {
    if rng.gen_bool(0.3) {
        projective_line()
    } else {
        random_fan_rank2(rng)
    }
}

/// An input in the shape of the single-special-fibre example.
pub fn random_single_fibre(rng: &mut ChaCha8Rng, simplicial: bool) -> (DivisorialFan, Fan) {
    let tail = if simplicial || rng.gen_bool(0.5) {
        random_tail(rng)
    } else {
        product_of_lines()
    };
    let steps = rng.gen_range(1..=3);
    let mut slice = random_slice_fan(rng, &tail, true, steps);
    if simplicial {
        slice = slice.simplicialize().unwrap();
    }
    let e = glue_example1(0, &[("0".to_string(), slice.clone())])
        .unwrap()
        .with_projective(true);
    (e, slice)
}

/// A smooth input in the shape of the single-special-fibre example:
/// blow-ups of `T x P^1` at sums of rays of smooth upper cones.
pub fn random_smooth_single_fibre(rng: &mut ChaCha8Rng) -> (DivisorialFan, Fan) {
    let tail = match rng.gen_range(0..3) {
        0 => projective_line(),
        1 => projective_plane(),
        _ => hirzebruch(rng.gen_range(0..3)),
    };
    let mut f = product_with_line(&tail);
    let n = f.ambient_rank();
    for _ in 0..rng.gen_range(1..=3) {
        let upper: Vec<&Cone> = f
            .cones()
            .iter()
            .filter(|c| c.dim() >= 2 && c.rays().iter().any(|r| r.last() > &ratio(0, 1)))
            .filter(|c| c.rays().iter().all(|r| r.last() >= &ratio(0, 1)))
            .collect();
        let c = upper.choose(rng).unwrap();
        let sum = c.rays().iter().fold(ExactVector::zero(n), |acc, r| &acc + r);
        f = f.star_subdivide(&sum).unwrap();
    }
    assert!(f.is_smooth());
    let e = glue_example1(0, &[("0".to_string(), f.clone())])
        .unwrap()
        .with_projective(true);
    (e, f)
}

/// A random contraction-free input with one or more special fibres and
/// arbitrary genus.
pub fn random_contraction_free(rng: &mut ChaCha8Rng, genus: u32, simplicial: bool) -> DivisorialFan {
    let tail = random_tail(rng);
    let k = rng.gen_range(1..=3);
    let slices: Vec<(String, Fan)> = (0..k)
        .map(|i| {
            let steps = rng.gen_range(1..=2);
            let mut f = random_slice_fan(rng, &tail, true, steps);
            if simplicial {
                f = f.simplicialize().unwrap();
            }
            (format!("p{i}"), f)
        })
        .collect();
    glue_example1(genus, &slices).unwrap().with_projective(true)
}

/// Downgrade of `T x P^1` subdivided on both sides: special fibres over
/// `0` and `inf`.
pub fn random_two_sided(rng: &mut ChaCha8Rng) -> (DivisorialFan, Fan) {
    let tail = random_tail(rng);
    let mut f = product_with_line(&tail);
    let n = f.ambient_rank();
    for _ in 0..rng.gen_range(1..=3) {
        let mut x = random_vector(rng, n, 3);
        if x[n - 1] == 0 {
            x[n - 1] = if rng.gen_bool(0.5) { 1 } else { -1 };
        }
        if let Ok(g) = f.star_subdivide(&v(&primitive_ints(&x))) {
            f = g;
        }
    }
    let e = toric_downgrade(&f).unwrap().with_projective(true);
    (e, f)
}

fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..rng.gen_range(1..=4) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            m.swap(0, i);
            continue;
        }
        let c = rng.gen_range(-1..=1);
        for k in 0..n {
            m[i][k] += c * m[j][k];
        }
    }
    m
}

fn apply(m: &[Vec<i64>], x: &ExactVector) -> ExactVector {
    let xs = x.to_bigints().unwrap();
    let out: Vec<i64> = m
        .iter()
        .map(|row| {
            row.iter()
                .zip(&xs)
                .map(|(a, b)| a * i64::try_from(b.clone()).unwrap())
                .sum()
        })
        .collect();
    v(&out)
}

pub fn transform(f: &Fan, m: &[Vec<i64>]) -> Fan {
    let n = f.ambient_rank();
    let cones: Vec<Cone> = f
        .maximal_cones()
        .iter()
        .map(|c| {
            let g: Vec<ExactVector> = c.rays().iter().map(|r| apply(m, r)).collect();
            Cone::from_generators(&g, n).unwrap()
        })
        .collect();
    Fan::new(&cones, n).unwrap()
}

/// A smooth complete fan of rank 2 or 3 made by blowing up standard ones.
pub fn random_smooth_fan(rng: &mut ChaCha8Rng) -> Fan {
    let mut f = match rng.gen_range(0..5) {
        0 => projective_plane(),
        1 => product_of_lines(),
        2 => hirzebruch(rng.gen_range(1..3)),
        3 => projective_space3(),
        _ => cube_dual(),
    };
    let n = f.ambient_rank();
    for _ in 0..rng.gen_range(0..=2) {
        let candidates: Vec<Cone> = f.cones().iter().filter(|c| c.dim() >= 2).cloned().collect();
        let c = candidates.choose(rng).unwrap();
        let sum = c.rays().iter().fold(ExactVector::zero(n), |acc, r| &acc + r);
        f = f.star_subdivide(&sum).unwrap();
    }
    assert!(f.is_smooth());
    f
}

/// Downgrade of a random smooth fan along a random lattice direction.
pub fn random_downgrade(rng: &mut ChaCha8Rng) -> (DivisorialFan, Fan) {
    let f = random_smooth_fan(rng);
    let m = unimodular(rng, f.ambient_rank());
    let g = transform(&f, &m);
    let e = toric_downgrade(&g)
        .unwrap()
        .with_projective(true)
        .with_smooth(Some(true));
    (e, g)
}

/// The worked rank-one surface: special coefficients `[1/2, inf)` and
/// `(-inf, 1/2]` over `0`, with every intersection listed.
pub fn two_divisor_surface() -> DivisorialFan {
    let pos = cone(&[&[1]]);
    let neg = cone(&[&[-1]]);
    let zero = Cone::zero(1);
    let half = ExactVector::new(vec![ratio(1, 2)]);
    let c = |tail: &Cone| Polyhedron::new(std::slice::from_ref(&half), tail).unwrap();
    let mut members = Vec::new();
    for tail in [&pos, &neg, &zero] {
        members.push(PolyhedralDivisor::trivial(tail.clone(), &["0"]).unwrap());
        members.push(
            PolyhedralDivisor::new(
                tail.clone(),
                vec!["inf".to_string()],
                [("0".to_string(), c(tail))].into_iter().collect(),
            )
            .unwrap(),
        );
        members.push(PolyhedralDivisor::trivial(tail.clone(), &["0", "inf"]).unwrap());
    }
    DivisorialFan::new(Curve::projective_line(&["0", "inf"]), 1, members)
        .unwrap()
        .with_projective(true)
}

pub fn single(tail: Cone, excluded: &[&str], coeffs: &[(&str, Polyhedron)]) -> PolyhedralDivisor {
    PolyhedralDivisor::new(
        tail,
        excluded.iter().map(|s| s.to_string()),
        coeffs
            .iter()
            .map(|(l, p)| (l.to_string(), p.clone()))
            .collect::<BTreeMap<_, _>>(),
    )
    .unwrap()
}

pub fn trivial(tail: &Fan, genus: u32) -> DivisorialFan {
    trivial_fan(tail, genus).unwrap().with_projective(true)
}

pub fn is_valid(e: &DivisorialFan) -> bool {
    divisorial::validate_divisorial_fan(e).is_valid()
}

/// `E(-t, -t)` of a contraction-free variety glued from slice fans, counting
/// torus orbits directly: the generic part `(E(Y) - r) E(X_T)` and, over each
/// special point, the orbits of cones of `Sigma_y` with positive last
/// coordinate somewhere.
pub fn orbit_count_poincare(genus: u32, slices: &[Fan]) -> IntPolynomial {
    let n = slices[0].ambient_rank();
    let u = poly(&[-1, 0, 1]);
    let orbit = |codim: usize| u.pow(codim);
    let mut tail = IntPolynomial::zero();
    let mut fibres = IntPolynomial::zero();
    for f in slices {
        for delta in f.cones() {
            let positive = delta.rays().iter().any(|r| r.last() > &rat(0));
            let negative = delta.rays().iter().any(|r| r.last() < &rat(0));
            if positive {
                fibres = &fibres + &orbit(n - delta.dim());
            }
            if !positive && !negative && std::ptr::eq(f, &slices[0]) {
                tail = &tail + &orbit(n - 1 - delta.dim());
            }
        }
    }
    let r = slices.len() as i64;
    let curve = poly(&[1 - r, 2 * genus as i64, 1]);
    &(&curve * &tail) + &fibres
}

/// Faces of the full-dimensional cone generated by `gens`, each given by the
/// indices of the generators it contains. Facets come from every
/// `(n - 1)`-subset of generators whose normal keeps all generators on one
/// side; faces are the intersections of facet sets.
pub fn brute_force_faces(gens: &[ExactVector], n: usize) -> std::collections::BTreeSet<Vec<usize>> {
    use std::collections::BTreeSet;
    let all: Vec<usize> = (0..gens.len()).collect();
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for subset in subsets(gens.len(), n - 1) {
        let rows: Vec<ExactVector> = subset.iter().map(|&i| gens[i].clone()).collect();
        if tvariety::exactlin::rank_of(&rows, n) != n - 1 {
            continue;
        }
        let normal = tvariety::exactlin::nullspace(&rows, n).remove(0);
        let values: Vec<_> = gens.iter().map(|g| g.dot(&normal)).collect();
        let nonneg = values.iter().all(|x| x >= &rat(0));
        let nonpos = values.iter().all(|x| x <= &rat(0));
        if nonneg || nonpos {
            let tight: Vec<usize> = all.iter().copied().filter(|&i| values[i] == rat(0)).collect();
            facets.insert(tight);
        }
    }
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    faces.insert(all.clone());
    let mut frontier: Vec<Vec<usize>> = vec![all];
    while let Some(f) = frontier.pop() {
        for facet in &facets {
            let meet: Vec<usize> = f.iter().copied().filter(|i| facet.contains(i)).collect();
            if faces.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    faces
}

/// The same face sets read off the double-description output.
pub fn kernel_faces(gens: &[ExactVector], n: usize) -> std::collections::BTreeSet<Vec<usize>> {
    let c = Cone::from_generators(gens, n).unwrap();
    c.faces()
        .iter()
        .map(|f| (0..gens.len()).filter(|&i| f.contains(&gens[i])).collect())
        .collect()
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if m < k {
        return Vec::new();
    }
    let mut out = subsets(m - 1, k);
    for mut s in subsets(m - 1, k - 1) {
        s.push(m - 1);
        out.push(s);
    }
    out
}

/// Homogenised vertices of a random full-dimensional lattice polytope in rank 3.
pub fn random_polytope_cone(rng: &mut ChaCha8Rng) -> Vec<ExactVector> {
    loop {
        let k = rng.gen_range(4..=8);
        let pts: Vec<ExactVector> = (0..k)
            .map(|_| v(&[rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2), 1]))
            .collect();
        if tvariety::exactlin::rank_of(&pts, 4) == 4 {
            return pts;
        }
    }
}
