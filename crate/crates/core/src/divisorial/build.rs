//! Constructions of divisorial fans from toric data.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exactlin::ExactVector;
use crate::fan::Fan;
use crate::polyhedron::{Cone, Polyhedron};

use super::slices::lower_cone;
use super::{Curve, DivisorialFan, PolyhedralDivisor};

const ZERO: &str = "0";
const INFINITY: &str = "inf";

fn level(n: usize) -> ExactVector {
    ExactVector::unit(n, n - 1)
}

fn reflect(v: &ExactVector) -> ExactVector {
    let n = v.ambient_rank();
    let mut e = v.entries().to_vec();
    e[n - 1] = -e[n - 1].clone();
    ExactVector::new(e)
}

/// `delta ∩ {l = 0}`, seen in the first `n - 1` coordinates.
fn level_zero(delta: &Cone) -> Cone {
    let n = delta.ambient_rank();
    let mut eqs = delta.equations().to_vec();
    eqs.push(level(n));
    let cut = Cone::from_inequalities(delta.facet_normals(), &eqs, n).expect("rank");
    let gens: Vec<ExactVector> = cut.rays().iter().map(|r| r.truncated()).collect();
    Cone::from_generators(&gens, n - 1).expect("rank")
}

/// The polyhedron `{v : (v, 1) in delta}`, if non-empty.
fn upper_slice(delta: &Cone) -> Option<Polyhedron> {
    let n = delta.ambient_rank();
    let mut ineqs = delta.facet_normals().to_vec();
    ineqs.push(level(n));
    let half = Cone::from_inequalities(&ineqs, delta.equations(), n).expect("rank");
    Polyhedron::from_homogenized(half).expect("pointed half cone")
}

fn reflected(delta: &Cone) -> Cone {
    let gens: Vec<ExactVector> = delta.rays().iter().map(reflect).collect();
    Cone::from_generators(&gens, delta.ambient_rank()).expect("rank")
}

/// Views a toric variety with torus `T x G_m` as a complexity-one variety
/// over the projective line with points `0` and `inf`.
///
/// Every cone `delta` of the fan (last coordinate `l`) becomes the member
/// with tail `delta ∩ {l = 0}`, coefficient `delta ∩ {l = 1}` at `0` and the
/// reflection of `delta ∩ {l = -1}` at `inf`; points with empty slice leave
/// the locus. The result is contraction-free exactly when no cone crosses the
/// hyperplane `l = 0`.
pub fn toric_downgrade(sigma: &Fan) -> Result<DivisorialFan> {
    let n = sigma.ambient_rank();
    if n < 2 {
        return Err(Error::Precondition("a downgrade needs a fan of rank at least 2".into()));
    }
    let mut members: BTreeSet<PolyhedralDivisor> = BTreeSet::new();
    for delta in sigma.cones() {
        let tail = level_zero(delta);
        let mut excluded = Vec::new();
        let mut coefficients = BTreeMap::new();
        match upper_slice(delta) {
            Some(p) => {
                coefficients.insert(ZERO.to_string(), p);
            }
            None => excluded.push(ZERO.to_string()),
        }
        match upper_slice(&reflected(delta)) {
            Some(p) => {
                coefficients.insert(INFINITY.to_string(), p);
            }
            None => excluded.push(INFINITY.to_string()),
        }
        members.insert(PolyhedralDivisor::new(tail, excluded, coefficients)?);
    }
    DivisorialFan::new(
        Curve::projective_line(&[ZERO, INFINITY]),
        n - 1,
        members.into_iter().collect(),
    )
}

/// The product of a curve of genus `g` with the toric variety of `tail`:
/// each cone appears with loci `Y - {0}`, `Y - {inf}` and `Y - {0, inf}`.
pub fn trivial_fan(tail: &Fan, genus: u32) -> Result<DivisorialFan> {
    let mut members = Vec::new();
    for excluded in [&[ZERO][..], &[INFINITY][..], &[ZERO, INFINITY][..]] {
        for tau in tail.cones() {
            members.push(PolyhedralDivisor::trivial(tau.clone(), excluded)?);
        }
    }
    DivisorialFan::new(
        Curve::new(genus, vec![ZERO.to_string(), INFINITY.to_string()])?,
        tail.ambient_rank(),
        members,
    )
}

fn in_upper_half(delta: &Cone) -> bool {
    delta.rays().iter().all(|r| !r.last().is_negative())
}

fn in_lower_half(delta: &Cone) -> bool {
    delta.rays().iter().all(|r| !r.last().is_positive())
}

/// Glues complete fans `Sigma_y` in `N ⊕ Z` into a contraction-free
/// divisorial fan on a genus-`g` curve whose special fibres are the toric
/// varieties of the `Sigma_y`.
///
/// Every cone of each `Sigma_y` must lie in one of the half-spaces `l >= 0`,
/// `l <= 0`, and the lower halves must all equal `T x Q<=0` for one fan `T`
/// in `N`. The labels of the slices must not include `inf`, which serves as
/// the point removed from every member carrying a special coefficient.
pub fn glue_example1(genus: u32, slices: &[(String, Fan)]) -> Result<DivisorialFan> {
    let Some((_, first)) = slices.first() else {
        return Err(Error::Precondition("at least one slice fan is required".into()));
    };
    let n = first.ambient_rank();
    if n < 2 {
        return Err(Error::Precondition("slice fans need rank at least 2".into()));
    }
    let mut tail_cones: Option<BTreeSet<Cone>> = None;
    for (label, f) in slices {
        if label == INFINITY {
            return Err(Error::Precondition(format!("the label {INFINITY:?} is reserved")));
        }
        if f.ambient_rank() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.ambient_rank(),
            });
        }
        if !f.is_complete() {
            return Err(Error::NotComplete);
        }
        let mut here = BTreeSet::new();
        for delta in f.cones() {
            if !in_upper_half(delta) && !in_lower_half(delta) {
                return Err(Error::Precondition(format!(
                    "cone {delta} of the slice at {label} crosses the level-zero hyperplane"
                )));
            }
            if in_upper_half(delta) && in_lower_half(delta) {
                here.insert(level_zero(delta));
            }
        }
        for delta in f.cones() {
            if in_lower_half(delta) && !in_upper_half(delta) {
                let tau = level_zero(delta);
                let expected = lower_cone(&PolyhedralDivisor::trivial(tau, &[])?);
                if &expected != delta {
                    return Err(Error::Precondition(format!(
                        "the slice at {label} is not a product below level zero: {delta}"
                    )));
                }
            }
        }
        match &tail_cones {
            None => tail_cones = Some(here),
            Some(t) if t != &here => {
                return Err(Error::Precondition("slice fans disagree at level zero".into()))
            }
            Some(_) => {}
        }
    }
    let tail = Fan::new(&tail_cones.expect("one slice").into_iter().collect::<Vec<_>>(), n - 1)?;
    let labels: Vec<String> = slices.iter().map(|(l, _)| l.clone()).collect();
    let mut points = labels.clone();
    points.push(INFINITY.to_string());
    let curve = Curve::new(genus, points)?;

    let mut members: BTreeSet<PolyhedralDivisor> = BTreeSet::new();
    let mut all_special: Vec<String> = labels.clone();
    all_special.push(INFINITY.to_string());
    for tau in tail.cones() {
        members.insert(PolyhedralDivisor::new(tau.clone(), labels.clone(), BTreeMap::new())?);
        members.insert(PolyhedralDivisor::new(tau.clone(), all_special.clone(), BTreeMap::new())?);
    }
    for (label, f) in slices {
        let mut excluded: Vec<String> = labels.iter().filter(|l| *l != label).cloned().collect();
        excluded.push(INFINITY.to_string());
        for delta in f.cones() {
            if !in_upper_half(delta) {
                continue;
            }
            if let Some(p) = upper_slice(delta) {
                let coefficients = [(label.clone(), p)].into_iter().collect();
                members.insert(PolyhedralDivisor::new(
                    level_zero(delta),
                    excluded.clone(),
                    coefficients,
                )?);
            }
        }
    }
    DivisorialFan::new(curve, n - 1, members.into_iter().collect())
}

/// Adds pairwise intersections until the collection is closed under them.
pub fn close_under_intersection(e: &DivisorialFan) -> DivisorialFan {
    let mut members: BTreeSet<PolyhedralDivisor> = e.divisors().iter().cloned().collect();
    loop {
        let list: Vec<&PolyhedralDivisor> = members.iter().collect();
        let mut fresh = Vec::new();
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                let m = a.intersection(b);
                if !members.contains(&m) {
                    fresh.push(m);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        members.extend(fresh);
    }
    let mut out = e.clone();
    out.divisors = members.into_iter().collect();
    out
}
