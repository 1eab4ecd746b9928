use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{ExactVector, Rational};
use crate::exec::Strategy;
use crate::fan::Fan;
use crate::polyhedron::{Cone, Polyhedron};

use super::{CurvePoint, DivisorialFan, PolyhedralDivisor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SliceVariant {
    /// Hypercones only.
    Plus,
    /// Hypercones together with the downward cones `tail x Q<=0`.
    Full,
}

/// Answer of [`is_contraction_free`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContractionFree {
    pub holds: bool,
    /// Set for the empty collection, where the answer is vacuous.
    pub degenerate: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GermKind {
    Horizontal,
    Vertical,
}

/// A T-invariant germ: a tail cone (horizontal) or a face of a hypercone
/// leaving the level-zero hyperplane (vertical).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Germ {
    pub kind: GermKind,
    pub point: Option<String>,
    pub cone: Cone,
    pub dim: usize,
}

/// All non-empty faces of the coefficients at `y`, deduplicated, with their codimension.
pub fn faces_at(e: &DivisorialFan, y: CurvePoint<'_>) -> Vec<(Polyhedron, usize)> {
    let mut set: BTreeSet<Polyhedron> = BTreeSet::new();
    let mut seen: BTreeSet<Polyhedron> = BTreeSet::new();
    for d in e.divisors() {
        if let Some(p) = d.coefficient(y) {
            if seen.insert(p.clone()) {
                set.extend(p.faces());
            }
        }
    }
    let mut out: Vec<(Polyhedron, usize)> = set
        .into_iter()
        .map(|f| {
            let codim = e.rank() - f.dim();
            (f, codim)
        })
        .collect();
    out.sort_by(|a, b| a.0.dim().cmp(&b.0.dim()).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Labelled points whose face set differs from the tail fan.
pub fn support(e: &DivisorialFan) -> Vec<String> {
    support_with(e, Strategy::default())
}

pub fn support_with(e: &DivisorialFan, strategy: Strategy) -> Vec<String> {
    let generic = faces_at(e, CurvePoint::Generic);
    let points = e.curve().points().to_vec();
    let differs = strategy.map(&points, |l| faces_at(e, CurvePoint::Labeled(l)) != generic);
    points
        .into_iter()
        .zip(differs)
        .filter_map(|(l, d)| d.then_some(l))
        .collect()
}

/// The fan generated by the tails of all members.
pub fn tail_fan(e: &DivisorialFan) -> Result<Fan> {
    let tails: BTreeSet<Cone> = e.divisors().iter().map(|d| d.tail().clone()).collect();
    let tails: Vec<Cone> = tails.into_iter().collect();
    Fan::new(&tails, e.rank())
}

/// The cone generated by `tail x {0}` and `D_y x {1}`.
pub fn hypercone(d: &PolyhedralDivisor, y: CurvePoint<'_>) -> Result<Cone> {
    match d.coefficient(y) {
        Some(p) => Ok(p.homogenized().clone()),
        None => Err(Error::PointExcluded(y.to_string())),
    }
}

/// The cone generated by `tail x {0}` and `tail x {-1}`.
pub fn lower_cone(d: &PolyhedralDivisor) -> Cone {
    let n = d.ambient_rank();
    let mut gens: Vec<ExactVector> = d
        .tail()
        .rays()
        .iter()
        .map(|r| r.extended(Rational::zero()))
        .collect();
    gens.push(ExactVector::zero(n).extended(-Rational::one()));
    Cone::from_generators(&gens, n + 1).expect("rank checked")
}

pub fn slice_fan(e: &DivisorialFan, y: CurvePoint<'_>, variant: SliceVariant) -> Result<Fan> {
    let mut cones: BTreeSet<Cone> = BTreeSet::new();
    for d in e.divisors() {
        if !d.in_locus(y) {
            continue;
        }
        cones.insert(hypercone(d, y)?);
        if variant == SliceVariant::Full {
            cones.insert(lower_cone(d));
        }
    }
    let cones: Vec<Cone> = maximal(cones.into_iter().collect());
    Fan::new(&cones, e.rank() + 1)
}

fn maximal(cones: Vec<Cone>) -> Vec<Cone> {
    let keep: Vec<bool> = (0..cones.len())
        .map(|i| {
            !(0..cones.len()).any(|j| {
                j != i && cones[j].dim() > cones[i].dim() && cones[i].is_face_of(&cones[j])
            })
        })
        .collect();
    cones
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

/// The slice subdivisions cover `N_Q` at every labelled point and at a generic point.
pub fn is_complete_variety(e: &DivisorialFan) -> bool {
    if e.divisors().is_empty() {
        return false;
    }
    let points = e.all_points();
    Strategy::default()
        .map(&points, |&y| {
            slice_fan(e, y, SliceVariant::Full)
                .map(|f| f.is_complete())
                .unwrap_or(false)
        })
        .into_iter()
        .all(|b| b)
}

/// Every member has an affine locus.
pub fn is_contraction_free(e: &DivisorialFan) -> ContractionFree {
    ContractionFree {
        holds: e.divisors().iter().all(|d| d.has_affine_locus()),
        degenerate: e.divisors().is_empty(),
    }
}

/// Horizontal germs, one per tail cone, and vertical germs at support
/// points, one per hypercone face not contained in `N_Q x {0}`.
pub fn enumerate_germs(e: &DivisorialFan) -> Result<Vec<Germ>> {
    if !is_contraction_free(e).holds {
        return Err(Error::Precondition(
            "germs are only enumerated for contraction-free fans".into(),
        ));
    }
    let n = e.rank() + 1;
    let mut out = Vec::new();
    for tau in tail_fan(e)?.cones() {
        out.push(Germ {
            kind: GermKind::Horizontal,
            point: None,
            cone: tau.clone(),
            dim: n - tau.dim(),
        });
    }
    for y in support(e) {
        let plus = slice_fan(e, CurvePoint::Labeled(&y), SliceVariant::Plus)?;
        for f in plus.cones() {
            if f.rays().iter().any(|r| r.last().is_positive()) {
                out.push(Germ {
                    kind: GermKind::Vertical,
                    point: Some(y.clone()),
                    cone: f.clone(),
                    dim: n - f.dim(),
                });
            }
        }
    }
    Ok(out)
}
