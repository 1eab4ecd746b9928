//! Polyhedral divisors and divisorial fans on an abstract curve.
//!
//! The curve is recorded by its genus and a list of labelled points; every
//! other point is "generic" and carries the tail cone as coefficient.

mod build;
mod slices;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};

pub use build::{close_under_intersection, glue_example1, toric_downgrade, trivial_fan};
pub use slices::{
    enumerate_germs, faces_at, hypercone, is_complete_variety, is_contraction_free, slice_fan,
    support, support_with, tail_fan, ContractionFree, Germ, GermKind, SliceVariant,
};
pub use validate::{validate_divisorial_fan, validate_divisorial_fan_with, ValidationReport, Violation, ViolationKind};

use crate::error::{Error, Result};
use crate::exactlin::{ExactVector, Rational};
use crate::polyhedron::{Cone, Polyhedron};

/// A smooth projective curve known only through its genus and a finite list
/// of distinguished points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    genus: u32,
    points: Vec<String>,
}

impl Curve {
    pub fn new(genus: u32, points: Vec<String>) -> Result<Curve> {
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(p.clone()));
            }
        }
        Ok(Curve { genus, points })
    }

    /// The projective line with the given labels.
    pub fn projective_line(points: &[&str]) -> Curve {
        Curve::new(0, points.iter().map(|s| s.to_string()).collect()).expect("distinct labels")
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn has_point(&self, label: &str) -> bool {
        self.points.iter().any(|p| p == label)
    }
}

/// A point of the curve: a labelled one or any point off the label list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint<'a> {
    Labeled(&'a str),
    Generic,
}

impl fmt::Display for CurvePoint<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Labeled(l) => write!(f, "{l}"),
            CurvePoint::Generic => write!(f, "<generic>"),
        }
    }
}

/// A polyhedral divisor `sum D_y [y]` on the curve minus `excluded`.
///
/// Only non-trivial coefficients are stored; every other point of the
/// locus carries the tail cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyhedralDivisor {
    tail: Cone,
    excluded: BTreeSet<String>,
    coefficients: BTreeMap<String, Polyhedron>,
    trivial: Polyhedron,
}

/// Coefficients of two divisors at the generic point and at the labels
/// where either is non-trivial, with their intersections.
pub(crate) struct Meet {
    pub excluded: BTreeSet<String>,
    pub generic: (Polyhedron, Polyhedron, Polyhedron),
    pub points: Vec<(String, Polyhedron, Polyhedron, Option<Polyhedron>)>,
}

impl PolyhedralDivisor {
    pub fn new(
        tail: Cone,
        excluded: impl IntoIterator<Item = String>,
        coefficients: BTreeMap<String, Polyhedron>,
    ) -> Result<PolyhedralDivisor> {
        if !tail.is_strongly_convex() {
            return Err(Error::NotStronglyConvex);
        }
        let trivial = Polyhedron::from_cone(&tail)?;
        PolyhedralDivisor::assemble(trivial, excluded, coefficients)
    }

    /// Builds a divisor whose tail is the tail of `trivial`.
    pub(crate) fn assemble(
        trivial: Polyhedron,
        excluded: impl IntoIterator<Item = String>,
        coefficients: BTreeMap<String, Polyhedron>,
    ) -> Result<PolyhedralDivisor> {
        let tail = trivial.tail().clone();
        let excluded: BTreeSet<String> = excluded.into_iter().collect();
        let mut kept = BTreeMap::new();
        for (label, p) in coefficients {
            if p.ambient_rank() != tail.ambient_rank() {
                return Err(Error::DimensionMismatch {
                    expected: tail.ambient_rank(),
                    found: p.ambient_rank(),
                });
            }
            if p.tail() != &tail {
                return Err(Error::TailMismatch {
                    point: label,
                    expected: tail.to_string(),
                    found: p.tail().to_string(),
                });
            }
            if excluded.contains(&label) {
                return Err(Error::CoefficientAtExcludedPoint(label));
            }
            if p != trivial {
                kept.insert(label, p);
            }
        }
        Ok(PolyhedralDivisor {
            tail,
            excluded,
            coefficients: kept,
            trivial,
        })
    }

    /// The divisor with every coefficient equal to the tail.
    pub fn trivial(tail: Cone, excluded: &[&str]) -> Result<PolyhedralDivisor> {
        PolyhedralDivisor::new(
            tail,
            excluded.iter().map(|s| s.to_string()),
            BTreeMap::new(),
        )
    }

    pub fn ambient_rank(&self) -> usize {
        self.tail.ambient_rank()
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    pub fn excluded(&self) -> &BTreeSet<String> {
        &self.excluded
    }

    /// Non-trivial coefficients only.
    pub fn coefficients(&self) -> &BTreeMap<String, Polyhedron> {
        &self.coefficients
    }

    /// The locus misses at least one point.
    pub fn has_affine_locus(&self) -> bool {
        !self.excluded.is_empty()
    }

    pub fn in_locus(&self, y: CurvePoint<'_>) -> bool {
        match y {
            CurvePoint::Labeled(l) => !self.excluded.contains(l),
            CurvePoint::Generic => true,
        }
    }

    /// The coefficient `D_y`, or `None` when `y` is outside the locus.
    pub fn coefficient(&self, y: CurvePoint<'_>) -> Option<Polyhedron> {
        if !self.in_locus(y) {
            return None;
        }
        match y {
            CurvePoint::Labeled(l) => match self.coefficients.get(l) {
                Some(p) => Some(p.clone()),
                None => Some(self.trivial_coefficient()),
            },
            CurvePoint::Generic => Some(self.trivial_coefficient()),
        }
    }

    fn trivial_coefficient(&self) -> Polyhedron {
        self.trivial.clone()
    }

    pub(crate) fn trivial_polyhedron(&self) -> &Polyhedron {
        &self.trivial
    }

    /// Labels outside both exclusion sets where either divisor is non-trivial.
    pub(crate) fn special_labels<'a>(&'a self, other: &'a PolyhedralDivisor) -> Vec<&'a String> {
        let labels: BTreeSet<&String> = self
            .coefficients
            .keys()
            .chain(other.coefficients.keys())
            .collect();
        labels
            .into_iter()
            .filter(|l| !self.excluded.contains(*l) && !other.excluded.contains(*l))
            .collect()
    }

    pub(crate) fn meet_with(
        &self,
        other: &PolyhedralDivisor,
        intersect: &dyn Fn(&Polyhedron, &Polyhedron) -> Option<Polyhedron>,
    ) -> Meet {
        let excluded: BTreeSet<String> = self.excluded.union(&other.excluded).cloned().collect();
        let points = self
            .special_labels(other)
            .into_iter()
            .map(|l| {
                let y = CurvePoint::Labeled(l);
                let a = self.coefficient(y).expect("in locus");
                let b = other.coefficient(y).expect("in locus");
                let m = intersect(&a, &b);
                (l.clone(), a, b, m)
            })
            .collect();
        let generic = intersect(&self.trivial, &other.trivial).expect("tails share the origin");
        Meet {
            excluded,
            generic: (self.trivial.clone(), other.trivial.clone(), generic),
            points,
        }
    }

    pub(crate) fn from_meet(meet: &Meet) -> PolyhedralDivisor {
        let mut excluded = meet.excluded.clone();
        let mut coefficients = BTreeMap::new();
        for (l, _, _, m) in &meet.points {
            match m {
                Some(p) => {
                    coefficients.insert(l.clone(), p.clone());
                }
                None => {
                    excluded.insert(l.clone());
                }
            }
        }
        PolyhedralDivisor::assemble(meet.generic.2.clone(), excluded, coefficients)
            .expect("intersection is well formed")
    }

    /// Pointwise intersection. Points where the coefficients do not meet
    /// leave the locus.
    pub fn intersection(&self, other: &PolyhedralDivisor) -> PolyhedralDivisor {
        PolyhedralDivisor::from_meet(&self.meet_with(other, &|p, q| p.intersection(q)))
    }

    /// `D(m) = sum_y min_{v in D_y} <m, v> [y]`, for `m` in the dual of the tail.
    pub fn evaluate(&self, m: &ExactVector) -> Result<RationalDivisor> {
        if m.ambient_rank() != self.ambient_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank(),
                found: m.ambient_rank(),
            });
        }
        if !self.tail.dual().contains(m) {
            return Err(Error::NotInDualCone(m.to_string()));
        }
        let mut out = BTreeMap::new();
        for (l, p) in &self.coefficients {
            let value = p.minimize(m).expect("m lies in the dual of the tail");
            if !value.is_zero() {
                out.insert(l.clone(), value);
            }
        }
        Ok(RationalDivisor(out))
    }

    /// The Minkowski sum of all coefficients; only defined for a full locus.
    pub fn degree_polyhedron(&self) -> Result<Polyhedron> {
        if self.has_affine_locus() {
            return Err(Error::AffineLocus);
        }
        Ok(self
            .coefficients
            .values()
            .fold(self.trivial_coefficient(), |acc, p| acc.minkowski_add(p)))
    }

    /// Properness on a curve of the given genus.
    pub fn is_proper(&self, genus: u32) -> ProperVerdict {
        self.proper_verdict(genus, false)
    }

    fn proper_verdict(&self, genus: u32, assert_principal: bool) -> ProperVerdict {
        if self.has_affine_locus() {
            return ProperVerdict::decided(true, "the locus is affine");
        }
        let deg = self.degree_polyhedron().expect("full locus");
        let tail_poly = self.trivial_coefficient();
        if !deg.vertices().iter().all(|v| self.tail.contains(v)) {
            return ProperVerdict::decided(false, &format!("degree {deg} is not contained in the tail"));
        }
        if deg == tail_poly {
            return ProperVerdict::decided(false, "degree polyhedron equals the tail cone");
        }
        if genus == 0 {
            return ProperVerdict::decided(
                true,
                "degree strictly inside the tail; degree-zero divisors on the projective line are principal",
            );
        }
        // the weights with min <m, deg> = 0 form a union of faces of the dual
        // cone; D(m) vanishes on all of them iff it vanishes on their generators
        let mut all_zero = true;
        for v in deg.vertices() {
            let face = self
                .tail
                .smallest_face_containing(&Cone::from_generators(std::slice::from_ref(v), self.ambient_rank()).expect("rank"));
            let weights = self.tail.dual_face(&face);
            for m in weights.generators() {
                let value = self.evaluate(&m).expect("generator of a dual face");
                if !value.is_zero() {
                    all_zero = false;
                }
            }
        }
        if all_zero {
            ProperVerdict::decided(true, "every degree-zero evaluation is the zero divisor")
        } else if assert_principal {
            ProperVerdict {
                proper: true,
                decided: false,
                reason: "degree-zero evaluations asserted principal".into(),
            }
        } else {
            ProperVerdict {
                proper: true,
                decided: false,
                reason: "undecidable from combinatorics: principality of degree-zero evaluations depends on the positions of the points".into(),
            }
        }
    }
}

impl fmt::Display for PolyhedralDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tail {}", self.tail)?;
        if !self.excluded.is_empty() {
            let ex: Vec<&str> = self.excluded.iter().map(String::as_str).collect();
            write!(f, ", excluding {{{}}}", ex.join(", "))?;
        }
        for (l, p) in &self.coefficients {
            write!(f, ", {p} at {l}")?;
        }
        Ok(())
    }
}

/// Outcome of a properness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperVerdict {
    pub proper: bool,
    /// False when the verdict rests on an assumption the data cannot settle.
    pub decided: bool,
    pub reason: String,
}

impl ProperVerdict {
    fn decided(proper: bool, reason: &str) -> Self {
        ProperVerdict {
            proper,
            decided: true,
            reason: reason.into(),
        }
    }
}

/// A finitely supported Q-divisor on the labelled points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalDivisor(pub BTreeMap<String, Rational>);

impl RationalDivisor {
    pub fn coefficient(&self, label: &str) -> Rational {
        self.0.get(label).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Rational {
        self.0.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.values().all(|c| c.is_zero())
    }

    pub fn is_effective(&self) -> bool {
        self.0.values().all(|c| !c.is_negative())
    }
}

/// A finite collection of polyhedral divisors on a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorialFan {
    curve: Curve,
    rank: usize,
    divisors: Vec<PolyhedralDivisor>,
    assert_projective: bool,
    assert_smooth: Option<bool>,
    assert_principal: bool,
}

impl DivisorialFan {
    /// Checks ranks and point labels; the axioms are checked by
    /// [`validate_divisorial_fan`].
    pub fn new(curve: Curve, rank: usize, divisors: Vec<PolyhedralDivisor>) -> Result<DivisorialFan> {
        for d in &divisors {
            if d.ambient_rank() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: d.ambient_rank(),
                });
            }
            for l in d.excluded.iter().chain(d.coefficients.keys()) {
                if !curve.has_point(l) {
                    return Err(Error::UnknownPoint(l.clone()));
                }
            }
        }
        Ok(DivisorialFan {
            curve,
            rank,
            divisors,
            assert_projective: false,
            assert_smooth: None,
            assert_principal: false,
        })
    }

    pub fn with_projective(mut self, flag: bool) -> Self {
        self.assert_projective = flag;
        self
    }

    pub fn with_smooth(mut self, flag: Option<bool>) -> Self {
        self.assert_smooth = flag;
        self
    }

    pub fn with_principal(mut self, flag: bool) -> Self {
        self.assert_principal = flag;
        self
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn genus(&self) -> u32 {
        self.curve.genus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn divisors(&self) -> &[PolyhedralDivisor] {
        &self.divisors
    }

    pub fn assert_projective(&self) -> bool {
        self.assert_projective
    }

    pub fn assert_smooth(&self) -> Option<bool> {
        self.assert_smooth
    }

    pub fn assert_principal(&self) -> bool {
        self.assert_principal
    }

    /// Labelled points followed by the generic point.
    pub fn all_points(&self) -> Vec<CurvePoint<'_>> {
        let mut out: Vec<CurvePoint<'_>> = self
            .curve
            .points
            .iter()
            .map(|l| CurvePoint::Labeled(l))
            .collect();
        out.push(CurvePoint::Generic);
        out
    }

    /// Properness of member `i`, honouring the principality assertion.
    pub fn member_verdict(&self, i: usize) -> ProperVerdict {
        self.divisors[i].proper_verdict(self.curve.genus, self.assert_principal)
    }
}

pub fn evaluate_divisor(d: &PolyhedralDivisor, m: &ExactVector) -> Result<RationalDivisor> {
    d.evaluate(m)
}

pub fn degree_polyhedron(d: &PolyhedralDivisor) -> Result<Polyhedron> {
    d.degree_polyhedron()
}

pub fn is_proper(d: &PolyhedralDivisor, curve: &Curve) -> ProperVerdict {
    d.is_proper(curve.genus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ratio;

    fn q(n: i64, d: i64) -> ExactVector {
        ExactVector::new(vec![ratio(n, d)])
    }

    fn pos() -> Cone {
        Cone::from_generators(&[ExactVector::from_ints(&[1])], 1).unwrap()
    }

    fn half_line(n: i64, d: i64) -> Polyhedron {
        Polyhedron::new(&[q(n, d)], &pos()).unwrap()
    }

    fn divisor(excluded: &[&str], coeffs: &[(&str, Polyhedron)]) -> PolyhedralDivisor {
        PolyhedralDivisor::new(
            pos(),
            excluded.iter().map(|s| s.to_string()),
            coeffs.iter().map(|(l, p)| (l.to_string(), p.clone())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn evaluation() {
        let d = divisor(&[], &[("0", half_line(1, 2))]);
        let e = d.evaluate(&ExactVector::from_ints(&[1])).unwrap();
        assert_eq!(e.coefficient("0"), ratio(1, 2));
        assert!(d.evaluate(&ExactVector::from_ints(&[0])).unwrap().is_zero());
        let d = divisor(&[], &[("0", half_line(1, 2)), ("inf", half_line(1, 3))]);
        let e = d.evaluate(&ExactVector::from_ints(&[2])).unwrap();
        assert_eq!(e.coefficient("0"), ratio(1, 1));
        assert_eq!(e.coefficient("inf"), ratio(2, 3));
        assert!(matches!(
            d.evaluate(&ExactVector::from_ints(&[-1])),
            Err(Error::NotInDualCone(_))
        ));
    }

    #[test]
    fn degree() {
        let d = divisor(&[], &[("0", half_line(1, 2)), ("inf", half_line(1, 3))]);
        assert_eq!(d.degree_polyhedron().unwrap(), half_line(5, 6));
        let t = divisor(&[], &[]);
        assert_eq!(t.degree_polyhedron().unwrap(), half_line(0, 1));
        let a = divisor(&["inf"], &[]);
        assert!(matches!(a.degree_polyhedron(), Err(Error::AffineLocus)));
    }

    #[test]
    fn properness() {
        assert!(divisor(&["inf"], &[]).is_proper(0).proper);
        let d = divisor(&[], &[("0", half_line(1, 1))]);
        let v = d.is_proper(0);
        assert!(v.proper && v.decided);
        let t = divisor(&[], &[]);
        assert!(!t.is_proper(0).proper);
        let below = divisor(&[], &[("0", half_line(-1, 1))]);
        assert!(!below.is_proper(0).proper);
        // on higher genus the only relevant weight is m = 0, where D(m) = 0
        let v = d.is_proper(2);
        assert!(v.proper && v.decided);
    }

    #[test]
    fn higher_genus_is_undecided() {
        // tail a ray in rank 2: the perpendicular weights keep degree zero
        let tail = Cone::from_generators(&[ExactVector::from_ints(&[1, 0])], 2).unwrap();
        let p = Polyhedron::new(&[ExactVector::from_ints(&[1, 1])], &tail).unwrap();
        let r = Polyhedron::new(&[ExactVector::from_ints(&[0, -1])], &tail).unwrap();
        let d = PolyhedralDivisor::new(
            tail,
            Vec::<String>::new(),
            [("a".to_string(), p), ("b".to_string(), r)].into_iter().collect(),
        )
        .unwrap();
        assert!(d.is_proper(0).decided);
        let v = d.is_proper(1);
        assert!(!v.decided);
        assert!(v.reason.contains("undecidable"));
    }

    #[test]
    fn trivial_coefficients_are_dropped() {
        let d = divisor(&[], &[("0", half_line(0, 1))]);
        assert!(d.coefficients().is_empty());
        let err = PolyhedralDivisor::new(
            pos(),
            vec!["0".to_string()],
            [("0".to_string(), half_line(1, 2))].into_iter().collect(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::CoefficientAtExcludedPoint(_)));
    }

    #[test]
    fn intersection_drops_empty_points() {
        let neg = Cone::from_generators(&[ExactVector::from_ints(&[-1])], 1).unwrap();
        let a = divisor(&[], &[("0", half_line(1, 1))]);
        let b = PolyhedralDivisor::new(
            neg.clone(),
            Vec::<String>::new(),
            [("0".to_string(), Polyhedron::new(&[q(0, 1)], &neg).unwrap())].into_iter().collect(),
        )
        .unwrap();
        let c = a.intersection(&b);
        assert!(c.tail().is_zero());
        assert!(c.excluded().contains("0"));
    }
}
