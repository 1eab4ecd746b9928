use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::exec::Strategy;
use crate::polyhedron::Polyhedron;
use super::{CurvePoint, DivisorialFan, PolyhedralDivisor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    /// The intersection of two members is not a member.
    MissingIntersection,
    /// Two coefficients at one point do not meet in a common face.
    Overlap,
    /// A point lies in no locus.
    Coverage,
    /// A member is not a proper polyhedral divisor.
    Improper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub members: Vec<usize>,
    pub point: Option<String>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.members.iter().map(|m| format!("#{m}")).collect();
        write!(f, "{:?}", self.kind)?;
        if !members.is_empty() {
            write!(f, " [{}]", members.join(", "))?;
        }
        if let Some(p) = &self.point {
            write!(f, " at {p}")?;
        }
        write!(f, ": {}", self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Observations that do not invalidate the fan, such as properness
    /// verdicts resting on an assertion.
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn summary(&self) -> String {
        if self.is_valid() {
            return "valid".into();
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        lines.join("; ")
    }
}

/// An intersection and whether it is a face of both operands.
type Meeting = (Option<Polyhedron>, Option<bool>);

fn ordered<'a>(p: &'a Polyhedron, q: &'a Polyhedron) -> (&'a Polyhedron, &'a Polyhedron) {
    if p <= q {
        (p, q)
    } else {
        (q, p)
    }
}

/// Checks the axioms of a divisorial fan and the properness of every member.
pub fn validate_divisorial_fan(e: &DivisorialFan) -> ValidationReport {
    validate_divisorial_fan_with(e, Strategy::default())
}

pub fn validate_divisorial_fan_with(e: &DivisorialFan, strategy: Strategy) -> ValidationReport {
    let divisors = e.divisors();
    let n = divisors.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let listed: BTreeSet<&PolyhedralDivisor> = divisors.iter().collect();

    // many pairs share coefficients; intersect each distinct pair once
    let mut keys: BTreeSet<(&Polyhedron, &Polyhedron)> = BTreeSet::new();
    let mut owned: Vec<(Polyhedron, Polyhedron)> = Vec::new();
    for &(i, j) in &pairs {
        let (a, b) = (&divisors[i], &divisors[j]);
        keys.insert(ordered(a.trivial_polyhedron(), b.trivial_polyhedron()));
        for l in a.special_labels(b) {
            let y = CurvePoint::Labeled(l);
            let (p, q) = (a.coefficient(y).expect("in locus"), b.coefficient(y).expect("in locus"));
            owned.push(if p <= q { (p, q) } else { (q, p) });
        }
    }
    for (p, q) in &owned {
        keys.insert((p, q));
    }
    let keys: Vec<(&Polyhedron, &Polyhedron)> = keys.into_iter().collect();
    let meets = strategy.map(&keys, |(p, q)| {
        let m = p.intersection(q);
        let faces = m.as_ref().map(|m| m.is_face_of(p) && m.is_face_of(q));
        (m, faces)
    });
    let memo: BTreeMap<_, Meeting> = keys.into_iter().zip(meets).collect();
    let intersect = |p: &Polyhedron, q: &Polyhedron| memo[&ordered(p, q)].0.clone();
    let common = |p: &Polyhedron, q: &Polyhedron| memo[&ordered(p, q)].1.unwrap_or(true);

    let per_pair = strategy.map(&pairs, |&(i, j)| {
        let mut found = Vec::new();
        let (a, b) = (&divisors[i], &divisors[j]);
        let meet = a.meet_with(b, &intersect);
        let joint = PolyhedralDivisor::from_meet(&meet);
        if !listed.contains(&joint) {
            found.push(Violation {
                kind: ViolationKind::MissingIntersection,
                members: vec![i, j],
                point: None,
                message: format!("intersection not listed: {joint}"),
            });
        }
        let (ga, gb, gm) = &meet.generic;
        let generic = (CurvePoint::Generic.to_string(), ga.clone(), gb.clone(), Some(gm.clone()));
        for (y, p, q, m) in meet.points.iter().chain(std::iter::once(&generic)) {
            let Some(m) = m else { continue };
            if !common(p, q) {
                found.push(Violation {
                    kind: ViolationKind::Overlap,
                    members: vec![i, j],
                    point: Some(y.clone()),
                    message: format!("{p} and {q} meet in {m}, which is not a common face"),
                });
            }
        }
        found
    });
    let mut report = ValidationReport::default();
    for v in per_pair {
        report.violations.extend(v);
    }
    if n == 0 {
        report.violations.push(Violation {
            kind: ViolationKind::Coverage,
            members: vec![],
            point: Some(CurvePoint::Generic.to_string()),
            message: "no members; the curve is not covered".into(),
        });
    }
    for l in e.curve().points() {
        if n > 0 && !divisors.iter().any(|d| d.in_locus(CurvePoint::Labeled(l))) {
            report.violations.push(Violation {
                kind: ViolationKind::Coverage,
                members: vec![],
                point: Some(l.clone()),
                message: "point lies in no locus".into(),
            });
        }
    }
    for i in 0..n {
        let verdict = e.member_verdict(i);
        if !verdict.proper {
            report.violations.push(Violation {
                kind: ViolationKind::Improper,
                members: vec![i],
                point: None,
                message: verdict.reason,
            });
        } else if !verdict.decided {
            report.notes.push(format!("member #{i}: {}", verdict.reason));
        }
    }
    if e.genus() > 0 && divisors.iter().any(|d| !d.has_affine_locus()) {
        report.notes.push(
            "a member has the full curve as locus on positive genus; Betti number formulas will refuse this input".into(),
        );
    }
    report
}
