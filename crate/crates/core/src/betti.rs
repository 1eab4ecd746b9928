//! Poincaré polynomials of intersection cohomology for complete
//! complexity-one T-varieties and toric varieties.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::divisorial::{
    self, is_complete_variety, is_contraction_free, slice_fan, support, tail_fan, CurvePoint,
    DivisorialFan, SliceVariant,
};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::fan::Fan;
use crate::hpoly::{h_polynomial, IntPolynomial};
use crate::polyhedron::{Cone, Polyhedron};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pipeline {
    Main,
    MainSimplicial,
    NoncfSmooth,
}

impl Pipeline {
    pub fn as_str(self) -> &'static str {
        match self {
            Pipeline::Main => "main",
            Pipeline::MainSimplicial => "main+simplicial cross-check",
            Pipeline::NoncfSmooth => "noncf-smooth",
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiReport {
    pub poincare: IntPolynomial,
    /// Dimension of the variety, `rank + 1`.
    pub dim: usize,
    pub h_tail: IntPolynomial,
    /// h-polynomials of the slice polytopes at the support points.
    pub h_slices: BTreeMap<String, IntPolynomial>,
    pub genus: u32,
    pub support_size: usize,
    pub pipeline: Pipeline,
    pub diagnostics: Vec<String>,
}

impl BettiReport {
    /// `b_0, ..., b_{2d}`.
    pub fn betti_numbers(&self) -> Vec<i64> {
        (0..=2 * self.dim).map(|k| self.poincare.coeff(k)).collect()
    }
}

/// `P(t) = h(Q; t^2)` where `Q` is the face lattice of the polytope whose
/// face fan is the given complete fan.
pub fn toric_poincare(f: &Fan) -> Result<IntPolynomial> {
    Ok(h_polynomial(&f.cone_poset()?).in_t_squared())
}

/// `sum over cones of (t - 1)^codim`, the h-polynomial of a simple polytope
/// read off from its normal fan.
pub fn face_count_h(f: &Fan) -> IntPolynomial {
    let n = f.ambient_rank();
    f.face_counts()
        .iter()
        .enumerate()
        .fold(IntPolynomial::zero(), |acc, (k, &c)| {
            &acc + &IntPolynomial::t_minus_one_pow(n - k).scale(c as i64)
        })
}

struct Parts {
    tail: Fan,
    support: Vec<String>,
    slices: Vec<Fan>,
}

fn check_valid(e: &DivisorialFan) -> Result<()> {
    let report = divisorial::validate_divisorial_fan(e);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidFan(report.summary()))
    }
}

fn check_common(e: &DivisorialFan) -> Result<()> {
    check_valid(e)?;
    check_complete_projective(e)
}

fn check_complete_projective(e: &DivisorialFan) -> Result<()> {
    if !is_complete_variety(e) {
        return Err(Error::NotComplete);
    }
    if !e.assert_projective() {
        return Err(Error::Precondition(
            "projectivity is not asserted (set assert_projective)".into(),
        ));
    }
    Ok(())
}

fn check_contraction_free(e: &DivisorialFan) -> Result<()> {
    if !is_contraction_free(e).holds {
        return Err(Error::Precondition(
            "not contraction-free: a member has the whole curve as locus; use the smooth non-contraction-free formula (genus 0, smoothness asserted)".into(),
        ));
    }
    if e.genus() > 0 && e.divisors().iter().any(|d| !d.has_affine_locus()) {
        return Err(Error::Precondition("full-curve locus on positive genus".into()));
    }
    Ok(())
}

fn parts(e: &DivisorialFan, strategy: Strategy) -> Result<Parts> {
    let tail = tail_fan(e)?;
    let support = divisorial::support_with(e, strategy);
    let slices = strategy
        .map(&support, |y| slice_fan(e, CurvePoint::Labeled(y), SliceVariant::Full))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(Parts {
        tail,
        support,
        slices,
    })
}

/// `((1 - r) t^2 + 2 g t + 1 - r)`.
fn curve_factor(genus: u32, r: usize) -> IntPolynomial {
    let c = 1 - r as i64;
    IntPolynomial::new(vec![c, 2 * genus as i64, c])
}

fn assemble(
    e: &DivisorialFan,
    parts: &Parts,
    h_tail: IntPolynomial,
    h_slices: Vec<IntPolynomial>,
    pipeline: Pipeline,
) -> BettiReport {
    let r = parts.support.len();
    let mut p = &curve_factor(e.genus(), r) * &h_tail.in_t_squared();
    for h in &h_slices {
        p = &p + &h.in_t_squared();
    }
    let dim = e.rank() + 1;
    let mut report = BettiReport {
        poincare: p,
        dim,
        h_tail,
        h_slices: parts.support.iter().cloned().zip(h_slices).collect(),
        genus: e.genus(),
        support_size: r,
        pipeline,
        diagnostics: Vec::new(),
    };
    report.diagnostics = structure_diagnostics(&report);
    report
}

fn structure_diagnostics(r: &BettiReport) -> Vec<String> {
    let mut out = Vec::new();
    if r.poincare.coeff(0) != 1 || r.poincare.coeff(2 * r.dim) != 1 {
        out.push("constant or top coefficient differs from 1".into());
    }
    if !r.poincare.is_palindromic(2 * r.dim) {
        out.push("Poincaré polynomial is not palindromic".into());
    }
    if r.poincare.coeffs().iter().any(|c| c.is_negative()) {
        out.push("negative Betti number".into());
    }
    out
}

/// The Poincaré polynomial of a projective contraction-free variety:
/// `((1 - r) t^2 + 2 g t + 1 - r) h(Q; t^2) + sum_y h(Q_y; t^2)`.
pub fn poincare_main(e: &DivisorialFan) -> Result<BettiReport> {
    poincare_main_with(e, Strategy::default())
}

pub fn poincare_main_with(e: &DivisorialFan, strategy: Strategy) -> Result<BettiReport> {
    check_valid(e)?;
    check_contraction_free(e)?;
    check_complete_projective(e)?;
    let parts = parts(e, strategy)?;
    main_from_parts(e, &parts, strategy, Pipeline::Main)
}

fn main_from_parts(
    e: &DivisorialFan,
    parts: &Parts,
    strategy: Strategy,
    pipeline: Pipeline,
) -> Result<BettiReport> {
    let h_tail = h_polynomial(&parts.tail.cone_poset()?);
    let h_slices = strategy
        .map(&parts.slices, |f| f.cone_poset().map(|p| h_polynomial(&p)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(e, parts, h_tail, h_slices, pipeline))
}

fn first_non_simplicial(f: &Fan) -> Option<&Cone> {
    f.maximal_indices()
        .iter()
        .map(|&i| &f.cones()[i])
        .find(|c| !c.is_simplicial())
}

/// The simplicial case: runs the recursion and the face-count form and
/// requires them to agree.
pub fn poincare_smooth_simplicial(e: &DivisorialFan) -> Result<BettiReport> {
    poincare_smooth_simplicial_with(e, Strategy::default())
}

pub fn poincare_smooth_simplicial_with(e: &DivisorialFan, strategy: Strategy) -> Result<BettiReport> {
    check_valid(e)?;
    check_contraction_free(e)?;
    check_complete_projective(e)?;
    let parts = parts(e, strategy)?;
    simplicial_from_parts(e, &parts, strategy)
}

fn simplicial_from_parts(e: &DivisorialFan, parts: &Parts, strategy: Strategy) -> Result<BettiReport> {
    for f in std::iter::once(&parts.tail).chain(parts.slices.iter()) {
        if let Some(c) = first_non_simplicial(f) {
            return Err(Error::NonSimplicial(c.to_string()));
        }
    }
    let main = main_from_parts(e, parts, strategy, Pipeline::MainSimplicial)?;
    let counted = assemble(
        e,
        parts,
        face_count_h(&parts.tail),
        strategy.map(&parts.slices, face_count_h),
        Pipeline::MainSimplicial,
    );
    if counted.poincare != main.poincare {
        return Err(Error::Invariant(format!(
            "recursion gives {} but face counts give {}",
            main.poincare, counted.poincare
        )));
    }
    Ok(main)
}

fn require_genus_zero(e: &DivisorialFan) -> Result<()> {
    if e.genus() > 0 {
        return Err(Error::Precondition(
            "this computation is only available over the projective line (genus 0)".into(),
        ));
    }
    Ok(())
}

/// Whether `D(m)` is big for `m` in the relative interior of the face of
/// `tail(D)^∨` dual to `tau`. Members with affine locus always qualify.
fn is_big_for(d: &divisorial::PolyhedralDivisor, tau: &Cone) -> bool {
    if d.has_affine_locus() {
        return true;
    }
    let m = d.tail().dual_face(tau).interior_point();
    d.evaluate(&m)
        .map(|dm| dm.degree().is_positive())
        .unwrap_or(false)
}

/// Tail cones `tau` for which some member `D` with `tau` a face of its tail
/// has `D(m)` big on the relative interior of `tau^⊥ ∩ tail(D)^∨`.
pub fn big_fan(e: &DivisorialFan) -> Result<Vec<Cone>> {
    require_genus_zero(e)?;
    if e.divisors().is_empty() {
        return Ok(Vec::new());
    }
    let tail = tail_fan(e)?;
    Ok(tail
        .cones()
        .iter()
        .filter(|tau| {
            e.divisors()
                .iter()
                .any(|d| tau.is_face_of(d.tail()) && is_big_for(d, tau))
        })
        .cloned()
        .collect())
}

/// An equivalence class of pairs `(y, F)` with `F` a face over the support point `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiClass {
    pub members: Vec<(String, Polyhedron)>,
    pub codim: usize,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits over the support points, after removing those swallowed by
/// contracted orbits and making the identifications of marked members.
///
/// For a member `D` with the whole curve as locus and a maximal tail, and a
/// face `F` of `D_y`, let `lambda = {m in tail^∨ : <m, v' - v> >= 0, v' in
/// D_y, v in F}`. When `lambda` is the dual face of a tail face outside the
/// big fan, the orbit of `(y, F)` lies in the orbit contracted from that tail
/// face and the pair is dropped. Otherwise pairs sharing `(D, lambda)` are
/// identified when `lambda` lies in no dual face of a big-fan cone.
pub fn phi_classes(e: &DivisorialFan) -> Result<Vec<PhiClass>> {
    require_genus_zero(e)?;
    let supp = support(e);
    let mut pairs: Vec<(String, Polyhedron, usize)> = Vec::new();
    for y in &supp {
        for (f, codim) in divisorial::faces_at(e, CurvePoint::Labeled(y)) {
            pairs.push((y.clone(), f, codim));
        }
    }
    if pairs.is_empty() {
        return Ok(Vec::new());
    }
    let tail = tail_fan(e)?;
    let big: BTreeSet<Cone> = big_fan(e)?.into_iter().collect();
    let maximal: BTreeSet<Cone> = tail.maximal_cones().into_iter().collect();
    let marked: Vec<usize> = (0..e.divisors().len())
        .filter(|&i| {
            let d = &e.divisors()[i];
            !d.has_affine_locus() && maximal.contains(d.tail())
        })
        .collect();
    let duals: Vec<(Vec<Cone>, Vec<Cone>)> = marked
        .iter()
        .map(|&i| {
            let sigma = e.divisors()[i].tail();
            let (b, s): (Vec<Cone>, Vec<Cone>) =
                sigma.faces().into_iter().partition(|tau| big.contains(tau));
            (
                b.iter().map(|tau| sigma.dual_face(tau)).collect(),
                s.iter().map(|tau| sigma.dual_face(tau)).collect(),
            )
        })
        .collect();

    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    let mut dropped = vec![false; pairs.len()];
    let mut keyed: BTreeMap<(usize, Cone), usize> = BTreeMap::new();
    for (idx, (y, f, _)) in pairs.iter().enumerate() {
        for (k, &i) in marked.iter().enumerate() {
            let d = &e.divisors()[i];
            let dy = d.coefficient(CurvePoint::Labeled(y)).expect("full locus");
            if !f.is_face_of(&dy) {
                continue;
            }
            let lambda = dy.lambda_face_cone(f)?;
            let (big_duals, small_duals) = &duals[k];
            if small_duals.contains(&lambda) {
                dropped[idx] = true;
            } else if !big_duals.iter().any(|g| g.contains_cone(&lambda)) {
                match keyed.get(&(i, lambda.clone())) {
                    Some(&other) => {
                        let (a, b) = (find(&mut parent, idx), find(&mut parent, other));
                        parent[a] = b;
                    }
                    None => {
                        keyed.insert((i, lambda), idx);
                    }
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for idx in 0..pairs.len() {
        let root = find(&mut parent, idx);
        classes.entry(root).or_default().push(idx);
    }
    let mut out = Vec::new();
    for members in classes.into_values() {
        let members: Vec<usize> = members.into_iter().filter(|&i| !dropped[i]).collect();
        if members.is_empty() {
            continue;
        }
        let codim = pairs[members[0]].2;
        if members.iter().any(|&i| pairs[i].2 != codim) {
            return Err(Error::Invariant("identified orbits of different dimension".into()));
        }
        out.push(PhiClass {
            members: members
                .iter()
                .map(|&i| (pairs[i].0.clone(), pairs[i].1.clone()))
                .collect(),
            codim,
        });
    }
    Ok(out)
}

fn count_form(counts: &[usize]) -> IntPolynomial {
    let u = IntPolynomial::new(vec![-1, 0, 1]);
    counts
        .iter()
        .enumerate()
        .fold(IntPolynomial::zero(), |acc, (i, &c)| &acc + &u.pow(i).scale(c as i64))
}

/// The smooth case over the projective line, allowing members whose locus
/// is the whole curve.
pub fn poincare_noncf_smooth(e: &DivisorialFan) -> Result<BettiReport> {
    require_genus_zero(e)?;
    if e.assert_smooth() != Some(true) {
        return Err(Error::Precondition(
            "smoothness must be asserted (assert_smooth) for this formula".into(),
        ));
    }
    check_common(e)?;
    noncf_unchecked(e)
}

fn noncf_unchecked(e: &DivisorialFan) -> Result<BettiReport> {
    let tail = tail_fan(e)?;
    let n = e.rank();
    let big: BTreeSet<Cone> = big_fan(e)?.into_iter().collect();
    let mut c = vec![0usize; n + 1];
    let mut d = vec![0usize; n + 1];
    for tau in tail.cones() {
        let codim = n - tau.dim();
        if big.contains(tau) {
            c[codim] += 1;
        } else {
            d[codim] += 1;
        }
    }
    let phi = phi_classes(e)?;
    let mut ec = vec![0usize; n + 2];
    for class in &phi {
        ec[class.codim] += 1;
    }
    let r = support(e).len() as i64;
    let factor = IntPolynomial::new(vec![1 - r, 0, 1]);
    let p = &(&(&factor * &count_form(&c)) + &count_form(&d)) + &count_form(&ec);
    let h_tail = h_polynomial(&tail.cone_poset()?);
    let mut report = BettiReport {
        poincare: p,
        dim: n + 1,
        h_tail,
        h_slices: BTreeMap::new(),
        genus: 0,
        support_size: r as usize,
        pipeline: Pipeline::NoncfSmooth,
        diagnostics: vec![format!(
            "big fan: {} of {} tail cones; {} orbit classes over the support",
            big.len(),
            tail.cones().len(),
            phi.len()
        )],
    };
    report.diagnostics.extend(structure_diagnostics(&report));
    Ok(report)
}

/// Picks the applicable formula. In the simplicial case both the recursion
/// and the face-count form run and must agree.
pub fn betti_report(e: &DivisorialFan) -> Result<BettiReport> {
    check_valid(e)?;
    if is_contraction_free(e).holds {
        check_contraction_free(e)?;
        check_complete_projective(e)?;
        let strategy = Strategy::default();
        let parts = parts(e, strategy)?;
        let simplicial = std::iter::once(&parts.tail)
            .chain(parts.slices.iter())
            .all(|f| f.is_simplicial());
        if simplicial {
            simplicial_from_parts(e, &parts, strategy)
        } else {
            main_from_parts(e, &parts, strategy, Pipeline::Main)
        }
    } else if e.genus() > 0 {
        Err(Error::Precondition(
            "a member has the whole curve as locus and the genus is positive; no formula applies".into(),
        ))
    } else if e.assert_smooth() == Some(true) {
        check_complete_projective(e)?;
        noncf_unchecked(e)
    } else {
        Err(Error::Precondition(
            "not contraction-free and smoothness is not asserted; no formula applies".into(),
        ))
    }
}

/// Reports for many inputs, computed independently.
pub fn betti_batch(fans: &[DivisorialFan], strategy: Strategy) -> Vec<Result<BettiReport>> {
    strategy.map(fans, betti_report)
}

/// A polynomial in `u, v` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EPolynomial {
    terms: BTreeMap<(u32, u32), i64>,
}

/// Arguments of [`e_polynomial`].
pub enum EPolyKind<'a> {
    /// `(uv - 1)^r`.
    Torus(u32),
    /// `uv - g(u + v) + 1`.
    Curve(u32),
    Product(&'a EPolynomial, &'a EPolynomial),
    Sum(&'a EPolynomial, &'a EPolynomial),
}

pub fn e_polynomial(kind: EPolyKind<'_>) -> EPolynomial {
    match kind {
        EPolyKind::Torus(r) => EPolynomial::torus(r),
        EPolyKind::Curve(g) => EPolynomial::curve(g),
        EPolyKind::Product(a, b) => a.product(b),
        EPolyKind::Sum(a, b) => a.sum(b),
    }
}

impl EPolynomial {
    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), i64)>) -> Self {
        let mut out = EPolynomial::default();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: (u32, u32), c: i64) {
        let entry = self.terms.entry(k).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn one() -> Self {
        EPolynomial::from_terms([((0, 0), 1)])
    }

    pub fn torus(r: u32) -> Self {
        let base = EPolynomial::from_terms([((1, 1), 1), ((0, 0), -1)]);
        (0..r).fold(EPolynomial::one(), |acc, _| acc.product(&base))
    }

    pub fn curve(g: u32) -> Self {
        EPolynomial::from_terms([((1, 1), 1), ((1, 0), -(g as i64)), ((0, 1), -(g as i64)), ((0, 0), 1)])
    }

    pub fn coeff(&self, a: u32, b: u32) -> i64 {
        self.terms.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), i64> {
        &self.terms
    }

    pub fn product(&self, other: &EPolynomial) -> EPolynomial {
        let mut out = EPolynomial::default();
        for (&(a, b), &c) in &self.terms {
            for (&(x, y), &d) in &other.terms {
                out.add_term((a + x, b + y), c * d);
            }
        }
        out
    }

    pub fn sum(&self, other: &EPolynomial) -> EPolynomial {
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> EPolynomial {
        EPolynomial::from_terms(self.terms.iter().map(|(&k, &v)| (k, v * c)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(&(a, b), &c)| self.coeff(b, a) == c)
    }

    /// `E(-t, -t)`, the Poincaré polynomial when the cohomology is pure.
    pub fn at_minus_t(&self) -> IntPolynomial {
        let mut coeffs = vec![0i64; self.terms.keys().map(|(a, b)| (a + b) as usize + 1).max().unwrap_or(0)];
        for (&(a, b), &c) in &self.terms {
            let k = (a + b) as usize;
            coeffs[k] += if k.is_multiple_of(2) { c } else { -c };
        }
        IntPolynomial::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }
}

impl fmt::Display for EPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), &c) in self.terms.iter().rev() {
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            let mono = match (a, b) {
                (0, 0) => String::new(),
                _ => {
                    let p = |s: &str, k: u32| match k {
                        0 => String::new(),
                        1 => s.to_string(),
                        _ => format!("{s}^{k}"),
                    };
                    format!("{}{}", p("u", a), p("v", b))
                }
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}
