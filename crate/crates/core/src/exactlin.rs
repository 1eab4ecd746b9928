//! Exact rational and integer linear algebra.
//!
//! Everything here works over arbitrary-precision rationals. Integer structure
//! (primitive vectors, Smith normal form) is layered on top by checking that
//! entries have denominator one.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p` or `p/q` with integer `p`, `q` (q nonzero).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// An immutable vector of exact rationals.
///
/// Ordering is lexicographic on the entries; it is used for all deterministic
/// output orderings in the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactVector {
    entries: Vec<Rational>,
}

impl ExactVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        ExactVector { entries }
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        ExactVector::new(entries.iter().map(|&x| rat(x)).collect())
    }

    pub fn from_bigints(entries: &[BigInt]) -> Self {
        ExactVector::new(entries.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zero(rank: usize) -> Self {
        ExactVector::new(vec![Rational::zero(); rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut entries = vec![Rational::zero(); rank];
        entries[i] = Rational::one();
        ExactVector::new(entries)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn ambient_rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.entries[i]
    }

    pub fn last(&self) -> &Rational {
        self.entries.last().expect("vector of rank zero")
    }

    pub fn dot(&self, other: &ExactVector) -> Rational {
        debug_assert_eq!(self.ambient_rank(), other.ambient_rank());
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, factor: &Rational) -> ExactVector {
        ExactVector::new(self.entries.iter().map(|x| x * factor).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    /// The vector with one more coordinate appended.
    pub fn extended(&self, last: Rational) -> ExactVector {
        let mut entries = self.entries.clone();
        entries.push(last);
        ExactVector::new(entries)
    }

    /// Drops the last coordinate.
    pub fn truncated(&self) -> ExactVector {
        ExactVector::new(self.entries[..self.entries.len() - 1].to_vec())
    }

    /// Integer entries of an integral vector.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|x| x.is_integer().then(|| x.numer().clone()))
            .collect()
    }

    pub fn primitive(&self) -> Result<ExactVector> {
        primitive(self)
    }
}

impl fmt::Display for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_rational(x))?;
        }
        write!(f, ")")
    }
}

impl Add for &ExactVector {
    type Output = ExactVector;
    fn add(self, rhs: &ExactVector) -> ExactVector {
        ExactVector::new(self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExactVector {
    type Output = ExactVector;
    fn sub(self, rhs: &ExactVector) -> ExactVector {
        ExactVector::new(self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ExactVector {
    type Output = ExactVector;
    fn neg(self) -> ExactVector {
        ExactVector::new(self.entries.iter().map(|a| -a).collect())
    }
}

/// The unique integer vector with coprime entries on the ray through `v`.
pub fn primitive(v: &ExactVector) -> Result<ExactVector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let lcm = v
        .entries
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .entries
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Ok(ExactVector::from_bigints(
        &ints.into_iter().map(|x| x / &gcd).collect::<Vec<_>>(),
    ))
}

/// A rectangular matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: Vec<ExactVector>,
    n_cols: usize,
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<ExactVector>, n_cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.ambient_rank() != n_cols) {
            return Err(Error::DimensionMismatch {
                expected: n_cols,
                found: bad.ambient_rank(),
            });
        }
        Ok(ExactMatrix { rows, n_cols })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let n_cols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_rows(rows.iter().map(|r| ExactVector::from_ints(r)).collect(), n_cols)
            .expect("ragged integer matrix")
    }

    pub fn zero(n_rows: usize, n_cols: usize) -> Self {
        ExactMatrix {
            rows: vec![ExactVector::zero(n_cols); n_rows],
            n_cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix {
            rows: (0..n).map(|i| ExactVector::unit(n, i)).collect(),
            n_cols: n,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn rows(&self) -> &[ExactVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &ExactVector {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        self.rows[i].get(j)
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().all(ExactVector::is_integral)
    }

    pub fn transpose(&self) -> ExactMatrix {
        let rows = (0..self.n_cols)
            .map(|j| ExactVector::new(self.rows.iter().map(|r| r.get(j).clone()).collect()))
            .collect();
        ExactMatrix {
            rows,
            n_cols: self.n_rows(),
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.n_cols != other.n_rows() {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                found: other.n_rows(),
            });
        }
        let cols = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| ExactVector::new(cols.rows.iter().map(|c| r.dot(c)).collect()))
            .collect();
        Ok(ExactMatrix {
            rows,
            n_cols: other.n_cols,
        })
    }

    /// Determinant of a square matrix by fraction-free elimination over Q.
    pub fn determinant(&self) -> Result<Rational> {
        if self.n_rows() != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                found: self.n_rows(),
            });
        }
        let mut a: Vec<Vec<Rational>> = self.rows.iter().map(|r| r.entries.clone()).collect();
        let n = a.len();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &p;
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form of the span of `rows`: nonzero rows only, each
/// pivot normalised to one. Returns the rows and their pivot columns.
pub fn rref(rows: &[ExactVector], n_cols: usize) -> (Vec<ExactVector>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = rows.iter().map(|r| r.entries.clone()).collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..n_cols {
        let Some(p) = (next..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(next, p);
        let inv = a[next][col].recip();
        for x in a[next].iter_mut() {
            *x *= &inv;
        }
        for r in 0..a.len() {
            if r == next || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n_cols {
                let delta = &factor * &a[next][c];
                a[r][c] -= delta;
            }
        }
        pivots.push(col);
        next += 1;
        if next == a.len() {
            break;
        }
    }
    a.truncate(next);
    (a.into_iter().map(ExactVector::new).collect(), pivots)
}

/// Rank over the rationals; zero for the empty matrix.
pub fn rank(m: &ExactMatrix) -> usize {
    rank_of(m.rows(), m.n_cols())
}

pub fn rank_of(rows: &[ExactVector], n_cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rref(rows, n_cols).0.len()
}

/// A basis of `{x : <r, x> = 0 for all rows r}`, in canonical form (each
/// vector primitive, free-variable pattern of the RREF).
pub fn nullspace(rows: &[ExactVector], n_cols: usize) -> Vec<ExactVector> {
    let (reduced, pivots) = rref(rows, n_cols);
    let free: Vec<usize> = (0..n_cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); n_cols];
            x[f] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                x[p] = -row.get(f).clone();
            }
            primitive(&ExactVector::new(x)).expect("nullspace vector is nonzero")
        })
        .collect()
}

/// Canonical basis of a linear subspace: primitive rows of its RREF.
pub fn canonical_basis(span: &[ExactVector], n_cols: usize) -> Vec<ExactVector> {
    rref(span, n_cols)
        .0
        .iter()
        .map(|r| primitive(r).expect("rref rows are nonzero"))
        .collect()
}

/// Orthogonal (Euclidean) basis of the span, for projections.
pub fn gram_schmidt(basis: &[ExactVector]) -> Vec<ExactVector> {
    let mut out: Vec<ExactVector> = Vec::new();
    for v in basis {
        let w = project_out(v, &out);
        if !w.is_zero() {
            out.push(w);
        }
    }
    out
}

/// Removes the components of `v` along an orthogonal family.
pub fn project_out(v: &ExactVector, orthogonal: &[ExactVector]) -> ExactVector {
    orthogonal.iter().fold(v.clone(), |acc, u| {
        let coeff = acc.dot(u) / u.dot(u);
        &acc - &u.scale(&coeff)
    })
}

/// Result of [`smith_normal_form`]: `left * m * right` is diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub left: ExactMatrix,
    pub diag: Vec<BigInt>,
    pub right: ExactMatrix,
}

type IntMat = Vec<Vec<BigInt>>;

fn int_identity(n: usize) -> IntMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn to_exact(m: &IntMat, n_cols: usize) -> ExactMatrix {
    ExactMatrix {
        rows: m.iter().map(|r| ExactVector::from_bigints(r)).collect(),
        n_cols,
    }
}

/// Smith normal form of an integer matrix.
///
/// Returns unimodular `left`, `right` and the invariant factors `diag`
/// (length `min(rows, cols)`, non-negative, each dividing the next).
pub fn smith_normal_form(m: &ExactMatrix) -> Result<SmithForm> {
    let rows = m.n_rows();
    let cols = m.n_cols();
    let mut a: IntMat = Vec::with_capacity(rows);
    for r in m.rows() {
        a.push(r.to_bigints().ok_or_else(|| {
            Error::Precondition(format!("smith normal form needs integer entries, got {r}"))
        })?);
    }
    let mut left = int_identity(rows);
    let mut right = int_identity(cols);

    let swap_cols = |a: &mut IntMat, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    };
    // column_j -= q * column_i
    let col_axpy = |a: &mut IntMat, j: usize, i: usize, q: &BigInt| {
        for row in a.iter_mut() {
            let delta = q * &row[i];
            row[j] -= delta;
        }
    };
    let row_axpy = |a: &mut IntMat, j: usize, i: usize, q: &BigInt| {
        let src = a[i].clone();
        for (x, s) in a[j].iter_mut().zip(src) {
            *x -= q * s;
        }
    };

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap(t, pi);
            left.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut right, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut left, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut right, j, t, &q);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut left, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in left[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }

    let diag = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
    Ok(SmithForm {
        left: to_exact(&left, rows),
        diag,
        right: to_exact(&right, cols),
    })
}

/// True when the integer vectors are part of a lattice basis of Z^n.
pub fn extends_to_lattice_basis(vectors: &[ExactVector], n: usize) -> Result<bool> {
    if vectors.is_empty() {
        return Ok(true);
    }
    let m = ExactMatrix::from_rows(vectors.to_vec(), n)?;
    let snf = smith_normal_form(&m)?;
    Ok(snf.diag.len() == vectors.len() && snf.diag.iter().all(|d| d.is_one()))
}
