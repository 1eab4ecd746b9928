//! Generalized h- and g-polynomials of graded posets.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::fan::FacePoset;

/// A polynomial in one variable with integer coefficients, lowest degree
/// first, without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn one() -> Self {
        IntPolynomial::new(vec![1])
    }

    pub fn constant(c: i64) -> Self {
        IntPolynomial::new(vec![c])
    }

    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        IntPolynomial::new(coeffs)
    }

    /// `(t - 1)^k`.
    pub fn t_minus_one_pow(k: usize) -> Self {
        IntPolynomial::new(vec![-1, 1]).pow(k)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(IntPolynomial::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: i64) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `p(t^2)`.
    pub fn in_t_squared(&self) -> Self {
        let mut out = vec![0; self.coeffs.len() * 2];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[2 * k] = *c;
        }
        IntPolynomial::new(out)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, c| acc * t + c)
    }

    /// `t^d p(1/t) = p(t)`.
    pub fn is_palindromic(&self, d: usize) -> bool {
        if self.coeffs.len() > d + 1 {
            return false;
        }
        (0..=d).all(|k| self.coeff(k) == self.coeff(d - k))
    }

    /// Whether every odd-degree coefficient vanishes.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| *c == 0)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{mag}t")?,
                (_, 1) => write!(f, "t^{k}")?,
                _ => write!(f, "{mag}t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, other: &IntPolynomial) -> IntPolynomial {
        self + &(-other)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        self.scale(-1)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, other: IntPolynomial) -> IntPolynomial {
        &self + &other
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, other: IntPolynomial) -> IntPolynomial {
        &self - &other
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, other: IntPolynomial) -> IntPolynomial {
        &self * &other
    }
}

/// Coefficients `h_0..h_d` of an h-polynomial of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector(pub Vec<i64>);

impl HVector {
    pub fn from_polynomial(p: &IntPolynomial, d: usize) -> HVector {
        HVector((0..=d).map(|k| p.coeff(k)).collect())
    }

    pub fn to_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.0.clone())
    }
}

/// Truncation `sum_{k <= d/2} (h_k - h_{k-1}) t^k`.
fn g_from_h(h: &IntPolynomial, d: usize) -> IntPolynomial {
    IntPolynomial::new(
        (0..=d / 2)
            .map(|k| h.coeff(k) - if k == 0 { 0 } else { h.coeff(k - 1) })
            .collect(),
    )
}

/// h- and g-polynomials of every lower interval `[bottom, x]`.
///
/// For an element of dimension `d` (the empty element has `d = -1`),
/// `h(x) = sum_{y < x} g(y) (t - 1)^(d - 1 - dim y)` and `g` is obtained from
/// `h` by truncation at `d / 2`; the empty element has `h = g = 1`.
pub fn hg_table(poset: &FacePoset) -> (Vec<IntPolynomial>, Vec<IntPolynomial>) {
    let n = poset.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| poset.dim_of(i));
    let mut h = vec![IntPolynomial::zero(); n];
    let mut g = vec![IntPolynomial::zero(); n];
    for &x in &order {
        let d = poset.dim_of(x);
        if d < 0 {
            h[x] = IntPolynomial::one();
            g[x] = IntPolynomial::one();
            continue;
        }
        let mut acc = IntPolynomial::zero();
        for &y in poset.below(x) {
            let e = (d - 1 - poset.dim_of(y)) as usize;
            acc = &acc + &(&g[y] * &IntPolynomial::t_minus_one_pow(e));
        }
        g[x] = g_from_h(&acc, d as usize);
        h[x] = acc;
    }
    (h, g)
}

/// The h-polynomial of the whole poset (the interval below its top).
pub fn h_polynomial(poset: &FacePoset) -> IntPolynomial {
    let (h, _) = hg_table(poset);
    h[poset.top()].clone()
}

pub fn g_polynomial(poset: &FacePoset) -> IntPolynomial {
    let (_, g) = hg_table(poset);
    g[poset.top()].clone()
}

/// h-polynomial of a simplicial polytope of dimension `p` from its face
/// numbers `f_{-1}, f_0, ..., f_{p-1}`: `h(t) = sum_i f_{i-1} (t - 1)^(p - i)`.
pub fn h_simplicial(counts: &[usize], p: usize) -> Result<IntPolynomial> {
    if counts.len() != p + 1 {
        return Err(Error::Precondition(format!(
            "expected {} face numbers for dimension {p}, got {}",
            p + 1,
            counts.len()
        )));
    }
    let mut acc = IntPolynomial::zero();
    for (i, &f) in counts.iter().enumerate() {
        let term = IntPolynomial::t_minus_one_pow(p - i).scale(f as i64);
        acc = &acc + &term;
    }
    Ok(acc)
}

pub fn is_palindromic(p: &IntPolynomial, d: usize) -> bool {
    p.is_palindromic(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ExactVector;
    use crate::polyhedron::Polyhedron;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec())
    }

    fn lattice_of(points: &[&[i64]]) -> FacePoset {
        let pts: Vec<ExactVector> = points.iter().map(|p| ExactVector::from_ints(p)).collect();
        let n = pts[0].ambient_rank();
        let p = Polyhedron::new(&pts, &crate::polyhedron::Cone::zero(n)).unwrap();
        FacePoset::from_face_lattice(&p.face_lattice()).unwrap()
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[1, 0, 2, 0, 1]).to_string(), "1 + 2t^2 + t^4");
        assert_eq!(poly(&[-1, 1]).to_string(), "-1 + t");
        assert_eq!(poly(&[0, -3]).to_string(), "-3t");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        assert_eq!(IntPolynomial::t_minus_one_pow(2), poly(&[1, -2, 1]));
        assert_eq!(poly(&[1, 1]).in_t_squared(), poly(&[1, 0, 1]));
        assert_eq!(&poly(&[1, 1]) - &poly(&[1, 1]), IntPolynomial::zero());
        assert_eq!(poly(&[1, 2, 1]).eval(1), 4);
    }

    #[test]
    fn polygons() {
        let tri = lattice_of(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(h_polynomial(&tri), poly(&[1, 1, 1]));
        let sq = lattice_of(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(h_polynomial(&sq), poly(&[1, 2, 1]));
        let pent = lattice_of(&[&[0, 0], &[2, 0], &[3, 1], &[1, 3], &[-1, 1]]);
        assert_eq!(h_polynomial(&pent), poly(&[1, 3, 1]));
    }

    #[test]
    fn square_pyramid() {
        let pyr = lattice_of(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        let h = h_polynomial(&pyr);
        assert_eq!(h, poly(&[1, 2, 2, 1]));
        assert!(h.is_palindromic(3));
        assert_eq!(g_polynomial(&pyr), poly(&[1, 1]));
    }

    #[test]
    fn simplicial_counts() {
        // octahedron: 6 vertices, 12 edges, 8 triangles
        assert_eq!(h_simplicial(&[1, 6, 12, 8], 3).unwrap(), poly(&[1, 3, 3, 1]));
        let oct = lattice_of(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]);
        assert_eq!(h_polynomial(&oct), poly(&[1, 3, 3, 1]));
        assert!(h_simplicial(&[1, 6], 3).is_err());
    }
}
