//! Exact integer and rational linear algebra on the lattice `N = Z^n`.
//!
//! Everything here is exact: lattice coordinates are `i64` with checked
//! arithmetic, intermediate determinants use checked `i128`, and feasibility
//! questions are decided by a phase-one simplex over arbitrary-precision
//! rationals.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("integer overflow in exact lattice arithmetic")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, LatticeError>;

/// A point of the lattice `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![0; dim])
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(LatticeError::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(LatticeVector)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(LatticeError::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(LatticeVector)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        self.0
            .iter()
            .map(|a| a.checked_mul(k).ok_or(LatticeError::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(LatticeVector)
    }

    pub fn checked_neg(&self) -> Result<Self> {
        self.checked_scale(-1)
    }

    /// Exact pairing with another integer vector (a functional in dual coordinates).
    pub fn dot(&self, other: &Self) -> Result<i64> {
        self.check_dim(other)?;
        let mut acc: i128 = 0;
        for (a, b) in self.0.iter().zip(&other.0) {
            acc = acc
                .checked_add(i128::from(*a) * i128::from(*b))
                .ok_or(LatticeError::Overflow)?;
        }
        i64::try_from(acc).map_err(|_| LatticeError::Overflow)
    }

    /// Sum of a collection of vectors of dimension `dim`.
    pub fn checked_sum<'a, I>(dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a LatticeVector>,
    {
        vectors
            .into_iter()
            .try_fold(LatticeVector::zero(dim), |acc, v| acc.checked_add(v))
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl Index<usize> for LatticeVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A vector of exact rationals. `BigRational` keeps every entry reduced with a
/// positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVector(coords)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Evaluates this vector, read as a linear functional, on `v`.
    pub fn apply(&self, v: &[Rational]) -> Rational {
        self.0.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// The smallest positive integer multiple of this vector with integer entries.
    pub fn clear_denominators(&self) -> Vec<BigInt> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, q| num_integer_lcm(&acc, q.denom()));
        self.0
            .iter()
            .map(|q| q.numer() * (&lcm / q.denom()))
            .collect()
    }
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let g = gcd_big(a, b);
    (a / &g * b).abs()
}

fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Anything that can be read as a vector of exact rationals.
pub trait ExactVector {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn to_rationals(&self) -> Vec<Rational>;
}

impl ExactVector for LatticeVector {
    fn len(&self) -> usize {
        self.dim()
    }
    fn to_rationals(&self) -> Vec<Rational> {
        self.to_rational().0
    }
}

impl ExactVector for RationalVector {
    fn len(&self) -> usize {
        self.dim()
    }
    fn to_rationals(&self) -> Vec<Rational> {
        self.0.clone()
    }
}

impl ExactVector for Vec<i64> {
    fn len(&self) -> usize {
        Vec::len(self)
    }
    fn to_rationals(&self) -> Vec<Rational> {
        self.iter().map(|&c| Rational::from_integer(c.into())).collect()
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Splits `v` as `g * w` with `w` primitive and `g` the gcd of the coordinates.
pub fn primitive_part(v: &LatticeVector) -> Result<(LatticeVector, i64)> {
    let g = v.0.iter().fold(0u64, |g, c| gcd(g, c.unsigned_abs()));
    if g == 0 {
        return Err(LatticeError::ZeroVector);
    }
    let g = i64::try_from(g).map_err(|_| LatticeError::Overflow)?;
    Ok((LatticeVector(v.0.iter().map(|c| c / g).collect()), g))
}

pub fn is_primitive(v: &LatticeVector) -> bool {
    matches!(primitive_part(v), Ok((_, 1)))
}

fn square_rows(vectors: &[LatticeVector]) -> Result<usize> {
    let n = vectors.first().map_or(0, LatticeVector::dim);
    if vectors.len() != n {
        return Err(LatticeError::DimensionMismatch {
            expected: n,
            found: vectors.len(),
        });
    }
    for v in vectors {
        if v.dim() != n {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                found: v.dim(),
            });
        }
    }
    Ok(n)
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
fn bareiss(mut m: Vec<Vec<i128>>) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return Ok(0);
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k]).ok_or(LatticeError::Overflow)?;
                let b = m[i][k].checked_mul(m[k][j]).ok_or(LatticeError::Overflow)?;
                m[i][j] = a.checked_sub(b).ok_or(LatticeError::Overflow)? / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

/// Exact determinant of the matrix whose rows are `vectors`.
pub fn determinant(vectors: &[LatticeVector]) -> Result<i128> {
    square_rows(vectors)?;
    bareiss(
        vectors
            .iter()
            .map(|v| v.0.iter().map(|&c| i128::from(c)).collect())
            .collect(),
    )
}

/// True iff the `n` vectors form a basis of `Z^n`.
pub fn is_unimodular(basis: &[LatticeVector]) -> Result<bool> {
    Ok(determinant(basis)?.abs() == 1)
}

/// A `Z`-basis of `N` together with its dual basis, so that coordinates of any
/// lattice point are read off by `n` dot products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularBasis {
    vectors: Vec<LatticeVector>,
    dual: Vec<LatticeVector>,
}

impl UnimodularBasis {
    /// Returns `None` when the vectors are not a lattice basis.
    pub fn new(vectors: &[LatticeVector]) -> Result<Option<Self>> {
        let n = square_rows(vectors)?;
        let det = determinant(vectors)?;
        if det.abs() != 1 {
            return Ok(None);
        }
        let mut dual = vec![vec![0i64; n]; n];
        for (i, row) in dual.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let minor: Vec<Vec<i128>> = vectors
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| *r != i)
                    .map(|(_, v)| {
                        v.0.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, &x)| i128::from(x))
                            .collect()
                    })
                    .collect();
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                let cofactor = sign * bareiss(minor)?;
                *entry = i64::try_from(cofactor * det).map_err(|_| LatticeError::Overflow)?;
            }
        }
        Ok(Some(UnimodularBasis {
            vectors: vectors.to_vec(),
            dual: dual.into_iter().map(LatticeVector).collect(),
        }))
    }

    pub fn vectors(&self) -> &[LatticeVector] {
        &self.vectors
    }

    /// Row `i` pairs to 1 with basis vector `i` and to 0 with the others.
    pub fn dual(&self) -> &[LatticeVector] {
        &self.dual
    }

    /// Integer coordinates of `p` in this basis.
    pub fn coordinates(&self, p: &LatticeVector) -> Result<Vec<i64>> {
        self.dual.iter().map(|d| d.dot(p)).collect()
    }

    /// The functional taking the value 1 on every basis vector.
    pub fn unit_functional(&self) -> Result<LatticeVector> {
        let n = self.vectors.len();
        LatticeVector::checked_sum(n, &self.dual)
    }
}

/// Solves `columns * x = target` over the rationals; returns one solution
/// (the unique one when the columns are independent) or `None`.
pub fn solve_rational(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let rows = target.len();
    let cols = columns.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= y * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Integer coordinates of `point` in the span of `generators`, which the
/// caller guarantees to be part of a `Z`-basis. `None` if `point` is outside
/// the span or the coordinates are not integral.
pub fn solve_in_smooth_cone(
    generators: &[LatticeVector],
    point: &LatticeVector,
) -> Result<Option<Vec<i64>>> {
    for g in generators {
        if g.dim() != point.dim() {
            return Err(LatticeError::DimensionMismatch {
                expected: point.dim(),
                found: g.dim(),
            });
        }
    }
    let columns: Vec<Vec<Rational>> = generators.iter().map(|g| g.to_rationals()).collect();
    let Some(x) = solve_rational(&columns, &point.to_rationals()) else {
        return Ok(None);
    };
    x.into_iter()
        .map(|q| {
            if !q.is_integer() {
                return Ok(None);
            }
            i64::try_from(q.to_integer())
                .map(Some)
                .map_err(|_| LatticeError::Overflow)
        })
        .collect::<Result<Option<Vec<i64>>>>()
}

/// Phase-one simplex with Bland's rule: finds `x >= 0` with `A x = b`.
/// `a` is given row-major (`rows x vars`).
fn phase_one(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let rows = a.len();
    let vars = a.first().map_or(0, Vec::len);
    for (row, rhs) in a.iter_mut().zip(b.iter_mut()) {
        if rhs.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            *rhs = -rhs.clone();
        }
    }
    // Tableau columns: original vars, then one artificial per row.
    let width = vars + rows;
    let mut t: Vec<Vec<Rational>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..rows).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (vars..width).collect();
    let mut cost: Vec<Rational> = (0..width)
        .map(|j| {
            if j < vars {
                -t.iter().map(|row| row[j].clone()).sum::<Rational>()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let mut objective: Rational = b.iter().cloned().sum();

    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &b[i] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let (p, _) = leave?;
        let inv = t[p][enter].recip();
        for x in t[p].iter_mut() {
            *x *= &inv;
        }
        b[p] *= &inv;
        for i in 0..rows {
            if i != p && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                let pivot_row = t[p].clone();
                for (x, y) in t[i].iter_mut().zip(&pivot_row) {
                    *x -= y * &f;
                }
                let d = &b[p] * &f;
                b[i] -= d;
            }
        }
        let f = cost[enter].clone();
        for j in 0..width {
            let d = &t[p][j] * &f;
            cost[j] -= d;
        }
        objective += &b[p] * &f;
        basis[p] = enter;
    }

    if !objective.is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); vars];
    for (i, &v) in basis.iter().enumerate() {
        if v < vars {
            x[v] = b[i].clone();
        }
    }
    Some(x)
}

fn common_len<V: ExactVector>(vectors: &[V], expected: usize) -> Result<()> {
    for v in vectors {
        if v.len() != expected {
            return Err(LatticeError::DimensionMismatch {
                expected,
                found: v.len(),
            });
        }
    }
    Ok(())
}

/// Nonnegative rational coefficients `l` with `sum l_i g_i = target`, if any.
pub fn nonneg_rational_combination<V: ExactVector, T: ExactVector>(
    generators: &[V],
    target: &T,
) -> Result<Option<Vec<Rational>>> {
    let n = target.len();
    common_len(generators, n)?;
    let cols: Vec<Vec<Rational>> = generators.iter().map(ExactVector::to_rationals).collect();
    let a = (0..n)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    Ok(phase_one(a, target.to_rationals()))
}

/// A functional `phi` with `phi(v) >= 1` for every `v` in `positive` and
/// `phi(z) = 0` for every `z` in `zero`, if one exists.
pub fn separating_functional<V: ExactVector>(
    positive: &[V],
    zero: &[V],
) -> Result<Option<RationalVector>> {
    let Some(n) = positive.first().or(zero.first()).map(ExactVector::len) else {
        return Ok(None);
    };
    common_len(positive, n)?;
    common_len(zero, n)?;
    // phi = p - q with p, q >= 0; one surplus variable per positive row.
    let k = positive.len();
    let vars = 2 * n + k;
    let mut a = Vec::with_capacity(k + zero.len());
    let mut b = Vec::with_capacity(k + zero.len());
    for (i, v) in positive.iter().enumerate() {
        let v = v.to_rationals();
        let mut row = vec![Rational::zero(); vars];
        for j in 0..n {
            row[j] = v[j].clone();
            row[n + j] = -v[j].clone();
        }
        row[2 * n + i] = -Rational::one();
        a.push(row);
        b.push(Rational::one());
    }
    for z in zero {
        let z = z.to_rationals();
        let mut row = vec![Rational::zero(); vars];
        for j in 0..n {
            row[j] = z[j].clone();
            row[n + j] = -z[j].clone();
        }
        a.push(row);
        b.push(Rational::zero());
    }
    Ok(phase_one(a, b).map(|x| {
        RationalVector((0..n).map(|j| &x[j] - &x[n + j]).collect())
    }))
}

/// A functional positive on every listed vector; exists iff the cone they
/// generate is strictly convex.
pub fn strictly_positive_functional<V: ExactVector>(vectors: &[V]) -> Result<Option<RationalVector>> {
    if vectors
        .iter()
        .any(|v| v.to_rationals().iter().all(Zero::is_zero))
    {
        return Err(LatticeError::ZeroVector);
    }
    separating_functional(vectors, &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec())
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn primitive_part_extracts_gcd() {
        assert_eq!(primitive_part(&lv(&[2, 4, 6, 0])).unwrap(), (lv(&[1, 2, 3, 0]), 2));
        assert_eq!(primitive_part(&lv(&[1, 1, 1, 0])).unwrap(), (lv(&[1, 1, 1, 0]), 1));
        assert_eq!(primitive_part(&lv(&[-3, 0, 9])).unwrap(), (lv(&[-1, 0, 3]), 3));
        assert_eq!(primitive_part(&lv(&[0, 0, 0, 0])), Err(LatticeError::ZeroVector));
    }

    #[test]
    fn unimodularity() {
        let std4: Vec<_> = (0..4).map(|i| LatticeVector::unit(4, i)).collect();
        assert!(is_unimodular(&std4).unwrap());
        assert!(!is_unimodular(&[lv(&[1, 0]), lv(&[1, 2])]).unwrap());
        assert_eq!(determinant(&[lv(&[1, 0]), lv(&[1, 2])]).unwrap(), 2);
        let p4_cone = [
            lv(&[-1, -1, -1, -1]),
            LatticeVector::unit(4, 0),
            LatticeVector::unit(4, 1),
            LatticeVector::unit(4, 2),
        ];
        assert!(is_unimodular(&p4_cone).unwrap());
        assert!(matches!(
            is_unimodular(&[lv(&[1, 0])]),
            Err(LatticeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn bareiss_needs_pivoting() {
        assert_eq!(determinant(&[lv(&[0, 1]), lv(&[1, 0])]).unwrap(), -1);
        assert_eq!(
            determinant(&[lv(&[0, 0, 1]), lv(&[0, 1, 0]), lv(&[1, 0, 0])]).unwrap(),
            -1
        );
        assert_eq!(determinant(&[lv(&[1, 2]), lv(&[2, 4])]).unwrap(), 0);
    }

    #[test]
    fn overflow_is_reported() {
        let big = lv(&[i64::MAX, 1]);
        assert_eq!(big.checked_add(&lv(&[1, 0])), Err(LatticeError::Overflow));
    }

    #[test]
    fn dual_basis_reads_coordinates() {
        let b = [lv(&[-1, -1, -1, -1]), lv(&[1, 0, 0, 0]), lv(&[0, 1, 0, 0]), lv(&[0, 0, 1, 0])];
        let basis = UnimodularBasis::new(&b).unwrap().unwrap();
        let p = lv(&[3, -2, 5, 7]);
        let c = basis.coordinates(&p).unwrap();
        let mut back = LatticeVector::zero(4);
        for (ci, bi) in c.iter().zip(&b) {
            back = back.checked_add(&bi.checked_scale(*ci).unwrap()).unwrap();
        }
        assert_eq!(back, p);
        assert!(UnimodularBasis::new(&[lv(&[1, 0]), lv(&[1, 2])]).unwrap().is_none());
    }

    #[test]
    fn smooth_cone_coordinates() {
        let e = |i| LatticeVector::unit(4, i);
        assert_eq!(
            solve_in_smooth_cone(&[e(1), e(2), e(3)], &lv(&[0, 1, 1, 1])).unwrap(),
            Some(vec![1, 1, 1])
        );
        assert_eq!(solve_in_smooth_cone(&[e(0)], &e(0)).unwrap(), Some(vec![1]));
        assert_eq!(solve_in_smooth_cone(&[e(0), e(1)], &e(2)).unwrap(), None);
    }

    #[test]
    fn nonneg_combination_basic() {
        let g = vec![lv(&[1, 0]), lv(&[0, 1])];
        assert_eq!(
            nonneg_rational_combination(&g, &lv(&[2, 3])).unwrap(),
            Some(vec![q(2), q(3)])
        );
        assert_eq!(nonneg_rational_combination(&g, &lv(&[-1, 0])).unwrap(), None);
        assert!(matches!(
            nonneg_rational_combination(&g, &lv(&[1, 0, 0])),
            Err(LatticeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn nonneg_combination_fractional() {
        let g = vec![lv(&[2, 0]), lv(&[0, 3])];
        let x = nonneg_rational_combination(&g, &lv(&[1, 1])).unwrap().unwrap();
        assert_eq!(x, vec![Rational::new(1.into(), 2.into()), Rational::new(1.into(), 3.into())]);
    }

    #[test]
    fn positive_functional() {
        let phi = strictly_positive_functional(&[lv(&[1, 0]), lv(&[0, 1])]).unwrap().unwrap();
        assert!(phi.apply(&lv(&[1, 0]).to_rationals()).is_positive());
        assert!(phi.apply(&lv(&[0, 1]).to_rationals()).is_positive());
        assert_eq!(strictly_positive_functional(&[lv(&[1, 0]), lv(&[-1, 0])]).unwrap(), None);
        assert_eq!(
            strictly_positive_functional(&[lv(&[1, 0]), lv(&[0, 0])]),
            Err(LatticeError::ZeroVector)
        );
    }

    #[test]
    fn separating_with_zero_constraints() {
        // phi(e1) >= 1, phi(-e2) >= 1, phi(e3) = 0
        let pos = vec![lv(&[1, 0, 0]), lv(&[0, -1, 0])];
        let zero = vec![lv(&[0, 0, 1])];
        let phi = separating_functional(&pos, &zero).unwrap().unwrap();
        assert!(phi.apply(&pos[0].to_rationals()) >= q(1));
        assert!(phi.apply(&pos[1].to_rationals()) >= q(1));
        assert!(phi.apply(&zero[0].to_rationals()).is_zero());
        // impossible: phi(e1) >= 1 while phi(e1) = 0
        assert_eq!(separating_functional(&[lv(&[1, 0])], &[lv(&[1, 0])]).unwrap(), None);
    }

    #[test]
    fn clear_denominators_scales_to_integers() {
        let v = RationalVector::new(vec![Rational::new(1.into(), 2.into()), Rational::new((-2).into(), 3.into())]);
        assert_eq!(v.clear_denominators(), vec![BigInt::from(3), BigInt::from(-4)]);
    }
}
