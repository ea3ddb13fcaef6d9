//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers: image towers and
//! matrix powers grow exponentially, and a wrapped entry would silently flip
//! a verdict. Matrices act on row vectors (`v ↦ v·M`), matching the row
//! convention used for abelianised endomorphisms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bigint_serde::Big;
use crate::error::{Error, Result};

/// A dense integer matrix stored in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from rows of small integers.
    ///
    /// Panics if the rows are ragged; intended for literals and tests.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged matrix literal");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Self { rows: rows.len(), cols, entries }
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Self { rows: n, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exponent: u32) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "power of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut result = IntMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(result)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} against a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += vi * self.get(i, j);
            }
        }
        Ok(out)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        hermite_rows(self.to_rows(), self.cols).len()
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Big>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().cloned().map(Big).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.entries.len() != repr.rows {
            return Err(serde::de::Error::custom("row count does not match entries"));
        }
        let rows = repr.entries.into_iter().map(|r| r.into_iter().map(|b| b.0).collect()).collect();
        IntMatrix::from_big_rows(rows, repr.cols).map_err(serde::de::Error::custom)
    }
}

/// Invariant factors `d_1 | d_2 | … | d_m` with `m = min(rows, cols)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    #[serde(with = "crate::bigint_serde::vec")]
    pub invariants: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form by elementary elimination, pivoting on the smallest
/// nonzero absolute value in the remaining block.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.to_rows();
    let size = rows.min(cols);
    let mut invariants = Vec::with_capacity(size);

    for t in 0..size {
        while let Some((pi, pj)) = smallest_nonzero(&a, t) {
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = a[t][t].clone();

            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &pivot;
                let (head, tail) = a.split_at_mut(i);
                for (x, p) in tail[0].iter_mut().zip(&head[t]).skip(t) {
                    *x -= &q * p;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &pivot;
                for row in a.iter_mut().skip(t) {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                continue;
            }

            // Divisibility: fold an offending row into the pivot row and redo.
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t].iter_mut().zip(&tail[0]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        invariants.push(a[t][t].abs());
    }
    SmithForm { invariants }
}

fn smallest_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    m.require_square("determinant")?;
    Ok(bareiss(m.to_rows()))
}

fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Whether some power of a non-negative square matrix is strictly positive.
///
/// Powers are tested up to the Wielandt bound `(r-1)^2 + 1`, past which a
/// primitive matrix is guaranteed to have become positive.
pub fn is_primitive_matrix(m: &IntMatrix) -> Result<bool> {
    m.require_square("primitivity test")?;
    if let Some(x) = m.entries.iter().find(|x| x.is_negative()) {
        return Err(Error::Domain(format!("primitivity needs non-negative entries, found {x}")));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(false);
    }
    let pattern: Vec<bool> = m.entries.iter().map(|x| !x.is_zero()).collect();
    let bound = (n - 1) * (n - 1) + 1;
    let mut power = pattern.clone();
    for _ in 0..bound {
        if power.iter().all(|&p| p) {
            return Ok(true);
        }
        let mut next = vec![false; n * n];
        for i in 0..n {
            for k in 0..n {
                if !power[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    next[i * n + j] |= pattern[k * n + j];
                }
            }
        }
        power = next;
    }
    Ok(power.iter().all(|&p| p))
}

/// Coefficients of `det(xI - M)`, leading coefficient first.
pub fn characteristic_polynomial(m: &IntMatrix) -> Result<Vec<BigInt>> {
    m.require_square("characteristic polynomial")?;
    // Faddeev–LeVerrier; every division below is exact over the integers.
    let n = m.rows;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[0] = BigInt::one();
    let mut aux = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&aux)?;
        for i in 0..n {
            next.entries[i * n + i] += &coeffs[k - 1];
        }
        let product = m.mul(&next)?;
        let trace: BigInt = (0..n).map(|i| product.get(i, i).clone()).sum();
        coeffs[k] = -trace / BigInt::from(k);
        aux = next;
    }
    Ok(coeffs)
}

/// Row-style Hermite normal form of the span of `rows`: positive pivots,
/// entries above each pivot reduced into `[0, pivot)`, zero rows dropped.
fn hermite_rows(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == rows.len() {
            break;
        }
        let mut found = false;
        loop {
            let best = (pivot_row..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&x, &y| rows[x][col].abs().cmp(&rows[y][col].abs()));
            let Some(best) = best else {
                break;
            };
            found = true;
            rows.swap(pivot_row, best);
            let mut cleared = true;
            for i in pivot_row + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[pivot_row][col]);
                let (head, tail) = rows.split_at_mut(i);
                for (x, p) in tail[0].iter_mut().zip(&head[pivot_row]) {
                    *x -= &q * p;
                }
                cleared &= rows[i][col].is_zero();
            }
            if cleared {
                break;
            }
        }
        if !found {
            continue;
        }
        if rows[pivot_row][col].is_negative() {
            for x in rows[pivot_row].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..pivot_row {
            let q = rows[i][col].div_floor(&rows[pivot_row][col]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(pivot_row);
            for (x, p) in head[i].iter_mut().zip(&tail[0]) {
                *x -= &q * p;
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    rows
}

/// A sublattice of `Z^r`, held by its Hermite normal form basis so that two
/// values describe the same sublattice exactly when they compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn full(ambient_rank: usize) -> Self {
        Self { ambient_rank, basis: IntMatrix::identity(ambient_rank) }
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Self { ambient_rank, basis: IntMatrix::zeros(0, ambient_rank) }
    }

    /// The sublattice spanned by the given vectors.
    pub fn span(ambient_rank: usize, generators: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient_rank) {
            return Err(Error::Dimension(format!(
                "generator of length {} in Z^{ambient_rank}",
                g.len()
            )));
        }
        let rows = hermite_rows(generators, ambient_rank);
        let basis = IntMatrix::from_big_rows(rows, ambient_rank)?;
        Ok(Self { ambient_rank, basis })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Whether `other` is contained in `self`.
    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        check_same_ambient(self, other)?;
        let mut gens = self.basis.to_rows();
        gens.extend(other.basis.to_rows());
        Ok(Lattice::span(self.ambient_rank, gens)? == *self)
    }

    fn pivot_columns(&self) -> Vec<usize> {
        (0..self.basis.rows)
            .map(|i| {
                self.basis
                    .row(i)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("HNF rows are nonzero")
            })
            .collect()
    }
}

fn check_same_ambient(a: &Lattice, b: &Lattice) -> Result<()> {
    if a.ambient_rank != b.ambient_rank {
        return Err(Error::Dimension(format!(
            "lattices in Z^{} and Z^{}",
            a.ambient_rank, b.ambient_rank
        )));
    }
    Ok(())
}

/// The sublattice spanned by `v·m` for each basis vector `v` of `l`.
pub fn lattice_image(m: &IntMatrix, l: &Lattice) -> Result<Lattice> {
    if !m.is_square() || m.rows != l.ambient_rank {
        return Err(Error::Dimension(format!(
            "{}x{} matrix acting on Z^{}",
            m.rows, m.cols, l.ambient_rank
        )));
    }
    let images = (0..l.basis.rows)
        .map(|i| m.apply_row(l.basis.row(i)))
        .collect::<Result<Vec<_>>>()?;
    Lattice::span(l.ambient_rank, images)
}

pub fn lattice_equal(a: &Lattice, b: &Lattice) -> Result<bool> {
    check_same_ambient(a, b)?;
    Ok(a == b)
}

/// Determinant of `v ↦ v·m` restricted to an invariant lattice `l`,
/// written in the basis of `l`.
///
/// The image must lie in `l` and have full rank there. For the zero lattice
/// the empty determinant `1` is returned.
pub fn restricted_determinant(m: &IntMatrix, l: &Lattice) -> Result<BigInt> {
    let image = lattice_image(m, l)?;
    if !l.contains_lattice(&image)? {
        return Err(Error::Consistency("lattice is not invariant under the matrix".into()));
    }
    if image.rank() != l.rank() {
        return Err(Error::Consistency(format!(
            "map drops rank on the lattice ({} -> {})",
            l.rank(),
            image.rank()
        )));
    }
    // With B the basis and C = B·m, C = T·B for an integer T. On the pivot
    // columns of the HNF, B is upper triangular with positive diagonal P, so
    // det T = det(C restricted to pivots) / det P.
    let pivots = l.pivot_columns();
    let images: Vec<Vec<BigInt>> = (0..l.rank())
        .map(|i| m.apply_row(l.basis.row(i)))
        .collect::<Result<_>>()?;
    let restricted: Vec<Vec<BigInt>> =
        images.iter().map(|row| pivots.iter().map(|&c| row[c].clone()).collect()).collect();
    let numerator = bareiss(restricted);
    let denominator: BigInt = pivots.iter().enumerate().map(|(i, &c)| l.basis.get(i, c).clone()).product();
    let (q, r) = numerator.div_rem(&denominator);
    if !r.is_zero() {
        return Err(Error::Consistency("restricted map is not integral".into()));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_examples() {
        assert_eq!(smith_normal_form(&IntMatrix::identity(2)).invariants, big(&[1, 1]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[[3, 2], [3, 2]])).invariants, big(&[1, 0]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[[1, 1], [1, 0]])).invariants, big(&[1, 1]));
    }

    #[test]
    fn smith_needs_divisibility_fix() {
        // diag(2, 3) is already diagonal but 2 does not divide 3.
        let m = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        assert_eq!(smith_normal_form(&m).invariants, big(&[1, 6]));
        let m = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        assert_eq!(smith_normal_form(&m).invariants, big(&[2, 6, 12]));
    }

    #[test]
    fn smith_rectangular() {
        let m = IntMatrix::from_rows(&[[2, 4, 6]]);
        assert_eq!(smith_normal_form(&m).invariants, big(&[2]));
        assert_eq!(smith_normal_form(&IntMatrix::zeros(2, 3)).invariants, big(&[0, 0]));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&IntMatrix::identity(3)).unwrap(), BigInt::from(1));
        assert_eq!(determinant(&IntMatrix::from_rows(&[[1, 1], [1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(determinant(&IntMatrix::from_rows(&[[3, 2], [3, 2]])).unwrap(), BigInt::from(0));
        assert_eq!(determinant(&IntMatrix::from_rows(&[[0, 1, 2], [1, 0, 3], [4, -3, 8]])).unwrap(), BigInt::from(-2));
        assert!(matches!(determinant(&IntMatrix::zeros(2, 3)), Err(Error::Dimension(_))));
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_primitive_matrix(&IntMatrix::from_rows(&[[1, 1], [1, 0]])).unwrap());
        assert!(!is_primitive_matrix(&IntMatrix::identity(2)).unwrap());
        assert!(!is_primitive_matrix(&IntMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap());
        assert!(matches!(
            is_primitive_matrix(&IntMatrix::from_rows(&[[1, -1], [1, 0]])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn wielandt_matrix_needs_full_bound() {
        // The Wielandt matrix of size 3 first becomes positive at power 5.
        let w = IntMatrix::from_rows(&[[0, 1, 0], [0, 0, 1], [1, 1, 0]]);
        assert!(is_primitive_matrix(&w).unwrap());
        let p4 = w.pow(4).unwrap();
        assert!(p4.entries().iter().any(|x| x.is_zero()));
        assert!(w.pow(5).unwrap().entries().iter().all(|x| x.is_positive()));
    }

    #[test]
    fn lattice_examples() {
        let z1 = Lattice::full(1);
        let two = lattice_image(&IntMatrix::from_rows(&[[2]]), &z1).unwrap();
        assert_eq!(two.basis(), &IntMatrix::from_rows(&[[2]]));
        assert!(!lattice_equal(&z1, &two).unwrap());

        let l = Lattice::span(2, vec![big(&[1, 1]), big(&[0, 2])]).unwrap();
        assert_eq!(lattice_image(&IntMatrix::identity(2), &l).unwrap(), l);

        let img = lattice_image(&IntMatrix::from_rows(&[[3, 2], [3, 2]]), &Lattice::full(2)).unwrap();
        assert_eq!(img.rank(), 1);
        assert_eq!(img.basis(), &IntMatrix::from_rows(&[[3, 2]]));
    }

    #[test]
    fn lattice_equality_by_cosets() {
        let a = Lattice::span(2, vec![big(&[1, 1]), big(&[0, 2])]).unwrap();
        let b = Lattice::span(2, vec![big(&[1, -1]), big(&[0, 2])]).unwrap();
        // Oracle: both lattices contain 2Z^2, so compare their images mod 2.
        let cosets = |gens: &[[i64; 2]]| {
            let mut set = std::collections::BTreeSet::new();
            for x in 0..2 {
                for y in 0..2 {
                    let v = [
                        (x * gens[0][0] + y * gens[1][0]).rem_euclid(2),
                        (x * gens[0][1] + y * gens[1][1]).rem_euclid(2),
                    ];
                    set.insert(v);
                }
            }
            set
        };
        assert_eq!(cosets(&[[1, 1], [0, 2]]), cosets(&[[1, -1], [0, 2]]));
        assert!(lattice_equal(&a, &b).unwrap());
        assert!(matches!(lattice_equal(&a, &Lattice::full(3)), Err(Error::Dimension(_))));
    }

    #[test]
    fn hnf_shape() {
        let l = Lattice::span(3, vec![big(&[4, 6, 2]), big(&[2, 3, 7]), big(&[6, 9, 9])]).unwrap();
        let b = l.basis();
        assert_eq!(b.rows(), 2);
        assert_eq!(b, &IntMatrix::from_rows(&[[2, 3, 7], [0, 0, 12]]));
    }

    #[test]
    fn restricted_determinants() {
        let fib = IntMatrix::from_rows(&[[1, 1], [1, 0]]);
        assert_eq!(restricted_determinant(&fib, &Lattice::full(2)).unwrap(), BigInt::from(-1));
        let m = IntMatrix::from_rows(&[[3, 2], [3, 2]]);
        let plateau = lattice_image(&m, &Lattice::full(2)).unwrap();
        assert_eq!(restricted_determinant(&m, &plateau).unwrap(), BigInt::from(5));
        assert_eq!(restricted_determinant(&m, &Lattice::zero(2)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn characteristic_polynomials() {
        let fib = IntMatrix::from_rows(&[[1, 1], [1, 0]]);
        assert_eq!(characteristic_polynomial(&fib).unwrap(), big(&[1, -1, -1]));
        let m = IntMatrix::from_rows(&[[2, 0, 0], [0, 3, 0], [0, 0, 5]]);
        assert_eq!(characteristic_polynomial(&m).unwrap(), big(&[1, -10, 31, -30]));
    }

    #[test]
    fn matrix_serde_round_trip() {
        let m = IntMatrix::from_rows(&[[3, 2], [3, 2]]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"rows":2,"cols":2,"entries":[[3,2],[3,2]]}"#);
        let back: IntMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        let huge = IntMatrix::new(1, 1, vec![BigInt::from(10).pow(30)]).unwrap();
        let back: IntMatrix = serde_json::from_str(&serde_json::to_string(&huge).unwrap()).unwrap();
        assert_eq!(back, huge);
    }
}
