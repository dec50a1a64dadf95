//! Dense exact linear algebra over a field: reduced echelon form, nullspace,
//! subspace arithmetic, and canonical subspace representatives.
//!
//! Subspaces are always stored with an RREF basis, so two subspaces are equal
//! as sets exactly when their stored bases are entrywise identical. That
//! makes Grassmannian-point comparison plain structural equality.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::FieldElement;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    DimensionMismatch,
    NotContained,
    Singular,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::DimensionMismatch => write!(f, "dimension mismatch"),
            LinalgError::NotContained => write!(f, "subspace is not contained in the other"),
            LinalgError::Singular => write!(f, "matrix is singular"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for LinalgError {}

/// Row-major dense matrix of [`FieldElement`]s.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<FieldElement>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Matrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![FieldElement::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = FieldElement::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix::new(rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut FieldElement {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<FieldElement> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = FieldElement::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.at(i, k) * rhs.at(k, j));
            }
            acc
        })
    }

    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = FieldElement::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.at(i, k) * &v[k]);
                }
                acc
            })
            .collect()
    }

    /// Reduced row-echelon form (pivots 1, pivot columns cleared).
    pub fn rref(&self) -> Matrix {
        let mut m = self.clone();
        m.rref_in_place();
        m
    }

    fn rref_in_place(&mut self) {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(src) = (pivot_row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for j in 0..self.cols {
                    let a = self.at(src, j).clone();
                    let b = self.at(pivot_row, j).clone();
                    *self.at_mut(src, j) = b;
                    *self.at_mut(pivot_row, j) = a;
                }
            }
            let inv = self.at(pivot_row, col).inverse().expect("pivot is nonzero");
            for j in col..self.cols {
                let v = self.at(pivot_row, j) * &inv;
                *self.at_mut(pivot_row, j) = v;
            }
            for r in 0..self.rows {
                if r == pivot_row || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for j in col..self.cols {
                    let v = self.at(r, j) - &(&factor * self.at(pivot_row, j));
                    *self.at_mut(r, j) = v;
                }
            }
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
    }

    pub fn rank(&self) -> usize {
        let r = self.rref();
        (0..r.rows)
            .filter(|&i| r.row(i).iter().any(|e| !e.is_zero()))
            .count()
    }

    /// Canonical basis of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let r = self.rref();
        let mut pivots = Vec::new();
        let mut pivot_of_row = Vec::new();
        for i in 0..r.rows {
            if let Some(j) = (0..r.cols).find(|&j| !r.at(i, j).is_zero()) {
                pivots.push(j);
                pivot_of_row.push((i, j));
            }
        }
        let mut basis = Vec::new();
        for free in 0..r.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![FieldElement::zero(); r.cols];
            v[free] = FieldElement::one();
            for &(i, p) in &pivot_of_row {
                v[p] = -r.at(i, free);
            }
            basis.push(v);
        }
        Subspace::from_generators(r.cols, basis)
    }

    pub fn det(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = FieldElement::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return FieldElement::zero();
            };
            if src != col {
                det = det.neg();
                for j in 0..n {
                    let a = m.at(src, j).clone();
                    let b = m.at(col, j).clone();
                    *m.at_mut(src, j) = b;
                    *m.at_mut(col, j) = a;
                }
            }
            let p = m.at(col, col).clone();
            det = &det * &p;
            let inv = p.inverse().expect("pivot nonzero");
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col) * &inv;
                for j in col..n {
                    let v = m.at(r, j) - &(&factor * m.at(col, j));
                    *m.at_mut(r, j) = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.at(i, j).clone()
            } else if j - n == i {
                FieldElement::one()
            } else {
                FieldElement::zero()
            }
        });
        aug.rref_in_place();
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { !aug.at(i, j).is_one() } else { !aug.at(i, j).is_zero() };
                if expect {
                    return Err(LinalgError::Singular);
                }
            }
        }
        Ok(Matrix::from_fn(n, n, |i, j| aug.at(i, j + n).clone()))
    }

    /// Solve `self * x = b`; `None` when inconsistent. Free variables are 0.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        aug.rref_in_place();
        let mut x = vec![FieldElement::zero(); self.cols];
        for i in 0..aug.rows {
            let lead = (0..=self.cols).find(|&j| !aug.at(i, j).is_zero());
            match lead {
                None => continue,
                Some(j) if j == self.cols => return None,
                Some(j) => x[j] = aug.at(i, self.cols).clone(),
            }
        }
        Some(x)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of a coordinate space, stored as an RREF basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<FieldElement>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let id = Matrix::identity(ambient);
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| id.row_vec(i)).collect(),
        }
    }

    pub fn from_generators(ambient: usize, gens: Vec<Vec<FieldElement>>) -> Self {
        for g in &gens {
            assert_eq!(g.len(), ambient, "generator length mismatch");
        }
        if gens.is_empty() {
            return Subspace::zero(ambient);
        }
        let m = Matrix::from_rows(gens).rref();
        let basis = (0..m.rows())
            .map(|i| m.row_vec(i))
            .filter(|row| row.iter().any(|e| !e.is_zero()))
            .collect();
        Subspace { ambient, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        // Reduce v against the RREF basis.
        let mut v = v.to_vec();
        for row in &self.basis {
            let pivot = row.iter().position(|e| !e.is_zero()).expect("basis rows nonzero");
            if v[pivot].is_zero() {
                continue;
            }
            let factor = v[pivot].clone();
            for j in 0..self.ambient {
                v[j] = &v[j] - &(&factor * &row[j]);
            }
        }
        v.iter().all(FieldElement::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch);
        }
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Ok(Subspace::from_generators(self.ambient, gens))
    }

    /// Zassenhaus: row-reduce `[A|A; B|0]`; rows with a zero left block carry
    /// the intersection in their right block.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch);
        }
        let n = self.ambient;
        let mut rows = Vec::new();
        for v in &self.basis {
            let mut row = v.clone();
            row.extend(v.iter().cloned());
            rows.push(row);
        }
        for v in &other.basis {
            let mut row = v.clone();
            row.extend(vec![FieldElement::zero(); n]);
            rows.push(row);
        }
        if rows.is_empty() {
            return Ok(Subspace::zero(n));
        }
        let m = Matrix::from_rows(rows).rref();
        let mut gens = Vec::new();
        for i in 0..m.rows() {
            let left_zero = (0..n).all(|j| m.at(i, j).is_zero());
            let right = m.row(i)[n..].to_vec();
            if left_zero && right.iter().any(|e| !e.is_zero()) {
                gens.push(right);
            }
        }
        Ok(Subspace::from_generators(n, gens))
    }

    /// Vectors extending a basis of `sub` to a basis of `self`, chosen by
    /// greedy pivot completion over `self`'s stored basis. Deterministic.
    pub fn quotient_representatives(&self, sub: &Subspace) -> Result<Vec<Vec<FieldElement>>, LinalgError> {
        if self.ambient != sub.ambient {
            return Err(LinalgError::DimensionMismatch);
        }
        if !self.contains_subspace(sub) {
            return Err(LinalgError::NotContained);
        }
        let mut span = sub.clone();
        let mut reps = Vec::new();
        for v in &self.basis {
            if !span.contains(v) {
                reps.push(v.clone());
                span = span.sum(&Subspace::from_generators(self.ambient, vec![v.clone()]))?;
            }
        }
        debug_assert_eq!(span.dim(), self.dim());
        Ok(reps)
    }

    /// Express `v` in terms of the stored basis; `None` if `v` is outside.
    pub fn coordinates_of(&self, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let m = Matrix::from_fn(self.ambient, self.dim(), |i, j| self.basis[j][i].clone());
        let x = m.solve(v)?;
        let check = m.apply(&x);
        if check == v { Some(x) } else { None }
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {}; basis ", self.dim(), self.ambient)?;
        for row in &self.basis {
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "] ")?;
        }
        write!(f, ")")
    }
}

/// Convenience: a standard basis vector.
pub fn unit_vector(n: usize, i: usize) -> Vec<FieldElement> {
    let mut v = vec![FieldElement::zero(); n];
    v[i] = FieldElement::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<FieldElement>> {
        rows.iter().map(|r| r.iter().map(|&x| fe(x)).collect()).collect()
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(3);
        assert_eq!(id.rref(), id);
        let m = Matrix::from_rows(vecs(&[&[2, 4], &[1, 2]]));
        assert_eq!(m.rref(), Matrix::from_rows(vecs(&[&[1, 2], &[0, 0]])));
        let m = Matrix::from_rows(vecs(&[&[0, 1], &[1, 0]]));
        assert_eq!(m.rref(), Matrix::identity(2));
    }

    #[test]
    fn nullspace_examples() {
        let m = Matrix::from_rows(vecs(&[&[1, 1]]));
        let ns = m.nullspace();
        assert_eq!(ns.dim(), 1);
        assert_eq!(ns.basis()[0], alloc::vec![fe(1), fe(-1)]);

        let z = Matrix::zero(2, 3);
        assert_eq!(z.nullspace(), Subspace::full(3));

        let m = Matrix::from_rows(vecs(&[&[1, 0, -1], &[0, 1, 2]]));
        let ns = m.nullspace();
        assert_eq!(ns.dim(), 1);
        assert_eq!(ns.basis()[0], alloc::vec![fe(1), fe(-2), fe(1)]);
    }

    #[test]
    fn subspace_sum_intersect_examples() {
        let e1 = Subspace::from_generators(2, vecs(&[&[1, 0]]));
        let e2 = Subspace::from_generators(2, vecs(&[&[0, 1]]));
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(2));
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        assert_eq!(e1.intersect(&e1).unwrap(), e1);

        let a = Subspace::from_generators(3, vecs(&[&[1, 1, 0], &[0, 0, 1]]));
        let b = Subspace::from_generators(3, vecs(&[&[1, 1, 1]]));
        let cap = a.intersect(&b).unwrap();
        assert_eq!(cap, b);
        // independent membership oracle
        assert!(a.contains(&[fe(1), fe(1), fe(1)]));
        assert!(b.contains(&[fe(1), fe(1), fe(1)]));
    }

    #[test]
    fn membership_examples() {
        let s = Subspace::from_generators(2, vecs(&[&[1, 0]]));
        assert!(s.contains(&[fe(0), fe(0)]));
        assert!(!s.contains(&[fe(1), fe(1)]));
        let line = Subspace::from_generators(3, vecs(&[&[1, -2, 1]]));
        assert!(line.contains(&[fe(2), fe(-4), fe(2)]));
    }

    #[test]
    fn quotient_representatives_examples() {
        let whole = Subspace::full(2);
        let sub = Subspace::from_generators(2, vecs(&[&[1, 0]]));
        let reps = whole.quotient_representatives(&sub).unwrap();
        assert_eq!(reps, vecs(&[&[0, 1]]));
        assert!(whole.quotient_representatives(&whole).unwrap().is_empty());
        let bigger = Subspace::from_generators(2, vecs(&[&[0, 1]]));
        assert_eq!(
            bigger.quotient_representatives(&whole).err(),
            Some(LinalgError::NotContained)
        );
    }

    #[test]
    fn solve_and_inverse() {
        let m = Matrix::from_rows(vecs(&[&[1, 2], &[3, 5]]));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let x = m.solve(&[fe(5), fe(13)]).unwrap();
        assert_eq!(m.apply(&x), alloc::vec![fe(5), fe(13)]);
        let sing = Matrix::from_rows(vecs(&[&[1, 2], &[2, 4]]));
        assert!(sing.inverse().is_err());
        assert_eq!(sing.det(), fe(0));
        assert_eq!(m.det(), fe(-1));
    }
}
