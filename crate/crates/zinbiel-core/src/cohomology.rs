//! Second cohomology for the Zinbiel cocycle law `θ(xy,z) = θ(x, yz+zy)`:
//! the spaces `Z²`, `B²`, `H² = Z²/B²`, cocycle radicals, and coordinates of
//! classes with respect to a fixed representative basis.
//!
//! Scalar-valued bilinear forms are written in the `Δ_ij` basis
//! (`Δ_ij(e_l, e_m) = δ_il δ_jm`), flattened row-major to `n²`-vectors.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Algebra;
use crate::linalg::{unit_vector, Matrix, Subspace};
use crate::scalar::FieldElement;

/// A scalar-valued bilinear form on an `n`-dimensional algebra;
/// entry `(i,j)` is `θ(e_i, e_j)`.
#[derive(Clone, PartialEq, Eq)]
pub struct BilinearForm {
    dim: usize,
    values: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CohomologyError {
    /// The form fails the cocycle law; carries the violating triple
    /// (1-indexed) when known.
    NotACocycle { i: usize, j: usize, k: usize },
    /// `B²` not contained in `Z²`: the algebra is not Zinbiel.
    CoboundariesNotCocycles,
    /// Representative classes fail to complete `B²` to `Z²`.
    BadRepresentatives,
    DimensionMismatch,
}

impl fmt::Display for CohomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyError::NotACocycle { i, j, k } => {
                write!(f, "form is not a cocycle: violated at triple ({i},{j},{k})")
            }
            CohomologyError::CoboundariesNotCocycles => {
                write!(f, "coboundaries are not cocycles (algebra is not Zinbiel)")
            }
            CohomologyError::BadRepresentatives => {
                write!(f, "representatives do not complete B2 to Z2")
            }
            CohomologyError::DimensionMismatch => write!(f, "dimension mismatch"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CohomologyError {}

impl BilinearForm {
    pub fn new(values: Matrix) -> Self {
        assert_eq!(values.rows(), values.cols(), "bilinear form must be square");
        BilinearForm {
            dim: values.rows(),
            values,
        }
    }

    pub fn zero(dim: usize) -> Self {
        BilinearForm::new(Matrix::zero(dim, dim))
    }

    /// `Δ_ij` with 1-indexed `i, j`.
    pub fn delta(dim: usize, i: usize, j: usize) -> Self {
        assert!((1..=dim).contains(&i) && (1..=dim).contains(&j));
        let mut m = Matrix::zero(dim, dim);
        *m.at_mut(i - 1, j - 1) = FieldElement::one();
        BilinearForm::new(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &Matrix {
        &self.values
    }

    pub fn value_at(&self, i: usize, j: usize) -> &FieldElement {
        self.values.at(i, j)
    }

    pub fn eval(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut acc = FieldElement::zero();
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if !y[j].is_zero() && !self.values.at(i, j).is_zero() {
                    acc = &acc + &(&(&x[i] * &y[j]) * self.values.at(i, j));
                }
            }
        }
        acc
    }

    /// Row-major flattening into an `n²` coordinate vector.
    pub fn to_flat(&self) -> Vec<FieldElement> {
        let mut v = Vec::with_capacity(self.dim * self.dim);
        for i in 0..self.dim {
            v.extend(self.values.row(i).iter().cloned());
        }
        v
    }

    pub fn from_flat(dim: usize, flat: &[FieldElement]) -> Self {
        assert_eq!(flat.len(), dim * dim);
        BilinearForm::new(Matrix::new(dim, dim, flat.to_vec()))
    }

    pub fn add(&self, other: &BilinearForm) -> BilinearForm {
        assert_eq!(self.dim, other.dim);
        BilinearForm::new(Matrix::from_fn(self.dim, self.dim, |i, j| {
            self.values.at(i, j) + other.values.at(i, j)
        }))
    }

    pub fn scale(&self, c: &FieldElement) -> BilinearForm {
        BilinearForm::new(Matrix::from_fn(self.dim, self.dim, |i, j| {
            c * self.values.at(i, j)
        }))
    }

    /// Linear combination `sum_k coeffs[k] * forms[k]`.
    pub fn combine(dim: usize, coeffs: &[FieldElement], forms: &[BilinearForm]) -> BilinearForm {
        assert_eq!(coeffs.len(), forms.len());
        let mut acc = BilinearForm::zero(dim);
        for (c, f) in coeffs.iter().zip(forms) {
            acc = acc.add(&f.scale(c));
        }
        acc
    }

    /// First violated triple of the cocycle law, if any (1-indexed).
    pub fn cocycle_violation(&self, a: &Algebra) -> Option<(usize, usize, usize)> {
        let n = a.dim();
        assert_eq!(n, self.dim);
        for i in 0..n {
            for j in 0..n {
                let ij = a.basis_product(i, j);
                for k in 0..n {
                    let lhs = self.eval(&ij, &unit_vector(n, k));
                    let jk = a.basis_product(j, k);
                    let kj = a.basis_product(k, j);
                    let sym: Vec<FieldElement> = jk.iter().zip(&kj).map(|(x, y)| x + y).collect();
                    let rhs = self.eval(&unit_vector(n, i), &sym);
                    if lhs != rhs {
                        return Some((i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        None
    }

    pub fn is_cocycle(&self, a: &Algebra) -> bool {
        self.cocycle_violation(a).is_none()
    }

    /// `Ann(θ) = {x : θ(x, A) + θ(A, x) = 0}`.
    pub fn radical(&self) -> Subspace {
        let n = self.dim;
        let mut rows = Vec::with_capacity(2 * n);
        for j in 0..n {
            // θ(x, e_j) = sum_i x_i θ_ij
            rows.push((0..n).map(|i| self.values.at(i, j).clone()).collect::<Vec<_>>());
        }
        for i in 0..n {
            // θ(e_i, x) = sum_j θ_ij x_j
            rows.push(self.values.row(i).to_vec());
        }
        Matrix::from_rows(rows).nullspace()
    }
}

impl fmt::Debug for BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.values.at(i, j);
                if !v.is_zero() {
                    if !first {
                        write!(f, " + ")?;
                    }
                    write!(f, "{} D{}{}", v, i + 1, j + 1)?;
                    first = false;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Intersection of the radicals of an `s`-tuple of forms; the full space for
/// an empty tuple.
pub fn tuple_radical(dim: usize, forms: &[BilinearForm]) -> Subspace {
    let mut acc = Subspace::full(dim);
    for f in forms {
        acc = acc.intersect(&f.radical()).expect("same ambient");
    }
    acc
}

/// Canonical basis of `Z²(A, C)` inside the `n²`-dimensional form space.
pub fn cocycle_space(a: &Algebra) -> Subspace {
    let n = a.dim();
    // Unknowns θ_lm (row-major). Equation per triple (i,j,k):
    //   sum_l c_ij^l θ_lk - sum_m s_jk^m θ_im = 0,  s_jk = e_j e_k + e_k e_j.
    let mut rows = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let cij = a.basis_product(i, j);
            for k in 0..n {
                let jk = a.basis_product(j, k);
                let kj = a.basis_product(k, j);
                let mut row = vec![FieldElement::zero(); n * n];
                for (l, cl) in cij.iter().enumerate() {
                    row[l * n + k] = &row[l * n + k] + cl;
                }
                for m in 0..n {
                    let s = &jk[m] + &kj[m];
                    row[i * n + m] = &row[i * n + m] - &s;
                }
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(rows).nullspace()
}

/// Canonical basis of `B²(A, C) = {δf : δf(x,y) = f(xy)}`; spanned by the
/// `k`-slices of the structure tensor.
pub fn coboundary_space(a: &Algebra) -> Subspace {
    let n = a.dim();
    let mut gens = Vec::with_capacity(n);
    for t in 0..n {
        let mut flat = vec![FieldElement::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                flat[i * n + j] = a.sc(i, j, t).clone();
            }
        }
        gens.push(flat);
    }
    Subspace::from_generators(n * n, gens)
}

/// A fixed presentation of `H²(A, C)`: `Z²`, `B²`, and representative forms
/// whose classes are a basis of the quotient.
#[derive(Clone)]
pub struct Cohomology {
    dim: usize,
    z2: Subspace,
    b2: Subspace,
    /// Flattened representative forms; their classes are the `∇` basis.
    reps: Vec<Vec<FieldElement>>,
}

impl Cohomology {
    /// Default representative basis by pivot completion of `B²` inside `Z²`.
    pub fn compute(a: &Algebra) -> Result<Self, CohomologyError> {
        let z2 = cocycle_space(a);
        let b2 = coboundary_space(a);
        if !z2.contains_subspace(&b2) {
            return Err(CohomologyError::CoboundariesNotCocycles);
        }
        let reps = z2
            .quotient_representatives(&b2)
            .map_err(|_| CohomologyError::CoboundariesNotCocycles)?;
        Ok(Cohomology {
            dim: a.dim(),
            z2,
            b2,
            reps,
        })
    }

    /// Use a caller-supplied representative basis (e.g. the ∇ dictionary of a
    /// catalog algebra) after validating it.
    pub fn with_representatives(
        a: &Algebra,
        reps: &[BilinearForm],
    ) -> Result<Self, CohomologyError> {
        let auto = Cohomology::compute(a)?;
        if reps.len() != auto.h2_dim() {
            return Err(CohomologyError::BadRepresentatives);
        }
        let mut flat_reps = Vec::with_capacity(reps.len());
        let mut span = auto.b2.clone();
        for f in reps {
            if let Some((i, j, k)) = f.cocycle_violation(a) {
                return Err(CohomologyError::NotACocycle { i, j, k });
            }
            let flat = f.to_flat();
            span = span
                .sum(&Subspace::from_generators(a.dim() * a.dim(), vec![flat.clone()]))
                .map_err(|_| CohomologyError::DimensionMismatch)?;
            flat_reps.push(flat);
        }
        if span != auto.z2 {
            return Err(CohomologyError::BadRepresentatives);
        }
        Ok(Cohomology {
            dim: a.dim(),
            z2: auto.z2,
            b2: auto.b2,
            reps: flat_reps,
        })
    }

    pub fn algebra_dim(&self) -> usize {
        self.dim
    }

    pub fn z2(&self) -> &Subspace {
        &self.z2
    }

    pub fn b2(&self) -> &Subspace {
        &self.b2
    }

    pub fn h2_dim(&self) -> usize {
        self.z2.dim() - self.b2.dim()
    }

    pub fn representatives(&self) -> Vec<BilinearForm> {
        self.reps
            .iter()
            .map(|f| BilinearForm::from_flat(self.dim, f))
            .collect()
    }

    /// H²-coordinates of a cocycle with respect to the representative basis
    /// (i.e. reduce mod `B²`).
    pub fn reduce(&self, form: &BilinearForm) -> Result<Vec<FieldElement>, CohomologyError> {
        if form.dim() != self.dim {
            return Err(CohomologyError::DimensionMismatch);
        }
        let n2 = self.dim * self.dim;
        let h = self.reps.len();
        let b = self.b2.dim();
        let m = Matrix::from_fn(n2, h + b, |i, j| {
            if j < h {
                self.reps[j][i].clone()
            } else {
                self.b2.basis()[j - h][i].clone()
            }
        });
        let flat = form.to_flat();
        match m.solve(&flat) {
            Some(x) if m.apply(&x) == flat => Ok(x[..h].to_vec()),
            _ => Err(CohomologyError::NotACocycle { i: 0, j: 0, k: 0 }),
        }
    }

    /// Rebuild a representative form from H²-coordinates.
    pub fn form_from_coords(&self, coords: &[FieldElement]) -> BilinearForm {
        assert_eq!(coords.len(), self.reps.len());
        let mut flat = vec![FieldElement::zero(); self.dim * self.dim];
        for (c, rep) in coords.iter().zip(&self.reps) {
            for (slot, r) in flat.iter_mut().zip(rep) {
                *slot = &*slot + &(c * r);
            }
        }
        BilinearForm::from_flat(self.dim, &flat)
    }

    /// `W = <[θ_1], ..., [θ_s]>` as a canonical subspace of H²-coordinates.
    pub fn class_subspace(&self, forms: &[BilinearForm]) -> Result<Subspace, CohomologyError> {
        let mut gens = Vec::with_capacity(forms.len());
        for f in forms {
            gens.push(self.reduce(f)?);
        }
        Ok(Subspace::from_generators(self.reps.len(), gens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn n1c() -> Algebra {
        Algebra::from_products(3, &[(1, 1, 2, fe(1))])
    }

    fn n1() -> Algebra {
        Algebra::from_products(3, &[(1, 2, 3, fe(1)), (2, 1, 3, fe(-1))])
    }

    fn z1() -> Algebra {
        Algebra::from_products(
            3,
            &[
                (1, 1, 2, fe(1)),
                (1, 2, 3, FieldElement::from_ratio(1, 2)),
                (2, 1, 3, fe(1)),
            ],
        )
    }

    #[test]
    fn cocycle_space_dims() {
        assert_eq!(cocycle_space(&Algebra::zero_algebra(3)).dim(), 9);
        assert_eq!(cocycle_space(&n1c()).dim(), 5);
        assert_eq!(cocycle_space(&z1()).dim(), 3);
        assert_eq!(cocycle_space(&n1()).dim(), 6);
    }

    #[test]
    fn coboundary_space_examples() {
        assert!(coboundary_space(&Algebra::zero_algebra(3)).is_zero());
        let b = coboundary_space(&n1());
        assert_eq!(b.dim(), 1);
        let d12_minus_d21 = BilinearForm::delta(3, 1, 2)
            .add(&BilinearForm::delta(3, 2, 1).scale(&fe(-1)));
        assert!(b.contains(&d12_minus_d21.to_flat()));
        let b = coboundary_space(&n1c());
        assert_eq!(b.dim(), 1);
        assert!(b.contains(&BilinearForm::delta(3, 1, 1).to_flat()));
    }

    #[test]
    fn h2_dims_match_table() {
        assert_eq!(Cohomology::compute(&n1c()).unwrap().h2_dim(), 4);
        assert_eq!(Cohomology::compute(&n1()).unwrap().h2_dim(), 5);
        let z = Cohomology::compute(&z1()).unwrap();
        assert_eq!(z.h2_dim(), 1);
        // the stated class 2Δ13 + 3Δ22 + 6Δ31 spans H²(Z1)
        let theta = BilinearForm::combine(
            3,
            &[fe(2), fe(3), fe(6)],
            &[
                BilinearForm::delta(3, 1, 3),
                BilinearForm::delta(3, 2, 2),
                BilinearForm::delta(3, 3, 1),
            ],
        );
        assert!(theta.is_cocycle(&z1()));
        let cls = z.class_subspace(&[theta]).unwrap();
        assert_eq!(cls.dim(), 1);
    }

    #[test]
    fn class_subspace_examples() {
        let a = n1c();
        // ∇ dictionary of N1C
        let nabla = [
            BilinearForm::delta(3, 1, 2).add(&BilinearForm::delta(3, 2, 1).scale(&fe(2))),
            BilinearForm::delta(3, 1, 3),
            BilinearForm::delta(3, 3, 1),
            BilinearForm::delta(3, 3, 3),
        ];
        let coh = Cohomology::with_representatives(&a, &nabla).unwrap();
        // coboundaries reduce to zero
        let cob = BilinearForm::delta(3, 1, 1);
        assert_eq!(coh.class_subspace(&[cob.clone()]).unwrap().dim(), 0);
        // Δ12 + 2Δ21 + Δ33 -> line <∇1 + ∇4>
        let theta = nabla[0].add(&nabla[3]);
        let cls = coh.class_subspace(&[theta.clone()]).unwrap();
        assert_eq!(cls.basis(), &[alloc::vec![fe(1), fe(0), fe(0), fe(1)]]);
        // coboundary shift does not change the class line
        let shifted = theta.add(&cob.scale(&fe(7)));
        assert_eq!(coh.class_subspace(&[shifted]).unwrap(), cls);
        // {∇1 + c Δ11, ∇1} spans the same line <∇1>
        let f1 = nabla[0].add(&cob.scale(&fe(5)));
        let cls2 = coh.class_subspace(&[f1, nabla[0].clone()]).unwrap();
        assert_eq!(cls2.basis(), &[alloc::vec![fe(1), fe(0), fe(0), fe(0)]]);
    }

    #[test]
    fn radical_examples() {
        assert_eq!(BilinearForm::zero(3).radical(), Subspace::full(3));
        // N1C: ∇1+∇4 = Δ12 + 2Δ21 + Δ33 has zero radical
        let theta = BilinearForm::combine(
            3,
            &[fe(1), fe(2), fe(1)],
            &[
                BilinearForm::delta(3, 1, 2),
                BilinearForm::delta(3, 2, 1),
                BilinearForm::delta(3, 3, 3),
            ],
        );
        assert!(theta.radical().is_zero());
        // N1: Δ13 has radical <e2>
        let d13 = BilinearForm::delta(3, 1, 3);
        let rad = d13.radical();
        assert_eq!(rad.dim(), 1);
        assert!(rad.contains(&unit_vector(3, 1)));
    }

    #[test]
    fn b2_contained_in_z2_for_zinbiel() {
        for a in [n1c(), n1(), z1()] {
            assert!(cocycle_space(&a).contains_subspace(&coboundary_space(&a)));
        }
    }
}
