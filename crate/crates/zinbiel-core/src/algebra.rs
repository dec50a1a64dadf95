//! Structure-constant algebras: products, the Zinbiel identity check,
//! annihilators, nilpotency, and base-change-invariant fingerprints.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{unit_vector, Matrix, Subspace};
use crate::rng::SplitMix64;
use crate::scalar::{FieldElement, NumberField};

/// An algebra given by structure constants `e_i * e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    name: Option<String>,
    /// Flattened `n^3` tensor, index `(i*n + j)*n + k`.
    c: Vec<FieldElement>,
}

/// Outcome of the Zinbiel identity check on all basis triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZinbielWitness {
    Holds,
    /// First violating triple (1-indexed) and the nonzero defect vector
    /// `(e_i e_j) e_k - e_i (e_j e_k + e_k e_j)`.
    Violation {
        i: usize,
        j: usize,
        k: usize,
        defect: Vec<FieldElement>,
    },
}

impl ZinbielWitness {
    pub fn holds(&self) -> bool {
        matches!(self, ZinbielWitness::Holds)
    }
}

impl Algebra {
    pub fn zero_algebra(dim: usize) -> Self {
        Algebra {
            dim,
            name: None,
            c: vec![FieldElement::zero(); dim * dim * dim],
        }
    }

    /// Build from 1-indexed product entries `(i, j, k, coeff)` meaning
    /// `e_i e_j += coeff * e_k`; omitted products are zero.
    pub fn from_products(dim: usize, products: &[(usize, usize, usize, FieldElement)]) -> Self {
        let mut a = Algebra::zero_algebra(dim);
        for (i, j, k, v) in products {
            assert!(
                (1..=dim).contains(i) && (1..=dim).contains(j) && (1..=dim).contains(k),
                "product index out of range"
            );
            let idx = ((i - 1) * dim + (j - 1)) * dim + (k - 1);
            a.c[idx] = &a.c[idx] + v;
        }
        a
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(String::from(name));
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Structure constant `c_{ij}^k`, 0-indexed.
    pub fn sc(&self, i: usize, j: usize, k: usize) -> &FieldElement {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn sc_mut(&mut self, i: usize, j: usize, k: usize) -> &mut FieldElement {
        &mut self.c[(i * self.dim + j) * self.dim + k]
    }

    /// The number field shared by the structure constants, if any.
    pub fn field(&self) -> Option<Arc<NumberField>> {
        self.c.iter().find_map(|e| e.field().cloned())
    }

    /// `e_i * e_j` as a coordinate vector (0-indexed).
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<FieldElement> {
        (0..self.dim).map(|k| self.sc(i, j, k).clone()).collect()
    }

    /// Bilinear extension of the structure constants.
    pub fn product(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(x.len(), self.dim, "left factor length mismatch");
        assert_eq!(y.len(), self.dim, "right factor length mismatch");
        let mut out = vec![FieldElement::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let f = &x[i] * &y[j];
                for k in 0..self.dim {
                    if !self.sc(i, j, k).is_zero() {
                        out[k] = &out[k] + &(&f * self.sc(i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Check `(e_i e_j) e_k = e_i (e_j e_k + e_k e_j)` on all basis triples;
    /// sufficient by trilinearity.
    pub fn check_zinbiel(&self) -> ZinbielWitness {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.basis_product(i, j);
                for k in 0..self.dim {
                    let lhs = self.product(&ij, &unit_vector(self.dim, k));
                    let jk = self.basis_product(j, k);
                    let kj = self.basis_product(k, j);
                    let sym: Vec<FieldElement> =
                        jk.iter().zip(&kj).map(|(a, b)| a + b).collect();
                    let rhs = self.product(&unit_vector(self.dim, i), &sym);
                    let defect: Vec<FieldElement> =
                        lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                    if defect.iter().any(|e| !e.is_zero()) {
                        return ZinbielWitness::Violation {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            defect,
                        };
                    }
                }
            }
        }
        ZinbielWitness::Holds
    }

    /// `Ann(A) = {x : xA + Ax = 0}`, via the stacked left/right
    /// multiplication operators.
    pub fn annihilator(&self) -> Subspace {
        let n = self.dim;
        // Conditions: for all j,k: sum_i x_i c_{ij}^k = 0 and sum_i x_i c_{ji}^k = 0.
        let mut rows = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.sc(i, j, k).clone()).collect::<Vec<_>>());
                rows.push((0..n).map(|i| self.sc(j, i, k).clone()).collect::<Vec<_>>());
            }
        }
        Matrix::from_rows(rows).nullspace()
    }

    /// `{x : xA = 0}`.
    pub fn left_annihilator(&self) -> Subspace {
        let n = self.dim;
        let mut rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.sc(i, j, k).clone()).collect::<Vec<_>>());
            }
        }
        Matrix::from_rows(rows).nullspace()
    }

    /// `{x : Ax = 0}`.
    pub fn right_annihilator(&self) -> Subspace {
        let n = self.dim;
        let mut rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.sc(j, i, k).clone()).collect::<Vec<_>>());
            }
        }
        Matrix::from_rows(rows).nullspace()
    }

    /// Span of all products `u*v` with `u in U`, `v in V`.
    pub fn subspace_product(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut gens = Vec::new();
        for a in u.basis() {
            for b in v.basis() {
                gens.push(self.product(a, b));
            }
        }
        Subspace::from_generators(self.dim, gens)
    }

    /// Descending chain `A^1 = A`, `A^{k} = sum_{p+q=k} A^p A^q` (the correct
    /// notion for nonassociative algebras). Returns the chain from `A^1`
    /// until it hits zero or stabilizes.
    pub fn power_chain(&self) -> Vec<Subspace> {
        let mut chain = vec![Subspace::full(self.dim)];
        loop {
            let k = chain.len() + 1; // computing A^k
            let mut acc = Subspace::zero(self.dim);
            for p in 1..k {
                let q = k - p;
                let prod = self.subspace_product(&chain[p - 1], &chain[q - 1]);
                acc = acc.sum(&prod).expect("same ambient");
            }
            let stabilized = acc == *chain.last().unwrap();
            let zero = acc.is_zero();
            chain.push(acc);
            if zero || stabilized {
                return chain;
            }
        }
    }

    /// `(true, index)` with `A^index = 0`, or `(false, 0)` if the chain
    /// stabilizes at a nonzero subspace.
    pub fn is_nilpotent(&self) -> (bool, usize) {
        let chain = self.power_chain();
        if chain.last().unwrap().is_zero() {
            (true, chain.len())
        } else {
            (false, 0)
        }
    }

    /// Transport the structure constants through an invertible base change:
    /// the new basis is `f_j = P e_j` (columns of `P` in old coordinates).
    pub fn transport(&self, p: &Matrix) -> Algebra {
        assert_eq!(p.rows(), self.dim);
        assert_eq!(p.cols(), self.dim);
        let p_inv = p.inverse().expect("base change must be invertible");
        let mut out = Algebra::zero_algebra(self.dim);
        for a in 0..self.dim {
            for b in 0..self.dim {
                let w = self.product(&p.col_vec(a), &p.col_vec(b));
                let coords = p_inv.apply(&w);
                for k in 0..self.dim {
                    *out.sc_mut(a, b, k) = coords[k].clone();
                }
            }
        }
        out
    }

    fn symmetrized_image(&self) -> Subspace {
        let mut gens = Vec::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                let ij = self.basis_product(i, j);
                let ji = self.basis_product(j, i);
                gens.push(ij.iter().zip(&ji).map(|(a, b)| a + b).collect());
            }
        }
        Subspace::from_generators(self.dim, gens)
    }

    fn antisymmetrized_image(&self) -> Subspace {
        let mut gens = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let ij = self.basis_product(i, j);
                let ji = self.basis_product(j, i);
                gens.push(ij.iter().zip(&ji).map(|(a, b)| a - b).collect());
            }
        }
        Subspace::from_generators(self.dim, gens)
    }

    /// Smallest subalgebra containing `s`.
    fn subalgebra_closure(&self, s: &Subspace) -> Subspace {
        let mut cur = s.clone();
        loop {
            let prod = self.subspace_product(&cur, &cur);
            let next = cur.sum(&prod).expect("same ambient");
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    fn left_mul_matrix(&self, x: &[FieldElement]) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| {
            let mut acc = FieldElement::zero();
            for i in 0..self.dim {
                if !x[i].is_zero() {
                    acc = &acc + &(&x[i] * self.sc(i, j, k));
                }
            }
            acc
        })
    }

    fn right_mul_matrix(&self, x: &[FieldElement]) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| {
            let mut acc = FieldElement::zero();
            for i in 0..self.dim {
                if !x[i].is_zero() {
                    acc = &acc + &(self.sc(j, i, k) * &x[i]);
                }
            }
            acc
        })
    }

    /// Base-change-invariant integer tuple used as non-isomorphism evidence.
    ///
    /// Components, in order: dim; nilpotency index (0 when the power chain
    /// stabilizes above zero); the dims of `A^2, A^3, ...` down the chain;
    /// dim Ann, dim left-ann, dim right-ann; dims of the symmetrized and
    /// antisymmetrized product images and of the subalgebra generated by the
    /// symmetrized image; dims of `A*A^2`, `A^2*A`, `A^2 ∩ Ann`; and the
    /// generic ranks of `L_x`, `R_x`, `L_x - R_x`, `L_x + R_x` (maximum over
    /// a fixed deterministic set of rational sample vectors).
    pub fn fingerprint(&self) -> Vec<i64> {
        let mut v: Vec<i64> = Vec::new();
        v.push(self.dim as i64);
        let chain = self.power_chain();
        let (nilp, idx) = if chain.last().unwrap().is_zero() {
            (true, chain.len())
        } else {
            (false, 0)
        };
        v.push(if nilp { idx as i64 } else { 0 });
        for s in &chain[1..] {
            v.push(s.dim() as i64);
        }
        let ann = self.annihilator();
        v.push(ann.dim() as i64);
        v.push(self.left_annihilator().dim() as i64);
        v.push(self.right_annihilator().dim() as i64);
        let sym = self.symmetrized_image();
        let asym = self.antisymmetrized_image();
        v.push(sym.dim() as i64);
        v.push(asym.dim() as i64);
        v.push(self.subalgebra_closure(&sym).dim() as i64);
        let full = Subspace::full(self.dim);
        let a2 = self.subspace_product(&full, &full);
        v.push(self.subspace_product(&full, &a2).dim() as i64);
        v.push(self.subspace_product(&a2, &full).dim() as i64);
        v.push(a2.intersect(&ann).expect("same ambient").dim() as i64);
        let mut rng = SplitMix64::new(0x5eed_f00d);
        let mut max_l = 0;
        let mut max_r = 0;
        let mut max_diff = 0;
        let mut max_sum = 0;
        for _ in 0..12 {
            let x: Vec<FieldElement> = (0..self.dim).map(|_| rng.element(9, 3)).collect();
            let l = self.left_mul_matrix(&x);
            let r = self.right_mul_matrix(&x);
            let diff = Matrix::from_fn(self.dim, self.dim, |i, j| l.at(i, j) - r.at(i, j));
            let sum = Matrix::from_fn(self.dim, self.dim, |i, j| l.at(i, j) + r.at(i, j));
            max_l = max_l.max(l.rank());
            max_r = max_r.max(r.rank());
            max_diff = max_diff.max(diff.rank());
            max_sum = max_sum.max(sum.rank());
        }
        v.push(max_l as i64);
        v.push(max_r as i64);
        v.push(max_diff as i64);
        v.push(max_sum as i64);
        v
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {}", self.dim)?;
        if let Some(n) = &self.name {
            write!(f, ", {n}")?;
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let p = self.basis_product(i, j);
                if p.iter().any(|e| !e.is_zero()) {
                    write!(f, "; e{}e{} =", i + 1, j + 1)?;
                    for (k, c) in p.iter().enumerate() {
                        if !c.is_zero() {
                            write!(f, " {}e{}", c, k + 1)?;
                        }
                    }
                }
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

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
    fn product_examples() {
        let z = z1();
        let e1 = unit_vector(3, 0);
        let e2 = unit_vector(3, 1);
        assert_eq!(
            z.product(&e1, &e2),
            alloc::vec![fe(0), fe(0), FieldElement::from_ratio(1, 2)]
        );
        let zero = alloc::vec![fe(0); 3];
        assert_eq!(z.product(&zero, &e2), zero);
        // N1: (e1+e2)^2 = e3 - e3 = 0
        let a = n1();
        let s: Vec<FieldElement> = alloc::vec![fe(1), fe(1), fe(0)];
        assert_eq!(a.product(&s, &s), zero);
    }

    #[test]
    fn zinbiel_check_examples() {
        assert!(z1().check_zinbiel().holds());
        assert!(Algebra::zero_algebra(3).check_zinbiel().holds());
        // associative but not Zinbiel: e1e1 = e1
        let bad = Algebra::from_products(2, &[(1, 1, 1, fe(1))]);
        match bad.check_zinbiel() {
            ZinbielWitness::Violation { i, j, k, defect } => {
                assert_eq!((i, j, k), (1, 1, 1));
                assert_eq!(defect, alloc::vec![fe(-1), fe(0)]);
            }
            ZinbielWitness::Holds => panic!("expected a violation"),
        }
    }

    #[test]
    fn annihilator_examples() {
        assert_eq!(Algebra::zero_algebra(4).annihilator(), Subspace::full(4));
        let ann = n1c().annihilator();
        assert_eq!(ann.dim(), 2);
        assert!(ann.contains(&unit_vector(3, 1)));
        assert!(ann.contains(&unit_vector(3, 2)));
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(Algebra::zero_algebra(2).is_nilpotent(), (true, 2));
        assert_eq!(n1c().is_nilpotent(), (true, 3));
        assert_eq!(z1().is_nilpotent(), (true, 4));
        // non-nilpotent witness
        let idem = Algebra::from_products(2, &[(1, 1, 1, fe(1))]);
        assert!(!idem.is_nilpotent().0);
    }

    #[test]
    fn fingerprint_separates_n1_from_n1c() {
        assert_ne!(n1().fingerprint(), n1c().fingerprint());
    }

    #[test]
    fn fingerprint_invariant_under_base_change() {
        let mut rng = SplitMix64::new(42);
        for alg in [n1(), n1c(), z1()] {
            let fp = alg.fingerprint();
            for _ in 0..10 {
                let p = loop {
                    let cand = Matrix::from_fn(3, 3, |_, _| {
                        FieldElement::from_rational(Rational::from_int(rng.int_in(-3, 3)))
                    });
                    if !cand.det().is_zero() {
                        break cand;
                    }
                };
                let moved = alg.transport(&p);
                assert!(moved.check_zinbiel().holds());
                assert_eq!(moved.fingerprint(), fp);
            }
        }
    }
}
