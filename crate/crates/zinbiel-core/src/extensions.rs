//! Central extensions `A_θ = A ⊕ V` with product `xy + θ(x,y)`, the
//! admissibility test for `T_s`, the annihilator-component criterion, and
//! the quotient reconstruction of an algebra from `A/Ann(A)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Algebra;
use crate::cohomology::{tuple_radical, BilinearForm, Cohomology, CohomologyError};
use crate::linalg::{unit_vector, Matrix, Subspace};
use crate::scalar::FieldElement;

/// A base algebra together with an ordered `s`-tuple of cocycles; the data
/// of an `s`-dimensional central extension.
#[derive(Clone)]
pub struct ExtensionSpec {
    pub base: Algebra,
    pub cocycles: Vec<BilinearForm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionError {
    /// Cocycle `index` (0-based) violates the cocycle law at the triple.
    NotACocycle {
        index: usize,
        i: usize,
        j: usize,
        k: usize,
    },
    /// `Ann(θ) ∩ Ann(A) = 0` was required but does not hold.
    RadicalMeetsAnnihilator,
    /// The algebra has zero annihilator, so there is nothing to quotient by.
    NoAnnihilator,
    /// The two independent computations of `Ann(A_θ)` disagree.
    AnnihilatorFormulaMismatch,
    Cohomology(CohomologyError),
}

impl fmt::Display for ExtensionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionError::NotACocycle { index, i, j, k } => write!(
                f,
                "cocycle #{index} violates the cocycle condition at triple ({i},{j},{k})"
            ),
            ExtensionError::RadicalMeetsAnnihilator => {
                write!(f, "Ann(theta) meets Ann(A) nontrivially")
            }
            ExtensionError::NoAnnihilator => write!(f, "no annihilator"),
            ExtensionError::AnnihilatorFormulaMismatch => {
                write!(f, "annihilator formula Ann(A_theta) = (Ann(theta) ∩ Ann(A)) ⊕ V failed")
            }
            ExtensionError::Cohomology(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ExtensionError {}

impl From<CohomologyError> for ExtensionError {
    fn from(e: CohomologyError) -> Self {
        ExtensionError::Cohomology(e)
    }
}

impl ExtensionSpec {
    pub fn new(base: Algebra, cocycles: Vec<BilinearForm>) -> Self {
        ExtensionSpec { base, cocycles }
    }

    pub fn s(&self) -> usize {
        self.cocycles.len()
    }

    fn validate_cocycles(&self) -> Result<(), ExtensionError> {
        for (index, theta) in self.cocycles.iter().enumerate() {
            if let Some((i, j, k)) = theta.cocycle_violation(&self.base) {
                return Err(ExtensionError::NotACocycle { index, i, j, k });
            }
        }
        Ok(())
    }
}

/// Build `A_θ` of dimension `n+s` with
/// `e_i e_j = (base product) + sum_k θ_k(e_i, e_j) e_{n+k}`.
pub fn central_extension(spec: &ExtensionSpec) -> Result<Algebra, ExtensionError> {
    spec.validate_cocycles()?;
    Ok(central_extension_unchecked(&spec.base, &spec.cocycles))
}

/// Same construction without the cocycle validation; used by tests that
/// deliberately feed non-cocycles.
pub fn central_extension_unchecked(base: &Algebra, cocycles: &[BilinearForm]) -> Algebra {
    let n = base.dim();
    let s = cocycles.len();
    let mut out = Algebra::zero_algebra(n + s);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                *out.sc_mut(i, j, k) = base.sc(i, j, k).clone();
            }
            for (t, theta) in cocycles.iter().enumerate() {
                *out.sc_mut(i, j, n + t) = theta.value_at(i, j).clone();
            }
        }
    }
    out
}

/// `Ann(θ) = ∩ Ann(θ_i)` for the tuple.
pub fn spec_radical(spec: &ExtensionSpec) -> Subspace {
    tuple_radical(spec.base.dim(), &spec.cocycles)
}

/// Membership in `T_s(A)`: the tuple radical meets `Ann(A)` trivially and
/// the classes `[θ_1], ..., [θ_s]` are linearly independent in `H²`.
pub fn in_t_s(spec: &ExtensionSpec) -> Result<bool, ExtensionError> {
    spec.validate_cocycles()?;
    let rad = spec_radical(spec);
    let ann = spec.base.annihilator();
    if !rad.intersect(&ann).expect("same ambient").is_zero() {
        return Ok(false);
    }
    let coh = Cohomology::compute(&spec.base)?;
    let cls = coh.class_subspace(&spec.cocycles)?;
    Ok(cls.dim() == spec.s())
}

/// The annihilator-component criterion: assuming `Ann(θ) ∩ Ann(A) = 0`,
/// the extension has an annihilator component iff the classes are linearly
/// dependent in `H²`.
pub fn has_annihilator_component(spec: &ExtensionSpec) -> Result<bool, ExtensionError> {
    spec.validate_cocycles()?;
    let rad = spec_radical(spec);
    let ann = spec.base.annihilator();
    if !rad.intersect(&ann).expect("same ambient").is_zero() {
        return Err(ExtensionError::RadicalMeetsAnnihilator);
    }
    let coh = Cohomology::compute(&spec.base)?;
    let cls = coh.class_subspace(&spec.cocycles)?;
    Ok(cls.dim() < spec.s())
}

/// `Ann(A_θ)` computed directly, cross-checked against
/// `(Ann(θ) ∩ Ann(A)) ⊕ V`.
pub fn annihilator_of_extension(spec: &ExtensionSpec) -> Result<Subspace, ExtensionError> {
    let ext = central_extension(spec)?;
    let direct = ext.annihilator();
    let n = spec.base.dim();
    let s = spec.s();
    let core = spec_radical(spec)
        .intersect(&spec.base.annihilator())
        .expect("same ambient");
    let mut gens: Vec<Vec<FieldElement>> = Vec::new();
    for v in core.basis() {
        let mut w = v.clone();
        w.resize(n + s, FieldElement::zero());
        gens.push(w);
    }
    for t in 0..s {
        gens.push(unit_vector(n + s, n + t));
    }
    let formula = Subspace::from_generators(n + s, gens);
    if direct != formula {
        return Err(ExtensionError::AnnihilatorFormulaMismatch);
    }
    Ok(direct)
}

/// The data recovered when peeling `Ann(A)` off an algebra.
#[derive(Clone)]
pub struct QuotientData {
    /// `A' ≅ A/Ann(A)` on the chosen coordinate complement.
    pub quotient: Algebra,
    /// Cocycle tuple valued in `Ann(A)`, one form per annihilator basis vector.
    pub cocycles: Vec<BilinearForm>,
    /// Indices (0-based, increasing) of the standard basis vectors spanning
    /// the complement.
    pub complement: Vec<usize>,
    /// `n x (n-m)` embedding of the complement into `A`.
    pub section: Matrix,
    /// Full change of basis `A'_θ -> A`: complement vectors first, then the
    /// annihilator basis. Transporting `A` through it must reproduce
    /// `central_extension(quotient, cocycles)` entrywise.
    pub change_of_basis: Matrix,
}

/// Lemma-1 style reconstruction: realize `A` as a central extension of
/// `A/Ann(A)` by `Ann(A)`.
///
/// The complement of `Ann(A)` is chosen greedily among standard basis
/// vectors (first ones that stay independent mod `Ann(A)`), so the output is
/// deterministic.
pub fn quotient_by_annihilator(a: &Algebra) -> Result<QuotientData, ExtensionError> {
    let n = a.dim();
    let ann = a.annihilator();
    let m = ann.dim();
    if m == 0 {
        return Err(ExtensionError::NoAnnihilator);
    }
    let mut complement = Vec::new();
    let mut span = ann.clone();
    for i in 0..n {
        if span.contains(&unit_vector(n, i)) {
            continue;
        }
        complement.push(i);
        span = span
            .sum(&Subspace::from_generators(n, vec![unit_vector(n, i)]))
            .expect("same ambient");
        if span.dim() == n {
            break;
        }
    }
    let q = complement.len();
    debug_assert_eq!(q + m, n);
    // Change of basis: complement standard vectors, then the annihilator basis.
    let mut cols: Vec<Vec<FieldElement>> = complement.iter().map(|&i| unit_vector(n, i)).collect();
    cols.extend(ann.basis().iter().cloned());
    let change = Matrix::from_fn(n, n, |r, c| cols[c][r].clone());
    let change_inv = change.inverse().expect("complement plus annihilator is a basis");

    let mut quotient = Algebra::zero_algebra(q);
    let mut cocycle_mats = vec![Matrix::zero(q, q); m];
    for (ai, &ia) in complement.iter().enumerate() {
        for (bi, &ib) in complement.iter().enumerate() {
            let w = a.basis_product(ia, ib);
            let coords = change_inv.apply(&w);
            for k in 0..q {
                *quotient.sc_mut(ai, bi, k) = coords[k].clone();
            }
            for t in 0..m {
                *cocycle_mats[t].at_mut(ai, bi) = coords[q + t].clone();
            }
        }
    }
    let cocycles: Vec<BilinearForm> = cocycle_mats.into_iter().map(BilinearForm::new).collect();
    let section = Matrix::from_fn(n, q, |r, c| {
        if complement[c] == r {
            FieldElement::one()
        } else {
            FieldElement::zero()
        }
    });
    Ok(QuotientData {
        quotient,
        cocycles,
        complement,
        section,
        change_of_basis: change,
    })
}

impl QuotientData {
    /// Entrywise check that transporting the original algebra through the
    /// recorded basis equals `central_extension(quotient, cocycles)`.
    pub fn reconstructs(&self, original: &Algebra) -> bool {
        let rebuilt = central_extension_unchecked(&self.quotient, &self.cocycles);
        original.transport(&self.change_of_basis) == rebuilt
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

    fn nabla_n1c(i: usize) -> BilinearForm {
        match i {
            1 => BilinearForm::delta(3, 1, 2).add(&BilinearForm::delta(3, 2, 1).scale(&fe(2))),
            2 => BilinearForm::delta(3, 1, 3),
            3 => BilinearForm::delta(3, 3, 1),
            4 => BilinearForm::delta(3, 3, 3),
            _ => unreachable!(),
        }
    }

    #[test]
    fn central_extension_n1c_101() {
        // base N1C with ∇1+∇4 gives e1²=e2, e1e2=e4, e2e1=2e4, e3e3=e4
        let spec = ExtensionSpec::new(n1c(), vec![nabla_n1c(1).add(&nabla_n1c(4))]);
        let ext = central_extension(&spec).unwrap();
        let expected = Algebra::from_products(
            4,
            &[
                (1, 1, 2, fe(1)),
                (1, 2, 4, fe(1)),
                (2, 1, 4, fe(2)),
                (3, 3, 4, fe(1)),
            ],
        );
        assert_eq!(ext, expected);
        assert!(ext.check_zinbiel().holds());
    }

    #[test]
    fn central_extension_s_zero_and_z1() {
        let spec = ExtensionSpec::new(n1(), vec![]);
        assert_eq!(central_extension(&spec).unwrap(), n1());

        let theta = BilinearForm::combine(
            3,
            &[fe(2), fe(3), fe(6)],
            &[
                BilinearForm::delta(3, 1, 3),
                BilinearForm::delta(3, 2, 2),
                BilinearForm::delta(3, 3, 1),
            ],
        );
        let ext = central_extension(&ExtensionSpec::new(z1(), vec![theta])).unwrap();
        let expected = Algebra::from_products(
            4,
            &[
                (1, 1, 2, fe(1)),
                (1, 2, 3, FieldElement::from_ratio(1, 2)),
                (2, 1, 3, fe(1)),
                (1, 3, 4, fe(2)),
                (2, 2, 4, fe(3)),
                (3, 1, 4, fe(6)),
            ],
        );
        assert_eq!(ext, expected);
        assert!(ext.check_zinbiel().holds());
    }

    #[test]
    fn non_cocycle_rejected_with_triple() {
        // Δ22 is not a cocycle on N1C (cocycle law forces θ22 = 0).
        let spec = ExtensionSpec::new(n1c(), vec![BilinearForm::delta(3, 2, 2)]);
        match central_extension(&spec) {
            Err(ExtensionError::NotACocycle { index: 0, .. }) => {}
            other => panic!("expected NotACocycle, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn t_s_membership_examples() {
        let good = ExtensionSpec::new(n1c(), vec![nabla_n1c(1).add(&nabla_n1c(4))]);
        assert!(in_t_s(&good).unwrap());
        let zero = ExtensionSpec::new(n1c(), vec![BilinearForm::zero(3)]);
        assert!(!in_t_s(&zero).unwrap());
        // Δ11 is a coboundary: classes dependent
        let dep = ExtensionSpec::new(
            n1c(),
            vec![nabla_n1c(1), BilinearForm::delta(3, 1, 1)],
        );
        assert!(!in_t_s(&dep).unwrap());
    }

    #[test]
    fn annihilator_component_examples() {
        let good = ExtensionSpec::new(n1c(), vec![nabla_n1c(1).add(&nabla_n1c(4))]);
        assert!(!has_annihilator_component(&good).unwrap());
        let dup = ExtensionSpec::new(
            n1c(),
            vec![
                nabla_n1c(1).add(&nabla_n1c(4)),
                nabla_n1c(1).add(&nabla_n1c(4)).scale(&fe(2)),
            ],
        );
        assert!(has_annihilator_component(&dup).unwrap());
        // coboundary shift: same class twice
        let shifted = ExtensionSpec::new(
            n1c(),
            vec![
                nabla_n1c(1).add(&nabla_n1c(4)),
                nabla_n1c(1)
                    .add(&nabla_n1c(4))
                    .add(&BilinearForm::delta(3, 1, 1)),
            ],
        );
        assert!(has_annihilator_component(&shifted).unwrap());
    }

    #[test]
    fn annihilator_formula_examples() {
        let spec = ExtensionSpec::new(n1c(), vec![nabla_n1c(1).add(&nabla_n1c(4))]);
        let ann = annihilator_of_extension(&spec).unwrap();
        assert_eq!(ann.dim(), 1);
        assert!(ann.contains(&unit_vector(4, 3)));

        let empty = ExtensionSpec::new(Algebra::zero_algebra(2), vec![]);
        assert_eq!(annihilator_of_extension(&empty).unwrap(), Subspace::full(2));

        // N1 with Δ13: Ann(θ) = <e2>, Ann(N1) = <e3>, intersection 0
        let spec = ExtensionSpec::new(n1(), vec![BilinearForm::delta(3, 1, 3)]);
        let ann = annihilator_of_extension(&spec).unwrap();
        assert_eq!(ann.dim(), 1);
        assert!(ann.contains(&unit_vector(4, 3)));
    }

    #[test]
    fn quotient_reconstruction_examples() {
        // [N1C]^1_01 quotients back to N1C with class ∇1+∇4
        let theta = nabla_n1c(1).add(&nabla_n1c(4));
        let ext = central_extension(&ExtensionSpec::new(n1c(), vec![theta.clone()])).unwrap();
        let data = quotient_by_annihilator(&ext).unwrap();
        assert_eq!(data.quotient, n1c());
        assert_eq!(data.cocycles.len(), 1);
        assert!(data.reconstructs(&ext));
        let coh = Cohomology::compute(&n1c()).unwrap();
        assert_eq!(
            coh.class_subspace(&data.cocycles).unwrap(),
            coh.class_subspace(&[theta]).unwrap()
        );

        // zero algebra of dim 2: quotient is 0-dimensional, cocycles zero
        let z = Algebra::zero_algebra(2);
        let data = quotient_by_annihilator(&z).unwrap();
        assert_eq!(data.quotient.dim(), 0);
        assert_eq!(data.cocycles.len(), 2);
        assert!(data.reconstructs(&z));

        // no annihilator -> error
        let idem = Algebra::from_products(2, &[(1, 1, 1, fe(1)), (2, 2, 2, fe(1))]);
        assert!(idem.annihilator().is_zero());
        assert!(matches!(
            quotient_by_annihilator(&idem),
            Err(ExtensionError::NoAnnihilator)
        ));
    }

    #[test]
    fn quotient_of_z1_extension() {
        let theta = BilinearForm::combine(
            3,
            &[fe(2), fe(3), fe(6)],
            &[
                BilinearForm::delta(3, 1, 3),
                BilinearForm::delta(3, 2, 2),
                BilinearForm::delta(3, 3, 1),
            ],
        );
        let ext = central_extension(&ExtensionSpec::new(z1(), vec![theta.clone()])).unwrap();
        let data = quotient_by_annihilator(&ext).unwrap();
        assert_eq!(data.quotient, z1());
        assert!(data.reconstructs(&ext));
        let coh = Cohomology::compute(&z1()).unwrap();
        assert_eq!(
            coh.class_subspace(&data.cocycles).unwrap(),
            coh.class_subspace(&[theta]).unwrap()
        );
    }
}
