//! Homogeneous polynomial solutions of the free wave equation □y = 0.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, SparseRow};
use crate::poly::{Monomial, Polynomial};
use crate::rational;

/// Degrees above this are refused; monomial counts grow combinatorially.
pub const MAX_DEGREE: u32 = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct WaveBasis {
    pub dim: usize,
    pub degree: u32,
    pub elements: Vec<Polynomial>,
}

impl WaveBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Exact basis of ker □ on degree-`degree` homogeneous polynomials in `dim` variables.
///
/// Columns are the degree-k monomials in descending graded-lex order, so pivots land
/// on the highest powers of t and the free monomials are those of t-degree ≤ 1.
pub fn wave_basis(dim: usize, degree: u32) -> Result<WaveBasis> {
    check_args(dim, degree)?;
    wave_basis_with_ordering(dim, degree, &Monomial::all_of_degree(dim, degree))
}

/// Same kernel, with the elimination scanning columns in the given order.
///
/// `columns` must be a permutation of the degree-`degree` monomials.
pub fn wave_basis_with_ordering(dim: usize, degree: u32, columns: &[Monomial]) -> Result<WaveBasis> {
    check_args(dim, degree)?;
    let expected = Monomial::all_of_degree(dim, degree);
    let index: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    if columns.len() != expected.len() || index.len() != columns.len() || expected.iter().any(|m| !index.contains_key(m)) {
        return Err(Error::Domain("column ordering is not a permutation of the degree-k monomials".into()));
    }

    // one equation per degree-(k−2) monomial: the coefficient of that monomial in □y
    let rows: Vec<SparseRow> = if degree < 2 {
        Vec::new()
    } else {
        Monomial::all_of_degree(dim, degree - 2)
            .into_iter()
            .map(|target| {
                (0..dim)
                    .map(|axis| {
                        let e = target.exponent(axis) as i64;
                        let sign = if axis == 0 { -1 } else { 1 };
                        let source = target.shifted(axis, 2);
                        (index[&source], rational::int(sign * (e + 2) * (e + 1)))
                    })
                    .collect()
            })
            .collect()
    };

    let elements = nullspace(rows, columns.len())
        .into_iter()
        .map(|v| Polynomial::from_terms(dim, v.into_iter().map(|(c, a)| (columns[c].clone(), a))))
        .collect();
    Ok(WaveBasis { dim, degree, elements })
}

fn check_args(dim: usize, degree: u32) -> Result<()> {
    if dim < 2 {
        return Err(Error::UnsupportedDim { dim, reason: "need at least one time and one space coordinate" });
    }
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge { degree, max: MAX_DEGREE });
    }
    Ok(())
}

/// True iff □p = 0 exactly; `p` need not be homogeneous.
pub fn is_wave_polynomial(p: &Polynomial) -> bool {
    p.dalembertian().is_zero()
}
