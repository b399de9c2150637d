use std::collections::HashMap;

use core_poly::linalg::{self, Echelon, SparseRow};
use core_poly::{JetBound, Monomial, Poly, VarSet, Q};
use num_traits::Zero;

use crate::{Ideal, IdealError};

/// Largest jet degree tried by [`milnor_number`] before giving up.
pub const MILNOR_JET_CAP: u32 = 24;

/// How generators are multiplied out inside the jet space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JetMode {
    /// Only products `m * g` of total degree at most `D`, kept whole.
    Global,
    /// Products `m * g` with `deg m + ord g <= D`, truncated at degree `D`.
    /// The span is the image of the ideal in `k[x] / m^(D+1)`.
    Local,
}

/// The span of an ideal inside the space of polynomials of degree `<= D`,
/// in echelon form over the monomial basis ordered by increasing degree.
pub struct JetSpaceBasis {
    vars: VarSet,
    bound: u32,
    columns: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    echelon: Echelon,
}

impl JetSpaceBasis {
    pub fn build(ideal: &Ideal, bound: u32, mode: JetMode) -> Self {
        let vars = ideal.vars().clone();
        let n = vars.len();
        let columns = Monomial::up_to_degree(n, bound);
        let index: HashMap<Monomial, usize> = columns
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut basis = Self {
            vars,
            bound,
            columns,
            index,
            echelon: Echelon::new(),
        };
        for g in ideal.gens() {
            let shift = match mode {
                JetMode::Global => g.total_degree(),
                JetMode::Local => g.terms().next().map(|(m, _)| m.degree()),
            };
            let Some(shift) = shift.filter(|&s| s <= bound) else {
                continue;
            };
            for m in Monomial::up_to_degree(n, bound - shift) {
                let row = basis.row_of(&g.mul_monomial(&m));
                basis.echelon.insert(row);
            }
        }
        basis
    }

    /// Coordinates of `p` truncated to degree `<= D`.
    fn row_of(&self, p: &Poly) -> SparseRow {
        p.terms()
            .filter(|(m, _)| m.degree() <= self.bound)
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect()
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn dimension(&self) -> usize {
        self.columns.len()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Codimension of the span in the jet space.
    pub fn codimension(&self) -> usize {
        self.columns.len() - self.echelon.rank()
    }

    pub fn contains(&self, p: &Poly) -> Result<bool, IdealError> {
        if p.vars() != &self.vars {
            return Err(IdealError::VarSetMismatch);
        }
        if let Some(d) = p.total_degree().filter(|&d| d > self.bound) {
            return Err(IdealError::DegreeExceedsBound {
                degree: d,
                bound: self.bound,
            });
        }
        Ok(self.echelon.contains(self.row_of(p)))
    }

    /// True when every monomial of the top degree lies in the span, which
    /// means the span contains all of `m^D` modulo `m^(D+1)`.
    pub fn top_degree_covered(&self) -> bool {
        let first = self
            .columns
            .iter()
            .position(|m| m.degree() == self.bound)
            .unwrap_or(self.columns.len());
        (first..self.columns.len()).all(|c| {
            let row: SparseRow = [(c, Q::from_integer(1.into()))].into_iter().collect();
            self.echelon.contains(row)
        })
    }

    /// Monomials of degree `<= D` that are not pivots: a basis of the
    /// quotient.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        let pivots: std::collections::HashSet<usize> = self.echelon.pivot_columns().collect();
        self.columns
            .iter()
            .enumerate()
            .filter(|(i, _)| !pivots.contains(i))
            .map(|(_, m)| m.clone())
            .collect()
    }
}

/// Whether `g` is an exact polynomial combination `sum h_i g_i` with
/// `deg(h_i g_i) <= D`.
pub fn jet_membership(g: &Poly, ideal: &Ideal, bound: u32) -> Result<bool, IdealError> {
    if g.vars() != ideal.vars() {
        return Err(IdealError::VarSetMismatch);
    }
    JetSpaceBasis::build(ideal, bound, JetMode::Global).contains(g)
}

/// Milnor number of `f` at the origin, computed in the jet space of degree
/// `<= D`.
///
/// The Jacobian ideal is spanned inside `k[x]/m^(D+1)`. Once that span
/// contains every degree-`D` monomial it contains `m^D` locally, so its
/// codimension is the dimension of the local algebra. Otherwise the bound is
/// too small or the critical point is not isolated.
pub fn milnor_number(f: &Poly, bound: JetBound) -> Result<u32, IdealError> {
    let bound = bound.degree();
    if f.is_zero() {
        return Err(IdealError::Empty);
    }
    let Ok(jac) = Ideal::new(f.gradient()) else {
        // constant f: every point is critical
        return Err(IdealError::NotStabilized { bound });
    };
    let span = JetSpaceBasis::build(&jac, bound, JetMode::Local);
    if span.top_degree_covered() {
        Ok(span.codimension() as u32)
    } else {
        Err(IdealError::NotStabilized { bound })
    }
}

/// [`milnor_number`] starting at `D = candidate + 1` (at least 2) and
/// doubling on failure up to [`MILNOR_JET_CAP`]. Fill-in makes large bounds
/// expensive, so the first attempt is kept just above the expected value.
pub fn milnor_number_auto(f: &Poly, candidate: u32) -> Result<u32, IdealError> {
    let mut d = (candidate + 1).clamp(2, MILNOR_JET_CAP);
    loop {
        match milnor_number(f, JetBound::new(d)?) {
            Err(IdealError::NotStabilized { .. }) if d < MILNOR_JET_CAP => {
                d = (d * 2).min(MILNOR_JET_CAP);
            }
            r => return r,
        }
    }
}

/// Matrix of second partials at the origin. Requires `f` to vanish to order
/// at least two there.
pub fn hessian_matrix(f: &Poly) -> Result<Vec<Vec<Q>>, IdealError> {
    if f.terms().any(|(m, _)| m.degree() < 2) {
        return Err(IdealError::NotSingular);
    }
    let n = f.vars().len();
    let q = f.homogeneous_part(2);
    let mut h = vec![vec![Q::zero(); n]; n];
    for (m, c) in q.terms() {
        let idx: Vec<usize> = (0..n).filter(|&i| m.exp(i) > 0).collect();
        match idx.as_slice() {
            [i] => h[*i][*i] = c * Q::from_integer(2.into()),
            [i, j] => {
                h[*i][*j] = c.clone();
                h[*j][*i] = c.clone();
            }
            _ => unreachable!("quadratic monomial"),
        }
    }
    Ok(h)
}

/// Number of variables minus the rank of the Hessian at the origin.
pub fn hessian_corank(f: &Poly) -> Result<usize, IdealError> {
    let h = hessian_matrix(f)?;
    Ok(h.len() - linalg::rank(&h))
}
