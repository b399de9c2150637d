//! Truncated power series germs of smooth curves in three-space.

use core_poly::{UPoly, Q};
use num_traits::Zero;

use crate::linear::{apply, Matrix};

/// Working precision in the curve parameter.
pub(crate) const PRECISION: usize = 24;

fn truncate(p: &UPoly, n: usize) -> UPoly {
    UPoly::new(p.coeffs().iter().take(n).cloned().collect())
}

fn inverse_unit(u: &UPoly, n: usize) -> UPoly {
    let c0 = u.coeff(0);
    debug_assert!(!c0.is_zero());
    let mut inv = vec![c0.recip()];
    for k in 1..n {
        let s: Q = (1..=k).map(|j| u.coeff(j) * &inv[k - j]).sum();
        inv.push(-s * &inv[0]);
    }
    UPoly::new(inv)
}

/// Parametrized smooth germ, `coords[i](0)` at the current point.
#[derive(Clone, Debug)]
pub(crate) struct Germ {
    pub coords: Vec<UPoly>,
}

impl Germ {
    pub fn new(coords: Vec<UPoly>) -> Self {
        Self {
            coords: coords.iter().map(|c| truncate(c, PRECISION)).collect(),
        }
    }

    pub fn passes_through_origin(&self) -> bool {
        self.coords.iter().all(|c| c.coeff(0).is_zero())
    }

    pub fn tangent(&self) -> Vec<Q> {
        self.coords.iter().map(|c| c.coeff(1)).collect()
    }

    pub fn transform(&self, m: &Matrix) -> Self {
        let n = self
            .coords
            .iter()
            .map(|c| c.coeffs().len())
            .max()
            .unwrap_or(0);
        let mut out: Vec<Vec<Q>> = (0..3).map(|_| Vec::with_capacity(n)).collect();
        for k in 0..n {
            let col: Vec<Q> = self.coords.iter().map(|c| c.coeff(k)).collect();
            for (i, v) in apply(m, &col).into_iter().enumerate() {
                out[i].push(v);
            }
        }
        Self::new(out.into_iter().map(UPoly::new).collect())
    }

    /// Strict transform in the chart of coordinate `c` (where `v -> v * c`
    /// for the others), translated so the image point is the origin.
    /// Requires `coords[c]` to vanish to order exactly one.
    pub fn blow_up(&self, c: usize) -> Self {
        let gc = &self.coords[c];
        let unit = UPoly::new(gc.coeffs().iter().skip(1).cloned().collect());
        let inv = inverse_unit(&unit, PRECISION);
        let coords = (0..3)
            .map(|i| {
                if i == c {
                    return gc.clone();
                }
                let shifted = UPoly::new(self.coords[i].coeffs().iter().skip(1).cloned().collect());
                let q = truncate(&shifted.mul(&inv), PRECISION);
                q.sub(&UPoly::constant(q.coeff(0)))
            })
            .collect();
        Self::new(coords)
    }
}
