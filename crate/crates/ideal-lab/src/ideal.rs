use std::fmt;

use core_poly::{Poly, VarSet, Q};
use num_traits::Zero;

use crate::IdealError;

/// A finitely generated ideal; generators are nonzero and pairwise distinct.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    vars: VarSet,
    gens: Vec<Poly>,
}

impl Ideal {
    /// Drops zero and duplicate generators; fails if nothing is left.
    pub fn new(gens: Vec<Poly>) -> Result<Self, IdealError> {
        let vars = gens.first().ok_or(IdealError::Empty)?.vars().clone();
        let mut out: Vec<Poly> = Vec::new();
        for g in gens {
            if g.vars() != &vars {
                return Err(IdealError::VarSetMismatch);
            }
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        if out.is_empty() {
            return Err(IdealError::Empty);
        }
        Ok(Self { vars, gens: out })
    }

    /// Ideal generated by the named variables.
    pub fn coordinate(vars: &VarSet, names: &[&str]) -> Result<Self, IdealError> {
        let gens = names
            .iter()
            .map(|n| Poly::var(vars, n))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(gens)
    }

    /// Parses each generator over `vars`.
    pub fn parse(vars: &VarSet, gens: &[&str]) -> Result<Self, IdealError> {
        let gens = gens
            .iter()
            .map(|g| Poly::parse(vars, g))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(gens)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when every generator vanishes at the point.
    pub fn vanishes_at(&self, point: &[Q]) -> Result<bool, IdealError> {
        for g in &self.gens {
            if !g.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same generators, each normalized up to a rational unit and sorted.
    /// Two ideals with equal canonical forms are equal; the converse needs
    /// more than this.
    pub fn canonical(&self) -> Vec<Poly> {
        let mut g: Vec<Poly> = self.gens.iter().map(Poly::primitive).collect();
        g.sort_by(|a, b| {
            a.leading()
                .map(|(m, _)| m.clone())
                .cmp(&b.leading().map(|(m, _)| m.clone()))
                .then_with(|| a.to_string().cmp(&b.to_string()))
        });
        g.dedup();
        g
    }

    /// Generator-wise equality up to rational units and order.
    pub fn same_generators(&self, other: &Self) -> bool {
        self.vars == other.vars && self.canonical() == other.canonical()
    }

    pub fn embed(&self, target: &VarSet) -> Result<Self, IdealError> {
        Self::new(
            self.gens
                .iter()
                .map(|g| g.embed(target))
                .collect::<Result<Vec<_>, _>>()?,
        )
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

/// The ideal generated by `f` and all its first partial derivatives.
pub fn hypersurface_singular_ideal(f: &Poly) -> Result<Ideal, IdealError> {
    if f.is_zero() {
        return Err(IdealError::Empty);
    }
    let mut gens = vec![f.clone()];
    gens.extend(f.gradient());
    Ideal::new(gens)
}
