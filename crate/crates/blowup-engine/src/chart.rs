use std::fmt;

use core_poly::{Poly, Substitution, VarSet};
use ideal_lab::Ideal;

use crate::BlowupError;

/// What to blow up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlowupSpec {
    CoordinateCenter(Vec<String>),
    WeightedPoint(Vec<u32>),
    TwoGeneratorIdeal { g1: Poly, g2: Poly },
}

impl BlowupSpec {
    pub fn coordinate(names: &[&str]) -> Self {
        Self::CoordinateCenter(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn validate(&self, vars: &VarSet) -> Result<(), BlowupError> {
        match self {
            Self::CoordinateCenter(c) => {
                if c.len() < 2 {
                    return Err(BlowupError::CenterTooSmall);
                }
                for (i, v) in c.iter().enumerate() {
                    vars.require(v)?;
                    if c[..i].contains(v) {
                        return Err(BlowupError::RepeatedCenterVariable(v.clone()));
                    }
                }
                Ok(())
            }
            Self::WeightedPoint(w) => {
                if w.len() != vars.len() || w.contains(&0) {
                    return Err(BlowupError::BadWeights);
                }
                Ok(())
            }
            Self::TwoGeneratorIdeal { g1, g2 } => {
                if g1.is_zero() || g2.is_zero() {
                    return Err(BlowupError::UnsupportedCenter("zero generator".into()));
                }
                if g1.vars() != vars || g2.vars() != vars {
                    return Err(BlowupError::UnsupportedCenter(
                        "generators over another varset".into(),
                    ));
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartKind {
    Coordinate,
    Weighted,
    TwoGenerator,
}

/// One affine chart of a blow-up.
///
/// `total_transform = exceptional^m * strict_transform`, modulo the ambient
/// relations for two-generator charts. For coordinate and weighted charts
/// `exceptional` is the chart variable; for two-generator charts it is the
/// generator that becomes principal.
#[derive(Clone, Debug)]
pub struct Chart {
    pub name: String,
    pub kind: ChartKind,
    pub source_vars: VarSet,
    pub vars: VarSet,
    pub substitution: Substitution,
    /// Variable cutting out the exceptional locus set-theoretically; absent
    /// when the principal generator of a two-generator chart is not a
    /// monomial.
    pub exceptional_coordinate: Option<String>,
    pub exceptional: Poly,
    pub exceptional_multiplicity: u32,
    pub strict_transform: Poly,
    pub total_transform: Poly,
    pub ambient_relations: Vec<Poly>,
    /// Center variables for coordinate charts, all variables for weighted
    /// ones, empty for two-generator charts.
    pub center: Vec<String>,
}

impl Chart {
    /// The hypersurface itself as a chart of the identity map, for local
    /// models that need no blow-up.
    pub fn identity(f: &Poly) -> Self {
        let vars = f.vars().clone();
        Self {
            name: "identity".into(),
            kind: ChartKind::Coordinate,
            source_vars: vars.clone(),
            substitution: Substitution::new(&vars),
            vars: vars.clone(),
            exceptional_coordinate: None,
            exceptional: Poly::one(&vars),
            exceptional_multiplicity: 0,
            strict_transform: f.clone(),
            total_transform: f.clone(),
            ambient_relations: Vec::new(),
            center: Vec::new(),
        }
    }

    /// Checks the defining identity of the chart and that the strict
    /// transform is not divisible by the exceptional coordinate.
    pub fn verify(&self, f: &Poly) -> Result<bool, BlowupError> {
        let total = f.embed(&self.vars)?.substitute(&self.substitution)?;
        if total != self.total_transform {
            return Ok(false);
        }
        let diff = &total
            - &(&self.exceptional.pow(self.exceptional_multiplicity) * &self.strict_transform);
        let identity = match self.ambient_relations.as_slice() {
            [] => diff.is_zero(),
            [rel] => diff.is_zero() || diff.div_exact(rel).is_some(),
            _ => false,
        };
        let coprime = match (&self.kind, &self.exceptional_coordinate) {
            (ChartKind::TwoGenerator, _) | (_, None) => true,
            (_, Some(c)) => self.strict_transform.order_in(self.vars.require(c)?) == 0,
        };
        Ok(identity && coprime)
    }

    /// The strict transform together with the ambient relations.
    pub fn equations(&self) -> Vec<Poly> {
        let mut out = self.ambient_relations.clone();
        out.push(self.strict_transform.clone());
        out
    }

    /// Index of the exceptional coordinate.
    pub fn exceptional_index(&self) -> Option<usize> {
        self.exceptional_coordinate
            .as_deref()
            .and_then(|c| self.vars.index(c))
    }

    pub fn equations_ideal(&self) -> Result<Ideal, BlowupError> {
        Ok(Ideal::new(self.equations())?)
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "chart {}", self.name)?;
        writeln!(f, "  multiplicity {}", self.exceptional_multiplicity)?;
        writeln!(f, "  strict {}", self.strict_transform)?;
        for r in &self.ambient_relations {
            writeln!(f, "  relation {r}")?;
        }
        Ok(())
    }
}

/// A labelled component of the exceptional locus, or a tracked divisor,
/// inside one chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorInChart {
    pub label: String,
    pub ideal: Ideal,
    /// Multiplicity of the component in the restricted strict transform.
    pub multiplicity: u32,
}

impl DivisorInChart {
    pub fn relabel(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }
}

impl fmt::Display for DivisorInChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicity == 1 {
            write!(f, "{}: {}", self.label, self.ideal)
        } else {
            write!(f, "{}: {} (x{})", self.label, self.ideal, self.multiplicity)
        }
    }
}
