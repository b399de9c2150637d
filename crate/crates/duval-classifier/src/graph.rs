use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::{ClassifyError, DuValType};

/// Which end of a `D_n` graph a curve meets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CurvePosition {
    /// The end of the long arm, `E_1`.
    #[serde(rename = "DF_l")]
    DFl,
    /// One of the two short leaves, `E_{n-1}` or `E_n`.
    #[serde(rename = "DF_r")]
    DFr,
}

impl fmt::Display for CurvePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::DFl => "DF_l",
            Self::DFr => "DF_r",
        })
    }
}

/// Dual graph of a minimal resolution with nodes `E1..En`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    #[serde(rename = "type")]
    pub ty: DuValType,
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub curve_attachment: Option<String>,
}

impl DualGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn neighbours(&self, label: &str) -> Vec<&str> {
        self.edges
            .iter()
            .filter_map(|(a, b)| {
                if a == label {
                    Some(b.as_str())
                } else if b == label {
                    Some(a.as_str())
                } else {
                    None
                }
            })
            .collect()
    }

    /// Connected with one fewer edge than nodes.
    pub fn is_tree(&self) -> bool {
        let n = self.nodes.len();
        if n == 0 {
            return self.edges.is_empty();
        }
        if self.edges.len() + 1 != n {
            return false;
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.nodes[0].as_str()];
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                stack.extend(self.neighbours(v));
            }
        }
        seen.len() == n
    }

    /// Where the tracked curve meets a `D_n` graph.
    pub fn curve_position(&self) -> Result<CurvePosition, ClassifyError> {
        let DuValType::D(n) = self.ty else {
            return Err(ClassifyError::NotDType(self.ty));
        };
        let at = self
            .curve_attachment
            .as_deref()
            .ok_or(ClassifyError::StrictTransformMissesGraph)?;
        if at == "E1" {
            Ok(CurvePosition::DFl)
        } else if at == format!("E{}", n - 1) || at == format!("E{n}") {
            Ok(CurvePosition::DFr)
        } else {
            Err(ClassifyError::UnexpectedAttachment(at.to_string()))
        }
    }
}

impl fmt::Display for DualGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.ty)?;
        let e: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "{}", e.join(" "))?;
        if let Some(a) = &self.curve_attachment {
            write!(f, " (curve at {a})")?;
        }
        Ok(())
    }
}

/// An unlabelled graph on nodes `0..n` with a marked node set.
pub(crate) struct RawGraph {
    pub n: usize,
    pub edges: BTreeSet<(usize, usize)>,
    pub marked: Vec<usize>,
}

impl RawGraph {
    fn adj(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Walks from `start` away from `from` until a leaf.
    fn arm(&self, from: usize, start: usize) -> Vec<usize> {
        let mut path = vec![start];
        let mut prev = from;
        let mut cur = start;
        loop {
            let next: Vec<usize> = self.adj(cur).into_iter().filter(|&w| w != prev).collect();
            match next.as_slice() {
                [w] => {
                    path.push(*w);
                    prev = cur;
                    cur = *w;
                }
                _ => return path,
            }
        }
    }

    /// Labels the nodes `E1..En` following the shape conventions and checks
    /// the shape against `expected`.
    pub fn label(&self, expected: DuValType) -> Result<DualGraph, ClassifyError> {
        let mismatch = |detail: String| ClassifyError::GraphMismatch { expected, detail };
        let want = expected
            .subscript()
            .ok_or_else(|| mismatch("not DuVal".into()))? as usize;
        if self.n != want {
            return Err(mismatch(format!("{} exceptional curves", self.n)));
        }
        if self.n > 0 && self.edges.len() + 1 != self.n {
            return Err(mismatch(format!("{} edges", self.edges.len())));
        }
        let order: Vec<usize> = match expected {
            DuValType::Smooth => Vec::new(),
            DuValType::A(_) => {
                let start = (0..self.n)
                    .find(|&v| self.adj(v).len() <= 1)
                    .ok_or_else(|| mismatch("no chain end".into()))?;
                let mut path = vec![start];
                if let Some(&next) = self.adj(start).first() {
                    path.extend(self.arm(start, next));
                }
                path
            }
            DuValType::D(_) | DuValType::E6 | DuValType::E7 | DuValType::E8 => {
                let branch: Vec<usize> = (0..self.n).filter(|&v| self.adj(v).len() == 3).collect();
                let [b] = branch.as_slice() else {
                    return Err(mismatch(format!("{} branch nodes", branch.len())));
                };
                let mut arms: Vec<Vec<usize>> =
                    self.adj(*b).into_iter().map(|s| self.arm(*b, s)).collect();
                arms.sort_by_key(Vec::len);
                let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
                let ok = match expected {
                    DuValType::D(n) => lens == [1, 1, n as usize - 3],
                    DuValType::E6 => lens == [1, 2, 2],
                    DuValType::E7 => lens == [1, 2, 3],
                    DuValType::E8 => lens == [1, 2, 4],
                    _ => false,
                };
                if !ok {
                    return Err(mismatch(format!("arm lengths {lens:?}")));
                }
                if let DuValType::D(_) = expected {
                    // Long arm first, read from its leaf inward, then the
                    // branch node, then the two short leaves. For D4 a
                    // marked leaf is put among the short ones.
                    if lens == [1, 1, 1] {
                        if let Some(i) = arms.iter().position(|a| self.marked.contains(&a[0])) {
                            let m = arms.remove(i);
                            arms.insert(0, m);
                        }
                    }
                    let mut long = arms[2].clone();
                    long.reverse();
                    let mut o = long;
                    o.push(*b);
                    o.push(arms[0][0]);
                    o.push(arms[1][0]);
                    o
                } else {
                    let mut long = arms[2].clone();
                    long.reverse();
                    let mut o = long;
                    o.push(*b);
                    o.extend(arms[1].iter().copied());
                    o.push(arms[0][0]);
                    o
                }
            }
            DuValType::NotDuVal => unreachable!(),
        };
        let name = |v: usize| format!("E{}", order.iter().position(|&w| w == v).unwrap() + 1);
        let mut edges: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (pa, pb) = (name(a), name(b));
                let ka: usize = pa[1..].parse().unwrap();
                let kb: usize = pb[1..].parse().unwrap();
                if ka < kb {
                    (pa, pb)
                } else {
                    (pb, pa)
                }
            })
            .collect();
        edges.sort_by_key(|(a, b)| {
            (
                a[1..].parse::<usize>().unwrap(),
                b[1..].parse::<usize>().unwrap(),
            )
        });
        let curve_attachment = match self.marked.as_slice() {
            [] => None,
            [v] => Some(name(*v)),
            many => {
                return Err(ClassifyError::UnexpectedAttachment(
                    many.iter().map(|&v| name(v)).collect::<Vec<_>>().join(","),
                ))
            }
        };
        Ok(DualGraph {
            ty: expected,
            nodes: (1..=self.n).map(|i| format!("E{i}")).collect(),
            edges,
            curve_attachment,
        })
    }
}
