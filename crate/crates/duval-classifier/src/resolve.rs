//! Minimal resolution by repeated point blow-ups.
//!
//! At a DuVal point the tangent cone is a quadric of rank 3, 2 or 1. Rank 3
//! gives one smooth conic and nothing else. Rank 2 gives two lines meeting
//! at a vertex, the only possible singular point. Rank 1 gives one line
//! whose singular points are found by a gcd along it. Curves through the
//! point (the tracked curve and earlier exceptional curves) are carried as
//! parametrized germs and either land on a new curve at a smooth point or
//! follow into the next singular point.

use std::collections::BTreeSet;

use blowup_engine::blowup_coordinate_center;
use core_poly::linalg;
use core_poly::{Poly, UPoly, Q};
use ideal_lab::{hessian_matrix, milnor_number_auto, Ideal, ParamCurve};
use num_traits::Zero;

use crate::classify::classify_duval;
use crate::graph::{CurvePosition, DualGraph, RawGraph};
use crate::linear::{change_coordinates, complete_rows, split_rank_two, Matrix};
use crate::series::Germ;
use crate::{ClassifyError, DuValType};

/// Maximum nesting of point blow-ups.
pub const MAX_DEPTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Curve,
    Node(usize),
}

#[derive(Clone, Debug)]
struct Branch {
    kind: Kind,
    germ: Germ,
}

#[derive(Default)]
struct Resolver {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    marked: Vec<usize>,
}

fn axis_germ(i: usize) -> Germ {
    Germ::new(
        (0..3)
            .map(|j| {
                if i == j {
                    UPoly::from_ints(&[0, 1])
                } else {
                    UPoly::zero()
                }
            })
            .collect(),
    )
}

fn is_smooth_point(f: &Poly) -> bool {
    !f.homogeneous_part(1).is_zero()
}

impl Resolver {
    fn new_node(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn attach(&mut self, b: &Branch, node: usize) {
        match b.kind {
            Kind::Curve => {
                if !self.marked.contains(&node) {
                    self.marked.push(node);
                }
            }
            Kind::Node(a) if a != node => {
                self.edges.insert((a.min(node), a.max(node)));
            }
            Kind::Node(_) => {}
        }
    }

    fn resolve_at(
        &mut self,
        f: &Poly,
        branches: Vec<Branch>,
        depth: usize,
    ) -> Result<(), ClassifyError> {
        if depth > MAX_DEPTH {
            return Err(ClassifyError::TooDeep(MAX_DEPTH));
        }
        let q = f.homogeneous_part(2);
        if q.is_zero() {
            return Err(ClassifyError::NotDuVal);
        }
        let h = hessian_matrix(f)?;
        let names: Vec<&str> = f.vars().names().iter().map(String::as_str).collect();
        match linalg::rank(&h) {
            3 => {
                let e = self.new_node();
                for b in &branches {
                    self.attach(b, e);
                }
                Ok(())
            }
            2 => {
                let Some((l1, l2)) = split_rank_two(&q, &h) else {
                    return self.conjugate_chain(f, &h, branches);
                };
                let m = complete_rows(vec![l1, l2]);
                let ft = change_coordinates(f, &m)?;
                let fz = blowup_coordinate_center(&ft, &names, names[2])?.strict_transform;
                let e1 = self.new_node();
                let e2 = self.new_node();
                let vertex_smooth = is_smooth_point(&fz);
                let mut pass = Vec::new();
                for b in branches {
                    let g = b.germ.transform(&m);
                    let v = g.tangent();
                    match (v[0].is_zero(), v[1].is_zero()) {
                        (true, true) if vertex_smooth => {
                            self.attach(&b, e1);
                            self.attach(&b, e2);
                        }
                        (true, true) => pass.push(Branch {
                            kind: b.kind,
                            germ: g.blow_up(2),
                        }),
                        (true, false) => self.attach(&b, e1),
                        (false, true) => self.attach(&b, e2),
                        (false, false) => {
                            return Err(ClassifyError::BadCurve(
                                "tangent leaves the tangent cone".into(),
                            ))
                        }
                    }
                }
                if vertex_smooth {
                    self.attach(
                        &Branch {
                            kind: Kind::Node(e1),
                            germ: axis_germ(1),
                        },
                        e2,
                    );
                    return Ok(());
                }
                // in the Z chart the line l1 = 0 is the Y axis, l2 = 0 the X axis
                pass.push(Branch {
                    kind: Kind::Node(e1),
                    germ: axis_germ(1),
                });
                pass.push(Branch {
                    kind: Kind::Node(e2),
                    germ: axis_germ(0),
                });
                self.resolve_at(&fz, pass, depth + 1)
            }
            1 => {
                let l = h
                    .iter()
                    .find(|row| row.iter().any(|c| !c.is_zero()))
                    .expect("rank one")
                    .clone();
                let m = complete_rows(vec![l]);
                let ft = change_coordinates(f, &m)?;
                let fz = blowup_coordinate_center(&ft, &names, names[2])?.strict_transform;
                let fy = blowup_coordinate_center(&ft, &names, names[1])?.strict_transform;
                let (roots, irrational) = singular_points_on_line(&fz)?;
                let inf_singular = !is_smooth_point(&fy);
                let e = self.new_node();
                if irrational > 0 {
                    // Conjugate singular points share a type, and only D4
                    // has three points of one type on its central curve.
                    if classify_duval(f)? != DuValType::D(4) {
                        return Err(ClassifyError::NonRational);
                    }
                    for _ in 0..irrational {
                        let a = self.new_node();
                        self.edges.insert((e, a));
                    }
                }
                let mut at_root: Vec<Vec<Branch>> = vec![Vec::new(); roots.len()];
                let mut at_inf = Vec::new();
                for b in branches {
                    let g = b.germ.transform(&m);
                    let v = g.tangent();
                    if !v[0].is_zero() {
                        return Err(ClassifyError::BadCurve(
                            "tangent leaves the tangent cone".into(),
                        ));
                    }
                    if !v[2].is_zero() {
                        let y = &v[1] / &v[2];
                        match roots.iter().position(|r| *r == y) {
                            Some(i) => at_root[i].push(Branch {
                                kind: b.kind,
                                germ: g.blow_up(2),
                            }),
                            None => self.attach(&b, e),
                        }
                    } else if inf_singular {
                        at_inf.push(Branch {
                            kind: b.kind,
                            germ: g.blow_up(1),
                        });
                    } else {
                        self.attach(&b, e);
                    }
                }
                for (y0, mut pass) in roots.iter().zip(at_root) {
                    let g = fz.translate_origin(&[Q::zero(), y0.clone(), Q::zero()])?;
                    pass.push(Branch {
                        kind: Kind::Node(e),
                        germ: axis_germ(1),
                    });
                    self.resolve_at(&g, pass, depth + 1)?;
                }
                if inf_singular {
                    at_inf.push(Branch {
                        kind: Kind::Node(e),
                        germ: axis_germ(2),
                    });
                    self.resolve_at(&fy, at_inf, depth + 1)?;
                }
                Ok(())
            }
            _ => unreachable!("nonzero quadratic part"),
        }
    }

    /// An `A_n` point whose tangent cone is a pair of conjugate planes.
    /// Conjugation reverses the chain, so a rational branch through the
    /// vertex meets the middle node, or the middle point when `n` is even.
    fn conjugate_chain(
        &mut self,
        f: &Poly,
        h: &Matrix,
        branches: Vec<Branch>,
    ) -> Result<(), ClassifyError> {
        let ker = linalg::kernel(h, 3);
        let plane = linalg::kernel(&ker, 3);
        let m = complete_rows(plane);
        let n = milnor_number_auto(f, 2)? as usize;
        let chain: Vec<usize> = (0..n).map(|_| self.new_node()).collect();
        for w in chain.windows(2) {
            self.edges.insert((w[0], w[1]));
        }
        let middle: &[usize] = if n % 2 == 1 {
            &chain[n / 2..n / 2 + 1]
        } else {
            &chain[n / 2 - 1..n / 2 + 1]
        };
        for b in branches {
            let v = b.germ.transform(&m).tangent();
            if !v[0].is_zero() || !v[1].is_zero() {
                return Err(ClassifyError::BadCurve(
                    "tangent leaves the tangent cone".into(),
                ));
            }
            for &c in middle {
                self.attach(&b, c);
            }
        }
        Ok(())
    }
}

/// Values `y` where the strict transform is singular at `(0, y, 0)`, on the
/// line where the first and last coordinates vanish.
/// Also returns the number of irrational such points.
fn singular_points_on_line(f: &Poly) -> Result<(Vec<Q>, usize), ClassifyError> {
    let mut polys = vec![f.clone()];
    polys.extend(f.gradient());
    let restricted: Vec<UPoly> = polys
        .iter()
        .map(|p| {
            let r = p.specialize(0, &Q::zero()).specialize(2, &Q::zero());
            UPoly::from_poly(&r, 1).expect("only the middle variable is left")
        })
        .filter(|u| !u.is_zero())
        .collect();
    if restricted.is_empty() {
        return Err(ClassifyError::NotDuVal);
    }
    let g = UPoly::gcd_all(restricted.iter());
    let roots = g.rational_roots()?;
    let distinct = g.squarefree_part().degree().unwrap_or(0);
    let irrational = distinct - roots.len();
    Ok((roots.into_iter().map(|(r, _)| r).collect(), irrational))
}

/// Resolves the DuVal point of `f` at the origin, optionally tracking a
/// parametrized curve through it.
pub fn resolve_with_curve(
    f: &Poly,
    curve: Option<&ParamCurve>,
) -> Result<DualGraph, ClassifyError> {
    let ty = classify_duval(f)?;
    if ty == DuValType::NotDuVal {
        return Err(ClassifyError::NotDuVal);
    }
    let mut r = Resolver::default();
    let mut branches = Vec::new();
    if let Some(c) = curve {
        if c.vars() != f.vars() {
            return Err(ClassifyError::BadCurve(
                "curve lives over another varset".into(),
            ));
        }
        if !c.pullback(f)?.is_zero() {
            return Err(ClassifyError::BadCurve(
                "curve is not on the surface".into(),
            ));
        }
        let germ = Germ::new(c.images().to_vec());
        if !germ.passes_through_origin() {
            return Err(ClassifyError::StrictTransformMissesGraph);
        }
        if germ.tangent().iter().all(Zero::is_zero) {
            return Err(ClassifyError::BadCurve(
                "parametrization is singular at 0".into(),
            ));
        }
        branches.push(Branch {
            kind: Kind::Curve,
            germ,
        });
    }
    if ty != DuValType::Smooth {
        r.resolve_at(f, branches, 0)?;
    }
    RawGraph {
        n: r.n,
        edges: r.edges,
        marked: r.marked,
    }
    .label(ty)
}

/// Dual graph of the minimal resolution; the classification of `f` must be
/// `which`.
pub fn minimal_resolution_dual_graph(
    f: &Poly,
    which: DuValType,
) -> Result<DualGraph, ClassifyError> {
    let ty = classify_duval(f)?;
    if ty != which {
        return Err(ClassifyError::InputNotNormalForm(format!(
            "{f} is {ty}, not {which}"
        )));
    }
    resolve_with_curve(f, None)
}

/// Position of a parametrized smooth curve on a `D_n` graph.
pub fn curve_position_param(f: &Poly, curve: &ParamCurve) -> Result<CurvePosition, ClassifyError> {
    let ty = classify_duval(f)?;
    if !matches!(ty, DuValType::D(_)) {
        return Err(ClassifyError::NotDType(ty));
    }
    resolve_with_curve(f, Some(curve))?.curve_position()
}

/// A line through the origin cut out by homogeneous linear generators.
pub(crate) fn line_from_ideal(gamma: &Ideal) -> Result<ParamCurve, ClassifyError> {
    let n = gamma.vars().len();
    let mut rows = Vec::new();
    for g in gamma.gens() {
        if g.terms().any(|(m, _)| m.degree() != 1) {
            return Err(ClassifyError::BadCurve(format!(
                "generator {g} is not a linear form"
            )));
        }
        rows.push(
            (0..n)
                .map(|i| g.coeff(&core_poly::Monomial::var(n, i, 1)))
                .collect::<Vec<Q>>(),
        );
    }
    let ker = linalg::kernel(&rows, n);
    let [k] = ker.as_slice() else {
        return Err(ClassifyError::BadCurve(
            "generators do not cut out a line".into(),
        ));
    };
    let images = k
        .iter()
        .map(|c| UPoly::new(vec![Q::zero(), c.clone()]))
        .collect();
    Ok(ParamCurve::new("s", gamma.vars(), images)?)
}

/// Position of the line `gamma` on the `D_n` graph of `f`.
pub fn curve_position(f: &Poly, gamma: &Ideal) -> Result<CurvePosition, ClassifyError> {
    if gamma.vars() != f.vars() {
        return Err(ClassifyError::BadCurve(
            "curve lives over another varset".into(),
        ));
    }
    curve_position_param(f, &line_from_ideal(gamma)?)
}

/// Number of exceptional curves of the minimal resolution, all of which are
/// crepant for a DuVal point.
pub fn surface_crepant_count(f: &Poly) -> Result<usize, ClassifyError> {
    Ok(resolve_with_curve(f, None)?.node_count())
}
