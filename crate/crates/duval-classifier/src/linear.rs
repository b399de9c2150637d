//! Linear coordinate changes on three variables.

use core_poly::linalg;
use core_poly::{rational_sqrt, Poly, PolyError, Substitution, Q};
use num_traits::{One, Zero};

pub(crate) type Matrix = Vec<Vec<Q>>;

/// `p` with its `i`-th variable replaced by `images[i]`.
pub(crate) fn image_of_vector(p: &Poly, images: &[Poly]) -> Result<Poly, PolyError> {
    let target = images[0].vars();
    let mut sub = Substitution::new(target);
    for (i, img) in images.iter().enumerate() {
        sub.set(p.vars().name(i), img.clone());
    }
    p.substitute(&sub)
}

/// Rewrites `f` in the coordinates `X = M x`, i.e. returns `f(M^-1 X)`.
pub(crate) fn change_coordinates(f: &Poly, m: &Matrix) -> Result<Poly, PolyError> {
    let inv = linalg::inverse(m).expect("coordinate change is invertible");
    let vars = f.vars();
    let images: Vec<Poly> = inv
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .fold(Poly::zero(vars), |acc, (k, c)| {
                    acc.add_scaled(&Poly::var_at(vars, k), c)
                })
        })
        .collect();
    image_of_vector(f, &images)
}

pub(crate) fn apply(m: &Matrix, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    (0..n)
        .map(|j| if i == j { Q::one() } else { Q::zero() })
        .collect()
}

/// Extends the given independent rows by standard unit rows to an
/// invertible matrix.
pub(crate) fn complete_rows(mut rows: Matrix) -> Matrix {
    let n = 3;
    for i in 0..n {
        if rows.len() == n {
            break;
        }
        let mut trial = rows.clone();
        trial.push(unit(n, i));
        if linalg::rank(&trial) == trial.len() {
            rows = trial;
        }
    }
    rows
}

/// For a rank-two quadratic form with Hessian `h`, linear forms `l1, l2`
/// with `q = c * l1 * l2`, when they exist over Q.
pub(crate) fn split_rank_two(q: &Poly, h: &Matrix) -> Option<(Vec<Q>, Vec<Q>)> {
    let ker = linalg::kernel(h, 3);
    let k = ker.first()?.clone();
    // Basis (k, e_a, e_b) of Q^3 and the dual coordinates (c, u, w).
    let basis = complete_rows(vec![k]);
    let dual = linalg::inverse(&transpose(&basis))?;
    let (u, w) = (dual[1].clone(), dual[2].clone());
    let eval = |v: &[Q]| q.eval(v).expect("three coordinates");
    let (ea, eb) = (&basis[1], &basis[2]);
    let a = eval(ea);
    let c = eval(eb);
    let sum: Vec<Q> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
    let b = eval(&sum) - &a - &c;
    let lin = |p: &Q, r: &Q| -> Vec<Q> { (0..3).map(|i| p * &u[i] + r * &w[i]).collect() };
    if a.is_zero() {
        // q = w (b u + c w)
        return Some((lin(&Q::zero(), &Q::one()), lin(&b, &c)));
    }
    let disc = &b * &b - Q::from_integer(4.into()) * &a * &c;
    let root = rational_sqrt(&disc)?;
    let two_a = Q::from_integer(2.into()) * &a;
    let t1 = (-&b + &root) / &two_a;
    let t2 = (-&b - &root) / &two_a;
    // a u^2 + b u w + c w^2 = a (u - t1 w)(u - t2 w)
    Some((lin(&Q::one(), &-t1), lin(&Q::one(), &-t2)))
}

pub(crate) fn transpose(m: &Matrix) -> Matrix {
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use core_poly::{qi, VarSet};

    #[test]
    fn splits_hyperbolic_form() {
        let v = VarSet::of(&["x", "y", "z"]);
        let q = Poly::parse(&v, "x^2 - y^2 + 2*x*z - 2*y*z").unwrap();
        let h = ideal_lab::hessian_matrix(&q).unwrap();
        let (l1, l2) = split_rank_two(&q, &h).unwrap();
        let form = |l: &[Q]| {
            l.iter().enumerate().fold(Poly::zero(&v), |acc, (i, c)| {
                acc.add_scaled(&Poly::var_at(&v, i), c)
            })
        };
        let prod = &form(&l1) * &form(&l2);
        let ratio = q.leading().unwrap().1 / prod.coeff(q.leading().unwrap().0);
        assert_eq!(prod.scale(&ratio), q);
        let irr = Poly::parse(&v, "x^2 + y^2").unwrap();
        assert!(split_rank_two(&irr, &ideal_lab::hessian_matrix(&irr).unwrap()).is_none());
    }

    #[test]
    fn coordinate_change_round_trip() {
        let v = VarSet::of(&["x", "y", "z"]);
        let f = Poly::parse(&v, "x*y + z^3 - x*z").unwrap();
        let m = vec![
            vec![qi(1), qi(2), qi(0)],
            vec![qi(0), qi(1), qi(-1)],
            vec![qi(1), qi(0), qi(1)],
        ];
        let g = change_coordinates(&f, &m).unwrap();
        let p = vec![qi(3), qi(-2), qi(5)];
        assert_eq!(g.eval(&apply(&m, &p)).unwrap(), f.eval(&p).unwrap());
    }
}
