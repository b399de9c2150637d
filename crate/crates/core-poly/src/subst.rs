use num_traits::Zero;

use crate::{Monomial, Poly, PolyError, VarSet, Q};

/// A ring map given by images of the source variables.
///
/// Images live over `target`. A source variable without an explicit image
/// maps to the target variable of the same name (identity); it is an error
/// if no such variable exists.
#[derive(Clone, Debug)]
pub struct Substitution {
    target: VarSet,
    images: Vec<(String, Poly)>,
}

impl Substitution {
    pub fn new(target: &VarSet) -> Self {
        Self {
            target: target.clone(),
            images: Vec::new(),
        }
    }

    pub fn identity(vars: &VarSet) -> Self {
        Self::new(vars)
    }

    pub fn target(&self) -> &VarSet {
        &self.target
    }

    /// Sets the image of the source variable `name`.
    pub fn set(&mut self, name: &str, image: Poly) -> &mut Self {
        assert!(
            image.vars() == &self.target,
            "substitution image over the wrong varset"
        );
        if let Some(slot) = self.images.iter_mut().find(|(n, _)| n == name) {
            slot.1 = image;
        } else {
            self.images.push((name.to_string(), image));
        }
        self
    }

    pub fn with(mut self, name: &str, image: Poly) -> Self {
        self.set(name, image);
        self
    }

    pub(crate) fn set_at(&mut self, i: usize, image: Poly) {
        let name = self.target.name(i).to_string();
        self.set(&name, image);
    }

    pub fn image_of(&self, name: &str) -> Result<Poly, PolyError> {
        if let Some((_, p)) = self.images.iter().find(|(n, _)| n == name) {
            return Ok(p.clone());
        }
        Poly::var(&self.target, name)
    }

    /// The map "apply `self` first, then `after`": each image of `self` is
    /// pushed through `after`.
    pub fn then(&self, after: &Substitution) -> Result<Substitution, PolyError> {
        let mut out = Substitution::new(&after.target);
        for (n, img) in &self.images {
            out.set(n, img.substitute(after)?);
        }
        // Variables fixed by `self` go straight through `after`.
        for (n, img) in &after.images {
            if !self.images.iter().any(|(m, _)| m == n) {
                out.set(n, img.clone());
            }
        }
        Ok(out)
    }
}

impl Poly {
    /// Applies a substitution; the result lives over the substitution's
    /// target varset.
    pub fn substitute(&self, s: &Substitution) -> Result<Poly, PolyError> {
        let vars = self.vars();
        let n = vars.len();
        let images: Vec<Poly> = (0..n)
            .map(|i| s.image_of(vars.name(i)))
            .collect::<Result<_, _>>()?;
        // Variables mapped to a bare target variable are handled as monomial
        // shifts, which keeps chart maps cheap.
        let mut monomial_images: Vec<Option<(Monomial, Q)>> = Vec::with_capacity(n);
        for img in &images {
            monomial_images.push(if img.len() == 1 {
                img.leading().map(|(m, c)| (m.clone(), c.clone()))
            } else {
                None
            });
        }
        let mut powers: Vec<Vec<Poly>> = vec![Vec::new(); n];
        let target = s.target();
        let mut out = Poly::zero(target);
        for (m, c) in self.terms_map() {
            let mut mono = Monomial::one(target.len());
            let mut coef = c.clone();
            let mut rest = Poly::one(target);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if images[i].is_zero() {
                    coef = Q::zero();
                    break;
                }
                if let Some((im, ic)) = &monomial_images[i] {
                    for _ in 0..e {
                        mono = mono.mul(im);
                    }
                    coef *= num_traits::pow(ic.clone(), e as usize);
                } else {
                    let pw = &mut powers[i];
                    if pw.is_empty() {
                        pw.push(Poly::one(target));
                    }
                    while pw.len() <= e as usize {
                        let next = &pw[pw.len() - 1] * &images[i];
                        pw.push(next);
                    }
                    rest = &rest * &pw[e as usize];
                }
            }
            if coef.is_zero() {
                continue;
            }
            for (rm, rc) in rest.terms() {
                out.add_term(rm.mul(&mono), rc * &coef);
            }
        }
        Ok(out)
    }
}
