//! The inversion formula for finite `W`: the module for the twist
//! `x -> w_S x* w_S` and the identities linking its r- and `P±`-polynomials with
//! those of the original module.

use std::sync::Arc;

use crate::canonical::CanonicalBasis;
use crate::coxeter::Element;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::module::InvolutionModule;

/// One instance `lhs = rhs` of an identity indexed by a pair `y <= w`.
#[derive(Clone, Debug)]
pub struct IdentityRow {
    pub y: Element,
    pub w: Element,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

impl IdentityRow {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub struct DualityContext {
    module: Arc<InvolutionModule>,
    dual: Arc<InvolutionModule>,
    w_s: Element,
    diamond: Vec<usize>,
}

impl DualityContext {
    pub fn new(module: Arc<InvolutionModule>) -> Result<Self> {
        let g = module.group().clone();
        let all: Vec<usize> = (0..g.rank()).collect();
        if !g.is_finite_parabolic(&all)? {
            return Err(Error::Domain("the inversion formula needs a finite group".into()));
        }
        let w_s = g.longest_element(&all)?;
        let mut diamond = Vec::with_capacity(g.rank());
        for s in 0..g.rank() {
            let c = g.mul(g.mul(w_s, g.generator(module.star()[s])), w_s);
            if g.length(c) != 1 {
                return Err(Error::Internal("conjugation by w_S does not preserve S".into()));
            }
            diamond.push(g.word(c)[0]);
        }
        let dual = InvolutionModule::with_star(g, diamond.clone())?;
        Ok(DualityContext { module, dual, w_s, diamond })
    }

    pub fn module(&self) -> &Arc<InvolutionModule> {
        &self.module
    }

    /// The module built from the diamond twist.
    pub fn dual(&self) -> &Arc<InvolutionModule> {
        &self.dual
    }

    pub fn w_s(&self) -> Element {
        self.w_s
    }

    pub fn diamond(&self) -> &[usize] {
        &self.diamond
    }

    /// `I_diamond = w_S I_* = I_* w_S`.
    pub fn check_twisted_sets(&self) -> Result<bool> {
        let g = self.module.group();
        let top = g.length(self.w_s);
        let ours = self.module.enumerate_twisted(top)?;
        let theirs = self.dual.enumerate_twisted(top)?;
        Ok(ours.len() == theirs.len()
            && ours.iter().all(|&w| {
                self.dual.is_twisted(g.mul(w, self.w_s)) && self.dual.is_twisted(g.mul(self.w_s, w))
            }))
    }

    fn pairs(&self, max_len: usize) -> Result<Vec<(Element, Element)>> {
        let g = self.module.group();
        let list = self.module.enumerate_twisted(max_len.min(g.length(self.w_s)))?;
        let mut out = Vec::new();
        for &w in list.iter() {
            for &y in list.iter() {
                if g.bruhat_leq(y, w) {
                    out.push((y, w));
                }
            }
        }
        Ok(out)
    }

    /// `bar(r_{y,w}) = κ(y)κ(w) r^diamond_{w w_S, y w_S}` for `y <= w`, `l(w) <= max_len`.
    pub fn r_duality_rows(&self, max_len: usize) -> Result<Vec<IdentityRow>> {
        let g = self.module.group();
        let mut rows = Vec::new();
        for (y, w) in self.pairs(max_len)? {
            let sign = self.module.kappa(y)? * self.module.kappa(w)?;
            let rhs = self.dual.r_poly(g.mul(w, self.w_s), g.mul(y, self.w_s)).scale(sign);
            rows.push(IdentityRow { y, w, lhs: self.module.r_poly(y, w).bar(), rhs });
        }
        Ok(rows)
    }

    /// `sum_{y<=t<=w} κ(y)κ(t) P±_{y,t} P±diamond_{w w_S, t w_S} = δ_{y,w}`.
    pub fn inversion_rows(&self, max_len: usize) -> Result<Vec<IdentityRow>> {
        let g = self.module.group();
        let cb = CanonicalBasis::new(self.module.clone());
        let cbd = CanonicalBasis::new(self.dual.clone());
        let mut rows = Vec::new();
        for (y, w) in self.pairs(max_len)? {
            let ky = self.module.kappa(y)?;
            let mut sum = LaurentPoly::zero();
            for (t, _, _) in cb.pi_table(w)?.iter() {
                if !g.bruhat_leq(y, t) {
                    continue;
                }
                let term = cb.ppm(y, t)? * cbd.ppm(g.mul(w, self.w_s), g.mul(t, self.w_s))?;
                sum += term.scale(ky * self.module.kappa(t)?);
            }
            let rhs = if y == w { LaurentPoly::one() } else { LaurentPoly::zero() };
            rows.push(IdentityRow { y, w, lhs: sum, rhs });
        }
        Ok(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems;

    #[test]
    fn diamond_permutations() {
        let d = |sys: crate::CoxeterSystem| DualityContext::new(InvolutionModule::new(sys.group())).unwrap();
        assert_eq!(d(systems::a(1)).diamond(), &[0]);
        assert_eq!(d(systems::a(2)).diamond(), &[1, 0]);
        assert_eq!(d(systems::b(2)).diamond(), &[0, 1]);
        assert_eq!(d(systems::a(2).with_star(vec![1, 0]).unwrap()).diamond(), &[0, 1]);
    }

    #[test]
    fn identities_small() {
        for sys in [systems::a(1), systems::a(2), systems::b(2), systems::a_flip(3)] {
            let ctx = DualityContext::new(InvolutionModule::new(sys.group())).unwrap();
            assert!(ctx.check_twisted_sets().unwrap());
            assert!(ctx.r_duality_rows(20).unwrap().iter().all(|r| r.holds()));
            assert!(ctx.inversion_rows(20).unwrap().iter().all(|r| r.holds()));
        }
    }

    #[test]
    fn infinite_group_rejected() {
        let m = InvolutionModule::new(systems::affine_a1().group());
        assert!(matches!(DualityContext::new(m), Err(Error::Domain(_))));
    }
}
