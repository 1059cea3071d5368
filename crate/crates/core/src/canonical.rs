//! The bar-invariant basis `A_w = sum_y pi_{y,w} a'_y` (`a'_y = v^-l(y) a_y`), the
//! polynomials `P±_{y,w} = v^(l(w)-l(y)) pi_{y,w}`, the coefficients `mu'`, `mu''`
//! and the action of `c_s = u^-1 (T_s + 1)` in this basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::coxeter::{CoxeterGroup, Element, Side};
use crate::error::{Error, Result};
use crate::laurent::{lp, LaurentPoly};
use crate::module::{InvolutionModule, ModuleVector};

/// Solves `bar(pi_x) = sum_{x<=y<=w} r(x,y) pi_y` with `pi_w = 1` and
/// `pi_x in v^-1 Z[v^-1]` for `x < w`, going down the interval.
///
/// `interval` must be sorted by nondecreasing length and end with `w`.
pub(crate) fn negative_part_solve(
    group: &CoxeterGroup,
    w: Element,
    interval: &[Element],
    mut r: impl FnMut(Element, Element) -> Result<LaurentPoly>,
) -> Result<BTreeMap<Element, LaurentPoly>> {
    let mut pi = BTreeMap::new();
    pi.insert(w, LaurentPoly::one());
    let mut done = vec![w];
    for &x in interval.iter().rev() {
        if x == w {
            continue;
        }
        let mut alpha = LaurentPoly::zero();
        for &y in &done {
            if group.bruhat_leq(x, y) {
                alpha += r(x, y)? * &pi[&y];
            }
        }
        if !(&alpha + alpha.bar()).is_zero() {
            return Err(Error::Internal(format!(
                "alpha = {alpha} is not bar-antisymmetric at x = {}, w = {}",
                group.format_word(x),
                group.format_word(w)
            )));
        }
        let (neg, _) = alpha.split_strict_neg();
        pi.insert(x, -neg);
        done.push(x);
    }
    Ok(pi)
}

/// `pi_{y,w}` for all `y <= w`, for one fixed `w`.
#[derive(Clone, Debug)]
pub struct PiTable {
    w: Element,
    lw: usize,
    entries: BTreeMap<Element, (usize, LaurentPoly)>,
}

impl PiTable {
    pub fn target(&self) -> Element {
        self.w
    }

    /// `pi_{y,w}`; zero unless `y <= w`.
    pub fn pi(&self, y: Element) -> LaurentPoly {
        self.entries.get(&y).map(|e| e.1.clone()).unwrap_or_default()
    }

    /// `P±_{y,w}` as a polynomial in `u`; zero unless `y <= w`.
    pub fn ppm(&self, y: Element) -> LaurentPoly {
        match self.entries.get(&y) {
            Some((ly, p)) => p.shift((self.lw - ly) as i32),
            None => LaurentPoly::zero(),
        }
    }

    /// `(y, l(y), pi_{y,w})` in increasing (length, word) order of `y`.
    pub fn iter(&self) -> impl Iterator<Item = (Element, usize, &LaurentPoly)> {
        self.entries.iter().map(|(&y, (l, p))| (y, *l, p))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub struct CanonicalBasis {
    module: Arc<InvolutionModule>,
    tables: Mutex<HashMap<Element, Arc<PiTable>>>,
}

impl CanonicalBasis {
    pub fn new(module: Arc<InvolutionModule>) -> Self {
        CanonicalBasis { module, tables: Mutex::new(HashMap::new()) }
    }

    pub fn module(&self) -> &Arc<InvolutionModule> {
        &self.module
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        self.module.group()
    }

    fn require_twisted(&self, w: Element) -> Result<()> {
        if !self.module.is_twisted(w) {
            return Err(Error::Domain(format!("{} is not a twisted involution", self.group().format_word(w))));
        }
        Ok(())
    }

    pub fn pi_table(&self, w: Element) -> Result<Arc<PiTable>> {
        if let Some(t) = self.tables.lock().unwrap().get(&w) {
            return Ok(t.clone());
        }
        self.require_twisted(w)?;
        let m = &self.module;
        let interval = m.interval_below(w)?;
        let pi = negative_part_solve(m.group(), w, &interval, |x, y| Ok(m.r_poly(x, y)))?;
        let entries = pi.into_iter().map(|(y, p)| (y, (m.length(y), p))).collect();
        let table = Arc::new(PiTable { w, lw: m.length(w), entries });
        self.tables.lock().unwrap().insert(w, table.clone());
        Ok(table)
    }

    pub fn pi(&self, y: Element, w: Element) -> Result<LaurentPoly> {
        Ok(self.pi_table(w)?.pi(y))
    }

    pub fn ppm(&self, y: Element, w: Element) -> Result<LaurentPoly> {
        Ok(self.pi_table(w)?.ppm(y))
    }

    /// `A_w` in the `a`-basis.
    pub fn a_canonical(&self, w: Element) -> Result<ModuleVector> {
        let t = self.pi_table(w)?;
        let mut v = ModuleVector::zero();
        for (y, ly, p) in t.iter() {
            v.add_term(y, &p.shift(-(ly as i32)));
        }
        Ok(v)
    }

    /// The Möbius value `kappa(x) kappa(z)` of the interval `[x, z]`.
    pub fn mobius(&self, x: Element, z: Element) -> Result<i64> {
        self.require_twisted(x)?;
        self.require_twisted(z)?;
        if !self.group().bruhat_leq(x, z) {
            return Err(Error::Domain(format!(
                "{} is not below {}",
                self.group().format_word(x),
                self.group().format_word(z)
            )));
        }
        Ok(self.module.kappa(x)? * self.module.kappa(z)?)
    }

    /// Coefficient of `v^-1` in `pi_{y,w}`.
    pub fn mu_prime(&self, y: Element, w: Element) -> Result<i64> {
        Ok(self.pi(y, w)?.coeff(-1))
    }

    /// Coefficient of `v^-2` in `pi_{y,w}`.
    pub fn mu_dprime(&self, y: Element, w: Element) -> Result<i64> {
        Ok(self.pi(y, w)?.coeff(-2))
    }

    /// The coefficient `M^s_{y,w}`, defined when `sy < y < sw > w`.
    pub fn m_spherical_coeff(&self, s: usize, y: Element, w: Element) -> Result<LaurentPoly> {
        let g = self.group().clone();
        self.require_twisted(y)?;
        self.require_twisted(w)?;
        let sw = g.left_mul(s, w);
        if !g.descent(y, s, Side::Left) || g.descent(w, s, Side::Left) || y == sw || !g.bruhat_leq(y, sw) {
            return Err(Error::Domain(format!(
                "M^s_(y,w) needs sy < y < sw > w; got s = {}, y = {}, w = {}",
                g.system().labels()[s],
                g.format_word(y),
                g.format_word(w)
            )));
        }
        self.m_coeff_formula(s, y, w)
    }

    /// The defining formula of `M^s_{y,w}` without the `y < sw` check.
    fn m_coeff_formula(&self, s: usize, y: Element, w: Element) -> Result<LaurentPoly> {
        let g = self.group().clone();
        let sw = g.left_mul(s, w);
        if g.sign(y) != g.sign(w) {
            return Ok(lp("v+v^-1").scale(self.mu_prime(y, w)?));
        }
        let mut total = self.mu_dprime(y, w)?;
        for x in self.module.interval_below(w)? {
            if x != w && x != y && g.descent(x, s, Side::Left) && g.bruhat_leq(y, x) {
                total -= self.mu_prime(y, x)? * self.mu_prime(x, w)?;
            }
        }
        if self.module.dot(s, w).commutes {
            total -= self.mu_prime(y, sw)?;
        }
        let dy = self.module.dot(s, y);
        if dy.commutes {
            total += self.mu_prime(dy.target, w)?;
        }
        Ok(LaurentPoly::constant(total))
    }

    /// `c_s m = u^-1 (T_s m + m)`.
    pub fn cs_action(&self, s: usize, m: &ModuleVector) -> ModuleVector {
        self.module.ts_action(s, m).add(m).scale(&lp("v^-2"))
    }

    /// Coordinates of `m` in the basis `{A_z}`, by eliminating the longest term first.
    pub fn expand_in_a_basis(&self, m: &ModuleVector) -> Result<BTreeMap<Element, LaurentPoly>> {
        let g = self.group().clone();
        let mut rest = m.clone();
        let mut out = BTreeMap::new();
        while !rest.is_zero() {
            let top = rest.support().into_iter().max_by(|&a, &b| g.cmp_shortlex(a, b)).unwrap();
            let c = rest.get(top).shift(g.length(top) as i32);
            rest.add_scaled(&self.a_canonical(top)?, &-&c);
            if !rest.get(top).is_zero() {
                return Err(Error::Internal(format!("elimination did not clear {}", g.format_word(top))));
            }
            out.insert(top, c);
        }
        Ok(out)
    }

    /// `c_s A_w` expanded in the `A`-basis.
    pub fn cs_on_a(&self, s: usize, w: Element) -> Result<BTreeMap<Element, LaurentPoly>> {
        let a = self.a_canonical(w)?;
        self.expand_in_a_basis(&self.cs_action(s, &a))
    }

    /// The closed form for `c_s A_w`: `(u+u^-1) A_w` when `sw < w`; otherwise the
    /// leading term `(v+v^-1) A_{sw}` or `A_{sws*}` plus `sum M^s_{z,w} A_z` over
    /// `sz < z < s.w`.
    pub fn cs_formula(&self, s: usize, w: Element) -> Result<BTreeMap<Element, LaurentPoly>> {
        self.require_twisted(w)?;
        let g = self.group().clone();
        let d = self.module.dot(s, w);
        let mut out = BTreeMap::new();
        if !d.rises {
            out.insert(w, lp("u+v^-2"));
            return Ok(out);
        }
        let top = d.target;
        out.insert(top, if d.commutes { lp("v+v^-1") } else { LaurentPoly::one() });
        for z in self.module.interval_below(top)? {
            if z == top || !g.descent(z, s, Side::Left) {
                continue;
            }
            let c = self.m_coeff_formula(s, z, w)?;
            if !c.is_zero() {
                out.insert(z, c);
            }
        }
        Ok(out)
    }
}

/// `(P+, P-) = ((P + P±)/2, (P - P±)/2)`.
pub fn split_pm(ppm: &LaurentPoly, p: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    let half = |q: LaurentPoly| -> Result<LaurentPoly> {
        if q.terms().any(|(_, c)| c % 2 != 0) {
            return Err(Error::Internal(format!("P = {p} and P± = {ppm} are not congruent mod 2")));
        }
        Ok(LaurentPoly::from_terms(q.terms().map(|(e, c)| (e, c / 2))))
    };
    Ok((half(p + ppm)?, half(p - ppm)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems;

    #[test]
    fn rank_one_table() {
        let b = CanonicalBasis::new(InvolutionModule::new(systems::a(1).group()));
        let s = b.group().generator(0);
        let one = Element::IDENTITY;
        assert_eq!(b.pi(one, s).unwrap(), lp("v^-1"));
        assert_eq!(b.ppm(one, s).unwrap(), LaurentPoly::one());
        assert_eq!(b.ppm(s, s).unwrap(), LaurentPoly::one());
        assert_eq!(b.a_canonical(one).unwrap(), ModuleVector::basis(one));
        let a_s = b.a_canonical(s).unwrap();
        assert_eq!(a_s.get(one), lp("v^-1"));
        assert_eq!(a_s.get(s), lp("v^-1"));
        assert_eq!(b.mobius(one, s).unwrap(), -1);
        assert_eq!(b.mobius(s, s).unwrap(), 1);
    }

    #[test]
    fn cs_rank_one() {
        let b = CanonicalBasis::new(InvolutionModule::new(systems::a(1).group()));
        let s = b.group().generator(0);
        let e = b.cs_on_a(0, Element::IDENTITY).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[&s], lp("v+v^-1"));
        let e = b.cs_on_a(0, s).unwrap();
        assert_eq!(e[&s], lp("u+v^-2"));
    }

    #[test]
    fn mobius_sum_a2() {
        let b = CanonicalBasis::new(InvolutionModule::new(systems::a(2).group()));
        let g = b.group().clone();
        let top = g.from_word(&[0, 1, 0]);
        let total: i64 = b
            .module()
            .interval_below(top)
            .unwrap()
            .into_iter()
            .map(|y| b.mobius(Element::IDENTITY, y).unwrap())
            .sum();
        assert_eq!(total, 0);
    }

    #[test]
    fn m_coeff_domain_error() {
        let b = CanonicalBasis::new(InvolutionModule::new(systems::a(2).group()));
        assert!(matches!(
            b.m_spherical_coeff(0, Element::IDENTITY, b.group().generator(1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_pm(&lp("1"), &lp("1")).unwrap(), (lp("1"), LaurentPoly::zero()));
        assert_eq!(split_pm(&lp("1-u"), &lp("1+u")).unwrap(), (lp("1"), lp("u")));
        assert!(split_pm(&lp("1"), &lp("1+u")).is_err());
    }

    #[test]
    fn cs_formula_small_systems() {
        for sys in [systems::b(2), systems::a(2).with_star(vec![1, 0]).unwrap(), systems::a(3)] {
            let b = CanonicalBasis::new(InvolutionModule::new(sys.group()));
            for &w in b.module().enumerate_twisted(6).unwrap().iter() {
                let a = b.a_canonical(w).unwrap();
                assert_eq!(b.module().bar_vector(&a), a);
                for s in 0..b.group().rank() {
                    assert_eq!(b.cs_on_a(s, w).unwrap(), b.cs_formula(s, w).unwrap());
                }
            }
        }
    }
}
