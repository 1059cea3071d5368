//! Classical R- and Kazhdan–Lusztig polynomials of `W`, the Hecke algebra in the
//! basis `t_w` with `(t_s + 1)(t_s - v^2) = 0`, and the mod 2 model of the
//! involution module built from it.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::canonical::{negative_part_solve, CanonicalBasis};
use crate::coxeter::{CoxeterGroup, Element, Side};
use crate::error::{Error, Result};
use crate::laurent::{lp, LaurentPoly};
use crate::module::{InvolutionModule, ModuleVector};

/// Element of the Hecke algebra in the `t`-basis.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct HeckeElement {
    terms: BTreeMap<Element, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(Element::IDENTITY)
    }

    pub fn basis(w: Element) -> Self {
        Self::monomial(w, LaurentPoly::one())
    }

    pub fn monomial(w: Element, c: LaurentPoly) -> Self {
        let mut h = Self::zero();
        h.add_term(w, &c);
        h
    }

    pub fn get(&self, w: Element) -> LaurentPoly {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Element, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Element, &LaurentPoly)> {
        self.terms.iter().map(|(&w, c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let mut h = Self::zero();
        for (w, c) in self.iter() {
            h.add_term(w, &f(c));
        }
        h
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        self.map(|x| x * c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut h = self.clone();
        for (w, c) in other.iter() {
            h.add_term(w, c);
        }
        h
    }

    pub fn mod2(&self) -> Self {
        self.map(|c| c.mod2())
    }

    /// Reads `sum c_w a_w` as `sum c_w t_w`.
    pub fn from_module_vector(m: &ModuleVector) -> Self {
        let mut h = Self::zero();
        for (w, c) in m.iter() {
            h.add_term(w, c);
        }
        h
    }

    /// `t_w -> a_w`; every term must lie on a twisted involution.
    pub fn to_module_vector(&self, module: &InvolutionModule) -> Result<ModuleVector> {
        let mut m = ModuleVector::zero();
        for (w, c) in self.iter() {
            if !module.is_twisted(w) {
                return Err(Error::Domain(format!(
                    "t_{} is not supported on a twisted involution",
                    module.group().format_word(w)
                )));
            }
            m.add_term(w, c);
        }
        Ok(m)
    }
}

/// Multiplication, bar and `♯` in the algebra with basis `t_w`.
pub struct HeckeAlgebra {
    group: Arc<CoxeterGroup>,
}

impl HeckeAlgebra {
    pub fn new(group: Arc<CoxeterGroup>) -> Self {
        HeckeAlgebra { group }
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    /// `t_s h` or `h t_s`.
    pub fn mul_gen(&self, h: &HeckeElement, s: usize, side: Side) -> HeckeElement {
        let u = LaurentPoly::v_pow(2);
        let u1 = lp("u-1");
        let mut out = HeckeElement::zero();
        for (w, c) in h.iter() {
            let (sw, dir) = self.group.mul_gen(w, s, side);
            if dir > 0 {
                out.add_term(sw, c);
            } else {
                out.add_term(w, &(&u1 * c));
                out.add_term(sw, &(&u * c));
            }
        }
        out
    }

    /// `t_s^-1 h = (v^-2 t_s + v^-2 - 1) h`.
    pub fn inv_gen_left(&self, s: usize, h: &HeckeElement) -> HeckeElement {
        self.mul_gen(h, s, Side::Left)
            .scale(&LaurentPoly::v_pow(-2))
            .add(&h.scale(&lp("v^-2-1")))
    }

    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (y, c) in b.iter() {
            let mut t = a.clone();
            for s in self.group.word(y) {
                t = self.mul_gen(&t, s, Side::Right);
            }
            out = out.add(&t.scale(c));
        }
        out
    }

    /// `(t_{x^-1})^-1`.
    pub fn t_inverse_of_inverse(&self, x: Element) -> HeckeElement {
        let mut e = HeckeElement::one();
        for s in self.group.word(self.group.inverse(x)) {
            e = self.inv_gen_left(s, &e);
        }
        e
    }

    /// The ring involution with `bar(v^n t_x) = v^-n (t_{x^-1})^-1`.
    pub fn bar(&self, h: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (x, c) in h.iter() {
            out = out.add(&self.t_inverse_of_inverse(x).scale(&c.bar()));
        }
        out
    }

    /// The antiautomorphism `t_w -> t_{(w*)^-1}`.
    pub fn sharp(&self, h: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (w, c) in h.iter() {
            out.add_term(self.group.inverse(self.group.star_apply(w)), c);
        }
        out
    }
}

/// The mod 2 model: `h ⊙ ξ = π(ψ^-1(h) ξ ψ^-1(h)♯)` on the span of `t_w`, `w` twisted.
pub struct Mod2Model {
    module: Arc<InvolutionModule>,
    algebra: HeckeAlgebra,
}

impl Mod2Model {
    pub fn new(module: Arc<InvolutionModule>) -> Self {
        let algebra = HeckeAlgebra::new(module.group().clone());
        Mod2Model { module, algebra }
    }

    pub fn algebra(&self) -> &HeckeAlgebra {
        &self.algebra
    }

    /// Keeps the terms on twisted involutions.
    pub fn project(&self, h: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (w, c) in h.iter() {
            if self.module.is_twisted(w) {
                out.add_term(w, c);
            }
        }
        out
    }

    /// `(h♯, π(h))`, both reduced mod 2.
    pub fn sharp_project(&self, h: &HeckeElement) -> (HeckeElement, HeckeElement) {
        let h = h.mod2();
        (self.algebra.sharp(&h).mod2(), self.project(&h))
    }

    /// `h` has coefficients in `u = v^2`; `ξ` is supported on twisted involutions.
    pub fn odot(&self, h: &HeckeElement, xi: &HeckeElement) -> Result<HeckeElement> {
        let mut half = HeckeElement::zero();
        for (w, c) in h.iter() {
            let c = c.halve_exponents().ok_or_else(|| {
                Error::Domain(format!("coefficient {c} of the acting element is not a polynomial in u"))
            })?;
            half.add_term(w, &c);
        }
        let half = half.mod2();
        let left = self.algebra.mul(&half, &xi.mod2()).mod2();
        let prod = self.algebra.mul(&left, &self.algebra.sharp(&half)).mod2();
        Ok(self.project(&prod))
    }

    /// `B(ξ) = π(bar ξ)` mod 2.
    pub fn bar_b(&self, xi: &HeckeElement) -> HeckeElement {
        self.project(&self.algebra.bar(xi)).mod2()
    }
}

/// Classical `ρ_{y,w}` and `P_{y,w}` for the whole group.
pub struct ClassicKl {
    group: Arc<CoxeterGroup>,
    rho_left: Mutex<HashMap<(Element, Element), LaurentPoly>>,
    rho_right: Mutex<HashMap<(Element, Element), LaurentPoly>>,
    tables: Mutex<HashMap<Element, Arc<BTreeMap<Element, LaurentPoly>>>>,
}

impl ClassicKl {
    pub fn new(group: Arc<CoxeterGroup>) -> Self {
        ClassicKl {
            group,
            rho_left: Mutex::new(HashMap::new()),
            rho_right: Mutex::new(HashMap::new()),
            tables: Mutex::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    /// `ρ_{x,w}` by peeling the smallest left descent of `w`.
    pub fn rho_poly(&self, x: Element, w: Element) -> LaurentPoly {
        let mut memo = self.rho_left.lock().unwrap();
        rho_rec(&self.group, Side::Left, x, w, &mut memo)
    }

    /// `ρ_{x,w}` by peeling the smallest right descent of `w`.
    pub fn rho_poly_right(&self, x: Element, w: Element) -> LaurentPoly {
        let mut memo = self.rho_right.lock().unwrap();
        rho_rec(&self.group, Side::Right, x, w, &mut memo)
    }

    /// `{y : y <= w}` in nondecreasing length.
    pub fn interval_below(&self, w: Element) -> Result<Vec<Element>> {
        Ok(self
            .group
            .enumerate_up_to(self.group.length(w))?
            .into_iter()
            .filter(|&y| self.group.bruhat_leq(y, w))
            .collect())
    }

    /// `p_{y,w} = v^(l(y)-l(w)) P_{y,w}` for every `y <= w`.
    pub fn p_table(&self, w: Element) -> Result<Arc<BTreeMap<Element, LaurentPoly>>> {
        if let Some(t) = self.tables.lock().unwrap().get(&w) {
            return Ok(t.clone());
        }
        let interval = self.interval_below(w)?;
        let table = Arc::new(negative_part_solve(&self.group, w, &interval, |x, y| Ok(self.rho_poly(x, y)))?);
        self.tables.lock().unwrap().insert(w, table.clone());
        Ok(table)
    }

    /// `P_{y,w}` as a polynomial in `u`; zero unless `y <= w`.
    pub fn kl_poly(&self, y: Element, w: Element) -> Result<LaurentPoly> {
        let t = self.p_table(w)?;
        Ok(match t.get(&y) {
            Some(p) => p.shift((self.group.length(w) - self.group.length(y)) as i32),
            None => LaurentPoly::zero(),
        })
    }

    /// `P_{y,w}` for all `y <= w`.
    pub fn kl_table(&self, w: Element) -> Result<BTreeMap<Element, LaurentPoly>> {
        let lw = self.group.length(w) as i32;
        Ok(self
            .p_table(w)?
            .iter()
            .map(|(&y, p)| (y, p.shift(lw - self.group.length(y) as i32)))
            .collect())
    }
}

fn rho_rec(
    g: &CoxeterGroup,
    side: Side,
    x: Element,
    w: Element,
    memo: &mut HashMap<(Element, Element), LaurentPoly>,
) -> LaurentPoly {
    if w == Element::IDENTITY {
        return if x == w { LaurentPoly::one() } else { LaurentPoly::zero() };
    }
    if !g.bruhat_leq(x, w) {
        return LaurentPoly::zero();
    }
    if let Some(r) = memo.get(&(x, w)) {
        return r.clone();
    }
    let s = g.first_descent(w, side).expect("nonidentity element has a descent");
    let (y, _) = g.mul_gen(w, s, side);
    let (sx, _) = g.mul_gen(x, s, side);
    let mut r = rho_rec(g, side, sx, y, memo);
    if !g.descent(x, s, side) {
        r += lp("v-v^-1") * rho_rec(g, side, x, y, memo);
    }
    memo.insert((x, w), r.clone());
    r
}

/// One `(y, w)` row of the mod 2 comparison `P±_{y,w} ≡ P_{y,w}`.
#[derive(Clone, Debug)]
pub struct Mod2Row {
    pub y: Element,
    pub w: Element,
    pub ppm: LaurentPoly,
    pub p: LaurentPoly,
    pub agree: bool,
}

/// Compares `P±_{y,w}` with `P_{y,w}` mod 2 for all twisted `y <= w`.
pub fn mod2_compare(cb: &CanonicalBasis, kl: &ClassicKl, w: Element) -> Result<Vec<Mod2Row>> {
    let table = cb.pi_table(w)?;
    let mut rows = Vec::new();
    for (y, _, _) in table.iter() {
        let ppm = table.ppm(y);
        let p = kl.kl_poly(y, w)?;
        let agree = (&ppm - &p).mod2().is_zero();
        rows.push(Mod2Row { y, w, ppm, p, agree });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems;

    #[test]
    fn rank_one_rho() {
        let kl = ClassicKl::new(systems::a(1).group());
        let s = kl.group().generator(0);
        assert_eq!(kl.rho_poly(Element::IDENTITY, s), lp("v-v^-1"));
        assert_eq!(kl.rho_poly(s, s), LaurentPoly::one());
        assert_eq!(kl.kl_poly(Element::IDENTITY, s).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn rho_matches_bar_extraction_b2() {
        let g = systems::b(2).group();
        let kl = ClassicKl::new(g.clone());
        let h = HeckeAlgebra::new(g.clone());
        for &w in &g.enumerate_up_to(4).unwrap() {
            let b = h.bar(&HeckeElement::basis(w));
            for &y in &g.enumerate_up_to(4).unwrap() {
                let lyw = (g.length(w) + g.length(y)) as i32;
                let extracted = b.get(y).shift(lyw).bar();
                assert_eq!(kl.rho_poly(y, w), extracted);
                assert_eq!(kl.rho_poly_right(y, w), extracted);
            }
        }
    }

    #[test]
    fn a2_kl_polys_are_one() {
        let g = systems::a(2).group();
        let kl = ClassicKl::new(g.clone());
        let top = g.from_word(&[0, 1, 0]);
        for y in g.enumerate_up_to(3).unwrap() {
            assert_eq!(kl.kl_poly(y, top).unwrap(), LaurentPoly::one());
        }
    }

    #[test]
    fn a3_has_one_plus_u() {
        let g = systems::a(3).group();
        let kl = ClassicKl::new(g.clone());
        // s2 s1 s3 s2 over s2
        let w = g.from_word(&[1, 0, 2, 1]);
        assert_eq!(kl.kl_poly(g.generator(1), w).unwrap(), lp("1+u"));
    }

    #[test]
    fn odot_matches_module_action_mod2() {
        for sys in [systems::b(2), systems::a(2).with_star(vec![1, 0]).unwrap()] {
            let m = InvolutionModule::new(sys.group());
            let model = Mod2Model::new(m.clone());
            for &w in m.enumerate_twisted(4).unwrap().iter() {
                for s in 0..sys.rank() {
                    let ts = HeckeElement::basis(m.group().generator(s));
                    let got = model.odot(&ts, &HeckeElement::basis(w)).unwrap();
                    let want = m.ts_action(s, &ModuleVector::basis(w)).mod2();
                    assert_eq!(got.to_module_vector(&m).unwrap(), want);
                }
                let b = model.bar_b(&HeckeElement::basis(w));
                assert_eq!(b.to_module_vector(&m).unwrap(), m.bar_basis(w).mod2());
            }
        }
    }
}
