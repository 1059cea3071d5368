//! The module `M` spanned by `a_w`, `w` a twisted involution, with the action of
//! the generators `T_s`, the bar operator and the r-polynomials.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use crate::coxeter::{CoxeterGroup, Element, Side};
use crate::error::{Error, Result};
use crate::laurent::{lp, LaurentPoly};

/// Finitely supported map `w -> coefficient` on the basis `a_w`.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct ModuleVector {
    terms: BTreeMap<Element, LaurentPoly>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector::default()
    }

    pub fn basis(w: Element) -> Self {
        ModuleVector::monomial(w, LaurentPoly::one())
    }

    pub fn monomial(w: Element, c: LaurentPoly) -> Self {
        let mut m = ModuleVector::zero();
        m.add_term(w, &c);
        m
    }

    pub fn get(&self, w: Element) -> LaurentPoly {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Element, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Element, &LaurentPoly)> {
        self.terms.iter().map(|(&w, c)| (w, c))
    }

    pub fn support(&self) -> Vec<Element> {
        self.terms.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &LaurentPoly) -> ModuleVector {
        self.map(|p| p * c)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (w, c) in self.iter() {
            out.add_term(w, &f(c));
        }
        out
    }

    pub fn add_scaled(&mut self, other: &ModuleVector, c: &LaurentPoly) {
        for (w, p) in other.iter() {
            self.add_term(w, &(p * c));
        }
    }

    pub fn add(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(other, &LaurentPoly::one());
        out
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(other, &LaurentPoly::constant(-1));
        out
    }

    pub fn mod2(&self) -> ModuleVector {
        self.map(LaurentPoly::mod2)
    }
}

/// How `s` acts on a twisted involution `w`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Dot {
    /// `s . w`: `sw` when `sw = ws*`, otherwise `sws*`.
    pub target: Element,
    /// `sw = ws*`.
    pub commutes: bool,
    /// `sw > w`.
    pub rises: bool,
}

/// `s . w` for the twist `perm` (a generator permutation).
pub(crate) fn dot_with(group: &CoxeterGroup, perm: &[usize], s: usize, w: Element) -> Dot {
    let sw = group.left_mul(s, w);
    let ws = group.right_mul(w, perm[s]);
    let rises = !group.descent(w, s, Side::Left);
    if sw == ws {
        Dot { target: sw, commutes: true, rises }
    } else {
        Dot { target: group.right_mul(sw, perm[s]), commutes: false, rises }
    }
}

/// The statistic `phi` for the twist `perm`: `phi(1) = 0`, and for a left descent `s`,
/// `phi(w) = phi(sw) + 1` when `sw = ws*`, `phi(w) = phi(sws*)` otherwise.
pub(crate) fn phi_with(group: &CoxeterGroup, perm: &[usize], w: Element, memo: &mut HashMap<Element, u32>) -> u32 {
    let mut chain = Vec::new();
    let mut x = w;
    let mut base = loop {
        if x == Element::IDENTITY {
            break 0;
        }
        if let Some(&p) = memo.get(&x) {
            break p;
        }
        let s = group.first_descent(x, Side::Left).unwrap();
        let d = dot_with(group, perm, s, x);
        chain.push((x, d.commutes));
        x = d.target;
    };
    for (y, commutes) in chain.into_iter().rev() {
        if commutes {
            base += 1;
        }
        memo.insert(y, base);
    }
    base
}

pub struct InvolutionModule {
    group: Arc<CoxeterGroup>,
    star: Vec<usize>,
    twisted: Mutex<Option<(usize, Arc<Vec<Element>>)>>,
    phi: Mutex<HashMap<Element, u32>>,
    bar: Mutex<HashMap<Element, Arc<ModuleVector>>>,
    r_rec: Mutex<HashMap<(Element, Element), LaurentPoly>>,
}

impl std::fmt::Debug for InvolutionModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "InvolutionModule({:?}, star {:?})", self.group, self.star)
    }
}

impl InvolutionModule {
    /// Module for the group's own star.
    pub fn new(group: Arc<CoxeterGroup>) -> Arc<Self> {
        let star = group.system().star().to_vec();
        InvolutionModule::with_star(group, star).expect("system star is valid")
    }

    /// Module for another diagram involution of the same group.
    pub fn with_star(group: Arc<CoxeterGroup>, star: Vec<usize>) -> Result<Arc<Self>> {
        group.system().with_star(star.clone())?;
        Ok(Arc::new(InvolutionModule {
            group,
            star,
            twisted: Mutex::new(None),
            phi: Mutex::new(HashMap::new()),
            bar: Mutex::new(HashMap::new()),
            r_rec: Mutex::new(HashMap::new()),
        }))
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    pub fn star(&self) -> &[usize] {
        &self.star
    }

    pub fn star_apply(&self, w: Element) -> Element {
        self.group.apply_perm(&self.star, w)
    }

    /// `w^{*-1} = w`.
    pub fn is_twisted(&self, w: Element) -> bool {
        self.star_apply(w) == self.group.inverse(w)
    }

    pub fn length(&self, w: Element) -> usize {
        self.group.length(w)
    }

    pub fn dot(&self, s: usize, w: Element) -> Dot {
        dot_with(&self.group, &self.star, s, w)
    }

    /// All twisted involutions of length `<= max_len`, sorted by (length, word).
    pub fn enumerate_twisted(&self, max_len: usize) -> Result<Arc<Vec<Element>>> {
        if let Some((l, list)) = &*self.twisted.lock().unwrap() {
            if *l == max_len {
                return Ok(list.clone());
            }
            if *l > max_len {
                let cut: Vec<Element> = list.iter().copied().filter(|&w| self.length(w) <= max_len).collect();
                return Ok(Arc::new(cut));
            }
        }
        let g = &self.group;
        let mut buckets: Vec<Vec<Element>> = vec![Vec::new(); max_len + 1];
        buckets[0].push(Element::IDENTITY);
        let mut seen = HashSet::from([Element::IDENTITY]);
        for l in 0..=max_len {
            let mut layer = std::mem::take(&mut buckets[l]);
            g.sort_shortlex(&mut layer);
            for &w in &layer {
                for s in 0..g.rank() {
                    let d = self.dot(s, w);
                    if !d.rises {
                        continue;
                    }
                    let lt = self.length(d.target);
                    if lt <= max_len && seen.insert(d.target) {
                        if seen.len() > g.cap() {
                            return Err(Error::Resource(format!(
                                "more than {} twisted involutions up to length {max_len}",
                                g.cap()
                            )));
                        }
                        buckets[lt].push(d.target);
                    }
                }
            }
            buckets[l] = layer;
        }
        let list: Arc<Vec<Element>> = Arc::new(buckets.into_iter().flatten().collect());
        *self.twisted.lock().unwrap() = Some((max_len, list.clone()));
        Ok(list)
    }

    /// `{x in I_* : x <= w}`, sorted by (length, word).
    pub fn interval_below(&self, w: Element) -> Result<Vec<Element>> {
        let all = self.enumerate_twisted(self.length(w))?;
        Ok(all.iter().copied().filter(|&x| self.group.bruhat_leq(x, w)).collect())
    }

    /// `T_s m`, from the four cases of the action on `a_w`.
    pub fn ts_action(&self, s: usize, m: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (w, f) in m.iter() {
            let d = self.dot(s, w);
            match (d.commutes, d.rises) {
                (true, true) => {
                    out.add_term(w, &(f * lp("u")));
                    out.add_term(d.target, &(f * lp("1+u")));
                }
                (true, false) => {
                    out.add_term(w, &(f * lp("-1-u+u^2")));
                    out.add_term(d.target, &(f * lp("-u+u^2")));
                }
                (false, true) => out.add_term(d.target, f),
                (false, false) => {
                    out.add_term(w, &(f * lp("-1+u^2")));
                    out.add_term(d.target, &(f * lp("u^2")));
                }
            }
        }
        out
    }

    /// `T_s^-1 m`, with `T_s^-1 = u^-2 T_s + (u^-2 - 1)`.
    pub fn ts_inverse_action(&self, s: usize, m: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (w, f) in m.iter() {
            let d = self.dot(s, w);
            match (d.commutes, d.rises) {
                (true, true) => {
                    out.add_term(w, &(f * lp("v^-4+v^-2-1")));
                    out.add_term(d.target, &(f * lp("v^-4+v^-2")));
                }
                (true, false) => {
                    out.add_term(w, &(f * lp("-v^-2")));
                    out.add_term(d.target, &(f * lp("1-v^-2")));
                }
                (false, true) => {
                    out.add_term(w, &(f * lp("v^-4-1")));
                    out.add_term(d.target, &(f * lp("v^-4")));
                }
                (false, false) => out.add_term(d.target, f),
            }
        }
        out
    }

    /// `T_x m` for `x = s_1 ... s_k`: `T_{s_1}(...(T_{s_k} m))`.
    pub fn t_word_action(&self, word: &[usize], m: &ModuleVector) -> ModuleVector {
        word.iter().rev().fold(m.clone(), |acc, &s| self.ts_action(s, &acc))
    }

    /// `bar(a_w) = eps_w T_{w^-1}^-1 a_{w^-1}`, memoized.
    pub fn bar_basis(&self, w: Element) -> Arc<ModuleVector> {
        if let Some(v) = self.bar.lock().unwrap().get(&w) {
            return v.clone();
        }
        let w_inv = self.group.inverse(w);
        let mut v = ModuleVector::basis(w_inv);
        for s in self.group.word(w_inv) {
            v = self.ts_inverse_action(s, &v);
        }
        if self.group.sign(w) < 0 {
            v = v.scale(&LaurentPoly::constant(-1));
        }
        let v = Arc::new(v);
        self.bar.lock().unwrap().insert(w, v.clone());
        v
    }

    /// The semilinear bar operator.
    pub fn bar_vector(&self, m: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (w, f) in m.iter() {
            out.add_scaled(&self.bar_basis(w), &f.bar());
        }
        out
    }

    /// `r_{y,w}`, read off from `bar(a'_w) = sum_y bar(r_{y,w}) a'_y`.
    pub fn r_poly(&self, y: Element, w: Element) -> LaurentPoly {
        let c = self.bar_basis(w).get(y);
        c.shift((self.length(w) + self.length(y)) as i32).bar()
    }

    /// `r_{x,w}` by the downward recursion on `l(w)`, independent of [`Self::r_poly`].
    pub fn r_poly_recursive(&self, x: Element, w: Element) -> Result<LaurentPoly> {
        if w == Element::IDENTITY {
            return Ok(if x == Element::IDENTITY { LaurentPoly::one() } else { LaurentPoly::zero() });
        }
        if let Some(r) = self.r_rec.lock().unwrap().get(&(x, w)) {
            return Ok(r.clone());
        }
        let s = self.group.first_descent(w, Side::Left).unwrap();
        let dw = self.dot(s, w);
        let y = dw.target;
        let dx = self.dot(s, x);
        let rxy = self.r_poly_recursive(x, y)?;
        let rty = self.r_poly_recursive(dx.target, y)?;
        let r = if dw.commutes {
            // w = sy with sy = ys*; the identity determines (v + v^-1) r_{x,w}.
            let lhs = match (dx.commutes, dx.rises) {
                (true, true) => &rty * lp("v^-1-v") + &rxy * lp("u-v^-2"),
                (true, false) => &rxy * lp("-2") + &rty * lp("v+v^-1"),
                (false, true) => &rty + &rxy * lp("u-1-v^-2"),
                (false, false) => -&rxy + &rty,
            };
            lhs.div_exact(&lp("v+v^-1")).ok_or_else(|| {
                Error::Internal(format!(
                    "r-recursion: (v+v^-1) does not divide {lhs} at x={}, w={}",
                    self.group.format_word(x),
                    self.group.format_word(w)
                ))
            })?
        } else {
            match (dx.commutes, dx.rises) {
                (true, true) => &rty * lp("v^-1-v") + &rxy * lp("u+1-v^-2"),
                (true, false) => &rty * lp("v+v^-1") - &rxy,
                (false, true) => &rty + &rxy * lp("u-v^-2"),
                (false, false) => rty,
            }
        };
        self.r_rec.lock().unwrap().insert((x, w), r.clone());
        Ok(r)
    }

    pub fn phi(&self, w: Element) -> u32 {
        let mut memo = self.phi.lock().unwrap();
        phi_with(&self.group, &self.star, w, &mut memo)
    }

    /// `(phi(w), kappa(w))` with `kappa(w) = (-1)^((l(w) + phi(w))/2)`.
    pub fn phi_kappa(&self, w: Element) -> Result<(u32, i64)> {
        let phi = self.phi(w);
        let l = self.length(w) as u32;
        if !(l + phi).is_multiple_of(2) {
            return Err(Error::Internal(format!(
                "l(w) = {l} and phi(w) = {phi} differ in parity for w = {}",
                self.group.format_word(w)
            )));
        }
        Ok((phi, if ((l + phi) / 2).is_multiple_of(2) { 1 } else { -1 }))
    }

    pub fn kappa(&self, w: Element) -> Result<i64> {
        Ok(self.phi_kappa(w)?.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems;

    fn a1() -> (Arc<InvolutionModule>, Element) {
        let m = InvolutionModule::new(systems::a(1).group());
        let s = m.group().generator(0);
        (m, s)
    }

    #[test]
    fn twisted_enumeration() {
        let m = InvolutionModule::new(systems::a(2).group());
        let words: Vec<String> = m.enumerate_twisted(3).unwrap().iter().map(|&w| m.group().format_word(w)).collect();
        assert_eq!(words, ["", "s", "t", "s.t.s"]);
        let m = InvolutionModule::new(systems::a_flip(2).group());
        let words: Vec<String> = m.enumerate_twisted(3).unwrap().iter().map(|&w| m.group().format_word(w)).collect();
        assert_eq!(words, ["", "s.t", "t.s", "s.t.s"]);
        assert_eq!(m.enumerate_twisted(0).unwrap().len(), 1);
    }

    #[test]
    fn action_examples_rank_one() {
        let (m, s) = a1();
        let one = Element::IDENTITY;
        let t1 = m.ts_action(0, &ModuleVector::basis(one));
        assert_eq!(t1.get(one), lp("u"));
        assert_eq!(t1.get(s), lp("u+1"));
        let ts = m.ts_action(0, &ModuleVector::basis(s));
        assert_eq!(ts.get(s), lp("u^2-u-1"));
        assert_eq!(ts.get(one), lp("u^2-u"));
        let inv = m.ts_inverse_action(0, &ModuleVector::basis(s));
        assert_eq!(inv.get(s), lp("-v^-2"));
        assert_eq!(inv.get(one), lp("1-v^-2"));
        assert_eq!(m.ts_inverse_action(0, &t1), ModuleVector::basis(one));
    }

    #[test]
    fn action_examples_a2() {
        let m = InvolutionModule::new(systems::a(2).group());
        let g = m.group();
        let t = g.generator(1);
        let sts = g.from_word(&[0, 1, 0]);
        assert_eq!(m.ts_action(0, &ModuleVector::basis(t)), ModuleVector::basis(sts));
        let v = m.ts_action(0, &ModuleVector::basis(sts));
        assert_eq!(v.get(sts), lp("u^2-1"));
        assert_eq!(v.get(t), lp("u^2"));
        assert_eq!(m.ts_inverse_action(0, &ModuleVector::basis(sts)), ModuleVector::basis(t));
    }

    #[test]
    fn bar_examples() {
        let (m, s) = a1();
        assert_eq!(*m.bar_basis(Element::IDENTITY), ModuleVector::basis(Element::IDENTITY));
        let b = m.bar_basis(s);
        assert_eq!(b.get(s), lp("v^-2"));
        assert_eq!(b.get(Element::IDENTITY), lp("v^-2-1"));
        assert_eq!(m.bar_vector(&b), ModuleVector::basis(s));
    }

    #[test]
    fn r_examples() {
        let (m, s) = a1();
        let one = Element::IDENTITY;
        assert_eq!(m.r_poly(one, s), lp("v-v^-1"));
        assert_eq!(m.r_poly(s, s), LaurentPoly::one());
        assert_eq!(m.r_poly(s, one), LaurentPoly::zero());
        assert_eq!(m.r_poly_recursive(one, one).unwrap(), LaurentPoly::one());
        assert_eq!(m.r_poly_recursive(one, s).unwrap(), lp("v-v^-1"));
    }

    #[test]
    fn recursion_agrees_with_extraction_b2() {
        let m = InvolutionModule::new(systems::b(2).group());
        let all = m.enumerate_twisted(4).unwrap();
        for &x in all.iter() {
            for &w in all.iter() {
                assert_eq!(m.r_poly(x, w), m.r_poly_recursive(x, w).unwrap());
            }
        }
    }

    #[test]
    fn phi_kappa_examples() {
        let (m, s) = a1();
        assert_eq!(m.phi_kappa(Element::IDENTITY).unwrap(), (0, 1));
        assert_eq!(m.phi_kappa(s).unwrap(), (1, -1));
        let m = InvolutionModule::new(systems::b(3).group());
        for &w in m.enumerate_twisted(9).unwrap().iter() {
            for s in 0..3 {
                let d = m.dot(s, w);
                if !d.rises {
                    assert_eq!(m.kappa(d.target).unwrap(), -m.kappa(w).unwrap());
                }
            }
        }
    }
}
