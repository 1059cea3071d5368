//! `(W_K, W_{K*})` double cosets, their twisted involutions, and the spherical
//! submodule `M^K` spanned by the sums `a_Ω`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::canonical::{negative_part_solve, CanonicalBasis};
use crate::coxeter::{CoxeterGroup, Element, Side};
use crate::error::{Error, Result};
use crate::laurent::{lp, LaurentPoly, RatFn};
use crate::module::{phi_with, InvolutionModule, ModuleVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    /// `K`, sorted.
    pub k: Vec<usize>,
    /// `K*`, sorted.
    pub k_star: Vec<usize>,
    /// Minimal element.
    pub b: Element,
    /// Maximal element `w_K w_J b w_{K*}`.
    pub d: Element,
    /// `J = K ∩ b K* b^-1`, sorted.
    pub j: Vec<usize>,
    /// `J' = b^-1 J b ⊆ K*`, sorted.
    pub j_prime: Vec<usize>,
    /// Stable under `w -> w^{*-1}`.
    pub stable: bool,
    /// For stable cosets: `t -> b^-1 t* b` on `J'`, identity elsewhere.
    pub tau: Option<Vec<usize>>,
}

/// `x = c b d'` with `c ∈ W_K^J`, `d' ∈ W_{K*}` and additive lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Kilmoyer {
    pub c: Element,
    pub b: Element,
    pub d: Element,
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// The generator `b^-1 s b`, if it is one.
fn conjugate_gen(g: &CoxeterGroup, b: Element, s: usize) -> Option<usize> {
    let y = g.mul(g.right_mul(g.inverse(b), s), b);
    if g.length(y) == 1 {
        Some(g.word(y)[0])
    } else {
        None
    }
}

fn star_set(module: &InvolutionModule, k: &[usize]) -> Vec<usize> {
    sorted(k.iter().map(|&s| module.star()[s]).collect())
}

/// Strips left `K`-descents and right `K*`-descents.
fn minimal_rep(g: &CoxeterGroup, x: Element, k: &[usize], k_star: &[usize]) -> Element {
    let mut x = x;
    loop {
        if let Some(&s) = k.iter().find(|&&s| g.descent(x, s, Side::Left)) {
            x = g.left_mul(s, x);
        } else if let Some(&t) = k_star.iter().find(|&&t| g.descent(x, t, Side::Right)) {
            x = g.right_mul(x, t);
        } else {
            return x;
        }
    }
}

/// The double coset `W_K x W_{K*}`.
pub fn coset_of(module: &InvolutionModule, x: Element, k: &[usize]) -> Result<DoubleCoset> {
    let g = module.group();
    let k = sorted(k.to_vec());
    if !g.is_finite_parabolic(&k)? {
        return Err(Error::Domain(format!("W_K is infinite for K = {k:?}")));
    }
    let k_star = star_set(module, &k);
    let b = minimal_rep(g, x, &k, &k_star);
    let mut j = Vec::new();
    let mut j_prime = Vec::new();
    for &s in &k {
        if let Some(t) = conjugate_gen(g, b, s) {
            if k_star.contains(&t) {
                j.push(s);
                j_prime.push(t);
            }
        }
    }
    let j_prime = sorted(j_prime);
    let w_k = g.longest_element(&k)?;
    let w_j = g.longest_element(&j)?;
    let w_ks = g.longest_element(&k_star)?;
    let d = g.mul(g.mul(g.mul(w_k, w_j), b), w_ks);
    let expected = g.length(w_k) + g.length(b) + g.length(w_ks) - g.length(w_j);
    if g.length(d) != expected {
        return Err(Error::Internal(format!(
            "maximal element {} has length {}, expected {expected}",
            g.format_word(d),
            g.length(d)
        )));
    }
    let stable = module.is_twisted(b);
    let tau = if stable {
        let mut perm: Vec<usize> = (0..g.rank()).collect();
        for &t in &j_prime {
            perm[t] = conjugate_gen(g, b, module.star()[t])
                .filter(|u| j_prime.contains(u))
                .ok_or_else(|| Error::Internal(format!("b^-1 t* b is not in J' for t = {t}")))?;
        }
        Some(perm)
    } else {
        None
    };
    Ok(DoubleCoset { k, k_star, b, d, j, j_prime, stable, tau })
}

/// Kilmoyer's decomposition of `x` relative to its coset.
pub fn kilmoyer(module: &InvolutionModule, x: Element, k: &[usize]) -> Result<Kilmoyer> {
    let g = module.group();
    let omega = coset_of(module, x, k)?;
    let mut x0 = x;
    while let Some(&t) = omega.k_star.iter().find(|&&t| g.descent(x0, t, Side::Right)) {
        x0 = g.right_mul(x0, t);
    }
    let c = g.mul(x0, g.inverse(omega.b));
    let d = g.mul(g.inverse(x0), x);
    let dec = Kilmoyer { c, b: omega.b, d };
    if g.length(c) + g.length(omega.b) + g.length(d) != g.length(x) {
        return Err(Error::Internal(format!("lengths not additive for {}", g.format_word(x))));
    }
    Ok(dec)
}

/// All elements of the coset.
pub fn coset_elements(module: &InvolutionModule, omega: &DoubleCoset) -> Result<Vec<Element>> {
    let g = module.group();
    let left = g.parabolic_elements(&omega.k)?;
    let right = g.parabolic_elements(&omega.k_star)?;
    let mut set = BTreeSet::new();
    for &c in &left {
        let cb = g.mul(c, omega.b);
        for &d in &right {
            set.insert(g.mul(cb, d));
        }
    }
    let mut out: Vec<Element> = set.into_iter().collect();
    g.sort_shortlex(&mut out);
    Ok(out)
}

/// `Ω ∩ I_*`, sorted by (length, word). Produced by `(c, z) -> c b z c^{*-1}` and
/// checked against a direct filter of the coset.
pub fn coset_involutions(module: &InvolutionModule, omega: &DoubleCoset) -> Result<Vec<Element>> {
    let Some(tau) = &omega.tau else {
        return Ok(Vec::new());
    };
    let g = module.group();
    let mut produced = BTreeSet::new();
    let cs: Vec<Element> = g
        .parabolic_elements(&omega.k)?
        .into_iter()
        .filter(|&c| omega.j.iter().all(|&s| !g.descent(c, s, Side::Right)))
        .collect();
    let zs: Vec<Element> = g
        .parabolic_elements(&omega.j_prime)?
        .into_iter()
        .filter(|&z| g.apply_perm(tau, z) == g.inverse(z))
        .collect();
    for &c in &cs {
        let tail = g.inverse(module.star_apply(c));
        for &z in &zs {
            produced.insert(g.mul(g.mul(g.mul(c, omega.b), z), tail));
        }
    }
    let filtered: BTreeSet<Element> =
        coset_elements(module, omega)?.into_iter().filter(|&x| module.is_twisted(x)).collect();
    if produced != filtered || produced.len() != cs.len() * zs.len() {
        return Err(Error::Internal(format!(
            "coset of {}: parametrization gives {} involutions, filtering gives {}",
            g.format_word(omega.b),
            produced.len(),
            filtered.len()
        )));
    }
    let mut out: Vec<Element> = produced.into_iter().collect();
    g.sort_shortlex(&mut out);
    Ok(out)
}

/// A chain `x = x_0, x_1 = s_1 . x_0, ..., x_n = b` inside `Ω ∩ I_*`, taking the
/// smallest left descent in `K` at each step.
pub fn chain_to_min(module: &InvolutionModule, x: Element, k: &[usize]) -> Result<Vec<(usize, Element)>> {
    let g = module.group();
    if !module.is_twisted(x) {
        return Err(Error::Domain(format!("{} is not a twisted involution", g.format_word(x))));
    }
    let omega = coset_of(module, x, k)?;
    let mut chain = Vec::new();
    let mut cur = x;
    while cur != omega.b {
        let s = *omega
            .k
            .iter()
            .find(|&&s| g.descent(cur, s, Side::Left))
            .ok_or_else(|| Error::Internal(format!("{} has no left descent in K", g.format_word(cur))))?;
        cur = module.dot(s, cur).target;
        chain.push((s, cur));
    }
    Ok(chain)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Rank2Case {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

impl fmt::Display for Rank2Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rank2Case::I => "i",
            Rank2Case::II => "ii",
            Rank2Case::III => "iii",
            Rank2Case::IV => "iv",
            Rank2Case::V => "v",
            Rank2Case::VI => "vi",
            Rank2Case::VII => "vii",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct Rank2Classification {
    pub case: Rank2Case,
    pub xi: Vec<Element>,
    pub xi_prime: Vec<Element>,
}

impl Rank2Classification {
    /// Union of both lists, sorted by (length, word).
    pub fn elements(&self, g: &CoxeterGroup) -> Vec<Element> {
        let set: BTreeSet<Element> = self.xi.iter().chain(&self.xi_prime).copied().collect();
        let mut out: Vec<Element> = set.into_iter().collect();
        g.sort_shortlex(&mut out);
        out
    }
}

/// `s t s ...` with `n` letters.
fn alternating(g: &CoxeterGroup, first: usize, second: usize, n: usize) -> Element {
    let word: Vec<usize> = (0..n).map(|i| if i % 2 == 0 { first } else { second }).collect();
    g.from_word(&word)
}

/// Which of the seven rank-2 shapes `Ω ∩ I_*` has, with its `ξ`, `ξ'` lists.
pub fn classify_rank2(module: &InvolutionModule, omega: &DoubleCoset) -> Result<Rank2Classification> {
    let g = module.group();
    if omega.k.len() != 2 || !omega.stable {
        return Err(Error::Domain("rank-2 classification needs |K| = 2 and a stable coset".into()));
    }
    let (s, t) = (omega.k[0], omega.k[1]);
    let m = g.system().m(s, t).ok_or_else(|| Error::Domain("m(s,t) is infinite".into()))? as usize;
    let star = module.star();
    let b = omega.b;
    let sb = g.left_mul(s, b);
    let tb = g.left_mul(t, b);
    let s_fixed = sb == g.right_mul(b, star[s]);
    let t_fixed = tb == g.right_mul(b, star[t]);
    let crossed = sb == g.right_mul(b, star[t]);
    let conj = |x: Element| g.mul(g.mul(g.inverse(x), b), module.star_apply(x));
    let ss = |i: usize| alternating(g, s, t, i);
    let tt = |i: usize| alternating(g, t, s, i);
    let w_k = ss(m);
    let (mut xi, mut xi_prime) = (Vec::new(), Vec::new());
    let case = match (s_fixed, t_fixed, crossed) {
        (false, false, false) => {
            for i in 0..=m {
                xi.push(conj(ss(i)));
                xi_prime.push(conj(tt(i)));
            }
            Rank2Case::I
        }
        (true, false, _) => {
            for i in 0..m {
                xi.push(conj(tt(i)));
                xi.push(g.mul(g.mul(g.inverse(tt(i)), b), module.star_apply(ss(i + 1))));
            }
            Rank2Case::II
        }
        (false, true, _) => {
            for i in 0..m {
                xi.push(conj(ss(i)));
                xi.push(g.mul(g.mul(g.inverse(ss(i)), b), module.star_apply(tt(i + 1))));
            }
            Rank2Case::III
        }
        (true, true, _) | (false, false, true) => {
            let odd = s_fixed;
            xi.push(b);
            xi_prime.push(b);
            let mut k = if odd { 1 } else { 2 };
            while k <= m {
                // x_1 = s, x_3 = tst, ... ; x_2 = st, x_4 = tsts, ...
                let starts_with_s = if odd { (k / 2) % 2 == 0 } else { (k / 2) % 2 == 1 };
                let (a, c) = if starts_with_s { (s, t) } else { (t, s) };
                xi.push(g.mul(alternating(g, a, c, k), b));
                xi_prime.push(g.mul(alternating(g, c, a, k), b));
                k += 2;
            }
            if m % 2 != if odd { 1 } else { 0 } {
                xi.push(g.mul(w_k, b));
                xi_prime.push(g.mul(w_k, b));
            }
            match (odd, m % 2 == 1) {
                (true, true) => Rank2Case::IV,
                (true, false) => Rank2Case::V,
                (false, true) => Rank2Case::VI,
                (false, false) => Rank2Case::VII,
            }
        }
    };
    Ok(Rank2Classification { case, xi, xi_prime })
}

/// Every stable coset whose maximal element has length `<= max_len`, sorted by that element.
pub fn cosets_up_to(module: &InvolutionModule, k: &[usize], max_len: usize) -> Result<Vec<DoubleCoset>> {
    let g = module.group();
    let k = sorted(k.to_vec());
    let k_star = star_set(module, &k);
    let mut out = Vec::new();
    for &w in module.enumerate_twisted(max_len)?.iter() {
        let top = k.iter().all(|&s| g.descent(w, s, Side::Left))
            && k_star.iter().all(|&t| g.descent(w, t, Side::Right));
        if top {
            let omega = coset_of(module, w, &k)?;
            debug_assert_eq!(omega.d, w);
            out.push(omega);
        }
    }
    Ok(out)
}

/// `a_Ω = sum over Ω ∩ I_* of a_w`.
pub fn a_omega(module: &InvolutionModule, omega: &DoubleCoset) -> Result<ModuleVector> {
    let mut m = ModuleVector::zero();
    for w in coset_involutions(module, omega)? {
        m.add_term(w, &LaurentPoly::one());
    }
    Ok(m)
}

/// Membership in `M^K`: coefficients agree along every `s .` edge with `s ∈ K`.
pub fn is_in_mk(module: &InvolutionModule, m: &ModuleVector, k: &[usize]) -> bool {
    m.iter().all(|(w, c)| k.iter().all(|&s| &m.get(module.dot(s, w).target) == c))
}

/// `Σ m` with `Σ = sum_{x ∈ W_K} T_x`.
pub fn sigma_action(module: &InvolutionModule, k: &[usize], m: &ModuleVector) -> Result<ModuleVector> {
    let g = module.group();
    let mut images: HashMap<Element, ModuleVector> = HashMap::new();
    let mut total = ModuleVector::zero();
    for x in g.parabolic_elements(k)? {
        let img = match g.first_descent(x, Side::Left) {
            None => m.clone(),
            Some(s) => module.ts_action(s, &images[&g.left_mul(s, x)]),
        };
        total = total.add(&img);
        images.insert(x, img);
    }
    Ok(total)
}

/// `λ = (u-1)/(u+1)`.
fn lambda() -> RatFn {
    RatFn::new(lp("u-1"), lp("1+u")).unwrap()
}

/// `ζ(a_w) = u^l(w) λ^φ(w)`, extended linearly.
pub fn zeta(module: &InvolutionModule, m: &ModuleVector) -> RatFn {
    let mut total = RatFn::zero();
    for (w, c) in m.iter() {
        let term = lambda().pow(module.phi(w)).mul_poly(&c.shift(2 * module.length(w) as i32));
        total = total.add(&term);
    }
    total
}

/// `sum u^l(x)` over `x ∈ W_K` with `perm(x) = x`, where `perm` permutes `K`.
pub fn twisted_fixed_poincare(g: &CoxeterGroup, perm: &[usize], k: &[usize]) -> Result<LaurentPoly> {
    check_perm_stable(perm, k)?;
    let mut p = LaurentPoly::zero();
    for x in g.parabolic_elements(k)? {
        if g.apply_perm(perm, x) == x {
            p += LaurentPoly::u_pow(g.length(x) as i32);
        }
    }
    Ok(p)
}

/// `sum u^l(y) λ^φ(y)` over `y ∈ W_K` with `perm(y) = y^-1`, `φ` taken for `perm`.
pub fn twisted_r_series(g: &CoxeterGroup, perm: &[usize], k: &[usize]) -> Result<RatFn> {
    check_perm_stable(perm, k)?;
    let mut memo = HashMap::new();
    let mut total = RatFn::zero();
    for y in g.parabolic_elements(k)? {
        if g.apply_perm(perm, y) == g.inverse(y) {
            let phi = phi_with(g, perm, y, &mut memo);
            total = total.add(&lambda().pow(phi).mul_poly(&LaurentPoly::u_pow(g.length(y) as i32)));
        }
    }
    Ok(total)
}

fn check_perm_stable(perm: &[usize], k: &[usize]) -> Result<()> {
    if k.iter().any(|&s| !k.contains(&perm[s])) {
        return Err(Error::Domain(format!("generator set {k:?} is not stable under the twist")));
    }
    Ok(())
}

/// `P_K`, and for star-stable `K` also `P_{K,*}` and `R_{K,*}`.
#[derive(Clone, Debug)]
pub struct SphericalSeries {
    pub p_k: LaurentPoly,
    pub p_k_star: Option<LaurentPoly>,
    pub r_k_star: Option<RatFn>,
}

pub fn spherical_series(module: &InvolutionModule, k: &[usize]) -> Result<SphericalSeries> {
    let g = module.group();
    let p_k = g.poincare_poly(k)?;
    let stable = check_perm_stable(module.star(), k).is_ok();
    let (p_k_star, r_k_star) = if stable {
        (
            Some(twisted_fixed_poincare(g, module.star(), k)?),
            Some(twisted_r_series(g, module.star(), k)?),
        )
    } else {
        (None, None)
    };
    Ok(SphericalSeries { p_k, p_k_star, r_k_star })
}

/// `R_{S,*}(u) P_{S,*}(u) = P_S(u^2)` for a finite group; returns both sides.
pub fn poincare_identity_sides(module: &InvolutionModule) -> Result<(RatFn, RatFn)> {
    let all: Vec<usize> = (0..module.group().rank()).collect();
    let ser = spherical_series(module, &all)?;
    let lhs = ser.r_k_star.unwrap().mul_poly(&ser.p_k_star.unwrap());
    let rhs = RatFn::from_poly(ser.p_k.double_exponents());
    Ok((lhs, rhs))
}

/// `P_{J',τ}(u)` for the coset.
pub fn coset_fixed_poincare(module: &InvolutionModule, omega: &DoubleCoset) -> Result<LaurentPoly> {
    let tau = omega.tau.as_ref().ok_or_else(|| Error::Domain("coset is not stable".into()))?;
    twisted_fixed_poincare(module.group(), tau, &omega.j_prime)
}

/// Both sides of `sum_{w ∈ Ω ∩ I_*} ζ(a_w) = P_K(u^2) P_J(u^2)^-1 ζ(a_b) R_{J',τ}(u)`.
pub fn zeta_coset_sides(module: &InvolutionModule, omega: &DoubleCoset) -> Result<(RatFn, RatFn)> {
    let g = module.group();
    let tau = omega.tau.as_ref().ok_or_else(|| Error::Domain("coset is not stable".into()))?;
    let lhs = zeta(module, &a_omega(module, omega)?);
    let r = twisted_r_series(g, tau, &omega.j_prime)?;
    let rhs = zeta(module, &ModuleVector::basis(omega.b))
        .mul(&r)
        .mul_poly(&g.poincare_poly(&omega.k)?.double_exponents())
        .div_poly(&g.poincare_poly(&omega.j)?.double_exponents())?;
    Ok((lhs, rhs))
}

/// Coset r-polynomials `r_{Ω',Ω} = sum_{x ∈ Ω ∩ I_*, d_Ω' <= x} v^(l(x)-l(d_Ω)) r_{d_Ω',x}`.
pub fn coset_r_poly(module: &InvolutionModule, lower: &DoubleCoset, upper: &DoubleCoset) -> Result<LaurentPoly> {
    let g = module.group();
    let ld = g.length(upper.d) as i32;
    let mut total = LaurentPoly::zero();
    for x in coset_involutions(module, upper)? {
        if g.bruhat_leq(lower.d, x) {
            total += module.r_poly(lower.d, x).shift(g.length(x) as i32 - ld);
        }
    }
    Ok(total)
}

/// The bar-invariant element `A_Ω = sum π_{Ω',Ω} a'_Ω'` of `M^K`, built from the coset
/// r-polynomials alone.
pub fn coset_canonical(module: &InvolutionModule, omega: &DoubleCoset) -> Result<ModuleVector> {
    let g = module.group();
    let below: Vec<DoubleCoset> = cosets_up_to(module, &omega.k, g.length(omega.d))?
        .into_iter()
        .filter(|o| g.bruhat_leq(o.d, omega.d))
        .collect();
    let by_d: BTreeMap<Element, &DoubleCoset> = below.iter().map(|o| (o.d, o)).collect();
    let ds: Vec<Element> = below.iter().map(|o| o.d).collect();
    let pi = negative_part_solve(g, omega.d, &ds, |x, y| coset_r_poly(module, by_d[&x], by_d[&y]))?;
    let mut out = ModuleVector::zero();
    for (d, p) in pi {
        let a = a_omega(module, by_d[&d])?;
        out = out.add(&a.scale(&p.shift(-(g.length(d) as i32))));
    }
    Ok(out)
}

/// `A_{d_Ω}` from the full canonical basis.
pub fn a_of_coset(cb: &CanonicalBasis, omega: &DoubleCoset) -> Result<ModuleVector> {
    cb.a_canonical(omega.d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems;

    fn words(g: &CoxeterGroup, v: &[Element]) -> Vec<String> {
        v.iter().map(|&w| g.format_word(w)).collect()
    }

    #[test]
    fn a2_full_coset() {
        let m = InvolutionModule::new(systems::a(2).group());
        let g = m.group().clone();
        let om = coset_of(&m, g.generator(0), &[0, 1]).unwrap();
        assert_eq!(om.b, Element::IDENTITY);
        assert_eq!(g.format_word(om.d), "s.t.s");
        assert_eq!(om.j, vec![0, 1]);
        assert_eq!(words(&g, &coset_involutions(&m, &om).unwrap()), ["", "s", "t", "s.t.s"]);
        assert_eq!(classify_rank2(&m, &om).unwrap().case, Rank2Case::IV);
        let chain = chain_to_min(&m, g.from_word(&[0, 1, 0]), &[0, 1]).unwrap();
        assert_eq!(chain.last().unwrap().1, Element::IDENTITY);
    }

    #[test]
    fn b2_identity_coset_is_case_v() {
        let m = InvolutionModule::new(systems::b(2).group());
        let om = coset_of(&m, Element::IDENTITY, &[0, 1]).unwrap();
        assert_eq!(classify_rank2(&m, &om).unwrap().case, Rank2Case::V);
    }

    #[test]
    fn rank_one_cosets() {
        let m = InvolutionModule::new(systems::a(2).group());
        let g = m.group().clone();
        // K = {s}: the coset of t has sb != bs*, the coset of 1 has sb = bs*.
        let om = coset_of(&m, g.generator(1), &[0]).unwrap();
        assert_eq!(words(&g, &coset_involutions(&m, &om).unwrap()), ["t", "s.t.s"]);
        let om = coset_of(&m, Element::IDENTITY, &[0]).unwrap();
        assert_eq!(words(&g, &coset_involutions(&m, &om).unwrap()), ["", "s"]);
    }

    #[test]
    fn sigma_on_rank_one() {
        let m = InvolutionModule::new(systems::a(1).group());
        let s = m.group().generator(0);
        let got = sigma_action(&m, &[0], &ModuleVector::basis(Element::IDENTITY)).unwrap();
        assert_eq!(got.get(Element::IDENTITY), lp("1+u"));
        assert_eq!(got.get(s), lp("1+u"));
    }

    #[test]
    fn zeta_values() {
        let m = InvolutionModule::new(systems::a(1).group());
        let s = m.group().generator(0);
        assert_eq!(zeta(&m, &ModuleVector::basis(Element::IDENTITY)), RatFn::from_poly(LaurentPoly::one()));
        assert_eq!(zeta(&m, &ModuleVector::basis(s)), RatFn::new(lp("u^2-u"), lp("1+u")).unwrap());
        let ts = m.ts_action(0, &ModuleVector::basis(Element::IDENTITY));
        assert_eq!(zeta(&m, &ts), RatFn::from_poly(lp("u^2")));
    }

    #[test]
    fn poincare_identity_rank_one() {
        let m = InvolutionModule::new(systems::a(1).group());
        let ser = spherical_series(&m, &[0]).unwrap();
        assert_eq!(ser.r_k_star.unwrap(), RatFn::new(lp("1+u^2"), lp("1+u")).unwrap());
        let (l, r) = poincare_identity_sides(&m).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn spherical_identities_small() {
        let mut checked = 0;
        for (_, sys) in systems::finite_test_systems() {
            if sys.rank() > 3 {
                continue;
            }
            let m = InvolutionModule::new(sys.group());
            let cb = CanonicalBasis::new(m.clone());
            let g = m.group().clone();
            let (l, r) = poincare_identity_sides(&m).unwrap();
            assert_eq!(l, r);
            let n = g.rank();
            for mask in 1u32..(1 << n) {
                let k: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                if k.len() == n && n == 3 && g.length(g.longest_element(&k).unwrap()) > 9 {
                    continue;
                }
                for om in cosets_up_to(&m, &k, 9).unwrap() {
                    checked += 1;
                    let inv = coset_involutions(&m, &om).unwrap();
                    assert!(!inv.is_empty());
                    let sig = sigma_action(&m, &k, &ModuleVector::basis(om.b)).unwrap();
                    let want = a_omega(&m, &om).unwrap().scale(&coset_fixed_poincare(&m, &om).unwrap());
                    assert_eq!(sig, want);
                    let ad = cb.a_canonical(om.d).unwrap();
                    assert!(is_in_mk(&m, &ad, &k));
                    assert_eq!(coset_canonical(&m, &om).unwrap(), ad);
                    if om.k == om.k_star {
                        let (l, r) = zeta_coset_sides(&m, &om).unwrap();
                        assert_eq!(l, r);
                    }
                    if k.len() == 2 {
                        let cl = classify_rank2(&m, &om).unwrap();
                        assert_eq!(cl.elements(&g), inv);
                    }
                }
            }
        }
        assert!(checked > 100, "{checked}");
    }
}
