//! Verification suites. Each one walks every twisted involution up to a length bound and
//! stops at the first violated identity, reporting its operands.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::affine::AffineSetup;
use crate::canonical::{split_pm, CanonicalBasis};
use crate::classic::{mod2_compare, ClassicKl, HeckeAlgebra, HeckeElement, Mod2Model};
use crate::cosets::{
    a_omega, classify_rank2, coset_canonical, coset_fixed_poincare, coset_involutions, coset_of, cosets_up_to,
    is_in_mk, poincare_identity_sides, sigma_action, zeta_coset_sides,
};
use crate::coxeter::{CoxeterGroup, Element};
use crate::duality::DualityContext;
use crate::error::{Error, Result};
use crate::laurent::{lp, LaurentPoly};
use crate::module::{InvolutionModule, ModuleVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    ModuleAxioms,
    Bar,
    Rpoly,
    Canonical,
    Spherical,
    SixThree,
    Inversion,
    Mod2,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::ModuleAxioms,
        Suite::Bar,
        Suite::Rpoly,
        Suite::Canonical,
        Suite::Spherical,
        Suite::SixThree,
        Suite::Inversion,
        Suite::Mod2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ModuleAxioms => "module-axioms",
            Suite::Bar => "bar",
            Suite::Rpoly => "rpoly",
            Suite::Canonical => "canonical",
            Suite::Spherical => "spherical",
            Suite::SixThree => "sixthree",
            Suite::Inversion => "inversion",
            Suite::Mod2 => "mod2",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    /// Number of identities checked.
    pub checked: usize,
    pub failure: Option<String>,
    /// Informational lines (skipped parts, report-only scans).
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite, checked: 0, failure: None, notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "{}: ok ({} checks)", self.suite, self.checked)?,
            Some(msg) => write!(f, "{}: FAILED after {} checks: {}", self.suite, self.checked, msg)?,
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

/// Counts one check and bails out of the suite with a message on failure.
macro_rules! check {
    ($rep:expr, $cond:expr, $($msg:tt)+) => {{
        $rep.checked += 1;
        if !$cond {
            $rep.failure = Some(format!($($msg)+));
            return Ok($rep);
        }
    }};
}

/// `P±` with nonnegative-coefficient split, for the sign scan.
#[derive(Clone, Debug)]
pub struct SplitRow {
    pub y: Element,
    pub w: Element,
    pub plus: LaurentPoly,
    pub minus: LaurentPoly,
}

impl SplitRow {
    pub fn has_negative(&self) -> bool {
        self.plus.terms().chain(self.minus.terms()).any(|(_, c)| c < 0)
    }
}

/// Shared caches for running several suites on one module.
pub struct Verifier {
    module: Arc<InvolutionModule>,
    cb: CanonicalBasis,
    kl: ClassicKl,
    max_len: usize,
}

impl Verifier {
    pub fn new(module: Arc<InvolutionModule>, max_len: usize) -> Self {
        let cb = CanonicalBasis::new(module.clone());
        let kl = ClassicKl::new(module.group().clone());
        Verifier { module, cb, kl, max_len }
    }

    pub fn module(&self) -> &Arc<InvolutionModule> {
        &self.module
    }

    pub fn canonical(&self) -> &CanonicalBasis {
        &self.cb
    }

    pub fn classic(&self) -> &ClassicKl {
        &self.kl
    }

    fn g(&self) -> &Arc<CoxeterGroup> {
        self.module.group()
    }

    fn w(&self, x: Element) -> String {
        let s = self.g().format_word(x);
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }

    fn twisted(&self) -> Result<Arc<Vec<Element>>> {
        self.module.enumerate_twisted(self.max_len)
    }

    fn is_finite(&self) -> Result<bool> {
        let all: Vec<usize> = (0..self.g().rank()).collect();
        self.g().is_finite_parabolic(&all)
    }

    pub fn run(&self, suite: Suite) -> Result<SuiteReport> {
        match suite {
            Suite::ModuleAxioms => self.module_axioms(),
            Suite::Bar => self.bar(),
            Suite::Rpoly => self.rpoly(),
            Suite::Canonical => self.canonical_suite(),
            Suite::Spherical => self.spherical(),
            Suite::SixThree => self.sixthree(),
            Suite::Inversion => self.inversion(),
            Suite::Mod2 => self.mod2(),
        }
    }

    pub fn run_all(&self) -> Result<Vec<SuiteReport>> {
        Suite::ALL.into_iter().map(|s| self.run(s)).collect()
    }

    /// Quadratic and braid relations on every `a_w`.
    pub fn module_axioms(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new(Suite::ModuleAxioms);
        let m = &self.module;
        let rank = self.g().rank();
        for &w in self.twisted()?.iter() {
            let a = ModuleVector::basis(w);
            for s in 0..rank {
                let t1 = m.ts_action(s, &a);
                let t2 = m.ts_action(s, &t1);
                let q = t2.sub(&t1.scale(&lp("u^2-1"))).sub(&a.scale(&lp("u^2")));
                check!(rep, q.is_zero(), "(T_s+1)(T_s-u^2) a_w = {q:?}, s = {}, w = {}", s, self.w(w));
            }
            for s in 0..rank {
                for t in s + 1..rank {
                    let Some(mst) = self.g().system().m(s, t) else { continue };
                    let word = |first: usize, second: usize| -> Vec<usize> {
                        (0..mst as usize).map(|i| if i % 2 == 0 { first } else { second }).collect()
                    };
                    let lhs = m.t_word_action(&word(s, t), &a);
                    let rhs = m.t_word_action(&word(t, s), &a);
                    check!(rep, lhs == rhs, "braid relation for ({s},{t}) on a_{}: {lhs:?} vs {rhs:?}", self.w(w));
                }
            }
        }
        Ok(rep)
    }

    /// `bar^2 = 1` and `bar(T_s a_w) = T_s^-1 bar(a_w)`.
    pub fn bar(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new(Suite::Bar);
        let m = &self.module;
        for &w in self.twisted()?.iter() {
            let b = m.bar_basis(w);
            let bb = m.bar_vector(&b);
            check!(rep, bb == ModuleVector::basis(w), "bar(bar(a_{})) = {bb:?}", self.w(w));
            for s in 0..self.g().rank() {
                let lhs = m.bar_vector(&m.ts_action(s, &ModuleVector::basis(w)));
                let rhs = m.ts_inverse_action(s, &b);
                check!(rep, lhs == rhs, "bar(T_{s} a_{}) = {lhs:?} but T_s^-1 bar(a_w) = {rhs:?}", self.w(w));
            }
        }
        Ok(rep)
    }

    /// Extraction against recursion, support, parity, constant terms, orthogonality and
    /// the Möbius sums.
    pub fn rpoly(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new(Suite::Rpoly);
        let m = &self.module;
        let g = self.g();
        let all = self.twisted()?;
        for &w in all.iter() {
            let lw = g.length(w) as i32;
            let kw = m.kappa(w)?;
            for &x in all.iter().take_while(|&&x| g.length(x) <= g.length(w)) {
                let r = m.r_poly(x, w);
                let below = g.bruhat_leq(x, w);
                if !below {
                    check!(rep, r.is_zero(), "r_{{{},{}}} = {r} although x is not below w", self.w(x), self.w(w));
                    continue;
                }
                let rec = m.r_poly_recursive(x, w)?;
                check!(rep, rec == r, "r_{{{},{}}}: extraction {r}, recursion {rec}", self.w(x), self.w(w));
                let shift = g.length(x) as i32 - lw;
                let r1 = r.shift(shift);
                let r2 = r.bar().shift(shift);
                let ok = |p: &LaurentPoly| p.terms().all(|(e, _)| e <= 0 && e % 2 == 0);
                check!(rep, ok(&r1) && ok(&r2), "r'/r'' of ({}, {}) not in Z[v^-2]: {r1}, {r2}", self.w(x), self.w(w));
                check!(rep, r1.coeff(0) == 1, "r'_{{{},{}}} = {r1} has constant term != 1", self.w(x), self.w(w));
                let kk = m.kappa(x)? * kw;
                check!(rep, r2.coeff(0) == kk, "r''_{{{},{}}} = {r2}, expected constant term {kk}", self.w(x), self.w(w));
            }
            if g.length(w) == 0 {
                check!(rep, m.r_poly(w, w).is_one(), "r_{{1,1}} != 1");
            }
            let interval = m.interval_below(w)?;
            for &x in &interval {
                let mut orth = LaurentPoly::zero();
                let mut mob = 0i64;
                for &y in &interval {
                    if g.bruhat_leq(x, y) {
                        orth += m.r_poly(x, y).bar() * m.r_poly(y, w);
                        mob += m.kappa(x)? * m.kappa(y)?;
                    }
                }
                let delta = i64::from(x == w);
                check!(
                    rep,
                    orth == LaurentPoly::constant(delta),
                    "sum bar(r_{{x,y}}) r_{{y,z}} = {orth} for x = {}, z = {}",
                    self.w(x),
                    self.w(w)
                );
                check!(rep, mob == delta, "Möbius sum {mob} for x = {}, z = {}", self.w(x), self.w(w));
            }
        }
        Ok(rep)
    }

    /// Bar invariance, unitriangularity, degree bound, constant term, Möbius sums and
    /// independence of the generator order.
    pub fn canonical_suite(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new(Suite::Canonical);
        let m = &self.module;
        let g = self.g();
        let all = self.twisted()?;
        for &w in all.iter() {
            let lw = g.length(w);
            let a = self.cb.a_canonical(w)?;
            check!(rep, m.bar_vector(&a) == a, "A_{} is not bar invariant: {a:?}", self.w(w));
            check!(
                rep,
                a.get(w) == LaurentPoly::v_pow(-(lw as i32)) && a.iter().all(|(y, _)| g.bruhat_leq(y, w)),
                "A_{} is not unitriangular: {a:?}",
                self.w(w)
            );
            for (y, ly, _) in self.cb.pi_table(w)?.iter() {
                let p = self.cb.ppm(y, w)?;
                let in_zu = p.terms().all(|(e, _)| e >= 0 && e % 2 == 0);
                check!(rep, in_zu && p.coeff(0) == 1, "P±_{{{},{}}} = {p}", self.w(y), self.w(w));
                if y != w {
                    let deg = p.max_exp().unwrap_or(0) as usize;
                    check!(rep, deg < lw - ly, "P±_{{{},{}}} = {p} exceeds the degree bound", self.w(y), self.w(w));
                }
            }
            let table = self.cb.pi_table(w)?;
            for (x, _, _) in table.iter() {
                let mut sum = 0;
                for (y, _, _) in table.iter() {
                    if g.bruhat_leq(x, y) {
                        sum += self.cb.mobius(x, y)?;
                    }
                }
                check!(rep, sum == i64::from(x == w), "Möbius sum {sum} on [{}, {}]", self.w(x), self.w(w));
            }
        }
        let rank = g.rank();
        if rank > 1 {
            let order: Vec<usize> = (0..rank).rev().collect();
            let other_sys = g.system().with_star(m.star().to_vec())?.permuted(&order)?;
            let og = Arc::new(CoxeterGroup::with_cap(other_sys, g.cap())?);
            let om = InvolutionModule::new(og.clone());
            let ocb = CanonicalBasis::new(om);
            for &w in all.iter() {
                let ow = og.parse_word(&g.format_word(w))?;
                for (y, _, _) in self.cb.pi_table(w)?.iter() {
                    let oy = og.parse_word(&g.format_word(y))?;
                    let (p, q) = (self.cb.ppm(y, w)?, ocb.ppm(oy, ow)?);
                    check!(rep, p == q, "P±_{{{},{}}} = {p} but {q} under reversed generator order", self.w(y), self.w(w));
                }
            }
        }
        Ok(rep)
    }

    /// Coset identities for every `K` with `W_K` finite.
    pub fn spherical(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new(Suite::Spherical);
        let m = &self.module;
        let g = self.g();
        let n = g.rank();
        if self.is_finite()? {
            let (l, r) = poincare_identity_sides(m)?;
            check!(rep, l == r, "R_(S,*) P_(S,*) = {l} but P_S(u^2) = {r}");
        }
        for mask in 1u64..(1 << n) {
            let k: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if !g.is_finite_parabolic(&k)? {
                continue;
            }
            let wk = g.longest_element(&k)?;
            if g.length(wk) > self.max_len {
                rep.notes.push(format!("K = {k:?} skipped: l(w_K) exceeds the length bound"));
                continue;
            }
            let k_stable = k.iter().all(|&s| k.contains(&m.star()[s]));
            if k_stable {
                let id = coset_of(m, Element::IDENTITY, &k)?;
                let want = a_omega(m, &id)?.scale(&LaurentPoly::v_pow(-(g.length(wk) as i32)));
                let got = self.cb.a_canonical(id.d)?;
                check!(rep, got == want, "A of W_K for K = {k:?} is {got:?}, expected {want:?}");
            }
            for om in cosets_up_to(m, &k, self.max_len)? {
                let name = format!("K = {k:?}, b = {}", self.w(om.b));
                let inv = coset_involutions(m, &om)?;
                let sig = sigma_action(m, &k, &ModuleVector::basis(om.b))?;
                let want = a_omega(m, &om)?.scale(&coset_fixed_poincare(m, &om)?);
                check!(rep, sig == want, "Sigma a_b = {sig:?} but P_(J',tau) a_Omega = {want:?} for {name}");
                let ad = self.cb.a_canonical(om.d)?;
                check!(rep, is_in_mk(m, &ad, &k), "A_d = {ad:?} is not in M^K for {name}");
                let ac = coset_canonical(m, &om)?;
                check!(rep, ac == ad, "coset recursion gives {ac:?}, canonical basis {ad:?} for {name}");
                if om.k == om.k_star {
                    let (l, r) = zeta_coset_sides(m, &om)?;
                    check!(rep, l == r, "zeta sum {l} vs {r} for {name}");
                }
                if k.len() == 2 {
                    let cl = classify_rank2(m, &om)?;
                    check!(rep, cl.elements(g) == inv, "rank-2 case {} lists the wrong involutions for {name}", cl.case);
                }
            }
        }
        Ok(rep)
    }

    /// `c_s A_w` against the case formulas.
    pub fn sixthree(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new(Suite::SixThree);
        for &w in self.twisted()?.iter() {
            for s in 0..self.g().rank() {
                let got = self.cb.cs_on_a(s, w)?;
                let want = self.cb.cs_formula(s, w)?;
                check!(rep, got == want, "c_{s} A_{} = {got:?}, formula gives {want:?}", self.w(w));
            }
        }
        Ok(rep)
    }

    /// Finite `W`: the diamond identities. Affine `W` with a star-fixed `s_0`: maximal
    /// coset elements are twisted and, for simply-laced `W_K`, the closed forms hold.
    pub fn inversion(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new(Suite::Inversion);
        let m = &self.module;
        let g = self.g();
        if self.is_finite()? {
            let ctx = DualityContext::new(m.clone())?;
            let d = ctx.diamond();
            check!(rep, (0..d.len()).all(|s| d[d[s]] == s), "diamond {d:?} is not an involution");
            check!(rep, ctx.check_twisted_sets()?, "w_S I_* differs from the diamond-twisted set");
            for row in ctx.r_duality_rows(self.max_len)? {
                check!(rep, row.holds(), "r duality at ({}, {}): {} vs {}", self.w(row.y), self.w(row.w), row.lhs, row.rhs);
            }
            for row in ctx.inversion_rows(self.max_len)? {
                check!(rep, row.holds(), "inversion sum at ({}, {}) is {}", self.w(row.y), self.w(row.w), row.lhs);
            }
            let dcb = CanonicalBasis::new(ctx.dual().clone());
            for &w in ctx.dual().enumerate_twisted(self.max_len)?.iter() {
                for (y, ly, _) in dcb.pi_table(w)?.iter() {
                    let p = dcb.ppm(y, w)?;
                    let deg_ok = y == w || (p.max_exp().unwrap_or(0) as usize) < g.length(w) - ly;
                    check!(rep, p.coeff(0) == 1 && deg_ok, "dual P±_{{{},{}}} = {p}", self.w(y), self.w(w));
                }
            }
            return Ok(rep);
        }
        let Some(s0) = (0..g.rank()).find(|&s| {
            m.star()[s] == s
                && g.is_finite_parabolic(&(0..g.rank()).filter(|&t| t != s).collect::<Vec<_>>()).unwrap_or(false)
        }) else {
            rep.notes.push("infinite group without a star-fixed s_0 of finite cotype; nothing to check".into());
            return Ok(rep);
        };
        let setup = AffineSetup::new(m.clone(), s0)?;
        rep.checked += setup.extremal_cosets(self.max_len)?.len();
        match setup.check_closed_forms(&self.cb, &self.kl) {
            Ok(c) => {
                check!(rep, c.all_ok(), "closed forms for Omega containing s_0 fail: {c:?}");
            }
            Err(Error::Domain(msg)) => rep.notes.push(format!("closed forms skipped: {msg}")),
            Err(e) => return Err(e),
        }
        let rows = setup.scan(self.max_len, &self.cb, &self.kl)?;
        let unequal = rows.iter().filter(|r| !r.equal).count();
        rep.notes.push(format!("P±(u) = P(-u) scan: {} pairs, {unequal} unequal", rows.len()));
        Ok(rep)
    }

    /// `P± ≡ P` mod 2, the mod 2 models of the action and bar, the two ρ recursions, the
    /// bar invariance of the classical basis, and integrality of the split.
    pub fn mod2(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new(Suite::Mod2);
        let m = &self.module;
        let g = self.g();
        let model = Mod2Model::new(m.clone());
        let alg = HeckeAlgebra::new(g.clone());
        let mut negatives = 0usize;
        for &w in self.twisted()?.iter() {
            for row in mod2_compare(&self.cb, &self.kl, w)? {
                check!(rep, row.agree, "P±_{{{},{}}} = {} but P = {}", self.w(row.y), self.w(w), row.ppm, row.p);
                match split_pm(&row.ppm, &row.p) {
                    Ok((p, q)) => {
                        let sr = SplitRow { y: row.y, w, plus: p, minus: q };
                        negatives += usize::from(sr.has_negative());
                    }
                    Err(e) => check!(rep, false, "split of ({}, {}) fails: {e}", self.w(row.y), self.w(w)),
                }
            }
            let xi = HeckeElement::basis(w);
            for s in 0..g.rank() {
                let ts = HeckeElement::basis(g.generator(s));
                let got = model.odot(&ts, &xi)?.to_module_vector(m)?;
                let want = m.ts_action(s, &ModuleVector::basis(w)).mod2();
                check!(rep, got == want, "t_{s} ⊙ a_{} = {got:?} but T_s a_w mod 2 = {want:?}", self.w(w));
                for t in 0..g.rank() {
                    let tt = HeckeElement::basis(g.generator(t));
                    // the product is taken in the u-algebra: psi(t_s t_t)
                    let h = alg.mul(&ts, &tt).map(|c| c.double_exponents());
                    let lhs = model.odot(&h, &xi)?;
                    let rhs = model.odot(&ts, &model.odot(&tt, &xi)?)?;
                    check!(rep, lhs == rhs, "(t_{s} t_{t}) ⊙ a_{} differs from t_s ⊙ (t_t ⊙ a_w)", self.w(w));
                }
            }
            let b = model.bar_b(&xi).to_module_vector(m)?;
            check!(rep, b == m.bar_basis(w).mod2(), "B(a_{}) = {b:?} differs from bar mod 2", self.w(w));
        }
        for &w in &g.enumerate_up_to(self.max_len.min(8))? {
            let table = self.kl.kl_table(w)?;
            let mut c = HeckeElement::zero();
            for (&y, p) in table.iter() {
                c.add_term(y, p);
                check!(
                    rep,
                    self.kl.rho_poly(y, w) == self.kl.rho_poly_right(y, w),
                    "left and right rho recursions differ at ({}, {})",
                    self.w(y),
                    self.w(w)
                );
            }
            let c = c.scale(&LaurentPoly::v_pow(-(g.length(w) as i32)));
            check!(rep, alg.bar(&c) == c, "classical C_{} is not bar invariant", self.w(w));
        }
        rep.notes.push(format!("{negatives} pairs with a negative coefficient in P+ or P-"));
        Ok(rep)
    }

    /// All `(P+, P-)` splits up to the length bound.
    pub fn split_rows(&self) -> Result<Vec<SplitRow>> {
        let mut out = Vec::new();
        for &w in self.twisted()?.iter() {
            for row in mod2_compare(&self.cb, &self.kl, w)? {
                let (plus, minus) = split_pm(&row.ppm, &row.p)?;
                out.push(SplitRow { y: row.y, w, plus, minus });
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn all_suites_pass_on_small_systems() {
        for sys in [systems::a(2), systems::b(2), systems::a_flip(2), systems::affine_a1()] {
            let v = Verifier::new(InvolutionModule::new(sys.group()), 4);
            for r in v.run_all().unwrap() {
                assert!(r.passed(), "{sys}: {r}");
            }
        }
    }
}
