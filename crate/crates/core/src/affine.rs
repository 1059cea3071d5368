//! Affine Weyl groups with a distinguished `s_0`, `K = S - {s_0}`: the
//! `(W_K, W_K)` double cosets and the comparison of `P±_{d_Ω',d_Ω}(u)` with the
//! classical `P_{d_Ω',d_Ω}(-u)`.

use std::sync::Arc;

use crate::canonical::CanonicalBasis;
use crate::classic::ClassicKl;
use crate::cosets::{a_omega, coset_of, DoubleCoset};
use crate::coxeter::{Element, Side};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::module::{InvolutionModule, ModuleVector};

pub struct AffineSetup {
    module: Arc<InvolutionModule>,
    s0: usize,
    k: Vec<usize>,
}

/// One row of the `P±(u)` versus `P(-u)` scan.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub lower: DoubleCoset,
    pub upper: DoubleCoset,
    pub ppm: LaurentPoly,
    pub kl: LaurentPoly,
    pub kl_neg_u: LaurentPoly,
    pub equal: bool,
    /// `P(1)`, the weight multiplicity.
    pub n_u1: i64,
}

/// The closed forms for `Ω ∋ s_0` over `Ω' ∋ 1` when `W_K` is simply laced.
#[derive(Clone, Debug)]
pub struct ClosedForms {
    pub exponents: Vec<u32>,
    pub computed: ModuleVector,
    pub closed_form: ModuleVector,
    pub length_gap: usize,
    pub ppm: LaurentPoly,
    pub kl: LaurentPoly,
    pub closed_form_ok: bool,
    pub length_ok: bool,
    pub kl_ok: bool,
    pub ppm_ok: bool,
}

impl ClosedForms {
    pub fn all_ok(&self) -> bool {
        self.closed_form_ok && self.length_ok && self.kl_ok && self.ppm_ok
    }
}

impl AffineSetup {
    pub fn new(module: Arc<InvolutionModule>, s0: usize) -> Result<Self> {
        let g = module.group();
        if s0 >= g.rank() {
            return Err(Error::Domain(format!("no generator {s0}")));
        }
        if module.star()[s0] != s0 {
            return Err(Error::Domain("the star must fix s_0".into()));
        }
        let k: Vec<usize> = (0..g.rank()).filter(|&s| s != s0).collect();
        if !g.is_finite_parabolic(&k)? {
            return Err(Error::Domain("W_K must be finite for K = S - {s_0}".into()));
        }
        Ok(AffineSetup { module, s0, k })
    }

    pub fn module(&self) -> &Arc<InvolutionModule> {
        &self.module
    }

    pub fn s0(&self) -> usize {
        self.s0
    }

    pub fn k(&self) -> &[usize] {
        &self.k
    }

    /// Cosets whose maximal element has length `<= max_len`, in (length, word) order of
    /// that element. Every maximal element is checked to be a twisted involution.
    pub fn extremal_cosets(&self, max_len: usize) -> Result<Vec<DoubleCoset>> {
        let g = self.module.group();
        let mut out = Vec::new();
        for x in g.enumerate_up_to(max_len)? {
            let top = self.k.iter().all(|&s| g.descent(x, s, Side::Left) && g.descent(x, s, Side::Right));
            if !top {
                continue;
            }
            if !self.module.is_twisted(x) {
                return Err(Error::Internal(format!(
                    "maximal element {} of its double coset is not a twisted involution",
                    g.format_word(x)
                )));
            }
            out.push(coset_of(&self.module, x, &self.k)?);
        }
        Ok(out)
    }

    /// Pairs `(Ω', Ω)` with `d_Ω' <= d_Ω`, `l(d_Ω) <= max_len`.
    pub fn extremal_pairs(&self, max_len: usize) -> Result<Vec<(DoubleCoset, DoubleCoset)>> {
        let g = self.module.group();
        let cosets = self.extremal_cosets(max_len)?;
        let mut out = Vec::new();
        for upper in &cosets {
            for lower in &cosets {
                if g.bruhat_leq(lower.d, upper.d) {
                    out.push((lower.clone(), upper.clone()));
                }
            }
        }
        Ok(out)
    }

    pub fn scan(&self, max_len: usize, cb: &CanonicalBasis, kl: &ClassicKl) -> Result<Vec<ScanRow>> {
        let mut rows = Vec::new();
        for (lower, upper) in self.extremal_pairs(max_len)? {
            let ppm = cb.ppm(lower.d, upper.d)?;
            let p = kl.kl_poly(lower.d, upper.d)?;
            let kl_neg_u = p.sub_minus_u()?;
            rows.push(ScanRow {
                equal: ppm == kl_neg_u,
                n_u1: p.eval_at_one(),
                ppm,
                kl: p,
                kl_neg_u,
                lower,
                upper,
            });
        }
        Ok(rows)
    }

    /// Compares `A_{d_Ω}` with `v^-l(d_Ω) a_Ω + (-1)^e_n sum_j (-u)^-e_j v^-l(d_Ω') a_Ω'`,
    /// and the polynomials at `(d_Ω', d_Ω)` with `sum u^(e_j - 1)` and `sum (-u)^(e_j - 1)`.
    pub fn check_closed_forms(&self, cb: &CanonicalBasis, kl: &ClassicKl) -> Result<ClosedForms> {
        let g = self.module.group();
        for &s in &self.k {
            for &t in &self.k {
                if s != t && !matches!(g.system().m(s, t), Some(2) | Some(3)) {
                    return Err(Error::Domain("W_K is not simply laced".into()));
                }
            }
        }
        let upper = coset_of(&self.module, g.generator(self.s0), &self.k)?;
        let lower = coset_of(&self.module, Element::IDENTITY, &self.k)?;
        let e = g.exponents(&self.k)?;
        let e_n = *e.last().unwrap() as i32;
        let neg_u = |k: i32| LaurentPoly::u_pow(k).scale(if k % 2 == 0 { 1 } else { -1 });
        let mut coeff = LaurentPoly::zero();
        for &ej in &e {
            coeff += neg_u(-(ej as i32));
        }
        if e_n % 2 != 0 {
            coeff = -coeff;
        }
        let ld = g.length(upper.d) as i32;
        let ld0 = g.length(lower.d) as i32;
        let closed_form = a_omega(&self.module, &upper)?
            .scale(&LaurentPoly::v_pow(-ld))
            .add(&a_omega(&self.module, &lower)?.scale(&coeff.shift(-ld0)));
        let computed = cb.a_canonical(upper.d)?;
        let ppm = cb.ppm(lower.d, upper.d)?;
        let p = kl.kl_poly(lower.d, upper.d)?;
        let want_kl = e.iter().fold(LaurentPoly::zero(), |acc, &ej| acc + LaurentPoly::u_pow(ej as i32 - 1));
        let want_ppm = e.iter().fold(LaurentPoly::zero(), |acc, &ej| acc + neg_u(ej as i32 - 1));
        let length_gap = (ld - ld0) as usize;
        Ok(ClosedForms {
            closed_form_ok: computed == closed_form,
            length_ok: length_gap as i32 == 2 * e_n,
            kl_ok: p == want_kl,
            ppm_ok: ppm == want_ppm,
            exponents: e,
            computed,
            closed_form,
            length_gap,
            ppm,
            kl: p,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::lp;
    use crate::systems;

    fn setup(sys: crate::CoxeterSystem) -> (AffineSetup, CanonicalBasis, ClassicKl) {
        let m = InvolutionModule::new(sys.group());
        let cb = CanonicalBasis::new(m.clone());
        let kl = ClassicKl::new(m.group().clone());
        (AffineSetup::new(m, 0).unwrap(), cb, kl)
    }

    #[test]
    fn affine_a1_cosets() {
        let (a, cb, kl) = setup(systems::affine_a1());
        let g = a.module().group().clone();
        let lens: Vec<usize> = a.extremal_cosets(9).unwrap().iter().map(|o| g.length(o.d)).collect();
        assert_eq!(lens, [1, 3, 5, 7, 9]);
        assert!(a.scan(9, &cb, &kl).unwrap().iter().all(|r| r.equal && r.ppm == LaurentPoly::one()));
        let c = a.check_closed_forms(&cb, &kl).unwrap();
        assert!(c.all_ok(), "{c:?}");
    }

    #[test]
    fn affine_a2_fixture() {
        let (a, cb, kl) = setup(systems::affine_a2_swap());
        let g = a.module().group().clone();
        let c = a.check_closed_forms(&cb, &kl).unwrap();
        assert!(c.all_ok(), "{c:?}");
        let om1 = coset_of(a.module(), g.parse_word("0.1.2.1.0").unwrap(), a.k()).unwrap();
        assert_eq!(g.length(om1.d), 11);
        let reps = ["0.1.2.1.0", "0.1.2.0", "0.2.1.0", "0", ""];
        let want = ["1", "1", "1", "1-u", "1-u+u^2"];
        for (r, w) in reps.iter().zip(want) {
            let om = coset_of(a.module(), g.parse_word(r).unwrap(), a.k()).unwrap();
            assert_eq!(cb.ppm(om.d, om1.d).unwrap(), lp(w), "{r}");
        }
        let om4 = coset_of(a.module(), g.generator(0), a.k()).unwrap();
        assert_eq!(om4.d, g.parse_word("1.2.1.0.1.2.1").unwrap());
        assert_eq!(coset_of(a.module(), g.identity(), a.k()).unwrap().d, g.parse_word("1.2.1").unwrap());
        let a_d = cb.a_canonical(om1.d).unwrap();
        assert!(crate::cosets::is_in_mk(a.module(), &a_d, a.k()));
    }

    #[test]
    fn affine_c2_fixture() {
        let (a, cb, _) = setup(systems::affine_c2());
        let g = a.module().group().clone();
        let om1 = coset_of(a.module(), g.parse_word("0.1.0").unwrap(), a.k()).unwrap();
        assert_eq!(g.format_word(om1.d).replace('.', "").len(), 10);
        for (r, w) in [("0.1.0", "1"), ("0", "1"), ("", "1+u^2")] {
            let om = coset_of(a.module(), g.parse_word(r).unwrap(), a.k()).unwrap();
            assert_eq!(cb.ppm(om.d, om1.d).unwrap(), lp(w), "{r}");
        }
        assert!(matches!(a.check_closed_forms(&cb, &ClassicKl::new(g.clone())), Err(Error::Domain(_))));
    }
}
