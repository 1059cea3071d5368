//! Parabolic subgroups `W_K`: finiteness, elements, longest element, Poincare
//! polynomial and exponents.

use std::collections::HashMap;

use super::group::{CoxeterGroup, Element, Side};
use super::ring::{RingElem, Sign};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

impl CoxeterGroup {
    fn check_subset(&self, k: &[usize]) -> Result<()> {
        for (i, &s) in k.iter().enumerate() {
            if s >= self.rank() || k[..i].contains(&s) {
                return Err(Error::Domain(format!("invalid generator subset {k:?}")));
            }
        }
        Ok(())
    }

    /// `W_K` is finite iff the bilinear form restricted to `K` is positive definite.
    /// Checked exactly with leading principal minors.
    pub fn is_finite_parabolic(&self, k: &[usize]) -> Result<bool> {
        self.check_subset(k)?;
        let ring = self.system().ring();
        let n = k.len();
        let mut gram = vec![vec![ring.zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = if i == j {
                    ring.int(2)
                } else {
                    ring.neg(&ring.two_cos(self.system().m(k[i], k[j]))?)
                };
            }
        }
        for size in 1..=n {
            if ring.sign(&determinant(ring, &gram, size)) != Sign::Pos {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn require_finite(&self, k: &[usize]) -> Result<()> {
        if !self.is_finite_parabolic(k)? {
            return Err(Error::Domain(format!("parabolic subgroup on {k:?} is infinite")));
        }
        Ok(())
    }

    /// All of `W_K`, sorted by (length, word).
    pub fn parabolic_elements(&self, k: &[usize]) -> Result<Vec<Element>> {
        self.require_finite(k)?;
        let mut out = vec![Element::IDENTITY];
        let mut layer = vec![Element::IDENTITY];
        loop {
            let mut next = Vec::new();
            for &w in &layer {
                for &s in k {
                    let (sw, sign) = self.mul_gen(w, s, Side::Left);
                    if sign > 0 && !next.contains(&sw) {
                        next.push(sw);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            if out.len() + next.len() > self.cap() {
                return Err(Error::Resource(format!("parabolic subgroup on {k:?} exceeds the element cap")));
            }
            self.sort_shortlex(&mut next);
            out.extend_from_slice(&next);
            layer = next;
        }
        Ok(out)
    }

    /// True iff `w` lies in `W_K` (every letter of a reduced word is in `K`).
    pub fn in_parabolic(&self, w: Element, k: &[usize]) -> bool {
        self.word(w).iter().all(|s| k.contains(s))
    }

    /// The longest element `w_K`.
    pub fn longest_element(&self, k: &[usize]) -> Result<Element> {
        Ok(*self.parabolic_elements(k)?.last().unwrap())
    }

    /// `sum_{x in W_K} u^l(x)`, as a polynomial in `u`.
    pub fn poincare_poly(&self, k: &[usize]) -> Result<LaurentPoly> {
        let mut counts: Vec<i64> = Vec::new();
        for w in self.parabolic_elements(k)? {
            let l = self.length(w);
            if counts.len() <= l {
                counts.resize(l + 1, 0);
            }
            counts[l] += 1;
        }
        Ok(LaurentPoly::from_u_coeffs(&counts))
    }

    /// Exponents `e_1 <= ... <= e_n` with `P_K = prod (1 + u + ... + u^e_j)`.
    pub fn exponents(&self, k: &[usize]) -> Result<Vec<u32>> {
        let p = self.poincare_poly(k)?;
        factor_q_integers(&p.u_coeffs().unwrap())
            .ok_or_else(|| Error::Internal(format!("Poincare polynomial {p} is not a product of q-integers")))
    }
}

/// Writes a polynomial (ascending coefficients in `u`) as a product of
/// `[a] = 1 + u + ... + u^(a-1)`, returning the `a - 1` in ascending order.
/// The largest `a` with `[a]` dividing is always a factor, which makes the
/// greedy choice safe.
pub(crate) fn factor_q_integers(coeffs: &[i64]) -> Option<Vec<u32>> {
    let mut p = coeffs.to_vec();
    let mut out = Vec::new();
    while p.len() > 1 {
        let deg = p.len() - 1;
        let mut found = false;
        for a in (2..=deg + 1).rev() {
            if let Some(q) = divide_by_q_integer(&p, a) {
                p = q;
                out.push(a as u32 - 1);
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
    }
    (p == [1]).then(|| {
        out.sort_unstable();
        out
    })
}

fn divide_by_q_integer(p: &[i64], a: usize) -> Option<Vec<i64>> {
    // p = q * (1 + ... + u^(a-1))  <=>  p * (1 - u) = q * (1 - u^a)
    let mut num = vec![0i64; p.len() + 1];
    for (i, &c) in p.iter().enumerate() {
        num[i] += c;
        num[i + 1] -= c;
    }
    let qn = num.len().checked_sub(a)?;
    let mut q = vec![0i64; qn];
    let mut rem = num;
    for i in 0..qn {
        let c = rem[i];
        q[i] = c;
        rem[i] -= c;
        rem[i + a] += c;
    }
    rem.iter().all(|&c| c == 0).then_some(q)
}

/// Determinant of the leading `size x size` block by Laplace expansion over column subsets.
fn determinant(ring: &super::ring::CoeffRing, m: &[Vec<RingElem>], size: usize) -> RingElem {
    fn rec(
        ring: &super::ring::CoeffRing,
        m: &[Vec<RingElem>],
        row: usize,
        cols: u64,
        memo: &mut HashMap<u64, RingElem>,
    ) -> RingElem {
        if cols == 0 {
            return ring.int(1);
        }
        if let Some(d) = memo.get(&cols) {
            return d.clone();
        }
        let mut acc = ring.zero();
        for j in 0..64 {
            if cols >> j & 1 == 0 {
                continue;
            }
            let minor = rec(ring, m, row - 1, cols & !(1 << j), memo);
            let term = ring.mul(&m[row - 1][j], &minor);
            // sign of moving column j to the last position among the remaining columns
            let remaining_after = (cols >> (j + 1)).count_ones();
            acc = if remaining_after.is_multiple_of(2) { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
        memo.insert(cols, acc.clone());
        acc
    }
    rec(ring, m, size, (1u64 << size) - 1, &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::lp;
    use crate::systems;

    #[test]
    fn longest_elements() {
        let g = systems::a(2).group();
        assert_eq!(g.longest_element(&[0]).unwrap(), g.generator(0));
        assert_eq!(g.format_word(g.longest_element(&[0, 1]).unwrap()), "s.t.s");
        let g = systems::b(2).group();
        assert_eq!(g.length(g.longest_element(&[0, 1]).unwrap()), 4);
    }

    #[test]
    fn poincare_and_exponents() {
        let g = systems::a(2).group();
        assert_eq!(g.poincare_poly(&[0]).unwrap(), lp("1+u"));
        assert_eq!(g.poincare_poly(&[0, 1]).unwrap(), lp("1+2u+2u^2+u^3"));
        assert_eq!(g.exponents(&[0]).unwrap(), vec![1]);
        assert_eq!(g.exponents(&[0, 1]).unwrap(), vec![1, 2]);
        let g = systems::b(2).group();
        assert_eq!(g.poincare_poly(&[0, 1]).unwrap(), lp("1+2u+2u^2+2u^3+u^4"));
        assert_eq!(g.exponents(&[0, 1]).unwrap(), vec![1, 3]);
        assert_eq!(systems::h3().group().exponents(&[0, 1, 2]).unwrap(), vec![1, 5, 9]);
        assert_eq!(systems::b(3).group().exponents(&[0, 1, 2]).unwrap(), vec![1, 3, 5]);
    }

    #[test]
    fn finiteness_test() {
        let g = systems::affine_a2_swap().group();
        assert!(!g.is_finite_parabolic(&[0, 1, 2]).unwrap());
        assert!(g.is_finite_parabolic(&[1, 2]).unwrap());
        assert!(matches!(g.longest_element(&[0, 1, 2]), Err(Error::Domain(_))));
        let g = systems::affine_a1().group();
        assert!(!g.is_finite_parabolic(&[0, 1]).unwrap());
        assert!(systems::h3().group().is_finite_parabolic(&[0, 1, 2]).unwrap());
    }
}
