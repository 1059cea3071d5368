//! Exact arithmetic in `Z[c]`, `c = 2cos(pi/n)`, where `n` is the lcm of the finite
//! Coxeter-matrix entries `m >= 4`. Every `2cos(pi/m)` occurring in the matrix lies
//! in this ring, so the geometric representation is defined over it.

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingElem(Vec<i64>);

impl RingElem {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

#[derive(Clone, Debug)]
pub struct CoeffRing {
    n: u64,
    degree: usize,
    /// `table[i][j]` = coordinates of `c^(i+j)`.
    table: Vec<Vec<Vec<i64>>>,
    c_value: f64,
}

fn ck_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("ring coefficient overflow")
}

fn ck_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("ring coefficient overflow")
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Cyclotomic polynomial `Phi_k`, ascending integer coefficients.
fn cyclotomic(k: u64) -> Vec<i64> {
    let mut p = vec![0i64; k as usize + 1];
    p[0] = -1;
    p[k as usize] = 1;
    for d in 1..k {
        if k.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic(d));
        }
    }
    p
}

fn poly_div_exact(a: &[i64], d: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let dn = d.len();
    let qn = rem.len() + 1 - dn;
    let mut q = vec![0; qn];
    for i in (0..qn).rev() {
        let f = rem[i + dn - 1] / d[dn - 1];
        q[i] = f;
        for (j, &c) in d.iter().enumerate() {
            rem[i + j] -= f * c;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// Minimal polynomial of `2cos(2pi/k)` for `k >= 3`, via `Phi_k(z) = z^h Psi_k(z + 1/z)`.
fn real_cyclotomic(k: u64) -> Vec<i64> {
    let phi = cyclotomic(k);
    let h = (phi.len() - 1) / 2;
    // V_0 = 2, V_1 = x, V_{j+1} = x V_j - V_{j-1}, so that z^j + z^-j = V_j(z + 1/z).
    let mut vs: Vec<Vec<i64>> = vec![vec![2], vec![0, 1]];
    for j in 1..h {
        let mut next = vec![0; j + 2];
        for (i, &c) in vs[j].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, &c) in vs[j - 1].iter().enumerate() {
            next[i] -= c;
        }
        vs.push(next);
    }
    let mut psi = vec![0i64; h + 1];
    psi[0] = phi[h];
    for j in 1..=h {
        for (i, &c) in vs[j].iter().enumerate() {
            psi[i] += phi[h + j] * c;
        }
    }
    psi
}

impl CoeffRing {
    /// Ring containing `2cos(pi/m)` for every finite `m` in `ms`.
    pub fn for_entries<I: IntoIterator<Item = u32>>(ms: I) -> Self {
        let n = ms
            .into_iter()
            .filter(|&m| m >= 4)
            .fold(1u64, |acc, m| acc / gcd(acc, m as u64) * m as u64);
        if n < 4 {
            return CoeffRing { n: 1, degree: 1, table: vec![vec![vec![1]]], c_value: 1.0 };
        }
        let psi = real_cyclotomic(2 * n);
        let degree = psi.len() - 1;
        // powers[k] = coordinates of c^k for k < 2*degree - 1
        let mut powers: Vec<Vec<i64>> = Vec::new();
        for k in 0..(2 * degree - 1) {
            let mut v = vec![0; degree];
            if k < degree {
                v[k] = 1;
            } else {
                let prev = &powers[k - 1];
                // c * prev, reducing c^degree = -sum psi[i] c^i
                let top = prev[degree - 1];
                for i in (1..degree).rev() {
                    v[i] = prev[i - 1];
                }
                v[0] = 0;
                for i in 0..degree {
                    v[i] = ck_add(v[i], ck_mul(-top, psi[i]));
                }
            }
            powers.push(v);
        }
        let table = (0..degree)
            .map(|i| (0..degree).map(|j| powers[i + j].clone()).collect())
            .collect();
        let c_value = 2.0 * (std::f64::consts::PI / n as f64).cos();
        CoeffRing { n, degree, table, c_value }
    }

    /// The `n` with generator `c = 2cos(pi/n)`; 1 means the ring is `Z`.
    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Human-readable description of the basis `1, c, ..., c^(d-1)`.
    pub fn basis_description(&self) -> String {
        if self.degree == 1 {
            return "{1}".into();
        }
        let c = match self.n {
            4 => "sqrt2".to_string(),
            5 => "phi".to_string(),
            6 => "sqrt3".to_string(),
            n => format!("2cos(pi/{n})"),
        };
        let parts: Vec<String> = (0..self.degree)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => c.clone(),
                _ => format!("{c}^{k}"),
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn zero(&self) -> RingElem {
        RingElem(vec![0; self.degree])
    }

    pub fn int(&self, k: i64) -> RingElem {
        let mut v = vec![0; self.degree];
        v[0] = k;
        RingElem(v)
    }

    /// The generator `c`.
    pub fn gen(&self) -> RingElem {
        if self.degree == 1 {
            return self.int(1);
        }
        let mut v = vec![0; self.degree];
        v[1] = 1;
        RingElem(v)
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        RingElem(a.0.iter().zip(&b.0).map(|(&x, &y)| ck_add(x, y)).collect())
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        RingElem(a.0.iter().zip(&b.0).map(|(&x, &y)| ck_add(x, -y)).collect())
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        RingElem(a.0.iter().map(|&x| -x).collect())
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let mut out = vec![0; self.degree];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = ck_mul(x, y);
                for (k, &t) in self.table[i][j].iter().enumerate() {
                    if t != 0 {
                        out[k] = ck_add(out[k], ck_mul(xy, t));
                    }
                }
            }
        }
        RingElem(out)
    }

    /// `2cos(pi/m)`; `None` means `m = inf`, which contributes 2.
    pub fn two_cos(&self, m: Option<u32>) -> Result<RingElem> {
        match m {
            None => Ok(self.int(2)),
            Some(1) => Ok(self.int(2)),
            Some(2) => Ok(self.int(0)),
            Some(3) => Ok(self.int(1)),
            Some(m) => {
                if !self.n.is_multiple_of(m as u64) {
                    return Err(Error::Internal(format!("2cos(pi/{m}) not in ring of conductor {}", self.n)));
                }
                let k = self.n / m as u64;
                // V_k(c) = 2cos(k pi/n)
                let mut prev = self.int(2);
                let mut cur = self.gen();
                for _ in 1..k {
                    let next = self.sub(&self.mul(&self.gen(), &cur), &prev);
                    prev = cur;
                    cur = next;
                }
                Ok(cur)
            }
        }
    }

    /// Exact sign. Decided from the coordinates when they agree in sign (the generator
    /// is positive); otherwise by a floating-point evaluation with a rigorous error
    /// bound. Panics if the bound cannot separate the value from zero.
    pub fn sign(&self, a: &RingElem) -> Sign {
        if a.is_zero() {
            return Sign::Zero;
        }
        if a.0.iter().all(|&x| x >= 0) {
            return Sign::Pos;
        }
        if a.0.iter().all(|&x| x <= 0) {
            return Sign::Neg;
        }
        let mut value = 0.0f64;
        let mut bound = 0.0f64;
        let mut p = 1.0f64;
        for (k, &x) in a.0.iter().enumerate() {
            let term = x as f64 * p;
            value += term;
            bound += term.abs() * (k as f64 + 4.0) * f64::EPSILON;
            p *= self.c_value;
        }
        if value.abs() > 4.0 * bound {
            if value > 0.0 { Sign::Pos } else { Sign::Neg }
        } else {
            panic!("cannot certify the sign of ring element {:?} (n = {})", a.0, self.n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_when_all_small() {
        let r = CoeffRing::for_entries([2, 3]);
        assert_eq!(r.degree(), 1);
        assert_eq!(r.basis_description(), "{1}");
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let r = CoeffRing::for_entries([4]);
        assert_eq!(r.degree(), 2);
        let s = r.two_cos(Some(4)).unwrap();
        assert_eq!(r.mul(&s, &s), r.int(2));
        assert_eq!(r.basis_description(), "{1, sqrt2}");
    }

    #[test]
    fn golden_ratio_relation() {
        let r = CoeffRing::for_entries([5, 3]);
        let phi = r.two_cos(Some(5)).unwrap();
        assert_eq!(r.mul(&phi, &phi), r.add(&phi, &r.int(1)));
    }

    #[test]
    fn sqrt3_and_mixed_conductor() {
        let r = CoeffRing::for_entries([6]);
        let s = r.two_cos(Some(6)).unwrap();
        assert_eq!(r.mul(&s, &s), r.int(3));
        let r = CoeffRing::for_entries([4, 6]);
        assert_eq!(r.conductor(), 12);
        assert_eq!(r.degree(), 4);
        let s2 = r.two_cos(Some(4)).unwrap();
        let s3 = r.two_cos(Some(6)).unwrap();
        assert_eq!(r.mul(&s2, &s2), r.int(2));
        assert_eq!(r.mul(&s3, &s3), r.int(3));
        assert_eq!(r.two_cos(Some(3)).unwrap(), r.int(1));
    }

    #[test]
    fn certified_sign_for_mixed_coordinates() {
        let r = CoeffRing::for_entries([12]);
        // sqrt2 - 1 > 0 but sqrt2 = c^3 - 3c has mixed coordinates.
        let s2 = r.two_cos(Some(4)).unwrap();
        assert_eq!(r.sign(&r.sub(&s2, &r.int(1))), Sign::Pos);
        assert_eq!(r.sign(&r.sub(&r.int(1), &s2)), Sign::Neg);
    }

    #[test]
    fn seventh_root_minimal_polynomial() {
        // 2cos(pi/7) satisfies x^3 - x^2 - 2x + 1.
        assert_eq!(real_cyclotomic(14), vec![1, -2, -1, 1]);
    }
}
