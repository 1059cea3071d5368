//! Interned group elements with ShortLex-canonical reduced words.
//!
//! A word is canonicalized by tracking the images `x^-1(alpha_t)` of the simple roots:
//! `t` is a left descent of `x` exactly when that image is negative, and the
//! ShortLex-minimal reduced word is read off by repeatedly stripping the smallest
//! left descent.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::sync::{Mutex, RwLock};

use super::ring::{RingElem, Sign};
use super::CoxeterSystem;
use crate::error::{Error, Result};

/// Handle to an interned element of a particular [`CoxeterGroup`].
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Element(u32);

impl Element {
    pub const IDENTITY: Element = Element(0);

    pub fn index(self) -> u32 {
        self.0
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// Coordinates of a vector of the geometric representation in the simple-root basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootVector {
    pub coords: Vec<RingElem>,
}

const UNKNOWN: u32 = u32::MAX;

pub const DEFAULT_CAP: usize = 1_000_000;

struct Slot {
    word: Box<[u8]>,
    left_desc: u64,
    right_desc: u64,
    left: Vec<u32>,
    right: Vec<u32>,
}

struct State {
    slots: Vec<Slot>,
    index: HashMap<Box<[u8]>, u32>,
}

pub struct CoxeterGroup {
    system: CoxeterSystem,
    /// `bond[s][t] = 2cos(pi/m_st)`, so that `s(alpha_t) = alpha_t + bond[s][t] alpha_s`.
    bond: Vec<Vec<RingElem>>,
    cap: usize,
    state: RwLock<State>,
    bruhat: Mutex<HashMap<(Element, Element), bool>>,
}

impl std::fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CoxeterGroup({})", self.system)
    }
}

impl CoxeterGroup {
    pub fn new(system: CoxeterSystem) -> Result<Self> {
        CoxeterGroup::with_cap(system, DEFAULT_CAP)
    }

    /// `cap` bounds the number of elements any single enumeration may produce.
    pub fn with_cap(system: CoxeterSystem, cap: usize) -> Result<Self> {
        let n = system.rank();
        let ring = system.ring();
        let mut bond = Vec::with_capacity(n);
        for s in 0..n {
            let mut row = Vec::with_capacity(n);
            for t in 0..n {
                row.push(if s == t { ring.int(-2) } else { ring.two_cos(system.m(s, t))? });
            }
            bond.push(row);
        }
        let identity = Slot {
            word: Box::new([]),
            left_desc: 0,
            right_desc: 0,
            left: vec![UNKNOWN; n],
            right: vec![UNKNOWN; n],
        };
        let mut index = HashMap::new();
        index.insert(Box::<[u8]>::from([]), 0);
        Ok(CoxeterGroup {
            system,
            bond,
            cap: cap.max(1),
            state: RwLock::new(State { slots: vec![identity], index }),
            bruhat: Mutex::new(HashMap::new()),
        })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn identity(&self) -> Element {
        Element::IDENTITY
    }

    /// Number of elements interned so far.
    pub fn interned(&self) -> usize {
        self.state.read().unwrap().slots.len()
    }

    pub fn generator(&self, s: usize) -> Element {
        self.mul_gen(Element::IDENTITY, s, Side::Left).0
    }

    pub fn word(&self, w: Element) -> Vec<usize> {
        self.state.read().unwrap().slots[w.0 as usize].word.iter().map(|&s| s as usize).collect()
    }

    pub fn length(&self, w: Element) -> usize {
        self.state.read().unwrap().slots[w.0 as usize].word.len()
    }

    /// `(-1)^l(w)`.
    pub fn sign(&self, w: Element) -> i64 {
        if self.length(w).is_multiple_of(2) { 1 } else { -1 }
    }

    pub fn descent_mask(&self, w: Element, side: Side) -> u64 {
        let st = self.state.read().unwrap();
        let slot = &st.slots[w.0 as usize];
        match side {
            Side::Left => slot.left_desc,
            Side::Right => slot.right_desc,
        }
    }

    /// True iff `l(sw) < l(w)` (left) or `l(ws) < l(w)` (right).
    pub fn descent(&self, w: Element, s: usize, side: Side) -> bool {
        self.descent_mask(w, side) >> s & 1 == 1
    }

    /// Smallest left descent, `None` for the identity.
    pub fn first_descent(&self, w: Element, side: Side) -> Option<usize> {
        let m = self.descent_mask(w, side);
        (m != 0).then(|| m.trailing_zeros() as usize)
    }

    /// `sw` (left) or `ws` (right) together with the length change `+1`/`-1`.
    pub fn mul_gen(&self, w: Element, s: usize, side: Side) -> (Element, i8) {
        assert!(s < self.rank(), "generator index {s} out of range");
        let word = {
            let st = self.state.read().unwrap();
            let slot = &st.slots[w.0 as usize];
            let (cache, mask) = match side {
                Side::Left => (&slot.left, slot.left_desc),
                Side::Right => (&slot.right, slot.right_desc),
            };
            let sign = if mask >> s & 1 == 1 { -1 } else { 1 };
            if cache[s] != UNKNOWN {
                return (Element(cache[s]), sign);
            }
            let mut word: Vec<u8> = Vec::with_capacity(slot.word.len() + 1);
            match side {
                Side::Left => {
                    word.push(s as u8);
                    word.extend_from_slice(&slot.word);
                }
                Side::Right => {
                    word.extend_from_slice(&slot.word);
                    word.push(s as u8);
                }
            }
            word
        };
        let (canon, left_desc, right_desc) = self.analyze(&word);
        let mut st = self.state.write().unwrap();
        let e = match st.index.get(&canon[..]) {
            Some(&e) => e,
            None => {
                let e = st.slots.len() as u32;
                let n = self.rank();
                let key: Box<[u8]> = canon.into_boxed_slice();
                st.index.insert(key.clone(), e);
                st.slots.push(Slot {
                    word: key,
                    left_desc,
                    right_desc,
                    left: vec![UNKNOWN; n],
                    right: vec![UNKNOWN; n],
                });
                e
            }
        };
        let sign = match side {
            Side::Left => {
                st.slots[w.0 as usize].left[s] = e;
                st.slots[e as usize].left[s] = w.0;
                if st.slots[w.0 as usize].left_desc >> s & 1 == 1 { -1 } else { 1 }
            }
            Side::Right => {
                st.slots[w.0 as usize].right[s] = e;
                st.slots[e as usize].right[s] = w.0;
                if st.slots[w.0 as usize].right_desc >> s & 1 == 1 { -1 } else { 1 }
            }
        };
        (Element(e), sign)
    }

    pub fn left_mul(&self, s: usize, w: Element) -> Element {
        self.mul_gen(w, s, Side::Left).0
    }

    pub fn right_mul(&self, w: Element, s: usize) -> Element {
        self.mul_gen(w, s, Side::Right).0
    }

    /// Element represented by an arbitrary (not necessarily reduced) word.
    pub fn from_word(&self, word: &[usize]) -> Element {
        word.iter().fold(Element::IDENTITY, |w, &s| self.right_mul(w, s))
    }

    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.word(y).into_iter().fold(x, |w, s| self.right_mul(w, s))
    }

    pub fn inverse(&self, w: Element) -> Element {
        self.word(w).into_iter().fold(Element::IDENTITY, |acc, s| self.left_mul(s, acc))
    }

    /// Image under the letterwise relabeling `s -> perm[s]` (a diagram automorphism).
    pub fn apply_perm(&self, perm: &[usize], w: Element) -> Element {
        self.word(w).into_iter().fold(Element::IDENTITY, |acc, s| self.right_mul(acc, perm[s]))
    }

    /// Image under the system's star automorphism.
    pub fn star_apply(&self, w: Element) -> Element {
        self.apply_perm(self.system.star(), w)
    }

    /// `w(alpha_s)`.
    pub fn root_action(&self, w: Element, s: usize) -> RootVector {
        let ring = self.system.ring();
        let mut v = vec![ring.zero(); self.rank()];
        v[s] = ring.int(1);
        for t in self.word(w).into_iter().rev() {
            self.reflect(t, &mut v);
        }
        RootVector { coords: v }
    }

    /// Sign of a root; panics if the positivity dichotomy fails.
    pub fn root_sign(&self, v: &RootVector) -> Sign {
        self.vector_sign(&v.coords)
    }

    fn vector_sign(&self, v: &[RingElem]) -> Sign {
        let ring = self.system.ring();
        let mut seen = Sign::Zero;
        for c in v {
            match ring.sign(c) {
                Sign::Zero => {}
                s if seen == Sign::Zero => seen = s,
                s if s != seen => panic!("positivity dichotomy violated by root {v:?}"),
                _ => {}
            }
        }
        assert!(seen != Sign::Zero, "zero vector where a root was expected");
        seen
    }

    /// `v -> s(v)` in simple-root coordinates.
    fn reflect(&self, s: usize, v: &mut [RingElem]) {
        let ring = self.system.ring();
        let mut acc = ring.neg(&v[s]);
        for (u, vu) in v.iter().enumerate() {
            if u != s && !vu.is_zero() {
                acc = ring.add(&acc, &ring.mul(&self.bond[s][u], vu));
            }
        }
        v[s] = acc;
    }

    /// Canonical word and descent masks of the element represented by `word`.
    fn analyze(&self, word: &[u8]) -> (Vec<u8>, u64, u64) {
        let ring = self.system.ring();
        let n = self.rank();
        let unit = |t: usize| {
            let mut v = vec![ring.zero(); n];
            v[t] = ring.int(1);
            v
        };
        // inv[t] = x^-1(alpha_t); fwd[t] = x(alpha_t)
        let mut inv: Vec<Vec<RingElem>> = (0..n).map(unit).collect();
        let mut fwd: Vec<Vec<RingElem>> = (0..n).map(unit).collect();
        for &s in word {
            let s = s as usize;
            for col in inv.iter_mut() {
                self.reflect(s, col);
            }
            let xs = fwd[s].clone();
            for (t, col) in fwd.iter_mut().enumerate() {
                if t == s {
                    for c in col.iter_mut() {
                        *c = ring.neg(c);
                    }
                } else if !self.bond[s][t].is_zero() {
                    for (c, x) in col.iter_mut().zip(&xs) {
                        *c = ring.add(c, &ring.mul(&self.bond[s][t], x));
                    }
                }
            }
        }
        let mask = |cols: &[Vec<RingElem>]| {
            cols.iter()
                .enumerate()
                .filter(|(_, c)| self.vector_sign(c) == Sign::Neg)
                .fold(0u64, |m, (t, _)| m | 1 << t)
        };
        let left = mask(&inv);
        let right = mask(&fwd);
        let mut canon = Vec::with_capacity(word.len());
        loop {
            let Some(t) = (0..n).find(|&t| self.vector_sign(&inv[t]) == Sign::Neg) else {
                break;
            };
            canon.push(t as u8);
            // (t x)^-1(alpha_u) = x^-1(alpha_u) + bond[t][u] x^-1(alpha_t)
            let it = inv[t].clone();
            for (u, col) in inv.iter_mut().enumerate() {
                if u == t {
                    for c in col.iter_mut() {
                        *c = ring.neg(c);
                    }
                } else if !self.bond[t][u].is_zero() {
                    for (c, x) in col.iter_mut().zip(&it) {
                        *c = ring.add(c, &ring.mul(&self.bond[t][u], x));
                    }
                }
            }
        }
        (canon, left, right)
    }

    /// Order by length, then lexicographically by canonical word.
    pub fn cmp_shortlex(&self, a: Element, b: Element) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        let st = self.state.read().unwrap();
        let wa = &st.slots[a.0 as usize].word;
        let wb = &st.slots[b.0 as usize].word;
        wa.len().cmp(&wb.len()).then_with(|| wa.cmp(wb))
    }

    pub fn sort_shortlex(&self, v: &mut [Element]) {
        v.sort_by(|&a, &b| self.cmp_shortlex(a, b));
    }

    /// Bruhat order by the lifting property, memoized.
    pub fn bruhat_leq(&self, y: Element, w: Element) -> bool {
        if y == w || y == Element::IDENTITY {
            return true;
        }
        let (ly, lw) = (self.length(y), self.length(w));
        if ly >= lw {
            return false;
        }
        if let Some(&r) = self.bruhat.lock().unwrap().get(&(y, w)) {
            return r;
        }
        let s = self.first_descent(w, Side::Left).expect("nonidentity has a descent");
        let sw = self.left_mul(s, w);
        let r = if self.descent(y, s, Side::Left) {
            self.bruhat_leq(self.left_mul(s, y), sw)
        } else {
            self.bruhat_leq(y, sw)
        };
        self.bruhat.lock().unwrap().insert((y, w), r);
        r
    }

    /// All elements of length `<= max_len`, sorted by (length, word).
    pub fn enumerate_up_to(&self, max_len: usize) -> Result<Vec<Element>> {
        let mut out = vec![Element::IDENTITY];
        let mut layer = vec![Element::IDENTITY];
        for _ in 0..max_len {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for &w in &layer {
                for s in 0..self.rank() {
                    let (sw, sign) = self.mul_gen(w, s, Side::Left);
                    if sign > 0 && seen.insert(sw) {
                        next.push(sw);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            if out.len() + next.len() > self.cap {
                return Err(Error::Resource(format!(
                    "more than {} elements up to length {max_len}",
                    self.cap
                )));
            }
            self.sort_shortlex(&mut next);
            out.extend_from_slice(&next);
            layer = next;
        }
        Ok(out)
    }

    /// Dot-joined labels; the identity is the empty string.
    pub fn format_word(&self, w: Element) -> String {
        let labels = self.system.labels();
        self.word(w).into_iter().map(|s| labels[s].as_str()).collect::<Vec<_>>().join(".")
    }

    /// Parses a dot-joined label word. When every label is a single character, the
    /// dots may be omitted (`"sts"`).
    pub fn parse_word(&self, text: &str) -> Result<Element> {
        Ok(self.from_word(&self.parse_letters(text)?))
    }

    pub fn parse_letters(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        let sys = &self.system;
        let pieces: Vec<String> = if text.contains('.') || sys.label_index(text).is_some() {
            text.split('.').map(str::to_string).collect()
        } else if sys.labels().iter().all(|l| l.chars().count() == 1) {
            text.chars().map(|c| c.to_string()).collect()
        } else {
            vec![text.to_string()]
        };
        pieces
            .iter()
            .map(|p| sys.label_index(p).ok_or_else(|| Error::Parse(format!("unknown generator {p:?} in word {text:?}"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems;

    #[test]
    fn mul_gen_examples() {
        let g = systems::a(2).group();
        let s = g.generator(0);
        assert_eq!(g.mul_gen(Element::IDENTITY, 0, Side::Left), (s, 1));
        assert_eq!(g.mul_gen(s, 0, Side::Left), (Element::IDENTITY, -1));
        let st = g.from_word(&[0, 1]);
        let sts = g.from_word(&[0, 1, 0]);
        assert_eq!(g.mul_gen(st, 0, Side::Right), (sts, 1));
        assert_eq!(g.mul_gen(sts, 0, Side::Right), (st, -1));
        assert_eq!(g.from_word(&[1, 0, 1]), sts);
        assert_eq!(g.word(sts), vec![0, 1, 0]);
    }

    #[test]
    fn descent_examples() {
        let g = systems::a(2).group();
        assert!(!g.descent(Element::IDENTITY, 0, Side::Left));
        assert!(g.descent(g.from_word(&[0, 1, 0]), 1, Side::Left));
        assert!(!g.descent(g.from_word(&[0, 1]), 1, Side::Left));
    }

    #[test]
    fn star_examples() {
        let g = systems::a(2).with_star(vec![1, 0]).unwrap().group();
        assert_eq!(g.star_apply(g.from_word(&[0, 1])), g.from_word(&[1, 0]));
        let sts = g.from_word(&[0, 1, 0]);
        assert_eq!(g.star_apply(sts), sts);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(systems::a(2).group().enumerate_up_to(3).unwrap().len(), 6);
        assert_eq!(systems::b(2).group().enumerate_up_to(4).unwrap().len(), 8);
        assert_eq!(systems::affine_a2_swap().group().enumerate_up_to(2).unwrap().len(), 10);
        assert_eq!(systems::h3().group().enumerate_up_to(100).unwrap().len(), 120);
    }

    #[test]
    fn cap_is_enforced() {
        let sys = systems::affine_a2_swap();
        let g = CoxeterGroup::with_cap(sys, 50).unwrap();
        assert!(matches!(g.enumerate_up_to(20), Err(Error::Resource(_))));
    }

    #[test]
    fn parse_and_format() {
        let g = systems::a(2).group();
        let w = g.parse_word("s.t.s").unwrap();
        assert_eq!(g.format_word(w), "s.t.s");
        assert_eq!(g.parse_word("tst").unwrap(), w);
        assert_eq!(g.parse_word("").unwrap(), Element::IDENTITY);
        assert!(g.parse_word("x").is_err());
    }

    #[test]
    fn root_action_is_positive_iff_not_descent() {
        let g = systems::b(3).group();
        for w in g.enumerate_up_to(9).unwrap() {
            for s in 0..3 {
                let neg = g.root_sign(&g.root_action(w, s)) == Sign::Neg;
                assert_eq!(neg, g.descent(w, s, Side::Right));
            }
        }
    }
}
