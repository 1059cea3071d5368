//! Independent brute-force checks: element counts from permutation models and the
//! Bruhat order from the subword property.

use std::collections::{HashMap, HashSet};

use hecke_involutions::systems;
use hecke_involutions::CoxeterSystem;

type Perm = Vec<i64>;

/// Breadth-first search over words on explicit permutations of a finite set; returns
/// the number of new elements per length.
fn layer_counts(gens: &[Perm]) -> Vec<usize> {
    let id: Perm = (0..gens[0].len() as i64).collect();
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut layer = vec![id];
    let mut counts = vec![1];
    loop {
        let mut next = Vec::new();
        for p in &layer {
            for s in gens {
                let q: Perm = s.iter().map(|&i| p[i as usize]).collect();
                if seen.insert(q.clone()) {
                    next.push(q);
                }
            }
        }
        if next.is_empty() {
            return counts;
        }
        counts.push(next.len());
        layer = next;
    }
}

/// `s_i` swaps `i, i+1` on `0..=n`.
fn type_a(n: usize) -> Vec<Perm> {
    (0..n)
        .map(|i| {
            let mut p: Perm = (0..=n as i64).collect();
            p.swap(i, i + 1);
            p
        })
        .collect()
}

/// Signed permutations of `±1..±n`, stored on `2n` points; `s_0` flips the sign of 1.
fn type_b(n: usize) -> Vec<Perm> {
    let pt = |k: usize, neg: bool| (2 * k + usize::from(neg)) as i64;
    let mut gens = Vec::new();
    let mut s0: Perm = (0..2 * n as i64).collect();
    s0.swap(0, 1);
    gens.push(s0);
    for i in 0..n - 1 {
        let mut p: Perm = (0..2 * n as i64).collect();
        for neg in [false, true] {
            p[pt(i, neg) as usize] = pt(i + 1, neg);
            p[pt(i + 1, neg) as usize] = pt(i, neg);
        }
        gens.push(p);
    }
    gens
}

/// Reflections of the `m`-gon on its vertices `0..m`: `k -> -k` and `k -> 1-k`.
fn dihedral(m: i64) -> Vec<Perm> {
    vec![(0..m).map(|k| (-k).rem_euclid(m)).collect(), (0..m).map(|k| (1 - k).rem_euclid(m)).collect()]
}

fn library_counts(sys: &CoxeterSystem) -> Vec<usize> {
    let g = sys.group();
    let all = g.enumerate_up_to(64).unwrap();
    let words: HashSet<String> = all.iter().map(|&w| g.format_word(w)).collect();
    assert_eq!(words.len(), all.len(), "duplicate canonical words");
    let mut by_len: HashMap<usize, usize> = HashMap::new();
    for &w in &all {
        *by_len.entry(g.length(w)).or_default() += 1;
    }
    (0..=*by_len.keys().max().unwrap()).map(|l| by_len[&l]).collect()
}

#[test]
fn counts_match_permutation_models() {
    assert_eq!(library_counts(&systems::a(2)), layer_counts(&type_a(2)));
    assert_eq!(library_counts(&systems::a(3)), layer_counts(&type_a(3)));
    assert_eq!(library_counts(&systems::b(2)), layer_counts(&type_b(2)));
    assert_eq!(library_counts(&systems::b(3)), layer_counts(&type_b(3)));
    assert_eq!(library_counts(&systems::i2(5)), layer_counts(&dihedral(5)));
    assert_eq!(library_counts(&systems::i2(6)), layer_counts(&dihedral(6)));
}

#[test]
fn bruhat_matches_subword_property() {
    for sys in [systems::a(3), systems::b(2)] {
        let g = sys.group();
        let all = g.enumerate_up_to(6).unwrap();
        for &w in &all {
            let word = g.word(w);
            let mut below = HashSet::new();
            for mask in 0u32..(1 << word.len()) {
                let sub: Vec<usize> = (0..word.len()).filter(|i| mask & (1 << i) != 0).map(|i| word[i]).collect();
                let y = g.from_word(&sub);
                if g.length(y) == sub.len() {
                    below.insert(y);
                }
            }
            for &y in &all {
                assert_eq!(g.bruhat_leq(y, w), below.contains(&y), "{} <= {}", g.format_word(y), g.format_word(w));
            }
        }
    }
}
