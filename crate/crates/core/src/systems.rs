//! Coxeter systems used throughout the tests and examples.

use crate::coxeter::{CoxeterSystem, Entry};

fn labels(n: usize) -> Vec<String> {
    match n {
        1 => vec!["s".into()],
        2 => vec!["s".into(), "t".into()],
        _ => (1..=n).map(|i| i.to_string()).collect(),
    }
}

fn from_bonds(n: usize, labels: Vec<String>, bonds: &[(usize, usize, Entry)], star: Vec<usize>) -> CoxeterSystem {
    let mut m = vec![vec![Some(2); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Some(1);
    }
    for &(i, j, e) in bonds {
        m[i][j] = e;
        m[j][i] = e;
    }
    CoxeterSystem::new(labels, m, star).expect("built-in system is valid")
}

/// Type `A_n`, star = identity.
pub fn a(n: usize) -> CoxeterSystem {
    let bonds: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1, Some(3))).collect();
    from_bonds(n, labels(n), &bonds, (0..n).collect())
}

/// Type `A_n` with star the diagram flip `i -> n-1-i`.
pub fn a_flip(n: usize) -> CoxeterSystem {
    a(n).with_star((0..n).rev().collect()).unwrap()
}

/// Type `B_n`: `m(0,1) = 4`, then a chain of 3s.
pub fn b(n: usize) -> CoxeterSystem {
    let mut bonds = vec![(0, 1, Some(4))];
    bonds.extend((1..n - 1).map(|i| (i, i + 1, Some(3))));
    from_bonds(n, labels(n), &bonds, (0..n).collect())
}

/// Dihedral `I_2(m)`.
pub fn i2(m: u32) -> CoxeterSystem {
    from_bonds(2, labels(2), &[(0, 1, Some(m))], vec![0, 1])
}

/// `H_3`: `m(0,1) = 5`, `m(1,2) = 3`.
pub fn h3() -> CoxeterSystem {
    from_bonds(3, labels(3), &[(0, 1, Some(5)), (1, 2, Some(3))], vec![0, 1, 2])
}

fn affine_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Affine `A_1`: generators `0, 1` with `m = inf`, star = identity.
pub fn affine_a1() -> CoxeterSystem {
    from_bonds(2, affine_labels(2), &[(0, 1, None)], vec![0, 1])
}

/// Affine `A_2` on `0, 1, 2` with star fixing `0` and swapping `1, 2`.
pub fn affine_a2_swap() -> CoxeterSystem {
    from_bonds(3, affine_labels(3), &[(0, 1, Some(3)), (0, 2, Some(3)), (1, 2, Some(3))], vec![0, 2, 1])
}

/// Affine rank-3 system with `m(1,2) = 4`, `m(0,2) = 2`, `m(0,1) = 4`, star = identity.
pub fn affine_c2() -> CoxeterSystem {
    from_bonds(3, affine_labels(3), &[(0, 1, Some(4)), (1, 2, Some(4))], vec![0, 1, 2])
}

/// Named finite test systems, star variants included.
pub fn finite_test_systems() -> Vec<(&'static str, CoxeterSystem)> {
    vec![
        ("A1", a(1)),
        ("A2", a(2)),
        ("A2-swap", a_flip(2)),
        ("A3", a(3)),
        ("A3-flip", a_flip(3)),
        ("B2", b(2)),
        ("B3", b(3)),
        ("I2(5)", i2(5)),
        ("I2(6)", i2(6)),
        ("H3", h3()),
    ]
}

/// Named affine test systems.
pub fn affine_test_systems() -> Vec<(&'static str, CoxeterSystem)> {
    vec![("A1~", affine_a1()), ("A2~-swap", affine_a2_swap()), ("C2~", affine_c2())]
}
