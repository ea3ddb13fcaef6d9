//! Shared inputs for the benchmarks.

use lim1_core::{FreeEndo, IntMatrix, Substitution};

/// Named endomorphisms covering the plateau shapes seen in practice.
pub fn endo_fixtures() -> Vec<(&'static str, FreeEndo)> {
    let mk = |letters, images: &[&str]| FreeEndo::from_compact(letters, images).expect("fixture");
    vec![
        ("fibonacci", mk("ab", &["ab", "a"])),
        ("abc", mk("abc", &["abc", "abc", "a"])),
        ("non_invertible", mk("ab", &["ababa", "baa"])),
        ("three_letter", mk("123", &["1131", "1231", "232"])),
        ("fibonacci_cubed", mk("ab", &["ab", "a"]).iterate(3)),
    ]
}

pub fn substitution_fixtures() -> Vec<(&'static str, Substitution)> {
    endo_fixtures()
        .into_iter()
        .filter_map(|(name, e)| Substitution::from_endo(&e).ok().filter(|s| s.is_primitive()).map(|s| (name, s)))
        .collect()
}

/// Dense `n × n` matrix with small mixed-sign entries.
pub fn dense_matrix(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| ((i * 7 + j * 13 + i * j) % 11) as i64 - 5).collect())
        .collect();
    IntMatrix::from_rows(&rows)
}
