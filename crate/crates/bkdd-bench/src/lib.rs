//! Shared fixtures for the benchmark targets.

use bkdd::*;

/// Deterministic dense matrix over the given field (splitmix-style
/// state walk, no external RNG needed).
pub fn fixture_matrix(field: &FieldCtx, n: usize) -> MatrixGF {
    let mut m = MatrixGF::zeros(n, n);
    let mut state = 0x243f6a8885a308d3u64;
    for i in 0..n {
        for j in 0..n {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            m.set(i, j, field.elt((state >> 33) % field.size()));
        }
    }
    m
}

/// The heaviest instance of the acceptance sweep: p = 5, f = 2, e = 2
/// principal series, with the pair of a maximal refined shape.
pub fn fixture_pair() -> (TameType, RankOneBK, RankOneBK) {
    let params = AmbientParams::new(5, 2, 2, TypeKind::PrincipalSeries, Some(1)).unwrap();
    let tau = TameType::new(&params, 7, 0).unwrap();
    let shape = enumerate_shapes(&tau)[1].clone();
    let (m, n) = build_pair(&tau, &maximal_refined(&tau, &shape));
    (tau, m, n)
}
