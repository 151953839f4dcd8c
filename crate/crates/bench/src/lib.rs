//! Benchmark fixtures.

use num::complex::Complex64;
use num::rational::Rational64;
use pvi_core::families::FamilyId;
use pvi_core::Kappa;

/// A point off every wall.
pub fn generic_kappa() -> Kappa {
    Kappa::from_k1234([(1, 5), (1, 7), (1, 11), (1, 13)].map(|(n, d)| Rational64::new(n, d)))
}

/// Families built in the series benchmarks.
pub fn series_families() -> Vec<FamilyId> {
    let t = Complex64::new(0.375, 0.125);
    vec![
        FamilyId::K1K2Plus,
        FamilyId::K3K4Minus,
        FamilyId::AlgBranch { n: 3, m: 1, t },
        FamilyId::AlgBranch { n: 5, m: 2, t },
    ]
}
