use num_complex::Complex;

use crate::clifford::{build_clifford, CoSpinor, Spinor};

/// Fixed E⁴ spinor pairs `(Ψ_a, Ψ̄_a)` whose bilinears `Σ_i Ψ̄_a γ_i Ψ_a dx^i`
/// give `2dZ¹, 2dZ̄¹, 2dZ², 2dZ̄²` with `Z¹ = x1 + i x2`, `Z² = x3 + i x4`.
///
/// The duals are bespoke, not conjugate transposes of `Ψ_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceFrames {
    pub pairs: Vec<(Spinor<i64>, CoSpinor<i64>)>,
    /// `coefficients[a][i] = Ψ̄_a γ_i Ψ_a`.
    pub coefficients: Vec<[Complex<i64>; 4]>,
    pub expected: Vec<[Complex<i64>; 4]>,
}

impl SurfaceFrames {
    pub fn holds(&self) -> bool {
        self.coefficients == self.expected
    }
}

fn ints(v: [i64; 4]) -> Vec<Complex<i64>> {
    v.iter().map(|&x| Complex::new(x, 0)).collect()
}

pub fn surface_frames() -> SurfaceFrames {
    let psi = [[1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]];
    let bar = [[0, 1, 0, 1], [1, 0, 1, 0], [0, -1, 1, 0], [1, 0, 0, -1]];
    let rep = build_clifford::<i64>(4, 1).expect("n = 4");
    let pairs: Vec<_> = psi
        .iter()
        .zip(&bar)
        .map(|(p, b)| (Spinor::new(ints(*p)), CoSpinor::new(ints(*b))))
        .collect();
    let coefficients = pairs
        .iter()
        .map(|(p, b)| std::array::from_fn(|i| b.sandwich(rep.gamma(i), p)))
        .collect();
    let c = |re, im| Complex::new(re, im);
    let expected = vec![
        [c(2, 0), c(0, 2), c(0, 0), c(0, 0)],
        [c(2, 0), c(0, -2), c(0, 0), c(0, 0)],
        [c(0, 0), c(0, 0), c(2, 0), c(0, 2)],
        [c(0, 0), c(0, 0), c(2, 0), c(0, -2)],
    ];
    SurfaceFrames {
        pairs,
        coefficients,
        expected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_exactly() {
        let l = surface_frames();
        assert_eq!(l.coefficients[0], l.expected[0], "first pair");
        assert!(l.holds(), "{:?}", l.coefficients);
    }
}
