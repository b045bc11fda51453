use num_complex::Complex;

use crate::linalg::Mat;
use crate::scalar::Scalar;

/// The identity and the three Pauli matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliKit<T> {
    pub sigma0: Mat<Complex<T>>,
    pub sigma1: Mat<Complex<T>>,
    pub sigma2: Mat<Complex<T>>,
    pub sigma3: Mat<Complex<T>>,
}

impl<T: Scalar> PauliKit<T> {
    pub fn new() -> Self {
        let o = || Complex::new(T::zero(), T::zero());
        let one = || Complex::new(T::one(), T::zero());
        let i = || Complex::new(T::zero(), T::one());
        let neg = |z: Complex<T>| Complex::new(-z.re, -z.im);
        Self {
            sigma0: Mat::from_vec(2, 2, vec![one(), o(), o(), one()]),
            sigma1: Mat::from_vec(2, 2, vec![o(), one(), one(), o()]),
            sigma2: Mat::from_vec(2, 2, vec![o(), neg(i()), i(), o()]),
            sigma3: Mat::from_vec(2, 2, vec![one(), o(), o(), neg(one())]),
        }
    }

    /// `σ_a` for `a ∈ 0..4`.
    pub fn get(&self, a: usize) -> &Mat<Complex<T>> {
        match a {
            0 => &self.sigma0,
            1 => &self.sigma1,
            2 => &self.sigma2,
            3 => &self.sigma3,
            _ => panic!("Pauli index {a} out of range"),
        }
    }

    /// Tensor product `σ_{w0} ⊗ σ_{w1} ⊗ …`; the empty word is the 1×1 identity.
    pub fn word(&self, w: &[usize]) -> Mat<Complex<T>> {
        w.iter().fold(Mat::identity(1), |acc, &a| acc.kron(self.get(a)))
    }
}

impl<T: Scalar> Default for PauliKit<T> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn levi(a: usize, b: usize, c: usize) -> i64 {
        match (a, b, c) {
            (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
            (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
            _ => 0,
        }
    }

    #[test]
    fn pauli_product_table_exact() {
        let k = PauliKit::<i64>::new();
        for a in 1..=3 {
            for b in 1..=3 {
                let mut expect = if a == b { k.sigma0.clone() } else { Mat::zeros(2, 2) };
                for c in 1..=3 {
                    let e = levi(a, b, c);
                    if e != 0 {
                        let term = k.get(c).scale(&Complex::new(0, e));
                        expect = &expect + &term;
                    }
                }
                assert_eq!(k.get(a).matmul(k.get(b)), expect, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn hermitian_and_unitary() {
        let k = PauliKit::<i64>::new();
        for a in 0..4 {
            let s = k.get(a);
            assert_eq!(&s.adjoint(), s);
            assert_eq!(s.matmul(&s.adjoint()), Mat::identity(2));
        }
    }

    #[test]
    fn word_is_left_slow_kron() {
        let k = PauliKit::<i64>::new();
        let w = k.word(&[2, 0]);
        // σ2 ⊗ σ0: entry (row 2, col 0) is i.
        assert_eq!(w[(2, 0)], Complex::new(0, 1));
        assert_eq!(w[(0, 2)], Complex::new(0, -1));
        assert_eq!(k.word(&[]), Mat::identity(1));
    }
}
