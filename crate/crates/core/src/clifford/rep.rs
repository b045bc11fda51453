use num_complex::Complex;

use super::pauli::PauliKit;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// Irreducible complex matrix representation of the Euclidean Clifford algebra on `n` generators.
///
/// Generators are indexed from 0. With `m = n / 2`:
/// `γ_0 = s·σ1^{⊗m}` and, for `1 ≤ idx < n` with `j = (idx + 1) / 2`,
/// `γ_idx = σ1^{⊗(m−j)} ⊗ σ_p ⊗ σ0^{⊗(j−1)}` where `σ_p` is σ2 for odd `idx`
/// and σ3 for even `idx`. The sign `s` is `odd_sign` for odd `n` and `+1`
/// otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordRep<T> {
    n: usize,
    spinor_dim: usize,
    odd_sign: i8,
    generators: Vec<Mat<Complex<T>>>,
    words: Vec<Vec<usize>>,
}

pub fn build_clifford<T: Scalar>(n: usize, odd_sign: i8) -> Result<CliffordRep<T>> {
    if n == 0 {
        return Err(Error::InvalidDimension("Clifford algebra needs n >= 1".into()));
    }
    if odd_sign != 1 && odd_sign != -1 {
        return Err(Error::InvalidDimension(format!(
            "odd_sign must be +1 or -1, got {odd_sign}"
        )));
    }
    let kit = PauliKit::<T>::new();
    let m = n / 2;
    let mut words = Vec::with_capacity(n);
    words.push(vec![1; m]);
    for idx in 1..n {
        let j = idx.div_ceil(2);
        let p = if idx % 2 == 1 { 2 } else { 3 };
        let mut w = vec![1; m - j];
        w.push(p);
        w.extend(std::iter::repeat_n(0, j - 1));
        words.push(w);
    }
    let sign = if n % 2 == 1 && odd_sign < 0 {
        Complex::new(-T::one(), T::zero())
    } else {
        Complex::new(T::one(), T::zero())
    };
    let generators = words
        .iter()
        .enumerate()
        .map(|(idx, w)| {
            let g = kit.word(w);
            if idx == 0 {
                g.scale(&sign)
            } else {
                g
            }
        })
        .collect();
    Ok(CliffordRep {
        n,
        spinor_dim: 1 << m,
        odd_sign: if n % 2 == 1 { odd_sign } else { 1 },
        generators,
        words,
    })
}

impl<T: Scalar> CliffordRep<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spinor_dim(&self) -> usize {
        self.spinor_dim
    }

    /// `+1` for even `n`.
    pub fn odd_sign(&self) -> i8 {
        self.odd_sign
    }

    pub fn generators(&self) -> &[Mat<Complex<T>>] {
        &self.generators
    }

    /// `γ(e_i)`, zero-based.
    pub fn gamma(&self, i: usize) -> &Mat<Complex<T>> {
        &self.generators[i]
    }

    /// Pauli tensor word of generator `i` (0 = σ0, …, 3 = σ3), ignoring the odd sign.
    pub fn pauli_word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn identity(&self) -> Mat<Complex<T>> {
        Mat::identity(self.spinor_dim)
    }

    /// Ordered product `γ_{i0} γ_{i1} …`; indices may repeat.
    pub fn product(&self, word: &[usize]) -> Result<Mat<Complex<T>>> {
        let mut acc = self.identity();
        for &i in word {
            if i >= self.n {
                return Err(Error::InvalidForm(format!(
                    "generator index {i} out of range for n = {}",
                    self.n
                )));
            }
            acc = acc.matmul(&self.generators[i]);
        }
        Ok(acc)
    }

    /// All `2^n` increasing blades `γ_I`, ordered by bitmask.
    pub fn blades(&self) -> Vec<(Vec<usize>, Mat<Complex<T>>)> {
        (0..1usize << self.n)
            .map(|mask| {
                let idx: Vec<usize> = (0..self.n).filter(|b| mask >> b & 1 == 1).collect();
                let m = self.product(&idx).expect("indices in range");
                (idx, m)
            })
            .collect()
    }
}

/// Image of a differential form: `Σ c_I γ(e_{i1} ∧ … ∧ e_{ip})`.
///
/// Multi-indices are zero-based and must be strictly increasing. For
/// distinct anticommuting generators the antisymmetrized product equals the
/// ordered product, which is what gets evaluated.
pub fn gamma_of_form<T: Scalar>(rep: &CliffordRep<T>, form: &[(Vec<usize>, Complex<T>)]) -> Result<Mat<Complex<T>>> {
    let d = rep.spinor_dim();
    let mut out = Mat::zeros(d, d);
    for (idx, coeff) in form {
        for w in idx.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidForm(format!("repeated index {} in {:?}", w[0], idx)));
            }
            if w[0] > w[1] {
                return Err(Error::InvalidForm(format!("multi-index {idx:?} not increasing")));
            }
        }
        let term = rep.product(idx)?.scale(coeff);
        out = &out + &term;
    }
    Ok(out)
}
