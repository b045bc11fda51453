use num_complex::Complex;

use super::pauli::PauliKit;
use super::rep::CliffordRep;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// One step of the dimension chain `k → k+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InclusionStep {
    /// Even `k`: spinor dimension is unchanged and generators carry over.
    Extend,
    /// Odd `k`: spinor dimension doubles, `γ ↦ σ1 ⊗ γ`.
    Double,
}

pub fn inclusion_chain(k: usize, n: usize) -> Result<Vec<InclusionStep>> {
    if k == 0 || k >= n {
        return Err(Error::InvalidInclusion(format!("need 1 <= k < n, got k={k}, n={n}")));
    }
    Ok((k..n)
        .map(|j| {
            if j % 2 == 0 {
                InclusionStep::Extend
            } else {
                InclusionStep::Double
            }
        })
        .collect())
}

fn check_pair<T: Scalar>(rep_k: &CliffordRep<T>, rep_n: &CliffordRep<T>) -> Result<Vec<InclusionStep>> {
    inclusion_chain(rep_k.n(), rep_n.n())
}

/// Image of the generator `γ_k(e_i)` obtained by walking the chain.
///
/// Matches `γ_n(e_i)` whenever the odd sign of every odd rep on the chain is
/// `+1`; with odd sign `−1` the image of `e_0` picks up that sign.
pub fn tau_generator<T: Scalar>(rep_k: &CliffordRep<T>, rep_n: &CliffordRep<T>, i: usize) -> Result<Mat<Complex<T>>> {
    let steps = check_pair(rep_k, rep_n)?;
    if i >= rep_k.n() {
        return Err(Error::InvalidInclusion(format!(
            "generator {i} not in source of size {}",
            rep_k.n()
        )));
    }
    let s1 = PauliKit::<T>::new().sigma1;
    let mut img = rep_k.gamma(i).clone();
    for step in steps {
        if step == InclusionStep::Double {
            img = s1.kron(&img);
        }
    }
    Ok(img)
}

/// Set inclusion on a linear combination of generator words.
///
/// `element` lists `(word, coefficient)` pairs; a word is an ordered list of
/// zero-based generator indices (repeats allowed, empty = identity).
pub fn tau_inclusion<T: Scalar>(
    rep_k: &CliffordRep<T>,
    rep_n: &CliffordRep<T>,
    element: &[(Vec<usize>, Complex<T>)],
) -> Result<Mat<Complex<T>>> {
    check_pair(rep_k, rep_n)?;
    let images = (0..rep_k.n())
        .map(|i| tau_generator(rep_k, rep_n, i))
        .collect::<Result<Vec<_>>>()?;
    let d = rep_n.spinor_dim();
    let mut out = Mat::zeros(d, d);
    for (word, coeff) in element {
        let mut acc = Mat::identity(d);
        for &i in word {
            let g = images
                .get(i)
                .ok_or_else(|| Error::InvalidInclusion(format!("generator {i} not in source of size {}", rep_k.n())))?;
            acc = acc.matmul(g);
        }
        out = &out + &acc.scale(coeff);
    }
    Ok(out)
}

/// Algebra inclusion `c ↦ I ⊗ c`.
pub fn iota_inclusion<T: Scalar>(
    rep_k: &CliffordRep<T>,
    rep_n: &CliffordRep<T>,
    c: &Mat<Complex<T>>,
) -> Result<Mat<Complex<T>>> {
    check_pair(rep_k, rep_n)?;
    if c.rows() != rep_k.spinor_dim() || c.cols() != rep_k.spinor_dim() {
        return Err(Error::ShapeMismatch(format!(
            "element is {}x{}, source spinor dimension {}",
            c.rows(),
            c.cols(),
            rep_k.spinor_dim()
        )));
    }
    let pad = rep_n.spinor_dim() / rep_k.spinor_dim();
    Ok(Mat::identity(pad).kron(c))
}
