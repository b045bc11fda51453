use num_complex::Complex;

use super::rep::CliffordRep;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{Real, Scalar, C};

/// Column spinor in the standard tensor basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Spinor<T> {
    pub components: Vec<Complex<T>>,
}

/// Row (dual) spinor.
#[derive(Clone, Debug, PartialEq)]
pub struct CoSpinor<T> {
    pub components: Vec<Complex<T>>,
}

fn conj<T: Scalar>(z: &Complex<T>) -> Complex<T> {
    Complex::new(z.re.clone(), -z.im.clone())
}

impl<T: Scalar> Spinor<T> {
    pub fn new(components: Vec<Complex<T>>) -> Self {
        Self { components }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![Complex::new(T::zero(), T::zero()); dim])
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut s = Self::zeros(dim);
        s.components[k] = Complex::new(T::one(), T::zero());
        s
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `M ψ`.
    pub fn apply(&self, m: &Mat<Complex<T>>) -> Self {
        let col = Mat::column(self.components.clone());
        Self::new(m.matmul(&col).into_vec())
    }

    /// `a ⊗ b` in the left-slow ordering.
    pub fn kron(&self, rhs: &Self) -> Self {
        let a = Mat::column(self.components.clone());
        let b = Mat::column(rhs.components.clone());
        Self::new(a.kron(&b).into_vec())
    }
}

impl<T: Scalar> CoSpinor<T> {
    pub fn new(components: Vec<Complex<T>>) -> Self {
        Self { components }
    }

    /// `φ̄ ψ`.
    pub fn dot(&self, s: &Spinor<T>) -> Complex<T> {
        self.components
            .iter()
            .zip(&s.components)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.clone() * b.clone()
            })
    }

    /// `φ̄ M ψ`.
    pub fn sandwich(&self, m: &Mat<Complex<T>>, s: &Spinor<T>) -> Complex<T> {
        self.dot(&s.apply(m))
    }

    /// `φ̄ M` as a row.
    pub fn apply_right(&self, m: &Mat<Complex<T>>) -> Self {
        let row = Mat::row(self.components.clone());
        Self::new(row.matmul(m).into_vec())
    }
}

/// Antilinear isomorphism spinor → dual: conjugate coefficients, transpose.
pub fn phi_map<T: Scalar>(s: &Spinor<T>) -> CoSpinor<T> {
    CoSpinor::new(s.components.iter().map(conj).collect())
}

pub fn phi_map_inverse<T: Scalar>(c: &CoSpinor<T>) -> Spinor<T> {
    Spinor::new(c.components.iter().map(conj).collect())
}

/// Two-component building blocks for the frame-spinor search, in search order:
/// the +1 eigenvectors of σ1, σ2, σ3 followed by the −1 eigenvectors.
fn alphabet<T: Real>() -> [[C<T>; 2]; 6] {
    let r = T::FRAC_1_SQRT_2();
    let z = T::zero();
    let o = T::one();
    [
        [C::new(r, z), C::new(r, z)],
        [C::new(r, z), C::new(z, r)],
        [C::new(o, z), C::new(z, z)],
        [C::new(r, z), C::new(-r, z)],
        [C::new(r, z), C::new(z, -r)],
        [C::new(z, z), C::new(o, z)],
    ]
}

/// Spinor, dual and the tensor word it was built from.
pub type FrameSpinor<T> = (Spinor<T>, CoSpinor<T>, Vec<usize>);

/// Frame spinors `Ψ^(a)` with duals `Ψ̄^(a) = φ(Ψ^(a))` satisfying
/// `Ψ̄^(a) γ_b Ψ^(a) = δ_ab`.
///
/// Found by a deterministic lexicographic search over tensor words in
/// eigenvectors of σ1, σ2, σ3; every candidate is validated directly against
/// the identity. Also returns the chosen words (alphabet indices; 0,1,2 are
/// the +1 eigenvectors of σ1,σ2,σ3).
pub fn frame_spinors_with_words<T: Real>(rep: &CliffordRep<T>) -> Result<Vec<FrameSpinor<T>>> {
    let n = rep.n();
    let m = rep.spinor_dim().trailing_zeros() as usize;
    let letters = alphabet::<T>();
    let tol = T::lit(1e-12);
    let total = 6usize.pow(m as u32);
    let mut out = Vec::with_capacity(n);
    for a in 0..n {
        let mut found = None;
        for code in 0..total {
            let mut word = vec![0; m];
            let mut c = code;
            for slot in (0..m).rev() {
                word[slot] = c % 6;
                c /= 6;
            }
            let psi = word
                .iter()
                .fold(Spinor::new(vec![C::new(T::one(), T::zero())]), |acc, &l| {
                    acc.kron(&Spinor::new(letters[l].to_vec()))
                });
            let bar = phi_map(&psi);
            let ok = (0..n).all(|b| {
                let v = bar.sandwich(rep.gamma(b), &psi);
                let target = if a == b { T::one() } else { T::zero() };
                (v - C::new(target, T::zero())).norm() <= tol
            });
            if ok {
                found = Some((psi, bar, word));
                break;
            }
        }
        match found {
            Some(f) => out.push(f),
            None => {
                return Err(Error::Validation(format!(
                    "no frame spinor for generator {a} (n = {n}, odd_sign = {})",
                    rep.odd_sign()
                )))
            }
        }
    }
    Ok(out)
}

/// See [`frame_spinors_with_words`]. Fails only for `n = 1` with odd sign −1,
/// where `γ_0 = −1` has no unit expectation.
pub fn frame_spinors<T: Real>(rep: &CliffordRep<T>) -> Result<Vec<(Spinor<T>, CoSpinor<T>)>> {
    Ok(frame_spinors_with_words(rep)?
        .into_iter()
        .map(|(s, c, _)| (s, c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::rep::build_clifford;

    #[test]
    fn phi_conjugates() {
        let s = Spinor::new(vec![Complex::new(0i64, 1), Complex::new(0, 0)]);
        assert_eq!(phi_map(&s).components[0], Complex::new(0, -1));
        let s = Spinor::new(vec![Complex::new(3i64, 4), Complex::new(-1, 2)]);
        assert_eq!(phi_map(&s).dot(&s), Complex::new(25 + 5, 0));
        assert_eq!(phi_map_inverse(&phi_map(&s)), s);
    }

    #[test]
    fn frame_table_n2_n4() {
        let r2 = build_clifford::<f64>(2, 1).unwrap();
        let w2: Vec<_> = frame_spinors_with_words(&r2)
            .unwrap()
            .into_iter()
            .map(|x| x.2)
            .collect();
        assert_eq!(w2, vec![vec![0], vec![1]]);
        let r4 = build_clifford::<f64>(4, 1).unwrap();
        let w4: Vec<_> = frame_spinors_with_words(&r4)
            .unwrap()
            .into_iter()
            .map(|x| x.2)
            .collect();
        assert_eq!(w4, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0]]);
    }

    #[test]
    fn frame_identity_all_dims() {
        for n in 1..=8 {
            let r = build_clifford::<f64>(n, 1).unwrap();
            let fr = frame_spinors(&r).unwrap();
            for (a, (psi, bar)) in fr.iter().enumerate() {
                for b in 0..n {
                    let v = bar.sandwich(r.gamma(b), psi);
                    let t = if a == b { 1.0 } else { 0.0 };
                    assert!((v - C::new(t, 0.0)).norm() < 1e-12, "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn n1_negative_sign_has_no_frame() {
        let r = build_clifford::<f64>(1, -1).unwrap();
        assert!(frame_spinors(&r).is_err());
        let r3 = build_clifford::<f64>(3, -1).unwrap();
        assert!(frame_spinors(&r3).is_ok());
    }
}
