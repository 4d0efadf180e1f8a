use std::ops::Add;

use ark_bn254::Fr;
use ark_ff::{batch_inversion, Zero};

use super::{KzgError, Scalar};

/// Dense univariate polynomial, coefficients lowest degree first.
///
/// Trailing zero coefficients are allowed; [`Polynomial::degree`] skips them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: &Scalar) -> Scalar {
        let mut acc = Fr::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.0 + c.0;
        }
        Scalar(acc)
    }

    /// Unique polynomial of degree < `values.len()` with `f(i) = values[i]`
    /// on the domain `{0, 1, .., n-1}`.
    ///
    /// Runs in O(n^2): builds the vanishing polynomial `A(X) = prod (X - j)`
    /// once, then adds `values[i] / A'(i) * A(X) / (X - i)` for every nonzero
    /// entry.
    pub fn interpolate(values: &[Scalar]) -> Result<Self, KzgError> {
        let n = values.len();
        if n == 0 {
            return Err(KzgError::EmptyInput);
        }
        let vanishing = vanishing_poly(n);
        let mut weights = barycentric_denominators(n);
        batch_inversion(&mut weights);

        let mut out = vec![Fr::zero(); n];
        let mut quotient = vec![Fr::zero(); n];
        for (i, v) in values.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            // A(X) / (X - i), exact since i is a root.
            let root = Fr::from(i as u64);
            let mut carry = Fr::zero();
            for k in (0..n).rev() {
                carry = vanishing[k + 1] + carry * root;
                quotient[k] = carry;
            }
            let scale = v.0 * weights[i];
            for (o, q) in out.iter_mut().zip(&quotient) {
                *o += scale * q;
            }
        }
        Ok(Polynomial { coeffs: out.into_iter().map(Scalar).collect() })
    }

    /// Synthetic division by `(X - z)`: returns the quotient and `f(z)`.
    pub fn divide_by_linear(&self, z: &Scalar) -> (Polynomial, Scalar) {
        let len = match self.degree() {
            None => return (Polynomial::zero(), Scalar::zero()),
            Some(d) => d + 1,
        };
        let mut quotient = vec![Scalar::zero(); len - 1];
        let mut carry = Fr::zero();
        for k in (0..len).rev() {
            let next = self.coeffs[k].0 + carry * z.0;
            if k == 0 {
                return (Polynomial { coeffs: quotient }, Scalar(next));
            }
            quotient[k - 1] = Scalar(next);
            carry = next;
        }
        unreachable!()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let at = |p: &Polynomial, i: usize| p.coeffs.get(i).copied().unwrap_or_default();
        Polynomial { coeffs: (0..n).map(|i| at(self, i) + at(rhs, i)).collect() }
    }
}

/// Coefficients of `prod_{j<n} (X - j)`, length n + 1.
pub(crate) fn vanishing_poly(n: usize) -> Vec<Fr> {
    let mut a = vec![Fr::zero(); n + 1];
    a[0] = Fr::from(1u64);
    for j in 0..n {
        let root = Fr::from(j as u64);
        for k in (0..=j + 1).rev() {
            let shifted = if k > 0 { a[k - 1] } else { Fr::zero() };
            a[k] = shifted - root * a[k];
        }
    }
    a
}

/// `A'(i) = prod_{j != i} (i - j)` for the integer domain of size n.
pub(crate) fn barycentric_denominators(n: usize) -> Vec<Fr> {
    // A'(i) = i! * (n-1-i)! * (-1)^(n-1-i)
    let mut fact = vec![Fr::from(1u64); n.max(1)];
    for k in 1..n {
        fact[k] = fact[k - 1] * Fr::from(k as u64);
    }
    (0..n)
        .map(|i| {
            let d = fact[i] * fact[n - 1 - i];
            if (n - 1 - i) % 2 == 1 {
                -d
            } else {
                d
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: u64) -> Scalar {
        Scalar::from_u64(v)
    }

    #[test]
    fn constant_vector_gives_constant_poly() {
        let c = s(42);
        let p = Polynomial::interpolate(&[c; 9]).unwrap();
        assert_eq!(p.degree(), Some(0));
        assert_eq!(p.coeffs()[0], c);
    }

    #[test]
    fn line_through_origin() {
        let p = Polynomial::interpolate(&[s(0), s(1)]).unwrap();
        assert_eq!(p.coeffs(), &[s(0), s(1)]);
    }

    #[test]
    fn empty_input_rejected() {
        assert_eq!(Polynomial::interpolate(&[]), Err(KzgError::EmptyInput));
    }

    #[test]
    fn horner() {
        assert_eq!(Polynomial::new(vec![s(5)]).evaluate(&s(99)), s(5));
        assert_eq!(Polynomial::new(vec![s(0), s(1)]).evaluate(&s(7)), s(7));
        // 1 + 2x + 3x^2 at 2
        assert_eq!(Polynomial::new(vec![s(1), s(2), s(3)]).evaluate(&s(2)), s(17));
        assert_eq!(Polynomial::zero().evaluate(&s(3)), s(0));
    }

    #[test]
    fn degree_ignores_trailing_zeros() {
        assert_eq!(Polynomial::new(vec![s(1), s(0), s(0)]).degree(), Some(0));
        assert_eq!(Polynomial::new(vec![s(0), s(0)]).degree(), None);
    }

    #[test]
    fn vanishing_poly_small() {
        // X(X-1)(X-2) = X^3 - 3X^2 + 2X
        let a = vanishing_poly(3);
        assert_eq!(a, vec![Fr::zero(), Fr::from(2u64), -Fr::from(3u64), Fr::from(1u64)]);
        let d = barycentric_denominators(3);
        assert_eq!(d, vec![Fr::from(2u64), -Fr::from(1u64), Fr::from(2u64)]);
    }

    #[test]
    fn synthetic_division() {
        // (x^2 - 1) / (x - 1) = x + 1, remainder 0
        let f = Polynomial::new(vec![-s(1), s(0), s(1)]);
        let (q, r) = f.divide_by_linear(&s(1));
        assert_eq!(q.coeffs(), &[s(1), s(1)]);
        assert_eq!(r, s(0));
        // remainder equals f(z)
        let (_, r) = f.divide_by_linear(&s(3));
        assert_eq!(r, s(8));
        let (q, r) = Polynomial::new(vec![s(9)]).divide_by_linear(&s(4));
        assert!(q.is_zero());
        assert_eq!(r, s(9));
    }
}
