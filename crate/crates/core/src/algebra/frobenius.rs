use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_traits::Zero;

/// An element `c0 + c1*X + c2*X^2` of the graded Frobenius algebra
/// `A = Z[X]/X^3`, with `deg X^a = 2a - 2`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FrobeniusElement {
    pub coeffs: [BigInt; 3],
}

/// A formal sum of pure tensors `x (x) y` in `A (x) A`, stored on the basis
/// `X^i (x) X^j` as a 3x3 coefficient table.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct FrobeniusTensor {
    pub coeffs: [[BigInt; 3]; 3],
}

impl FrobeniusElement {
    pub fn new(c0: impl Into<BigInt>, c1: impl Into<BigInt>, c2: impl Into<BigInt>) -> Self {
        Self {
            coeffs: [c0.into(), c1.into(), c2.into()],
        }
    }

    /// The basis monomial `X^a`, `a < 3`.
    pub fn x_pow(a: usize) -> Self {
        let mut e = Self::default();
        if a < 3 {
            e.coeffs[a] = BigInt::from(1);
        }
        e
    }

    pub fn one() -> Self {
        Self::x_pow(0)
    }

    pub fn x() -> Self {
        Self::x_pow(1)
    }

    /// Degree of the basis monomial `X^a`.
    pub fn basis_degree(a: usize) -> i64 {
        2 * a as i64 - 2
    }

    /// The trace `eps(1) = eps(X) = 0`, `eps(X^2) = -1`.
    pub fn trace(&self) -> BigInt {
        -self.coeffs[2].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Comultiplication, the dual of multiplication under the trace form:
    /// `D(1) = -1(x)X^2 - X(x)X - X^2(x)1`, `D(X) = -X(x)X^2 - X^2(x)X`,
    /// `D(X^2) = -X^2(x)X^2`.
    pub fn comultiply(&self) -> FrobeniusTensor {
        let mut t = FrobeniusTensor::default();
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..3 {
                for j in 0..3 {
                    if i + j == 2 + a {
                        t.coeffs[i][j] -= c;
                    }
                }
            }
        }
        t
    }
}

impl FrobeniusTensor {
    /// `sum c_ij * (X^i (x) X^j)` collapsed by multiplication.
    pub fn multiply_out(&self) -> FrobeniusElement {
        let mut out = FrobeniusElement::default();
        for i in 0..3 {
            for j in 0..3 {
                if i + j < 3 {
                    out.coeffs[i + j] += &self.coeffs[i][j];
                }
            }
        }
        out
    }

    /// Nonzero terms `(c, i, j)` meaning `c * X^i (x) X^j`.
    pub fn terms(&self) -> Vec<(BigInt, usize, usize)> {
        let mut v = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if !self.coeffs[i][j].is_zero() {
                    v.push((self.coeffs[i][j].clone(), i, j));
                }
            }
        }
        v
    }
}

impl Mul<&FrobeniusElement> for &FrobeniusElement {
    type Output = FrobeniusElement;
    fn mul(self, rhs: &FrobeniusElement) -> FrobeniusElement {
        let mut out = FrobeniusElement::default();
        for i in 0..3 {
            for j in 0..3 - i {
                out.coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        out
    }
}

impl Add<&FrobeniusElement> for &FrobeniusElement {
    type Output = FrobeniusElement;
    fn add(self, rhs: &FrobeniusElement) -> FrobeniusElement {
        let mut out = self.clone();
        for i in 0..3 {
            out.coeffs[i] += &rhs.coeffs[i];
        }
        out
    }
}

impl Neg for &FrobeniusElement {
    type Output = FrobeniusElement;
    fn neg(self) -> FrobeniusElement {
        FrobeniusElement {
            coeffs: [-&self.coeffs[0], -&self.coeffs[1], -&self.coeffs[2]],
        }
    }
}

impl fmt::Debug for FrobeniusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coeffs;
        write!(f, "{a} + {b}*X + {c}*X^2")
    }
}
