//! Truncated Taylor polynomials for exact higher-order derivatives.

use std::ops::{Add, Mul, Neg, Sub};

/// `Σ_k c_k (x - x0)^k` truncated at a fixed order; `c_k = f^(k)(x0) / k!`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    coeffs: Vec<f64>,
}

impl Jet {
    pub fn constant(value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Self { coeffs }
    }

    /// The independent variable expanded around `x0`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut j = Self::constant(x0, order);
        if order > 0 {
            j.coeffs[1] = 1.0;
        }
        j
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs[k]
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `f^(k)(x0)`.
    pub fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.coeffs[k] * fact
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add_const(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += s;
        out
    }

    pub fn recip(&self) -> Self {
        let a = &self.coeffs;
        let inv0 = 1.0 / a[0];
        let mut b = vec![0.0; a.len()];
        b[0] = inv0;
        for k in 1..a.len() {
            let s: f64 = (1..=k).map(|i| a[i] * b[k - i]).sum();
            b[k] = -s * inv0;
        }
        Self { coeffs: b }
    }

    pub fn exp(&self) -> Self {
        let a = &self.coeffs;
        let mut e = vec![0.0; a.len()];
        e[0] = a[0].exp();
        for k in 1..a.len() {
            let s: f64 = (1..=k).map(|i| i as f64 * a[i] * e[k - i]).sum();
            e[k] = s / k as f64;
        }
        Self { coeffs: e }
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Jet { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn derivatives_of_reciprocal() {
        // 1/(1+x) at x = 0.5: f^(k) = (-1)^k k! / 1.5^(k+1)
        let x = Jet::variable(0.5, 5);
        let f = x.add_const(1.0).recip();
        for k in 0..=5 {
            let fact: f64 = (1..=k).map(|i| i as f64).product();
            let expected = if k % 2 == 0 { 1.0 } else { -1.0 } * fact / 1.5f64.powi(k as i32 + 1);
            assert_relative_eq!(f.derivative(k), expected, max_relative = 1e-13);
        }
    }

    #[test]
    fn derivatives_of_exp_composite() {
        // exp(x²) at x = 0.3: f' = 2x e, f'' = (2 + 4x²) e, f''' = (12x + 8x³) e
        let x = Jet::variable(0.3, 3);
        let f = (&x * &x).exp();
        let e = 0.09f64.exp();
        assert_relative_eq!(f.derivative(1), 0.6 * e, max_relative = 1e-14);
        assert_relative_eq!(f.derivative(2), (2.0 + 4.0 * 0.09) * e, max_relative = 1e-14);
        assert_relative_eq!(f.derivative(3), (3.6 + 8.0 * 0.027) * e, max_relative = 1e-14);
    }

    #[test]
    fn arithmetic_identities() {
        let x = Jet::variable(0.7, 4);
        let y = &(&x * &x) - &x;
        assert_relative_eq!(y.derivative(2), 2.0);
        assert_eq!(y.derivative(3), 0.0);
        let z = &(-&x) + &x;
        assert!(z.coeffs.iter().all(|c| *c == 0.0));
        assert_eq!(x.order(), 4);
    }
}
