use crate::error::{check_non_negative, Error, Result};
use crate::special::ln_factorial;

/// Tail mass allowed when truncating the two-mode state.
pub const TWO_MODE_TAIL: f64 = 1e-12;

/// Real amplitudes `c_n` of `|m+n, n⟩` in the m-subtracted twin beam:
/// `c_n = (1+λ)^{-(m+1)/2} √((m+n)!/(m! n!)) (λ/(1+λ))^{n/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeAmplitudes {
    pub m: usize,
    pub n_max: usize,
    pub amps: Vec<f64>,
}

impl TwoModeAmplitudes {
    pub fn norm_squared(&self) -> f64 {
        self.amps.iter().map(|c| c * c).sum()
    }

    pub fn tail(&self) -> f64 {
        (1.0 - self.norm_squared()).max(0.0)
    }

    /// Signal photon-number distribution after tracing out the idler:
    /// `P(m + n) = c_n²`.
    pub fn trace_idler(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.m + self.amps.len()];
        for (n, c) in self.amps.iter().enumerate() {
            p[self.m + n] = c * c;
        }
        p
    }
}

/// Amplitudes for `n = 0..=n_max`, factorial ratios in log space. Fails when
/// the discarded tail exceeds [`TWO_MODE_TAIL`].
pub fn build_two_mode(m: usize, lambda: f64, n_max: usize) -> Result<TwoModeAmplitudes> {
    check_non_negative("lambda", lambda)?;
    let mut amps = vec![0.0; n_max + 1];
    if lambda == 0.0 {
        amps[0] = 1.0;
    } else {
        let ln_1p = lambda.ln_1p();
        let ln_x = lambda.ln() - ln_1p;
        for (n, c) in amps.iter_mut().enumerate() {
            let ln_c = -0.5 * (m as f64 + 1.0) * ln_1p
                + 0.5 * (ln_factorial(m + n) - ln_factorial(m) - ln_factorial(n))
                + 0.5 * n as f64 * ln_x;
            *c = ln_c.exp();
        }
    }
    let state = TwoModeAmplitudes { m, n_max, amps };
    let tail = 1.0 - state.norm_squared();
    if tail >= TWO_MODE_TAIL {
        return Err(Error::Truncation {
            achieved: tail,
            tol: TWO_MODE_TAIL,
            dim: n_max + 1,
        });
    }
    Ok(state)
}

/// Doubles `n_max` until the tail condition is met.
pub fn build_two_mode_auto(m: usize, lambda: f64) -> Result<TwoModeAmplitudes> {
    let mut n_max = 16;
    loop {
        match build_two_mode(m, lambda, n_max) {
            Err(Error::Truncation { .. }) if n_max < 1 << 16 => n_max *= 2,
            other => return other,
        }
    }
}

/// `1/√⟨Ψ|a_i†^m a_i^m|Ψ⟩` for the twin beam `|Ψ⟩ = Σ_n c_n |n, n⟩`, by
/// summing the idler factorial moment term by term.
pub fn subtraction_norm_brute_force(m: usize, lambda: f64) -> Result<f64> {
    if m == 0 {
        return Ok(1.0);
    }
    if !(lambda > 0.0) {
        return Err(Error::Degenerate("no idler photons to subtract"));
    }
    let x = lambda / (1.0 + lambda);
    let mut moment = 0.0;
    let mut weight = 1.0 / (1.0 + lambda);
    let mut n = 0usize;
    loop {
        if n >= m {
            let falling: f64 = (0..m).map(|i| (n - i) as f64).product();
            moment += weight * falling;
            if weight * falling < 1e-18 * moment && n > 10 * m {
                break;
            }
        }
        weight *= x;
        n += 1;
        if n > 1_000_000 {
            return Err(Error::Truncation {
                achieved: weight,
                tol: 1e-18,
                dim: n,
            });
        }
    }
    Ok(1.0 / moment.sqrt())
}
