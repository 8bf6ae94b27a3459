//! Hurwitz zeta function for real `s > 1` and `q > 0`.
//!
//! ζ(s, q) = Σ_{n≥0} (n + q)^{-s} is evaluated by Euler–Maclaurin summation:
//! a short direct sum brings the shifted argument `a = q + N` up to
//! `max(10, s)`, after which the tail is replaced by its integral, the
//! half-term at `a` and Bernoulli corrections
//!
//! ```text
//! B_{2j} / (2j)! · s (s+1) ··· (s+2j-2) · a^{-s-2j+1}
//! ```
//!
//! For real `s` the remainder after `j` corrections is bounded by the first
//! omitted correction, which gives the reported error bound.

use crate::error::{Error, Result};

/// Relative accuracy every [`hurwitz_zeta`] result is guaranteed to meet.
pub const ZETA_REL_TOLERANCE: f64 = 1e-12;

/// Bernoulli numbers B_2, B_4, …, B_30.
const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// Value of ζ(s, q) together with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaResult {
    pub value: f64,
    pub abs_error_bound: f64,
}

/// Evaluates the Hurwitz zeta function ζ(`alpha`, `q`).
///
/// Fails with [`Error::Domain`] unless `alpha > 1` and `q > 0` (both finite).
pub fn hurwitz_zeta(alpha: f64, q: f64) -> Result<ZetaResult> {
    hurwitz_zeta_scaled(alpha, q, 1.0)
}

/// Evaluates `scale^alpha · ζ(alpha, q)`, i.e. Σ ((n + q) / scale)^{-alpha}.
///
/// Ratios of zeta values sharing a scale are unaffected, while steep
/// exponents no longer underflow: with `scale = q` the result is at least 1.
pub fn hurwitz_zeta_scaled(alpha: f64, q: f64, scale: f64) -> Result<ZetaResult> {
    if !(alpha.is_finite() && alpha > 1.0) {
        return Err(Error::Domain(format!(
            "hurwitz zeta requires alpha > 1, got {alpha}"
        )));
    }
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::Domain(format!(
            "hurwitz zeta requires q > 0, got {q}"
        )));
    }
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::Domain(format!("scale must be > 0, got {scale}")));
    }
    Ok(zeta_scaled(alpha, q, scale.ln()))
}

fn zeta_scaled(s: f64, q: f64, log_scale: f64) -> ZetaResult {
    let mut shift_target = s.max(10.0);
    let mut result = euler_maclaurin(s, q, log_scale, shift_target);
    // A larger shift always converges; the cap only guards against values
    // that underflow entirely.
    for _ in 0..16 {
        if result.abs_error_bound <= ZETA_REL_TOLERANCE * result.value {
            break;
        }
        shift_target *= 2.0;
        result = euler_maclaurin(s, q, log_scale, shift_target);
    }
    result
}

fn euler_maclaurin(s: f64, q: f64, log_scale: f64, shift_target: f64) -> ZetaResult {
    // (x / scale)^{-s}
    let scaled_pow = |x: f64| (-s * (x.ln() - log_scale)).exp();

    let mut direct = 0.0;
    let mut n = 0u64;
    let mut next = scaled_pow(q);
    while q + (n as f64) < shift_target {
        direct += next;
        n += 1;
        let a = q + n as f64;
        next = scaled_pow(a);
        // Σ_{t>=a} t^{-s} <= a^{-s} + a^{1-s}/(s-1): stop once that is negligible.
        let rest = next * (1.0 + a / (s - 1.0));
        if rest <= 1e-18 * direct {
            return ZetaResult {
                value: direct,
                abs_error_bound: rest + (n as f64 + 1.0) * f64::EPSILON * direct,
            };
        }
    }

    let a = q + n as f64;
    let a_pow = next; // (a / scale)^{-s}
    let inv_a2 = 1.0 / (a * a);

    let mut sum = direct + a * a_pow / (s - 1.0) + 0.5 * a_pow;

    // term_j = B_{2j}/(2j)! · s (s+1) ··· (s+2j-2) · a^{-s-2j+1}
    let mut poch = s;
    let mut power = a_pow / a;
    let mut factorial = 2.0;
    let mut bound = 0.0;
    let mut used = 0usize;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = b / factorial * poch * power;
        if term.abs() <= f64::EPSILON * 0.01 * sum {
            bound = term.abs();
            break;
        }
        sum += term;
        used = j + 1;
        // Out of tabulated corrections: bound by the last one used.
        bound = term.abs();
        let k = 2.0 * (j as f64 + 1.0);
        poch *= (s + k - 1.0) * (s + k);
        power *= inv_a2;
        factorial *= (k + 1.0) * (k + 2.0);
    }

    let rounding = (n as f64 + used as f64 + 3.0) * f64::EPSILON * sum;
    ZetaResult {
        value: sum,
        abs_error_bound: bound + rounding,
    }
}

/// Memo of `xmin^α ζ(α, ·)` for a fixed (α, xmin), local to one distance
/// evaluation.
///
/// Lookups are keyed by `q`; evaluations walk the tail in ascending order, so
/// remembering the most recent arguments covers every repeat.
pub(crate) struct ZetaMemo {
    alpha: f64,
    log_scale: f64,
    recent: [(u64, f64); 2],
    filled: usize,
    pub(crate) calls: u64,
}

impl ZetaMemo {
    pub(crate) fn new(alpha: f64, xmin: u64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 1.0) {
            return Err(Error::Domain(format!("alpha must be > 1, got {alpha}")));
        }
        if xmin == 0 {
            return Err(Error::Domain("xmin must be >= 1".into()));
        }
        Ok(ZetaMemo {
            alpha,
            log_scale: (xmin as f64).ln(),
            recent: [(0, 0.0); 2],
            filled: 0,
            calls: 0,
        })
    }

    pub(crate) fn get(&mut self, q: u64) -> Result<f64> {
        for &(key, value) in &self.recent[..self.filled] {
            if key == q {
                return Ok(value);
            }
        }
        let value = zeta_scaled(self.alpha, q as f64, self.log_scale).value;
        self.calls += 1;
        self.recent[1] = self.recent[0];
        self.recent[0] = (q, value);
        self.filled = (self.filled + 1).min(2);
        Ok(value)
    }
}
