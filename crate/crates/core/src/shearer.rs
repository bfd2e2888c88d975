//! Shearer's function `f(x) = ((1 - x) + x ln x) / (x - 1)^2`, continuously
//! extended by `f(0) = 1` and `f(1) = 1/2`.
//!
//! The closed form cancels catastrophically near `x = 1`, so within
//! [`SERIES_RADIUS`] of 1 the power series
//! `f(1 + t) = Σ_{j>=0} (-1)^j t^j / ((j + 1)(j + 2))` is used instead.

use serde::Serialize;

use crate::error::{Error, Result};

/// Half-width of the window around `x = 1` evaluated by the series.
pub const SERIES_RADIUS: f64 = 1e-3;

const SERIES_CUTOFF: f64 = 1e-17;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMethod {
    ClosedForm,
    SeriesAt1,
    LimitAt0,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FnEval {
    pub x: f64,
    pub value: f64,
    /// `-inf` at `x = 0`.
    pub derivative: f64,
    pub method: EvalMethod,
}

fn check_domain(x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::DomainError(format!("f(x) needs finite x >= 0, got {x}")));
    }
    Ok(())
}

pub fn eval(x: f64) -> Result<FnEval> {
    check_domain(x)?;
    let method = method_for(x);
    let derivative = if x == 0.0 {
        f64::NEG_INFINITY
    } else {
        f_prime_unchecked(x)
    };
    Ok(FnEval {
        x,
        value: f_unchecked(x),
        derivative,
        method,
    })
}

fn method_for(x: f64) -> EvalMethod {
    if x == 0.0 {
        EvalMethod::LimitAt0
    } else if (x - 1.0).abs() <= SERIES_RADIUS {
        EvalMethod::SeriesAt1
    } else {
        EvalMethod::ClosedForm
    }
}

pub fn shearer_f(x: f64) -> Result<f64> {
    check_domain(x)?;
    Ok(f_unchecked(x))
}

/// `f` without the domain check; callers guarantee `x >= 0` and finite.
pub fn f_unchecked(x: f64) -> f64 {
    debug_assert!(x >= 0.0 && x.is_finite(), "f({x})");
    match method_for(x) {
        EvalMethod::LimitAt0 => 1.0,
        EvalMethod::SeriesAt1 => series_at_one(x - 1.0),
        EvalMethod::ClosedForm => closed_form(x),
    }
}

pub fn closed_form(x: f64) -> f64 {
    let t = x - 1.0;
    let ln_x = if (0.5..2.0).contains(&x) { t.ln_1p() } else { x.ln() };
    (x * ln_x - t) / (t * t)
}

pub fn series_at_one(t: f64) -> f64 {
    let mut sum = 0.0;
    let mut power = 1.0;
    for j in 0..200 {
        let jf = j as f64;
        let term = power / ((jf + 1.0) * (jf + 2.0));
        sum += term;
        if term.abs() < SERIES_CUTOFF {
            break;
        }
        power *= -t;
    }
    sum
}

fn series_prime_at_one(t: f64) -> f64 {
    // d/dt Σ (-1)^j t^j/((j+1)(j+2)) = Σ_{j>=1} (-1)^j j t^(j-1)/((j+1)(j+2))
    let mut sum = 0.0;
    let mut power = 1.0; // (-t)^(j-1)
    for j in 1..200 {
        let jf = j as f64;
        let term = -jf * power / ((jf + 1.0) * (jf + 2.0));
        sum += term;
        if term.abs() < SERIES_CUTOFF {
            break;
        }
        power *= -t;
    }
    sum
}

pub fn shearer_f_prime(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::DomainError(format!("f'(x) needs finite x > 0, got {x}")));
    }
    Ok(f_prime_unchecked(x))
}

/// `f'` from `x(x-1)f' + (x+1)f = 1` away from 1, series near 1.
pub fn f_prime_unchecked(x: f64) -> f64 {
    let t = x - 1.0;
    if t.abs() <= SERIES_RADIUS {
        series_prime_at_one(t)
    } else {
        (1.0 - (x + 1.0) * f_unchecked(x)) / (x * t)
    }
}

/// `f'` computed without the differential equation: the differentiated
/// series near 1, a five-point central difference of `f` for `|x-1| <= 0.1`,
/// and the derivative of the closed form elsewhere.
pub fn f_prime_independent(x: f64) -> f64 {
    let t = x - 1.0;
    if t.abs() <= SERIES_RADIUS {
        return series_prime_at_one(t);
    }
    if t.abs() <= 0.1 {
        let h = 1e-3;
        let f = f_unchecked;
        return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
    }
    x.ln() / (t * t) - 2.0 * closed_form(x) / t
}

/// `x(x-1)f'(x) + (x+1)f(x) - 1`, with `f'` from [`f_prime_independent`].
pub fn ode_residual(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::DomainError(format!("ODE residual needs x > 0, got {x}")));
    }
    let fp = f_prime_independent(x);
    Ok(x * (x - 1.0) * fp + (x + 1.0) * f_unchecked(x) - 1.0)
}

/// `1 + x(1-x)f'(x) - (1+x)f(x)`, the combination that vanishes in the
/// single-step mixing bound. Zero at `x = 0` by continuity.
pub fn ode_cancellation(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    1.0 + x * (1.0 - x) * f_prime_independent(x) - (1.0 + x) * f_unchecked(x)
}
