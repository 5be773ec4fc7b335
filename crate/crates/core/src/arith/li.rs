use crate::error::{Error, Result};

/// `li(2)`, the offset between the principal-value integral and `Li`.
pub const LI_2: f64 = 1.045_163_780_117_493;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Principal-value `li(x)` for `x > 1` by Ramanujan's series.
pub fn li_offset(x: f64) -> f64 {
    let l = x.ln();
    let mut term = l; // (-1)^(n-1) l^n / (n! 2^(n-1)) at n = 1
    let mut inner = 1.0; // sum_{k <= (n-1)/2} 1/(2k+1)
    let mut sum = term * inner;
    let mut n = 1u32;
    loop {
        n += 1;
        term *= -l / (2.0 * n as f64);
        if n % 2 == 1 {
            inner += 1.0 / n as f64;
        }
        let contrib = term * inner;
        sum += contrib;
        if n as f64 > l && contrib.abs() <= 1e-17 * sum.abs() {
            break;
        }
        if n > 10_000 {
            break;
        }
    }
    EULER_GAMMA + l.ln() + x.sqrt() * sum
}

/// `Li(x) = integral from 2 to x of dt / log t`, relative accuracy about `1e-12`
/// in the tested range `2 <= x <= 1e15`.
pub fn log_integral(x: f64) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(Error::InvalidInput(format!("Li(x) needs x >= 2, got {x}")));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    Ok(li_offset(x) - LI_2)
}
