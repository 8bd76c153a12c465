//! Real-valued views of big integers for audit paths.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Natural log of `x`; `-inf` for zero.
pub fn ln(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("fits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `a / b` rounded to the nearest representable double, without going
/// through the (possibly infinite) doubles of `a` and `b`.
pub fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    assert!(!b.is_zero(), "division by zero");
    if a.is_zero() {
        return 0.0;
    }
    // Scale so the integer quotient carries about 64 significant bits.
    let k = 64 + b.bits() as i64 - a.bits() as i64;
    let q = if k >= 0 { (a << k as u64) / b } else { a / (b << (-k) as u64) };
    scale_pow2(q.to_f64().expect("64-bit quotient"), -k)
}

fn scale_pow2(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}
