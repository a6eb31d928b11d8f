use crate::Real;

fn h<R: Real>(s: R) -> R {
    if s <= R::zero() {
        R::zero()
    } else {
        (-s.recip()).exp()
    }
}

/// `0` for `s ≤ 0`, `1` for `s ≥ 1`, smooth and strictly increasing between,
/// built from `exp(-1/s)`.
pub fn smooth_step<R: Real>(s: R) -> R {
    if s <= R::zero() {
        return R::zero();
    }
    if s >= R::one() {
        return R::one();
    }
    let a = h(s);
    a / (a + h(R::one() - s))
}

/// Ramp that is `0` for `t ≤ a` and `1` for `t ≥ b`.
pub fn bump_mu<R: Real>(t: R, window: (R, R)) -> R {
    let (a, b) = window;
    smooth_step((t - a) / (b - a))
}

/// Non-increasing ramp on `[0, ½]`: `1` for `y ≤ c`, `0` for `y ≥ d`.
pub fn phi<R: Real>(y: R, window: (R, R)) -> R {
    R::one() - bump_mu(y, window)
}
