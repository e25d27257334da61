//! Golden-section search for the maximum of a unimodal function.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximum located by [`maximize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Shrinks `[lo, hi]` around the maximum of `f` until the bracket is no
/// wider than `tol`. `f` is assumed unimodal on the bracket.
///
/// Returns the best point evaluated, which may be an end of the final
/// bracket.
pub fn maximize<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Extremum
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    while b - a > tol {
        iterations += 1;
        // ties shrink toward the lower end
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if iterations > 200 {
            break;
        }
    }
    if fc >= fd {
        Extremum { x: c, value: fc, iterations }
    } else {
        Extremum { x: d, value: fd, iterations }
    }
}
