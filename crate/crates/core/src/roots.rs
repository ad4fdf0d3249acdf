//! Scalar root finding: uniform scan for brackets, bisection to a fixed
//! parameter width, then an optional Newton polish.

/// Default number of scan samples per curve period.
pub const DEFAULT_SCAN_SAMPLES: usize = 4096;
/// Default bisection width in parameter.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

/// A sign change of `f` between `lo` and `hi`.
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

/// Uniformly sample `f` on `[a, b]` with `n` intervals and return every
/// interval on which it changes sign. An exact zero at a sample is reported
/// as a bracket of zero width.
pub fn scan_brackets<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> Vec<Bracket> {
    let xs: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    brackets_from_samples(&xs, &ys)
}

/// Brackets from already computed samples `(xs[i], ys[i])`.
pub fn brackets_from_samples(xs: &[f64], ys: &[f64]) -> Vec<Bracket> {
    let mut out = Vec::new();
    for i in 0..xs.len().saturating_sub(1) {
        let (y0, y1) = (ys[i], ys[i + 1]);
        if !(y0.is_finite() && y1.is_finite()) {
            continue;
        }
        if y0 == 0.0 {
            // count each exact zero once, on its left end
            if i == 0 || ys[i - 1] != 0.0 {
                out.push(Bracket { lo: xs[i], hi: xs[i], f_lo: 0.0, f_hi: 0.0 });
            }
            continue;
        }
        if y0 * y1 < 0.0 {
            out.push(Bracket { lo: xs[i], hi: xs[i + 1], f_lo: y0, f_hi: y1 });
        }
    }
    out
}

/// Bisection on a sign-change bracket until its width is at most `tol`.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, br: Bracket, tol: f64) -> f64 {
    let Bracket { mut lo, mut hi, mut f_lo, .. } = br;
    if lo == hi {
        return lo;
    }
    for _ in 0..200 {
        if (hi - lo).abs() <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// One Newton step from `x`, kept only if it stays inside `[lo, hi]` and
/// reduces `|f|`.
pub fn newton_polish<F, D>(f: F, df: D, x: f64, lo: f64, hi: f64) -> f64
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let fx = f(x);
    let d = df(x);
    if d == 0.0 || !d.is_finite() {
        return x;
    }
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let y = x - fx / d;
    if y < lo || y > hi || !y.is_finite() {
        return x;
    }
    if f(y).abs() < fx.abs() {
        y
    } else {
        x
    }
}

/// Every simple root of `f` on `[a, b]` at scan resolution `n`.
pub fn find_roots<F, D>(f: F, df: Option<D>, a: f64, b: f64, n: usize, tol: f64) -> Vec<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    scan_brackets(&f, a, b, n)
        .into_iter()
        .map(|br| {
            let x = bisect(&f, br, tol);
            match &df {
                Some(d) => newton_polish(&f, d, x, br.lo, br.hi),
                None => x,
            }
        })
        .collect()
}

/// Sample indices `i` (interior) where `|ys[i]|` is a local minimum and
/// `ys[i-1], ys[i], ys[i+1]` share a sign: candidates for touching zeros.
pub fn touching_candidates(ys: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 1..ys.len().saturating_sub(1) {
        let (a, b, c) = (ys[i - 1], ys[i], ys[i + 1]);
        if a * b > 0.0 && b * c > 0.0 && b.abs() <= a.abs() && b.abs() <= c.abs() {
            out.push(i);
        }
    }
    out
}
