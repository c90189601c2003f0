//! Sign changes of a scalar function located by a grid scan and bisection.

use rayon::prelude::*;

use crate::error::Result;

/// Every root of `f` on `[lo, hi]`: `f` is sampled on `steps + 1` evenly
/// spaced points, and each sign change is bisected until the bracket is
/// narrower than `resolution`.
pub fn find_crossings<F>(f: F, lo: f64, hi: f64, steps: usize, resolution: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let grid = crate::sweep::linspace(lo, hi, steps + 1);
    let values = grid.par_iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
    let mut roots = Vec::new();
    for k in 0..steps {
        let (fa, fb) = (values[k], values[k + 1]);
        if fa == 0.0 {
            roots.push(grid[k]);
            continue;
        }
        if fa.signum() == fb.signum() || fb == 0.0 {
            continue;
        }
        let (mut a, mut b, mut sa) = (grid[k], grid[k + 1], fa.signum());
        while b - a > resolution {
            let m = 0.5 * (a + b);
            let fm = f(m)?;
            if fm == 0.0 {
                a = m;
                b = m;
            } else if fm.signum() == sa {
                a = m;
                sa = fm.signum();
            } else {
                b = m;
            }
        }
        roots.push(0.5 * (a + b));
    }
    if values[steps] == 0.0 {
        roots.push(grid[steps]);
    }
    Ok(roots)
}

/// First root of `f` on `[lo, hi]`, if any.
pub fn first_crossing<F>(f: F, lo: f64, hi: f64, steps: usize, resolution: f64) -> Result<Option<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    Ok(find_crossings(f, lo, hi, steps, resolution)?.first().copied())
}
