//! Small internal helpers.

use crate::error::Result;

/// Map `f` over `items`, in parallel when the `parallel` feature is on.
/// Output order always follows input order.
pub(crate) fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Fallible [`par_map`]; the first error in grid order wins.
pub(crate) fn try_par_map<T, R, F>(items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    par_map(items, f).into_iter().collect()
}

/// `n` evenly spaced points on `[a, b]`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Vertex `(x, y)` of the parabola through three points, if it opens upward.
pub(crate) fn parabola_vertex(x: [f64; 3], y: [f64; 3]) -> Option<(f64, f64)> {
    let d = (x[0] - x[1]) * (x[0] - x[2]) * (x[1] - x[2]);
    if d == 0.0 {
        return None;
    }
    let a = (x[2] * (y[1] - y[0]) + x[1] * (y[0] - y[2]) + x[0] * (y[2] - y[1])) / d;
    let b = (x[2] * x[2] * (y[0] - y[1]) + x[1] * x[1] * (y[2] - y[0]) + x[0] * x[0] * (y[1] - y[2])) / d;
    let c = (x[1] * x[2] * (x[1] - x[2]) * y[0]
        + x[2] * x[0] * (x[2] - x[0]) * y[1]
        + x[0] * x[1] * (x[0] - x[1]) * y[2])
        / d;
    if a <= 0.0 {
        return None;
    }
    let xv = -b / (2.0 * a);
    Some((xv, c - b * b / (4.0 * a)))
}

/// Quadratic interpolation through three points evaluated at `t`.
pub(crate) fn quadratic_at(x: [f64; 3], y: [f64; 3], t: f64) -> f64 {
    let l0 = (t - x[1]) * (t - x[2]) / ((x[0] - x[1]) * (x[0] - x[2]));
    let l1 = (t - x[0]) * (t - x[2]) / ((x[1] - x[0]) * (x[1] - x[2]));
    let l2 = (t - x[0]) * (t - x[1]) / ((x[2] - x[0]) * (x[2] - x[1]));
    y[0] * l0 + y[1] * l1 + y[2] * l2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_of_exact_parabola() {
        let f = |x: f64| 2.0 * (x - 0.3).powi(2) + 0.1;
        let (xv, yv) = parabola_vertex([0.0, 0.5, 1.0], [f(0.0), f(0.5), f(1.0)]).unwrap();
        assert!((xv - 0.3).abs() < 1e-12 && (yv - 0.1).abs() < 1e-12);
        assert!(parabola_vertex([0.0, 1.0, 2.0], [0.0, 1.0, 0.0]).is_none());
        assert!((quadratic_at([0.0, 0.5, 1.0], [f(0.0), f(0.5), f(1.0)], 0.77) - f(0.77)).abs() < 1e-12);
    }

    #[test]
    fn linspace_endpoints() {
        let v = linspace(0.1, 0.5, 5);
        assert_eq!(v.len(), 5);
        assert_eq!(v[0], 0.1);
        assert!((v[4] - 0.5).abs() < 1e-15);
    }
}
