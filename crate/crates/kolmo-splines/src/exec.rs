//! Data-parallel execution helpers. With the `parallel` feature (default)
//! the indexed maps run on rayon; without it they fall back to plain
//! iterators. The `_seq` variants are always sequential, so benchmarks can
//! compare both paths in one build.

/// Maps `f` over `0..n`, preserving index order in the output.
#[cfg(feature = "parallel")]
pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_collect_seq(n, f)
}

/// Sequential reference implementation of [`map_collect`].
pub fn map_collect_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

fn better(a: (usize, f64), b: (usize, f64)) -> (usize, f64) {
    // NaN counts as -inf; exact ties resolve to the smaller index so the
    // reduction is associative and deterministic under any split.
    let av = if a.1.is_nan() { f64::NEG_INFINITY } else { a.1 };
    let bv = if b.1.is_nan() { f64::NEG_INFINITY } else { b.1 };
    if av > bv || (av == bv && a.0 < b.0) {
        a
    } else {
        b
    }
}

/// Index and value of the maximum of `f` over `0..n`; ties take the smaller
/// index. Returns `None` for `n == 0`.
#[cfg(feature = "parallel")]
pub fn argmax_f64<F>(n: usize, f: F) -> Option<(usize, f64)>
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    use rayon::prelude::*;
    (0..n)
        .into_par_iter()
        .map(|i| (i, f(i)))
        .reduce_with(better)
}

#[cfg(not(feature = "parallel"))]
pub fn argmax_f64<F>(n: usize, f: F) -> Option<(usize, f64)>
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    argmax_f64_seq(n, f)
}

/// Sequential reference implementation of [`argmax_f64`].
pub fn argmax_f64_seq<F>(n: usize, f: F) -> Option<(usize, f64)>
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    (0..n).map(|i| (i, f(i))).reduce(better)
}
