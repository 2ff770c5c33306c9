//! Order-preserving parallel map used by the scans and the suite runner.

use rayon::prelude::*;

/// Maps `f` over `items` on `jobs` worker threads; results keep input order,
/// so output is identical for every `jobs`.
pub fn map<T, R, F>(jobs: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..500).collect();
        let seq = super::map(1, &xs, |x| x * x);
        let par = super::map(4, &xs, |x| x * x);
        assert_eq!(seq, par);
    }
}
