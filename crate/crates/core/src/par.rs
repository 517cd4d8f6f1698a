//! Order-preserving map with a private [`Engine`] per worker. With the
//! `parallel` feature the work is spread over a rayon pool; without it, or
//! with a single worker, items are processed in order on the calling thread.

use crate::topograph::Engine;

pub(crate) fn map_with_engine<T, R, F>(items: &[T], workers: Option<usize>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&mut Engine, &T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if workers != Some(1) {
        use rayon::prelude::*;
        let run = || items.par_iter().map_init(Engine::new, |e, t| f(e, t)).collect();
        return match workers {
            None => run(),
            Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
                Ok(pool) => pool.install(run),
                Err(_) => sequential(items, &f),
            },
        };
    }
    let _ = workers;
    sequential(items, &f)
}

fn sequential<T, R>(items: &[T], f: &impl Fn(&mut Engine, &T) -> R) -> Vec<R> {
    let mut engine = Engine::new();
    items.iter().map(|t| f(&mut engine, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::fractions_up_to;

    #[test]
    fn order_is_preserved() {
        let fs = fractions_up_to(16);
        let seq = map_with_engine(&fs, Some(1), |e, f| e.markov_number(*f).unwrap());
        let par = map_with_engine(&fs, Some(4), |e, f| e.markov_number(*f).unwrap());
        assert_eq!(seq, par);
    }
}
