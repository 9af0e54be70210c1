// Copyright 2026 The mcdec Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Data-parallel helpers. With the `parallel` feature off every mode runs
//! sequentially; results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

impl ExecMode {
    /// Whether this build can actually run work in parallel.
    pub fn available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Applies `f` to each chunk of `data` (chunk index, chunk).
pub fn for_each_chunk<T, F>(mode: ExecMode, data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Send + Sync,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => data
            .par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(i, c)| f(i, c)),
        _ => data.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c)),
    }
}

/// Order-preserving map.
pub fn map_ordered<I, T, F>(mode: ExecMode, items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Send + Sync,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => items.into_par_iter().map(f).collect(),
        _ => items.into_iter().map(f).collect(),
    }
}
