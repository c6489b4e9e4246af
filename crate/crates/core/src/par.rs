// Copyright 2026 The distinguish Authors
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

//! Index-parallel map helpers. With the `parallel` feature (default) the work
//! is spread over the rayon pool; without it everything runs in order on the
//! calling thread. Results are always returned in index order, so reductions
//! over them are independent of scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Where batch evaluations run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Backend {
    /// `f(0), f(1), ..., f(n-1)` in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Backend::Sequential => (0..n).map(f).collect(),
            #[cfg(feature = "parallel")]
            Backend::Parallel => (0..n).into_par_iter().map(f).collect(),
        }
    }

    pub fn all<F>(self, n: usize, f: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            Backend::Sequential => (0..n).all(f),
            #[cfg(feature = "parallel")]
            Backend::Parallel => (0..n).into_par_iter().all(f),
        }
    }

    pub fn count<F>(self, n: usize, f: F) -> usize
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            Backend::Sequential => (0..n).filter(|&i| f(i)).count(),
            #[cfg(feature = "parallel")]
            Backend::Parallel => (0..n).into_par_iter().filter(|&i| f(i)).count(),
        }
    }
}
