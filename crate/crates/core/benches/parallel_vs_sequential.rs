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

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use distinguish_core::ensembles::{make_symmetric, realize};
use distinguish_core::oracles::hyp_random_search_with;
use distinguish_core::ordering::{count_two_state_reversals_with, figure1_grid_with};
use distinguish_core::verify::{srm_suite, usd_suite};
use distinguish_core::Backend;

fn backends() -> Vec<(&'static str, Backend)> {
    vec![
        ("sequential", Backend::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Backend::Parallel),
    ]
}

fn ratio_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("ratio_grid");
    for steps in [50usize, 200] {
        for (name, backend) in backends() {
            group.bench_with_input(BenchmarkId::new(name, steps), &steps, |b, &s| {
                b.iter(|| figure1_grid_with(3, s, s, backend).unwrap())
            });
        }
    }
    group.finish();
}

fn random_povm_search(c: &mut Criterion) {
    let e = realize(&make_symmetric(3, &[0.4, 0.5, 0.8]).unwrap());
    let mut group = c.benchmark_group("hyp_random_search");
    for (name, backend) in backends() {
        group.bench_function(name, |b| {
            b.iter(|| hyp_random_search_with(black_box(&e), 2000, 0, backend))
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for (name, backend) in backends() {
        group.bench_function(BenchmarkId::new("srm", name), |b| {
            b.iter(|| srm_suite(0, 100, backend))
        });
        group.bench_function(BenchmarkId::new("usd", name), |b| {
            b.iter(|| usd_suite(0, 50, 25, backend))
        });
        group.bench_function(BenchmarkId::new("two_state_scan", name), |b| {
            b.iter(|| count_two_state_reversals_with(200, backend).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, ratio_grid, random_povm_search, suites);
criterion_main!(benches);
