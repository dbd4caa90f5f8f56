// Copyright 2026 The uctrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UCTRL_PARALLEL_HPP
#define UCTRL_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace uctrl {

/// Worker count: UCTRL_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls body(i) for i in [0, n) across up to worker_count() threads.
/// Exceptions are rethrown on the calling thread (the lowest index wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

}  // namespace uctrl

#endif  // UCTRL_PARALLEL_HPP
