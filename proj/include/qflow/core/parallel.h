// Copyright 2026 The qflow Authors
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

#pragma once

#include <cstddef>
#include <functional>

namespace qflow {

/// Caps the number of worker threads used by every parallel kernel.
/// A value of 0 restores the runtime default.
void set_num_threads(int threads);
int num_threads();
int hardware_threads();

/// Runs body(i) for i in [0, count). Iterations must write disjoint data.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Sum of term(i) for i in [0, count) evaluated as a fixed-shape pairwise
/// tree over fixed-size chunks, so the result does not depend on how many
/// threads took part.
double deterministic_sum(std::size_t count, const std::function<double(std::size_t)>& term);

}  // namespace qflow
