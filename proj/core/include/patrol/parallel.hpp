// Copyright 2026 The patrol-eq Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PATROL_PARALLEL_HPP_
#define PATROL_PARALLEL_HPP_

#include <cstdint>
#include <functional>

namespace patrol {

// Runs body(k) for k in [0, count) on up to `jobs` threads (<= 0: hardware
// concurrency). The first exception thrown by any task is rethrown.
void ParallelFor(int count, int jobs, const std::function<void(int)>& body);

int DefaultJobs();

// splitmix64 over (seed, index); per-task seeds independent of scheduling.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index);

}  // namespace patrol

#endif  // PATROL_PARALLEL_HPP_
