// Copyright 2026 The Infolab Authors.
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

#ifndef INFOLAB_PARALLEL_H_
#define INFOLAB_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace infolab {

// Worker count: the INFOLAB_WORKERS environment variable when it holds a
// positive integer, otherwise the hardware concurrency (at least 1).
int WorkerCount();

// Calls body(i) for every i in [0, count) across WorkerCount() threads.
// Each index is visited exactly once; callers write results into slot i so
// the outcome does not depend on scheduling. The first exception thrown by
// any body is rethrown after all workers stop.
void ParallelFor(size_t count, const std::function<void(size_t)>& body);

}  // namespace infolab

#endif  // INFOLAB_PARALLEL_H_
