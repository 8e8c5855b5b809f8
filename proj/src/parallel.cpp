// Copyright 2026 The qchaos Authors
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

#include "qchaos/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace qchaos {

int threads_from_environment() {
  const char *v = std::getenv("QCHAOS_THREADS");
  if (v == nullptr) return 0;
  try {
    const int n = std::stoi(v);
    return n > 0 ? n : 0;
  } catch (...) {
    return 0;
  }
}

void set_thread_count(int n) {
  if (n <= 0) n = threads_from_environment();
  if (n <= 0) n = omp_get_num_procs();
  omp_set_num_threads(n);
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace qchaos
