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

#pragma once

namespace qchaos {

/// Caps OpenMP parallelism for all kernels. n <= 0 restores the default,
/// which honours QCHAOS_THREADS when set.
void set_thread_count(int n);

/// Threads the kernels will use.
int thread_count();

/// Parses QCHAOS_THREADS; 0 when unset or invalid.
int threads_from_environment();

}  // namespace qchaos
