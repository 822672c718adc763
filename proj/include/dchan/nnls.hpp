// Copyright 2026 The dchan Authors
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

#pragma once

#include "dchan/types.hpp"

namespace dchan {

struct NnlsResult {
  RealVector x;
  double residual;  // ‖A x − b‖₂
  int iterations;
};

/// min ‖A x − b‖₂ subject to x ≥ 0 (Lawson–Hanson active set).
NnlsResult nnls(const RealMatrix& a, const RealVector& b, int max_iterations = 0);

}  // namespace dchan
