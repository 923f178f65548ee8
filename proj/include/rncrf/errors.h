// Copyright 2026 The RNCRF Authors.
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

#ifndef RNCRF_ERRORS_H_
#define RNCRF_ERRORS_H_

#include <stdexcept>
#include <string>

namespace rncrf {

// Malformed or inconsistent input data: corpus files, embeddings, lexicons,
// checkpoints, dimension mismatches between a model and its inputs.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Training or inference produced a non-finite value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad command line or configuration values.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rncrf

#endif  // RNCRF_ERRORS_H_
