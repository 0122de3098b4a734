// Copyright 2026 The paulipath Authors
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

#include <stdexcept>
#include <string>

namespace paulipath {

/// Malformed or inconsistent input (bad files, invalid circuits, bad options).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands over different qubit counts.
class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A configured resource cap (paths, nodes, entries) was hit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The dense reference simulator was asked for more qubits than its cap.
class OracleCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace paulipath
