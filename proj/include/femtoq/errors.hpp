// Copyright 2026 The femtoq Authors.
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

#ifndef FEMTOQ_ERRORS_HPP_
#define FEMTOQ_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace femtoq {

/// Bad or incomplete configuration: missing gains, unknown keys, values out of range.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The scenario asked for something the network cannot do (inactive serving link, ...).
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// MAC rule broken: mismatched Q-row lengths, slot misuse.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No free acquisition slot left for a joining FBS.
class AdmissionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace femtoq

#endif  // FEMTOQ_ERRORS_HPP_
