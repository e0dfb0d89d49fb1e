// Copyright 2026 The ldp-rl Authors
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

#ifndef LDP_RL_ERRORS_HPP_
#define LDP_RL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ldp_rl {

// Bad shapes, out-of-domain parameters, malformed inputs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An environment whose transition rows do not form distributions.
class EnvironmentInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The server's shifted Gram matrix could not be made positive-definite.
class ServerStateInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration file or override problems. The message carries the
// offending field and, when known, the line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ldp_rl

#endif  // LDP_RL_ERRORS_HPP_
