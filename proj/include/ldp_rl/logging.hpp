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

#ifndef LDP_RL_LOGGING_HPP_
#define LDP_RL_LOGGING_HPP_

namespace ldp_rl {

// Sets the spdlog level from LDP_RL_LOG (trace, debug, info, warn, error,
// critical, off). Defaults to warn. Logs go to stderr.
void init_logging();

}  // namespace ldp_rl

#endif  // LDP_RL_LOGGING_HPP_
