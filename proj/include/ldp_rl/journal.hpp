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

#ifndef LDP_RL_JOURNAL_HPP_
#define LDP_RL_JOURNAL_HPP_

// Newline-delimited payload journal for replaying a server run.
//
// One line per payload:
//   <k> <H> <d> then, for h = 0..H-1, the d*d Gram entries in row-major
//   order followed by the d target entries.
// Fields are space-separated; reals use 17 significant digits, so a
// journal replays bit-exactly.

#include <iosfwd>
#include <vector>

#include "ldp_rl/protocol.hpp"

namespace ldp_rl {

struct JournalEntry {
  int k = 0;
  PrivatizedUpdate payload;
};

void write_journal_entry(std::ostream& out, int k, const PrivatizedUpdate& payload);

// Throws InvalidArgument with the offending line number on malformed input.
std::vector<JournalEntry> read_journal(std::istream& in);

}  // namespace ldp_rl

#endif  // LDP_RL_JOURNAL_HPP_
