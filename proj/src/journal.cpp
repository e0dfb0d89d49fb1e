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

#include "ldp_rl/journal.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "ldp_rl/errors.hpp"

namespace ldp_rl {

void write_journal_entry(std::ostream& out, int k, const PrivatizedUpdate& payload) {
  const int H = payload.horizon(), d = payload.dim();
  std::string line = fmt::format("{} {} {}", k, H, d);
  for (int h = 0; h < H; ++h) {
    const auto& g = payload.delta_gram[h];
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) line += fmt::format(" {:.17g}", g(i, j));
    }
    for (int i = 0; i < d; ++i) line += fmt::format(" {:.17g}", payload.delta_target[h](i));
  }
  out << line << '\n';
}

std::vector<JournalEntry> read_journal(std::istream& in) {
  std::vector<JournalEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    JournalEntry e;
    int H = 0, d = 0;
    if (!(fields >> e.k >> H >> d) || H < 1 || d < 1) {
      throw InvalidArgument(fmt::format("journal line {}: bad header", line_no));
    }
    auto next = [&]() {
      std::string tok;
      if (!(fields >> tok)) {
        throw InvalidArgument(fmt::format("journal line {}: truncated record", line_no));
      }
      try {
        return std::stod(tok);
      } catch (const std::exception&) {
        throw InvalidArgument(fmt::format("journal line {}: bad number '{}'", line_no, tok));
      }
    };
    for (int h = 0; h < H; ++h) {
      Eigen::MatrixXd g(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) g(i, j) = next();
      }
      Eigen::VectorXd t(d);
      for (int i = 0; i < d; ++i) t(i) = next();
      e.payload.delta_gram.push_back(std::move(g));
      e.payload.delta_target.push_back(std::move(t));
    }
    std::string extra;
    if (fields >> extra) {
      throw InvalidArgument(fmt::format("journal line {}: trailing data", line_no));
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace ldp_rl
