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

#include "ldp_rl/csv.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "ldp_rl/errors.hpp"

namespace ldp_rl {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double to_double(const std::string& text, int line_no, const char* field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw InvalidArgument(fmt::format("line {}: bad {} '{}'", line_no, field, text));
  }
  return v;
}

int to_int(const std::string& text, int line_no, const char* field) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw InvalidArgument(fmt::format("line {}: bad {} '{}'", line_no, field, text));
  }
  return v;
}

std::string format_epsilon(const std::optional<double>& eps) {
  return eps ? format_real(*eps) : std::string();
}

}  // namespace

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

void write_regret_csv(std::ostream& out, std::span<const std::string> comments,
                      std::span<const RegretRecord> records) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << kRegretHeader << '\n';
  for (const auto& r : records) {
    out << r.algorithm << ',' << format_epsilon(r.epsilon) << ',' << r.seed << ','
        << r.episode << ',' << format_real(r.per_episode_regret) << ','
        << format_real(r.cumulative_regret) << '\n';
  }
}

std::vector<RegretRecord> read_regret_csv(std::istream& in) {
  std::vector<RegretRecord> records;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kRegretHeader) {
        throw InvalidArgument(fmt::format("line {}: expected header '{}'", line_no,
                                          kRegretHeader));
      }
      header_seen = true;
      continue;
    }
    const auto f = split(line);
    if (f.size() != 6) {
      throw InvalidArgument(
          fmt::format("line {}: expected 6 fields, found {}", line_no, f.size()));
    }
    RegretRecord r;
    r.algorithm = f[0];
    if (!f[1].empty()) r.epsilon = to_double(f[1], line_no, "epsilon");
    r.seed = to_int(f[2], line_no, "seed");
    r.episode = to_int(f[3], line_no, "episode");
    r.per_episode_regret = to_double(f[4], line_no, "per_episode_regret");
    r.cumulative_regret = to_double(f[5], line_no, "cumulative_regret");
    records.push_back(std::move(r));
  }
  if (!header_seen) throw InvalidArgument("missing header line");
  return records;
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.algorithm << ',' << format_epsilon(r.epsilon) << ',' << r.episode << ','
        << format_real(r.mean_cumulative_regret) << ','
        << format_real(r.std_cumulative_regret) << '\n';
  }
}

}  // namespace ldp_rl
