// Copyright 2026 The npg-games Authors
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

#ifndef NPG_TRACE_H_
#define NPG_TRACE_H_

// CSV trace files. A trace starts with "# key: value" metadata lines, then
// a header row and one row per recorded iterate:
//
//   static   iter,qre_gap,ne_gap,bound,aux_residual,wall_time_ms
//   markov   iter,markov_qre_gap,wall_time_ms
//
// Reals use shortest round-trip formatting ("nan" where undefined);
// wall_time_ms is fixed to three decimals and is the only column that varies
// between identical runs.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "npg/dynamics.h"
#include "npg/errors.h"
#include "npg/format.h"
#include "npg/markov.h"

namespace npg {

inline constexpr int kTraceSchemaVersion = 1;

using TraceMetadata = std::vector<std::pair<std::string, std::string>>;

inline const std::vector<std::string>& StaticTraceColumns() {
  static const std::vector<std::string> kColumns = {
      "iter", "qre_gap", "ne_gap", "bound", "aux_residual", "wall_time_ms"};
  return kColumns;
}

inline const std::vector<std::string>& MarkovTraceColumns() {
  static const std::vector<std::string> kColumns = {"iter", "markov_qre_gap",
                                                    "wall_time_ms"};
  return kColumns;
}

namespace trace_internal {

inline void WriteHeader(std::ostream& out, const TraceMetadata& meta,
                        const std::vector<std::string>& columns) {
  out << "# npg-trace: " << kTraceSchemaVersion << '\n';
  for (const auto& [k, v] : meta) out << "# " << k << ": " << v << '\n';
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out << (c ? "," : "") << columns[c];
  }
  out << '\n';
}

}  // namespace trace_internal

inline void WriteStaticTrace(std::ostream& out, const TraceMetadata& meta,
                             const std::vector<IterateRecord>& records) {
  trace_internal::WriteHeader(out, meta, StaticTraceColumns());
  for (const IterateRecord& r : records) {
    out << r.iter << ',' << FormatDouble(r.qre_gap) << ','
        << FormatDouble(r.ne_gap) << ',' << FormatDouble(r.bound) << ','
        << FormatDouble(r.aux_residual) << ','
        << FormatFixed(r.wall_time.count(), 3) << '\n';
  }
}

inline void WriteMarkovTrace(std::ostream& out, const TraceMetadata& meta,
                             const std::vector<MarkovIterateRecord>& records) {
  trace_internal::WriteHeader(out, meta, MarkovTraceColumns());
  for (const MarkovIterateRecord& r : records) {
    out << r.iter << ',' << FormatDouble(r.markov_qre_gap) << ','
        << FormatFixed(r.wall_time.count(), 3) << '\n';
  }
}

struct Trace {
  TraceMetadata metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string Meta(const std::string& key) const {
    for (const auto& [k, v] : metadata) {
      if (k == key) return v;
    }
    return {};
  }

  std::vector<double> Column(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c] != name) continue;
      std::vector<double> out;
      for (const auto& row : rows) out.push_back(row[c]);
      return out;
    }
    throw ParameterError("trace has no column '" + name + "'");
  }
};

inline Trace ReadTrace(std::istream& in) {
  Trace t;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::size_t colon = line.find(": ");
      if (colon != std::string::npos && colon > 2) {
        t.metadata.emplace_back(line.substr(2, colon - 2),
                                line.substr(colon + 2));
      }
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!header_seen) {
      t.columns = std::move(cells);
      header_seen = true;
      continue;
    }
    if (cells.size() != t.columns.size()) {
      throw ParameterError("trace row has " + std::to_string(cells.size()) +
                           " cells, expected " +
                           std::to_string(t.columns.size()));
    }
    std::vector<double> row;
    for (const std::string& c : cells) row.push_back(ParseDouble(c));
    t.rows.push_back(std::move(row));
  }
  if (!header_seen) throw ParameterError("trace has no header row");
  return t;
}

inline Trace LoadTrace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace " + path);
  return ReadTrace(in);
}

// Drops the wall_time_ms column so that traces of identical runs compare
// equal byte for byte.
inline std::string StripWallTime(const std::string& csv) {
  std::stringstream in(csv);
  std::string out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') {
      const std::size_t comma = line.rfind(',');
      if (comma != std::string::npos) line.resize(comma);
    }
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace npg

#endif  // NPG_TRACE_H_
