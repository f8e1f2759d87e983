// Copyright 2026 The zsg Authors.
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

#include "zsg/csv.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zsg/error.hpp"

namespace zsg {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

struct Column {
  std::string header;
  const std::vector<double>* values;
};

const AggregateSeries* maybe_series(const std::vector<AggregateSeries>& all,
                                    const std::string& name) {
  for (const auto& s : all) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

}  // namespace

std::string render_csv(CsvSchema schema,
                       const std::vector<AggregateSeries>& series,
                       Aggregation mode) {
  const bool medians = mode != Aggregation::kMean;
  const auto& ng = find_series(series, "ng");
  std::vector<Column> cols;
  if (schema == CsvSchema::kMatrix) {
    const auto& ngtau = find_series(series, "ngtau");
    cols = {{"ng_mean", &ng.mean},
            {"ng_std", &ng.std},
            {"ngtau_mean", &ngtau.mean},
            {"ngtau_std", &ngtau.std},
            {"min_pi", &find_series(series, "min_pi").min},
            {"q_inf", &find_series(series, "q_inf").max}};
    if (medians) {
      cols.push_back({"ng_median", &ng.median});
      cols.push_back({"ngtau_median", &ngtau.median});
    }
  } else {
    cols = {{"ng_mean", &ng.mean},
            {"ng_std", &ng.std},
            {"lsum", &find_series(series, "lsum").mean},
            {"min_pi", &find_series(series, "min_pi").min},
            {"q_inf", &find_series(series, "q_inf").max},
            {"v_inf", &find_series(series, "v_inf").max}};
    if (const auto* v_err = maybe_series(series, "v_err")) {
      cols.push_back({"v_err", &v_err->mean});
    }
    if (medians) cols.push_back({"ng_median", &ng.median});
  }
  if (const auto* br = maybe_series(series, "br_gap")) {
    cols.push_back({"br_gap_mean", &br->mean});
  }

  std::ostringstream os;
  os << (schema == CsvSchema::kMatrix ? "k" : "t,k");
  for (const auto& c : cols) os << ',' << c.header;
  os << '\n';
  for (std::size_t i = 0; i < ng.index.size(); ++i) {
    if (schema == CsvSchema::kStochastic) os << ng.index[i].t << ',';
    os << ng.index[i].k;
    for (const auto& c : cols) os << ',' << format_double((*c.values)[i]);
    os << '\n';
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kParseError, "cannot write " + tmp);
    out << contents;
    if (!out) throw Error(ErrorCode::kParseError, "failed writing " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace zsg
