// Copyright 2026 The arrowtime Authors
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

#include "arrowtime/serialize.hpp"

#include <string>
#include <vector>

#include "arrowtime/errors.hpp"

namespace arrowtime {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) throw InvalidData("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) {
    throw InvalidData(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

template <typename T>
T read_as(const Json& j, const char* key) {
  try {
    return require(j, key).get<T>();
  } catch (const Json::exception& e) {
    throw InvalidData(std::string("field \"") + key + "\": " + e.what());
  }
}

std::vector<double> read_numbers(const Json& j, const char* key) {
  const Json& arr = require(j, key);
  if (!arr.is_array()) {
    throw InvalidData(std::string("field \"") + key + "\" must be an array");
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const Json& v : arr) {
    if (!v.is_number()) {
      throw InvalidData(std::string("field \"") + key +
                        "\" must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

std::string_view to_string(ExtractionMode mode) {
  return mode == ExtractionMode::Full ? "full" : "projected";
}

std::string_view to_string(RecoveryMethod method) {
  switch (method) {
    case RecoveryMethod::Dilation:
      return "dilation";
    case RecoveryMethod::Unitary:
      return "unitary";
    case RecoveryMethod::Petz:
      return "petz";
  }
  return "dilation";
}

Json matrix_to_json(const Matrix& m) {
  std::vector<double> re;
  std::vector<double> im;
  re.reserve(static_cast<std::size_t>(m.size()));
  im.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

Matrix matrix_from_json(const Json& j) {
  const auto rows = read_as<std::int64_t>(j, "rows");
  const auto cols = read_as<std::int64_t>(j, "cols");
  if (rows <= 0 || cols <= 0) throw InvalidData("matrix shape must be positive");
  const std::vector<double> re = read_numbers(j, "re");
  const auto expected = static_cast<std::size_t>(rows * cols);
  if (re.size() != expected) {
    throw InvalidData("matrix \"re\" has " + std::to_string(re.size()) +
                      " entries, expected " + std::to_string(expected));
  }
  std::vector<double> im(expected, 0.0);
  if (j.contains("im")) {
    im = read_numbers(j, "im");
    if (im.size() != expected) {
      throw InvalidData("matrix \"im\" has " + std::to_string(im.size()) +
                        " entries, expected " + std::to_string(expected));
    }
  }
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto k = static_cast<std::size_t>(r * cols + c);
      m(r, c) = Complex{re[k], im[k]};
    }
  }
  return m;
}

Json table_to_json(const CorrelatorTable& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries()) {
    entries.push_back(
        Json{{"a", e.a.str()}, {"b", e.b.str()}, {"value", e.value}});
  }
  Json out{{"n_qubits", t.n_qubits()}, {"entries", std::move(entries)}};
  if (t.shots) out["shots"] = *t.shots;
  return out;
}

CorrelatorTable table_from_json(const Json& j) {
  const auto n = read_as<std::int64_t>(j, "n_qubits");
  if (n < 1 || n > static_cast<std::int64_t>(kMaxQubits)) {
    throw InvalidData("n_qubits must lie in [1, " + std::to_string(kMaxQubits) +
                      "]");
  }
  const Json& arr = require(j, "entries");
  if (!arr.is_array()) throw InvalidData("\"entries\" must be an array");

  std::vector<CorrelatorTable::Entry> entries;
  entries.reserve(arr.size());
  for (const Json& e : arr) {
    CorrelatorTable::Entry entry;
    try {
      entry.a = PauliLabel::parse(read_as<std::string>(e, "a"));
      entry.b = PauliLabel::parse(read_as<std::string>(e, "b"));
    } catch (const InvalidArgument& ex) {
      throw InvalidData(ex.what());
    }
    const Json& v = require(e, "value");
    if (!v.is_number()) throw InvalidData("correlator value must be a number");
    entry.value = v.get<double>();
    entries.push_back(entry);
  }
  CorrelatorTable table = CorrelatorTable::from_entries(
      static_cast<unsigned>(n), entries);
  if (j.contains("shots") && !j["shots"].is_null()) {
    const auto shots = read_as<std::int64_t>(j, "shots");
    if (shots <= 0) throw InvalidData("\"shots\" must be positive");
    table.shots = static_cast<std::uint64_t>(shots);
  }
  return table;
}

Json channel_to_json(const KrausChannel& ch) {
  Json ops = Json::array();
  for (const Matrix& k : ch.ops()) ops.push_back(matrix_to_json(k));
  return Json{{"kind", "kraus"}, {"ops", std::move(ops)}};
}

KrausChannel channel_from_json(const Json& j) {
  const auto kind = read_as<std::string>(j, "kind");
  try {
    if (kind == "unitary") {
      return KrausChannel::unitary(matrix_from_json(require(j, "U")));
    }
    if (kind == "kraus") {
      const Json& arr = require(j, "ops");
      if (!arr.is_array() || arr.empty()) {
        throw InvalidData("\"ops\" must be a non-empty array");
      }
      std::vector<Matrix> ops;
      for (const Json& op : arr) ops.push_back(matrix_from_json(op));
      return KrausChannel(std::move(ops));
    }
  } catch (const InvalidArgument& ex) {
    throw InvalidData(ex.what());
  }
  throw InvalidData("unknown channel kind \"" + kind + "\"");
}

Json extraction_to_json(const ExtractionResult& r) {
  return Json{{"mode", to_string(r.mode)},
              {"choi", matrix_to_json(r.choi.matrix())},
              {"residual", r.residual},
              {"min_eig_T1", r.choi.min_eig_t1()}};
}

Json recovery_to_json(const RecoveryResult& r) {
  return Json{{"choi_bar", matrix_to_json(r.choi_bar.matrix())},
              {"min_eig_T1", r.min_eig_t1},
              {"is_T1_psd", r.is_t1_psd},
              {"mode", to_string(r.mode)},
              {"method", to_string(r.method)}};
}

Json report_to_json(const ArrowReport& r) {
  return Json{{"verdict", to_string(r.verdict)},
              {"arrow_measure", optional_number(r.arrow_measure)},
              {"min_eig_fwd_T1", r.min_eig_fwd_t1},
              {"min_eig_bwd_T1", r.min_eig_bwd_t1},
              {"rank_rho", r.rank_rho},
              {"rank_gamma", r.rank_gamma},
              {"entropy_delta", optional_number(r.entropy_delta)},
              {"residuals", {{"fwd", r.residual_fwd}, {"bwd", r.residual_bwd}}},
              {"mode_fwd", to_string(r.mode_fwd)},
              {"mode_bwd", to_string(r.mode_bwd)},
              {"psd_tol", r.psd_tol},
              {"notes", r.notes}};
}

}  // namespace arrowtime
