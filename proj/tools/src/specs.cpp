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

#include "arrowtime/cli/specs.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "arrowtime/errors.hpp"
#include "arrowtime/pauli.hpp"
#include "arrowtime/serialize.hpp"

namespace arrowtime::cli {

namespace {

struct Preset {
  std::string name;
  std::map<std::string, std::string> params;
};

// "name:key=value,key=value"
Preset split_preset(const std::string& spec) {
  Preset p;
  const auto colon = spec.find(':');
  p.name = spec.substr(0, colon);
  if (colon == std::string::npos) return p;
  std::stringstream rest(spec.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InvalidArgument("expected key=value in \"" + spec + "\"");
    }
    p.params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return p;
}

void allow_only(const Preset& p, std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : p.params) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) {
      throw InvalidArgument("unknown parameter \"" + key + "\" for \"" +
                            p.name + "\"");
    }
  }
}

double number_param(const Preset& p, const std::string& key) {
  const auto it = p.params.find(key);
  if (it == p.params.end()) {
    throw InvalidArgument("\"" + p.name + "\" needs " + key + "=<value>");
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size() || !std::isfinite(v)) {
    throw InvalidArgument("parameter " + key + " is not a number: \"" +
                          it->second + "\"");
  }
  return v;
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("malformed JSON in " + origin + ": " + e.what());
  }
}

// Inline JSON or @file; empty optional when the spec is neither.
std::optional<Json> json_escape(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return parse_json(spec, "spec");
  if (!spec.empty() && spec.front() == '@') {
    const std::string path = spec.substr(1);
    return parse_json(read_file(path), path);
  }
  return std::nullopt;
}

DensityMatrix product_ket(const std::string& letters) {
  if (letters.empty() || letters.size() > kMaxQubits) {
    throw InvalidArgument("ket needs between 1 and " +
                          std::to_string(kMaxQubits) + " qubits");
  }
  const double h = 1.0 / std::sqrt(2.0);
  Vector psi = Vector::Ones(1);
  for (char c : letters) {
    Vector q(2);
    switch (c) {
      case '0':
        q << 1, 0;
        break;
      case '1':
        q << 0, 1;
        break;
      case '+':
        q << h, h;
        break;
      case '-':
        q << h, -h;
        break;
      default:
        throw InvalidArgument(std::string("unknown ket symbol '") + c + "'");
    }
    Vector next(psi.size() * 2);
    for (Eigen::Index i = 0; i < psi.size(); ++i) next.segment(2 * i, 2) = psi(i) * q;
    psi = next;
  }
  return DensityMatrix::pure(psi);
}

KrausChannel depolarizing(unsigned n, double p) {
  if (p < 0.0 || p > 1.0) throw InvalidArgument("depolarize needs p in [0, 1]");
  const auto basis = enumerate_basis(n);
  const double d2 = static_cast<double>(basis.size());
  std::vector<Matrix> ops;
  ops.push_back(std::sqrt(1.0 - p + p / d2) * pauli_matrix(basis[0]));
  if (p > 0.0) {
    for (std::size_t k = 1; k < basis.size(); ++k) {
      ops.push_back(std::sqrt(p / d2) * pauli_matrix(basis[k]));
    }
  }
  return KrausChannel(std::move(ops));
}

KrausChannel dephasing(unsigned n) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
  std::vector<Matrix> ops;
  for (Eigen::Index k = 0; k < d; ++k) {
    Matrix proj = Matrix::Zero(d, d);
    proj(k, k) = 1.0;
    ops.push_back(proj);
  }
  return KrausChannel(std::move(ops));
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DensityMatrix parse_state(const std::string& spec) {
  if (auto j = json_escape(spec)) {
    try {
      return DensityMatrix(matrix_from_json(*j));
    } catch (const DataError& e) {
      throw InvalidArgument(e.what());
    }
  }
  if (spec.size() >= 3 && spec.front() == '|' && spec.back() == '>') {
    return product_ket(spec.substr(1, spec.size() - 2));
  }
  const Preset p = split_preset(spec);
  if (p.name == "mixed") {
    allow_only(p, {"n"});
    double n = 1.0;
    if (p.params.count("n")) n = number_param(p, "n");
    if (n < 1 || n > kMaxQubits || n != std::floor(n)) {
      throw InvalidArgument("mixed needs an integer n in [1, " +
                            std::to_string(kMaxQubits) + "]");
    }
    return DensityMatrix::maximally_mixed(std::size_t{1}
                                          << static_cast<unsigned>(n));
  }
  if (p.name == "rhoA") {
    allow_only(p, {"a"});
    const double a = number_param(p, "a");
    if (a < 0.0 || a > 1.0) throw InvalidArgument("rhoA needs a in [0, 1]");
    Matrix m(2, 2);
    m << 1.0 - a / 2.0, a / 2.0, a / 2.0, a / 2.0;
    return DensityMatrix(m);
  }
  throw InvalidArgument("unknown state spec \"" + spec + "\"");
}

KrausChannel parse_channel(const std::string& spec, unsigned n_qubits) {
  if (auto j = json_escape(spec)) {
    try {
      return channel_from_json(*j);
    } catch (const DataError& e) {
      throw InvalidArgument(e.what());
    }
  }
  const Preset p = split_preset(spec);
  if (p.name == "identity") {
    allow_only(p, {});
    return KrausChannel::identity(std::size_t{1} << n_qubits);
  }
  if (p.name == "decohere") {
    allow_only(p, {});
    return dephasing(n_qubits);
  }
  if (p.name == "depolarize") {
    allow_only(p, {"p"});
    return depolarizing(n_qubits, number_param(p, "p"));
  }
  if (p.name == "unitary") {
    allow_only(p, {"file"});
    const auto it = p.params.find("file");
    if (it == p.params.end()) throw InvalidArgument("unitary needs file=<path>");
    try {
      return KrausChannel::unitary(
          matrix_from_json(parse_json(read_file(it->second), it->second)));
    } catch (const DataError& e) {
      throw InvalidArgument(e.what());
    }
  }
  throw InvalidArgument("unknown channel spec \"" + spec + "\"");
}

}  // namespace arrowtime::cli
