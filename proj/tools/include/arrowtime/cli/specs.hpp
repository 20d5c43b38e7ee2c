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

#pragma once

#include <string>

#include "arrowtime/channels.hpp"
#include "arrowtime/linalg.hpp"

namespace arrowtime::cli {

/// State mini-language:
///   |0>, |01+->      product of |0>, |1>, |+>, |-> per qubit
///   mixed[:n=2]      maximally mixed state (default one qubit)
///   rhoA:a=0.3       (1 − a)|0><0| + a|+><+|
///   {...}            matrix JSON
///   @path            matrix JSON read from a file
DensityMatrix parse_state(const std::string& spec);

/// Channel mini-language, sized to act on `n_qubits`:
///   identity
///   decohere             complete dephasing in the computational basis
///   depolarize:p=0.1     (1 − p)ρ + p·1/d
///   unitary:file=path    matrix JSON of a unitary
///   {...} / @path        channel JSON
KrausChannel parse_channel(const std::string& spec, unsigned n_qubits);

/// Whole file as a string; throws InvalidArgument when it cannot be read.
std::string read_file(const std::string& path);

}  // namespace arrowtime::cli
