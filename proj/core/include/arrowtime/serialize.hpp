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

#include <nlohmann/json.hpp>

#include "arrowtime/channels.hpp"
#include "arrowtime/extraction.hpp"
#include "arrowtime/inference.hpp"
#include "arrowtime/pdm.hpp"
#include "arrowtime/recovery.hpp"

namespace arrowtime {

using Json = nlohmann::json;

// Wire formats. Doubles are written in shortest round-trip form, so values
// survive a write/read cycle bit for bit. Readers throw InvalidData (or
// MissingEntry for incomplete tables) on malformed input.

/// {"rows": r, "cols": c, "re": [...], "im": [...]}, row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"n_qubits": n, "entries": [{"a": "XZ", "b": "IY", "value": v}, ...]}
/// with an optional "shots" count.
Json table_to_json(const CorrelatorTable& t);
CorrelatorTable table_from_json(const Json& j);

/// {"kind": "kraus", "ops": [matrix, ...]} or {"kind": "unitary", "U": matrix}.
Json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const Json& j);

Json extraction_to_json(const ExtractionResult& r);
Json recovery_to_json(const RecoveryResult& r);
Json report_to_json(const ArrowReport& r);

std::string_view to_string(ExtractionMode mode);
std::string_view to_string(RecoveryMethod method);

}  // namespace arrowtime
