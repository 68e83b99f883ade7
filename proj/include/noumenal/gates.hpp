// Copyright 2026 The Noumenal Authors
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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "noumenal/linalg.hpp"

namespace noumenal {

/// Qubit gates by name: I, X, Y, Z, H, S, T (one qubit) and CNOT, SWAP, CZ (two
/// qubits, first target is the control). Returns nullopt for unknown names.
std::optional<ComplexMatrix> named_gate(const std::string &name);

/// Names accepted by named_gate, in a fixed order.
const std::vector<std::string> &named_gate_list();

}  // namespace noumenal
