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

#include "noumenal/gates.hpp"

#include <cmath>
#include <numbers>

namespace noumenal {

std::optional<ComplexMatrix> named_gate(const std::string &name) {
    const cplx i(0.0, 1.0);
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix m;
    if (name == "I") {
        m = identity_matrix(2);
    } else if (name == "X") {
        m.resize(2, 2);
        m << 0.0, 1.0, 1.0, 0.0;
    } else if (name == "Y") {
        m.resize(2, 2);
        m << 0.0, -i, i, 0.0;
    } else if (name == "Z") {
        m.resize(2, 2);
        m << 1.0, 0.0, 0.0, -1.0;
    } else if (name == "H") {
        m.resize(2, 2);
        m << r, r, r, -r;
    } else if (name == "S") {
        m.resize(2, 2);
        m << 1.0, 0.0, 0.0, i;
    } else if (name == "T") {
        m.resize(2, 2);
        m << 1.0, 0.0, 0.0, std::exp(i * (std::numbers::pi / 4.0));
    } else if (name == "CNOT") {
        m = ComplexMatrix::Zero(4, 4);
        m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    } else if (name == "SWAP") {
        m = ComplexMatrix::Zero(4, 4);
        m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
    } else if (name == "CZ") {
        m = identity_matrix(4);
        m(3, 3) = -1.0;
    } else {
        return std::nullopt;
    }
    return m;
}

const std::vector<std::string> &named_gate_list() {
    static const std::vector<std::string> names{"I", "X", "Y", "Z", "H", "S", "T", "CNOT", "SWAP", "CZ"};
    return names;
}

}  // namespace noumenal
