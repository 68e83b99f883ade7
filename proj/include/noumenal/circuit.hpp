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

#include <cstddef>
#include <string>
#include <vector>

#include "noumenal/lattice.hpp"
#include "noumenal/linalg.hpp"
#include "noumenal/noumenal.hpp"
#include "noumenal/serialize.hpp"

namespace noumenal {

/// Upper bound on d_A² · D² complex entries held by one tracked evolution matrix.
inline constexpr std::size_t kMaxTrackedEntries = std::size_t{1} << 26;

struct GateSpec {
    /// Named gate, or "matrix" for an explicit unitary.
    std::string name;
    /// Target atoms; the first is the most significant factor of `local`.
    std::vector<std::size_t> targets;
    /// The gate as given, in target order.
    ComplexMatrix local;
    /// The gate embedded into the global system.
    ComplexMatrix global;
};

struct CircuitFile {
    LatticePtr lattice;
    /// "pure:<bits>" or "density".
    std::string initial_label;
    DensityOperator initial;
    std::vector<GateSpec> gates;
    std::vector<System> track;
};

/// Schema:
///   {"atoms": [{"id":0,"dim":2,"label":"A"}, ...],
///    "initial_state": "pure:|01>" | [[...]] (density matrix),
///    "gates": [{"name":"H","targets":[0]}, {"matrix":[[...]],"targets":[1,0]}],
///    "track": [[0], [0,1]]}
/// `initial_state` defaults to |0...0⟩ and `track` to every atom. Throws
/// ParseError for malformed input and ValidationError for invalid content.
CircuitFile parse_circuit(const json &j, std::size_t max_dimension = kDefaultMaxDimension, double tol = kTolUnitary);
CircuitFile load_circuit(const std::string &path, std::size_t max_dimension = kDefaultMaxDimension,
                         double tol = kTolUnitary);

/// Global density matrix of the computational basis state named by `bits`,
/// one digit per atom in id order. "|01>" and "01" are both accepted.
DensityOperator parse_pure_label(const std::string &bits, const LatticePtr &lattice);

struct TrackedState {
    System system;
    EvolutionMatrix noumenal;
    ComplexMatrix phenomenal;
    /// max-abs of φ_ρ([W_t]^A) − tr_Ā(W_t ρ W_t†).
    double residual = 0.0;
};

struct SimulationStep {
    std::size_t step = 0;
    /// Empty for step 0 (the initial state).
    std::string gate;
    std::vector<std::size_t> targets;
    std::vector<TrackedState> tracked;
};

struct SimulationRecord {
    std::vector<SimulationStep> steps;
    double max_residual = 0.0;
    double tol = kTolEq;

    bool passed() const { return max_residual <= tol; }
};

SimulationRecord simulate(const CircuitFile &circuit, double tol = kTolEq,
                          std::size_t max_entries = kMaxTrackedEntries);

json simulation_to_json(const CircuitFile &circuit, const SimulationRecord &record);
std::string simulation_to_text(const CircuitFile &circuit, const SimulationRecord &record);

}  // namespace noumenal
