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

#include <json.hpp>

#include "noumenal/lattice.hpp"
#include "noumenal/linalg.hpp"
#include "noumenal/mixed.hpp"
#include "noumenal/noumenal.hpp"

namespace noumenal {

using json = nlohmann::json;

// Matrices are nested row-major arrays of [re, im] pairs.
json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const json &j);

// {"atoms": [{"id": 0, "dim": 2, "label": "A"}, ...]}
json lattice_to_json(const SystemLattice &lattice);
LatticePtr lattice_from_json(const json &j, std::size_t max_dimension = kDefaultMaxDimension);

// Sorted array of atom ids.
json system_to_json(const System &s);
System system_from_json(const json &j, const LatticePtr &lattice);

json density_to_json(const DensityOperator &rho);
DensityOperator density_from_json(const json &j, const System &system);

// {"system", "basis_tag", "D", "d", "entries": [[matrix, ...], ...]}
json evolution_to_json(const EvolutionMatrix &n);
/// Runs consistency_check on the decoded grid unless `validate` is false.
EvolutionMatrix evolution_from_json(const json &j, const LatticePtr &lattice, bool validate = true);

// {"noumenal": ..., "anchor_rho": ...}
json extended_to_json(const ExtendedNoumenalState &s);
ExtendedNoumenalState extended_from_json(const json &j, const LatticePtr &lattice, bool validate = true);

/// Finite doubles as numbers, non-finite ones as the strings "inf", "-inf", "nan".
json number_to_json(double v);
double number_from_json(const json &j);

}  // namespace noumenal
