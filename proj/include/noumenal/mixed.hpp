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

#include "noumenal/linalg.hpp"
#include "noumenal/noumenal.hpp"
#include "noumenal/phenomenal.hpp"

namespace noumenal {

/// Noumenal state of full (mixed-state) quantum theory: an evolution matrix
/// paired with the global density operator it is anchored to.
class ExtendedNoumenalState {
  public:
    /// Throws SystemMismatch unless `anchor` lives on the global system of the
    /// same lattice as `n`.
    ExtendedNoumenalState(EvolutionMatrix n, DensityOperator anchor);

    const EvolutionMatrix &noumenal() const { return n_; }
    const DensityOperator &anchor() const { return anchor_; }
    const System &system() const { return n_.system(); }

  private:
    EvolutionMatrix n_;
    DensityOperator anchor_;
};

/// U(N, ρ) = (U N, ρ).
ExtendedNoumenalState ext_action(const UnitaryOperator &u, const ExtendedNoumenalState &s);

/// tr'_B(N, ρ) = (tr_B N, ρ).
ExtendedNoumenalState ext_trace(const ExtendedNoumenalState &s, const System &traced);

/// (N^A, ρ) ⊙' (N^B, ρ) = (N^A ⊙ N^B, ρ). Throws AnchorMismatch when the anchors
/// differ by more than `tol` anywhere.
ExtendedNoumenalState ext_product(const ExtendedNoumenalState &sa, const ExtendedNoumenalState &sb,
                                  ProductMode mode = ProductMode::Checked, double tol = kTolEq);

/// φ^A(N, ρ) = φ_ρ(N).
PhenomenalState ext_epimorphism(const ExtendedNoumenalState &s, double tol = kTolEq);

/// ([I]^A, ρ^A ⊗ I/dim(Ā)), which maps onto `target` under ext_epimorphism.
ExtendedNoumenalState mixed_surjectivity_witness(const DensityOperator &target);

}  // namespace noumenal
