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

namespace noumenal {

/// What is locally observable in a system: its density operator.
using PhenomenalState = DensityOperator;

/// A pure density operator |τ⟩⟨τ| on the global system.
class PureGlobalState {
  public:
    /// Throws SystemMismatch if rho is not on the global system and
    /// ValidationError if tr(ρ²) differs from 1 by more than `tol`.
    explicit PureGlobalState(DensityOperator rho, double tol = kTolEq);

    const DensityOperator &state() const { return rho_; }
    /// A unit vector τ with ρ = |τ⟩⟨τ| (global phase fixed by the largest component).
    ComplexVector vector() const;

  private:
    DensityOperator rho_;
};

/// U · ρ = U ρ U†.
PhenomenalState phenomenal_action(const UnitaryOperator &u, const PhenomenalState &rho);

/// Raw φ_ρ(N)_ij = tr(N_ij ρ) without density validation.
ComplexMatrix phi_matrix(const DensityOperator &rho_ref, const EvolutionMatrix &n);

/// Noumenal-phenomenal homomorphism φ_ρ. The reference state lives on the
/// global system; `n` must be in the canonical basis (BasisMismatch otherwise).
PhenomenalState phi(const DensityOperator &rho_ref, const EvolutionMatrix &n, double tol = kTolEq);

/// max-abs of U·φ(N)·U† − φ(U ⋆ N).
double homomorphism_law_check(const DensityOperator &rho_ref, const UnitaryOperator &u, const EvolutionMatrix &n);

/// max-abs of tr_B(φ(N)) − φ(tr_B(N)).
double trace_relation_check(const DensityOperator &rho_ref, const EvolutionMatrix &n, const System &traced);

/// A global pure vector whose reduction to the system of `rho_a` is rho_a:
/// Σ_m √λ_m |e_m⟩ ⊗ |m⟩ over the eigenpairs of rho_a, with |m⟩ the canonical
/// basis of the complement.
ComplexVector purification(const DensityOperator &rho_a);

/// Unitary whose first column is `first` (unit norm), completed by
/// Gram–Schmidt over the canonical basis vectors in ascending order.
ComplexMatrix complete_to_unitary(const ComplexVector &first);

/// A global unitary W with φ_ρ([W]^A) = target for a pure reference ρ. Target
/// must be reachable, i.e. rank(target) ≤ dimension of the complement.
UnitaryOperator pure_surjectivity_witness(const PureGlobalState &rho_ref, const DensityOperator &target);

}  // namespace noumenal
