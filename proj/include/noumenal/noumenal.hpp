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
#include <memory>
#include <string>
#include <vector>

#include "noumenal/lattice.hpp"
#include "noumenal/linalg.hpp"

namespace noumenal {

inline const std::string kCanonicalBasis = "canonical";

/// Orthonormal basis of a system's Hilbert space. Column k of `vectors` holds
/// the k-th basis vector in canonical coordinates.
class Basis {
  public:
    /// Throws NotOrthonormal if the columns are not orthonormal within `tol`.
    Basis(std::string tag, ComplexMatrix vectors, double tol = kTolUnitary);

    static Basis canonical(std::size_t dim);

    const std::string &tag() const { return tag_; }
    const ComplexMatrix &vectors() const { return vectors_; }
    std::size_t dim() const { return static_cast<std::size_t>(vectors_.rows()); }

  private:
    std::string tag_;
    ComplexMatrix vectors_;
};

/// A d × d grid of operators on the global Hilbert space, indexed by a basis of
/// the Hilbert space of `system`. Entries are stored row-major and shared
/// between copies.
class OperatorMatrix {
  public:
    /// Throws DimensionMismatch unless `entries` holds d·d matrices of size D × D,
    /// with d = dimension(system) and D = dimension(global system).
    OperatorMatrix(System system, std::string basis_tag, std::vector<ComplexMatrix> entries);

    const System &system() const { return system_; }
    const std::string &basis_tag() const { return basis_tag_; }
    std::size_t d() const { return d_; }
    std::size_t global_dim() const { return global_dim_; }

    const ComplexMatrix &entry(std::size_t i, std::size_t j) const { return (*entries_)[i * d_ + j]; }
    const std::vector<ComplexMatrix> &entries() const { return *entries_; }

  private:
    System system_;
    std::string basis_tag_;
    std::size_t d_ = 0;
    std::size_t global_dim_ = 0;
    std::shared_ptr<const std::vector<ComplexMatrix>> entries_;
};

/// Residuals of the three algebraic laws every evolution matrix obeys:
///   adjoint:        N_ij† = N_ji
///   multiplicative: N_ij N_kl = δ_il N_kj
///   trace:          Σ_i N_ii = I
struct ConsistencyReport {
    bool passed = false;
    double adjoint_residual = 0.0;
    double product_residual = 0.0;
    double trace_residual = 0.0;
    /// True when the multiplicative law was checked on a sample of index quadruples.
    bool sampled = false;

    double max_residual() const;
};

/// Grids with d above `full_check_limit` have their multiplicative law checked
/// on a fixed pseudo-random sample of index quadruples.
ConsistencyReport consistency_check(const OperatorMatrix &m, double tol = kTolEq,
                                    std::size_t full_check_limit = 8);

/// A noumenal state: the evolution matrix [W]^A of some global unitary W.
/// Immutable; copies share their entries.
class EvolutionMatrix {
  public:
    /// Runs consistency_check and throws ValidationError on failure.
    static EvolutionMatrix validated(OperatorMatrix grid, double tol = kTolEq);
    /// Wraps a grid without checking it.
    static EvolutionMatrix assume_valid(OperatorMatrix grid);

    const OperatorMatrix &grid() const { return grid_; }
    const System &system() const { return grid_.system(); }
    const std::string &basis_tag() const { return grid_.basis_tag(); }
    std::size_t d() const { return grid_.d(); }
    std::size_t global_dim() const { return grid_.global_dim(); }
    const ComplexMatrix &entry(std::size_t i, std::size_t j) const { return grid_.entry(i, j); }

  private:
    explicit EvolutionMatrix(OperatorMatrix grid) : grid_(std::move(grid)) {}
    OperatorMatrix grid_;
};

/// [W]^A with entries W†(|j⟩⟨i| ⊗ I^Ā)W in the canonical basis of A.
/// Throws NotGlobalOperator unless W acts on the global system.
EvolutionMatrix from_global_unitary(const UnitaryOperator &w, const System &a_sys);

/// [W]^A in an arbitrary orthonormal basis of A. Built by embedding each
/// |j'⟩⟨i'| and conjugating with W.
EvolutionMatrix from_global_unitary(const UnitaryOperator &w, const System &a_sys, const Basis &basis);

/// (U ⋆ N)_ij = Σ_kl U_ik N_kl U†_lj.
EvolutionMatrix noumenal_action(const UnitaryOperator &u, const EvolutionMatrix &n);

/// tr_B(N)_ij = Σ_k N_(i,k)(j,k). Tracing out all of n.system() yields the 1 × 1
/// grid of the empty system.
EvolutionMatrix noumenal_partial_trace(const EvolutionMatrix &n, const System &traced);

enum class ProductMode {
    /// Reject products that fail consistency_check (CompatibilityViolation).
    Checked,
    /// Skip the compatibility gate.
    Fast,
};

/// (N^A ⊙ N^B)_(i,k)(j,l) = N^A_ij N^B_kl.
EvolutionMatrix noumenal_product(const EvolutionMatrix &na, const EvolutionMatrix &nb,
                                 ProductMode mode = ProductMode::Checked, double tol = kTolEq);

/// B2 ← B1: entry (k', l') = Σ_ij ⟨k'|i⟩ N_ij ⟨j|l'⟩. Throws BasisMismatch unless
/// n is written in `from`.
EvolutionMatrix change_of_basis(const EvolutionMatrix &n, const Basis &from, const Basis &to);

/// Largest entrywise max-abs difference. Throws SystemMismatch / BasisMismatch.
double noumenal_distance(const EvolutionMatrix &n1, const EvolutionMatrix &n2);
/// Smallest, over grid positions (i, j), of the max-abs difference of the two
/// entries at that position.
double noumenal_margin(const EvolutionMatrix &n1, const EvolutionMatrix &n2);
bool noumenal_equal(const EvolutionMatrix &n1, const EvolutionMatrix &n2, double tol = kTolEq);

}  // namespace noumenal
