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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "noumenal/lattice.hpp"

namespace noumenal {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

/// Every randomized routine takes its generator explicitly; there is no global RNG.
using Rng = std::mt19937_64;

inline constexpr double kTolUnitary = 1e-10;
inline constexpr double kTolEq = 1e-9;
inline constexpr double kTolPsd = 1e-9;

struct Tolerances {
    double unitary = kTolUnitary;  // max-abs of U†U - I
    double eq = kTolEq;            // max-abs elementwise equality
    double psd = kTolPsd;          // eigenvalue floor for density operators
};

/// Largest modulus of any entry; 0 for empty matrices.
/// Largest of the values; NaN if any of them is NaN.
double worst_of(std::initializer_list<double> values);

double max_abs(const ComplexMatrix &m);
/// max_abs(a - b). Shapes must agree.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
/// max_abs(m†m - I).
double unitarity_residual(const ComplexMatrix &m);
double hermiticity_residual(const ComplexMatrix &m);

ComplexMatrix identity_matrix(std::size_t dim);
/// |row⟩⟨col| in a dim-dimensional space.
ComplexMatrix ket_bra(std::size_t dim, std::size_t row, std::size_t col);
/// Plain Kronecker product a ⊗ b (a's index is the more significant one).
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Unitary operator on a system, with matrix entries in the basis named by `basis_tag`.
class UnitaryOperator {
  public:
    /// Throws DimensionMismatch for a wrongly shaped matrix and ValidationError
    /// when U†U deviates from I by more than `tol`.
    UnitaryOperator(ComplexMatrix matrix, System system, double tol = kTolUnitary,
                    std::string basis_tag = "canonical");

    static UnitaryOperator identity(const System &system);

    const ComplexMatrix &matrix() const { return matrix_; }
    const System &system() const { return system_; }
    const std::string &basis_tag() const { return basis_tag_; }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

    UnitaryOperator adjoint() const;
    /// this · other, both on the same system.
    UnitaryOperator compose(const UnitaryOperator &other) const;

  private:
    ComplexMatrix matrix_;
    System system_;
    std::string basis_tag_;
};

/// Density operator on a system. Construction checks Hermiticity and unit
/// trace; the spectrum is only checked through validate_spectrum().
class DensityOperator {
  public:
    DensityOperator(ComplexMatrix matrix, System system, double tol = kTolEq);

    /// |psi⟩⟨psi| for a normalized vector.
    static DensityOperator pure(const ComplexVector &psi, const System &system, double tol = kTolEq);
    /// Computational basis projector |index⟩⟨index|.
    static DensityOperator basis_state(std::size_t index, const System &system);
    static DensityOperator maximally_mixed(const System &system);

    const ComplexMatrix &matrix() const { return matrix_; }
    const System &system() const { return system_; }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

    /// tr(ρ²).
    double purity() const;
    bool is_pure(double tol = kTolEq) const;
    /// Smallest eigenvalue, via Hermitian eigendecomposition.
    double min_eigenvalue() const;
    /// Throws ValidationError if an eigenvalue lies below -tol.
    void validate_spectrum(double tol = kTolPsd) const;

  private:
    ComplexMatrix matrix_;
    System system_;
};

/// Position of every local basis index of `part` inside the canonical basis of
/// `whole`. Atoms are listed in `ordered_atoms`; the first one is the most
/// significant digit of the local index. All atoms must belong to `whole`.
std::vector<std::size_t> ordered_offsets(const std::vector<std::size_t> &ordered_atoms, const System &whole);

/// ordered_offsets for the atoms of `part` in ascending order. The canonical
/// index of |i⟩^part ⊗ |k⟩^rest equals offsets(part)[i] + offsets(rest)[k].
std::vector<std::size_t> local_offsets(const System &part, const System &whole);

/// Index merge table for two disjoint systems A and B into the canonical basis of AB.
class IndexMap {
  public:
    IndexMap(const System &a, const System &b);

    const System &a() const { return a_; }
    const System &b() const { return b_; }
    const System &ab() const { return ab_; }
    std::size_t dim_a() const { return offsets_a_.size(); }
    std::size_t dim_b() const { return offsets_b_.size(); }

    std::size_t operator()(std::size_t i, std::size_t k) const { return offsets_a_[i] + offsets_b_[k]; }
    /// Checked variant of operator().
    std::size_t merge(std::size_t i, std::size_t k) const;

  private:
    System a_, b_, ab_;
    std::vector<std::size_t> offsets_a_, offsets_b_;
};

/// Flat index of |i⟩^A ⊗ |k⟩^B in the canonical basis of AB.
std::size_t merge_indices(const System &a_sys, const System &b_sys, std::size_t i, std::size_t k);

/// op ⊗ I on `target`, with the atoms of `a_sys` placed at their positions in
/// the canonical basis of `target` (default: the global system).
ComplexMatrix embed_operator(const ComplexMatrix &op, const System &a_sys, const System &target);
ComplexMatrix embed_operator(const ComplexMatrix &op, const System &a_sys);

/// op_a ⊗ op_b as an operator on A ∪ B in canonical order.
ComplexMatrix tensor_product(const ComplexMatrix &op_a, const System &a_sys, const ComplexMatrix &op_b,
                             const System &b_sys);

/// Product of operations U × V on A ∪ B.
UnitaryOperator tensor_product(const UnitaryOperator &u, const UnitaryOperator &v);

/// Reorders an operator written over `ordered_atoms` (first atom most
/// significant) into the canonical basis of the system those atoms form.
ComplexMatrix to_canonical_order(const ComplexMatrix &op, const std::vector<std::size_t> &ordered_atoms,
                                 const LatticePtr &lattice);

/// Partial trace of an operator on `whole` over the atoms of `traced`.
ComplexMatrix partial_trace(const ComplexMatrix &op, const System &whole, const System &traced);

/// Standard partial trace of a density operator. Throws NotSubsystem unless
/// `traced` is a subsystem of rho.system().
DensityOperator phenomenal_partial_trace(const DensityOperator &rho, const System &traced);

/// U·ρ = UρU†.
DensityOperator conjugate(const ComplexMatrix &u, const DensityOperator &rho);

/// Haar distributed unitary: QR of a complex Ginibre matrix, with the phases of
/// R's diagonal folded back into Q.
ComplexMatrix haar_random_matrix(std::size_t dim, Rng &rng);
UnitaryOperator haar_random_unitary(const System &system, Rng &rng);

/// Uniformly random unit vector.
ComplexVector random_unit_vector(std::size_t dim, Rng &rng);
/// Mixture of `rank` random pure states with random weights.
ComplexMatrix random_density_matrix(std::size_t dim, std::size_t rank, Rng &rng);

}  // namespace noumenal
