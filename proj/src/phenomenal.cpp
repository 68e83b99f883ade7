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

#include "noumenal/phenomenal.hpp"

#include <cmath>

#include "noumenal/error.hpp"

namespace noumenal {

namespace {

Eigen::Index ix(std::size_t v) { return static_cast<Eigen::Index>(v); }

}  // namespace

PureGlobalState::PureGlobalState(DensityOperator rho, double tol) : rho_(std::move(rho)) {
    if (!rho_.system().is_global()) {
        throw Error(ErrorCode::SystemMismatch, "a pure global state must live on the global system");
    }
    if (!rho_.is_pure(tol)) {
        throw Error(ErrorCode::ValidationError, "reference state is not pure (purity " +
                                                    std::to_string(rho_.purity()) + ")");
    }
}

ComplexVector PureGlobalState::vector() const {
    // For ρ = |τ⟩⟨τ|, column c equals τ·conj(τ_c); pick the column with the
    // largest diagonal weight and normalize.
    const ComplexMatrix &m = rho_.matrix();
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < m.rows(); ++c) {
        if (m(c, c).real() > m(best, best).real()) best = c;
    }
    ComplexVector v = m.col(best);
    return v / v.norm();
}

PhenomenalState phenomenal_action(const UnitaryOperator &u, const PhenomenalState &rho) {
    if (!(u.system() == rho.system())) {
        throw Error(ErrorCode::SystemMismatch, "unitary on " + u.system().to_string() +
                                                   " cannot act on a state of " + rho.system().to_string());
    }
    return conjugate(u.matrix(), rho);
}

ComplexMatrix phi_matrix(const DensityOperator &rho_ref, const EvolutionMatrix &n) {
    if (n.basis_tag() != kCanonicalBasis) {
        throw Error(ErrorCode::BasisMismatch, "convert the evolution matrix to the canonical basis before applying phi");
    }
    require_same_lattice(rho_ref.system(), n.system());
    if (!rho_ref.system().is_global()) {
        throw Error(ErrorCode::SystemMismatch, "the reference state must live on the global system");
    }
    const std::size_t d = n.d();
    // tr(N ρ) = Σ_rc N_rc ρ_cr
    const ComplexMatrix rho_t = rho_ref.matrix().transpose();
    ComplexMatrix out(ix(d), ix(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            out(ix(i), ix(j)) = n.entry(i, j).cwiseProduct(rho_t).sum();
        }
    }
    return out;
}

PhenomenalState phi(const DensityOperator &rho_ref, const EvolutionMatrix &n, double tol) {
    return DensityOperator(phi_matrix(rho_ref, n), n.system(), tol);
}

double homomorphism_law_check(const DensityOperator &rho_ref, const UnitaryOperator &u, const EvolutionMatrix &n) {
    const ComplexMatrix lhs = u.matrix() * phi_matrix(rho_ref, n) * u.matrix().adjoint();
    const ComplexMatrix rhs = phi_matrix(rho_ref, noumenal_action(u, n));
    return max_abs_diff(lhs, rhs);
}

double trace_relation_check(const DensityOperator &rho_ref, const EvolutionMatrix &n, const System &traced) {
    const ComplexMatrix lhs = partial_trace(phi_matrix(rho_ref, n), n.system(), traced);
    const ComplexMatrix rhs = phi_matrix(rho_ref, noumenal_partial_trace(n, traced));
    return max_abs_diff(lhs, rhs);
}

ComplexVector purification(const DensityOperator &rho_a) {
    const System &a_sys = rho_a.system();
    const System global = a_sys.lattice()->global();
    const System rest = complement(a_sys);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(rho_a.matrix()));
    const auto &values = solver.eigenvalues();
    const auto &vectors = solver.eigenvectors();

    const IndexMap merge(a_sys, rest);
    const std::size_t d_rest = merge.dim_b();
    ComplexVector psi = ComplexVector::Zero(ix(global.dimension()));
    // Largest eigenvalues first, so truncation to d_rest terms drops only the smallest.
    std::size_t slot = 0;
    for (Eigen::Index m = values.size() - 1; m >= 0; --m) {
        const double lambda = values(m);
        if (lambda <= 0.0) continue;
        if (slot >= d_rest) {
            if (lambda > kTolPsd) {
                throw Error(ErrorCode::ValidationError, "target rank exceeds the complement dimension");
            }
            continue;
        }
        for (std::size_t i = 0; i < merge.dim_a(); ++i) {
            psi(ix(merge(i, slot))) += std::sqrt(lambda) * vectors(ix(i), m);
        }
        ++slot;
    }
    return psi / psi.norm();
}

ComplexMatrix complete_to_unitary(const ComplexVector &first) {
    const auto dim = first.size();
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    out.col(0) = first / first.norm();
    Eigen::Index filled = 1;
    for (Eigen::Index e = 0; e < dim && filled < dim; ++e) {
        ComplexVector v = ComplexVector::Zero(dim);
        v(e) = 1.0;
        // Modified Gram–Schmidt, two passes for stability.
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index c = 0; c < filled; ++c) {
                v -= out.col(c) * out.col(c).dot(v);
            }
        }
        const double norm = v.norm();
        if (norm < 1e-6) continue;
        out.col(filled++) = v / norm;
    }
    return out;
}

UnitaryOperator pure_surjectivity_witness(const PureGlobalState &rho_ref, const DensityOperator &target) {
    const System global = target.system().lattice()->global();
    // W_target sends |0...0⟩ to a purification; W_ref sends |0...0⟩ to τ_ref.
    const ComplexMatrix w_target = complete_to_unitary(purification(target));
    const ComplexMatrix w_ref = complete_to_unitary(rho_ref.vector());
    return UnitaryOperator(w_target * w_ref.adjoint(), global);
}

}  // namespace noumenal
