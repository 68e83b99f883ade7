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

#include "noumenal/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "noumenal/error.hpp"

namespace noumenal {

double worst_of(std::initializer_list<double> values) {
    double out = 0.0;
    for (double v : values) {
        if (std::isnan(v)) return v;
        out = std::max(out, v);
    }
    return out;
}

double max_abs(const ComplexMatrix &m) {
    if (m.size() == 0) return 0.0;
    return std::sqrt(m.cwiseAbs2().maxCoeff<Eigen::PropagateNaN>());
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "cannot compare matrices of different shapes");
    }
    return max_abs(a - b);
}

double unitarity_residual(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "unitarity needs a square matrix");
    }
    return max_abs(m.adjoint() * m - identity_matrix(static_cast<std::size_t>(m.rows())));
}

double hermiticity_residual(const ComplexMatrix &m) { return max_abs(m - m.adjoint()); }

ComplexMatrix identity_matrix(std::size_t dim) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

ComplexMatrix ket_bra(std::size_t dim, std::size_t row, std::size_t col) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
    return m;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// UnitaryOperator / DensityOperator

UnitaryOperator::UnitaryOperator(ComplexMatrix matrix, System system, double tol, std::string basis_tag)
    : matrix_(std::move(matrix)), system_(std::move(system)), basis_tag_(std::move(basis_tag)) {
    const auto d = static_cast<Eigen::Index>(system_.dimension());
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw Error(ErrorCode::DimensionMismatch, "unitary on " + system_.to_string() + " must be " +
                                                      std::to_string(d) + "x" + std::to_string(d));
    }
    double r = unitarity_residual(matrix_);
    if (!(r <= tol)) {
        throw Error(ErrorCode::ValidationError, "matrix is not unitary (residual " + std::to_string(r) + ")");
    }
}

UnitaryOperator UnitaryOperator::identity(const System &system) {
    return UnitaryOperator(identity_matrix(system.dimension()), system);
}

UnitaryOperator UnitaryOperator::adjoint() const {
    return UnitaryOperator(matrix_.adjoint(), system_, kTolUnitary, basis_tag_);
}

UnitaryOperator UnitaryOperator::compose(const UnitaryOperator &other) const {
    if (!(system_ == other.system_)) {
        throw Error(ErrorCode::SystemMismatch, "cannot compose unitaries on different systems");
    }
    if (basis_tag_ != other.basis_tag_) {
        throw Error(ErrorCode::BasisMismatch, "cannot compose unitaries written in different bases");
    }
    return UnitaryOperator(matrix_ * other.matrix_, system_, 10 * kTolUnitary, basis_tag_);
}

DensityOperator::DensityOperator(ComplexMatrix matrix, System system, double tol)
    : matrix_(std::move(matrix)), system_(std::move(system)) {
    const auto d = static_cast<Eigen::Index>(system_.dimension());
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw Error(ErrorCode::DimensionMismatch, "density operator on " + system_.to_string() + " must be " +
                                                      std::to_string(d) + "x" + std::to_string(d));
    }
    double herm = hermiticity_residual(matrix_);
    if (!(herm <= tol)) {
        throw Error(ErrorCode::ValidationError, "density matrix is not Hermitian (residual " +
                                                    std::to_string(herm) + ")");
    }
    double tr_err = std::abs(matrix_.trace() - cplx(1.0, 0.0));
    if (!(tr_err <= tol)) {
        throw Error(ErrorCode::ValidationError, "density matrix trace differs from 1 by " + std::to_string(tr_err));
    }
}

DensityOperator DensityOperator::pure(const ComplexVector &psi, const System &system, double tol) {
    if (std::abs(psi.norm() - 1.0) > tol) {
        throw Error(ErrorCode::ValidationError, "state vector is not normalized");
    }
    return DensityOperator(psi * psi.adjoint(), system, tol);
}

DensityOperator DensityOperator::basis_state(std::size_t index, const System &system) {
    const std::size_t d = system.dimension();
    if (index >= d) {
        throw Error(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(index) + " out of range");
    }
    return DensityOperator(ket_bra(d, index, index), system);
}

DensityOperator DensityOperator::maximally_mixed(const System &system) {
    const std::size_t d = system.dimension();
    return DensityOperator(identity_matrix(d) / static_cast<double>(d), system);
}

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

bool DensityOperator::is_pure(double tol) const { return std::abs(purity() - 1.0) <= tol; }

double DensityOperator::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(matrix_), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void DensityOperator::validate_spectrum(double tol) const {
    double lo = min_eigenvalue();
    if (lo < -tol) {
        throw Error(ErrorCode::ValidationError, "density matrix has eigenvalue " + std::to_string(lo));
    }
}

// ---------------------------------------------------------------------------
// Index machinery

std::vector<std::size_t> ordered_offsets(const std::vector<std::size_t> &ordered_atoms, const System &whole) {
    const auto &lattice = *whole.lattice();
    std::vector<std::size_t> offsets{0};
    for (std::size_t atom : ordered_atoms) {
        if (!whole.contains_atom(atom)) {
            throw Error(ErrorCode::NotSubsystem,
                        "atom " + std::to_string(atom) + " is not part of " + whole.to_string());
        }
        // Stride of this atom's digit in `whole`: product of dims of later atoms.
        std::size_t stride = 1;
        for (std::size_t other : whole.atom_ids()) {
            if (other > atom) stride *= lattice.atom_dim(other);
        }
        const std::size_t dim = lattice.atom_dim(atom);
        std::vector<std::size_t> next;
        next.reserve(offsets.size() * dim);
        for (std::size_t base : offsets) {
            for (std::size_t digit = 0; digit < dim; ++digit) {
                next.push_back(base + digit * stride);
            }
        }
        offsets = std::move(next);
    }
    return offsets;
}

std::vector<std::size_t> local_offsets(const System &part, const System &whole) {
    require_same_lattice(part, whole);
    if (!is_subsystem(part, whole)) {
        throw Error(ErrorCode::NotSubsystem, part.to_string() + " is not a subsystem of " + whole.to_string());
    }
    return ordered_offsets(part.atom_ids(), whole);
}

IndexMap::IndexMap(const System &a, const System &b) : a_(a), b_(b), ab_(union_of(a, b)) {
    if (!are_disjoint(a, b)) {
        throw Error(ErrorCode::DisjointnessViolation, a.to_string() + " and " + b.to_string() + " overlap");
    }
    offsets_a_ = local_offsets(a_, ab_);
    offsets_b_ = local_offsets(b_, ab_);
}

std::size_t IndexMap::merge(std::size_t i, std::size_t k) const {
    if (i >= offsets_a_.size() || k >= offsets_b_.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "local index out of range in merge");
    }
    return (*this)(i, k);
}

std::size_t merge_indices(const System &a_sys, const System &b_sys, std::size_t i, std::size_t k) {
    return IndexMap(a_sys, b_sys).merge(i, k);
}

ComplexMatrix embed_operator(const ComplexMatrix &op, const System &a_sys, const System &target) {
    const std::size_t da = a_sys.dimension();
    if (static_cast<std::size_t>(op.rows()) != da || static_cast<std::size_t>(op.cols()) != da) {
        throw Error(ErrorCode::DimensionMismatch, "operator on " + a_sys.to_string() + " must be " +
                                                      std::to_string(da) + "x" + std::to_string(da));
    }
    const System rest = intersection(target, complement(a_sys));
    const auto oa = local_offsets(a_sys, target);
    const auto orest = local_offsets(rest, target);
    const auto dt = static_cast<Eigen::Index>(target.dimension());
    ComplexMatrix out = ComplexMatrix::Zero(dt, dt);
    for (std::size_t k : orest) {
        for (std::size_t i = 0; i < da; ++i) {
            for (std::size_t j = 0; j < da; ++j) {
                out(static_cast<Eigen::Index>(oa[i] + k), static_cast<Eigen::Index>(oa[j] + k)) =
                    op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
    }
    return out;
}

ComplexMatrix embed_operator(const ComplexMatrix &op, const System &a_sys) {
    return embed_operator(op, a_sys, a_sys.lattice()->global());
}

ComplexMatrix tensor_product(const ComplexMatrix &op_a, const System &a_sys, const ComplexMatrix &op_b,
                             const System &b_sys) {
    const IndexMap map(a_sys, b_sys);
    if (static_cast<std::size_t>(op_a.rows()) != map.dim_a() || static_cast<std::size_t>(op_b.rows()) != map.dim_b() ||
        op_a.rows() != op_a.cols() || op_b.rows() != op_b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "tensor factors do not match their systems");
    }
    const auto d = static_cast<Eigen::Index>(map.ab().dimension());
    ComplexMatrix out(d, d);
    for (std::size_t i = 0; i < map.dim_a(); ++i) {
        for (std::size_t j = 0; j < map.dim_a(); ++j) {
            const cplx a = op_a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            for (std::size_t k = 0; k < map.dim_b(); ++k) {
                for (std::size_t l = 0; l < map.dim_b(); ++l) {
                    out(static_cast<Eigen::Index>(map(i, k)), static_cast<Eigen::Index>(map(j, l))) =
                        a * op_b(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
                }
            }
        }
    }
    return out;
}

UnitaryOperator tensor_product(const UnitaryOperator &u, const UnitaryOperator &v) {
    if (u.basis_tag() != v.basis_tag()) {
        throw Error(ErrorCode::BasisMismatch, "tensor factors are written in different bases");
    }
    return UnitaryOperator(tensor_product(u.matrix(), u.system(), v.matrix(), v.system()),
                           union_of(u.system(), v.system()), 10 * kTolUnitary, u.basis_tag());
}

ComplexMatrix to_canonical_order(const ComplexMatrix &op, const std::vector<std::size_t> &ordered_atoms,
                                 const LatticePtr &lattice) {
    const System sys = lattice->system_from_ids(ordered_atoms);
    if (sys.atom_ids().size() != ordered_atoms.size()) {
        throw Error(ErrorCode::ValidationError, "repeated atom in operator support");
    }
    const auto perm = ordered_offsets(ordered_atoms, sys);
    if (static_cast<std::size_t>(op.rows()) != perm.size() || op.rows() != op.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "operator size does not match its atoms");
    }
    ComplexMatrix out(op.rows(), op.cols());
    for (std::size_t r = 0; r < perm.size(); ++r) {
        for (std::size_t c = 0; c < perm.size(); ++c) {
            out(static_cast<Eigen::Index>(perm[r]), static_cast<Eigen::Index>(perm[c])) =
                op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &op, const System &whole, const System &traced) {
    require_same_lattice(whole, traced);
    if (!is_subsystem(traced, whole)) {
        throw Error(ErrorCode::NotSubsystem, traced.to_string() + " is not a subsystem of " + whole.to_string());
    }
    if (static_cast<std::size_t>(op.rows()) != whole.dimension() || op.rows() != op.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "operator does not act on " + whole.to_string());
    }
    const System kept = intersection(whole, complement(traced));
    const auto ok = local_offsets(kept, whole);
    const auto ot = local_offsets(traced, whole);
    const auto dk = static_cast<Eigen::Index>(ok.size());
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; ++i) {
        for (Eigen::Index j = 0; j < dk; ++j) {
            cplx acc = 0.0;
            for (std::size_t k : ot) {
                acc += op(static_cast<Eigen::Index>(ok[i] + k), static_cast<Eigen::Index>(ok[j] + k));
            }
            out(i, j) = acc;
        }
    }
    return out;
}

DensityOperator phenomenal_partial_trace(const DensityOperator &rho, const System &traced) {
    const System kept = intersection(rho.system(), complement(traced));
    ComplexMatrix reduced = partial_trace(rho.matrix(), rho.system(), traced);
    // Restore exact Hermiticity lost to summation order.
    reduced = 0.5 * (reduced + reduced.adjoint()).eval();
    return DensityOperator(std::move(reduced), kept);
}

DensityOperator conjugate(const ComplexMatrix &u, const DensityOperator &rho) {
    if (u.rows() != rho.matrix().rows() || u.cols() != rho.matrix().cols()) {
        throw Error(ErrorCode::DimensionMismatch, "operator and density matrix sizes differ");
    }
    ComplexMatrix out = u * rho.matrix() * u.adjoint();
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityOperator(std::move(out), rho.system());
}

// ---------------------------------------------------------------------------
// Random sampling

namespace {

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng &rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.cols(); ++c) {
            double re = normal(rng);
            double im = normal(rng);
            g(r, c) = cplx(re, im);
        }
    }
    return g;
}

}  // namespace

ComplexMatrix haar_random_matrix(std::size_t dim, Rng &rng) {
    const ComplexMatrix g = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const cplx diag = r(k, k);
        const double mod = std::abs(diag);
        const cplx phase = mod > 0.0 ? diag / mod : cplx(1.0, 0.0);
        q.col(k) *= phase;
    }
    return q;
}

UnitaryOperator haar_random_unitary(const System &system, Rng &rng) {
    return UnitaryOperator(haar_random_matrix(system.dimension(), rng), system);
}

ComplexVector random_unit_vector(std::size_t dim, Rng &rng) {
    ComplexMatrix g = ginibre(dim, 1, rng);
    ComplexVector v = g.col(0);
    return v / v.norm();
}

ComplexMatrix random_density_matrix(std::size_t dim, std::size_t rank, Rng &rng) {
    rank = std::max<std::size_t>(rank, 1);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    std::vector<double> weights(rank);
    double total = 0.0;
    for (double &w : weights) {
        w = unit(rng);
        total += w;
    }
    const auto d = static_cast<Eigen::Index>(dim);
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (double w : weights) {
        const ComplexVector v = random_unit_vector(dim, rng);
        rho += (w / total) * (v * v.adjoint());
    }
    return 0.5 * (rho + rho.adjoint());
}

}  // namespace noumenal
