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

#include "noumenal/noumenal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "noumenal/error.hpp"

namespace noumenal {

namespace {

Eigen::Index ix(std::size_t v) { return static_cast<Eigen::Index>(v); }

void require_canonical(const EvolutionMatrix &n, const char *what) {
    if (n.basis_tag() != kCanonicalBasis) {
        throw Error(ErrorCode::BasisMismatch, std::string(what) + " needs a canonical-basis evolution matrix, got '" +
                                                  n.basis_tag() + "'");
    }
}

void require_comparable(const EvolutionMatrix &n1, const EvolutionMatrix &n2) {
    if (!(n1.system() == n2.system())) {
        throw Error(ErrorCode::SystemMismatch, "evolution matrices on " + n1.system().to_string() + " and " +
                                                   n2.system().to_string());
    }
    if (n1.basis_tag() != n2.basis_tag()) {
        throw Error(ErrorCode::BasisMismatch, "evolution matrices in bases '" + n1.basis_tag() + "' and '" +
                                                  n2.basis_tag() + "'");
    }
}

// out_ij = Σ_kl T_ik N_kl conj(T_jl). With the entries flattened into the rows
// of a d × (d·D²) matrix X (row k holds N_k0 ... N_k,d-1), the first pass is
// Y = T·X and the second applies conj(T) to each row of Y viewed as d × D².
std::vector<ComplexMatrix> congruence(const ComplexMatrix &t, const OperatorMatrix &n) {
    using RowBlock = Eigen::Map<const ComplexMatrix>;
    const std::size_t d = n.d();
    const auto dim = ix(n.global_dim());
    const Eigen::Index block = dim * dim;
    ComplexMatrix x(ix(d), ix(d) * block);
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) {
            x.row(ix(k)).segment(ix(l) * block, block) =
                Eigen::Map<const Eigen::Matrix<cplx, 1, Eigen::Dynamic>>(n.entry(k, l).data(), block);
        }
    }
    const ComplexMatrix y = t * x;
    x.resize(0, 0);
    const ComplexMatrix t_conj = t.conjugate();
    std::vector<ComplexMatrix> out(d * d);
    ComplexMatrix row_out(ix(d), block);
    for (std::size_t i = 0; i < d; ++i) {
        row_out.noalias() = t_conj * RowBlock(y.row(ix(i)).data(), ix(d), block);
        for (std::size_t j = 0; j < d; ++j) {
            out[i * d + j] = Eigen::Map<const ComplexMatrix>(row_out.row(ix(j)).data(), dim, dim);
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Basis::Basis(std::string tag, ComplexMatrix vectors, double tol) : tag_(std::move(tag)), vectors_(std::move(vectors)) {
    if (vectors_.rows() != vectors_.cols()) {
        throw Error(ErrorCode::NotOrthonormal, "basis '" + tag_ + "' is not square");
    }
    double r = unitarity_residual(vectors_);
    if (!(r <= tol)) {
        throw Error(ErrorCode::NotOrthonormal, "basis '" + tag_ + "' is not orthonormal (residual " +
                                                   std::to_string(r) + ")");
    }
}

Basis Basis::canonical(std::size_t dim) { return Basis(kCanonicalBasis, identity_matrix(dim)); }

OperatorMatrix::OperatorMatrix(System system, std::string basis_tag, std::vector<ComplexMatrix> entries)
    : system_(std::move(system)), basis_tag_(std::move(basis_tag)) {
    d_ = system_.dimension();
    global_dim_ = system_.lattice()->global().dimension();
    if (entries.size() != d_ * d_) {
        throw Error(ErrorCode::DimensionMismatch, "operator matrix on " + system_.to_string() + " needs " +
                                                      std::to_string(d_ * d_) + " entries, got " +
                                                      std::to_string(entries.size()));
    }
    for (const auto &e : entries) {
        if (e.rows() != ix(global_dim_) || e.cols() != ix(global_dim_)) {
            throw Error(ErrorCode::DimensionMismatch, "operator matrix entries must be " +
                                                          std::to_string(global_dim_) + "x" +
                                                          std::to_string(global_dim_));
        }
    }
    entries_ = std::make_shared<const std::vector<ComplexMatrix>>(std::move(entries));
}

double ConsistencyReport::max_residual() const {
    return worst_of({adjoint_residual, product_residual, trace_residual});
}

ConsistencyReport consistency_check(const OperatorMatrix &m, double tol, std::size_t full_check_limit) {
    ConsistencyReport report;
    const std::size_t d = m.d();
    const auto dim = ix(m.global_dim());

    ComplexMatrix diag_sum = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < d; ++i) {
        diag_sum += m.entry(i, i);
        for (std::size_t j = 0; j < d; ++j) {
            report.adjoint_residual =
                worst_of({report.adjoint_residual, max_abs_diff(m.entry(i, j).adjoint(), m.entry(j, i))});
        }
    }
    report.trace_residual = max_abs_diff(diag_sum, identity_matrix(m.global_dim()));

    double worst_sq = 0.0;
    if (d <= full_check_limit) {
        // For each (i, j) one product N_ij · [N_00 N_01 ... N_d-1,d-1] covers every (k, l).
        ComplexMatrix all(dim, ix(d * d) * dim);
        for (std::size_t q = 0; q < d * d; ++q) all.middleCols(ix(q) * dim, dim) = m.entries()[q];
        ComplexMatrix prod(dim, all.cols());
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                prod.noalias() = m.entry(i, j) * all;
                for (std::size_t k = 0; k < d; ++k) {
                    prod.middleCols(ix(k * d + i) * dim, dim) -= m.entry(k, j);
                }
                worst_sq = worst_of({worst_sq, prod.cwiseAbs2().maxCoeff<Eigen::PropagateNaN>()});
            }
        }
    } else {
        report.sampled = true;
        Rng rng(0x5eedULL + d);
        std::uniform_int_distribution<std::size_t> pick(0, d - 1);
        const std::size_t samples = 4 * full_check_limit * full_check_limit;
        ComplexMatrix prod(dim, dim);
        for (std::size_t s = 0; s < samples; ++s) {
            const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
            // Half the samples hit the δ_il = 1 branch.
            const std::size_t l = (s % 2 == 0) ? i : pick(rng);
            prod.noalias() = m.entry(i, j) * m.entry(k, l);
            if (i == l) prod -= m.entry(k, j);
            worst_sq = worst_of({worst_sq, prod.cwiseAbs2().maxCoeff<Eigen::PropagateNaN>()});
        }
    }
    report.product_residual = std::sqrt(worst_sq);
    report.passed = report.max_residual() <= tol;
    return report;
}

EvolutionMatrix EvolutionMatrix::validated(OperatorMatrix grid, double tol) {
    const auto report = consistency_check(grid, tol);
    if (!report.passed) {
        throw Error(ErrorCode::ValidationError, "operator matrix is not an evolution matrix (residual " +
                                                    std::to_string(report.max_residual()) + ")");
    }
    return EvolutionMatrix(std::move(grid));
}

EvolutionMatrix EvolutionMatrix::assume_valid(OperatorMatrix grid) { return EvolutionMatrix(std::move(grid)); }

// ---------------------------------------------------------------------------

EvolutionMatrix from_global_unitary(const UnitaryOperator &w, const System &a_sys) {
    require_same_lattice(w.system(), a_sys);
    if (!w.system().is_global()) {
        throw Error(ErrorCode::NotGlobalOperator, "evolution matrices need a unitary on the global system");
    }
    const System global = w.system();
    const System rest = complement(a_sys);
    const auto oa = local_offsets(a_sys, global);
    const auto orest = local_offsets(rest, global);
    const std::size_t d = oa.size();
    const ComplexMatrix &wm = w.matrix();

    // rows[i] stacks the rows W[(i,k), :] over k, so that
    // W†(|j⟩⟨i| ⊗ I)W = Σ_k W[(j,k),:]† W[(i,k),:] = rows[j]† rows[i].
    std::vector<ComplexMatrix> rows(d, ComplexMatrix(ix(orest.size()), wm.cols()));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < orest.size(); ++k) {
            rows[i].row(ix(k)) = wm.row(ix(oa[i] + orest[k]));
        }
    }
    std::vector<ComplexMatrix> entries;
    entries.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            entries.push_back(rows[j].adjoint() * rows[i]);
        }
    }
    return EvolutionMatrix::assume_valid(OperatorMatrix(a_sys, kCanonicalBasis, std::move(entries)));
}

EvolutionMatrix from_global_unitary(const UnitaryOperator &w, const System &a_sys, const Basis &basis) {
    require_same_lattice(w.system(), a_sys);
    if (!w.system().is_global()) {
        throw Error(ErrorCode::NotGlobalOperator, "evolution matrices need a unitary on the global system");
    }
    const std::size_t d = a_sys.dimension();
    if (basis.dim() != d) {
        throw Error(ErrorCode::DimensionMismatch, "basis dimension does not match " + a_sys.to_string());
    }
    const ComplexMatrix &b = basis.vectors();
    const ComplexMatrix &wm = w.matrix();
    std::vector<ComplexMatrix> entries;
    entries.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const ComplexMatrix local = b.col(ix(j)) * b.col(ix(i)).adjoint();
            entries.push_back(wm.adjoint() * embed_operator(local, a_sys) * wm);
        }
    }
    return EvolutionMatrix::assume_valid(OperatorMatrix(a_sys, basis.tag(), std::move(entries)));
}

EvolutionMatrix noumenal_action(const UnitaryOperator &u, const EvolutionMatrix &n) {
    if (!(u.system() == n.system())) {
        throw Error(ErrorCode::SystemMismatch, "unitary on " + u.system().to_string() +
                                                   " cannot act on a noumenal state of " + n.system().to_string());
    }
    if (u.basis_tag() != n.basis_tag()) {
        throw Error(ErrorCode::BasisMismatch, "unitary written in '" + u.basis_tag() + "', state in '" +
                                                  n.basis_tag() + "'");
    }
    return EvolutionMatrix::assume_valid(OperatorMatrix(n.system(), n.basis_tag(), congruence(u.matrix(), n.grid())));
}

EvolutionMatrix noumenal_partial_trace(const EvolutionMatrix &n, const System &traced) {
    require_canonical(n, "noumenal partial trace");
    require_same_lattice(n.system(), traced);
    if (!is_subsystem(traced, n.system())) {
        throw Error(ErrorCode::NotSubsystem, traced.to_string() + " is not a subsystem of " + n.system().to_string());
    }
    const System kept = intersection(n.system(), complement(traced));
    const IndexMap merge(kept, traced);
    const std::size_t dk = merge.dim_a();
    const auto dim = ix(n.global_dim());
    std::vector<ComplexMatrix> entries;
    entries.reserve(dk * dk);
    for (std::size_t i = 0; i < dk; ++i) {
        for (std::size_t j = 0; j < dk; ++j) {
            ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
            for (std::size_t k = 0; k < merge.dim_b(); ++k) {
                acc += n.entry(merge(i, k), merge(j, k));
            }
            entries.push_back(std::move(acc));
        }
    }
    return EvolutionMatrix::assume_valid(OperatorMatrix(kept, kCanonicalBasis, std::move(entries)));
}

EvolutionMatrix noumenal_product(const EvolutionMatrix &na, const EvolutionMatrix &nb, ProductMode mode, double tol) {
    require_canonical(na, "noumenal product");
    require_canonical(nb, "noumenal product");
    const IndexMap merge(na.system(), nb.system());  // DisjointnessViolation, LatticeMismatch
    const std::size_t dab = merge.ab().dimension();
    std::vector<ComplexMatrix> entries(dab * dab);
    for (std::size_t i = 0; i < na.d(); ++i) {
        for (std::size_t j = 0; j < na.d(); ++j) {
            for (std::size_t k = 0; k < nb.d(); ++k) {
                for (std::size_t l = 0; l < nb.d(); ++l) {
                    entries[merge(i, k) * dab + merge(j, l)] = na.entry(i, j) * nb.entry(k, l);
                }
            }
        }
    }
    OperatorMatrix grid(merge.ab(), kCanonicalBasis, std::move(entries));
    if (mode == ProductMode::Checked) {
        const auto report = consistency_check(grid, tol);
        if (!report.passed) {
            throw Error(ErrorCode::CompatibilityViolation,
                        "states on " + na.system().to_string() + " and " + nb.system().to_string() +
                            " are not compatible (residual " + std::to_string(report.max_residual()) + ")");
        }
    }
    return EvolutionMatrix::assume_valid(std::move(grid));
}

EvolutionMatrix change_of_basis(const EvolutionMatrix &n, const Basis &from, const Basis &to) {
    if (n.basis_tag() != from.tag()) {
        throw Error(ErrorCode::BasisMismatch, "state is written in '" + n.basis_tag() + "', not '" + from.tag() + "'");
    }
    if (from.dim() != n.d() || to.dim() != n.d()) {
        throw Error(ErrorCode::DimensionMismatch, "basis dimension does not match " + n.system().to_string());
    }
    // ⟨k'|i⟩ = (B2† B1)_{k'i}, ⟨j|l'⟩ = conj((B2† B1)_{l'j}).
    const ComplexMatrix t = to.vectors().adjoint() * from.vectors();
    return EvolutionMatrix::assume_valid(OperatorMatrix(n.system(), to.tag(), congruence(t, n.grid())));
}

double noumenal_distance(const EvolutionMatrix &n1, const EvolutionMatrix &n2) {
    require_comparable(n1, n2);
    double dist = 0.0;
    for (std::size_t k = 0; k < n1.grid().entries().size(); ++k) {
        dist = worst_of({dist, max_abs_diff(n1.grid().entries()[k], n2.grid().entries()[k])});
    }
    return dist;
}

double noumenal_margin(const EvolutionMatrix &n1, const EvolutionMatrix &n2) {
    require_comparable(n1, n2);
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n1.grid().entries().size(); ++k) {
        const double gap = max_abs_diff(n1.grid().entries()[k], n2.grid().entries()[k]);
        if (std::isnan(gap)) return gap;
        margin = std::min(margin, gap);
    }
    return margin;
}

bool noumenal_equal(const EvolutionMatrix &n1, const EvolutionMatrix &n2, double tol) {
    return noumenal_distance(n1, n2) <= tol;
}

}  // namespace noumenal
