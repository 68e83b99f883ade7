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


// Brute-force reference computations for the tests. Everything here works on
// explicit digit strings and plain loops; none of it calls the library's index
// tables, embeddings, traces or random generators.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "noumenal/linalg.hpp"

namespace oracle {

using noumenal::ComplexMatrix;
using noumenal::ComplexVector;
using noumenal::cplx;

/// Mixed-radix digits of `index`, atom 0 first (most significant).
inline std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t> &dims) {
    std::vector<std::size_t> out(dims.size());
    for (std::size_t a = dims.size(); a-- > 0;) {
        out[a] = index % dims[a];
        index /= dims[a];
    }
    return out;
}

inline std::size_t from_digits(const std::vector<std::size_t> &ds, const std::vector<std::size_t> &dims) {
    std::size_t index = 0;
    for (std::size_t a = 0; a < dims.size(); ++a) index = index * dims[a] + ds[a];
    return index;
}

inline std::size_t product(const std::vector<std::size_t> &dims) {
    std::size_t p = 1;
    for (std::size_t d : dims) p *= d;
    return p;
}

/// Index of the sub-digit-string on `atoms` (ascending) within that subsystem.
inline std::size_t sub_index(const std::vector<std::size_t> &ds, const std::vector<std::size_t> &atoms,
                             const std::vector<std::size_t> &dims) {
    std::size_t index = 0;
    for (std::size_t a : atoms) index = index * dims[a] + ds[a];
    return index;
}

inline bool agree_outside(const std::vector<std::size_t> &x, const std::vector<std::size_t> &y,
                          const std::vector<std::size_t> &atoms) {
    for (std::size_t a = 0; a < x.size(); ++a) {
        bool inside = false;
        for (std::size_t b : atoms) inside = inside || b == a;
        if (!inside && x[a] != y[a]) return false;
    }
    return true;
}

/// op (acting on `atoms`, ascending) tensored with identity elsewhere.
inline ComplexMatrix embed(const ComplexMatrix &op, const std::vector<std::size_t> &atoms,
                           const std::vector<std::size_t> &dims) {
    const std::size_t n = product(dims);
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const auto dr = digits(r, dims), dc = digits(c, dims);
            if (!agree_outside(dr, dc, atoms)) continue;
            out(r, c) = op(sub_index(dr, atoms, dims), sub_index(dc, atoms, dims));
        }
    }
    return out;
}

/// Partial trace over `traced` atoms of an operator on the full lattice.
inline ComplexMatrix partial_trace(const ComplexMatrix &op, const std::vector<std::size_t> &traced,
                                   const std::vector<std::size_t> &dims) {
    std::vector<std::size_t> kept;
    for (std::size_t a = 0; a < dims.size(); ++a) {
        bool t = false;
        for (std::size_t b : traced) t = t || a == b;
        if (!t) kept.push_back(a);
    }
    std::size_t dk = 1;
    for (std::size_t a : kept) dk *= dims[a];
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    const std::size_t n = product(dims);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const auto dr = digits(r, dims), dc = digits(c, dims);
            if (!agree_outside(dr, dc, kept)) continue;  // traced digits equal
            out(sub_index(dr, kept, dims), sub_index(dc, kept, dims)) += op(r, c);
        }
    }
    return out;
}

/// W† (|j⟩⟨i| ⊗ I) W with the projector built by digit placement.
inline ComplexMatrix evolution_entry(const ComplexMatrix &w, const std::vector<std::size_t> &atoms,
                                     const std::vector<std::size_t> &dims, std::size_t i, std::size_t j) {
    std::size_t da = 1;
    for (std::size_t a : atoms) da *= dims[a];
    ComplexMatrix e = ComplexMatrix::Zero(da, da);
    e(j, i) = 1.0;
    return w.adjoint() * embed(e, atoms, dims) * w;
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

inline double max_abs(const ComplexMatrix &m) {
    double out = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) out = std::max(out, std::abs(m(r, c)));
    return out;
}

/// Unitary from modified Gram-Schmidt on Gaussian columns.
inline ComplexMatrix random_unitary(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) m(r, c) = cplx(g(rng), g(rng));
        for (std::size_t p = 0; p < c; ++p) {
            cplx dot = 0.0;
            for (std::size_t r = 0; r < n; ++r) dot += std::conj(m(r, p)) * m(r, c);
            for (std::size_t r = 0; r < n; ++r) m(r, c) -= dot * m(r, p);
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < n; ++r) norm += std::norm(m(r, c));
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < n; ++r) m(r, c) /= norm;
    }
    return m;
}

inline ComplexMatrix random_density(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = cplx(g(rng), g(rng));
    ComplexMatrix rho = a * a.adjoint();
    const cplx tr = rho.trace();
    rho /= tr.real();
    // Exact Hermitian symmetry.
    return 0.5 * (rho + rho.adjoint()).eval();
}

inline ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

inline ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

inline ComplexMatrix hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(2, 2);
    m << r, r, r, -r;
    return m;
}

inline ComplexMatrix identity(std::size_t n) { return ComplexMatrix::Identity(n, n); }

/// Seeded trial loop: fn(rng, trial) for `trials` independent streams.
template <typename Fn>
void for_trials(std::uint64_t seed, std::size_t trials, Fn &&fn) {
    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed * 1000003ULL + t);
        fn(rng, t);
    }
}

}  // namespace oracle
