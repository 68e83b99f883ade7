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

#include <cmath>
#include <functional>
#include <random>

#include "gtest/gtest.h"

#include "noumenal/error.hpp"
#include "oracles.hpp"

using namespace noumenal;

namespace {

constexpr double kTight = 1e-12;

ErrorCode code_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::ValidationError;
}

UnitaryOperator random_global(const LatticePtr &lat, std::mt19937_64 &rng) {
    return UnitaryOperator(oracle::random_unitary(lat->global().dimension(), rng), lat->global());
}

System random_nonempty(const LatticePtr &lat, std::mt19937_64 &rng) {
    std::uniform_int_distribution<std::uint32_t> pick(1, lat->full_mask());
    return lat->system_from_mask(pick(rng));
}

}  // namespace

TEST(evolution_matrix, identity_entries) {
    auto lat = SystemLattice::from_dims({2, 2});
    const auto n = from_global_unitary(UnitaryOperator::identity(lat->global()), lat->atom(0));
    ASSERT_EQ(n.d(), 2u);
    ASSERT_EQ(n.global_dim(), 4u);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            ComplexMatrix e = ComplexMatrix::Zero(2, 2);
            e(j, i) = 1.0;
            EXPECT_LE(max_abs_diff(n.entry(i, j), oracle::kron(e, oracle::identity(2))), 0.0);
        }
    }
}

TEST(evolution_matrix, hadamard_entry_is_plus_projector) {
    auto lat = SystemLattice::from_dims({2, 2});
    const ComplexMatrix h = oracle::hadamard();
    const UnitaryOperator w(oracle::kron(h, oracle::identity(2)), lat->global());
    const auto n = from_global_unitary(w, lat->atom(0));
    // H|0><0|H = (I + X)/2, hand-expanded.
    ComplexMatrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    EXPECT_LE(max_abs_diff(n.entry(0, 0), oracle::kron(plus, oracle::identity(2))), kTight);
    EXPECT_LE(max_abs_diff(plus, 0.5 * (oracle::identity(2) + oracle::pauli_x())), 0.0);
}

TEST(evolution_matrix, complement_unitary_leaves_state_unchanged) {
    auto lat = SystemLattice::from_dims({2, 3, 2});
    std::mt19937_64 rng(31);
    const System a = lat->system({0, 2});
    const ComplexMatrix v = oracle::random_unitary(3, rng);
    const UnitaryOperator w(oracle::embed(v, {1}, {2, 3, 2}), lat->global());
    const auto id = from_global_unitary(UnitaryOperator::identity(lat->global()), a);
    EXPECT_TRUE(noumenal_equal(from_global_unitary(w, a), id));
}

TEST(evolution_matrix, matches_brute_force_oracle) {
    const std::vector<std::size_t> dims{2, 3, 2};
    auto lat = SystemLattice::from_dims(dims);
    oracle::for_trials(41, 15, [&](std::mt19937_64 &rng, std::size_t) {
        const auto w = random_global(lat, rng);
        const System a = random_nonempty(lat, rng);
        const auto n = from_global_unitary(w, a);
        SCOPED_TRACE(a.to_string());
        for (std::size_t i = 0; i < n.d(); ++i)
            for (std::size_t j = 0; j < n.d(); ++j)
                EXPECT_LE(max_abs_diff(n.entry(i, j), oracle::evolution_entry(w.matrix(), a.atom_ids(), dims, i, j)),
                          1e-12);
    });
}

TEST(evolution_matrix, basis_construction_matches_oracle) {
    const std::vector<std::size_t> dims{2, 2};
    auto lat = SystemLattice::from_dims(dims);
    std::mt19937_64 rng(9);
    const auto w = random_global(lat, rng);
    const ComplexMatrix bv = oracle::random_unitary(2, rng);
    const Basis b("b", bv);
    const auto n = from_global_unitary(w, lat->atom(1), b);
    EXPECT_EQ(n.basis_tag(), "b");
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            // W† (|b_j><b_i| on atom 1) W
            const ComplexMatrix proj = bv.col(j) * bv.col(i).adjoint();
            const ComplexMatrix expected = w.matrix().adjoint() * oracle::embed(proj, {1}, dims) * w.matrix();
            EXPECT_LE(max_abs_diff(n.entry(i, j), expected), kTight);
        }
    }
}

TEST(evolution_matrix, consistency_laws_hold) {
    auto lat = SystemLattice::from_dims({2, 2, 2});
    oracle::for_trials(5, 20, [&](std::mt19937_64 &rng, std::size_t) {
        const auto n = from_global_unitary(random_global(lat, rng), random_nonempty(lat, rng));
        const auto report = consistency_check(n.grid());
        EXPECT_TRUE(report.passed);
        EXPECT_LE(report.max_residual(), kTolEq);
        EXPECT_FALSE(report.sampled);
    });
}

TEST(evolution_matrix, consistency_check_detects_violations) {
    auto lat = SystemLattice::from_dims({2, 2});
    std::mt19937_64 rng(1);
    const auto n = from_global_unitary(random_global(lat, rng), lat->atom(0));
    auto entries = n.grid().entries();
    entries[0] *= 2.0;
    const OperatorMatrix doubled(lat->atom(0), kCanonicalBasis, entries);
    const auto report = consistency_check(doubled);
    EXPECT_FALSE(report.passed);
    EXPECT_GT(report.trace_residual, 0.1);
    EXPECT_EQ(code_of([&] { EvolutionMatrix::validated(doubled); }), ErrorCode::ValidationError);

    auto skewed = n.grid().entries();
    skewed[1] += ComplexMatrix::Constant(4, 4, cplx(0.0, 1e-3));
    EXPECT_GT(consistency_check(OperatorMatrix(lat->atom(0), kCanonicalBasis, skewed)).adjoint_residual, 1e-4);

    auto nan_grid = n.grid().entries();
    nan_grid[3](0, 0) = cplx(std::nan(""), 0.0);
    EXPECT_FALSE(consistency_check(OperatorMatrix(lat->atom(0), kCanonicalBasis, nan_grid)).passed);
}

TEST(evolution_matrix, consistency_check_samples_large_grids) {
    auto lat = SystemLattice::from_dims({2, 2, 2, 2});
    std::mt19937_64 rng(3);
    const auto n = from_global_unitary(random_global(lat, rng), lat->global());
    const auto report = consistency_check(n.grid());
    EXPECT_TRUE(report.sampled);
    EXPECT_TRUE(report.passed);
}

TEST(evolution_matrix, grid_shape_validation) {
    auto lat = SystemLattice::from_dims({2, 2});
    EXPECT_EQ(code_of([&] { OperatorMatrix(lat->atom(0), kCanonicalBasis, {oracle::identity(4)}); }),
              ErrorCode::DimensionMismatch);
    std::vector<ComplexMatrix> wrong(4, oracle::identity(2));
    EXPECT_EQ(code_of([&] { OperatorMatrix(lat->atom(0), kCanonicalBasis, wrong); }), ErrorCode::DimensionMismatch);
    ComplexMatrix w = oracle::identity(2);
    EXPECT_EQ(code_of([&] { from_global_unitary(UnitaryOperator(w, lat->atom(0)), lat->atom(0)); }),
              ErrorCode::NotGlobalOperator);
}

TEST(noumenal_action, identity_and_associativity) {
    auto lat = SystemLattice::from_dims({2, 3});
    oracle::for_trials(6, 15, [&](std::mt19937_64 &rng, std::size_t) {
        const System a = random_nonempty(lat, rng);
        const auto n = from_global_unitary(random_global(lat, rng), a);
        EXPECT_LE(noumenal_distance(noumenal_action(UnitaryOperator::identity(a), n), n), kTight);
        const UnitaryOperator u(oracle::random_unitary(a.dimension(), rng), a);
        const UnitaryOperator v(oracle::random_unitary(a.dimension(), rng), a);
        EXPECT_LE(noumenal_distance(noumenal_action(v.compose(u), n), noumenal_action(v, noumenal_action(u, n))), 1e-12);
    });
}

TEST(noumenal_action, matches_global_route) {
    const std::vector<std::size_t> dims{2, 2, 3};
    auto lat = SystemLattice::from_dims(dims);
    oracle::for_trials(7, 15, [&](std::mt19937_64 &rng, std::size_t) {
        const System a = random_nonempty(lat, rng);
        const auto w = random_global(lat, rng);
        const ComplexMatrix u = oracle::random_unitary(a.dimension(), rng);
        const UnitaryOperator uw(oracle::embed(u, a.atom_ids(), dims) * w.matrix(), lat->global());
        EXPECT_LE(noumenal_distance(noumenal_action(UnitaryOperator(u, a), from_global_unitary(w, a)),
                                    from_global_unitary(uw, a)),
                  1e-12);
    });
}

TEST(noumenal_action, x_flips_identity_indices) {
    auto lat = SystemLattice::from_dims({2});
    const System a = lat->global();
    const UnitaryOperator x(oracle::pauli_x(), a);
    const auto acted = noumenal_action(x, from_global_unitary(UnitaryOperator::identity(a), a));
    const auto direct = from_global_unitary(x, a);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            ComplexMatrix flipped = ComplexMatrix::Zero(2, 2);
            flipped(1 - j, 1 - i) = 1.0;
            EXPECT_LE(max_abs_diff(acted.entry(i, j), flipped), kTight);
            EXPECT_LE(max_abs_diff(direct.entry(i, j), flipped), kTight);
        }
    }
}

TEST(noumenal_action, rejects_mismatches) {
    auto lat = SystemLattice::from_dims({2, 2});
    const auto n = from_global_unitary(UnitaryOperator::identity(lat->global()), lat->atom(0));
    EXPECT_EQ(code_of([&] { noumenal_action(UnitaryOperator(oracle::pauli_x(), lat->atom(1)), n); }),
              ErrorCode::SystemMismatch);
    EXPECT_EQ(code_of([&] {
                  noumenal_action(UnitaryOperator(oracle::pauli_x(), lat->atom(0), kTolUnitary, "hadamard"), n);
              }),
              ErrorCode::BasisMismatch);
}

TEST(noumenal_trace, fundamental_property) {
    auto lat = SystemLattice::from_dims({2, 2});
    oracle::for_trials(8, 20, [&](std::mt19937_64 &rng, std::size_t) {
        const auto w = random_global(lat, rng);
        EXPECT_LE(noumenal_distance(noumenal_partial_trace(from_global_unitary(w, lat->global()), lat->atom(1)),
                                    from_global_unitary(w, lat->atom(0))),
                  1e-12);
    });
}

TEST(noumenal_trace, composition) {
    auto lat = SystemLattice::from_dims({2, 2, 2});
    oracle::for_trials(10, 10, [&](std::mt19937_64 &rng, std::size_t) {
        const auto n = from_global_unitary(random_global(lat, rng), lat->global());
        const auto bc = noumenal_partial_trace(n, lat->system({1, 2}));
        const auto stepwise = noumenal_partial_trace(noumenal_partial_trace(n, lat->atom(2)), lat->atom(1));
        EXPECT_LE(noumenal_distance(bc, stepwise), 1e-12);
        EXPECT_EQ(bc.system(), lat->atom(0));
    });
}

TEST(noumenal_trace, identity_and_degenerate_cases) {
    auto lat = SystemLattice::from_dims({2, 3});
    const auto id = UnitaryOperator::identity(lat->global());
    const auto traced = noumenal_partial_trace(from_global_unitary(id, lat->global()), lat->atom(1));
    EXPECT_LE(noumenal_distance(traced, from_global_unitary(id, lat->atom(0))), 0.0);
    // Tracing nothing is the identity map; tracing everything leaves Σ_i N_ii = I.
    std::mt19937_64 rng(2);
    const auto n = from_global_unitary(random_global(lat, rng), lat->global());
    EXPECT_LE(noumenal_distance(noumenal_partial_trace(n, lat->empty()), n), 0.0);
    const auto all = noumenal_partial_trace(n, lat->global());
    ASSERT_EQ(all.d(), 1u);
    EXPECT_LE(max_abs_diff(all.entry(0, 0), oracle::identity(6)), 1e-12);
    EXPECT_EQ(code_of([&] { noumenal_partial_trace(from_global_unitary(id, lat->atom(0)), lat->atom(1)); }),
              ErrorCode::NotSubsystem);
}

TEST(noumenal_product, fundamental_property_and_traces) {
    auto lat = SystemLattice::from_dims({2, 3, 2});
    oracle::for_trials(12, 15, [&](std::mt19937_64 &rng, std::size_t) {
        const auto w = random_global(lat, rng);
        const System a = lat->system({0, 2});
        const System b = lat->atom(1);
        const auto na = from_global_unitary(w, a);
        const auto nb = from_global_unitary(w, b);
        const auto ab = noumenal_product(na, nb);
        EXPECT_LE(noumenal_distance(ab, from_global_unitary(w, lat->global())), 1e-12);
        EXPECT_LE(noumenal_distance(noumenal_partial_trace(ab, b), na), 1e-12);
        EXPECT_LE(noumenal_distance(noumenal_partial_trace(ab, a), nb), 1e-12);
        EXPECT_LE(noumenal_distance(noumenal_product(nb, na), ab), 1e-12);
    });
}

TEST(noumenal_product, identity_states) {
    auto lat = SystemLattice::from_dims({2, 2});
    const auto id = UnitaryOperator::identity(lat->global());
    EXPECT_LE(noumenal_distance(noumenal_product(from_global_unitary(id, lat->atom(0)), from_global_unitary(id, lat->atom(1))),
                                from_global_unitary(id, lat->global())),
              0.0);
}

TEST(noumenal_product, independent_states_are_generically_incompatible) {
    auto lat = SystemLattice::from_dims({2, 2});
    std::size_t rejected = 0;
    const std::size_t trials = 50;
    oracle::for_trials(13, trials, [&](std::mt19937_64 &rng, std::size_t) {
        const auto na = from_global_unitary(random_global(lat, rng), lat->atom(0));
        const auto nb = from_global_unitary(random_global(lat, rng), lat->atom(1));
        const auto fast = noumenal_product(na, nb, ProductMode::Fast);
        if (!consistency_check(fast.grid()).passed) ++rejected;
        try {
            noumenal_product(na, nb);
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::CompatibilityViolation);
        }
    });
    // Observed: every independent pair fails the consistency gate.
    EXPECT_EQ(rejected, trials);
}

TEST(noumenal_product, rejects_overlap_and_foreign_basis) {
    auto lat = SystemLattice::from_dims({2, 2});
    const auto id = UnitaryOperator::identity(lat->global());
    const auto n0 = from_global_unitary(id, lat->atom(0));
    EXPECT_EQ(code_of([&] { noumenal_product(n0, from_global_unitary(id, lat->global())); }),
              ErrorCode::DisjointnessViolation);
    const auto had = from_global_unitary(id, lat->atom(1), Basis("hadamard", oracle::hadamard()));
    EXPECT_EQ(code_of([&] { noumenal_product(n0, had); }), ErrorCode::BasisMismatch);
}

TEST(noumenal_product, empty_factor_is_neutral) {
    auto lat = SystemLattice::from_dims({2, 2});
    std::mt19937_64 rng(4);
    const auto w = random_global(lat, rng);
    const auto n = from_global_unitary(w, lat->atom(0));
    const auto none = from_global_unitary(w, lat->empty());
    EXPECT_LE(noumenal_distance(noumenal_product(n, none), n), 1e-12);
}

TEST(change_of_basis, identity_relation_composition_bijection) {
    auto lat = SystemLattice::from_dims({2, 3});
    oracle::for_trials(14, 10, [&](std::mt19937_64 &rng, std::size_t) {
        const System a = random_nonempty(lat, rng);
        const std::size_t d = a.dimension();
        const auto w = random_global(lat, rng);
        const Basis c = Basis::canonical(d);
        const Basis b1("b1", oracle::random_unitary(d, rng));
        const Basis b2("b2", oracle::random_unitary(d, rng));
        const Basis b3("b3", oracle::random_unitary(d, rng));
        const auto n1 = from_global_unitary(w, a, b1);
        EXPECT_LE(noumenal_distance(change_of_basis(n1, b1, b1), n1), 1e-12);
        EXPECT_LE(noumenal_distance(change_of_basis(from_global_unitary(w, a), c, b2), from_global_unitary(w, a, b2)),
                  1e-12);
        EXPECT_LE(noumenal_distance(change_of_basis(change_of_basis(n1, b1, b2), b2, b3), change_of_basis(n1, b1, b3)),
                  1e-12);
        EXPECT_LE(noumenal_distance(change_of_basis(change_of_basis(n1, b1, b2), b2, b1), n1), 1e-12);
    });
}

TEST(change_of_basis, errors) {
    auto lat = SystemLattice::from_dims({2, 2});
    const auto n = from_global_unitary(UnitaryOperator::identity(lat->global()), lat->atom(0));
    ComplexMatrix skew(2, 2);
    skew << 1.0, 1.0, 0.0, 1.0;
    EXPECT_EQ(code_of([&] { Basis("skew", skew); }), ErrorCode::NotOrthonormal);
    EXPECT_EQ(code_of([&] { Basis("rect", ComplexMatrix::Identity(2, 3)); }), ErrorCode::NotOrthonormal);
    const Basis had("hadamard", oracle::hadamard());
    EXPECT_EQ(code_of([&] { change_of_basis(n, had, Basis::canonical(2)); }), ErrorCode::BasisMismatch);
    EXPECT_EQ(code_of([&] { change_of_basis(n, Basis::canonical(2), Basis::canonical(4)); }),
              ErrorCode::DimensionMismatch);
    const auto moved = change_of_basis(n, Basis::canonical(2), had);
    EXPECT_EQ(code_of([&] { noumenal_partial_trace(moved, lat->empty()); }), ErrorCode::BasisMismatch);
    EXPECT_EQ(code_of([&] { noumenal_distance(moved, n); }), ErrorCode::BasisMismatch);
}

TEST(noumenal_equality, reflexive_and_complement_invariant) {
    const std::vector<std::size_t> dims{2, 2, 2};
    auto lat = SystemLattice::from_dims(dims);
    oracle::for_trials(15, 10, [&](std::mt19937_64 &rng, std::size_t) {
        const auto w = random_global(lat, rng);
        const System a = lat->system({0, 2});
        const auto n = from_global_unitary(w, a);
        EXPECT_TRUE(noumenal_equal(n, n));
        const ComplexMatrix v = oracle::embed(oracle::random_unitary(2, rng), {1}, dims);
        EXPECT_TRUE(noumenal_equal(n, from_global_unitary(UnitaryOperator(v * w.matrix(), lat->global()), a)));
        EXPECT_FALSE(noumenal_equal(n, from_global_unitary(random_global(lat, rng), a)));
    });
}

TEST(noumenal_equality, bell_marginal_differs_under_x) {
    auto lat = SystemLattice::from_dims({2, 2});
    ComplexMatrix cnot = ComplexMatrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    const ComplexMatrix w = oracle::kron(oracle::identity(2), oracle::pauli_x()) * cnot *
                            oracle::kron(oracle::hadamard(), oracle::identity(2));
    const auto n = from_global_unitary(UnitaryOperator(w, lat->global()), lat->atom(0));
    const auto xn = noumenal_action(UnitaryOperator(oracle::pauli_x(), lat->atom(0)), n);
    EXPECT_FALSE(noumenal_equal(n, xn));
    EXPECT_GE(noumenal_margin(n, xn), 0.1);
    EXPECT_EQ(code_of([&] { noumenal_distance(n, from_global_unitary(UnitaryOperator(w, lat->global()), lat->atom(1))); }),
              ErrorCode::SystemMismatch);
}
