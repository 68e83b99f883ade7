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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noumenal/lattice.hpp"
#include "noumenal/linalg.hpp"
#include "noumenal/noumenal.hpp"
#include "noumenal/serialize.hpp"

namespace noumenal {

inline constexpr double kMarginDistinct = 0.1;
/// Largest global dimension the law suite accepts.
inline constexpr std::size_t kLawSuiteMaxDimension = 32;

// ---------------------------------------------------------------------------
// Randomized law suite

enum class LawStatus { Passed, Failed, Skipped };

std::string_view law_status_name(LawStatus status);

struct LawReport {
    std::string law_id;
    std::string statement;
    std::size_t trials = 0;
    double max_residual = 0.0;
    LawStatus status = LawStatus::Skipped;
    /// Inputs of the worst failing trial.
    std::optional<json> counterexample;
    std::uint64_t seed = 0;

    bool passed() const { return status != LawStatus::Failed; }
    bool operator==(const LawReport &) const = default;
};

struct LawInfo {
    std::string id;
    std::string statement;
};

/// Every law the suite checks, in execution order.
const std::vector<LawInfo> &law_registry();

struct LawSuiteOptions {
    std::size_t trials = 50;
    std::uint64_t seed = 0;
    Tolerances tol{};
    /// Perturb every freshly built evolution matrix by 1e-3 in one entry. Used to
    /// confirm the suite detects broken states.
    bool inject_fault = false;
    std::size_t max_dimension = kLawSuiteMaxDimension;
};

/// One report per registered law. Each trial draws from its own generator seeded
/// by (seed, law index, trial index), so results do not depend on execution order.
/// Throws SizeBoundExceeded when the global dimension exceeds options.max_dimension.
std::vector<LawReport> run_law_suite(const LatticePtr &lattice, const LawSuiteOptions &options);

bool all_passed(const std::vector<LawReport> &reports);

json law_report_to_json(const LawReport &report);
LawReport law_report_from_json(const json &j);
json law_suite_to_json(const SystemLattice &lattice, const LawSuiteOptions &options,
                       const std::vector<LawReport> &reports);
std::string law_suite_to_text(const SystemLattice &lattice, const LawSuiteOptions &options,
                              const std::vector<LawReport> &reports);

// ---------------------------------------------------------------------------
// Scripted demonstrations

enum class Comparison { AtMost, AtLeast };

/// A single verdict: `measured` compared against `threshold`.
struct Finding {
    std::string id;
    std::string description;
    double measured = 0.0;
    double threshold = 0.0;
    Comparison comparison = Comparison::AtMost;

    bool verdict() const {
        return comparison == Comparison::AtMost ? measured <= threshold : measured >= threshold;
    }
};

struct ScenarioResult {
    std::string scenario_id;
    std::vector<Finding> findings;
    std::vector<std::pair<std::string, ComplexMatrix>> matrices;
    std::vector<std::pair<std::string, EvolutionMatrix>> noumenal_states;
    std::vector<std::string> summary;

    bool passed() const;
    const Finding &finding(const std::string &id) const;
    const ComplexMatrix &matrix(const std::string &name) const;
    const EvolutionMatrix &noumenal_state(const std::string &name) const;
};

json scenario_to_json(const ScenarioResult &result);
std::string scenario_to_text(const ScenarioResult &result);

struct BellDemoOptions {
    /// Swap the roles of the two atoms: A = atom 1, B = atom 0.
    bool swap_roles = false;
    /// Also compare the noumenal states after moving them to the Hadamard basis.
    bool hadamard_basis = false;
    double tol_eq = kTolEq;
    /// Tolerance for φ^A(⟨Ψ+⟩^A) = I/2.
    double tol_half_identity = 1e-12;
    double margin = kMarginDistinct;
};

/// Builds ⟨Ψ+⟩^AB = [W_Ψ]^AB with W_Ψ = (I⊗X)·CNOT·(H⊗I) and anchor |00⟩⟨00|, and
/// checks that φ^A and φ^AB are not injective. Needs exactly two qubit atoms
/// (ScenarioPreconditionFailed otherwise).
ScenarioResult bell_incompleteness_demo(const LatticePtr &lattice, const BellDemoOptions &options = {});

struct NoSignallingOptions {
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    double tol_eq = kTolEq;
    /// Local side; defaults to atom 0.
    std::optional<System> a_sys;
    /// Remote side; defaults to the complement of A.
    std::optional<System> b_sys;
    /// Use V = I on the remote side.
    bool identity_remote = false;
    std::size_t max_dimension = kLawSuiteMaxDimension;
};

/// Phenomenal no-signalling and noumenal no-action-at-a-distance residuals over
/// random U, V, W and ρ^AB.
ScenarioResult no_signalling_demo(const LatticePtr &lattice, const NoSignallingOptions &options = {});

}  // namespace noumenal
