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


#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "noumenal/circuit.hpp"
#include "noumenal/error.hpp"
#include "noumenal/scenarios.hpp"

namespace {

using namespace noumenal;

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

struct Common {
    std::string format = "json";
    double tol = kTolEq;
};

void add_common(CLI::App *cmd, Common &common) {
    cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--tol", common.tol, "Equality tolerance (max-abs)")->check(CLI::PositiveNumber);
}

std::optional<std::size_t> max_dim_from_env() {
    const char *raw = std::getenv("NOUMENAL_MAX_DIM");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(raw, &used);
        if (used != std::string(raw).size() || v == 0) throw std::invalid_argument(raw);
        return static_cast<std::size_t>(v);
    } catch (const std::exception &) {
        throw Error(ErrorCode::ParseError, std::string("NOUMENAL_MAX_DIM must be a positive integer, got '") + raw + "'");
    }
}

std::vector<System> parse_track(const LatticePtr &lattice, const std::string &spec) {
    std::vector<System> out;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t end = std::min(spec.find(';', start), spec.size());
        const std::string part = spec.substr(start, end - start);
        if (part.find_first_not_of(' ') == std::string::npos) {
            throw Error(ErrorCode::ParseError, "empty system in track spec '" + spec + "'");
        }
        out.push_back(parse_system(lattice, part));
        start = end + 1;
    }
    return out;
}

void emit(const json &j, const std::string &text, const Common &common) {
    if (common.format == "json") {
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << text;
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Evolution-matrix and density-operator simulator with law verification"};
    app.require_subcommand(1);

    Common sim_common;
    std::string sim_file;
    std::string sim_track;
    auto *sim = app.add_subcommand("simulate", "Run a circuit file and report tracked states after each gate");
    sim->add_option("--file", sim_file, "Circuit JSON file")->required();
    sim->add_option("--track", sim_track, "Systems to track, e.g. \"0;0,1\" (overrides the file)");
    add_common(sim, sim_common);

    Common ver_common;
    std::string ver_atoms = "2x2";
    std::size_t ver_trials = 50;
    std::uint64_t ver_seed = 0;
    bool ver_bug = false;
    auto *ver = app.add_subcommand("verify", "Run the randomized law suite");
    ver->add_option("--atoms", ver_atoms, "Atom dimensions, e.g. 2x2x2");
    ver->add_option("--trials", ver_trials, "Random trials per law")->check(CLI::NonNegativeNumber);
    ver->add_option("--seed", ver_seed, "Seed");
    ver->add_flag("--self-test-bug", ver_bug, "Perturb every evolution matrix to confirm failures are caught");
    add_common(ver, ver_common);

    Common demo_common;
    std::string demo_name;
    std::string demo_atoms;
    std::size_t demo_trials = 100;
    std::uint64_t demo_seed = 0;
    std::string demo_bipartition;
    bool demo_swap = false;
    bool demo_hadamard = false;
    bool demo_identity_remote = false;
    auto *demo = app.add_subcommand("demo", "Run a named demonstration");
    demo->add_option("name", demo_name, "bell-incompleteness | no-signalling")
        ->required()
        ->check(CLI::IsMember({"bell-incompleteness", "no-signalling"}));
    demo->add_option("--atoms", demo_atoms, "Atom dimensions (default 2x2)");
    demo->add_option("--trials", demo_trials, "Random trials (no-signalling)")->check(CLI::NonNegativeNumber);
    demo->add_option("--seed", demo_seed, "Seed (no-signalling)");
    demo->add_option("--bipartition", demo_bipartition, "Systems A;B, e.g. \"0;1,2\" (no-signalling)");
    demo->add_flag("--swap-roles", demo_swap, "Use atom 1 as A and atom 0 as B (bell-incompleteness)");
    demo->add_flag("--hadamard", demo_hadamard, "Also compare states in the Hadamard basis (bell-incompleteness)");
    demo->add_flag("--identity-remote", demo_identity_remote, "Use V = I on B (no-signalling)");
    add_common(demo, demo_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitInput;
    }

    try {
        const auto env_dim = max_dim_from_env();
        const std::size_t lattice_bound = env_dim.value_or(kDefaultMaxDimension);
        const std::size_t suite_bound = env_dim.value_or(kLawSuiteMaxDimension);

        if (*sim) {
            CircuitFile circuit = load_circuit(sim_file, lattice_bound);
            if (!sim_track.empty()) circuit.track = parse_track(circuit.lattice, sim_track);
            const SimulationRecord record = simulate(circuit, sim_common.tol);
            emit(simulation_to_json(circuit, record), simulation_to_text(circuit, record), sim_common);
            return record.passed() ? kExitPass : kExitFailure;
        }

        if (*ver) {
            const LatticePtr lattice = SystemLattice::from_dims(parse_atom_dims(ver_atoms), lattice_bound);
            LawSuiteOptions options;
            options.trials = ver_trials;
            options.seed = ver_seed;
            options.tol.eq = ver_common.tol;
            options.inject_fault = ver_bug;
            options.max_dimension = suite_bound;
            const auto reports = run_law_suite(lattice, options);
            emit(law_suite_to_json(*lattice, options, reports), law_suite_to_text(*lattice, options, reports),
                 ver_common);
            return all_passed(reports) ? kExitPass : kExitFailure;
        }

        const LatticePtr lattice =
            SystemLattice::from_dims(parse_atom_dims(demo_atoms.empty() ? "2x2" : demo_atoms), lattice_bound);
        ScenarioResult result;
        if (demo_name == "bell-incompleteness") {
            BellDemoOptions options;
            options.swap_roles = demo_swap;
            options.hadamard_basis = demo_hadamard;
            options.tol_eq = demo_common.tol;
            result = bell_incompleteness_demo(lattice, options);
        } else {
            NoSignallingOptions options;
            options.trials = demo_trials;
            options.seed = demo_seed;
            options.tol_eq = demo_common.tol;
            options.identity_remote = demo_identity_remote;
            options.max_dimension = suite_bound;
            if (!demo_bipartition.empty()) {
                const auto parts = parse_track(lattice, demo_bipartition);
                if (parts.size() != 2) {
                    throw Error(ErrorCode::ParseError, "--bipartition needs exactly two systems, e.g. \"0;1\"");
                }
                options.a_sys = parts[0];
                options.b_sys = parts[1];
            }
            result = no_signalling_demo(lattice, options);
        }
        emit(scenario_to_json(result), scenario_to_text(result), demo_common);
        return result.passed() ? kExitPass : kExitFailure;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
