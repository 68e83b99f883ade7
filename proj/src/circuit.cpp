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


#include "noumenal/circuit.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <utility>

#include "noumenal/error.hpp"
#include "noumenal/gates.hpp"
#include "noumenal/phenomenal.hpp"

namespace noumenal {

namespace {

[[noreturn]] void parse_fail(const std::string &what) { throw Error(ErrorCode::ParseError, what); }

std::vector<std::size_t> parse_targets(const json &g, const SystemLattice &lattice, std::size_t index) {
    if (!g.contains("targets") || !g["targets"].is_array() || g["targets"].empty()) {
        parse_fail("gate " + std::to_string(index) + " needs a non-empty 'targets' array");
    }
    std::vector<std::size_t> targets;
    for (const auto &t : g["targets"]) {
        if (!t.is_number_integer() || t.get<std::int64_t>() < 0) parse_fail("gate " + std::to_string(index) + ": targets must be atom ids");
        targets.push_back(t.get<std::size_t>());
    }
    std::set<std::size_t> seen;
    for (std::size_t t : targets) {
        if (t >= lattice.atom_count()) {
            throw Error(ErrorCode::ValidationError,
                        "gate " + std::to_string(index) + ": no atom " + std::to_string(t));
        }
        if (!seen.insert(t).second) {
            throw Error(ErrorCode::ValidationError,
                        "gate " + std::to_string(index) + ": repeated target " + std::to_string(t));
        }
    }
    return targets;
}

GateSpec parse_gate(const json &g, const LatticePtr &lattice, std::size_t index, double tol) {
    if (!g.is_object()) parse_fail("gate " + std::to_string(index) + " must be an object");
    GateSpec gate;
    gate.targets = parse_targets(g, *lattice, index);
    std::size_t expected = 1;
    for (std::size_t t : gate.targets) expected *= lattice->atom_dim(t);

    const bool has_name = g.contains("name");
    const bool has_matrix = g.contains("matrix");
    if (has_name == has_matrix) {
        parse_fail("gate " + std::to_string(index) + " needs exactly one of 'name' or 'matrix'");
    }
    if (has_name) {
        if (!g["name"].is_string()) parse_fail("gate " + std::to_string(index) + ": 'name' must be a string");
        gate.name = g["name"].get<std::string>();
        auto m = named_gate(gate.name);
        if (!m) throw Error(ErrorCode::ValidationError, "unknown gate '" + gate.name + "'");
        for (std::size_t t : gate.targets) {
            if (lattice->atom_dim(t) != 2) {
                throw Error(ErrorCode::ValidationError,
                            "gate '" + gate.name + "' needs qubit targets, atom " + std::to_string(t) +
                                " has dimension " + std::to_string(lattice->atom_dim(t)));
            }
        }
        if (static_cast<std::size_t>(m->rows()) != expected) {
            throw Error(ErrorCode::ValidationError, "gate '" + gate.name + "' acts on " +
                                                        std::to_string(m->rows() == 2 ? 1 : 2) + " qubit(s), got " +
                                                        std::to_string(gate.targets.size()) + " target(s)");
        }
        gate.local = std::move(*m);
    } else {
        gate.name = "matrix";
        gate.local = matrix_from_json(g["matrix"]);
        if (static_cast<std::size_t>(gate.local.rows()) != expected ||
            static_cast<std::size_t>(gate.local.cols()) != expected) {
            throw Error(ErrorCode::ValidationError, "gate " + std::to_string(index) + ": matrix must be " +
                                                        std::to_string(expected) + "x" + std::to_string(expected));
        }
        if (unitarity_residual(gate.local) > tol) {
            throw Error(ErrorCode::ValidationError, "gate " + std::to_string(index) + ": matrix is not unitary");
        }
    }
    const System support = lattice->system_from_ids(gate.targets);
    gate.global = embed_operator(to_canonical_order(gate.local, gate.targets, lattice), support);
    return gate;
}

}  // namespace

DensityOperator parse_pure_label(const std::string &bits, const LatticePtr &lattice) {
    std::string digits = bits;
    if (!digits.empty() && digits.front() == '|') digits.erase(digits.begin());
    for (const std::string close : {">", "⟩"}) {
        if (digits.size() >= close.size() && digits.compare(digits.size() - close.size(), close.size(), close) == 0) {
            digits.erase(digits.size() - close.size());
            break;
        }
    }
    if (digits.size() != lattice->atom_count()) {
        parse_fail("basis label '" + bits + "' needs one digit per atom (" + std::to_string(lattice->atom_count()) +
                   ")");
    }
    std::size_t index = 0;
    for (std::size_t atom = 0; atom < digits.size(); ++atom) {
        const char c = digits[atom];
        if (c < '0' || c > '9') parse_fail("bad digit '" + std::string(1, c) + "' in '" + bits + "'");
        const auto v = static_cast<std::size_t>(c - '0');
        if (v >= lattice->atom_dim(atom)) {
            throw Error(ErrorCode::ValidationError,
                        "digit " + std::to_string(v) + " exceeds the dimension of atom " + std::to_string(atom));
        }
        index = index * lattice->atom_dim(atom) + v;
    }
    return DensityOperator::basis_state(index, lattice->global());
}

CircuitFile parse_circuit(const json &j, std::size_t max_dimension, double tol) {
    if (!j.is_object()) parse_fail("circuit file must be a JSON object");
    if (!j.contains("atoms")) parse_fail("circuit file needs 'atoms'");
    const LatticePtr lattice = lattice_from_json(j, max_dimension);
    const System global = lattice->global();
    auto initial = [&]() -> std::pair<std::string, DensityOperator> {
        if (!j.contains("initial_state")) {
            return {"pure:" + std::string(lattice->atom_count(), '0'), DensityOperator::basis_state(0, global)};
        }
        if (j["initial_state"].is_string()) {
            const auto text = j["initial_state"].get<std::string>();
            if (text.rfind("pure:", 0) != 0) parse_fail("initial_state string must start with 'pure:'");
            return {text, parse_pure_label(text.substr(5), lattice)};
        }
        DensityOperator rho = density_from_json(j["initial_state"], global);
        rho.validate_spectrum();
        return {"density", std::move(rho)};
    }();
    CircuitFile c{lattice, std::move(initial.first), std::move(initial.second), {}, {}};

    if (j.contains("gates")) {
        if (!j["gates"].is_array()) parse_fail("'gates' must be an array");
        for (std::size_t i = 0; i < j["gates"].size(); ++i) c.gates.push_back(parse_gate(j["gates"][i], c.lattice, i, tol));
    }

    if (j.contains("track")) {
        if (!j["track"].is_array()) parse_fail("'track' must be an array of atom id lists");
        for (const auto &t : j["track"]) c.track.push_back(system_from_json(t, c.lattice));
    } else {
        for (std::size_t a = 0; a < c.lattice->atom_count(); ++a) c.track.push_back(c.lattice->atom(a));
    }
    return c;
}

CircuitFile load_circuit(const std::string &path, std::size_t max_dimension, double tol) {
    std::ifstream in(path);
    if (!in) parse_fail("cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception &e) {
        parse_fail(path + ": " + e.what());
    }
    return parse_circuit(j, max_dimension, tol);
}

SimulationRecord simulate(const CircuitFile &circuit, double tol, std::size_t max_entries) {
    const System global = circuit.lattice->global();
    const std::size_t big_d = global.dimension();
    for (const auto &a : circuit.track) {
        const std::size_t d = a.dimension();
        if (d * d > max_entries / (big_d * big_d)) {
            throw Error(ErrorCode::SizeBoundExceeded,
                        "tracking " + a.to_string() + " needs " + std::to_string(d * d) + " entries of size " +
                            std::to_string(big_d) + "x" + std::to_string(big_d));
        }
    }

    SimulationRecord record;
    record.tol = tol;
    ComplexMatrix w = identity_matrix(big_d);
    auto snapshot = [&](std::size_t step, const GateSpec *gate) {
        SimulationStep s;
        s.step = step;
        if (gate) {
            s.gate = gate->name;
            s.targets = gate->targets;
        }
        const UnitaryOperator wt(w, global, kTolUnitary * 1e3);
        const ComplexMatrix evolved = wt.matrix() * circuit.initial.matrix() * wt.matrix().adjoint();
        for (const auto &a : circuit.track) {
            EvolutionMatrix n = from_global_unitary(wt, a);
            ComplexMatrix phen = phi_matrix(circuit.initial, n);
            const double residual = max_abs_diff(phen, partial_trace(evolved, global, complement(a)));
            record.max_residual = worst_of({record.max_residual, residual});
            s.tracked.push_back(TrackedState{a, std::move(n), std::move(phen), residual});
        }
        record.steps.push_back(std::move(s));
    };

    snapshot(0, nullptr);
    for (std::size_t t = 0; t < circuit.gates.size(); ++t) {
        w = circuit.gates[t].global * w;
        snapshot(t + 1, &circuit.gates[t]);
    }
    return record;
}

json simulation_to_json(const CircuitFile &circuit, const SimulationRecord &record) {
    json steps = json::array();
    for (const auto &s : record.steps) {
        json tracked = json::array();
        for (const auto &t : s.tracked) {
            tracked.push_back({{"system", system_to_json(t.system)},
                               {"noumenal", evolution_to_json(t.noumenal)},
                               {"phenomenal", matrix_to_json(t.phenomenal)},
                               {"cross_check_residual", number_to_json(t.residual)}});
        }
        json step{{"step", s.step}, {"tracked", std::move(tracked)}};
        if (!s.gate.empty()) {
            step["gate"] = s.gate;
            step["targets"] = s.targets;
        }
        steps.push_back(std::move(step));
    }
    return json{{"command", "simulate"},
                {"lattice", lattice_to_json(*circuit.lattice)},
                {"initial_state", circuit.initial_label},
                {"anchor", density_to_json(circuit.initial)},
                {"steps", std::move(steps)},
                {"max_cross_check_residual", number_to_json(record.max_residual)},
                {"tolerance", record.tol},
                {"passed", record.passed()}};
}

namespace {

std::string format_complex(cplx z) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    const double re = std::abs(z.real()) < 5e-5 ? 0.0 : z.real();
    const double im = std::abs(z.imag()) < 5e-5 ? 0.0 : z.imag();
    out << std::setw(7) << re << (im < 0 ? '-' : '+') << std::setw(6) << std::abs(im) << 'i';
    return out.str();
}

void write_matrix(std::ostream &out, const ComplexMatrix &m, const std::string &indent) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out << indent << '[';
        for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? "  " : "") << format_complex(m(r, c));
        out << "]\n";
    }
}

}  // namespace

std::string simulation_to_text(const CircuitFile &circuit, const SimulationRecord &record) {
    std::ostringstream out;
    out << "atoms:";
    for (const auto &a : circuit.lattice->atoms()) out << ' ' << a.id << "(dim " << a.dim << ')';
    out << "\ninitial state: " << circuit.initial_label << '\n';
    for (const auto &s : record.steps) {
        out << "step " << s.step;
        if (s.gate.empty()) {
            out << ": initial";
        } else {
            out << ": " << s.gate << " on";
            for (std::size_t t : s.targets) out << ' ' << t;
        }
        out << '\n';
        for (const auto &t : s.tracked) {
            out << "  system " << t.system.to_string() << "  evolution matrix " << t.noumenal.d() << 'x'
                << t.noumenal.d() << " of " << t.noumenal.global_dim() << 'x' << t.noumenal.global_dim()
                << "  cross-check " << std::scientific << std::setprecision(3) << t.residual << std::defaultfloat
                << '\n';
            write_matrix(out, t.phenomenal, "    ");
        }
    }
    out << "max cross-check residual " << std::scientific << std::setprecision(3) << record.max_residual
        << (record.passed() ? "  ok" : "  FAILED") << '\n';
    return out.str();
}

}  // namespace noumenal
