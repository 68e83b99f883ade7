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

#include "noumenal/serialize.hpp"

#include <cmath>
#include <limits>

#include "noumenal/error.hpp"

namespace noumenal {

namespace {

[[noreturn]] void parse_fail(const std::string &what) { throw Error(ErrorCode::ParseError, what); }

template <typename Fn>
auto guarded(Fn &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const json::exception &e) {
        parse_fail(e.what());
    }
}

}  // namespace

json number_to_json(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double number_from_json(const json &j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    parse_fail("expected a number, got " + j.dump());
}

json matrix_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json &j) {
    return guarded([&] {
        if (!j.is_array()) parse_fail("matrix must be an array of rows");
        const auto rows = static_cast<Eigen::Index>(j.size());
        const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.at(0).size());
        ComplexMatrix m(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const json &row = j.at(static_cast<std::size_t>(r));
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
                parse_fail("matrix rows must all have the same length");
            }
            for (Eigen::Index c = 0; c < cols; ++c) {
                const json &z = row.at(static_cast<std::size_t>(c));
                if (z.is_number()) {
                    m(r, c) = cplx(z.get<double>(), 0.0);
                } else if (z.is_array() && z.size() == 2) {
                    m(r, c) = cplx(z.at(0).get<double>(), z.at(1).get<double>());
                } else {
                    parse_fail("matrix entries must be [re, im] pairs");
                }
            }
        }
        return m;
    });
}

json lattice_to_json(const SystemLattice &lattice) {
    json atoms = json::array();
    for (const auto &a : lattice.atoms()) {
        json atom = {{"id", a.id}, {"dim", a.dim}};
        if (a.label) atom["label"] = *a.label;
        atoms.push_back(std::move(atom));
    }
    return json{{"atoms", std::move(atoms)}};
}

LatticePtr lattice_from_json(const json &j, std::size_t max_dimension) {
    std::vector<AtomSpec> atoms = guarded([&] {
        const json &list = j.contains("atoms") ? j.at("atoms") : j;
        if (!list.is_array()) parse_fail("\"atoms\" must be an array");
        std::vector<AtomSpec> out;
        for (const auto &a : list) {
            AtomSpec spec;
            spec.id = a.at("id").get<std::size_t>();
            spec.dim = a.at("dim").get<std::size_t>();
            if (a.contains("label")) spec.label = a.at("label").get<std::string>();
            out.push_back(std::move(spec));
        }
        return out;
    });
    return SystemLattice::create(std::move(atoms), max_dimension);
}

json system_to_json(const System &s) { return s.atom_ids(); }

System system_from_json(const json &j, const LatticePtr &lattice) {
    auto ids = guarded([&] { return j.get<std::vector<std::size_t>>(); });
    return lattice->system_from_ids(ids);
}

json density_to_json(const DensityOperator &rho) { return matrix_to_json(rho.matrix()); }

DensityOperator density_from_json(const json &j, const System &system) {
    return DensityOperator(matrix_from_json(j), system);
}

json evolution_to_json(const EvolutionMatrix &n) {
    json rows = json::array();
    for (std::size_t i = 0; i < n.d(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < n.d(); ++k) {
            row.push_back(matrix_to_json(n.entry(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return json{{"system", system_to_json(n.system())},
                {"basis_tag", n.basis_tag()},
                {"D", n.global_dim()},
                {"d", n.d()},
                {"entries", std::move(rows)}};
}

EvolutionMatrix evolution_from_json(const json &j, const LatticePtr &lattice, bool validate) {
    auto [system, tag, big_d, small_d, entries] = guarded([&] {
        System sys = system_from_json(j.at("system"), lattice);
        auto tag = j.at("basis_tag").get<std::string>();
        auto big = j.at("D").get<std::size_t>();
        auto small = j.at("d").get<std::size_t>();
        const json &rows = j.at("entries");
        if (!rows.is_array() || rows.size() != small) parse_fail("evolution matrix needs d rows of entries");
        std::vector<ComplexMatrix> grid;
        for (const auto &row : rows) {
            if (!row.is_array() || row.size() != small) parse_fail("evolution matrix needs d entries per row");
            for (const auto &e : row) grid.push_back(matrix_from_json(e));
        }
        return std::make_tuple(std::move(sys), std::move(tag), big, small, std::move(grid));
    });
    if (small_d != system.dimension() || big_d != lattice->global().dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "evolution matrix header does not match the lattice");
    }
    OperatorMatrix grid(std::move(system), std::move(tag), std::move(entries));
    return validate ? EvolutionMatrix::validated(std::move(grid)) : EvolutionMatrix::assume_valid(std::move(grid));
}

json extended_to_json(const ExtendedNoumenalState &s) {
    return json{{"noumenal", evolution_to_json(s.noumenal())}, {"anchor_rho", density_to_json(s.anchor())}};
}

ExtendedNoumenalState extended_from_json(const json &j, const LatticePtr &lattice, bool validate) {
    const json &n = guarded([&]() -> const json & { return j.at("noumenal"); });
    const json &rho = guarded([&]() -> const json & { return j.at("anchor_rho"); });
    return ExtendedNoumenalState(evolution_from_json(n, lattice, validate), density_from_json(rho, lattice->global()));
}

}  // namespace noumenal
