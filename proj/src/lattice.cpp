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

#include "noumenal/lattice.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "noumenal/error.hpp"

namespace noumenal {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::LatticeMismatch: return "LatticeMismatch";
        case ErrorCode::DisjointnessViolation: return "DisjointnessViolation";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotSubsystem: return "NotSubsystem";
        case ErrorCode::NotGlobalOperator: return "NotGlobalOperator";
        case ErrorCode::SystemMismatch: return "SystemMismatch";
        case ErrorCode::BasisMismatch: return "BasisMismatch";
        case ErrorCode::CompatibilityViolation: return "CompatibilityViolation";
        case ErrorCode::NotOrthonormal: return "NotOrthonormal";
        case ErrorCode::AnchorMismatch: return "AnchorMismatch";
        case ErrorCode::SizeBoundExceeded: return "SizeBoundExceeded";
        case ErrorCode::ScenarioPreconditionFailed: return "ScenarioPreconditionFailed";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

SystemLattice::SystemLattice(Private, std::vector<AtomSpec> atoms) : atoms_(std::move(atoms)) {
    full_mask_ = atoms_.size() >= 32 ? ~0u : ((1u << atoms_.size()) - 1u);
}

LatticePtr SystemLattice::create(std::vector<AtomSpec> atoms, std::size_t max_dimension) {
    if (atoms.empty()) {
        throw Error(ErrorCode::ValidationError, "a lattice needs at least one atom");
    }
    if (atoms.size() > kMaxAtoms) {
        throw Error(ErrorCode::SizeBoundExceeded,
                    "lattice has " + std::to_string(atoms.size()) + " atoms, limit is " +
                        std::to_string(kMaxAtoms));
    }
    std::sort(atoms.begin(), atoms.end(), [](const AtomSpec &a, const AtomSpec &b) { return a.id < b.id; });
    std::size_t total = 1;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        if (atoms[k].id != k) {
            throw Error(ErrorCode::ValidationError, "atom ids must be unique and contiguous from 0");
        }
        if (atoms[k].dim < 2) {
            throw Error(ErrorCode::ValidationError,
                        "atom " + std::to_string(k) + " has dimension " + std::to_string(atoms[k].dim) +
                            "; atoms need dimension >= 2");
        }
        if (total > max_dimension / atoms[k].dim) {
            throw Error(ErrorCode::SizeBoundExceeded,
                        "global dimension exceeds limit " + std::to_string(max_dimension));
        }
        total *= atoms[k].dim;
    }
    return std::make_shared<const SystemLattice>(Private{}, std::move(atoms));
}

LatticePtr SystemLattice::from_dims(const std::vector<std::size_t> &dims, std::size_t max_dimension) {
    std::vector<AtomSpec> atoms;
    atoms.reserve(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) {
        atoms.push_back(AtomSpec{k, dims[k], std::nullopt});
    }
    return create(std::move(atoms), max_dimension);
}

System SystemLattice::empty() const { return System(shared_from_this(), 0); }
System SystemLattice::global() const { return System(shared_from_this(), full_mask_); }

System SystemLattice::atom(std::size_t id) const {
    if (id >= atoms_.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "no atom with id " + std::to_string(id));
    }
    return System(shared_from_this(), 1u << id);
}

System SystemLattice::system(std::initializer_list<std::size_t> ids) const {
    return system_from_ids(std::vector<std::size_t>(ids));
}

System SystemLattice::system_from_ids(const std::vector<std::size_t> &ids) const {
    std::uint32_t mask = 0;
    for (std::size_t id : ids) {
        mask |= atom(id).mask();
    }
    return System(shared_from_this(), mask);
}

System SystemLattice::system_from_mask(std::uint32_t mask) const {
    if ((mask & ~full_mask_) != 0) {
        throw Error(ErrorCode::IndexOutOfRange, "mask references atoms outside the lattice");
    }
    return System(shared_from_this(), mask);
}

bool SystemLattice::same_as(const SystemLattice &other) const {
    return this == &other || atoms_ == other.atoms_;
}

System::System(LatticePtr lattice, std::uint32_t mask) : lattice_(std::move(lattice)), mask_(mask) {}

std::vector<std::size_t> System::atom_ids() const {
    std::vector<std::size_t> ids;
    for (std::uint32_t m = mask_; m != 0; m &= m - 1) {
        ids.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    }
    return ids;
}

std::vector<std::size_t> System::atom_dims() const {
    std::vector<std::size_t> dims;
    for (std::size_t id : atom_ids()) {
        dims.push_back(lattice_->atom_dim(id));
    }
    return dims;
}

std::size_t System::dimension() const {
    std::size_t d = 1;
    for (std::size_t id : atom_ids()) {
        d *= lattice_->atom_dim(id);
    }
    return d;
}

std::vector<System> System::atomic_decomposition() const {
    std::vector<System> parts;
    for (std::size_t id : atom_ids()) {
        parts.emplace_back(lattice_, 1u << id);
    }
    return parts;
}

std::string System::to_string() const {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (std::size_t id : atom_ids()) {
        if (!first) out << ',';
        out << id;
        first = false;
    }
    out << '}';
    return out.str();
}

bool System::operator==(const System &other) const {
    return mask_ == other.mask_ && lattice_->same_as(*other.lattice_);
}

void require_same_lattice(const System &a, const System &b) {
    if (!a.lattice()->same_as(*b.lattice())) {
        throw Error(ErrorCode::LatticeMismatch, "systems " + a.to_string() + " and " + b.to_string() +
                                                    " belong to different lattices");
    }
}

System union_of(const System &a, const System &b) {
    require_same_lattice(a, b);
    return System(a.lattice(), a.mask() | b.mask());
}

System intersection(const System &a, const System &b) {
    require_same_lattice(a, b);
    return System(a.lattice(), a.mask() & b.mask());
}

System complement(const System &a) { return System(a.lattice(), a.lattice()->full_mask() & ~a.mask()); }

bool is_subsystem(const System &b, const System &a) { return intersection(a, b) == b; }

bool are_disjoint(const System &a, const System &b) { return intersection(a, b).is_empty(); }

std::size_t dimension(const System &a) { return a.dimension(); }

std::vector<std::size_t> parse_atom_dims(const std::string &text) {
    std::vector<std::size_t> dims;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, 'x')) {
        if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw Error(ErrorCode::ParseError, "bad atom dimension list '" + text + "'");
        }
        try {
            dims.push_back(std::stoul(part));
        } catch (const std::out_of_range &) {
            throw Error(ErrorCode::ParseError, "atom dimension '" + part + "' is too large");
        }
    }
    if (!text.empty() && text.back() == 'x') {
        throw Error(ErrorCode::ParseError, "bad atom dimension list '" + text + "'");
    }
    if (dims.empty()) {
        throw Error(ErrorCode::ParseError, "empty atom dimension list");
    }
    return dims;
}

System parse_system(const LatticePtr &lattice, const std::string &text) {
    std::vector<std::size_t> ids;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        part.erase(std::remove_if(part.begin(), part.end(), [](char c) { return c == ' '; }), part.end());
        if (part.empty()) continue;
        if (!std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw Error(ErrorCode::ParseError, "bad atom id '" + part + "' in '" + text + "'");
        }
        try {
            ids.push_back(std::stoul(part));
        } catch (const std::out_of_range &) {
            throw Error(ErrorCode::ParseError, "atom id '" + part + "' is too large");
        }
    }
    return lattice->system_from_ids(ids);
}

}  // namespace noumenal
