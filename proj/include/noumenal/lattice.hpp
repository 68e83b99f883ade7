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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace noumenal {

inline constexpr std::size_t kMaxAtoms = 16;
inline constexpr std::size_t kDefaultMaxDimension = 4096;

struct AtomSpec {
    std::size_t id = 0;
    std::size_t dim = 2;
    std::optional<std::string> label;

    bool operator==(const AtomSpec &) const = default;
};

class System;

/// Finite boolean lattice of systems generated by a fixed, totally ordered set
/// of atoms. Every atom carries the dimension of its Hilbert space.
///
/// Immutable after construction. Systems hold a shared pointer to their lattice.
class SystemLattice : public std::enable_shared_from_this<SystemLattice> {
    struct Private {};

  public:
    SystemLattice(Private, std::vector<AtomSpec> atoms);

    /// Validates ids (unique, contiguous from 0), dims (>= 2) and the size
    /// bounds: at most kMaxAtoms atoms and a global dimension of at most
    /// `max_dimension`.
    static std::shared_ptr<const SystemLattice> create(
        std::vector<AtomSpec> atoms, std::size_t max_dimension = kDefaultMaxDimension);

    /// Lattice of unlabelled atoms with the given dims, e.g. {2, 2, 2}.
    static std::shared_ptr<const SystemLattice> from_dims(
        const std::vector<std::size_t> &dims, std::size_t max_dimension = kDefaultMaxDimension);

    const std::vector<AtomSpec> &atoms() const { return atoms_; }
    std::size_t atom_count() const { return atoms_.size(); }
    std::size_t atom_dim(std::size_t atom) const { return atoms_.at(atom).dim; }
    std::uint32_t full_mask() const { return full_mask_; }

    System empty() const;
    System global() const;
    System atom(std::size_t id) const;
    System system(std::initializer_list<std::size_t> ids) const;
    System system_from_ids(const std::vector<std::size_t> &ids) const;
    System system_from_mask(std::uint32_t mask) const;

    /// Same object, or structurally identical atom lists.
    bool same_as(const SystemLattice &other) const;

  private:
    std::vector<AtomSpec> atoms_;
    std::uint32_t full_mask_ = 0;
};

using LatticePtr = std::shared_ptr<const SystemLattice>;

/// A system is a subset of the lattice atoms, stored as a bit set.
class System {
  public:
    System(LatticePtr lattice, std::uint32_t mask);

    const LatticePtr &lattice() const { return lattice_; }
    std::uint32_t mask() const { return mask_; }

    bool is_empty() const { return mask_ == 0; }
    bool is_global() const { return mask_ == lattice_->full_mask(); }
    bool contains_atom(std::size_t id) const { return id < 32 && ((mask_ >> id) & 1u) != 0; }

    /// Atom ids in ascending order.
    std::vector<std::size_t> atom_ids() const;
    /// Per-atom dims, ascending atom order.
    std::vector<std::size_t> atom_dims() const;

    /// Product of atom dims; 1 for the empty system.
    std::size_t dimension() const;

    /// The unique set of atomic systems whose union is this system.
    std::vector<System> atomic_decomposition() const;

    std::string to_string() const;

    bool operator==(const System &other) const;

  private:
    LatticePtr lattice_;
    std::uint32_t mask_;
};

System union_of(const System &a, const System &b);
System intersection(const System &a, const System &b);
System complement(const System &a);
/// True iff `b` is a subsystem of `a`, i.e. a ∩ b = b.
bool is_subsystem(const System &b, const System &a);
bool are_disjoint(const System &a, const System &b);
std::size_t dimension(const System &a);

/// Throws LatticeMismatch unless both systems live on the same lattice.
void require_same_lattice(const System &a, const System &b);

/// Parses "2x2x3" into {2, 2, 3}.
std::vector<std::size_t> parse_atom_dims(const std::string &text);

/// Parses a comma separated atom id list ("0,2"); the empty string is the
/// empty system.
System parse_system(const LatticePtr &lattice, const std::string &text);

}  // namespace noumenal
