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

#include "noumenal/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

#include "noumenal/error.hpp"
#include "noumenal/gates.hpp"
#include "noumenal/mixed.hpp"
#include "noumenal/phenomenal.hpp"

namespace noumenal {

namespace {

constexpr double kFaultSize = 1e-3;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Random inputs for one trial of one law. Everything drawn is recorded so a
/// failing trial can be reported with its inputs.
class Trial {
  public:
    Trial(LatticePtr lattice, std::uint64_t seed, std::size_t law, std::size_t trial, bool inject_fault)
        : lattice_(std::move(lattice)), inject_fault_(inject_fault) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(law), static_cast<std::uint32_t>(trial)};
        rng_.seed(seq);
    }

    Rng &rng() { return rng_; }
    const LatticePtr &lattice() const { return lattice_; }
    System global() const { return lattice_->global(); }

    /// Each atom lands in one of `parts` groups uniformly; group 0 is never
    /// empty and group 1 is non-empty whenever the lattice has two atoms or more.
    std::vector<System> random_partition(std::size_t parts) {
        const std::size_t n = lattice_->atom_count();
        std::uniform_int_distribution<std::size_t> pick(0, parts - 1);
        while (true) {
            std::vector<std::uint32_t> masks(parts, 0);
            for (std::size_t atom = 0; atom < n; ++atom) masks[pick(rng_)] |= 1u << atom;
            if (masks[0] == 0) continue;
            if (n >= 2 && parts >= 2 && masks[1] == 0) continue;
            std::vector<System> out;
            for (std::size_t p = 0; p < parts; ++p) {
                out.push_back(lattice_->system_from_mask(masks[p]));
                note("system_" + std::to_string(p), out.back());
            }
            return out;
        }
    }

    System random_system(const std::string &name) {
        std::uniform_int_distribution<std::uint32_t> pick(0, lattice_->full_mask());
        System s = lattice_->system_from_mask(pick(rng_));
        note(name, s);
        return s;
    }

    UnitaryOperator unitary_on(const System &s, const std::string &name) {
        UnitaryOperator u = haar_random_unitary(s, rng_);
        note(name, u.matrix());
        return u;
    }

    UnitaryOperator global_unitary(const std::string &name) { return unitary_on(global(), name); }

    /// Random V on `s`, embedded into the global system.
    UnitaryOperator embedded_unitary(const System &s, const std::string &name) {
        UnitaryOperator v = unitary_on(s, name);
        return UnitaryOperator(embed_operator(v.matrix(), s), global());
    }

    DensityOperator mixed_state(const System &s, const std::string &name) {
        std::uniform_int_distribution<std::size_t> rank(1, 4);
        DensityOperator rho(random_density_matrix(s.dimension(), rank(rng_), rng_), s);
        note(name, rho.matrix());
        return rho;
    }

    DensityOperator pure_global(const std::string &name) {
        DensityOperator rho = DensityOperator::pure(random_unit_vector(global().dimension(), rng_), global());
        note(name, rho.matrix());
        return rho;
    }

    Basis random_basis(std::size_t dim, const std::string &tag) {
        Basis b(tag, haar_random_matrix(dim, rng_));
        note("basis_" + tag, b.vectors());
        return b;
    }

    /// [W]^A, with the fault perturbation applied when requested.
    EvolutionMatrix state(const UnitaryOperator &w, const System &a) {
        EvolutionMatrix n = from_global_unitary(w, a);
        if (!inject_fault_) return n;
        std::vector<ComplexMatrix> entries = n.grid().entries();
        entries[0](0, 1) += kFaultSize;
        return EvolutionMatrix::assume_valid(OperatorMatrix(n.system(), n.basis_tag(), std::move(entries)));
    }

    EvolutionMatrix state_in(const UnitaryOperator &w, const System &a, const Basis &basis) {
        return from_global_unitary(w, a, basis);
    }

    void note(const std::string &name, const System &s) { systems_.emplace_back(name, s.atom_ids()); }
    void note(const std::string &name, const ComplexMatrix &m) { matrices_.emplace_back(name, m); }

    json inputs() const {
        json out = json::object();
        for (const auto &[name, ids] : systems_) out["systems"][name] = ids;
        for (const auto &[name, m] : matrices_) out["matrices"][name] = matrix_to_json(m);
        return out;
    }

  private:
    LatticePtr lattice_;
    bool inject_fault_;
    Rng rng_;
    std::vector<std::pair<std::string, std::vector<std::size_t>>> systems_;
    std::vector<std::pair<std::string, ComplexMatrix>> matrices_;
};

using TrialFn = std::function<double(Trial &)>;

struct Law {
    LawInfo info;
    TrialFn run;
};

double dist(const EvolutionMatrix &a, const EvolutionMatrix &b) { return noumenal_distance(a, b); }

double boolean_lattice_laws(Trial &t) {
    const System a = t.random_system("A");
    const System b = t.random_system("B");
    const System c = t.random_system("C");
    const System zero = t.lattice()->empty();
    const System top = t.global();
    std::vector<bool> ok{
        union_of(a, union_of(b, c)) == union_of(union_of(a, b), c),
        intersection(a, intersection(b, c)) == intersection(intersection(a, b), c),
        union_of(a, b) == union_of(b, a),
        intersection(a, b) == intersection(b, a),
        union_of(a, intersection(a, b)) == a,
        intersection(a, union_of(a, b)) == a,
        union_of(a, intersection(b, c)) == intersection(union_of(a, b), union_of(a, c)),
        intersection(a, union_of(b, c)) == union_of(intersection(a, b), intersection(a, c)),
        union_of(a, complement(a)) == top,
        intersection(a, complement(a)) == zero,
    };
    System rebuilt = zero;
    for (const auto &part : a.atomic_decomposition()) rebuilt = union_of(rebuilt, part);
    ok.push_back(rebuilt == a);
    const System b_only = intersection(b, complement(a));
    ok.push_back(dimension(union_of(a, b_only)) == dimension(a) * dimension(b_only));
    return std::all_of(ok.begin(), ok.end(), [](bool v) { return v; }) ? 0.0 : 1.0;
}

std::vector<Law> build_laws() {
    std::vector<Law> laws;
    auto add = [&](std::string id, std::string statement, TrialFn fn) {
        laws.push_back(Law{LawInfo{std::move(id), std::move(statement)}, std::move(fn)});
    };

    add("lattice_boolean_algebra", "associativity, commutativity, absorption, distributivity, complementation",
        boolean_lattice_laws);

    add("evolution_adjoint", "[W]^A_ij† = [W]^A_ji", [](Trial &t) {
        const System a = t.random_system("A");
        return consistency_check(t.state(t.global_unitary("W"), a).grid()).adjoint_residual;
    });
    add("evolution_multiplicative", "[W]^A_ij [W]^A_kl = δ_il [W]^A_kj", [](Trial &t) {
        const System a = t.random_system("A");
        return consistency_check(t.state(t.global_unitary("W"), a).grid()).product_residual;
    });
    add("evolution_trace", "Σ_i [W]^A_ii = I^S", [](Trial &t) {
        const System a = t.random_system("A");
        return consistency_check(t.state(t.global_unitary("W"), a).grid()).trace_residual;
    });

    add("noumenal_fundamental", "[W]^A = [(I^A ⊗ V)W]^A", [](Trial &t) {
        const System a = t.random_system("A");
        const auto w = t.global_unitary("W");
        const auto v = t.embedded_unitary(complement(a), "V");
        return dist(t.state(w, a), t.state(UnitaryOperator(v.matrix() * w.matrix(), t.global()), a));
    });

    add("action_fundamental", "U[W]^A = [(U ⊗ I^Ā)W]^A", [](Trial &t) {
        const System a = t.random_system("A");
        const auto w = t.global_unitary("W");
        const auto u = t.unitary_on(a, "U");
        const UnitaryOperator uw(embed_operator(u.matrix(), a) * w.matrix(), t.global());
        return dist(noumenal_action(u, t.state(w, a)), t.state(uw, a));
    });
    add("action_associative", "(VU)[W]^A = V(U[W]^A)", [](Trial &t) {
        const System a = t.random_system("A");
        const auto n = t.state(t.global_unitary("W"), a);
        const auto u = t.unitary_on(a, "U");
        const auto v = t.unitary_on(a, "V");
        return dist(noumenal_action(v.compose(u), n), noumenal_action(v, noumenal_action(u, n)));
    });
    add("action_identity", "I^A[W]^A = [W]^A", [](Trial &t) {
        const System a = t.random_system("A");
        const auto n = t.state(t.global_unitary("W"), a);
        return dist(noumenal_action(UnitaryOperator::identity(a), n), n);
    });

    add("trace_fundamental", "tr_B([W]^AB) = [W]^A", [](Trial &t) {
        const auto parts = t.random_partition(3);
        const auto w = t.global_unitary("W");
        return dist(noumenal_partial_trace(t.state(w, union_of(parts[0], parts[1])), parts[1]), t.state(w, parts[0]));
    });
    add("trace_surjective", "tr_B([(I^A ⊗ V^B)W]^AB) = [W]^A for every V on B", [](Trial &t) {
        const auto parts = t.random_partition(3);
        const auto w = t.global_unitary("W");
        const auto v = t.embedded_unitary(parts[1], "V");
        const UnitaryOperator vw(v.matrix() * w.matrix(), t.global());
        const auto witness = t.state(vw, union_of(parts[0], parts[1]));
        return dist(noumenal_partial_trace(witness, parts[1]), t.state(w, parts[0]));
    });
    add("trace_composition", "tr_BC([W]^ABC) = (tr_B ∘ tr_C)([W]^ABC)", [](Trial &t) {
        const auto parts = t.random_partition(4);
        const System abc = union_of(union_of(parts[0], parts[1]), parts[2]);
        const auto n = t.state(t.global_unitary("W"), abc);
        const auto direct = noumenal_partial_trace(n, union_of(parts[1], parts[2]));
        const auto stepwise = noumenal_partial_trace(noumenal_partial_trace(n, parts[2]), parts[1]);
        return dist(direct, stepwise);
    });

    add("product_fundamental", "[W]^A ⊙ [W]^B = [W]^AB", [](Trial &t) {
        const auto parts = t.random_partition(3);
        const auto w = t.global_unitary("W");
        return dist(noumenal_product(t.state(w, parts[0]), t.state(w, parts[1])),
                    t.state(w, union_of(parts[0], parts[1])));
    });
    add("product_reconstruction", "tr_B(N^AB) ⊙ tr_A(N^AB) = N^AB", [](Trial &t) {
        const auto parts = t.random_partition(3);
        const auto n = t.state(t.global_unitary("W"), union_of(parts[0], parts[1]));
        return dist(noumenal_product(noumenal_partial_trace(n, parts[1]), noumenal_partial_trace(n, parts[0])), n);
    });
    add("product_trace", "tr_B(N^A ⊙ N^B) = N^A and tr_A(N^A ⊙ N^B) = N^B", [](Trial &t) {
        const auto parts = t.random_partition(3);
        const auto n = t.state(t.global_unitary("W"), union_of(parts[0], parts[1]));
        const auto na = noumenal_partial_trace(n, parts[1]);
        const auto nb = noumenal_partial_trace(n, parts[0]);
        const auto joined = noumenal_product(na, nb);
        return worst_of({dist(noumenal_partial_trace(joined, parts[1]), na),
                         dist(noumenal_partial_trace(joined, parts[0]), nb)});
    });
    add("unique_decomposition", "N1^A ⊙ N1^B = N2^A ⊙ N2^B implies N1^A = N2^A and N1^B = N2^B", [](Trial &t) {
        // W and W' = (I^AB ⊗ V)W share [·]^AB but are different operators.
        const auto parts = t.random_partition(3);
        const System ab = union_of(parts[0], parts[1]);
        const auto w = t.global_unitary("W");
        const auto v = t.embedded_unitary(complement(ab), "V");
        const UnitaryOperator w2(v.matrix() * w.matrix(), t.global());
        const auto p1 = noumenal_product(t.state(w, parts[0]), t.state(w, parts[1]));
        const auto p2 = noumenal_product(t.state(w2, parts[0]), t.state(w2, parts[1]));
        // Factors recovered from each product through the noumenal traces.
        const double products = dist(p1, p2);
        const double a_factors = dist(noumenal_partial_trace(p1, parts[1]), noumenal_partial_trace(p2, parts[1]));
        const double b_factors = dist(noumenal_partial_trace(p1, parts[0]), noumenal_partial_trace(p2, parts[0]));
        const double direct = worst_of({dist(t.state(w, parts[0]), t.state(w2, parts[0])),
                                        dist(t.state(w, parts[1]), t.state(w2, parts[1]))});
        return worst_of({products, a_factors, b_factors, direct});
    });
    add("unique_factorization", "N^AB = N^A ⊙ N^B for exactly one pair (N^A, N^B)", [](Trial &t) {
        const auto parts = t.random_partition(3);
        const auto w = t.global_unitary("W");
        const auto n = t.state(w, union_of(parts[0], parts[1]));
        const auto na = noumenal_partial_trace(n, parts[1]);
        const auto nb = noumenal_partial_trace(n, parts[0]);
        const double existence = dist(noumenal_product(na, nb), n);
        const double uniqueness = worst_of({dist(na, t.state(w, parts[0])), dist(nb, t.state(w, parts[1]))});
        return worst_of({existence, uniqueness});
    });
    add("product_of_operations", "(U ⊗ V)([W]^A ⊙ [W]^B) = U[W]^A ⊙ V[W]^B", [](Trial &t) {
        const auto parts = t.random_partition(3);
        const auto w = t.global_unitary("W");
        const auto u = t.unitary_on(parts[0], "U");
        const auto v = t.unitary_on(parts[1], "V");
        const auto na = t.state(w, parts[0]);
        const auto nb = t.state(w, parts[1]);
        const auto lhs = noumenal_action(tensor_product(u, v), noumenal_product(na, nb));
        const auto rhs = noumenal_product(noumenal_action(u, na), noumenal_action(v, nb));
        // Also against the global route [(U ⊗ V ⊗ I)W]^AB.
        const System ab = union_of(parts[0], parts[1]);
        const UnitaryOperator uvw(embed_operator(tensor_product(u, v).matrix(), ab) * w.matrix(), t.global());
        return worst_of({dist(lhs, rhs), dist(lhs, t.state(uvw, ab))});
    });

    add("no_action_at_a_distance", "tr_B((U × V)N^AB) = U tr_B(N^AB)", [](Trial &t) {
        const auto parts = t.random_partition(3);
        const auto n = t.state(t.global_unitary("W"), union_of(parts[0], parts[1]));
        const auto u = t.unitary_on(parts[0], "U");
        const auto v = t.unitary_on(parts[1], "V");
        return dist(noumenal_partial_trace(noumenal_action(tensor_product(u, v), n), parts[1]),
                    noumenal_action(u, noumenal_partial_trace(n, parts[1])));
    });
    add("no_signalling", "tr_B((U × V)·ρ^AB) = U·tr_B(ρ^AB)", [](Trial &t) {
        const auto parts = t.random_partition(3);
        const System ab = union_of(parts[0], parts[1]);
        const auto rho = t.mixed_state(ab, "rho_AB");
        const auto u = t.unitary_on(parts[0], "U");
        const auto v = t.unitary_on(parts[1], "V");
        const auto lhs = phenomenal_partial_trace(phenomenal_action(tensor_product(u, v), rho), parts[1]);
        const auto rhs = phenomenal_action(u, phenomenal_partial_trace(rho, parts[1]));
        return max_abs_diff(lhs.matrix(), rhs.matrix());
    });

    add("phi_fundamental", "φ_ρ([W]^A) = tr_Ā(W·ρ)", [](Trial &t) {
        const System a = t.random_system("A");
        const auto w = t.global_unitary("W");
        const auto rho = t.mixed_state(t.global(), "rho");
        const ComplexMatrix evolved = w.matrix() * rho.matrix() * w.matrix().adjoint();
        return max_abs_diff(phi_matrix(rho, t.state(w, a)), partial_trace(evolved, t.global(), complement(a)));
    });
    add("phi_equivariance", "U·φ_ρ([W]^A) = φ_ρ(U[W]^A)", [](Trial &t) {
        const System a = t.random_system("A");
        const auto n = t.state(t.global_unitary("W"), a);
        const auto rho = t.mixed_state(t.global(), "rho");
        return homomorphism_law_check(rho, t.unitary_on(a, "U"), n);
    });
    add("phi_trace_relation", "tr_B(φ_ρ([W]^AB)) = φ_ρ(tr_B([W]^AB))", [](Trial &t) {
        const auto parts = t.random_partition(3);
        const auto n = t.state(t.global_unitary("W"), union_of(parts[0], parts[1]));
        const auto rho = t.mixed_state(t.global(), "rho");
        return trace_relation_check(rho, n, parts[1]);
    });
    add("phi_pure_image", "pure ρ: φ_ρ([W]^A) = tr_Ā(|Wτ⟩⟨Wτ|)", [](Trial &t) {
        const System a = t.random_system("A");
        const auto w = t.global_unitary("W");
        const PureGlobalState rho(t.pure_global("rho"));
        const ComplexVector evolved = w.matrix() * rho.vector();
        const ComplexMatrix projector = evolved * evolved.adjoint();
        const double purity = std::abs((projector * projector).trace().real() - 1.0);
        const double image =
            max_abs_diff(phi_matrix(rho.state(), t.state(w, a)), partial_trace(projector, t.global(), complement(a)));
        return worst_of({purity, image});
    });
    add("pure_surjectivity", "every ρ^A of rank ≤ dim Ā equals φ_ρ([W]^A) for some W", [](Trial &t) {
        const System a = t.random_system("A");
        const PureGlobalState rho(t.pure_global("rho"));
        const auto source = t.pure_global("tau");
        const DensityOperator target = phenomenal_partial_trace(source, complement(a));
        const auto w = pure_surjectivity_witness(rho, target);
        t.note("W_witness", w.matrix());
        return max_abs_diff(phi_matrix(rho.state(), t.state(w, a)), target.matrix());
    });
    add("mixed_surjectivity", "φ^A([I^S]^A, ρ^A ⊗ I/dim Ā) = ρ^A", [](Trial &t) {
        const System a = t.random_system("A");
        const auto target = t.mixed_state(a, "rho_A");
        const auto witness = mixed_surjectivity_witness(target);
        return max_abs_diff(phi_matrix(witness.anchor(), witness.noumenal()), target.matrix());
    });

    add("ext_reconstruction", "tr'_B(N^AB, ρ) ⊙' tr'_A(N^AB, ρ) = (N^AB, ρ)", [](Trial &t) {
        const auto parts = t.random_partition(3);
        const ExtendedNoumenalState s(t.state(t.global_unitary("W"), union_of(parts[0], parts[1])),
                                      t.mixed_state(t.global(), "rho"));
        const auto joined = ext_product(ext_trace(s, parts[1]), ext_trace(s, parts[0]));
        return worst_of({dist(joined.noumenal(), s.noumenal()),
                         max_abs_diff(joined.anchor().matrix(), s.anchor().matrix())});
    });
    add("ext_trace_relation", "tr_B(φ^AB(N^AB, ρ)) = φ^A(tr'_B(N^AB, ρ))", [](Trial &t) {
        const auto parts = t.random_partition(3);
        const ExtendedNoumenalState s(t.state(t.global_unitary("W"), union_of(parts[0], parts[1])),
                                      t.mixed_state(t.global(), "rho"));
        const auto traced = ext_trace(s, parts[1]);
        return max_abs_diff(partial_trace(phi_matrix(s.anchor(), s.noumenal()), s.system(), parts[1]),
                            phi_matrix(traced.anchor(), traced.noumenal()));
    });
    add("ext_equivariance", "U·φ^A(N, ρ) = φ^A(U(N, ρ)), anchor unchanged", [](Trial &t) {
        const System a = t.random_system("A");
        const ExtendedNoumenalState s(t.state(t.global_unitary("W"), a), t.mixed_state(t.global(), "rho"));
        const auto u = t.unitary_on(a, "U");
        const auto acted = ext_action(u, s);
        const ComplexMatrix lhs = u.matrix() * phi_matrix(s.anchor(), s.noumenal()) * u.matrix().adjoint();
        return worst_of({max_abs_diff(lhs, phi_matrix(acted.anchor(), acted.noumenal())),
                         max_abs_diff(acted.anchor().matrix(), s.anchor().matrix())});
    });

    add("basis_relation", "B2 ← B1([W]^A_B1) = [W]^A_B2", [](Trial &t) {
        const System a = t.random_system("A");
        const auto w = t.global_unitary("W");
        const Basis canonical = Basis::canonical(a.dimension());
        const Basis b2 = t.random_basis(a.dimension(), "B2");
        return dist(change_of_basis(t.state(w, a), canonical, b2), t.state_in(w, a, b2));
    });
    add("basis_identity", "B1 ← B1 is the identity", [](Trial &t) {
        const System a = t.random_system("A");
        const Basis b1 = t.random_basis(a.dimension(), "B1");
        const auto n = t.state_in(t.global_unitary("W"), a, b1);
        return dist(change_of_basis(n, b1, b1), n);
    });
    add("basis_composition", "(B3 ← B2) ∘ (B2 ← B1) = B3 ← B1", [](Trial &t) {
        const System a = t.random_system("A");
        const Basis b1 = t.random_basis(a.dimension(), "B1");
        const Basis b2 = t.random_basis(a.dimension(), "B2");
        const Basis b3 = t.random_basis(a.dimension(), "B3");
        const auto n = t.state_in(t.global_unitary("W"), a, b1);
        return dist(change_of_basis(change_of_basis(n, b1, b2), b2, b3), change_of_basis(n, b1, b3));
    });
    add("basis_bijection", "B2 ← B1 and B1 ← B2 are mutually inverse", [](Trial &t) {
        const System a = t.random_system("A");
        const Basis b1 = t.random_basis(a.dimension(), "B1");
        const Basis b2 = t.random_basis(a.dimension(), "B2");
        const auto w = t.global_unitary("W");
        const auto n1 = t.state_in(w, a, b1);
        const auto m2 = t.state_in(t.global_unitary("W2"), a, b2);
        return worst_of({dist(change_of_basis(change_of_basis(n1, b1, b2), b2, b1), n1),
                         dist(change_of_basis(change_of_basis(m2, b2, b1), b1, b2), m2)});
    });

    return laws;
}

const std::vector<Law> &laws() {
    static const std::vector<Law> all = build_laws();
    return all;
}

std::string format_residual(double v) {
    std::ostringstream out;
    out << std::scientific << std::setprecision(3) << v;
    return out.str();
}

}  // namespace

std::string_view law_status_name(LawStatus status) {
    switch (status) {
        case LawStatus::Passed: return "passed";
        case LawStatus::Failed: return "failed";
        case LawStatus::Skipped: return "skipped";
    }
    return "unknown";
}

const std::vector<LawInfo> &law_registry() {
    static const std::vector<LawInfo> infos = [] {
        std::vector<LawInfo> out;
        for (const auto &law : laws()) out.push_back(law.info);
        return out;
    }();
    return infos;
}

std::vector<LawReport> run_law_suite(const LatticePtr &lattice, const LawSuiteOptions &options) {
    const std::size_t global_dim = lattice->global().dimension();
    if (global_dim > options.max_dimension) {
        throw Error(ErrorCode::SizeBoundExceeded, "law suite supports global dimension up to " +
                                                      std::to_string(options.max_dimension) + ", lattice has " +
                                                      std::to_string(global_dim));
    }
    std::vector<LawReport> reports;
    const auto &all = laws();
    for (std::size_t law_index = 0; law_index < all.size(); ++law_index) {
        const Law &law = all[law_index];
        LawReport report;
        report.law_id = law.info.id;
        report.statement = law.info.statement;
        report.trials = options.trials;
        report.seed = options.seed;
        if (options.trials == 0) {
            report.status = LawStatus::Skipped;
            reports.push_back(std::move(report));
            continue;
        }
        double worst_failure = -1.0;
        for (std::size_t trial = 0; trial < options.trials; ++trial) {
            Trial t(lattice, options.seed, law_index, trial, options.inject_fault);
            double residual;
            std::optional<std::string> error;
            try {
                residual = law.run(t);
            } catch (const std::exception &e) {
                residual = kInf;
                error = e.what();
            }
            if (std::isnan(residual)) residual = kInf;
            report.max_residual = worst_of({report.max_residual, residual});
            if (residual > options.tol.eq && residual > worst_failure) {
                worst_failure = residual;
                json ce = t.inputs();
                ce["trial"] = trial;
                ce["residual"] = number_to_json(residual);
                if (error) ce["error"] = *error;
                report.counterexample = std::move(ce);
            }
        }
        report.status = report.max_residual <= options.tol.eq ? LawStatus::Passed : LawStatus::Failed;
        reports.push_back(std::move(report));
    }
    return reports;
}

bool all_passed(const std::vector<LawReport> &reports) {
    return std::all_of(reports.begin(), reports.end(), [](const LawReport &r) { return r.passed(); });
}

json law_report_to_json(const LawReport &report) {
    json j{{"law_id", report.law_id},
           {"statement", report.statement},
           {"trials", report.trials},
           {"max_residual", number_to_json(report.max_residual)},
           {"status", std::string(law_status_name(report.status))},
           {"seed", report.seed}};
    if (report.counterexample) j["counterexample"] = *report.counterexample;
    return j;
}

LawReport law_report_from_json(const json &j) {
    try {
        LawReport r;
        r.law_id = j.at("law_id").get<std::string>();
        r.statement = j.at("statement").get<std::string>();
        r.trials = j.at("trials").get<std::size_t>();
        r.max_residual = number_from_json(j.at("max_residual"));
        const auto status = j.at("status").get<std::string>();
        if (status == "passed") {
            r.status = LawStatus::Passed;
        } else if (status == "failed") {
            r.status = LawStatus::Failed;
        } else if (status == "skipped") {
            r.status = LawStatus::Skipped;
        } else {
            throw Error(ErrorCode::ParseError, "unknown law status '" + status + "'");
        }
        r.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("counterexample")) r.counterexample = j.at("counterexample");
        return r;
    } catch (const json::exception &e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

json law_suite_to_json(const SystemLattice &lattice, const LawSuiteOptions &options,
                       const std::vector<LawReport> &reports) {
    json laws_json = json::array();
    for (const auto &r : reports) laws_json.push_back(law_report_to_json(r));
    return json{{"command", "verify"},
                {"lattice", lattice_to_json(lattice)},
                {"seed", options.seed},
                {"trials", options.trials},
                {"tolerance", options.tol.eq},
                {"fault_injected", options.inject_fault},
                {"laws", std::move(laws_json)},
                {"passed", all_passed(reports)}};
}

std::string law_suite_to_text(const SystemLattice &lattice, const LawSuiteOptions &options,
                              const std::vector<LawReport> &reports) {
    std::ostringstream out;
    std::size_t width = 6;
    for (const auto &r : reports) width = std::max(width, r.law_id.size());
    out << "lattice dims:";
    for (const auto &a : lattice.atoms()) out << ' ' << a.dim;
    out << "   trials: " << options.trials << "   seed: " << options.seed << "   tol: " << options.tol.eq << '\n';
    out << std::left << std::setw(static_cast<int>(width)) << "law" << "  " << std::setw(8) << "status" << "  "
        << std::setw(10) << "residual" << "  statement\n";
    for (const auto &r : reports) {
        out << std::left << std::setw(static_cast<int>(width)) << r.law_id << "  " << std::setw(8)
            << law_status_name(r.status) << "  " << std::setw(10)
            << (r.status == LawStatus::Skipped ? std::string("-") : format_residual(r.max_residual)) << "  "
            << r.statement << '\n';
    }
    out << (all_passed(reports) ? "all laws passed" : "LAW FAILURES") << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// ScenarioResult

bool ScenarioResult::passed() const {
    return std::all_of(findings.begin(), findings.end(), [](const Finding &f) { return f.verdict(); });
}

const Finding &ScenarioResult::finding(const std::string &id) const {
    for (const auto &f : findings) {
        if (f.id == id) return f;
    }
    throw Error(ErrorCode::IndexOutOfRange, "no finding '" + id + "'");
}

const ComplexMatrix &ScenarioResult::matrix(const std::string &name) const {
    for (const auto &[n, m] : matrices) {
        if (n == name) return m;
    }
    throw Error(ErrorCode::IndexOutOfRange, "no matrix '" + name + "'");
}

const EvolutionMatrix &ScenarioResult::noumenal_state(const std::string &name) const {
    for (const auto &[n, m] : noumenal_states) {
        if (n == name) return m;
    }
    throw Error(ErrorCode::IndexOutOfRange, "no noumenal state '" + name + "'");
}

json scenario_to_json(const ScenarioResult &result) {
    json findings = json::array();
    for (const auto &f : result.findings) {
        findings.push_back({{"id", f.id},
                            {"description", f.description},
                            {"measured", number_to_json(f.measured)},
                            {"threshold", f.threshold},
                            {"comparison", f.comparison == Comparison::AtMost ? "<=" : ">="},
                            {"verdict", f.verdict()}});
    }
    json matrices = json::object();
    for (const auto &[name, m] : result.matrices) matrices[name] = matrix_to_json(m);
    json states = json::object();
    for (const auto &[name, n] : result.noumenal_states) states[name] = evolution_to_json(n);
    return json{{"scenario_id", result.scenario_id},
                {"findings", std::move(findings)},
                {"matrices", std::move(matrices)},
                {"noumenal_states", std::move(states)},
                {"summary", result.summary},
                {"passed", result.passed()}};
}

std::string scenario_to_text(const ScenarioResult &result) {
    std::ostringstream out;
    out << "scenario: " << result.scenario_id << '\n';
    std::size_t width = 2;
    for (const auto &f : result.findings) width = std::max(width, f.id.size());
    for (const auto &f : result.findings) {
        out << "  " << std::left << std::setw(static_cast<int>(width)) << f.id << "  "
            << (f.verdict() ? "true " : "FALSE") << "  " << std::setw(10) << format_residual(f.measured) << ' '
            << (f.comparison == Comparison::AtMost ? "<= " : ">= ") << format_residual(f.threshold) << "  "
            << f.description << '\n';
    }
    for (const auto &line : result.summary) out << "  " << line << '\n';
    out << (result.passed() ? "all verdicts hold" : "VERDICT FAILURES") << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Bell-state demonstration

ScenarioResult bell_incompleteness_demo(const LatticePtr &lattice, const BellDemoOptions &options) {
    if (lattice->atom_count() != 2 || lattice->atom_dim(0) != 2 || lattice->atom_dim(1) != 2) {
        throw Error(ErrorCode::ScenarioPreconditionFailed, "the Bell demonstration needs exactly two qubit atoms");
    }
    const std::size_t atom_a = options.swap_roles ? 1 : 0;
    const std::size_t atom_b = options.swap_roles ? 0 : 1;
    const System a = lattice->atom(atom_a);
    const System b = lattice->atom(atom_b);
    const System ab = lattice->global();

    const ComplexMatrix x = *named_gate("X");
    const ComplexMatrix h = *named_gate("H");
    const ComplexMatrix id2 = identity_matrix(2);
    // Circuits are written over (A, B) and reordered into canonical atom order.
    const std::vector<std::size_t> order{atom_a, atom_b};
    auto over_ab = [&](const ComplexMatrix &m) { return to_canonical_order(m, order, lattice); };

    const ComplexMatrix w_psi = kron(id2, x) * (*named_gate("CNOT")) * kron(h, id2);
    const UnitaryOperator w(over_ab(w_psi), ab);
    const DensityOperator anchor = DensityOperator::basis_state(0, ab);

    const double r = 1.0 / std::sqrt(2.0);
    ComplexVector psi_plus = ComplexVector::Zero(4);
    psi_plus(1) = r;  // |01⟩
    psi_plus(2) = r;  // |10⟩
    ComplexVector phi_plus = ComplexVector::Zero(4);
    phi_plus(0) = r;
    phi_plus(3) = r;
    const ComplexMatrix psi_proj = over_ab(psi_plus * psi_plus.adjoint());
    const ComplexMatrix phi_proj = over_ab(phi_plus * phi_plus.adjoint());
    const ComplexMatrix half_identity = 0.5 * identity_matrix(2);

    const EvolutionMatrix n_ab = from_global_unitary(w, ab);
    const EvolutionMatrix n_a = noumenal_partial_trace(n_ab, b);
    const EvolutionMatrix n_b = noumenal_partial_trace(n_ab, a);

    const UnitaryOperator x_a(x, a);
    const UnitaryOperator x_b(x, b);
    const UnitaryOperator x_i = tensor_product(x_a, UnitaryOperator::identity(b));
    const UnitaryOperator x_x = tensor_product(x_a, x_b);

    const EvolutionMatrix x_n_a = noumenal_action(x_a, n_a);
    const EvolutionMatrix x_n_b = noumenal_action(x_b, n_b);
    const EvolutionMatrix xi_n_ab = noumenal_action(x_i, n_ab);
    const EvolutionMatrix xx_n_ab = noumenal_action(x_x, n_ab);

    const ComplexMatrix phi_ab_psi = phi_matrix(anchor, n_ab);
    const ComplexMatrix phi_a_psi = phi_matrix(anchor, n_a);
    const ComplexMatrix phi_a_x_psi = phi_matrix(anchor, x_n_a);
    const ComplexMatrix phi_ab_xx = phi_matrix(anchor, xx_n_ab);
    const ComplexMatrix phi_ab_xi = phi_matrix(anchor, xi_n_ab);

    ScenarioResult result;
    result.scenario_id = "bell-incompleteness";
    const double tol = options.tol_eq;
    auto at_most = [&](std::string id, std::string what, double measured, double threshold) {
        result.findings.push_back(Finding{std::move(id), std::move(what), measured, threshold, Comparison::AtMost});
    };
    auto at_least = [&](std::string id, std::string what, double measured, double threshold) {
        result.findings.push_back(Finding{std::move(id), std::move(what), measured, threshold, Comparison::AtLeast});
    };

    at_most("setup.factorization", "<Psi+>^AB = <Psi+>^A (.) <Psi+>^B",
            noumenal_distance(noumenal_product(n_a, n_b), n_ab), tol);
    at_most("a.phi_AB_is_psi_plus", "phi^AB(<Psi+>^AB) = |Psi+><Psi+|", max_abs_diff(phi_ab_psi, psi_proj), tol);
    at_most("b.phi_A_half_identity", "phi^A(<Psi+>^A) = I/2", max_abs_diff(phi_a_psi, half_identity),
            options.tol_half_identity);
    at_most("b.phi_A_x_half_identity", "phi^A(X<Psi+>^A) = I/2", max_abs_diff(phi_a_x_psi, half_identity),
            options.tol_half_identity);
    at_least("c.noumenal_A_distinct", "<Psi+>^A != X<Psi+>^A (entrywise margin)", noumenal_margin(n_a, x_n_a),
             options.margin);
    at_least("d.noumenal_AB_distinct", "<Psi+>^AB != (X(x)X)<Psi+>^AB (entrywise margin)",
             noumenal_margin(n_ab, xx_n_ab), options.margin);
    at_most("d.phenomenal_AB_equal", "phi^AB((X(x)X)<Psi+>^AB) = phi^AB(<Psi+>^AB)",
            max_abs_diff(phi_ab_xx, phi_ab_psi), tol);
    at_most("d.xx_factorization", "(X(x)X)<Psi+>^AB = X<Psi+>^A (.) X<Psi+>^B",
            noumenal_distance(noumenal_product(x_n_a, x_n_b), xx_n_ab), tol);
    at_most("e.phi_AB_is_phi_plus", "phi^AB((X(x)I)<Psi+>^AB) = |Phi+><Phi+|", max_abs_diff(phi_ab_xi, phi_proj), tol);
    at_least("e.phi_plus_differs", "|Phi+><Phi+| != |Psi+><Psi+|", max_abs_diff(phi_proj, psi_proj), options.margin);
    at_most("e.phi_plus_factorization", "<Phi+>^AB = X<Psi+>^A (.) <Psi+>^B",
            noumenal_distance(noumenal_product(x_n_a, n_b), xi_n_ab), tol);

    if (options.hadamard_basis) {
        const Basis can_a = Basis::canonical(2);
        const Basis had_a("hadamard", h);
        const Basis can_ab = Basis::canonical(4);
        const Basis had_ab("hadamard", kron(h, h));
        const EvolutionMatrix h_n_a = change_of_basis(n_a, can_a, had_a);
        const EvolutionMatrix h_x_n_a = change_of_basis(x_n_a, can_a, had_a);
        // X becomes Z here, which fixes the diagonal positions, so distinctness
        // is measured by the largest entry difference.
        at_least("h.noumenal_A_distinct", "<Psi+>^A != X<Psi+>^A in the Hadamard basis (max entry difference)",
                 noumenal_distance(h_n_a, h_x_n_a), options.margin);
        at_least("h.noumenal_AB_distinct",
                 "<Psi+>^AB != (X(x)X)<Psi+>^AB in the Hadamard basis (max entry difference)",
                 noumenal_distance(change_of_basis(n_ab, can_ab, had_ab), change_of_basis(xx_n_ab, can_ab, had_ab)),
                 options.margin);
        const UnitaryOperator z_had(h * x * h, a, kTolUnitary, "hadamard");
        at_most("h.action_covariance", "H<-C(X<Psi+>^A) = Z (H<-C(<Psi+>^A))",
                noumenal_distance(h_x_n_a, noumenal_action(z_had, h_n_a)), tol);
        at_most("h.round_trip", "C<-H(H<-C(<Psi+>^A)) = <Psi+>^A",
                noumenal_distance(change_of_basis(h_n_a, had_a, can_a), n_a), tol);
    }

    result.matrices = {{"psi_plus", psi_proj},         {"phi_plus", phi_proj},
                       {"half_identity", half_identity}, {"phi_AB(psi)", phi_ab_psi},
                       {"phi_A(psi)", phi_a_psi},         {"phi_A(X psi)", phi_a_x_psi},
                       {"phi_AB(XX psi)", phi_ab_xx},     {"phi_AB(XI psi)", phi_ab_xi}};
    result.noumenal_states = {{"psi_AB", n_ab},       {"psi_A", n_a},         {"psi_B", n_b},
                              {"X psi_A", x_n_a},     {"X psi_B", x_n_b},     {"XI psi_AB", xi_n_ab},
                              {"XX psi_AB", xx_n_ab}};
    result.summary = {
        "A = atom " + std::to_string(atom_a) + ", B = atom " + std::to_string(atom_b) +
            ", W = (I(x)X) CNOT (H(x)I), anchor |00><00|",
        "X on A changes the noumenal state of A but leaves phi^A at I/2: phi^A is not injective",
        "X(x)X changes the noumenal state of AB but leaves phi^AB at |Psi+><Psi+|: phi^AB is not injective",
        "X(x)I maps |Psi+><Psi+| to |Phi+><Phi+|, so the density operator of A cannot be its complete state",
    };
    return result;
}

// ---------------------------------------------------------------------------
// No-signalling demonstration

ScenarioResult no_signalling_demo(const LatticePtr &lattice, const NoSignallingOptions &options) {
    if (lattice->atom_count() < 2) {
        throw Error(ErrorCode::ScenarioPreconditionFailed, "no-signalling needs at least two atoms");
    }
    if (lattice->global().dimension() > options.max_dimension) {
        throw Error(ErrorCode::SizeBoundExceeded, "no-signalling demo supports global dimension up to " +
                                                      std::to_string(options.max_dimension));
    }
    const System a = options.a_sys.value_or(lattice->atom(0));
    const System b = options.b_sys.value_or(complement(a));
    require_same_lattice(a, lattice->global());
    require_same_lattice(b, lattice->global());
    if (a.is_empty() || b.is_empty() || !are_disjoint(a, b)) {
        throw Error(ErrorCode::ScenarioPreconditionFailed, "A and B must be non-empty and disjoint");
    }
    const System ab = union_of(a, b);
    const System global = lattice->global();

    double worst_phen = -1.0, worst_noum = -1.0;
    ComplexMatrix phen_lhs, phen_rhs;
    std::optional<EvolutionMatrix> noum_lhs, noum_rhs;
    for (std::size_t trial = 0; trial < options.trials; ++trial) {
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                          static_cast<std::uint32_t>(trial)};
        Rng rng(seq);
        const UnitaryOperator u = haar_random_unitary(a, rng);
        const UnitaryOperator v = options.identity_remote ? UnitaryOperator::identity(b) : haar_random_unitary(b, rng);
        const UnitaryOperator uv = tensor_product(u, v);
        const UnitaryOperator w = haar_random_unitary(global, rng);
        std::uniform_int_distribution<std::size_t> rank(1, 4);
        const DensityOperator rho(random_density_matrix(ab.dimension(), rank(rng), rng), ab);

        const DensityOperator p_lhs = phenomenal_partial_trace(phenomenal_action(uv, rho), b);
        const DensityOperator p_rhs = phenomenal_action(u, phenomenal_partial_trace(rho, b));
        const double phen = max_abs_diff(p_lhs.matrix(), p_rhs.matrix());
        if (phen > worst_phen) {
            worst_phen = phen;
            phen_lhs = p_lhs.matrix();
            phen_rhs = p_rhs.matrix();
        }

        const EvolutionMatrix n = from_global_unitary(w, ab);
        EvolutionMatrix n_lhs = noumenal_partial_trace(noumenal_action(uv, n), b);
        EvolutionMatrix n_rhs = noumenal_action(u, noumenal_partial_trace(n, b));
        const double noum = noumenal_distance(n_lhs, n_rhs);
        if (noum > worst_noum) {
            worst_noum = noum;
            noum_lhs = std::move(n_lhs);
            noum_rhs = std::move(n_rhs);
        }
    }

    ScenarioResult result;
    result.scenario_id = "no-signalling";
    if (options.trials == 0) {
        result.summary.push_back("no trials requested");
        return result;
    }
    result.findings.push_back(Finding{"no_signalling", "tr_B((U x V).rho^AB) = U.tr_B(rho^AB), worst trial",
                                      worst_phen, options.tol_eq, Comparison::AtMost});
    result.findings.push_back(Finding{"no_action_at_a_distance", "tr_B((U x V)N^AB) = U tr_B(N^AB), worst trial",
                                      worst_noum, options.tol_eq, Comparison::AtMost});
    result.matrices = {{"no_signalling.lhs", phen_lhs}, {"no_signalling.rhs", phen_rhs}};
    result.noumenal_states = {{"no_action.lhs", *noum_lhs}, {"no_action.rhs", *noum_rhs}};
    result.summary = {
        "A = " + a.to_string() + ", B = " + b.to_string() + ", trials = " + std::to_string(options.trials) +
            (options.identity_remote ? ", V = I" : ", V Haar random"),
        "operations on B leave both the density operator and the evolution matrix of A unchanged",
    };
    return result;
}

}  // namespace noumenal
