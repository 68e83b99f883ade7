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

#include "noumenal/mixed.hpp"

#include "noumenal/error.hpp"

namespace noumenal {

ExtendedNoumenalState::ExtendedNoumenalState(EvolutionMatrix n, DensityOperator anchor)
    : n_(std::move(n)), anchor_(std::move(anchor)) {
    require_same_lattice(n_.system(), anchor_.system());
    if (!anchor_.system().is_global()) {
        throw Error(ErrorCode::SystemMismatch, "the anchor must be a density operator on the global system");
    }
}

ExtendedNoumenalState ext_action(const UnitaryOperator &u, const ExtendedNoumenalState &s) {
    return ExtendedNoumenalState(noumenal_action(u, s.noumenal()), s.anchor());
}

ExtendedNoumenalState ext_trace(const ExtendedNoumenalState &s, const System &traced) {
    return ExtendedNoumenalState(noumenal_partial_trace(s.noumenal(), traced), s.anchor());
}

ExtendedNoumenalState ext_product(const ExtendedNoumenalState &sa, const ExtendedNoumenalState &sb, ProductMode mode,
                                  double tol) {
    require_same_lattice(sa.system(), sb.system());
    const double gap = max_abs_diff(sa.anchor().matrix(), sb.anchor().matrix());
    if (gap > tol) {
        throw Error(ErrorCode::AnchorMismatch, "anchors differ by " + std::to_string(gap));
    }
    return ExtendedNoumenalState(noumenal_product(sa.noumenal(), sb.noumenal(), mode, tol), sa.anchor());
}

PhenomenalState ext_epimorphism(const ExtendedNoumenalState &s, double tol) {
    return phi(s.anchor(), s.noumenal(), tol);
}

ExtendedNoumenalState mixed_surjectivity_witness(const DensityOperator &target) {
    const System &a_sys = target.system();
    const System rest = complement(a_sys);
    const System global = a_sys.lattice()->global();
    const DensityOperator rest_state = DensityOperator::maximally_mixed(rest);
    DensityOperator anchor(tensor_product(target.matrix(), a_sys, rest_state.matrix(), rest), global);
    return ExtendedNoumenalState(from_global_unitary(UnitaryOperator::identity(global), a_sys), std::move(anchor));
}

}  // namespace noumenal
