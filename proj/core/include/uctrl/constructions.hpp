// Copyright 2026 The uctrl Authors
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

#ifndef UCTRL_CONSTRUCTIONS_HPP
#define UCTRL_CONSTRUCTIONS_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uctrl/linalg.hpp"
#include "uctrl/oracle_model.hpp"

namespace uctrl {

/// A builder was asked for parameters it does not support.
class UnsupportedConstruction : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// (1/sqrt(d!)) sum_pi sgn(pi) |pi(0) ... pi(d-1)>, the totally
/// antisymmetric state of d qudits. Requires d <= 5.
CVector chi_state(int d);

/// (1/sqrt(d)) sum_i |ii>.
CVector bell_state(int d);

/// Layout [control, task, ancilla]. The single id query hits the task qudit
/// on the |1> branch and the ancilla on the |0> branch:
/// |0><0| (x) Id (x) U + |1><1| (x) U (x) Id.
OracleAlgorithm kitaev_cswap(int d);

/// V^dagger U^(x)d V on d ancilla qudits with V|0...0> = |chi_d>. Maps
/// |0...0> to det(U) |0...0>. Requires d <= 4.
OracleAlgorithm neutraliser_parallel(int d);

/// Layout [control, task, d ancillas]. On the |0> branch the d queries are
/// routed into the neutraliser, on the |1> branch they hit the task:
/// det(U) (|0><0| (x) Id + det(U)^-1 |1><1| (x) U^d) (x) |0><0|.
/// Requires d <= 4.
OracleAlgorithm dong_cUd(int d);

/// |m|/d repetitions of dong_cUd on shared ancillas, with inv queries when
/// m < 0. Requires d | m, m != 0 and |m| <= 8.
OracleAlgorithm power_cUm(int d, int m);

/// Layout [task, (d-2) ancillas]. The d-1 queries act on the antisymmetric
/// (d-1)-qudit states v_j, which transform with the cofactor matrix, giving
/// U* (x) det(U) |0...0><0...0|. Requires 2 <= d <= 4.
OracleAlgorithm conjugation(int d);

/// Layout [in, bridge, out]: one query on half of a Bell pair, then a Bell
/// projection of (in, bridge). Delivers U^T / d on the out register.
OracleAlgorithm transpose_via_teleport(int d);

/// Teleportation as in transpose_via_teleport with the bridge query replaced
/// by the conjugation block: det(U) U^dagger / d with d-1 queries.
/// Requires d in {2, 3}.
OracleAlgorithm inverse(int d);

/// c-U^d from one unconditional query followed by d-1 queries that either
/// continue on the task (|1> branch) or feed a conjugation block that undoes
/// the first one through a teleported U^dagger (|0> branch). Succeeds with
/// probability 1/d^2. Requires d in {2, 3}.
OracleAlgorithm spin_echo_cUd(int d);

/// Control and task registers with no gates and no queries.
OracleAlgorithm constant_circuit(int d);

/// dong_cUd with each id query replaced by a query to root(U), a d-th root
/// of U. Kept apart from OracleAlgorithm builders because a root picked on a
/// fixed branch is discontinuous in U, which a genuine oracle algorithm
/// cannot be.
class ComposedRootCircuit {
   public:
    ComposedRootCircuit(int d, std::function<CMatrix(const CMatrix &)> root);

    int d() const { return d_; }
    const OracleAlgorithm &algorithm() const { return alg_; }

    /// c-U with the "root" letter admitted into the alphabet.
    Task target_task() const;

    CMatrix eval(const CMatrix &u) const;

   private:
    int d_;
    OracleAlgorithm alg_;
};

ComposedRootCircuit composed_root_cU(int d, std::function<CMatrix(const CMatrix &)> root);

/// composed_root_cU with the principal-branch d-th root.
ComposedRootCircuit principal_root_cU(int d);

/// Names accepted by build_construction.
const std::vector<std::string> &construction_names();

/// Builds a construction by name; `m` is used by "power" only.
OracleAlgorithm build_construction(const std::string &name, int d, int m = 0);

}  // namespace uctrl

#endif  // UCTRL_CONSTRUCTIONS_HPP
