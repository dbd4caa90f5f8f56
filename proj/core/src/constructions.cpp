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

#include "uctrl/constructions.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace uctrl {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int k = 0; k < exp; ++k) r *= base;
    return r;
}

void require_range(const char *name, int d, int lo, int hi) {
    if (d < lo || d > hi) {
        throw UnsupportedConstruction(std::string(name) + " supports d in [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "], got d = " + std::to_string(d));
    }
}

std::vector<std::size_t> iota_targets(std::size_t first, std::size_t count) {
    std::vector<std::size_t> t(count);
    std::iota(t.begin(), t.end(), first);
    return t;
}

FixedGate gate(CMatrix op, std::vector<std::size_t> targets, std::optional<ControlSpec> control = std::nullopt) {
    return FixedGate{std::move(op), std::move(targets), control};
}

QueryStep query(const QueryLetter &letter, std::size_t target) { return QueryStep{letter, {target}}; }

/// Unitary on d-1 qudits with column j * d^(d-2) equal to
/// v_j = (1/sqrt((d-1)!)) sum_{pi(0)=j} sgn(pi) |pi(1) ... pi(d-1)>.
CMatrix conjugation_unitary(int d) {
    const int n = d - 1;
    const std::size_t dim = ipow(static_cast<std::size_t>(d), n);
    const double norm = 1.0 / std::sqrt(factorial(n));
    std::vector<CVector> v(static_cast<std::size_t>(d), CVector::Zero(static_cast<Eigen::Index>(dim)));
    Permutation pi = Permutation::identity(static_cast<std::size_t>(d));
    do {
        std::size_t index = 0;
        for (std::size_t k = 1; k < pi.size(); ++k) index = index * static_cast<std::size_t>(d) + pi(k);
        v[pi(0)](static_cast<Eigen::Index>(index)) += norm * pi.sign();
    } while (pi.next());

    const std::size_t stride = ipow(static_cast<std::size_t>(d), n - 1);
    std::vector<std::pair<std::size_t, CVector>> pinned;
    for (int j = 0; j < d; ++j) pinned.emplace_back(static_cast<std::size_t>(j) * stride, v[j]);
    return complete_unitary(dim, pinned);
}

/// F on the first qudit, then SUM: |00> -> |psi+>.
CMatrix bell_preparation(int d) {
    return sum_gate(d) * kron(fourier(d), CMatrix::Identity(d, d));
}

CMatrix zero_projector(int d, int count) {
    const auto dim = static_cast<Eigen::Index>(ipow(static_cast<std::size_t>(d), count));
    CMatrix p = CMatrix::Zero(dim, dim);
    p(0, 0) = 1.0;
    return p;
}

CMatrix bell_projector(int d) {
    const CVector psi = bell_state(d);
    return psi * psi.adjoint();
}

/// Dong's structure on [control, task, d ancillas] with a caller-chosen
/// query letter.
std::vector<Step> dong_steps(int d, const QueryLetter &letter, int copies) {
    const ControlSpec on_zero{0, 0};
    const auto ancillas = iota_targets(2, static_cast<std::size_t>(d));
    const CMatrix v = complete_unitary(ipow(static_cast<std::size_t>(d), d), {{0, chi_state(d)}});
    const CMatrix swap = swap_gate(d);

    std::vector<Step> steps;
    for (int c = 0; c < copies; ++c) {
        steps.emplace_back(gate(v, ancillas, on_zero));
        for (int k = 0; k < d; ++k) {
            const std::vector<std::size_t> pair{1, static_cast<std::size_t>(2 + k)};
            steps.emplace_back(gate(swap, pair, on_zero));
            steps.emplace_back(query(letter, 1));
            steps.emplace_back(gate(swap, pair, on_zero));
        }
        steps.emplace_back(gate(v.adjoint(), ancillas, on_zero));
    }
    return steps;
}

RegisterLayout dong_layout(int d) {
    std::vector<Factor> f{{2, Role::kControl, {}}, {d, Role::kTask, {}}};
    for (int k = 0; k < d; ++k) f.push_back({d, Role::kAncilla, "neutraliser"});
    return RegisterLayout(std::move(f));
}

}  // namespace

CVector chi_state(int d) {
    if (d < 1 || d > 5) throw DimensionError("chi_state supports d in [1, 5]");
    const std::size_t dim = ipow(static_cast<std::size_t>(d), d);
    CVector chi = CVector::Zero(static_cast<Eigen::Index>(dim));
    const double norm = 1.0 / std::sqrt(factorial(d));
    Permutation pi = Permutation::identity(static_cast<std::size_t>(d));
    do {
        std::size_t index = 0;
        for (std::size_t k = 0; k < pi.size(); ++k) index = index * static_cast<std::size_t>(d) + pi(k);
        chi(static_cast<Eigen::Index>(index)) = norm * pi.sign();
    } while (pi.next());
    return chi;
}

CVector bell_state(int d) {
    if (d < 1) throw DimensionError("bell_state needs d >= 1");
    CVector psi = CVector::Zero(d * d);
    for (int i = 0; i < d; ++i) psi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    return psi;
}

OracleAlgorithm kitaev_cswap(int d) {
    require_range("kitaev", d, 2, 4);
    RegisterLayout layout({{2, Role::kControl, {}}, {d, Role::kTask, {}}, {d, Role::kAncilla, "eigenvector"}});
    const ControlSpec on_zero{0, 0};
    std::vector<Step> steps{gate(swap_gate(d), {1, 2}, on_zero), query(QueryLetter::id(), 1),
                            gate(swap_gate(d), {1, 2}, on_zero)};
    return OracleAlgorithm("kitaev", std::move(layout), d, std::move(steps));
}

OracleAlgorithm neutraliser_parallel(int d) {
    require_range("neutraliser", d, 2, 4);
    const auto layout = RegisterLayout::uniform(std::vector<int>(static_cast<std::size_t>(d), d), Role::kAncilla);
    const auto all = iota_targets(0, static_cast<std::size_t>(d));
    const CMatrix v = complete_unitary(layout.total_dim(), {{0, chi_state(d)}});
    std::vector<Step> steps{gate(v, all)};
    for (std::size_t k = 0; k < all.size(); ++k) steps.emplace_back(query(QueryLetter::id(), k));
    steps.emplace_back(gate(v.adjoint(), all));
    return OracleAlgorithm("neutraliser", layout, d, std::move(steps));
}

OracleAlgorithm dong_cUd(int d) {
    require_range("dong", d, 2, 4);
    return OracleAlgorithm("dong", dong_layout(d), d, dong_steps(d, QueryLetter::id(), 1));
}

OracleAlgorithm power_cUm(int d, int m) {
    require_range("power", d, 2, 4);
    if (m == 0 || m % d != 0) throw UnsupportedConstruction("d does not divide m: no such algorithm exists");
    if (std::abs(m) > 8) throw UnsupportedConstruction("power supports |m| <= 8");
    const QueryLetter letter = m > 0 ? QueryLetter::id() : QueryLetter::inv();
    return OracleAlgorithm("power", dong_layout(d), d, dong_steps(d, letter, std::abs(m) / d));
}

OracleAlgorithm conjugation(int d) {
    require_range("conjugation", d, 2, 4);
    std::vector<Factor> f{{d, Role::kTask, {}}};
    for (int k = 0; k < d - 2; ++k) f.push_back({d, Role::kAncilla, "cofactor"});
    RegisterLayout layout(std::move(f));

    const auto block = iota_targets(0, static_cast<std::size_t>(d - 1));
    const CMatrix v = conjugation_unitary(d);
    std::vector<Step> steps{gate(v, block)};
    for (auto t : block) steps.emplace_back(query(QueryLetter::id(), t));
    steps.emplace_back(gate(v.adjoint(), block));

    Projector pi;
    if (d > 2) pi = Projector{zero_projector(d, d - 2), iota_targets(1, static_cast<std::size_t>(d - 2))};
    return OracleAlgorithm("conjugation", std::move(layout), d, std::move(steps), std::move(pi));
}

OracleAlgorithm transpose_via_teleport(int d) {
    require_range("transpose", d, 2, 4);
    RegisterLayout layout({{d, Role::kTask, {}}, {d, Role::kAncilla, "bridge"}, {d, Role::kAncilla, "out"}});
    std::vector<Step> steps{gate(bell_preparation(d), {1, 2}), query(QueryLetter::id(), 1)};
    Projector pi{bell_projector(d), {0, 1}};
    return OracleAlgorithm("transpose", std::move(layout), d, std::move(steps), std::move(pi),
                           TaskRegisters{{0}, {2}});
}

OracleAlgorithm inverse(int d) {
    require_range("inverse", d, 2, 3);
    std::vector<Factor> f{{d, Role::kTask, {}}, {d, Role::kAncilla, "bridge"}};
    for (int k = 0; k < d - 2; ++k) f.push_back({d, Role::kAncilla, "cofactor"});
    f.push_back({d, Role::kAncilla, "out"});
    RegisterLayout layout(std::move(f));
    const std::size_t out = layout.size() - 1;

    const auto block = iota_targets(1, static_cast<std::size_t>(d - 1));
    const CMatrix v = conjugation_unitary(d);
    std::vector<Step> steps{gate(bell_preparation(d), {1, out}), gate(v, block)};
    for (auto t : block) steps.emplace_back(query(QueryLetter::id(), t));
    steps.emplace_back(gate(v.adjoint(), block));

    Projector pi{kron(bell_projector(d), zero_projector(d, d - 2)), iota_targets(0, static_cast<std::size_t>(d))};
    return OracleAlgorithm("inverse", std::move(layout), d, std::move(steps), std::move(pi),
                           TaskRegisters{{0}, {out}});
}

OracleAlgorithm spin_echo_cUd(int d) {
    require_range("spin-echo", d, 2, 3);
    std::vector<Factor> f{{2, Role::kControl, {}}, {d, Role::kTask, {}}, {d, Role::kAncilla, "bridge"}};
    for (int k = 0; k < d - 2; ++k) f.push_back({d, Role::kAncilla, "cofactor"});
    f.push_back({d, Role::kAncilla, "out"});
    RegisterLayout layout(std::move(f));
    const std::size_t out = layout.size() - 1;
    const ControlSpec on_zero{0, 0};

    // Conjugation block on (bridge, cofactor ancillas), active on the |0> branch.
    const auto block = iota_targets(2, static_cast<std::size_t>(d - 1));
    const CMatrix v = conjugation_unitary(d);
    std::vector<Step> steps{query(QueryLetter::id(), 1), gate(bell_preparation(d), {2, out}),
                            gate(v, block, on_zero)};
    for (auto t : block) {
        const std::vector<std::size_t> pair{1, t};
        steps.emplace_back(gate(swap_gate(d), pair, on_zero));
        steps.emplace_back(query(QueryLetter::id(), 1));
        steps.emplace_back(gate(swap_gate(d), pair, on_zero));
    }
    steps.emplace_back(gate(v.adjoint(), block, on_zero));

    Projector pi{kron(bell_projector(d), zero_projector(d, d - 2)), iota_targets(1, static_cast<std::size_t>(d))};
    return OracleAlgorithm("spin-echo", std::move(layout), d, std::move(steps), std::move(pi),
                           TaskRegisters{{0, 1}, {0, out}});
}

OracleAlgorithm constant_circuit(int d) {
    require_range("constant", d, 2, 4);
    return OracleAlgorithm("constant", RegisterLayout({{2, Role::kControl, {}}, {d, Role::kTask, {}}}), d, {});
}

// ---------------------------------------------------------------------------

namespace {

QueryLetter root_letter(int d, std::function<CMatrix(const CMatrix &)> root) {
    return QueryLetter::custom("root", [d, root = std::move(root)](const CMatrix &u) {
        CMatrix r = root(u);
        if (r.rows() != u.rows() || r.cols() != u.cols() || (unitary_power(r, d) - u).norm() > 1e-8) {
            throw std::invalid_argument("root(U) is not a d-th root of U");
        }
        return r;
    });
}

}  // namespace

ComposedRootCircuit::ComposedRootCircuit(int d, std::function<CMatrix(const CMatrix &)> root)
    : d_((require_range("root-composed", d, 2, 4), d)),
      alg_("root-composed", dong_layout(d), d, dong_steps(d, root_letter(d, std::move(root)), 1)) {}

Task ComposedRootCircuit::target_task() const { return tasks::controlled_power(d_, 1).with_letters({"root"}); }

CMatrix ComposedRootCircuit::eval(const CMatrix &u) const { return uctrl::eval(alg_, u); }

ComposedRootCircuit composed_root_cU(int d, std::function<CMatrix(const CMatrix &)> root) {
    return ComposedRootCircuit(d, std::move(root));
}

ComposedRootCircuit principal_root_cU(int d) {
    return ComposedRootCircuit(d, [d](const CMatrix &u) { return principal_root(u, d); });
}

const std::vector<std::string> &construction_names() {
    static const std::vector<std::string> names{"kitaev",  "dong",      "power",       "conjugation", "transpose",
                                                "inverse", "spin-echo", "neutraliser", "constant"};
    return names;
}

OracleAlgorithm build_construction(const std::string &name, int d, int m) {
    if (name == "kitaev") return kitaev_cswap(d);
    if (name == "dong") return dong_cUd(d);
    if (name == "power") return power_cUm(d, m);
    if (name == "conjugation") return conjugation(d);
    if (name == "transpose") return transpose_via_teleport(d);
    if (name == "inverse") return inverse(d);
    if (name == "spin-echo") return spin_echo_cUd(d);
    if (name == "neutraliser") return neutraliser_parallel(d);
    if (name == "constant") return constant_circuit(d);
    throw UnsupportedConstruction("unknown construction '" + name + "'");
}

}  // namespace uctrl
