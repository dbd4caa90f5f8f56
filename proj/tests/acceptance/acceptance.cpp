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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed; nothing here may be loosened to pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "uctrl/constructions.hpp"
#include "uctrl/linalg.hpp"
#include "uctrl/oracle_model.hpp"
#include "uctrl/topology.hpp"

namespace {

using namespace uctrl;

double wrap(double a) { return std::arg(std::polar(1.0, a)); }

/// Collects the first violated condition of a criterion.
class Verdict {
   public:
    void require(bool ok, const std::string &what) {
        if (!ok && failure_.empty()) failure_ = what;
    }
    bool ok() const { return failure_.empty(); }
    const std::string &failure() const { return failure_; }
    void note(const std::string &s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
    const std::string &notes() const { return notes_; }

   private:
    std::string failure_;
    std::string notes_;
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

struct Shipped {
    std::string name;
    int d;
    int m;
};

std::vector<Shipped> shipped(int max_d_large) {
    std::vector<Shipped> out;
    for (int d = 2; d <= 3; ++d) {
        for (const char *name : {"dong", "inverse", "spin-echo"}) out.push_back({name, d, d});
        out.push_back({"power", d, 2 * d});
        out.push_back({"power", d, -d});
    }
    for (int d = 2; d <= max_d_large; ++d) {
        for (const char *name : {"kitaev", "conjugation", "transpose", "neutraliser", "constant"}) {
            out.push_back({name, d, d});
        }
    }
    return out;
}

/// V_N (U (x) Id) ... (U (x) Id) V_0 with fixed Haar V_k on [task, ancilla].
OracleAlgorithm sandwich(int d, std::size_t queries, std::uint64_t seed) {
    const RegisterLayout layout({{d, Role::kTask, {}}, {d, Role::kAncilla, {}}});
    std::vector<Step> steps;
    for (std::size_t k = 0; k < queries; ++k) {
        steps.emplace_back(FixedGate{haar_unitary(d * d, seed + k), {0, 1}, std::nullopt});
        steps.emplace_back(QueryStep{QueryLetter::id(), {k % 2}});
    }
    steps.emplace_back(FixedGate{haar_unitary(d * d, seed + 99), {0, 1}, std::nullopt});
    return OracleAlgorithm("fixture", layout, d, std::move(steps));
}

// ---------------------------------------------------------------------------

Verdict dong_exactness() {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    double worst_res = 0.0, worst_phase = 0.0, worst_p = 0.0;
    for (int d = 2; d <= 4; ++d) {
        const auto alg = dong_cUd(d);
        const auto task = tasks::controlled_power(d, d);
        for (std::uint64_t s = 0; s < 20; ++s) {
            const CMatrix u = haar_unitary(d, s);
            const auto r = check_exact(alg, task, u);
            v.require(r.achieved, "d=" + std::to_string(d) + ": " + r.diagnostic);
            if (!r.achieved) continue;
            worst_res = std::max(worst_res, r.residual);
            worst_phase = std::max(worst_phase, std::abs(wrap(*r.phase + std::arg(oracles::leibniz_det(u)))));
            worst_p = std::max(worst_p, std::abs(r.success_probability - 1.0));
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(worst_res <= 1e-9, "residual " + fmt(worst_res));
    v.require(worst_phase <= 1e-8, "phase error " + fmt(worst_phase));
    v.require(worst_p <= 1e-10, "probability error " + fmt(worst_p));
    v.require(seconds < 30.0, "runtime " + fmt(seconds) + " s");
    v.note("max residual " + fmt(worst_res) + ", phase err " + fmt(worst_phase) + ", " + fmt(seconds) + " s");
    return v;
}

Verdict neutralisation() {
    Verdict v;
    for (int d = 2; d <= 3; ++d) {
        std::vector<CMatrix> us;
        for (std::uint64_t s = 0; s < 20; ++s) us.push_back(haar_unitary(d, s));
        const auto r = check_neutralises(neutraliser_parallel(d), us);
        v.require(r.pass, "neutraliser d=" + std::to_string(d) + ": " + r.diagnostic);
        v.require(std::abs(r.r - 1.0) <= 1e-10, "r = " + fmt(r.r));
        for (std::size_t k = 0; k < us.size() && r.pass; ++k) {
            v.require(std::abs(wrap(r.phases[k] - std::arg(oracles::leibniz_det(us[k])))) <= 1e-10,
                      "phase differs from arg det");
        }
        int fixtures = 0;
        for (std::size_t queries : {std::size_t{1}, static_cast<std::size_t>(d + 1)}) {
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                const auto f = check_neutralises(sandwich(d, queries, 1000 * seed + queries), us);
                v.require(!f.pass, std::to_string(queries) + "-query fixture passed");
                ++fixtures;
            }
        }
        v.note("d=" + std::to_string(d) + " r=" + fmt(r.r) + ", " + std::to_string(fixtures) + " fixtures rejected");
    }
    return v;
}

Verdict conjugation_clean() {
    Verdict v;
    double worst = 0.0;
    for (int d = 2; d <= 4; ++d) {
        const auto alg = conjugation(d);
        std::vector<CMatrix> us;
        for (std::uint64_t s = 0; s < 20; ++s) us.push_back(haar_unitary(d, s));
        const auto r = check_clean(alg, tasks::conjugation(d), us);
        v.require(r.clean, "d=" + std::to_string(d) + ": " + r.diagnostic);
        for (std::size_t k = 0; k < r.per_oracle.size(); ++k) {
            const auto &a = r.per_oracle[k];
            worst = std::max(worst, a.residual);
            v.require(std::abs(a.success_probability - 1.0) <= 1e-10, "success probability " + fmt(a.success_probability));
            const CVector psi = haar_state(static_cast<std::size_t>(d), 500 + k);
            const auto out = apply_channel(alg, us[k], psi * psi.adjoint());
            const CVector expected = us[k].conjugate() * psi;
            v.require(oracles::max_abs(out.state / out.probability - expected * expected.adjoint()) <= 1e-9,
                      "output is not U* rho U^T");
        }
    }
    v.require(worst <= 1e-9, "residual " + fmt(worst));
    v.note("max residual " + fmt(worst));
    return v;
}

Verdict transpose_inverse() {
    Verdict v;
    double worst = 0.0;
    for (int d = 2; d <= 3; ++d) {
        const double target = 1.0 / (d * d);
        for (const auto &alg : {transpose_via_teleport(d), inverse(d)}) {
            for (std::uint64_t s = 0; s < 20; ++s) {
                const CMatrix u = haar_unitary(d, s);
                for (std::uint64_t k = 0; k < 5; ++k) {
                    const double p = success_prob(alg, u, haar_state(static_cast<std::size_t>(d), 100 * s + k));
                    worst = std::max(worst, std::abs(p - target));
                }
                for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i) {
                    worst = std::max(worst, std::abs(success_prob(alg, u, basis(d, i)) - target));
                }
            }
        }
        std::vector<CMatrix> us;
        for (std::uint64_t s = 0; s < 20; ++s) us.push_back(haar_unitary(d, s));
        const auto inv = inverse(d);
        const auto r = check_clean(inv, tasks::inverse(d), us);
        v.require(r.clean, "inverse d=" + std::to_string(d) + ": " + r.diagnostic);
        v.require((static_cast<int>(inv.query_count()) + 1) % d == 0, "inverse query count not -1 mod d");
        const auto t = check_clean(transpose_via_teleport(d), tasks::transpose(d), us);
        v.require(t.clean, "transpose d=" + std::to_string(d) + ": " + t.diagnostic);
    }
    v.require(worst <= 1e-10, "success probability off by " + fmt(worst));
    v.note("max |p - 1/d^2| " + fmt(worst));
    return v;
}

Verdict spin_echo() {
    Verdict v;
    double worst = 0.0;
    for (int d = 2; d <= 3; ++d) {
        const auto alg = spin_echo_cUd(d);
        for (std::uint64_t s = 0; s < 20; ++s) {
            const auto r = check_exact(alg, tasks::controlled_power(d, d), haar_unitary(d, s));
            v.require(r.achieved, "d=" + std::to_string(d) + ": " + r.diagnostic);
            worst = std::max(worst, std::abs(r.success_probability - 1.0 / (d * d)));
        }
    }
    v.require(worst <= 1e-10, "success probability off by " + fmt(worst));
    v.note("max |p - 1/d^2| " + fmt(worst));
    return v;
}

Verdict symmetric_formulas() {
    Verdict v;
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto n = static_cast<Eigen::Index>(1 + s % 5);
        const CMatrix m = oracles::random_matrix(n, n, 7000 + s);
        worst = std::max(worst, std::abs(sym_det(m) - oracles::leibniz_det(m)));
    }
    v.require(worst <= 1e-10, "sym_det error " + fmt(worst));
    double worst_minor = 0.0;
    for (int n = 2; n <= 4; ++n) {
        for (std::uint64_t s = 0; s < 5; ++s) {
            const CMatrix m = oracles::random_matrix(n, n, 8000 + 10 * n + s);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    const Complex oracle = oracles::leibniz_det(oracles::delete_row_col(m, i, j));
                    worst_minor = std::max(worst_minor, std::abs(sym_minor(m, i, j) - oracle));
                }
            }
        }
    }
    v.require(worst_minor <= 1e-10, "sym_minor error " + fmt(worst_minor));
    double worst_cof = 0.0;
    for (int d = 2; d <= 4; ++d) {
        for (std::uint64_t s = 0; s < 100; ++s) {
            const CMatrix u = haar_unitary(d, 9000 + s);
            const CMatrix expected = oracles::leibniz_det(u) * u.conjugate();
            worst_cof = std::max(worst_cof, oracles::max_abs(cofactor_matrix(u) - expected));
        }
    }
    v.require(worst_cof <= 1e-10, "cofactor identity error " + fmt(worst_cof));
    v.note("det " + fmt(worst) + ", minor " + fmt(worst_minor) + ", cofactor " + fmt(worst_cof));
    return v;
}

Verdict homogeneity() {
    Verdict v;
    double worst = 0.0;
    std::size_t lipschitz_pairs = 0;
    for (const auto &c : shipped(4)) {
        const auto alg = build_construction(c.name, c.d, c.m);
        const int degree = static_homogeneity(alg);
        std::mt19937_64 rng(300);
        std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
        for (std::uint64_t k = 0; k < 10; ++k) {
            const double angle = uniform(rng);
            const double r = numeric_homogeneity_check(alg, haar_unitary(c.d, k), std::polar(1.0, angle), degree);
            worst = std::max(worst, r);
        }
        for (std::uint64_t k = 0; k < 100; ++k) {
            const auto r = lipschitz_check(alg, haar_unitary(c.d, 2 * k), haar_unitary(c.d, 2 * k + 1));
            v.require(r.holds, c.name + " d=" + std::to_string(c.d) + ": Lipschitz bound violated");
            ++lipschitz_pairs;
        }
    }
    v.require(worst <= 1e-9, "homogeneity residual " + fmt(worst));
    v.note("max residual " + fmt(worst) + ", " + std::to_string(lipschitz_pairs) + " Lipschitz pairs");
    return v;
}

Verdict dichotomy() {
    Verdict v;
    const PhaseFunction det = [](const CMatrix &u) { return oracles::leibniz_det(u); };
    for (int d = 2; d <= 4; ++d) {
        const auto trace = sample_loop(central_loop_fn(d), det, d, 256);
        v.require(trace.valid && trace.winding == d, "det does not wind d at d=" + std::to_string(d));
    }
    struct Case {
        OracleAlgorithm alg;
        int m;
        int d;
    };
    std::vector<Case> cases{{dong_cUd(2), 2, 2},       {dong_cUd(3), 3, 3},       {dong_cUd(4), 4, 4},
                            {power_cUm(2, 4), 4, 2},   {power_cUm(2, -2), -2, 2}, {power_cUm(3, 6), 6, 3},
                            {power_cUm(3, -3), -3, 3}};
    for (const auto &c : cases) {
        const auto r = dichotomy_probe(c.alg, c.m, c.d, 256);
        const std::string tag = c.alg.name() + " m=" + std::to_string(c.m) + " d=" + std::to_string(c.d);
        v.require(r.valid && r.winding == c.m, tag + ": " + r.diagnostic);
        v.require(r.homogeneity_consistent && r.divisibility_consistent, tag + ": inconsistent windings");
        v.require(c.m % c.d == 0, tag + ": m not a multiple of d");
    }
    const auto root = principal_root_cU(2);
    const auto r = dichotomy_probe(root.algorithm(), 1, 2, 256);
    v.require(!r.valid, "composed root trace resolved");
    v.require(r.generator.K == kMaxLoopSamples, "composed root trace not refined to K = 2^14");
    v.require(r.jump_t.has_value() && std::abs(*r.jump_t - 0.5) <= 1e-3, "jump not localised at the branch cut");
    if (r.jump_t) v.note("root-composed invalid at K=" + std::to_string(r.generator.K) + ", jump at t=" + fmt(*r.jump_t));
    return v;
}

double bu_floor(std::size_t n) {
    const double s = std::sin(std::numbers::pi / (2.0 * static_cast<double>(n)));
    return std::sqrt(s * s + (1.0 - s * s) * s * s);
}

Verdict borsuk_ulam() {
    Verdict v;
    const SphereGrid probe_points(8);
    double worst_odd = 0.0, worst_unit = 0.0;
    for (int d : {2, 4}) {
        for (std::size_t i = 0; i < probe_points.size(); ++i) {
            const CMatrix g = bu_map_g(probe_points[i], d);
            worst_unit = std::max(worst_unit, oracles::max_abs(g.adjoint() * g - CMatrix::Identity(d, d)));
            worst_odd = std::max(worst_odd, oracles::max_abs(bu_map_g(probe_points[probe_points.antipode(i)], d) + g));
        }
    }
    v.require(probe_points.size() >= 1000, "fewer than 10^3 points");
    v.require(worst_unit <= 1e-12, "g not unitary: " + fmt(worst_unit));
    v.require(worst_odd <= 1e-12, "g not odd: " + fmt(worst_odd));

    const auto alg = kitaev_cswap(2);
    const PhaseFunction h = [&alg](const CMatrix &u) { return extract_h(alg, u, 1); };
    double previous = std::numeric_limits<double>::infinity();
    double last = 0.0;
    for (std::size_t n : {4u, 8u, 16u, 32u, 64u}) {
        const auto r = bu_scan(h, 2, SphereGrid(n));
        v.require(r.min_abs < previous, "minimum did not decrease at n=" + std::to_string(n));
        v.require(r.oddness_residual <= 1e-12, "h o g not odd: " + fmt(r.oddness_residual));
        previous = r.min_abs;
        last = r.min_abs;
    }
    v.require(std::abs(last - bu_floor(64)) <= 1e-12, "final minimum " + fmt(last) + " vs " + fmt(bu_floor(64)));
    v.note("final min |h o g| " + fmt(last));
    return v;
}

Verdict eps_consistency() {
    Verdict v;
    struct Achiever {
        OracleAlgorithm alg;
        Task task;
    };
    std::vector<Achiever> achievers;
    for (int d = 2; d <= 3; ++d) {
        achievers.push_back({dong_cUd(d), tasks::controlled_power(d, d)});
        achievers.push_back({power_cUm(d, -d), tasks::controlled_power(d, -d)});
        achievers.push_back({conjugation(d), tasks::conjugation(d)});
        achievers.push_back({transpose_via_teleport(d), tasks::transpose(d)});
        achievers.push_back({inverse(d), tasks::inverse(d)});
        achievers.push_back({spin_echo_cUd(d), tasks::controlled_power(d, d)});
    }
    achievers.push_back({dong_cUd(4), tasks::controlled_power(4, 4)});
    achievers.push_back({conjugation(4), tasks::conjugation(4)});
    achievers.push_back({transpose_via_teleport(4), tasks::transpose(4)});

    double worst = 0.0;
    for (const auto &a : achievers) {
        for (std::uint64_t s = 0; s < 10; ++s) {
            try {
                worst = std::max(worst, eps_distance_estimate(a.alg, a.task, haar_unitary(a.alg.oracle_dim(), s), 4, s));
            } catch (const ModelViolation &e) {
                v.require(false, a.alg.name() + ": " + e.what());
            }
        }
    }
    v.require(worst <= 1e-9, "eps " + fmt(worst));

    double min_p = 1.0;
    for (const auto &c : shipped(4)) {
        const auto alg = build_construction(c.name, c.d, c.m);
        const std::size_t n = alg.task_dim();
        for (std::uint64_t s = 0; s < 10; ++s) {
            const CMatrix u = haar_unitary(c.d, s);
            for (std::size_t i = 0; i < n; ++i) min_p = std::min(min_p, success_prob(alg, u, basis(n, i)));
            for (std::uint64_t k = 0; k < 3; ++k) min_p = std::min(min_p, success_prob(alg, u, haar_state(n, 50 * s + k)));
        }
    }
    v.require(min_p > 0.0, "zero success probability");
    v.note("max eps " + fmt(worst) + ", min success probability " + fmt(min_p));
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"dong c-U^d exactness", dong_exactness},
        {"neutralisation", neutralisation},
        {"conjugation", conjugation_clean},
        {"transpose and inverse", transpose_inverse},
        {"spin-echo c-U^d", spin_echo},
        {"symmetric determinant and cofactor formulas", symmetric_formulas},
        {"homogeneity and Lipschitz surrogate", homogeneity},
        {"dichotomy windings", dichotomy},
        {"Borsuk-Ulam probe", borsuk_ulam},
        {"eps consistency and nonzero success", eps_consistency},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Verdict v;
        try {
            v = criteria[k].second();
        } catch (const std::exception &e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        if (!v.ok()) ++failures;
        std::printf("%s %2zu %s: %s\n", v.ok() ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                    v.ok() ? v.notes().c_str() : v.failure().c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
