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

#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "uctrl/constructions.hpp"
#include "uctrl/topology.hpp"

namespace uctrl {
namespace {

using oracles::max_abs;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

PhaseFunction det_fn() {
    return [](const CMatrix &u) { return oracles::leibniz_det(u); };
}

double bu_floor(std::size_t n) {
    const double s = std::sin(std::numbers::pi / (2.0 * static_cast<double>(n)));
    return std::sqrt(s * s + (1.0 - s * s) * s * s);
}

TEST(Loops, CentralSamples) {
    const auto loop = central_loop(3, 16);
    ASSERT_EQ(loop.size(), 16u);
    for (std::size_t k = 0; k < loop.size(); ++k) {
        const Complex z = std::polar(1.0, kTwoPi * static_cast<double>(k) / 16.0);
        EXPECT_LE(max_abs(loop[k] - z * CMatrix::Identity(3, 3)), 1e-15);
    }
    EXPECT_THROW(central_loop(2, 8), std::invalid_argument);
}

TEST(Loops, GeneratorPoint) {
    const CMatrix g = generator_point(3, 0.25);
    EXPECT_LE(max_abs(g - oracles::diag_phases({std::numbers::pi / 2.0, 0.0, 0.0})), 1e-15);
}

TEST(Witness, DongExtractHIsDeterminant) {
    for (int d = 2; d <= 3; ++d) {
        const auto alg = dong_cUd(d);
        for (std::uint64_t s = 0; s < 5; ++s) {
            const CMatrix u = haar_unitary(d, s);
            EXPECT_NEAR(std::abs(extract_h(alg, u, d) - oracles::leibniz_det(u)), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(extract_fplus(alg, u, d) - 0.5 * oracles::leibniz_det(u)), 0.0, 1e-12);
        }
    }
}

TEST(Witness, KitaevExtractHIsCornerEntry) {
    const CMatrix u = haar_unitary(2, 3);
    EXPECT_NEAR(std::abs(extract_h(kitaev_cswap(2), u, 1) - u(0, 0)), 0.0, 1e-12);
}

TEST(Witness, NeutralPhaseIsDeterminant) {
    for (int d = 2; d <= 4; ++d) {
        const CMatrix u = haar_unitary(d, 5);
        EXPECT_NEAR(std::abs(neutral_phase(neutraliser_parallel(d), u) - oracles::leibniz_det(u)), 0.0, 1e-12);
    }
}

TEST(Witness, RequiresControlQubitFirst) {
    EXPECT_THROW(extract_h(transpose_via_teleport(2), haar_unitary(2, 1), 1), std::invalid_argument);
    EXPECT_THROW(extract_fplus(conjugation(2), haar_unitary(2, 1), 1), std::invalid_argument);
}

TEST(Winding, DeterminantWindsD) {
    for (int d = 2; d <= 4; ++d) {
        EXPECT_EQ(winding(sample_loop(central_loop_fn(d), det_fn(), d, 64)), d);
        EXPECT_EQ(winding(sample_loop(generator_loop_fn(d), det_fn(), d, 64)), 1);
    }
}

TEST(Winding, ConstantWindsZero) {
    const auto trace = sample_loop(central_loop_fn(2), [](const CMatrix &) { return Complex(0.3, -0.2); }, 2, 16);
    EXPECT_EQ(winding(trace), 0);
    EXPECT_NEAR(trace.max_step, 0.0, 1e-15);
}

TEST(Winding, ProductsAdd) {
    const PhaseFunction f = [](const CMatrix &u) { return u(0, 0); };
    const PhaseFunction g = [](const CMatrix &u) { return std::conj(oracles::leibniz_det(u)); };
    const PhaseFunction fg = [&](const CMatrix &u) { return f(u) * g(u); };
    const auto loop = central_loop_fn(3);
    const int wf = winding(sample_loop(loop, f, 3, 64));
    const int wg = winding(sample_loop(loop, g, 3, 64));
    EXPECT_EQ(wf, 1);
    EXPECT_EQ(wg, -3);
    EXPECT_EQ(winding(sample_loop(loop, fg, 3, 64)), wf + wg);
}

TEST(Winding, RefinementResolvesFastPhases) {
    const PhaseFunction fast = [](const CMatrix &u) { return std::pow(u(0, 0), 20); };
    const auto coarse = sample_loop(central_loop_fn(2), fast, 2, 16);
    EXPECT_FALSE(coarse.valid);
    EXPECT_THROW(winding(coarse), WindingError);
    const auto fine = refine_loop(central_loop_fn(2), fast, 2, 16);
    EXPECT_TRUE(fine.valid);
    EXPECT_EQ(fine.K, 128u);
    EXPECT_EQ(winding(fine), 20);
}

TEST(Winding, DiscontinuityStaysInvalid) {
    const PhaseFunction sign = [](const CMatrix &u) {
        return std::arg(u(0, 0)) >= 0.0 ? Complex(1.0) : Complex(-1.0);
    };
    const auto trace = refine_loop(central_loop_fn(2), sign, 2, 16, 1024);
    EXPECT_FALSE(trace.valid);
    EXPECT_EQ(trace.K, 1024u);
    ASSERT_TRUE(trace.jump_t.has_value());
}

TEST(Winding, VanishingWitnessIsInvalid) {
    const PhaseFunction f = [](const CMatrix &u) { return u(0, 0) - 1.0; };
    const auto trace = sample_loop(central_loop_fn(2), f, 2, 16);
    EXPECT_FALSE(trace.valid);
    EXPECT_NE(trace.diagnostic.find("vanishes"), std::string::npos);
}

TEST(Winding, CsvHasHeaderAndOneRowPerSample) {
    std::ostringstream os;
    write_trace_csv(os, sample_loop(central_loop_fn(2), det_fn(), 2, 32));
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "t,re_f,im_f,unwrapped_phase");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    EXPECT_EQ(rows, 32);
}

TEST(Probe, PowerConstructionsWindM) {
    for (int d = 2; d <= 3; ++d) {
        for (int m : {d, 2 * d, -d}) {
            const auto report = dichotomy_probe(power_cUm(d, m), m, d, 64);
            ASSERT_TRUE(report.valid) << report.diagnostic;
            EXPECT_EQ(*report.winding, m);
            EXPECT_EQ(report.generator.winding, m / d);
            EXPECT_TRUE(report.homogeneity_consistent);
            EXPECT_TRUE(report.divisibility_consistent);
        }
    }
}

TEST(Probe, ConstantCircuitWindsZero) {
    const auto report = dichotomy_probe(constant_circuit(2), 0, 2, 16);
    ASSERT_TRUE(report.valid);
    EXPECT_EQ(*report.winding, 0);
    EXPECT_TRUE(report.homogeneity_consistent);
    EXPECT_TRUE(report.divisibility_consistent);
}

TEST(Probe, ComposedRootIsUnresolved) {
    const auto root = principal_root_cU(2);
    const auto report = dichotomy_probe(root.algorithm(), 1, 2, 256);
    EXPECT_FALSE(report.valid);
    EXPECT_EQ(report.generator.K, kMaxLoopSamples);
    ASSERT_TRUE(report.jump_t.has_value());
    EXPECT_NEAR(*report.jump_t, 0.5, 1e-3);
    const auto j = report.to_json();
    EXPECT_FALSE(j["valid"].get<bool>());
    EXPECT_TRUE(j["generator_winding"].is_null());
}

TEST(Probe, KitaevWindsOnceAndIsFlagged) {
    // A valid winding that is not a multiple of d only arises from a
    // non-achiever, and the generator loop exposes it.
    const auto report = dichotomy_probe(kitaev_cswap(2), 1, 2, 64);
    ASSERT_TRUE(report.valid);
    EXPECT_EQ(*report.winding, 1);
    EXPECT_TRUE(report.homogeneity_consistent);
    EXPECT_FALSE(report.divisibility_consistent);
}

TEST(Probe, ExactAchieversNeverWindOffMultiplesOfD) {
    for (int d = 2; d <= 3; ++d) {
        for (const auto &alg : {dong_cUd(d), power_cUm(d, -d), spin_echo_cUd(d), constant_circuit(d)}) {
            const int m = static_homogeneity(alg);
            const auto report = dichotomy_probe(alg, m, d, 64);
            ASSERT_TRUE(report.valid) << alg.name() << ": " << report.diagnostic;
            EXPECT_EQ(*report.winding % d, 0) << alg.name();
            EXPECT_TRUE(report.divisibility_consistent) << alg.name();
        }
    }
}

TEST(Probe, RejectsDimensionMismatch) {
    EXPECT_THROW(dichotomy_probe(dong_cUd(2), 2, 3, 16), TaskMismatch);
}

TEST(BorsukUlam, MapIsOddSpecialUnitary) {
    for (int d : {2, 4}) {
        const SphereGrid grid(3);
        for (std::size_t i = 0; i < grid.size(); i += 7) {
            const CMatrix g = bu_map_g(grid[i], d);
            EXPECT_TRUE(is_unitary(g));
            EXPECT_NEAR(std::abs(oracles::leibniz_det(g) - 1.0), 0.0, 1e-12);
            EXPECT_LE(max_abs(bu_map_g(grid[grid.antipode(i)], d) + g), 1e-15);
        }
    }
    EXPECT_THROW(bu_map_g({1.0, 0.0, 0.0, 0.0}, 3), DimensionError);
    EXPECT_THROW(bu_map_g({1.0, 1.0, 0.0, 0.0}, 2), std::invalid_argument);
}

TEST(BorsukUlam, NorthPoleIsIdentity) {
    for (int d : {2, 4}) EXPECT_EQ(bu_map_g({1.0, 0.0, 0.0, 0.0}, d), CMatrix::Identity(d, d));
    const CMatrix anti = bu_map_g({0.0, 0.0, 1.0, 0.0}, 2);
    EXPECT_EQ(anti(0, 0), Complex(0.0));
    EXPECT_EQ(anti(1, 1), Complex(0.0));
}

TEST(BorsukUlam, GridIsClosedUnderNegation) {
    for (std::size_t n : {1u, 2u, 5u}) {
        const SphereGrid grid(n);
        ASSERT_EQ(grid.size(), 2 * n * n * n);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto &x = grid[i];
            EXPECT_NEAR(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3], 1.0, 1e-14);
            const std::size_t a = grid.antipode(i);
            EXPECT_EQ(grid.antipode(a), i);
            for (int c = 0; c < 4; ++c) EXPECT_EQ(grid[a][c], -x[c]);
        }
    }
}

TEST(BorsukUlam, ConstantSourceIsNotOdd) {
    const auto r = bu_scan([](const CMatrix &) { return Complex(0.6, 0.0); }, 2, SphereGrid(4));
    EXPECT_NEAR(r.min_abs, 0.6, 1e-15);
    EXPECT_NEAR(r.oddness_residual, 1.2, 1e-15);
}

TEST(BorsukUlam, KitaevMinimumMatchesGridFloor) {
    const auto alg = kitaev_cswap(2);
    const PhaseFunction h = [&alg](const CMatrix &u) { return extract_h(alg, u, 1); };
    double previous = 2.0;
    for (std::size_t n : {4u, 8u, 16u}) {
        const auto r = bu_scan(h, 2, SphereGrid(n));
        EXPECT_NEAR(r.min_abs, bu_floor(n), 1e-12);
        EXPECT_LE(r.oddness_residual, 1e-12);
        EXPECT_LT(r.min_abs, previous);
        previous = r.min_abs;
    }
}

TEST(BorsukUlam, ComposedRootWitnessKeepsUnitModulus) {
    // Each sampled point is an exact c-U instance with success probability 1,
    // so |h| = 1 everywhere; the discontinuity sits in the phase.
    const auto root = principal_root_cU(2);
    const PhaseFunction h = [&root](const CMatrix &u) { return extract_h(root.algorithm(), u, 1); };
    const auto r = bu_scan(h, 2, SphereGrid(8));
    EXPECT_NEAR(r.min_abs, 1.0, 1e-9);
}

}  // namespace
}  // namespace uctrl
