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

#ifndef UCTRL_TOPOLOGY_HPP
#define UCTRL_TOPOLOGY_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uctrl/linalg.hpp"
#include "uctrl/oracle_model.hpp"

namespace uctrl {

/// Raised when a loop trace cannot be resolved even at the largest sample
/// count.
class WindingError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A closed loop t in [0, 1) -> U(d).
using UnitaryLoop = std::function<CMatrix(double)>;
/// A phase witness U -> C.
using PhaseFunction = std::function<Complex(const CMatrix &)>;

inline constexpr std::size_t kMinLoopSamples = 16;
inline constexpr std::size_t kMaxLoopSamples = std::size_t{1} << 14;
/// Values below this modulus make a trace invalid.
inline constexpr double kVanishingWitness = 1e-6;

/// e^{2 pi i t} Id_d.
CMatrix central_point(int d, double t);
/// diag(e^{2 pi i t}, 1, ..., 1), a loop that generates pi_1(U(d)).
CMatrix generator_point(int d, double t);

UnitaryLoop central_loop_fn(int d);
UnitaryLoop generator_loop_fn(int d);

/// [e^{2 pi i k/K} Id_d for k = 0..K-1]. Requires K >= 16.
std::vector<CMatrix> central_loop(int d, std::size_t K);

// ---------------------------------------------------------------------------
// Phase witnesses. The control qubit must be tensor factor 0.

/// <0|(U^m (x) Id_K) X^dagger Y|0> with X = <1|_c A(U) |1>_c and
/// Y = <0|_c A(U) |0>_c; equals e^{-i phi(U)} p0(U) for an exact c-U^m
/// achiever.
Complex extract_h(const OracleAlgorithm &alg, const CMatrix &u, int m);

/// h+ / p+ with psi = A(U)(|+>_c (x) |0>), p+ = ||psi||^2 and
/// h+ = <psi_1| (U^m on the output task) |psi_0>. Equals e^{-i phi(U)} / 2
/// for an exact c-U^m achiever. Throws ModelViolation when p+ = 0.
Complex extract_fplus(const OracleAlgorithm &alg, const CMatrix &u, int m);

/// <0|A(U)|0> / sqrt(<0|A(U)^dagger A(U)|0>) on the full space.
Complex neutral_phase(const OracleAlgorithm &alg, const CMatrix &u);

// ---------------------------------------------------------------------------
// Loop traces and winding numbers.

struct LoopTrace {
    int d = 0;
    std::size_t K = 0;
    std::vector<double> t;
    std::vector<Complex> values;
    std::vector<double> unwrapped_phase;
    bool valid = false;
    int winding = 0;                // meaningful only when valid
    double min_abs = 0.0;
    double max_step = 0.0;          // largest |phase step|, closing step included
    std::optional<double> jump_t;   // start of the largest phase step when invalid
    std::string diagnostic;
};

/// Samples f along the loop at K points and unwraps the phase. Adjacent
/// phase steps must stay below pi/2 and |f| above kVanishingWitness.
LoopTrace sample_loop(const UnitaryLoop &loop, const PhaseFunction &f, int d, std::size_t K);

/// sample_loop with K doubled until the trace is valid or K reaches k_max.
LoopTrace refine_loop(const UnitaryLoop &loop, const PhaseFunction &f, int d, std::size_t K,
                      std::size_t k_max = kMaxLoopSamples);

/// Winding number of a valid trace; throws WindingError otherwise.
int winding(const LoopTrace &trace);

/// Rows t, Re f, Im f, unwrapped_phase.
void write_trace_csv(std::ostream &os, const LoopTrace &trace);

struct ProbeReport {
    int m = 0;
    int d = 0;
    LoopTrace central;
    LoopTrace generator;
    bool valid = false;             // both traces resolved
    std::optional<int> winding;     // central-loop winding when valid
    bool homogeneity_consistent = false;  // central winding == m
    bool divisibility_consistent = false; // central winding == d * generator winding
    double min_abs = 0.0;
    std::optional<double> jump_t;
    std::string diagnostic;

    nlohmann::json to_json() const;
};

/// Winds f+ along the central loop e^{2 pi i t} Id and the generator loop
/// diag(e^{2 pi i t}, 1, ...). For a continuous c-U^m achiever the central
/// winding is m and equals d times the generator winding, so m = 0 mod d. A
/// discontinuous program shows up as a trace that stays invalid under
/// refinement.
ProbeReport dichotomy_probe(const OracleAlgorithm &alg, int m, int d, std::size_t K,
                            std::size_t k_max = kMaxLoopSamples);

// ---------------------------------------------------------------------------
// Borsuk-Ulam probe.

using Point4 = std::array<double, 4>;

/// The odd map S^3 -> U(d), d even: x1 + i x2 on the upper half of the
/// diagonal, x1 - i x2 on the lower half, -x3 + i x4 on the upper half of
/// the antidiagonal and x3 + i x4 on its lower half.
CMatrix bu_map_g(const Point4 &x, int d);

/// Midpoint product grid in hyperspherical coordinates (psi, theta, phi)
/// with n, n and 2n cells: 2 n^3 points, closed under x -> -x.
class SphereGrid {
   public:
    explicit SphereGrid(std::size_t n);

    std::size_t resolution() const { return n_; }
    std::size_t size() const { return points_.size(); }
    const Point4 &operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Point4> &points() const { return points_; }
    std::size_t antipode(std::size_t i) const;

   private:
    std::size_t n_;
    std::vector<Point4> points_;
};

struct BuScanResult {
    double min_abs = 0.0;
    Point4 argmin{};
    double oddness_residual = 0.0;  // max |h(g(-x)) + h(g(x))|
    std::size_t points = 0;
};

BuScanResult bu_scan(const PhaseFunction &h, int d, const SphereGrid &grid);

}  // namespace uctrl

#endif  // UCTRL_TOPOLOGY_HPP
