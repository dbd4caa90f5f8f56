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

#include "uctrl/topology.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "uctrl/parallel.hpp"

namespace uctrl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kStepBound = std::numbers::pi / 2.0;

struct ControlledView {
    std::size_t total = 0;
    std::size_t half = 0;                  // offset of the |1>_c block
    std::vector<std::size_t> input_rest;   // input task factors besides the control
    std::vector<std::size_t> output_rest;  // output task factors besides the control
};

ControlledView controlled_view(const OracleAlgorithm &alg) {
    const auto &layout = alg.layout();
    const auto &in = alg.input_task();
    const auto &out = alg.output_task();
    if (layout.size() == 0 || layout.factor(0).role != Role::kControl || in.empty() || out.empty() ||
        in.front() != 0 || out.front() != 0) {
        throw std::invalid_argument("phase witness needs a control qubit as tensor factor 0 of the task");
    }
    ControlledView v;
    v.total = layout.total_dim();
    v.half = layout.stride(0);
    v.input_rest.assign(in.begin() + 1, in.end());
    v.output_rest.assign(out.begin() + 1, out.end());
    const auto d = static_cast<std::size_t>(alg.oracle_dim());
    if (layout.dim_of(v.input_rest) != d || layout.dim_of(v.output_rest) != d) {
        throw std::invalid_argument("phase witness needs a d-dimensional target next to the control");
    }
    return v;
}

CVector upper(const CMatrix &col, std::size_t half) { return col.col(0).head(static_cast<Eigen::Index>(half)); }
CVector lower(const CMatrix &col, std::size_t half) { return col.col(0).tail(static_cast<Eigen::Index>(half)); }

}  // namespace

CMatrix central_point(int d, double t) {
    return std::polar(1.0, kTwoPi * t) * CMatrix::Identity(d, d);
}

CMatrix generator_point(int d, double t) {
    CMatrix u = CMatrix::Identity(d, d);
    u(0, 0) = std::polar(1.0, kTwoPi * t);
    return u;
}

UnitaryLoop central_loop_fn(int d) {
    return [d](double t) { return central_point(d, t); };
}

UnitaryLoop generator_loop_fn(int d) {
    return [d](double t) { return generator_point(d, t); };
}

std::vector<CMatrix> central_loop(int d, std::size_t K) {
    if (K < kMinLoopSamples) throw std::invalid_argument("loops need K >= 16 samples");
    std::vector<CMatrix> loop;
    loop.reserve(K);
    for (std::size_t k = 0; k < K; ++k) {
        loop.push_back(central_point(d, static_cast<double>(k) / static_cast<double>(K)));
    }
    return loop;
}

Complex extract_h(const OracleAlgorithm &alg, const CMatrix &u, int m) {
    const auto view = controlled_view(alg);
    const auto task_half = alg.task_dim() / 2;

    // w = (U^m)^dagger |0> on the task, behind |1>_c.
    const CVector w = unitary_power(u, m).adjoint().col(0);
    CVector in1 = CVector::Zero(static_cast<Eigen::Index>(alg.task_dim()));
    in1.tail(static_cast<Eigen::Index>(task_half)) = w;
    const CMatrix x = alg.apply(u, alg.embed_input(in1));

    CVector in0 = CVector::Zero(static_cast<Eigen::Index>(alg.task_dim()));
    in0(0) = 1.0;
    const CMatrix y = alg.apply(u, alg.embed_input(in0));

    return lower(x, view.half).dot(upper(y, view.half));
}

Complex extract_fplus(const OracleAlgorithm &alg, const CMatrix &u, int m) {
    const auto view = controlled_view(alg);
    const auto task_half = alg.task_dim() / 2;

    CVector plus = CVector::Zero(static_cast<Eigen::Index>(alg.task_dim()));
    plus(0) = 1.0 / std::sqrt(2.0);
    plus(static_cast<Eigen::Index>(task_half)) = 1.0 / std::sqrt(2.0);
    const CMatrix psi = alg.apply(u, alg.embed_input(plus));
    const double p = psi.squaredNorm();
    if (p <= 1e-14) throw ModelViolation("success probability vanishes on |+>|0>");

    CMatrix branch0 = CMatrix::Zero(static_cast<Eigen::Index>(view.total), 1);
    branch0.topRows(static_cast<Eigen::Index>(view.half)) = upper(psi, view.half);
    apply_local(branch0, unitary_power(u, m), view.output_rest, alg.layout());
    const Complex h = lower(psi, view.half).dot(upper(branch0, view.half));
    return h / p;
}

Complex neutral_phase(const OracleAlgorithm &alg, const CMatrix &u) {
    const CMatrix v = alg.apply(u, basis(alg.layout().total_dim(), 0));
    const double norm = v.norm();
    if (norm <= 1e-14) throw ModelViolation("success probability vanishes on the all-zero input");
    return v(0, 0) / norm;
}

LoopTrace sample_loop(const UnitaryLoop &loop, const PhaseFunction &f, int d, std::size_t K) {
    if (K < kMinLoopSamples) throw std::invalid_argument("loops need K >= 16 samples");
    LoopTrace trace;
    trace.d = d;
    trace.K = K;
    trace.t.resize(K);
    trace.values.resize(K);
    for (std::size_t k = 0; k < K; ++k) trace.t[k] = static_cast<double>(k) / static_cast<double>(K);
    parallel_for(K, [&](std::size_t k) { trace.values[k] = f(loop(trace.t[k])); });

    trace.min_abs = std::numeric_limits<double>::infinity();
    for (const auto &v : trace.values) trace.min_abs = std::min(trace.min_abs, std::abs(v));

    trace.unwrapped_phase.resize(K);
    trace.unwrapped_phase[0] = std::arg(trace.values[0]);
    double total = 0.0;
    std::size_t worst = 0;
    for (std::size_t k = 0; k < K; ++k) {
        const std::size_t next = (k + 1) % K;
        const double step = std::arg(trace.values[next] * std::conj(trace.values[k]));
        total += step;
        if (next != 0) trace.unwrapped_phase[next] = trace.unwrapped_phase[k] + step;
        if (std::abs(step) > trace.max_step) {
            trace.max_step = std::abs(step);
            worst = k;
        }
    }
    trace.winding = static_cast<int>(std::lround(total / kTwoPi));

    std::ostringstream diag;
    if (trace.min_abs <= kVanishingWitness) {
        diag << "witness vanishes along the loop (min |f| = " << trace.min_abs << ")";
    } else if (trace.max_step >= kStepBound) {
        trace.jump_t = trace.t[worst];
        diag << "phase jump of " << trace.max_step << " rad after t = " << trace.t[worst];
    } else if (std::abs(total / kTwoPi - trace.winding) >= 0.05) {
        diag << "unwrapped phase does not close";
    } else {
        trace.valid = true;
    }
    trace.diagnostic = diag.str();
    return trace;
}

LoopTrace refine_loop(const UnitaryLoop &loop, const PhaseFunction &f, int d, std::size_t K, std::size_t k_max) {
    LoopTrace trace = sample_loop(loop, f, d, K);
    while (!trace.valid && trace.K < k_max) trace = sample_loop(loop, f, d, trace.K * 2);
    return trace;
}

int winding(const LoopTrace &trace) {
    if (!trace.valid) throw WindingError("trace unresolved at K = " + std::to_string(trace.K) + ": " + trace.diagnostic);
    return trace.winding;
}

void write_trace_csv(std::ostream &os, const LoopTrace &trace) {
    os << "t,re_f,im_f,unwrapped_phase\n";
    os << std::setprecision(17);
    for (std::size_t k = 0; k < trace.K; ++k) {
        os << trace.t[k] << ',' << trace.values[k].real() << ',' << trace.values[k].imag() << ','
           << trace.unwrapped_phase[k] << '\n';
    }
}

nlohmann::json ProbeReport::to_json() const {
    nlohmann::json j{{"m", m},
                     {"d", d},
                     {"K", central.K},
                     {"generator_K", generator.K},
                     {"valid", valid},
                     {"min_abs", min_abs},
                     {"homogeneity_consistent", homogeneity_consistent},
                     {"divisibility_consistent", divisibility_consistent},
                     {"diagnostic", diagnostic}};
    j["winding"] = winding ? nlohmann::json(*winding) : nlohmann::json(nullptr);
    j["generator_winding"] = generator.valid ? nlohmann::json(generator.winding) : nlohmann::json(nullptr);
    j["jump_t"] = jump_t ? nlohmann::json(*jump_t) : nlohmann::json(nullptr);
    return j;
}

ProbeReport dichotomy_probe(const OracleAlgorithm &alg, int m, int d, std::size_t K, std::size_t k_max) {
    if (alg.oracle_dim() != d) throw TaskMismatch("probe dimension differs from the oracle dimension");
    const PhaseFunction f = [&alg, m](const CMatrix &u) { return extract_fplus(alg, u, m); };

    ProbeReport report;
    report.m = m;
    report.d = d;
    report.central = refine_loop(central_loop_fn(d), f, d, K, k_max);
    report.generator = refine_loop(generator_loop_fn(d), f, d, K, k_max);
    report.valid = report.central.valid && report.generator.valid;
    report.min_abs = std::min(report.central.min_abs, report.generator.min_abs);
    if (report.central.valid) {
        report.winding = report.central.winding;
        report.homogeneity_consistent = report.central.winding == m;
    }
    if (report.valid) report.divisibility_consistent = report.central.winding == d * report.generator.winding;
    report.jump_t = report.central.jump_t ? report.central.jump_t : report.generator.jump_t;

    if (!report.central.valid) {
        report.diagnostic = "central loop: " + report.central.diagnostic;
    } else if (!report.generator.valid) {
        report.diagnostic = "generator loop: " + report.generator.diagnostic;
    } else if (!report.homogeneity_consistent) {
        report.diagnostic = "central winding differs from m";
    } else if (!report.divisibility_consistent) {
        report.diagnostic = "central winding is not d times the generator winding";
    }
    return report;
}

CMatrix bu_map_g(const Point4 &x, int d) {
    if (d < 2 || d % 2 != 0) throw DimensionError("bu_map_g needs an even d");
    const double norm = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
    if (std::abs(norm - 1.0) > 1e-9) throw std::invalid_argument("bu_map_g needs a unit vector");
    const Complex a(x[0], x[1]);
    const Complex c(x[2], x[3]);
    CMatrix g = CMatrix::Zero(d, d);
    const int half = d / 2;
    for (int i = 0; i < half; ++i) {
        g(i, i) = a;
        g(d - 1 - i, d - 1 - i) = std::conj(a);
        g(i, d - 1 - i) = -std::conj(c);
        g(d - 1 - i, i) = c;
    }
    return g;
}

SphereGrid::SphereGrid(std::size_t n) : n_(n) {
    if (n < 1) throw std::invalid_argument("sphere grid needs n >= 1");
    const double h = std::numbers::pi / static_cast<double>(n);
    points_.resize(2 * n * n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double psi = (static_cast<double>(i) + 0.5) * h;
        for (std::size_t j = 0; j < n; ++j) {
            const double theta = (static_cast<double>(j) + 0.5) * h;
            for (std::size_t k = 0; k < 2 * n; ++k) {
                const double phi = (static_cast<double>(k) + 0.5) * h;
                const double s = std::sin(psi) * std::sin(theta);
                points_[(i * n + j) * 2 * n + k] = {std::cos(psi), std::sin(psi) * std::cos(theta),
                                                    s * std::cos(phi), s * std::sin(phi)};
            }
        }
    }
    // Pair antipodes exactly.
    for (std::size_t idx = 0; idx < points_.size(); ++idx) {
        const std::size_t anti = antipode(idx);
        if (idx < anti) {
            for (int c = 0; c < 4; ++c) points_[anti][c] = -points_[idx][c];
        }
    }
}

std::size_t SphereGrid::antipode(std::size_t idx) const {
    const std::size_t k = idx % (2 * n_);
    const std::size_t j = (idx / (2 * n_)) % n_;
    const std::size_t i = idx / (2 * n_ * n_);
    return ((n_ - 1 - i) * n_ + (n_ - 1 - j)) * 2 * n_ + (k + n_) % (2 * n_);
}

BuScanResult bu_scan(const PhaseFunction &h, int d, const SphereGrid &grid) {
    if (d < 2 || d % 2 != 0) throw DimensionError("bu_scan needs an even d");
    std::vector<Complex> values(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { values[i] = h(bu_map_g(grid[i], d)); });

    BuScanResult result;
    result.points = grid.size();
    result.min_abs = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double a = std::abs(values[i]);
        if (a < result.min_abs) {
            result.min_abs = a;
            result.argmin = grid[i];
        }
        result.oddness_residual = std::max(result.oddness_residual, std::abs(values[i] + values[grid.antipode(i)]));
    }
    return result;
}

}  // namespace uctrl
