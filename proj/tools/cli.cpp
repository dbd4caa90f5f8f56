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

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "uctrl/circuit_ir.hpp"
#include "uctrl/constructions.hpp"
#include "uctrl/parallel.hpp"
#include "uctrl/topology.hpp"

namespace uctrl::cli {

namespace {

using nlohmann::json;

class InputError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::string target;
    std::string task = "cUm";
    std::string check;
    std::string grid = "theta";
    std::string source = "kitaev";
    std::string loop = "central";
    int d = 2;
    std::optional<int> m;
    std::size_t K = 256;
    std::size_t samples = 20;
    std::size_t res = 16;
    std::uint64_t seed = 0;
    double tol = kDefaultExactTol;
    std::string out;
    std::string csv;
    bool d_given = false;
};

void validate(const Options &o) {
    if (o.d < 2 || o.d > 4) throw InputError("--d must lie in [2, 4]");
    if (o.K < kMinLoopSamples || (o.K & (o.K - 1)) != 0) throw InputError("--K must be a power of two >= 16");
    if (!(o.tol > 0.0 && o.tol <= 1e-2)) throw InputError("--tol must lie in (0, 1e-2]");
}

int m_or_d(const Options &o) { return o.m.value_or(o.d); }

struct Subject {
    OracleAlgorithm alg;
    bool root_composed = false;
};

Subject resolve(Options &o) {
    if (o.target == "root-composed") return {principal_root_cU(o.d).algorithm(), true};
    if (std::filesystem::is_regular_file(o.target)) {
        auto alg = load_algorithm(o.target);
        if (o.d_given && o.d != alg.oracle_dim()) throw InputError("--d disagrees with the circuit's oracle dimension");
        o.d = alg.oracle_dim();
        return {std::move(alg), false};
    }
    const std::string name = o.target == "constant-circuit" ? "constant" : o.target;
    const auto &names = construction_names();
    if (std::find(names.begin(), names.end(), name) != names.end()) {
        return {build_construction(name, o.d, m_or_d(o)), false};
    }
    throw InputError("'" + o.target + "' is neither a circuit file nor a known construction");
}

Task make_task(const Options &o, const Subject &s) {
    Task task = [&] {
        if (o.task == "cUm") return tasks::controlled_power(o.d, m_or_d(o));
        if (o.task == "conjugation") return tasks::conjugation(o.d);
        if (o.task == "transpose") return tasks::transpose(o.d);
        if (o.task == "inverse") return tasks::inverse(o.d);
        if (o.task == "power") return tasks::power(o.d, m_or_d(o));
        throw InputError("unknown task '" + o.task + "'");
    }();
    return s.root_composed ? task.with_letters({"root"}) : task;
}

void emit(const Options &o, std::ostream &out, const std::string &text) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw InputError("cannot write '" + o.out + "'");
    f << text;
}

std::vector<CMatrix> sample_unitaries(const Options &o) {
    std::vector<CMatrix> us(o.samples);
    for (std::size_t k = 0; k < o.samples; ++k) us[k] = haar_unitary(o.d, o.seed + k);
    return us;
}

json opt_phase(const std::optional<double> &phase) { return phase ? json(*phase) : json(nullptr); }

// ---------------------------------------------------------------------------

int cmd_build(Options &o, std::ostream &out) {
    validate(o);
    const auto alg = build_construction(o.target == "constant-circuit" ? "constant" : o.target, o.d, m_or_d(o));
    emit(o, out, algorithm_to_json(alg).dump(1) + "\n");
    return kPass;
}

int cmd_verify(Options &o, std::ostream &out, std::ostream &err) {
    validate(o);
    const Subject s = resolve(o);
    validate(o);
    std::string check = o.check;
    if (o.task == "neutralise") check = "neutralise";
    if (check.empty()) check = "exact";
    const auto us = sample_unitaries(o);

    json report{{"check", check}, {"task", o.task}, {"d", o.d}, {"samples", o.samples}, {"seed", o.seed}, {"tol", o.tol}};
    json results = json::array();
    bool pass = true;
    double max_residual = 0.0;

    if (check == "neutralise") {
        const auto r = check_neutralises(s.alg, us, o.tol);
        for (std::size_t k = 0; k < us.size(); ++k) {
            results.push_back({{"U_seed", o.seed + k},
                               {"result", r.residuals[k] <= o.tol},
                               {"residual", r.residuals[k]},
                               {"phase", r.phases[k]}});
            max_residual = std::max(max_residual, r.residuals[k]);
        }
        report["r"] = r.r;
        report["diagnostic"] = r.diagnostic;
        pass = r.pass;
    } else if (check == "homogeneity") {
        const int degree = static_homogeneity(s.alg);
        std::vector<json> rows(us.size());
        parallel_for(us.size(), [&](std::size_t k) {
            std::mt19937_64 rng(o.seed + k);
            const double angle = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
            const double res = numeric_homogeneity_check(s.alg, us[k], std::polar(1.0, angle), degree);
            rows[k] = {{"U_seed", o.seed + k}, {"result", res <= o.tol}, {"residual", res}, {"lambda_arg", angle}};
        });
        for (auto &row : rows) {
            pass = pass && row["result"].get<bool>();
            max_residual = std::max(max_residual, row["residual"].get<double>());
            results.push_back(std::move(row));
        }
        report["degree"] = degree;
    } else {
        const Task task = make_task(o, s);
        if (check == "clean") {
            const auto r = check_clean(s.alg, task, us, o.tol);
            for (std::size_t k = 0; k < r.per_oracle.size(); ++k) {
                const auto &a = r.per_oracle[k];
                results.push_back({{"U_seed", o.seed + k},
                                   {"result", a.achieved},
                                   {"residual", a.residual},
                                   {"phase", opt_phase(a.phase)},
                                   {"success_probability", a.success_probability}});
                max_residual = std::max(max_residual, a.residual);
            }
            report["diagnostic"] = r.diagnostic;
            pass = r.clean;
        } else if (check == "exact" || check == "eps") {
            std::vector<json> rows(us.size());
            parallel_for(us.size(), [&](std::size_t k) {
                if (check == "exact") {
                    const auto a = check_exact(s.alg, task, us[k], o.tol);
                    rows[k] = {{"U_seed", o.seed + k},
                               {"result", a.achieved},
                               {"residual", a.residual},
                               {"second_singular_value", a.second_singular_value},
                               {"phase", opt_phase(a.phase)},
                               {"success_probability", a.success_probability},
                               {"diagnostic", a.diagnostic}};
                } else {
                    const double e = eps_distance_estimate(s.alg, task, us[k], 8, o.seed + k);
                    rows[k] = {{"U_seed", o.seed + k}, {"result", e <= o.tol}, {"residual", e}};
                }
            });
            for (auto &row : rows) {
                pass = pass && row["result"].get<bool>();
                max_residual = std::max(max_residual, row["residual"].get<double>());
                results.push_back(std::move(row));
            }
        } else {
            throw InputError("unknown check '" + check + "'");
        }
    }

    report["results"] = std::move(results);
    report["max_residual"] = max_residual;
    report["pass"] = pass;
    emit(o, out, report.dump(1) + "\n");
    if (!pass) err << "verification failed (max residual " << max_residual << ")\n";
    return pass ? kPass : kCheckFailed;
}

int cmd_probe(Options &o, std::ostream &out) {
    validate(o);
    const Subject s = resolve(o);
    validate(o);
    if (o.loop != "central" && o.loop != "generator") throw InputError("--loop must be central or generator");
    const auto report = dichotomy_probe(s.alg, m_or_d(o), o.d, o.K);
    if (!o.csv.empty()) {
        std::ofstream f(o.csv);
        if (!f) throw InputError("cannot write '" + o.csv + "'");
        write_trace_csv(f, o.loop == "central" ? report.central : report.generator);
    }
    emit(o, out, report.to_json().dump(1) + "\n");
    const bool pass = report.valid && report.homogeneity_consistent && report.divisibility_consistent;
    return pass ? kPass : kCheckFailed;
}

int cmd_bu_scan(Options &o, std::ostream &out) {
    validate(o);
    if (o.d % 2 != 0) throw InputError("bu-scan needs an even --d");
    if (o.res < 1 || o.res > 128) throw InputError("--res must lie in [1, 128]");
    std::optional<OracleAlgorithm> alg;
    if (o.source == "kitaev") {
        alg = kitaev_cswap(o.d);
    } else if (o.source == "root-composed") {
        alg = principal_root_cU(o.d).algorithm();
    } else if (o.source != "constant") {
        throw InputError("--source must be kitaev, root-composed or constant");
    }
    const PhaseFunction h = [&alg](const CMatrix &u) { return alg ? extract_h(*alg, u, 1) : Complex(1.0); };
    const auto r = bu_scan(h, o.d, SphereGrid(o.res));
    const json report{{"d", o.d},
                      {"source", o.source},
                      {"resolution", o.res},
                      {"points", r.points},
                      {"min_abs", r.min_abs},
                      {"argmin", r.argmin},
                      {"oddness_residual", r.oddness_residual}};
    emit(o, out, report.dump(1) + "\n");
    return kPass;
}

int cmd_sweep(Options &o, std::ostream &out) {
    validate(o);
    const Subject s = resolve(o);
    validate(o);
    const Task task = make_task(o, s);
    UnitaryLoop point;
    double scale = 1.0;
    if (o.grid == "theta") {
        scale = 2.0 * std::numbers::pi;
        point = [d = o.d](double t) {
            CMatrix u = CMatrix::Identity(d, d);
            u(1, 1) = std::polar(1.0, 2.0 * std::numbers::pi * t);
            return u;
        };
    } else if (o.grid == "central") {
        point = central_loop_fn(o.d);
    } else if (o.grid == "generator") {
        point = generator_loop_fn(o.d);
    } else {
        throw InputError("--grid must be theta, central or generator");
    }

    const std::size_t n = o.samples;
    std::vector<std::string> rows(n);
    parallel_for(n, [&](std::size_t k) {
        const double t = static_cast<double>(k) / static_cast<double>(n);
        const CMatrix u = point(t);
        const auto exact = check_exact(s.alg, task, u, o.tol);
        const double p = success_prob(s.alg, u, basis(s.alg.task_dim(), 0));
        const double dev = pure_deviation(s.alg, task, u);
        const double eps = eps_distance_estimate(s.alg, task, u, 4, o.seed + k);
        std::ostringstream row;
        row << std::setprecision(12) << t * scale << ',' << p << ',' << dev << ',' << eps << ',';
        if (exact.phase) row << *exact.phase;
        row << ',' << (exact.achieved ? 1 : 0) << '\n';
        rows[k] = row.str();
    });
    std::string csv = "param,success_prob,residual,eps,phase,achieved\n";
    for (const auto &r : rows) csv += r;
    emit(o, out, csv);
    return kPass;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Postselection oracle algorithm laboratory"};
    app.require_subcommand(1);
    Options o;

    const auto common = [&o](CLI::App *cmd) {
        cmd->add_option("--d", o.d, "oracle dimension");
        cmd->add_option("--m", o.m, "power of U (defaults to d)");
        cmd->add_option("--seed", o.seed, "first Haar seed");
        cmd->add_option("--tol", o.tol, "tolerance");
        cmd->add_option("--out", o.out, "report file (default: stdout)");
    };

    auto *build = app.add_subcommand("build", "emit the circuit IR of a construction");
    build->add_option("name", o.target, "construction")->required()->check(CLI::IsMember(
        [] {
            auto names = construction_names();
            names.push_back("constant-circuit");
            return names;
        }()));
    common(build);

    auto *verify = app.add_subcommand("verify", "check a circuit against a task on Haar samples");
    verify->add_option("circuit", o.target, "IR file or construction name")->required();
    verify->add_option("--task", o.task, "cUm|conjugation|transpose|inverse|power|neutralise");
    verify->add_option("--check", o.check, "exact|eps|clean|homogeneity|neutralise");
    verify->add_option("--samples", o.samples, "number of Haar unitaries");
    common(verify);

    auto *probe = app.add_subcommand("probe", "wind the c-U^m phase witness around U(d) loops");
    probe->add_option("circuit", o.target, "IR file, construction name or root-composed")->required();
    probe->add_option("--K", o.K, "initial loop samples (power of two)");
    probe->add_option("--csv", o.csv, "trace CSV file");
    probe->add_option("--loop", o.loop, "trace written to --csv: central|generator");
    common(probe);

    auto *bu = app.add_subcommand("bu-scan", "scan h o g over a grid on S^3");
    bu->add_option("--res", o.res, "grid resolution n (2 n^3 points)");
    bu->add_option("--source", o.source, "kitaev|root-composed|constant");
    common(bu);

    auto *sweep = app.add_subcommand("sweep", "per-U residuals along a one-parameter family (CSV)");
    sweep->add_option("circuit", o.target, "IR file, construction name or root-composed")->required();
    sweep->add_option("--task", o.task, "task to compare against");
    sweep->add_option("--grid", o.grid, "theta|central|generator");
    sweep->add_option("--samples", o.samples, "grid points");
    common(sweep);

    // CLI11 consumes a reversed argument vector without the program name.
    std::vector<std::string> rev;
    if (args.size() > 1) rev.assign(args.rbegin(), args.rend() - 1);
    try {
        app.parse(rev);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kInputError;
    }
    for (const auto *cmd : {build, verify, probe, bu, sweep}) {
        if (cmd->parsed() && cmd->get_option("--d")->count() > 0) o.d_given = true;
    }

    try {
        if (build->parsed()) return cmd_build(o, out);
        if (verify->parsed()) return cmd_verify(o, out, err);
        if (probe->parsed()) return cmd_probe(o, out);
        if (bu->parsed()) return cmd_bu_scan(o, out);
        return cmd_sweep(o, out);
    } catch (const ModelViolation &e) {
        err << "model violation: " << e.what() << '\n';
        return kModelViolation;
    } catch (const WindingError &e) {
        err << e.what() << '\n';
        return kCheckFailed;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace uctrl::cli
