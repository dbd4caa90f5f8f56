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

#include "uctrl/oracle_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace uctrl {

// ---------------------------------------------------------------------------
// Query letters

QueryLetter QueryLetter::id() {
    return {"id", 1, [](const CMatrix &u) { return u; }};
}

QueryLetter QueryLetter::inv() {
    return {"inv", -1, [](const CMatrix &u) { return CMatrix(u.adjoint()); }};
}

QueryLetter QueryLetter::custom(std::string name, std::function<CMatrix(const CMatrix &)> fn,
                                std::optional<int> degree) {
    return {std::move(name), degree, std::move(fn)};
}

CMatrix QueryLetter::operator()(const CMatrix &u) const {
    if (!evaluate) throw std::logic_error("query letter '" + name + "' has no evaluator");
    CMatrix out = evaluate(u);
    if (!is_unitary(out)) {
        throw std::invalid_argument("query letter '" + name + "' produced a non-unitary operator");
    }
    return out;
}

QueryLetter letter_from_name(const std::string &name) {
    if (name == "id") return QueryLetter::id();
    if (name == "inv") return QueryLetter::inv();
    throw std::invalid_argument("unknown query letter '" + name + "' (expected id or inv)");
}

// ---------------------------------------------------------------------------
// OracleAlgorithm

namespace {

void validate_targets(const RegisterLayout &layout, const std::vector<std::size_t> &targets,
                      const std::optional<ControlSpec> &control, const char *what) {
    for (std::size_t a = 0; a < targets.size(); ++a) {
        if (targets[a] >= layout.size()) {
            throw DimensionError(std::string(what) + ": target factor out of range");
        }
        for (std::size_t b = a + 1; b < targets.size(); ++b) {
            if (targets[a] == targets[b]) throw DimensionError(std::string(what) + ": duplicate targets");
        }
    }
    if (control) {
        if (control->factor >= layout.size() || layout.dim(control->factor) != 2) {
            throw DimensionError(std::string(what) + ": control must be a qubit factor");
        }
        if (std::find(targets.begin(), targets.end(), control->factor) != targets.end()) {
            throw DimensionError(std::string(what) + ": control factor among targets");
        }
    }
}

TaskRegisters default_registers(const RegisterLayout &layout) {
    TaskRegisters regs;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        const auto role = layout.factor(i).role;
        if (role == Role::kControl || role == Role::kTask) regs.input.push_back(i);
    }
    regs.output = regs.input;
    return regs;
}

}  // namespace

OracleAlgorithm::OracleAlgorithm(std::string name, RegisterLayout layout, int oracle_dim,
                                 std::vector<Step> steps, Projector projector,
                                 std::optional<TaskRegisters> registers)
    : name_(std::move(name)),
      layout_(std::move(layout)),
      oracle_dim_(oracle_dim),
      steps_(std::move(steps)),
      projector_(std::move(projector)),
      registers_(registers ? std::move(*registers) : default_registers(layout_)) {
    if (oracle_dim_ < 1) throw DimensionError("oracle dimension must be positive");

    for (const auto &step : steps_) {
        if (const auto *gate = std::get_if<FixedGate>(&step)) {
            validate_targets(layout_, gate->targets, gate->control, "fixed gate");
            const auto n = static_cast<Eigen::Index>(layout_.dim_of(gate->targets));
            if (gate->op.rows() != n || gate->op.cols() != n) {
                throw DimensionError("fixed gate does not match its target factors");
            }
            if (!is_unitary(gate->op)) throw std::invalid_argument("fixed gate is not unitary");
        } else {
            const auto &query = std::get<QueryStep>(step);
            validate_targets(layout_, query.targets, std::nullopt, "query");
            if (layout_.dim_of(query.targets) != static_cast<std::size_t>(oracle_dim_)) {
                throw DimensionError("query targets do not have the oracle's dimension");
            }
            if (!query.letter.evaluate) throw std::invalid_argument("query letter has no evaluator");
        }
    }

    if (!projector_.is_identity()) {
        validate_targets(layout_, projector_.targets, std::nullopt, "projector");
        const auto n = static_cast<Eigen::Index>(layout_.dim_of(projector_.targets));
        if (projector_.op.rows() != n || projector_.op.cols() != n) {
            throw DimensionError("projector does not match its target factors");
        }
        if (!is_projector(projector_.op)) throw std::invalid_argument("success operator is not a projector");
    }

    validate_targets(layout_, registers_.input, std::nullopt, "input task register");
    validate_targets(layout_, registers_.output, std::nullopt, "output task register");
    if (registers_.input.size() != registers_.output.size()) {
        throw DimensionError("input and output task registers differ in shape");
    }
    for (std::size_t k = 0; k < registers_.input.size(); ++k) {
        if (layout_.dim(registers_.input[k]) != layout_.dim(registers_.output[k])) {
            throw DimensionError("input and output task registers differ in shape");
        }
    }
}

std::vector<QueryLetter> OracleAlgorithm::query_sequence() const {
    std::vector<QueryLetter> seq;
    for (const auto &step : steps_) {
        if (const auto *q = std::get_if<QueryStep>(&step)) seq.push_back(q->letter);
    }
    return seq;
}

std::size_t OracleAlgorithm::query_count() const {
    return static_cast<std::size_t>(std::count_if(steps_.begin(), steps_.end(), [](const Step &s) {
        return std::holds_alternative<QueryStep>(s);
    }));
}

CMatrix OracleAlgorithm::apply(const CMatrix &u, CMatrix block) const {
    if (u.rows() != oracle_dim_ || u.cols() != oracle_dim_) {
        throw DimensionError("oracle has the wrong dimension");
    }
    if (!is_unitary(u)) throw std::invalid_argument("oracle is not unitary");

    std::map<std::string, CMatrix> letters;
    for (const auto &step : steps_) {
        if (const auto *gate = std::get_if<FixedGate>(&step)) {
            apply_local(block, gate->op, gate->targets, layout_, gate->control);
        } else {
            const auto &query = std::get<QueryStep>(step);
            auto it = letters.find(query.letter.name);
            if (it == letters.end()) it = letters.emplace(query.letter.name, query.letter(u)).first;
            apply_local(block, it->second, query.targets, layout_);
        }
    }
    if (!projector_.is_identity()) apply_local(block, projector_.op, projector_.targets, layout_);
    return block;
}

CVector OracleAlgorithm::embed_input(const CVector &task_state) const {
    const auto offsets = layout_.offsets(registers_.input);
    if (task_state.size() != static_cast<Eigen::Index>(offsets.size())) {
        throw DimensionError("input state does not match the task register");
    }
    CVector full = CVector::Zero(static_cast<Eigen::Index>(layout_.total_dim()));
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        full(static_cast<Eigen::Index>(offsets[i])) = task_state(static_cast<Eigen::Index>(i));
    }
    return full;
}

CMatrix OracleAlgorithm::input_isometry() const {
    const auto offsets = layout_.offsets(registers_.input);
    CMatrix iso = CMatrix::Zero(static_cast<Eigen::Index>(layout_.total_dim()),
                                static_cast<Eigen::Index>(offsets.size()));
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        iso(static_cast<Eigen::Index>(offsets[i]), static_cast<Eigen::Index>(i)) = 1.0;
    }
    return iso;
}

// ---------------------------------------------------------------------------
// Tasks

CMatrix TaskValue::at(double phi) const {
    if (!phase_covariant()) return fixed;
    return fixed + std::polar(1.0, phi) * phased;
}

Task::Task(std::string name, int oracle_dim, RegisterLayout layout, std::vector<std::string> alphabet,
           std::function<TaskValue(const CMatrix &)> evaluator, bool phase_covariant)
    : name_(std::move(name)),
      oracle_dim_(oracle_dim),
      layout_(std::move(layout)),
      alphabet_(std::move(alphabet)),
      evaluator_(std::move(evaluator)),
      phase_covariant_(phase_covariant) {}

TaskValue Task::operator()(const CMatrix &u) const {
    if (u.rows() != oracle_dim_ || u.cols() != oracle_dim_) {
        throw DimensionError("task '" + name_ + "': oracle has the wrong dimension");
    }
    return evaluator_(u);
}

Task Task::with_letters(const std::vector<std::string> &letters) const {
    Task copy = *this;
    for (const auto &l : letters) {
        if (std::find(copy.alphabet_.begin(), copy.alphabet_.end(), l) == copy.alphabet_.end()) {
            copy.alphabet_.push_back(l);
        }
    }
    return copy;
}

namespace tasks {

namespace {

CMatrix projector_on(int value) {
    CMatrix p = CMatrix::Zero(2, 2);
    p(value, value) = 1.0;
    return p;
}

}  // namespace

Task controlled_power(int d, int m) {
    RegisterLayout layout({{2, Role::kControl, {}}, {d, Role::kTask, {}}});
    return Task(
        "cUm", d, std::move(layout), {"id", "inv"},
        [d, m](const CMatrix &u) {
            return TaskValue{kron(projector_on(0), CMatrix::Identity(d, d)),
                             kron(projector_on(1), unitary_power(u, m))};
        },
        true);
}

Task conjugation(int d) {
    return Task(
        "conjugation", d, RegisterLayout::uniform({d}), {"id"},
        [](const CMatrix &u) { return TaskValue{u.conjugate(), {}}; }, false);
}

Task transpose(int d) {
    return Task(
        "transpose", d, RegisterLayout::uniform({d}), {"id"},
        [](const CMatrix &u) { return TaskValue{u.transpose(), {}}; }, false);
}

Task inverse(int d) {
    return Task(
        "inverse", d, RegisterLayout::uniform({d}), {"id"},
        [](const CMatrix &u) { return TaskValue{u.adjoint(), {}}; }, false);
}

Task power(int d, int q) {
    return Task(
        "power", d, RegisterLayout::uniform({d}), {"id", "inv"},
        [q](const CMatrix &u) { return TaskValue{unitary_power(u, q), {}}; }, false);
}

}  // namespace tasks

// ---------------------------------------------------------------------------
// Evaluation

CMatrix eval(const OracleAlgorithm &alg, const CMatrix &u) {
    const auto n = static_cast<Eigen::Index>(alg.layout().total_dim());
    return alg.apply(u, CMatrix::Identity(n, n));
}

namespace {

constexpr double kNormalisationTol = 1e-8;
constexpr double kVanishingProbability = 1e-14;

void require_normalised(const CVector &state) {
    if (std::abs(state.norm() - 1.0) > kNormalisationTol) {
        throw std::invalid_argument("input state is not normalised");
    }
}

void require_density_matrix(const CMatrix &rho, std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    if (rho.rows() != n || rho.cols() != n) throw DimensionError("density matrix does not fit the task register");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kNormalisationTol) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex(1.0)) > kNormalisationTol) {
        throw std::invalid_argument("density matrix does not have unit trace");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kNormalisationTol) {
        throw std::invalid_argument("density matrix is not positive semidefinite");
    }
}

/// vec(T)[o * in + i] = T(o, i).
CVector vec_rows(const CMatrix &t) {
    CVector v(t.size());
    for (Eigen::Index o = 0; o < t.rows(); ++o) {
        for (Eigen::Index i = 0; i < t.cols(); ++i) v(o * t.cols() + i) = t(o, i);
    }
    return v;
}

/// Operator norm of the map H_t -> Z encoded by a TaskAction-shaped matrix,
/// through its in x in Gram matrix.
double action_op_norm(const CMatrix &m, std::size_t in_dim, std::size_t out_dim) {
    const auto in = static_cast<Eigen::Index>(in_dim);
    CMatrix gram = CMatrix::Zero(in, in);
    for (std::size_t o = 0; o < out_dim; ++o) {
        const auto rows = m.middleRows(static_cast<Eigen::Index>(o) * in, in);
        gram.noalias() += rows.conjugate() * rows.transpose();
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

CMatrix channel_from_action(const TaskAction &act, const CMatrix &rho) {
    const auto out = static_cast<Eigen::Index>(act.out_dim);
    CMatrix result = CMatrix::Zero(out, out);
    for (std::size_t a = 0; a < act.anc_dim; ++a) {
        const CMatrix b = act.branch(a);
        result.noalias() += b * rho * b.adjoint();
    }
    return result;
}

double hermitian_trace_norm(const CMatrix &x) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(x, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

void require_compatible(const OracleAlgorithm &alg, const Task &task) {
    if (alg.oracle_dim() != task.oracle_dim()) {
        throw TaskMismatch("algorithm and task disagree on the oracle dimension");
    }
    const auto &tl = task.layout();
    const auto check = [&](const std::vector<std::size_t> &reg, const char *which) {
        if (reg.size() != tl.size()) {
            throw TaskMismatch(std::string(which) + " task register does not match the task layout");
        }
        for (std::size_t k = 0; k < reg.size(); ++k) {
            if (alg.layout().dim(reg[k]) != tl.dim(k)) {
                throw TaskMismatch(std::string(which) + " task register does not match the task layout");
            }
        }
    };
    check(alg.input_task(), "input");
    check(alg.output_task(), "output");
    for (const auto &letter : alg.query_sequence()) {
        const auto &alphabet = task.alphabet();
        if (std::find(alphabet.begin(), alphabet.end(), letter.name) == alphabet.end()) {
            throw TaskMismatch("query letter '" + letter.name + "' is not in the task alphabet");
        }
    }
}

/// Minimises f over phi in [0, 2 pi): a uniform grid followed by a
/// golden-section search around the best grid point.
std::pair<double, double> minimise_phase(const std::function<double(double)> &f, int grid = 720) {
    const double step = 2.0 * std::numbers::pi / grid;
    double best_phi = 0.0;
    double best = f(0.0);
    for (int k = 1; k < grid; ++k) {
        const double v = f(k * step);
        if (v < best) {
            best = v;
            best_phi = k * step;
        }
    }
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = best_phi - step;
    double b = best_phi + step;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 80 && b - a > 1e-13; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    const double phi = fc < fd ? c : d;
    const double val = std::min(fc, fd);
    if (val < best) return {phi, val};
    return {best_phi, best};
}

std::string describe(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

}  // namespace

double success_prob(const OracleAlgorithm &alg, const CMatrix &u, const CVector &input_state) {
    require_normalised(input_state);
    CMatrix col = alg.embed_input(input_state);
    return alg.apply(u, std::move(col)).squaredNorm();
}

CMatrix TaskAction::branch(std::size_t a) const {
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    return Eigen::Map<const RowMajor>(m.col(static_cast<Eigen::Index>(a)).data(),
                                      static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(in_dim));
}

TaskAction task_action(const OracleAlgorithm &alg, const CMatrix &u) {
    const CMatrix block = alg.apply(u, alg.input_isometry());
    const auto &layout = alg.layout();
    const auto out_off = layout.offsets(alg.output_task());
    const auto anc_off = layout.complement_offsets(alg.output_task());
    TaskAction act;
    act.in_dim = alg.task_dim();
    act.out_dim = out_off.size();
    act.anc_dim = anc_off.size();
    const auto in = static_cast<Eigen::Index>(act.in_dim);
    act.m.resize(static_cast<Eigen::Index>(act.out_dim) * in, static_cast<Eigen::Index>(act.anc_dim));
    for (std::size_t o = 0; o < act.out_dim; ++o) {
        for (std::size_t a = 0; a < act.anc_dim; ++a) {
            const auto row = static_cast<Eigen::Index>(out_off[o] + anc_off[a]);
            for (Eigen::Index i = 0; i < in; ++i) {
                act.m(static_cast<Eigen::Index>(o) * in + i, static_cast<Eigen::Index>(a)) = block(row, i);
            }
        }
    }
    return act;
}

ChannelOutput apply_channel(const OracleAlgorithm &alg, const CMatrix &u, const CMatrix &rho) {
    require_density_matrix(rho, alg.task_dim());
    const auto act = task_action(alg, u);
    ChannelOutput out;
    out.state = channel_from_action(act, rho);
    out.probability = out.state.trace().real();
    return out;
}

// ---------------------------------------------------------------------------
// Verification

AchievementResult check_exact(const OracleAlgorithm &alg, const Task &task, const CMatrix &u, double tol) {
    require_compatible(alg, task);
    const auto act = task_action(alg, u);
    const TaskValue target = task(u);

    AchievementResult result;
    Eigen::JacobiSVD<CMatrix> svd(act.m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &s = svd.singularValues();
    const double s1 = s.size() > 0 ? s(0) : 0.0;
    result.second_singular_value = s.size() > 1 ? s(1) : 0.0;
    if (s1 <= tol) {
        result.residual = s1;
        result.diagnostic = "output vanishes on the all-zero ancilla input";
        return result;
    }
    const CVector a = svd.matrixU().col(0);
    const CVector b = s1 * svd.matrixV().col(0).conjugate();

    Complex alpha;
    CMatrix t;
    if (target.phase_covariant()) {
        const CVector p0 = vec_rows(target.fixed);
        const CVector p1 = vec_rows(target.phased);
        Eigen::Matrix2cd normal;
        normal << p0.squaredNorm(), p0.dot(p1), p1.dot(p0), p1.squaredNorm();
        const Eigen::Vector2cd rhs(p0.dot(a), p1.dot(a));
        const Eigen::Vector2cd coef = normal.fullPivLu().solve(rhs);
        if (std::abs(coef(0)) <= tol || std::abs(coef(1)) <= tol) {
            result.residual = 1.0;
            result.diagnostic = "dominant task factor misses one control branch";
            return result;
        }
        const double phi = std::arg(coef(1) / coef(0));
        result.phase = phi;
        alpha = coef(0);
        t = target.at(phi);
    } else {
        t = target.fixed;
        const CVector vt = vec_rows(t);
        alpha = vt.dot(a) / vt.squaredNorm();
    }
    result.garbage = alpha * b;
    const CVector vt = vec_rows(t);
    result.residual = action_op_norm(act.m - vt * result.garbage.transpose(), act.in_dim, act.out_dim);
    result.success_probability = result.garbage.squaredNorm();

    const bool rank_one = result.second_singular_value <= tol;
    const bool fits = result.residual <= tol;
    result.achieved = rank_one && fits && result.success_probability > kVanishingProbability;
    if (!rank_one) {
        result.diagnostic = "task and ancilla stay entangled: second Schmidt value " +
                            describe(result.second_singular_value) + " exceeds " + describe(tol);
    } else if (!fits) {
        result.diagnostic = "rank-one output is not proportional to t(U): residual " + describe(result.residual);
    } else if (!result.achieved) {
        result.diagnostic = "success probability vanishes";
    }
    return result;
}

double pure_deviation(const OracleAlgorithm &alg, const Task &task, const CMatrix &u) {
    require_compatible(alg, task);
    const auto act = task_action(alg, u);
    const TaskValue target = task(u);
    const auto deviation = [&](const CMatrix &t) {
        const CVector vt = vec_rows(t);
        const CVector g = (vt.adjoint() * act.m).transpose() / vt.squaredNorm();
        return action_op_norm(act.m - vt * g.transpose(), act.in_dim, act.out_dim);
    };
    if (!target.phase_covariant()) return deviation(target.fixed);
    return minimise_phase([&](double phi) { return deviation(target.at(phi)); }).second;
}

double eps_distance_estimate(const OracleAlgorithm &alg, const Task &task, const CMatrix &u,
                             std::size_t n_samples, std::uint64_t seed) {
    require_compatible(alg, task);
    const auto act = task_action(alg, u);
    const TaskValue target = task(u);
    const auto in = static_cast<Eigen::Index>(act.in_dim);

    std::vector<CMatrix> family;
    for (Eigen::Index i = 0; i < in; ++i) {
        CMatrix rho = CMatrix::Zero(in, in);
        rho(i, i) = 1.0;
        family.push_back(std::move(rho));
    }
    family.push_back(CMatrix::Identity(in, in) / static_cast<double>(in));

    // |+> on the control, every basis state on the rest of the input register.
    const auto &layout = alg.layout();
    const auto &input = alg.input_task();
    for (std::size_t pos = 0; pos < input.size(); ++pos) {
        if (layout.factor(input[pos]).role != Role::kControl) continue;
        std::vector<int> dims;
        for (auto f : input) dims.push_back(layout.dim(f));
        const auto local = RegisterLayout::uniform(dims);
        std::vector<std::size_t> ctrl{pos};
        const auto ctrl_stride = local.stride(pos);
        for (auto base : local.complement_offsets(ctrl)) {
            CVector psi = CVector::Zero(in);
            psi(static_cast<Eigen::Index>(base)) = 1.0 / std::sqrt(2.0);
            psi(static_cast<Eigen::Index>(base + ctrl_stride)) = 1.0 / std::sqrt(2.0);
            family.push_back(psi * psi.adjoint());
        }
    }
    for (std::size_t k = 0; k < n_samples; ++k) {
        const CVector psi = haar_state(act.in_dim, seed + k);
        family.push_back(psi * psi.adjoint());
    }

    std::vector<CMatrix> outputs;
    outputs.reserve(family.size());
    for (const auto &rho : family) {
        CMatrix out = channel_from_action(act, rho);
        const double p = out.trace().real();
        if (p <= kVanishingProbability) {
            throw ModelViolation("success probability vanishes on a task input (postselection condition violated)");
        }
        outputs.push_back(out / p);
    }

    const auto worst = [&](const CMatrix &t) {
        double w = 0.0;
        for (std::size_t k = 0; k < family.size(); ++k) {
            w = std::max(w, hermitian_trace_norm(outputs[k] - t * family[k] * t.adjoint()));
        }
        return w;
    };
    if (!target.phase_covariant()) return worst(target.fixed);
    return minimise_phase([&](double phi) { return worst(target.at(phi)); }).second;
}

NeutralisationResult check_neutralises(const OracleAlgorithm &alg, const std::vector<CMatrix> &us, double tol) {
    NeutralisationResult result;
    const auto total = alg.layout().total_dim();
    const CMatrix zero = basis(total, 0);
    double r_min = std::numeric_limits<double>::infinity();
    double r_max = 0.0;
    double r_sum = 0.0;
    bool all_fixed = true;
    for (const auto &u : us) {
        const CMatrix out = alg.apply(u, zero);
        const Complex c = out(0, 0);
        CMatrix rest = out;
        rest(0, 0) = 0.0;
        const double res = rest.norm();
        result.residuals.push_back(res);
        result.phases.push_back(std::arg(c));
        const double r = std::abs(c);
        r_min = std::min(r_min, r);
        r_max = std::max(r_max, r);
        r_sum += r;
        if (res > tol) all_fixed = false;
    }
    if (us.empty()) {
        result.diagnostic = "no oracles supplied";
        return result;
    }
    result.r = r_sum / static_cast<double>(us.size());
    if (!all_fixed) {
        result.diagnostic = "the all-zero state is not mapped to a multiple of itself";
    } else if (r_min <= tol) {
        result.diagnostic = "amplitude r vanishes";
    } else if (r_max > 1.0 + tol) {
        result.diagnostic = "amplitude r exceeds 1";
    } else if (r_max - r_min > tol) {
        result.diagnostic = "amplitude r depends on U (spread " + describe(r_max - r_min) + ")";
    } else {
        result.pass = true;
    }
    return result;
}

CleanResult check_clean(const OracleAlgorithm &alg, const Task &task, const std::vector<CMatrix> &us, double tol) {
    CleanResult result;
    for (const auto &u : us) result.per_oracle.push_back(check_exact(alg, task, u, tol));
    if (us.empty()) {
        result.diagnostic = "no oracles supplied";
        return result;
    }
    for (std::size_t k = 0; k < result.per_oracle.size(); ++k) {
        if (!result.per_oracle[k].achieved) {
            result.diagnostic = "not an exact achiever at oracle " + std::to_string(k) + ": " +
                                result.per_oracle[k].diagnostic;
            return result;
        }
    }
    const CVector &ref = result.per_oracle.front().garbage;
    const double ref_norm = ref.norm();
    for (std::size_t k = 1; k < result.per_oracle.size(); ++k) {
        const CVector &g = result.per_oracle[k].garbage;
        const double norm = g.norm();
        if (std::abs(norm - ref_norm) > tol) {
            result.diagnostic = "garbage norm varies with U";
            return result;
        }
        if (std::abs(std::abs(ref.dot(g)) - ref_norm * norm) > tol) {
            result.diagnostic = "garbage direction varies with U at oracle " + std::to_string(k);
            return result;
        }
    }
    result.clean = true;
    return result;
}

int static_homogeneity(const std::vector<QueryLetter> &sequence) {
    int total = 0;
    for (const auto &letter : sequence) {
        if (!letter.degree) {
            throw std::invalid_argument("query letter '" + letter.name + "' has no homogeneity degree");
        }
        total += *letter.degree;
    }
    return total;
}

int static_homogeneity(const OracleAlgorithm &alg) { return static_homogeneity(alg.query_sequence()); }

double numeric_homogeneity_check(const OracleAlgorithm &alg, const CMatrix &u, Complex lambda, int degree) {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12) throw std::invalid_argument("lambda must be unimodular");
    const CMatrix scaled = eval(alg, lambda * u);
    const CMatrix base = eval(alg, u);
    Complex factor = 1.0;
    const Complex step = degree >= 0 ? lambda : std::conj(lambda);
    for (int k = 0; k < std::abs(degree); ++k) factor *= step;
    return op_norm(scaled - factor * base);
}

LipschitzResult lipschitz_check(const OracleAlgorithm &alg, const CMatrix &u, const CMatrix &v) {
    LipschitzResult result;
    result.distance = op_norm(eval(alg, u) - eval(alg, v));
    result.bound = static_cast<double>(alg.query_count()) * op_norm(u - v) + 1e-9;
    result.holds = result.distance <= result.bound;
    return result;
}

}  // namespace uctrl
