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

#ifndef UCTRL_ORACLE_MODEL_HPP
#define UCTRL_ORACLE_MODEL_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "uctrl/linalg.hpp"

namespace uctrl {

/// The success probability vanished for some oracle and input, which a
/// postselection oracle algorithm must never allow.
class ModelViolation : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Program and task do not fit together (register dimensions or alphabet).
class TaskMismatch : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A letter of the query alphabet: a map U -> sigma(U) with an optional
/// homogeneity degree (sigma(lambda U) = lambda^degree sigma(U)).
struct QueryLetter {
    std::string name;
    std::optional<int> degree;
    std::function<CMatrix(const CMatrix &)> evaluate;

    static QueryLetter id();
    static QueryLetter inv();
    static QueryLetter custom(std::string name, std::function<CMatrix(const CMatrix &)> fn,
                              std::optional<int> degree = std::nullopt);

    /// Evaluates the letter and checks the result is unitary.
    CMatrix operator()(const CMatrix &u) const;
};

/// "id" or "inv".
QueryLetter letter_from_name(const std::string &name);

/// A fixed (oracle-independent) unitary on some factors, optionally
/// conditioned on a control qubit.
struct FixedGate {
    CMatrix op;
    std::vector<std::size_t> targets;
    std::optional<ControlSpec> control;
};

struct QueryStep {
    QueryLetter letter;
    std::vector<std::size_t> targets;
};

using Step = std::variant<FixedGate, QueryStep>;

/// Final success projector, local to `targets`; no targets means identity.
struct Projector {
    CMatrix op;
    std::vector<std::size_t> targets;

    bool is_identity() const { return targets.empty(); }
};

/// Which factors carry the task register before and after the program. The
/// output register may differ from the input one (teleportation-style
/// programs hand the task state to a fresh register).
struct TaskRegisters {
    std::vector<std::size_t> input;
    std::vector<std::size_t> output;
};

/// A postselection oracle algorithm: fixed unitaries interleaved with oracle
/// queries, followed by a binary success projector.
///
/// Consecutive fixed gates multiply into one V_i and a missing gate between
/// queries stands for the identity, so every step list has the canonical
/// V_0, sigma_1, V_1, ..., sigma_N, V_N shape.
class OracleAlgorithm {
   public:
    OracleAlgorithm(std::string name, RegisterLayout layout, int oracle_dim, std::vector<Step> steps,
                    Projector projector = {}, std::optional<TaskRegisters> registers = std::nullopt);

    const std::string &name() const { return name_; }
    const RegisterLayout &layout() const { return layout_; }
    int oracle_dim() const { return oracle_dim_; }
    const std::vector<Step> &steps() const { return steps_; }
    const Projector &projector() const { return projector_; }
    const std::vector<std::size_t> &input_task() const { return registers_.input; }
    const std::vector<std::size_t> &output_task() const { return registers_.output; }
    std::size_t task_dim() const { return layout_.dim_of(registers_.input); }

    std::vector<QueryLetter> query_sequence() const;
    std::size_t query_count() const;

    /// Pi V_N (sigma_N(U) (x) Id) ... V_1 (sigma_1(U) (x) Id) V_0 applied to
    /// every column of `block`.
    CMatrix apply(const CMatrix &u, CMatrix block) const;

    /// task_state (x) |0...0> on the full space.
    CVector embed_input(const CVector &task_state) const;

    /// Id_task (x) |0...0>_K as a (total x task) isometry.
    CMatrix input_isometry() const;

   private:
    std::string name_;
    RegisterLayout layout_;
    int oracle_dim_;
    std::vector<Step> steps_;
    Projector projector_;
    TaskRegisters registers_;
};

// ---------------------------------------------------------------------------
// Tasks

/// t(U) = fixed + e^{i phi} phased. `phased` is empty for tasks without a
/// free relative phase.
struct TaskValue {
    CMatrix fixed;
    CMatrix phased;

    bool phase_covariant() const { return phased.size() != 0; }
    CMatrix at(double phi) const;
};

class Task {
   public:
    Task(std::string name, int oracle_dim, RegisterLayout layout, std::vector<std::string> alphabet,
         std::function<TaskValue(const CMatrix &)> evaluator, bool phase_covariant);

    const std::string &name() const { return name_; }
    int oracle_dim() const { return oracle_dim_; }
    const RegisterLayout &layout() const { return layout_; }
    const std::vector<std::string> &alphabet() const { return alphabet_; }
    bool phase_covariant() const { return phase_covariant_; }

    TaskValue operator()(const CMatrix &u) const;

    /// Copy of this task whose alphabet also admits `letters`.
    Task with_letters(const std::vector<std::string> &letters) const;

   private:
    std::string name_;
    int oracle_dim_;
    RegisterLayout layout_;
    std::vector<std::string> alphabet_;
    std::function<TaskValue(const CMatrix &)> evaluator_;
    bool phase_covariant_;
};

namespace tasks {

/// c-U^m: |0><0| (x) Id + e^{i phi} |1><1| (x) U^m, alphabet {id, inv}.
Task controlled_power(int d, int m);
/// U -> U*, alphabet {id}.
Task conjugation(int d);
/// U -> U^T, alphabet {id}.
Task transpose(int d);
/// U -> U^dagger, alphabet {id}.
Task inverse(int d);
/// U -> U^q, alphabet {id, inv}.
Task power(int d, int q);

}  // namespace tasks

// ---------------------------------------------------------------------------
// Evaluation

/// Full operator A(U) on the total space.
CMatrix eval(const OracleAlgorithm &alg, const CMatrix &u);

/// ||A(U) (input (x) |0...0>)||^2.
double success_prob(const OracleAlgorithm &alg, const CMatrix &u, const CVector &input_state);

struct ChannelOutput {
    CMatrix state;  // unnormalised A_U(rho) on the output task register
    double probability = 0.0;
};

/// A_U(rho) = tr_K[A(U) (rho (x) |0><0|_K) A(U)^dagger].
ChannelOutput apply_channel(const OracleAlgorithm &alg, const CMatrix &u, const CMatrix &rho);

/// A(U)(Id (x) |0>_K) rearranged as a matrix with rows (out, in) and one
/// column per output-ancilla basis state, so that an exact achiever
/// t(U) (x) |g> is exactly the rank-one matrix vec(t) g^T.
struct TaskAction {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    std::size_t anc_dim = 0;
    CMatrix m;

    /// The out x in operator delivered when the ancilla ends in basis state a.
    CMatrix branch(std::size_t a) const;
};

TaskAction task_action(const OracleAlgorithm &alg, const CMatrix &u);

// ---------------------------------------------------------------------------
// Verification

inline constexpr double kDefaultExactTol = 1e-8;

struct AchievementResult {
    bool achieved = false;
    CVector garbage;             // |g_U> = G_U |0>
    std::optional<double> phase;  // phi(U), phase-covariant tasks only
    double residual = 0.0;       // ||A(U)(Id (x) |0>) - t(U) (x) |g>||_op
    double second_singular_value = 0.0;
    double success_probability = 0.0;  // ||g||^2
    std::string diagnostic;
};

/// Exact achievement: A(U)(Id (x) |0><0|_K) = t(U) (x) G_U.
AchievementResult check_exact(const OracleAlgorithm &alg, const Task &task, const CMatrix &u,
                              double tol = kDefaultExactTol);

/// min over |g> (and over phi for phase-covariant tasks) of
/// ||A(U)(Id (x) |0>) - t(U) (x) |g>||_op; |g> is the least-squares fit.
double pure_deviation(const OracleAlgorithm &alg, const Task &task, const CMatrix &u);

/// Lower bound on sup_rho ||A_U(rho)/tr A_U(rho) - t(U) rho t(U)^dagger||_tr
/// over a finite family of inputs: computational basis states, the maximally
/// mixed state, |+> superpositions of the control, and `n_samples` Haar
/// random pure states. For phase-covariant tasks the best phi is used.
/// Throws ModelViolation if any family member is postselected with
/// probability zero.
double eps_distance_estimate(const OracleAlgorithm &alg, const Task &task, const CMatrix &u,
                             std::size_t n_samples, std::uint64_t seed);

struct NeutralisationResult {
    bool pass = false;
    double r = 0.0;  // common amplitude
    std::vector<double> phases;
    std::vector<double> residuals;
    std::string diagnostic;
};

/// A(U)|0><0| = r e^{i phi(U)} |0><0| on the full space, with one r for all
/// supplied oracles.
NeutralisationResult check_neutralises(const OracleAlgorithm &alg, const std::vector<CMatrix> &us,
                                       double tol = kDefaultExactTol);

struct CleanResult {
    bool clean = false;
    std::vector<AchievementResult> per_oracle;
    std::string diagnostic;
};

/// Exact achievement at every oracle and G_U = e^{i g(U)} G.
CleanResult check_clean(const OracleAlgorithm &alg, const Task &task, const std::vector<CMatrix> &us,
                        double tol = kDefaultExactTol);

/// sum of the letters' homogeneity degrees.
int static_homogeneity(const std::vector<QueryLetter> &sequence);
int static_homogeneity(const OracleAlgorithm &alg);

/// ||A(lambda U) - lambda^degree A(U)||_op.
double numeric_homogeneity_check(const OracleAlgorithm &alg, const CMatrix &u, Complex lambda, int degree);

struct LipschitzResult {
    bool holds = false;
    double distance = 0.0;  // ||A(U) - A(V)||_op
    double bound = 0.0;     // N ||U - V||_op + 1e-9
};

/// Continuity surrogate: every id/inv query moves the output by at most
/// ||U - V||_op and fixed gates and the projector do not expand distances.
LipschitzResult lipschitz_check(const OracleAlgorithm &alg, const CMatrix &u, const CMatrix &v);

}  // namespace uctrl

#endif  // UCTRL_ORACLE_MODEL_HPP
