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

#ifndef UCTRL_LINALG_HPP
#define UCTRL_LINALG_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace uctrl {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerance used when validating that an operator is unitary or a projector.
inline constexpr double kUnitaryTol = 1e-10;

/// Thrown when operand shapes do not fit the requested operation.
class DimensionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

enum class Role { kControl, kTask, kAncilla };

std::string to_string(Role role);
Role role_from_string(const std::string &name);

/// One tensor factor of the total Hilbert space.
struct Factor {
    int dim = 2;
    Role role = Role::kAncilla;
    std::string group;  // free-form label for ancilla groups, may be empty

    bool operator==(const Factor &) const = default;
};

/// Ordered tensor factorisation Z = Z_0 (x) Z_1 (x) ... of the total space.
///
/// Factor 0 is the most significant digit of a basis index, so the basis
/// state |i_0, i_1, ..., i_{n-1}> has index sum_k i_k * stride(k).
class RegisterLayout {
   public:
    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<Factor> factors);

    /// All factors with role `role` and the given dimensions.
    static RegisterLayout uniform(const std::vector<int> &dims, Role role = Role::kTask);

    std::size_t size() const { return factors_.size(); }
    const Factor &factor(std::size_t i) const { return factors_.at(i); }
    const std::vector<Factor> &factors() const { return factors_; }
    int dim(std::size_t i) const { return factors_.at(i).dim; }
    std::size_t stride(std::size_t i) const { return strides_.at(i); }
    std::size_t total_dim() const { return total_; }
    std::vector<std::size_t> with_role(Role role) const;
    std::optional<std::size_t> control() const;

    /// Product of the dimensions of the listed factors.
    std::size_t dim_of(std::span<const std::size_t> which) const;

    /// Full-space offsets of every basis state of the listed factors, the
    /// first listed factor being the most significant digit.
    std::vector<std::size_t> offsets(std::span<const std::size_t> which) const;

    /// Offsets over every factor not listed in `excluded`.
    std::vector<std::size_t> complement_offsets(std::span<const std::size_t> excluded) const;

    std::vector<std::size_t> complement(std::span<const std::size_t> which) const;

    bool operator==(const RegisterLayout &other) const { return factors_ == other.factors_; }

   private:
    std::vector<Factor> factors_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 1;
};

/// A bijection of {0, ..., n-1}, stored by images.
class Permutation {
   public:
    explicit Permutation(std::vector<std::size_t> images);
    static Permutation identity(std::size_t n);

    std::size_t size() const { return images_.size(); }
    std::size_t operator()(std::size_t i) const { return images_[i]; }
    const std::vector<std::size_t> &images() const { return images_; }

    /// +1 for even permutations, -1 for odd ones.
    int sign() const;

    /// (this o other)(i) = this(other(i)).
    Permutation compose(const Permutation &other) const;

    /// Advances to the next permutation in lexicographic order. Returns false
    /// after the last one (and wraps to the identity).
    bool next();

   private:
    std::vector<std::size_t> images_;
};

struct ControlSpec {
    std::size_t factor = 0;
    int polarity = 1;
};

// ---------------------------------------------------------------------------
// Tensor products and local operators.

CMatrix kron(const CMatrix &a, const CMatrix &b);

/// Applies `op` to the listed factors of every column of `block` in place.
/// With a control, only the basis states whose control digit equals the
/// polarity are touched.
void apply_local(CMatrix &block, const CMatrix &op, std::span<const std::size_t> targets,
                 const RegisterLayout &layout,
                 const std::optional<ControlSpec> &control = std::nullopt);

/// Full-space operator acting as `op` on `targets` (in listed order) and as
/// the identity elsewhere.
CMatrix embed(const CMatrix &op, std::span<const std::size_t> targets, const RegisterLayout &layout);

/// |p><p| (x) embed(op) + |1-p><1-p| (x) Id on the control factor `ctrl`.
CMatrix controlled(const CMatrix &op, std::size_t ctrl, int polarity,
                   std::span<const std::size_t> targets, const RegisterLayout &layout);

/// SWAP of two qudits of dimension d.
CMatrix swap_gate(int d);

/// Discrete Fourier transform on a qudit; the qubit case is the Hadamard gate.
CMatrix fourier(int d);

/// |a, b> -> |a, a + b mod d>.
CMatrix sum_gate(int d);

/// |i> as a column of dimension n.
CVector basis(std::size_t n, std::size_t i);

// ---------------------------------------------------------------------------
// Norms and predicates.

std::vector<double> singular_values(const CMatrix &m);

/// Sum of singular values.
double trace_norm(const CMatrix &m);

/// Largest singular value.
double op_norm(const CMatrix &m);

bool is_unitary(const CMatrix &m, double tol = kUnitaryTol);
bool is_projector(const CMatrix &m, double tol = kUnitaryTol);

// ---------------------------------------------------------------------------
// Sampling.

/// Haar-distributed d x d unitary. QR of a complex Ginibre matrix with the
/// phases of R's diagonal folded back into Q, so the law is left-invariant.
CMatrix haar_unitary(int d, std::uint64_t seed);

/// Haar-random unit vector of dimension n.
CVector haar_state(std::size_t n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Symmetric permutation formulas for the determinant and minors.
//
// The formulas sum over pairs of permutations of {1..n}; here permutations
// act on 0-based indices and the 1-based sign factor (-1)^(i+j) is unchanged
// by the shift.

inline constexpr std::size_t kSymDetMaxSize = 6;
inline constexpr std::size_t kSymMinorMaxSize = 5;

/// (1/n!) sum_{pi,tau} sgn(tau) sgn(pi) prod_i m[tau(i), pi(i)].
Complex sym_det(const CMatrix &m);

/// Determinant of m with row i and column j deleted, computed as
/// ((-1)^(i+j)/(n-1)!) sum_{pi(0)=j, tau(0)=i} sgn(tau) sgn(pi)
/// prod_{k>=1} m[tau(k), pi(k)].
Complex sym_minor(const CMatrix &m, std::size_t i, std::size_t j);

/// C[i,j] = (-1)^(i+j) det(m without row i and column j).
CMatrix cofactor_matrix(const CMatrix &m);

// ---------------------------------------------------------------------------
// Matrix functions and partial trace.

/// k-th root on the principal branch: every eigenvalue e^{i theta} with
/// theta in (-pi, pi] is mapped to e^{i theta / k}.
CMatrix principal_root(const CMatrix &u, int k);

/// u^p for integer p; negative powers use the adjoint, so u must be unitary
/// when p < 0.
CMatrix unitary_power(const CMatrix &u, int p);

/// Traces out every factor not listed in `keep`; the result is ordered as
/// `keep`.
CMatrix partial_trace(const CMatrix &m, const RegisterLayout &layout,
                      std::span<const std::size_t> keep);

/// Unitary whose columns at the pinned indices equal the given orthonormal
/// vectors. The remaining columns are filled by Gram-Schmidt against the
/// standard basis in increasing order, so the result is deterministic.
CMatrix complete_unitary(std::size_t dim,
                         const std::vector<std::pair<std::size_t, CVector>> &pinned);

}  // namespace uctrl

#endif  // UCTRL_LINALG_HPP
