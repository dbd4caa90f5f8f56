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

#include "uctrl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace uctrl {

std::string to_string(Role role) {
    switch (role) {
        case Role::kControl:
            return "control";
        case Role::kTask:
            return "task";
        case Role::kAncilla:
            return "ancilla";
    }
    return "ancilla";
}

Role role_from_string(const std::string &name) {
    if (name == "control") return Role::kControl;
    if (name == "task") return Role::kTask;
    if (name == "ancilla") return Role::kAncilla;
    throw std::invalid_argument("unknown register role '" + name + "'");
}

// ---------------------------------------------------------------------------
// RegisterLayout

RegisterLayout::RegisterLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
    int controls = 0;
    for (const auto &f : factors_) {
        if (f.dim < 2) {
            throw DimensionError("register factor dimension must be at least 2");
        }
        if (f.role == Role::kControl) {
            ++controls;
            if (f.dim != 2) throw DimensionError("the control factor must be a qubit");
        }
    }
    if (controls > 1) throw DimensionError("at most one control factor is allowed");

    strides_.assign(factors_.size(), 1);
    total_ = 1;
    for (std::size_t k = factors_.size(); k-- > 0;) {
        strides_[k] = total_;
        total_ *= static_cast<std::size_t>(factors_[k].dim);
    }
}

RegisterLayout RegisterLayout::uniform(const std::vector<int> &dims, Role role) {
    std::vector<Factor> fs;
    fs.reserve(dims.size());
    for (int d : dims) fs.push_back({d, role, {}});
    return RegisterLayout(std::move(fs));
}

std::vector<std::size_t> RegisterLayout::with_role(Role role) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].role == role) out.push_back(i);
    }
    return out;
}

std::optional<std::size_t> RegisterLayout::control() const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].role == Role::kControl) return i;
    }
    return std::nullopt;
}

std::size_t RegisterLayout::dim_of(std::span<const std::size_t> which) const {
    std::size_t n = 1;
    for (auto f : which) n *= static_cast<std::size_t>(dim(f));
    return n;
}

std::vector<std::size_t> RegisterLayout::offsets(std::span<const std::size_t> which) const {
    std::vector<std::size_t> out{0};
    for (auto f : which) {
        if (f >= factors_.size()) throw DimensionError("register factor index out of range");
        std::vector<std::size_t> next;
        next.reserve(out.size() * static_cast<std::size_t>(factors_[f].dim));
        for (auto o : out) {
            for (int v = 0; v < factors_[f].dim; ++v) {
                next.push_back(o + static_cast<std::size_t>(v) * strides_[f]);
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<std::size_t> RegisterLayout::complement(std::span<const std::size_t> which) const {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (std::find(which.begin(), which.end(), i) == which.end()) rest.push_back(i);
    }
    return rest;
}

std::vector<std::size_t> RegisterLayout::complement_offsets(std::span<const std::size_t> excluded) const {
    return offsets(complement(excluded));
}

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto v : images_) {
        if (v >= images_.size() || seen[v]) throw std::invalid_argument("not a permutation");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = i;
    return Permutation(std::move(id));
}

int Permutation::sign() const {
    // Parity from the cycle decomposition: each cycle of length L contributes
    // L - 1 transpositions.
    std::vector<bool> visited(images_.size(), false);
    std::size_t transpositions = 0;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (visited[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !visited[j]; j = images_[j]) {
            visited[j] = true;
            ++len;
        }
        transpositions += len - 1;
    }
    return transpositions % 2 == 0 ? 1 : -1;
}

Permutation Permutation::compose(const Permutation &other) const {
    if (other.size() != size()) throw std::invalid_argument("permutation sizes differ");
    std::vector<std::size_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = images_[other.images_[i]];
    return Permutation(std::move(out));
}

bool Permutation::next() { return std::next_permutation(images_.begin(), images_.end()); }

// ---------------------------------------------------------------------------
// Tensor products and local operators

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

namespace {

void check_targets(std::span<const std::size_t> targets, const RegisterLayout &layout,
                   const std::optional<ControlSpec> &control) {
    for (std::size_t a = 0; a < targets.size(); ++a) {
        if (targets[a] >= layout.size()) throw DimensionError("target factor out of range");
        for (std::size_t b = a + 1; b < targets.size(); ++b) {
            if (targets[a] == targets[b]) throw DimensionError("duplicate target factor");
        }
    }
    if (control) {
        if (control->factor >= layout.size()) throw DimensionError("control factor out of range");
        if (layout.dim(control->factor) != 2) throw DimensionError("control factor must be a qubit");
        if (control->polarity != 0 && control->polarity != 1) {
            throw DimensionError("control polarity must be 0 or 1");
        }
        if (std::find(targets.begin(), targets.end(), control->factor) != targets.end()) {
            throw DimensionError("control factor is among the targets");
        }
    }
}

}  // namespace

void apply_local(CMatrix &block, const CMatrix &op, std::span<const std::size_t> targets,
                 const RegisterLayout &layout, const std::optional<ControlSpec> &control) {
    check_targets(targets, layout, control);
    const auto local_dim = static_cast<Eigen::Index>(layout.dim_of(targets));
    if (op.rows() != local_dim || op.cols() != local_dim) {
        throw DimensionError("operator dimension does not match its target factors");
    }
    if (block.rows() != static_cast<Eigen::Index>(layout.total_dim())) {
        throw DimensionError("state block does not match the register layout");
    }

    std::vector<std::size_t> excluded(targets.begin(), targets.end());
    std::size_t control_shift = 0;
    if (control) {
        excluded.push_back(control->factor);
        control_shift = static_cast<std::size_t>(control->polarity) * layout.stride(control->factor);
    }
    const auto local = layout.offsets(targets);
    const auto bases = layout.complement_offsets(excluded);

    CMatrix gathered(local_dim, block.cols());
    for (auto base : bases) {
        const auto origin = base + control_shift;
        for (Eigen::Index j = 0; j < local_dim; ++j) {
            gathered.row(j) = block.row(static_cast<Eigen::Index>(origin + local[j]));
        }
        gathered = op * gathered;
        for (Eigen::Index j = 0; j < local_dim; ++j) {
            block.row(static_cast<Eigen::Index>(origin + local[j])) = gathered.row(j);
        }
    }
}

CMatrix embed(const CMatrix &op, std::span<const std::size_t> targets, const RegisterLayout &layout) {
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    CMatrix out = CMatrix::Identity(n, n);
    apply_local(out, op, targets, layout);
    return out;
}

CMatrix controlled(const CMatrix &op, std::size_t ctrl, int polarity,
                   std::span<const std::size_t> targets, const RegisterLayout &layout) {
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    CMatrix out = CMatrix::Identity(n, n);
    apply_local(out, op, targets, layout, ControlSpec{ctrl, polarity});
    return out;
}

CMatrix swap_gate(int d) {
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    CMatrix s = CMatrix::Zero(n, n);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) s(b * d + a, a * d + b) = 1.0;
    }
    return s;
}

CMatrix fourier(int d) {
    CMatrix f(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            f(j, k) = norm * std::polar(1.0, 2.0 * std::numbers::pi * j * k / d);
        }
    }
    return f;
}

CMatrix sum_gate(int d) {
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    CMatrix s = CMatrix::Zero(n, n);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) s(a * d + (a + b) % d, a * d + b) = 1.0;
    }
    return s;
}

CVector basis(std::size_t n, std::size_t i) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(n));
    v(static_cast<Eigen::Index>(i)) = 1.0;
    return v;
}

// ---------------------------------------------------------------------------
// Norms

std::vector<double> singular_values(const CMatrix &m) {
    if (m.size() == 0) return {};
    Eigen::BDCSVD<CMatrix> svd(m);
    const auto &s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

double trace_norm(const CMatrix &m) {
    if (m.rows() != m.cols()) throw DimensionError("trace norm needs a square matrix");
    double total = 0.0;
    for (double s : singular_values(m)) total += s;
    return total;
}

double op_norm(const CMatrix &m) {
    const auto s = singular_values(m);
    return s.empty() ? 0.0 : *std::max_element(s.begin(), s.end());
}

bool is_unitary(const CMatrix &m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    return op_norm(m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())) <= tol;
}

bool is_projector(const CMatrix &m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    return op_norm(m * m - m) <= tol && op_norm(m - m.adjoint()) <= tol;
}

// ---------------------------------------------------------------------------
// Sampling

CMatrix haar_unitary(int d, std::uint64_t seed) {
    if (d < 1) throw DimensionError("haar_unitary needs d >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix z(d, d);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) z(i, j) = Complex(normal(rng), normal(rng));
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= mag > 0.0 ? rjj / mag : Complex(1.0);
    }
    return q;
}

CVector haar_state(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CVector v(static_cast<Eigen::Index>(n));
    for (auto &x : v) x = Complex(normal(rng), normal(rng));
    return v / v.norm();
}

// ---------------------------------------------------------------------------
// Symmetric determinant and minor formulas

namespace {

std::vector<Permutation> all_permutations(std::size_t n) {
    std::vector<Permutation> perms;
    Permutation p = Permutation::identity(n);
    do {
        perms.push_back(p);
    } while (p.next());
    return perms;
}

double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t k = 2; k <= n; ++k) f *= static_cast<double>(k);
    return f;
}

}  // namespace

Complex sym_det(const CMatrix &m) {
    if (m.rows() != m.cols()) throw DimensionError("determinant needs a square matrix");
    const auto n = static_cast<std::size_t>(m.rows());
    if (n > kSymDetMaxSize) throw DimensionError("sym_det supports n <= 6 ((n!)^2 terms)");
    if (n == 0) return 1.0;
    const auto perms = all_permutations(n);
    Complex total = 0.0;
    for (const auto &tau : perms) {
        const int st = tau.sign();
        for (const auto &pi : perms) {
            Complex term = static_cast<double>(st * pi.sign());
            for (std::size_t i = 0; i < n; ++i) {
                term *= m(static_cast<Eigen::Index>(tau(i)), static_cast<Eigen::Index>(pi(i)));
            }
            total += term;
        }
    }
    return total / factorial(n);
}

Complex sym_minor(const CMatrix &m, std::size_t i, std::size_t j) {
    if (m.rows() != m.cols()) throw DimensionError("minor needs a square matrix");
    const auto n = static_cast<std::size_t>(m.rows());
    if (n > kSymMinorMaxSize) throw DimensionError("sym_minor supports n <= 5");
    if (i >= n || j >= n) throw DimensionError("minor index out of range");
    if (n == 1) return 1.0;

    std::vector<Permutation> rows_first;  // tau(0) = i
    std::vector<Permutation> cols_first;  // pi(0) = j
    for (const auto &p : all_permutations(n)) {
        if (p(0) == i) rows_first.push_back(p);
        if (p(0) == j) cols_first.push_back(p);
    }
    Complex total = 0.0;
    for (const auto &tau : rows_first) {
        const int st = tau.sign();
        for (const auto &pi : cols_first) {
            Complex term = static_cast<double>(st * pi.sign());
            for (std::size_t k = 1; k < n; ++k) {
                term *= m(static_cast<Eigen::Index>(tau(k)), static_cast<Eigen::Index>(pi(k)));
            }
            total += term;
        }
    }
    const double parity = (i + j) % 2 == 0 ? 1.0 : -1.0;
    return parity * total / factorial(n - 1);
}

CMatrix cofactor_matrix(const CMatrix &m) {
    if (m.rows() != m.cols()) throw DimensionError("cofactor matrix needs a square matrix");
    const auto n = static_cast<std::size_t>(m.rows());
    if (n > kSymMinorMaxSize) throw DimensionError("cofactor_matrix supports n <= 5");
    CMatrix c(m.rows(), m.cols());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double parity = (i + j) % 2 == 0 ? 1.0 : -1.0;
            c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parity * sym_minor(m, i, j);
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Matrix functions

CMatrix principal_root(const CMatrix &u, int k) {
    if (k < 1) throw std::invalid_argument("principal_root needs k >= 1");
    if (!is_unitary(u)) throw std::invalid_argument("principal_root needs a unitary input");
    // A unitary is normal, so its Schur form is diagonal and the Schur vectors
    // are an orthonormal eigenbasis even for degenerate spectra.
    Eigen::ComplexSchur<CMatrix> schur(u);
    const CMatrix &q = schur.matrixU();
    const CMatrix &t = schur.matrixT();
    CVector roots(u.rows());
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        double theta = std::arg(t(i, i));
        // Fold the -pi representative onto the branch (-pi, pi].
        if (theta <= -std::numbers::pi + 1e-14) theta = std::numbers::pi;
        roots(i) = std::polar(1.0, theta / k);
    }
    return q * roots.asDiagonal() * q.adjoint();
}

CMatrix unitary_power(const CMatrix &u, int p) {
    if (u.rows() != u.cols()) throw DimensionError("matrix power needs a square matrix");
    const CMatrix base = p < 0 ? CMatrix(u.adjoint()) : u;
    CMatrix out = CMatrix::Identity(u.rows(), u.cols());
    for (int k = 0; k < std::abs(p); ++k) out = base * out;
    return out;
}

CMatrix partial_trace(const CMatrix &m, const RegisterLayout &layout, std::span<const std::size_t> keep) {
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    if (m.rows() != n || m.cols() != n) throw DimensionError("partial trace: matrix does not fit layout");
    for (std::size_t a = 0; a < keep.size(); ++a) {
        if (keep[a] >= layout.size()) throw DimensionError("partial trace: factor out of range");
        for (std::size_t b = a + 1; b < keep.size(); ++b) {
            if (keep[a] == keep[b]) throw DimensionError("partial trace: duplicate factor");
        }
    }
    const auto kept = layout.offsets(keep);
    const auto traced = layout.complement_offsets(keep);
    const auto k = static_cast<Eigen::Index>(kept.size());
    CMatrix out = CMatrix::Zero(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) {
            Complex s = 0.0;
            for (auto c : traced) {
                s += m(static_cast<Eigen::Index>(kept[a] + c), static_cast<Eigen::Index>(kept[b] + c));
            }
            out(a, b) = s;
        }
    }
    return out;
}

CMatrix complete_unitary(std::size_t dim, const std::vector<std::pair<std::size_t, CVector>> &pinned) {
    const auto n = static_cast<Eigen::Index>(dim);
    CMatrix out = CMatrix::Zero(n, n);
    std::vector<bool> filled(dim, false);
    std::vector<CVector> chosen;
    for (const auto &[index, v] : pinned) {
        if (index >= dim || filled[index]) throw DimensionError("bad pinned column index");
        if (v.size() != n) throw DimensionError("pinned column has the wrong dimension");
        for (const auto &c : chosen) {
            if (std::abs(c.dot(v)) > kUnitaryTol) throw std::invalid_argument("pinned columns not orthogonal");
        }
        if (std::abs(v.norm() - 1.0) > kUnitaryTol) throw std::invalid_argument("pinned column not normalised");
        out.col(static_cast<Eigen::Index>(index)) = v;
        filled[index] = true;
        chosen.push_back(v);
    }
    std::size_t candidate = 0;
    for (std::size_t col = 0; col < dim; ++col) {
        if (filled[col]) continue;
        while (true) {
            if (candidate >= dim) throw std::logic_error("complete_unitary ran out of candidates");
            CVector v = basis(dim, candidate++);
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto &c : chosen) v -= c * c.dot(v);
            }
            const double norm = v.norm();
            if (norm > 1e-6) {
                v /= norm;
                out.col(static_cast<Eigen::Index>(col)) = v;
                chosen.push_back(v);
                break;
            }
        }
    }
    return out;
}

}  // namespace uctrl
