// Copyright 2026 The Hypermux Authors
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

#include "hypermux/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "hypermux/kernels.hpp"

namespace hypermux {

std::vector<std::size_t> canonical_order(const Labels& labels) {
    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return canonical_less(labels[a], labels[b]);
    });
    return order;
}

double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace {

bool is_identity(const std::vector<std::size_t>& order) {
    for (std::size_t i = 0; i < order.size(); ++i)
        if (order[i] != i) return false;
    return true;
}

Labels reorder(const Labels& labels, const std::vector<std::size_t>& order) {
    Labels out;
    out.reserve(labels.size());
    for (auto o : order) out.push_back(labels[o]);
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(Labels subsystems, CVector amplitudes) {
    require_unique(subsystems);
    if (total_dim(subsystems) != static_cast<std::size_t>(amplitudes.size()))
        throw std::invalid_argument("state vector: amplitude count " + std::to_string(amplitudes.size()) +
                                    " does not match subsystem dimensions");
    const double norm2 = amplitudes.squaredNorm();
    if (std::abs(norm2 - 1.0) > kNormTolerance)
        throw std::invalid_argument("state vector: squared norm " + std::to_string(norm2) + " is not 1");
    const auto order = canonical_order(subsystems);
    if (is_identity(order)) {
        subsystems_ = std::move(subsystems);
        amplitudes_ = std::move(amplitudes);
    } else {
        const auto dims = dims_of(subsystems);
        amplitudes_ = kernels::permute_rows(amplitudes, dims, order);
        subsystems_ = reorder(subsystems, order);
    }
}

StateVector StateVector::basis(Labels subsystems, const std::vector<std::size_t>& digits) {
    if (digits.size() != subsystems.size())
        throw std::invalid_argument("basis state: one digit per subsystem required");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) {
        if (digits[k] >= subsystems[k].dim)
            throw std::invalid_argument("basis state: digit out of range for " + to_string(subsystems[k]));
        flat = flat * subsystems[k].dim + digits[k];
    }
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(total_dim(subsystems)));
    amps(static_cast<Eigen::Index>(flat)) = 1.0;
    return StateVector(std::move(subsystems), std::move(amps));
}

StateVector StateVector::adopt(Labels canonical_subsystems, CVector amplitudes) {
    StateVector s;
    s.subsystems_ = std::move(canonical_subsystems);
    s.amplitudes_ = std::move(amplitudes);
    return s;
}

Complex StateVector::amplitude(const std::vector<std::size_t>& digits) const {
    if (digits.size() != subsystems_.size()) throw std::invalid_argument("amplitude: wrong digit count");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) {
        if (digits[k] >= subsystems_[k].dim) throw std::invalid_argument("amplitude: digit out of range");
        flat = flat * subsystems_[k].dim + digits[k];
    }
    return amplitudes_(static_cast<Eigen::Index>(flat));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Labels subsystems, CMatrix matrix) {
    require_unique(subsystems);
    const auto d = static_cast<Eigen::Index>(total_dim(subsystems));
    if (matrix.rows() != d || matrix.cols() != d)
        throw std::invalid_argument("density matrix: shape does not match subsystem dimensions");
    if (max_abs(matrix - matrix.adjoint()) > kHermitianTolerance)
        throw std::invalid_argument("density matrix: not Hermitian");
    const double tr = matrix.trace().real();
    if (std::abs(tr - 1.0) > kTraceTolerance)
        throw std::invalid_argument("density matrix: trace " + std::to_string(tr) + " is not 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTolerance)
        throw std::invalid_argument("density matrix: not positive semidefinite");

    const auto order = canonical_order(subsystems);
    if (is_identity(order)) {
        subsystems_ = std::move(subsystems);
        matrix_ = std::move(matrix);
    } else {
        const auto dims = dims_of(subsystems);
        CMatrix rows = kernels::permute_rows(matrix, dims, order);
        matrix_ = kernels::permute_rows(rows.transpose(), dims, order).transpose();
        subsystems_ = reorder(subsystems, order);
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    return adopt(psi.subsystems(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Labels subsystems) {
    const auto d = static_cast<Eigen::Index>(total_dim(subsystems));
    CMatrix m = CMatrix::Identity(d, d) / static_cast<double>(d);
    return DensityMatrix(std::move(subsystems), std::move(m));
}

DensityMatrix DensityMatrix::adopt(Labels canonical_subsystems, CMatrix matrix) {
    DensityMatrix r;
    r.subsystems_ = std::move(canonical_subsystems);
    r.matrix_ = std::move(matrix);
    return r;
}

double DensityMatrix::purity() const {
    return (matrix_ * matrix_).trace().real();
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(CMatrix matrix, std::vector<std::size_t> dims, std::string name)
    : matrix_(std::move(matrix)), dims_(std::move(dims)), name_(std::move(name)) {
    const std::size_t d = std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
    if (dims_.empty()) throw std::invalid_argument("operator: needs at least one subsystem");
    if (matrix_.rows() != matrix_.cols() || static_cast<std::size_t>(matrix_.rows()) != d)
        throw std::invalid_argument("operator: matrix shape does not match dims");
    const auto n = matrix_.rows();
    unitary_ = max_abs(matrix_.adjoint() * matrix_ - CMatrix::Identity(n, n)) <= kUnitaryTolerance;
}

// ---------------------------------------------------------------------------
// KrausChannel

KrausChannel::KrausChannel(std::vector<CMatrix> kraus_ops, std::string description)
    : ops_(std::move(kraus_ops)), description_(std::move(description)) {
    if (ops_.empty()) throw std::invalid_argument("kraus channel: no operators");
    d_out_ = static_cast<std::size_t>(ops_.front().rows());
    d_in_ = static_cast<std::size_t>(ops_.front().cols());
    for (const auto& k : ops_)
        if (static_cast<std::size_t>(k.rows()) != d_out_ || static_cast<std::size_t>(k.cols()) != d_in_)
            throw std::invalid_argument("kraus channel: operators disagree in shape");
    if (completeness_error() > kCompletenessTolerance)
        throw std::invalid_argument("kraus channel: operators are not trace preserving");
}

double KrausChannel::completeness_error() const {
    const auto n = static_cast<Eigen::Index>(d_in_);
    CMatrix sum = CMatrix::Zero(n, n);
    for (const auto& k : ops_) sum += k.adjoint() * k;
    return max_abs(sum - CMatrix::Identity(n, n));
}

}  // namespace hypermux
