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

/**
 * @file
 * Value types for labeled quantum states, operators and channels.
 *
 * Every state keeps its subsystems in canonical (photon, dof) order. The
 * validating constructors accept any order and permute the data to match, so
 * two states built in different orders compare equal.
 */

#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypermux/labels.hpp"

namespace hypermux {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-12;
inline constexpr double kCompletenessTolerance = 1e-10;

/// Pure state on an ordered list of labeled subsystems.
class StateVector {
public:
    /// Validates shape, uniqueness and unit norm, then canonicalizes order.
    StateVector(Labels subsystems, CVector amplitudes);

    /// Computational basis state; `digits` follow the order of `subsystems`.
    static StateVector basis(Labels subsystems, const std::vector<std::size_t>& digits);

    /// Builds a state from data already in canonical order without re-checking
    /// the norm. Used by operations that preserve the invariants themselves.
    static StateVector adopt(Labels canonical_subsystems, CVector amplitudes);

    const Labels& subsystems() const { return subsystems_; }
    const CVector& amplitudes() const { return amplitudes_; }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

    /// Amplitude of a basis state; `digits` follow subsystems() order.
    Complex amplitude(const std::vector<std::size_t>& digits) const;

private:
    StateVector() = default;
    Labels subsystems_;
    CVector amplitudes_;
};

/// Mixed state on an ordered list of labeled subsystems.
class DensityMatrix {
public:
    /// Validates Hermiticity, unit trace and positivity, then canonicalizes.
    DensityMatrix(Labels subsystems, CMatrix matrix);

    static DensityMatrix from_pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(Labels subsystems);
    static DensityMatrix adopt(Labels canonical_subsystems, CMatrix matrix);

    const Labels& subsystems() const { return subsystems_; }
    const CMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

    double purity() const;

private:
    DensityMatrix() = default;
    Labels subsystems_;
    CMatrix matrix_;
};

/// Square operator on a local register with the given subsystem dimensions.
class Operator {
public:
    Operator(CMatrix matrix, std::vector<std::size_t> dims, std::string name = {});

    const CMatrix& matrix() const { return matrix_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    bool is_unitary() const { return unitary_; }
    const std::string& name() const { return name_; }

private:
    CMatrix matrix_;
    std::vector<std::size_t> dims_;
    bool unitary_ = false;
    std::string name_;
};

/// Completely positive trace-preserving map in Kraus form.
class KrausChannel {
public:
    /// Throws std::invalid_argument unless sum_i K_i^dag K_i = I within 1e-10.
    KrausChannel(std::vector<CMatrix> kraus_ops, std::string description = {});

    const std::vector<CMatrix>& kraus_ops() const { return ops_; }
    std::size_t input_dim() const { return d_in_; }
    std::size_t output_dim() const { return d_out_; }
    const std::string& description() const { return description_; }

    /// Largest entry of |sum K^dag K - I|.
    double completeness_error() const;

private:
    std::vector<CMatrix> ops_;
    std::size_t d_in_ = 0;
    std::size_t d_out_ = 0;
    std::string description_;
};

/// Permutation that sorts `labels` canonically: result[k] is the old position
/// of the k-th label in canonical order.
std::vector<std::size_t> canonical_order(const Labels& labels);

double max_abs(const CMatrix& m);

/// Kronecker product; the left factor is the more significant index.
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace hypermux
