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

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hypermux/random.hpp"
#include "hypermux/state.hpp"

namespace hypermux {

/// Composite state; the label sets must be disjoint.
StateVector tensor_product(const StateVector& a, const StateVector& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on `keep`. Throws on labels the state does not carry.
DensityMatrix partial_trace(const DensityMatrix& rho, const Labels& keep);
DensityMatrix reduced_state(const StateVector& psi, const Labels& keep);

/// Entropy in bits. Eigenvalues in [-1e-10, 0) are treated as zero.
double von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of the reduced state on `part`.
double entanglement_entropy(const StateVector& psi, const Labels& part);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
/// <psi|sigma|psi>.
double fidelity(const StateVector& psi, const DensityMatrix& sigma);
/// |<psi|phi>|^2.
double fidelity(const StateVector& psi, const StateVector& phi);

/// Applies a unitary `op` to `targets` (local index order = targets order).
StateVector apply_operator(const StateVector& psi, const Operator& op, const Labels& targets);
DensityMatrix apply_operator(const DensityMatrix& rho, const Operator& op, const Labels& targets);

/**
 * rho -> sum_i K_i rho K_i^dag on `targets`.
 *
 * With a single target whose dimension changes, the label keeps its slot and
 * takes the output dimension. With several targets and an output dimension
 * that is not the product of the target dimensions, the targets are fused
 * into `merged_label` (default: first target's photon, Dof::generic(0)).
 */
DensityMatrix apply_kraus(const DensityMatrix& rho, const KrausChannel& channel, const Labels& targets,
                          std::optional<SubsystemLabel> merged_label = std::nullopt);

/// Haar-distributed pure state on `labels`.
StateVector haar_random_state(const Labels& labels, Rng& rng);

/// Haar-distributed d x d unitary.
CMatrix haar_random_unitary(std::size_t d, Rng& rng);

struct MeasurementResult {
    std::size_t outcome = 0;
    StateVector post_state;
    double probability = 0.0;
};

/**
 * Projective measurement in an orthonormal basis of the subsystems the
 * basis vectors live on. The measured subsystems are removed from the
 * post-measurement state. Throws if the basis is not complete and
 * orthonormal within 1e-10.
 */
MeasurementResult measure_in_basis(const StateVector& psi, const std::vector<StateVector>& basis, Rng& rng);
MeasurementResult measure_in_basis(const StateVector& psi, const std::vector<StateVector>& basis,
                                   const OutcomePicker& pick);

/// Born probabilities for every element of `basis`.
std::vector<double> outcome_probabilities(const StateVector& psi, const std::vector<StateVector>& basis);

/// Renames subsystems; `mapping` pairs (from, to) and dimensions must agree.
StateVector relabel(const StateVector& psi, const std::vector<std::pair<SubsystemLabel, SubsystemLabel>>& mapping);
DensityMatrix relabel(const DensityMatrix& rho,
                      const std::vector<std::pair<SubsystemLabel, SubsystemLabel>>& mapping);

/// Drops subsystems that are in a product state with the rest. Throws if
/// they are entangled with the remainder (purity check at 1e-9).
StateVector discard_product_factor(const StateVector& psi, const Labels& drop);

}  // namespace hypermux
