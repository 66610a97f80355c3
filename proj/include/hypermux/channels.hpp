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
 * Channel algebra and capacity analysis.
 *
 * Two erasure models are kept apart on purpose. joint_carrier_erasure loses
 * all n qubits of one photon in a single event (one flag level on a 2^n
 * register). independent_erasure is the tensor product of n single-qubit
 * erasures, each with its own flag.
 */

#pragma once

#include <cstdint>
#include <string>

#include "hypermux/quantum_ops.hpp"

namespace hypermux {

struct ErasureParams {
    double epsilon = 0.0;
    std::size_t input_dim = 2;

    void validate() const;
    /// Data levels plus the erasure flag |e>, which sits at index input_dim.
    std::size_t output_dim() const { return input_dim + 1; }
};

/// Kraus set {sqrt(1-eps) E, sqrt(eps) |e><i|}, E the embedding of the input levels.
KrausChannel erasure_channel(const ErasureParams& params);

/// One photon carrying n qubits is lost as a whole: erasure on 2^n levels.
KrausChannel joint_carrier_erasure(double epsilon, std::size_t n_qubits);

/// n separately flagged single-qubit erasures; output dimension 3^n.
KrausChannel independent_erasure(double epsilon, std::size_t n_qubits);

KrausChannel identity_channel(std::size_t dim);

/// Kraus set {K_i (x) L_j}; `a` acts on the more significant factor.
KrausChannel product_channel(const KrausChannel& a, const KrausChannel& b);

/// `second` after `first`: Kraus set {L_j K_i}.
KrausChannel compose_channels(const KrausChannel& first, const KrausChannel& second);

/**
 * Erasure acting on an already flagged register of input_dim + 1 levels:
 * data levels are erased with probability epsilon, the flag stays a flag.
 * Composing erasure(e1) with this gives erasure(1 - (1-e1)(1-e2)).
 */
KrausChannel flag_preserving_erasure(const ErasureParams& params);

/// Environment output of the Stinespring dilation: F_j(i, a) = K_i(j, a).
KrausChannel complementary_channel(const KrausChannel& channel);

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/**
 * I_C = H(B) - H(B A1) for omega = (N (x) id)(|phi><phi|), with N acting on
 * the `channel_inputs` subsystems of `input` and A1 the rest. Returned raw,
 * so it may be negative. Throws std::invalid_argument on dimension mismatch.
 */
double coherent_information(const KrausChannel& channel, const StateVector& input, const Labels& channel_inputs);

/// Same quantity through the complementary channel: H(N(rho_A)) - H(N^c(rho_A)).
double coherent_information_complementary(const KrausChannel& channel, const StateVector& input,
                                          const Labels& channel_inputs);

/// |Phi> = sum_i |i>_A |i>_R / sqrt(d) on two d-level subsystems.
StateVector maximally_entangled_input(std::size_t dim);

/// Labels used by maximally_entangled_input and the search below.
SubsystemLabel channel_input_label(std::size_t dim);
SubsystemLabel reference_label(std::size_t dim);

/// Pure inputs tried by coherent_information_max.
struct InputFamily {
    bool maximally_entangled = true;
    bool product = true;
    std::size_t random_samples = 16;
    /// Gaussian hill-climb steps from the best candidate found so far.
    std::size_t refine_steps = 64;
    double refine_scale = 0.2;
    std::uint64_t seed = 0;

    bool empty() const { return !maximally_entangled && !product && random_samples == 0; }
};

struct CoherentInfoSearch {
    double value;
    std::string best_family;
    std::size_t evaluations;
};

/// Best coherent information over the family plus local refinement. Not a
/// certified optimizer. Throws std::invalid_argument on an empty family.
CoherentInfoSearch coherent_information_max(const KrausChannel& channel, const InputFamily& family = {});

/// max(0, n (1 - 2 epsilon)). Throws std::invalid_argument outside
/// 0 <= epsilon <= 1 or for n < 1.
double erasure_capacity_formula(double epsilon, int n_dofs);

}  // namespace hypermux
