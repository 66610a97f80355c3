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
 * Named states and gates of the multiplexing protocol.
 *
 * Qubit encodings: SAM sigma+ -> |0>, sigma- -> |1>; OAM l=+1 -> |0>,
 * l=-1 -> |1>.
 */

#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hypermux/state.hpp"

namespace hypermux {

inline constexpr std::size_t kSigmaPlus = 0;
inline constexpr std::size_t kSigmaMinus = 1;
inline constexpr std::size_t kOamPlusOne = 0;
inline constexpr std::size_t kOamMinusOne = 1;

enum class BellKind { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline constexpr std::array<BellKind, 4> kAllBellKinds = {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                                                          BellKind::PsiMinus};

std::string to_string(BellKind kind);

/// Standard Bell state on (left, right); both must be qubits.
StateVector bell_state(BellKind kind, const SubsystemLabel& left, const SubsystemLabel& right);

/// The four Bell states on (left, right), indexed by BellKind.
std::vector<StateVector> bell_basis(const SubsystemLabel& left, const SubsystemLabel& right);

using LabelPair = std::pair<SubsystemLabel, SubsystemLabel>;

/// Bell(i) on the SAM pair times Bell(j) on the OAM pair at index 4*i + j.
std::vector<StateVector> hyper_bell_basis(const LabelPair& sam_pair, const LabelPair& oam_pair);

struct BellPairing {
    SubsystemLabel left;
    SubsystemLabel right;
    BellKind kind = BellKind::PsiMinus;
};

/// A subsystem fixed in a computational basis state.
struct Spectator {
    SubsystemLabel label;
    std::size_t basis_index = 0;
};

struct ResourceSpec {
    std::vector<BellPairing> pairings;
    std::vector<Spectator> spectators;

    /// Throws std::invalid_argument on reused labels or bad spectator kets.
    void validate() const;
};

StateVector build_resource(const ResourceSpec& spec);

/// Transmitter state: Psi- on (A.SAM, C.SAM) and Psi- on (B.OAM, C.OAM),
/// with the spectators B.SAM and A.OAM fixed to |0>.
ResourceSpec transmitter_resource_spec();

/// Receiver mirror: Psi- on (D.SAM, E.SAM) and (D.OAM, F.OAM), spectators
/// E.OAM and F.SAM fixed to |0>.
ResourceSpec receiver_resource_spec();

enum class Pauli { I, X, Y, Z };

std::string to_string(Pauli p);
CMatrix pauli_matrix(Pauli p);
Operator pauli_operator(Pauli p);

/// Index of OAM charge `l` on a cyclic ladder of `l_dim` levels. For
/// l_dim == 2 the ladder is {+1, -1}; otherwise l runs from -floor(l_dim/2)
/// upwards, so l = 0 sits at index floor(l_dim/2).
std::size_t oam_index(int l, std::size_t l_dim);
int oam_value(std::size_t index, std::size_t l_dim);

/**
 * Geometric-phase metasurface on SAM (x) OAM:
 * |sigma+>|l> -> |sigma->|l + delta_l>, |sigma->|l> -> |sigma+>|l - delta_l>,
 * with cyclic wrap on the truncated ladder so the map is a permutation.
 */
Operator metasurface_operator(int delta_l, std::size_t l_dim);

}  // namespace hypermux
