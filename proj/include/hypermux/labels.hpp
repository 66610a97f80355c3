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

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hypermux {

/// Photonic degree of freedom a subsystem is encoded in.
struct Dof {
    enum class Kind { Sam, Oam, Generic };

    Kind kind = Kind::Generic;
    int index = 0;  // only meaningful for Generic

    static constexpr Dof sam() { return {Kind::Sam, 0}; }
    static constexpr Dof oam() { return {Kind::Oam, 0}; }
    static constexpr Dof generic(int k) { return {Kind::Generic, k}; }

    /// Dof used for the i-th multiplexed qubit: SAM, OAM, then GENERIC(i).
    static constexpr Dof for_slot(std::size_t i) {
        if (i == 0) return sam();
        if (i == 1) return oam();
        return generic(static_cast<int>(i));
    }

    friend constexpr auto operator<=>(const Dof&, const Dof&) = default;
    friend constexpr bool operator==(const Dof&, const Dof&) = default;
};

std::string to_string(Dof dof);

/// One labeled tensor factor of a state: a photon's degree of freedom.
///
/// Identity and ordering use (photon, dof) only; the dimension is carried
/// along so that states can validate shapes.
struct SubsystemLabel {
    std::string photon;
    Dof dof;
    std::size_t dim = 2;

    SubsystemLabel() = default;
    SubsystemLabel(std::string photon_, Dof dof_, std::size_t dim_ = 2);

    bool same_slot(const SubsystemLabel& other) const {
        return photon == other.photon && dof == other.dof;
    }
    SubsystemLabel with_dim(std::size_t d) const { return {photon, dof, d}; }
};

/// Canonical (photon, dof) order used for every composite state.
bool canonical_less(const SubsystemLabel& a, const SubsystemLabel& b);

bool operator==(const SubsystemLabel& a, const SubsystemLabel& b);

std::string to_string(const SubsystemLabel& label);

/// Shorthand constructors for the usual qubit slots.
inline SubsystemLabel sam(std::string photon) { return {std::move(photon), Dof::sam(), 2}; }
inline SubsystemLabel oam(std::string photon) { return {std::move(photon), Dof::oam(), 2}; }

using Labels = std::vector<SubsystemLabel>;

/// Throws std::invalid_argument when two labels share a (photon, dof) slot.
void require_unique(std::span<const SubsystemLabel> labels);

std::size_t total_dim(std::span<const SubsystemLabel> labels);

std::vector<std::size_t> dims_of(std::span<const SubsystemLabel> labels);

/// Position of `label` in `labels` by (photon, dof); throws if absent.
std::size_t index_of(std::span<const SubsystemLabel> labels, const SubsystemLabel& label);

bool contains(std::span<const SubsystemLabel> labels, const SubsystemLabel& label);

}  // namespace hypermux
