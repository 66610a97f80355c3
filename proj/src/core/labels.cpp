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

#include "hypermux/labels.hpp"

#include <stdexcept>
#include <tuple>

namespace hypermux {

std::string to_string(Dof dof) {
    switch (dof.kind) {
        case Dof::Kind::Sam:
            return "SAM";
        case Dof::Kind::Oam:
            return "OAM";
        case Dof::Kind::Generic:
            return "G" + std::to_string(dof.index);
    }
    return "?";
}

SubsystemLabel::SubsystemLabel(std::string photon_, Dof dof_, std::size_t dim_)
    : photon(std::move(photon_)), dof(dof_), dim(dim_) {
    if (photon.empty()) throw std::invalid_argument("subsystem label needs a photon name");
    if (dim < 2) throw std::invalid_argument("subsystem " + to_string(*this) + ": dimension must be >= 2");
}

bool canonical_less(const SubsystemLabel& a, const SubsystemLabel& b) {
    return std::tie(a.photon, a.dof) < std::tie(b.photon, b.dof);
}

bool operator==(const SubsystemLabel& a, const SubsystemLabel& b) {
    return a.same_slot(b) && a.dim == b.dim;
}

std::string to_string(const SubsystemLabel& label) {
    return label.photon + "." + to_string(label.dof);
}

void require_unique(std::span<const SubsystemLabel> labels) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i].same_slot(labels[j]))
                throw std::invalid_argument("duplicate subsystem label " + to_string(labels[i]));
}

std::size_t total_dim(std::span<const SubsystemLabel> labels) {
    std::size_t d = 1;
    for (const auto& l : labels) d *= l.dim;
    return d;
}

std::vector<std::size_t> dims_of(std::span<const SubsystemLabel> labels) {
    std::vector<std::size_t> d;
    d.reserve(labels.size());
    for (const auto& l : labels) d.push_back(l.dim);
    return d;
}

std::size_t index_of(std::span<const SubsystemLabel> labels, const SubsystemLabel& label) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i].same_slot(label)) return i;
    throw std::invalid_argument("unknown subsystem label " + to_string(label));
}

bool contains(std::span<const SubsystemLabel> labels, const SubsystemLabel& label) {
    for (const auto& l : labels)
        if (l.same_slot(label)) return true;
    return false;
}

}  // namespace hypermux
