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

#include "hypermux/protocol_states.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "hypermux/quantum_ops.hpp"

namespace hypermux {

std::string to_string(BellKind kind) {
    switch (kind) {
        case BellKind::PhiPlus:
            return "PhiPlus";
        case BellKind::PhiMinus:
            return "PhiMinus";
        case BellKind::PsiPlus:
            return "PsiPlus";
        case BellKind::PsiMinus:
            return "PsiMinus";
    }
    return "?";
}

StateVector bell_state(BellKind kind, const SubsystemLabel& left, const SubsystemLabel& right) {
    if (left.dim != 2 || right.dim != 2)
        throw std::invalid_argument("bell_state: " + to_string(left) + " and " + to_string(right) + " must be qubits");
    const double s = std::sqrt(0.5);
    CVector v = CVector::Zero(4);
    switch (kind) {
        case BellKind::PhiPlus:
            v(0) = s;
            v(3) = s;
            break;
        case BellKind::PhiMinus:
            v(0) = s;
            v(3) = -s;
            break;
        case BellKind::PsiPlus:
            v(1) = s;
            v(2) = s;
            break;
        case BellKind::PsiMinus:
            v(1) = s;
            v(2) = -s;
            break;
    }
    return StateVector({left, right}, v);
}

std::vector<StateVector> bell_basis(const SubsystemLabel& left, const SubsystemLabel& right) {
    std::vector<StateVector> out;
    out.reserve(4);
    for (auto k : kAllBellKinds) out.push_back(bell_state(k, left, right));
    return out;
}

std::vector<StateVector> hyper_bell_basis(const LabelPair& sam_pair, const LabelPair& oam_pair) {
    require_unique(Labels{sam_pair.first, sam_pair.second, oam_pair.first, oam_pair.second});
    std::vector<StateVector> out;
    out.reserve(16);
    for (auto i : kAllBellKinds) {
        const auto s = bell_state(i, sam_pair.first, sam_pair.second);
        for (auto j : kAllBellKinds) out.push_back(tensor_product(s, bell_state(j, oam_pair.first, oam_pair.second)));
    }
    return out;
}

void ResourceSpec::validate() const {
    Labels all;
    for (const auto& p : pairings) {
        if (p.left.dim != 2 || p.right.dim != 2) throw std::invalid_argument("resource: Bell pairings need qubits");
        all.push_back(p.left);
        all.push_back(p.right);
    }
    for (const auto& s : spectators) {
        if (s.basis_index >= s.label.dim)
            throw std::invalid_argument("resource: spectator ket out of range for " + to_string(s.label));
        all.push_back(s.label);
    }
    if (all.empty()) throw std::invalid_argument("resource: empty specification");
    require_unique(all);
}

StateVector build_resource(const ResourceSpec& spec) {
    spec.validate();
    std::optional<StateVector> acc;
    auto append = [&acc](const StateVector& part) { acc = acc ? tensor_product(*acc, part) : part; };
    for (const auto& p : spec.pairings) append(bell_state(p.kind, p.left, p.right));
    for (const auto& s : spec.spectators) append(StateVector::basis({s.label}, {s.basis_index}));
    return *acc;
}

ResourceSpec transmitter_resource_spec() {
    ResourceSpec spec;
    spec.pairings = {{sam("A"), sam("C"), BellKind::PsiMinus}, {oam("B"), oam("C"), BellKind::PsiMinus}};
    spec.spectators = {{sam("B"), 0}, {oam("A"), 0}};
    return spec;
}

ResourceSpec receiver_resource_spec() {
    ResourceSpec spec;
    spec.pairings = {{sam("D"), sam("E"), BellKind::PsiMinus}, {oam("D"), oam("F"), BellKind::PsiMinus}};
    spec.spectators = {{oam("E"), 0}, {sam("F"), 0}};
    return spec;
}

std::string to_string(Pauli p) {
    switch (p) {
        case Pauli::I:
            return "I";
        case Pauli::X:
            return "X";
        case Pauli::Y:
            return "Y";
        case Pauli::Z:
            return "Z";
    }
    return "?";
}

CMatrix pauli_matrix(Pauli p) {
    CMatrix m(2, 2);
    switch (p) {
        case Pauli::I:
            m << 1, 0, 0, 1;
            break;
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << 0, Complex(0, -1), Complex(0, 1), 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

Operator pauli_operator(Pauli p) { return Operator(pauli_matrix(p), {2}, to_string(p)); }

std::size_t oam_index(int l, std::size_t l_dim) {
    if (l_dim < 2) throw std::invalid_argument("oam_index: ladder needs at least 2 levels");
    if (l_dim == 2) {
        if (l == 1) return kOamPlusOne;
        if (l == -1) return kOamMinusOne;
        throw std::invalid_argument("oam_index: two-level ladder only holds l = +1 and l = -1");
    }
    const int lo = -static_cast<int>(l_dim / 2);
    const int idx = l - lo;
    if (idx < 0 || idx >= static_cast<int>(l_dim))
        throw std::invalid_argument("oam_index: charge " + std::to_string(l) + " outside the ladder");
    return static_cast<std::size_t>(idx);
}

int oam_value(std::size_t index, std::size_t l_dim) {
    if (index >= l_dim) throw std::invalid_argument("oam_value: index outside the ladder");
    if (l_dim == 2) return index == kOamPlusOne ? 1 : -1;
    return static_cast<int>(index) - static_cast<int>(l_dim / 2);
}

Operator metasurface_operator(int delta_l, std::size_t l_dim) {
    if (l_dim < 2) throw std::invalid_argument("metasurface: l_dim must be >= 2");
    if (delta_l < 1) throw std::invalid_argument("metasurface: delta_l must be >= 1");
    if (static_cast<std::size_t>(delta_l) >= l_dim) throw std::invalid_argument("metasurface: delta_l must be < l_dim");
    const auto d = static_cast<long>(l_dim);
    const auto dim = static_cast<Eigen::Index>(2 * l_dim);
    CMatrix u = CMatrix::Zero(dim, dim);
    auto flat = [d](std::size_t spin, long l_idx) { return static_cast<Eigen::Index>(static_cast<long>(spin) * d + ((l_idx % d) + d) % d); };
    for (long i = 0; i < d; ++i) {
        u(flat(kSigmaMinus, i + delta_l), flat(kSigmaPlus, i)) = 1.0;
        u(flat(kSigmaPlus, i - delta_l), flat(kSigmaMinus, i)) = 1.0;
    }
    return Operator(u, {2, l_dim}, "metasurface");
}

}  // namespace hypermux
