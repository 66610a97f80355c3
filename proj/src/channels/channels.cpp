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

#include "hypermux/channels.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace hypermux {
namespace {

using Index = Eigen::Index;

Index ix(std::size_t i) { return static_cast<Index>(i); }

Labels complement(const Labels& all, const Labels& part) {
    Labels out;
    for (const auto& l : all)
        if (!contains(part, l)) out.push_back(l);
    return out;
}

void check_inputs(const KrausChannel& channel, const StateVector& input, const Labels& channel_inputs) {
    if (channel_inputs.empty()) throw std::invalid_argument("coherent information: no channel input subsystems");
    for (const auto& l : channel_inputs)
        if (!contains(input.subsystems(), l))
            throw std::invalid_argument("coherent information: input lacks " + to_string(l));
    if (total_dim(channel_inputs) != channel.input_dim())
        throw std::invalid_argument("coherent information: channel expects dimension " +
                                    std::to_string(channel.input_dim()) + ", subsystems have " +
                                    std::to_string(total_dim(channel_inputs)));
}

// Input |phi> = vec(M) / |M| on (A, R), row-major in (a, r).
StateVector from_coefficients(const CMatrix& m) {
    const std::size_t d = static_cast<std::size_t>(m.rows());
    CVector v(m.size());
    for (Index a = 0; a < m.rows(); ++a)
        for (Index r = 0; r < m.cols(); ++r) v(a * m.cols() + r) = m(a, r);
    return StateVector({channel_input_label(d), reference_label(d)}, v / v.norm());
}

CMatrix random_coefficients(std::size_t d, Rng& rng, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    CMatrix m(ix(d), ix(d));
    for (Index i = 0; i < m.size(); ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        m(i) = Complex(re, im);
    }
    return m;
}

}  // namespace

void ErasureParams::validate() const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("erasure: epsilon must lie in [0, 1]");
    if (input_dim < 2) throw std::invalid_argument("erasure: input_dim must be >= 2");
}

KrausChannel erasure_channel(const ErasureParams& params) {
    params.validate();
    const std::size_t d = params.input_dim;
    std::vector<CMatrix> ops;
    CMatrix keep = CMatrix::Zero(ix(d + 1), ix(d));
    keep.topRows(ix(d)).setIdentity();
    ops.push_back(std::sqrt(1.0 - params.epsilon) * keep);
    for (std::size_t i = 0; i < d; ++i) {
        CMatrix lose = CMatrix::Zero(ix(d + 1), ix(d));
        lose(ix(d), ix(i)) = std::sqrt(params.epsilon);
        ops.push_back(lose);
    }
    return KrausChannel(std::move(ops), "erasure(" + std::to_string(params.epsilon) + ", d=" + std::to_string(d) + ")");
}

KrausChannel joint_carrier_erasure(double epsilon, std::size_t n_qubits) {
    if (n_qubits < 1 || n_qubits > 16) throw std::invalid_argument("joint erasure: n_qubits must be in [1, 16]");
    return erasure_channel({epsilon, std::size_t{1} << n_qubits});
}

KrausChannel independent_erasure(double epsilon, std::size_t n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("independent erasure: n_qubits must be >= 1");
    KrausChannel out = erasure_channel({epsilon, 2});
    const KrausChannel single = out;
    for (std::size_t i = 1; i < n_qubits; ++i) out = product_channel(out, single);
    return out;
}

KrausChannel identity_channel(std::size_t dim) {
    if (dim < 1) throw std::invalid_argument("identity channel: dim must be >= 1");
    return KrausChannel({CMatrix::Identity(ix(dim), ix(dim))}, "identity");
}

KrausChannel product_channel(const KrausChannel& a, const KrausChannel& b) {
    std::vector<CMatrix> ops;
    ops.reserve(a.kraus_ops().size() * b.kraus_ops().size());
    for (const auto& k : a.kraus_ops())
        for (const auto& l : b.kraus_ops()) {
            CMatrix p = kron(k, l);
            if (p.cwiseAbs().maxCoeff() > 0.0) ops.push_back(std::move(p));
        }
    if (ops.empty()) ops.push_back(kron(a.kraus_ops().front(), b.kraus_ops().front()));
    return KrausChannel(std::move(ops), a.description() + " x " + b.description());
}

KrausChannel compose_channels(const KrausChannel& first, const KrausChannel& second) {
    if (first.output_dim() != second.input_dim())
        throw std::invalid_argument("compose: output dimension of the first channel does not feed the second");
    std::vector<CMatrix> ops;
    for (const auto& k : first.kraus_ops())
        for (const auto& l : second.kraus_ops()) {
            CMatrix p = l * k;
            if (p.cwiseAbs().maxCoeff() > 0.0) ops.push_back(std::move(p));
        }
    if (ops.empty()) ops.push_back(second.kraus_ops().front() * first.kraus_ops().front());
    return KrausChannel(std::move(ops), second.description() + " o " + first.description());
}

KrausChannel flag_preserving_erasure(const ErasureParams& params) {
    params.validate();
    const std::size_t n = params.output_dim();
    std::vector<CMatrix> ops;
    ops.push_back(std::sqrt(1.0 - params.epsilon) * CMatrix::Identity(ix(n), ix(n)));
    for (std::size_t i = 0; i < n; ++i) {
        CMatrix lose = CMatrix::Zero(ix(n), ix(n));
        lose(ix(params.input_dim), ix(i)) = std::sqrt(params.epsilon);
        ops.push_back(lose);
    }
    return KrausChannel(std::move(ops), "flagged erasure(" + std::to_string(params.epsilon) + ")");
}

KrausChannel complementary_channel(const KrausChannel& channel) {
    const auto& ks = channel.kraus_ops();
    const std::size_t r = ks.size();
    std::vector<CMatrix> ops;
    for (std::size_t j = 0; j < channel.output_dim(); ++j) {
        CMatrix f(ix(r), ix(channel.input_dim()));
        for (std::size_t i = 0; i < r; ++i) f.row(ix(i)) = ks[i].row(ix(j));
        ops.push_back(std::move(f));
    }
    return KrausChannel(std::move(ops), "complement of " + channel.description());
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.subsystems() != sigma.subsystems()) throw std::invalid_argument("trace_distance: subsystem mismatch");
    const CMatrix diff = rho.matrix() - sigma.matrix();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double coherent_information(const KrausChannel& channel, const StateVector& input, const Labels& channel_inputs) {
    check_inputs(channel, input, channel_inputs);
    const Labels refs = complement(input.subsystems(), channel_inputs);
    const SubsystemLabel merged(channel_inputs.front().photon, Dof::generic(0), channel.output_dim());
    const DensityMatrix omega = apply_kraus(DensityMatrix::from_pure(input), channel, channel_inputs, merged);
    const Labels b = complement(omega.subsystems(), refs);
    return von_neumann_entropy(partial_trace(omega, b)) - von_neumann_entropy(omega);
}

double coherent_information_complementary(const KrausChannel& channel, const StateVector& input,
                                          const Labels& channel_inputs) {
    check_inputs(channel, input, channel_inputs);
    const DensityMatrix rho_a = reduced_state(input, channel_inputs);
    const SubsystemLabel merged(channel_inputs.front().photon, Dof::generic(0), 2);
    auto output_entropy = [&](const KrausChannel& ch) {
        // A one-dimensional output (single Kraus operator) carries no entropy.
        if (ch.output_dim() == 1) return 0.0;
        return von_neumann_entropy(apply_kraus(rho_a, ch, channel_inputs, merged.with_dim(ch.output_dim())));
    };
    return output_entropy(channel) - output_entropy(complementary_channel(channel));
}

SubsystemLabel channel_input_label(std::size_t dim) { return SubsystemLabel("A", Dof::generic(0), dim); }
SubsystemLabel reference_label(std::size_t dim) { return SubsystemLabel("R", Dof::generic(0), dim); }

StateVector maximally_entangled_input(std::size_t dim) {
    return from_coefficients(CMatrix::Identity(ix(dim), ix(dim)));
}

CoherentInfoSearch coherent_information_max(const KrausChannel& channel, const InputFamily& family) {
    if (family.empty()) throw std::invalid_argument("coherent_information_max: empty input family");
    const std::size_t d = channel.input_dim();
    if (d < 2) throw std::invalid_argument("coherent_information_max: channel input must have dimension >= 2");
    const Labels a = {channel_input_label(d)};

    CoherentInfoSearch best{-std::numeric_limits<double>::infinity(), "", 0};
    CMatrix best_m;
    auto consider = [&](const CMatrix& m, const char* name) {
        const double v = coherent_information(channel, from_coefficients(m), a);
        ++best.evaluations;
        if (v > best.value) {
            best.value = v;
            best.best_family = name;
            best_m = m;
        }
    };

    if (family.maximally_entangled) consider(CMatrix::Identity(ix(d), ix(d)), "maximally_entangled");
    if (family.product) {
        CMatrix m = CMatrix::Zero(ix(d), ix(d));
        m(0, 0) = 1.0;
        consider(m, "product");
    }
    Rng rng(family.seed);
    for (std::size_t i = 0; i < family.random_samples; ++i) consider(random_coefficients(d, rng), "random");

    // Local refinement: perturb the current best and keep improvements.
    const std::string start = best.best_family;
    double scale = family.refine_scale;
    for (std::size_t i = 0; i < family.refine_steps; ++i) {
        const CMatrix trial = best_m / best_m.norm() + random_coefficients(d, rng, scale / static_cast<double>(d));
        const double before = best.value;
        consider(trial, "refined");
        if (best.value > before)
            best.best_family = start + "+refined";
        else
            scale *= 0.95;
    }
    return best;
}

double erasure_capacity_formula(double epsilon, int n_dofs) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("capacity: epsilon must lie in [0, 1]");
    if (n_dofs < 1) throw std::invalid_argument("capacity: n_dofs must be >= 1");
    return std::max(0.0, n_dofs * (1.0 - 2.0 * epsilon));
}

}  // namespace hypermux
