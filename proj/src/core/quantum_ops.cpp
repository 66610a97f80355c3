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

#include "hypermux/quantum_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "hypermux/kernels.hpp"

namespace hypermux {
namespace {

using Index = Eigen::Index;

constexpr double kBasisTolerance = 1e-10;
constexpr double kProductTolerance = 1e-9;
// Eigenvalues below this are rounding noise; their square roots would not be.
constexpr double kSqrtCutoff = 1e-13;

std::vector<std::size_t> positions_of(const Labels& state_labels, const Labels& targets) {
    std::vector<std::size_t> pos;
    pos.reserve(targets.size());
    for (const auto& t : targets) {
        const auto p = index_of(state_labels, t);
        if (state_labels[p].dim != t.dim)
            throw std::invalid_argument("subsystem " + to_string(t) + ": dimension mismatch (state has " +
                                        std::to_string(state_labels[p].dim) + ")");
        pos.push_back(p);
    }
    for (std::size_t i = 0; i < pos.size(); ++i)
        for (std::size_t j = i + 1; j < pos.size(); ++j)
            if (pos[i] == pos[j]) throw std::invalid_argument("repeated target " + to_string(targets[i]));
    return pos;
}

std::vector<std::size_t> rest_positions(std::size_t n, const std::vector<std::size_t>& pos) {
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < n; ++k)
        if (std::find(pos.begin(), pos.end(), k) == pos.end()) rest.push_back(k);
    return rest;
}

// Data in `order` of `labels`, permuted into canonical order.
StateVector canonical_state(Labels labels, const CVector& amps) {
    require_unique(labels);
    const auto order = canonical_order(labels);
    Labels sorted;
    for (auto o : order) sorted.push_back(labels[o]);
    return StateVector::adopt(std::move(sorted), kernels::permute_rows(amps, dims_of(labels), order));
}

DensityMatrix canonical_density(Labels labels, const CMatrix& m) {
    require_unique(labels);
    const auto order = canonical_order(labels);
    Labels sorted;
    for (auto o : order) sorted.push_back(labels[o]);
    const auto dims = dims_of(labels);
    CMatrix rows = kernels::permute_rows(m, dims, order);
    return DensityMatrix::adopt(std::move(sorted), kernels::permute_rows(rows.transpose(), dims, order).transpose());
}

struct Split {
    CMatrix block;  // rows: target digits (targets order); cols: rest digits
    Labels rest;
};

// Reshapes psi into a (targets) x (rest) matrix.
Split split(const StateVector& psi, const std::vector<std::size_t>& targets) {
    const auto& labels = psi.subsystems();
    const auto rest = rest_positions(labels.size(), targets);
    std::vector<std::size_t> order(targets);
    order.insert(order.end(), rest.begin(), rest.end());
    const CMatrix permuted = kernels::permute_rows(psi.amplitudes(), dims_of(labels), order);
    std::size_t dt = 1;
    for (auto t : targets) dt *= labels[t].dim;
    const std::size_t dr = psi.dim() / dt;
    Split out;
    out.block = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        permuted.data(), static_cast<Index>(dt), static_cast<Index>(dr));
    for (auto r : rest) out.rest.push_back(labels[r]);
    return out;
}

std::vector<double> clamped_eigenvalues(const CMatrix& m) {
    const CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    std::vector<double> out(static_cast<std::size_t>(es.eigenvalues().size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(0.0, es.eigenvalues()(static_cast<Index>(i)));
    return out;
}

void require_same_structure(const Labels& a, const Labels& b) {
    if (a.size() != b.size()) throw std::invalid_argument("fidelity: subsystem structure differs");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) throw std::invalid_argument("fidelity: subsystem structure differs at " + to_string(a[i]));
}

const std::vector<StateVector>& check_basis(const std::vector<StateVector>& basis) {
    if (basis.empty()) throw std::invalid_argument("measurement basis is empty");
    const auto& labels = basis.front().subsystems();
    for (const auto& b : basis) {
        if (b.subsystems().size() != labels.size())
            throw std::invalid_argument("measurement basis vectors live on different subsystems");
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (!(b.subsystems()[i] == labels[i]))
                throw std::invalid_argument("measurement basis vectors live on different subsystems");
    }
    const std::size_t d = basis.front().dim();
    if (basis.size() != d)
        throw std::invalid_argument("measurement basis is incomplete: " + std::to_string(basis.size()) +
                                    " vectors for dimension " + std::to_string(d));
    CMatrix b(static_cast<Index>(d), static_cast<Index>(d));
    for (std::size_t k = 0; k < d; ++k) b.col(static_cast<Index>(k)) = basis[k].amplitudes();
    if (max_abs(b.adjoint() * b - CMatrix::Identity(b.cols(), b.cols())) > kBasisTolerance)
        throw std::invalid_argument("measurement basis is not orthonormal");
    return basis;
}

// Unnormalized conditional states, one row per basis element.
Split project_rows(const StateVector& psi, const std::vector<StateVector>& basis) {
    check_basis(basis);
    const auto targets = positions_of(psi.subsystems(), basis.front().subsystems());
    Split s = split(psi, targets);
    CMatrix b(s.block.rows(), static_cast<Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) b.col(static_cast<Index>(k)) = basis[k].amplitudes();
    s.block = b.adjoint() * s.block;
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    Labels labels = a.subsystems();
    labels.insert(labels.end(), b.subsystems().begin(), b.subsystems().end());
    require_unique(labels);
    const CVector amps = kron(a.amplitudes(), b.amplitudes());
    return canonical_state(std::move(labels), amps);
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
    Labels labels = a.subsystems();
    labels.insert(labels.end(), b.subsystems().begin(), b.subsystems().end());
    require_unique(labels);
    return canonical_density(std::move(labels), kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const Labels& keep) {
    auto pos = positions_of(rho.subsystems(), keep);
    std::sort(pos.begin(), pos.end());
    Labels kept;
    for (auto p : pos) kept.push_back(rho.subsystems()[p]);
    return DensityMatrix::adopt(std::move(kept),
                                kernels::partial_trace(rho.matrix(), dims_of(rho.subsystems()), pos));
}

DensityMatrix reduced_state(const StateVector& psi, const Labels& keep) {
    auto pos = positions_of(psi.subsystems(), keep);
    std::sort(pos.begin(), pos.end());
    const Split s = split(psi, pos);
    Labels kept;
    for (auto p : pos) kept.push_back(psi.subsystems()[p]);
    return DensityMatrix::adopt(std::move(kept), s.block * s.block.adjoint());
}

double von_neumann_entropy(const DensityMatrix& rho) {
    double h = 0.0;
    for (double lambda : clamped_eigenvalues(rho.matrix()))
        if (lambda > 0.0) h -= lambda * std::log2(lambda);
    return std::max(h, 0.0);
}

double entanglement_entropy(const StateVector& psi, const Labels& part) {
    return von_neumann_entropy(reduced_state(psi, part));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_structure(rho.subsystems(), sigma.subsystems());
    const CMatrix h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const Eigen::VectorXd root =
        es.eigenvalues().unaryExpr([](double v) { return v < kSqrtCutoff ? 0.0 : std::sqrt(v); });
    const CMatrix sqrt_rho = es.eigenvectors() * root.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    double tr = 0.0;
    for (double lambda : clamped_eigenvalues(sqrt_rho * sigma.matrix() * sqrt_rho))
        if (lambda >= kSqrtCutoff) tr += std::sqrt(lambda);
    return std::clamp(tr * tr, 0.0, 1.0);
}

double fidelity(const StateVector& psi, const DensityMatrix& sigma) {
    require_same_structure(psi.subsystems(), sigma.subsystems());
    const Complex v = psi.amplitudes().dot(sigma.matrix() * psi.amplitudes());
    return std::clamp(v.real(), 0.0, 1.0);
}

double fidelity(const StateVector& psi, const StateVector& phi) {
    require_same_structure(psi.subsystems(), phi.subsystems());
    return std::clamp(std::norm(psi.amplitudes().dot(phi.amplitudes())), 0.0, 1.0);
}

StateVector apply_operator(const StateVector& psi, const Operator& op, const Labels& targets) {
    if (!op.is_unitary()) throw std::invalid_argument("apply_operator: operator " + op.name() + " is not unitary");
    const auto pos = positions_of(psi.subsystems(), targets);
    const auto target_dims = dims_of(targets);
    if (target_dims != op.dims()) throw std::invalid_argument("apply_operator: target dimensions do not match operator");
    return StateVector::adopt(psi.subsystems(), kernels::apply_local(psi.amplitudes(), dims_of(psi.subsystems()), pos,
                                                                     op.matrix(), op.dims()));
}

DensityMatrix apply_operator(const DensityMatrix& rho, const Operator& op, const Labels& targets) {
    if (!op.is_unitary()) throw std::invalid_argument("apply_operator: operator " + op.name() + " is not unitary");
    const auto pos = positions_of(rho.subsystems(), targets);
    const auto target_dims = dims_of(targets);
    if (target_dims != op.dims()) throw std::invalid_argument("apply_operator: target dimensions do not match operator");
    const auto dims = dims_of(rho.subsystems());
    const CMatrix left = kernels::apply_local(rho.matrix(), dims, pos, op.matrix(), op.dims());
    const CMatrix both = kernels::apply_local(left.adjoint(), dims, pos, op.matrix(), op.dims()).adjoint();
    return DensityMatrix::adopt(rho.subsystems(), both);
}

DensityMatrix apply_kraus(const DensityMatrix& rho, const KrausChannel& channel, const Labels& targets,
                          std::optional<SubsystemLabel> merged_label) {
    const auto& labels = rho.subsystems();
    auto pos = positions_of(labels, targets);
    std::size_t din = 1;
    for (const auto& t : targets) din *= t.dim;
    if (din != channel.input_dim())
        throw std::invalid_argument("apply_kraus: channel input dimension " + std::to_string(channel.input_dim()) +
                                    " does not match targets (" + std::to_string(din) + ")");
    const std::size_t dout = channel.output_dim();

    CMatrix work = rho.matrix();
    std::vector<std::size_t> dims = dims_of(labels);
    Labels out_labels = labels;
    std::vector<std::size_t> out_target_dims = dims_of(targets);

    if (dout != din) {
        if (targets.size() == 1) {
            out_target_dims = {dout};
            out_labels[pos[0]] = labels[pos[0]].with_dim(dout);
        } else {
            // Bring the targets to the end as one fused register.
            const auto rest = rest_positions(labels.size(), pos);
            std::vector<std::size_t> order(rest);
            order.insert(order.end(), pos.begin(), pos.end());
            CMatrix rows = kernels::permute_rows(work, dims, order);
            work = kernels::permute_rows(rows.transpose(), dims, order).transpose();
            dims.clear();
            out_labels.clear();
            for (auto r : rest) {
                dims.push_back(labels[r].dim);
                out_labels.push_back(labels[r]);
            }
            dims.push_back(din);
            SubsystemLabel fused = merged_label.value_or(SubsystemLabel(targets.front().photon, Dof::generic(0), dout));
            fused.dim = dout;
            out_labels.push_back(fused);
            pos = {rest.size()};
            out_target_dims = {dout};
        }
    }

    CMatrix out;
    for (const auto& k : channel.kraus_ops()) {
        const CMatrix left = kernels::apply_local(work, dims, pos, k, out_target_dims);
        const CMatrix term = kernels::apply_local(left.adjoint(), dims, pos, k, out_target_dims).adjoint();
        if (out.size() == 0)
            out = term;
        else
            out += term;
    }
    return canonical_density(std::move(out_labels), out);
}

StateVector haar_random_state(const Labels& labels, Rng& rng) {
    require_unique(labels);
    std::normal_distribution<double> normal(0.0, 1.0);
    CVector v(static_cast<Index>(total_dim(labels)));
    for (Index i = 0; i < v.size(); ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Complex(re, im);
    }
    v.normalize();
    return canonical_state(labels, v);
}

CMatrix haar_random_unitary(std::size_t d, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix z(static_cast<Index>(d), static_cast<Index>(d));
    for (Index j = 0; j < z.cols(); ++j)
        for (Index i = 0; i < z.rows(); ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = Complex(re, im);
        }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix column phases so the distribution is exactly Haar.
    for (Index j = 0; j < q.cols(); ++j) {
        const Complex diag = r(j, j);
        const double mag = std::abs(diag);
        if (mag > 0.0) q.col(j) *= diag / mag;
    }
    return q;
}

std::vector<double> outcome_probabilities(const StateVector& psi, const std::vector<StateVector>& basis) {
    const Split s = project_rows(psi, basis);
    std::vector<double> probs(basis.size());
    for (std::size_t k = 0; k < probs.size(); ++k) probs[k] = s.block.row(static_cast<Index>(k)).squaredNorm();
    return probs;
}

MeasurementResult measure_in_basis(const StateVector& psi, const std::vector<StateVector>& basis, Rng& rng) {
    return measure_in_basis(psi, basis, sample_with(rng));
}

MeasurementResult measure_in_basis(const StateVector& psi, const std::vector<StateVector>& basis,
                                   const OutcomePicker& pick) {
    const Split s = project_rows(psi, basis);
    std::vector<double> probs(basis.size());
    for (std::size_t k = 0; k < probs.size(); ++k) probs[k] = s.block.row(static_cast<Index>(k)).squaredNorm();
    const std::size_t k = pick(probs);
    if (k >= probs.size() || probs[k] <= 0.0) throw std::logic_error("measure_in_basis: picked an impossible outcome");
    CVector post = s.block.row(static_cast<Index>(k)).transpose() / std::sqrt(probs[k]);
    return {k, StateVector::adopt(s.rest, std::move(post)), probs[k]};
}

StateVector relabel(const StateVector& psi, const std::vector<std::pair<SubsystemLabel, SubsystemLabel>>& mapping) {
    Labels labels = psi.subsystems();
    for (const auto& [from, to] : mapping) {
        const auto p = index_of(labels, from);
        if (labels[p].dim != to.dim) throw std::invalid_argument("relabel: dimension mismatch for " + to_string(from));
        labels[p] = to;
    }
    return canonical_state(std::move(labels), psi.amplitudes());
}

DensityMatrix relabel(const DensityMatrix& rho,
                      const std::vector<std::pair<SubsystemLabel, SubsystemLabel>>& mapping) {
    Labels labels = rho.subsystems();
    for (const auto& [from, to] : mapping) {
        const auto p = index_of(labels, from);
        if (labels[p].dim != to.dim) throw std::invalid_argument("relabel: dimension mismatch for " + to_string(from));
        labels[p] = to;
    }
    return canonical_density(std::move(labels), rho.matrix());
}

StateVector discard_product_factor(const StateVector& psi, const Labels& drop) {
    const auto pos = positions_of(psi.subsystems(), drop);
    const Split s = split(psi, pos);
    Index best = 0;
    double best_norm = -1.0;
    for (Index i = 0; i < s.block.rows(); ++i) {
        const double n = s.block.row(i).squaredNorm();
        if (n > best_norm) {
            best_norm = n;
            best = i;
        }
    }
    const Eigen::RowVectorXcd w = s.block.row(best) / std::sqrt(best_norm);
    // Rank-one check: every row must be a multiple of w.
    const CMatrix residual = s.block - (s.block * w.adjoint()) * w;
    if (max_abs(residual) > kProductTolerance)
        throw std::invalid_argument("discard_product_factor: subsystems are entangled with the rest");
    return StateVector::adopt(s.rest, w.transpose());
}

}  // namespace hypermux
