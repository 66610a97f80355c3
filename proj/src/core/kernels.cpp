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

#include "hypermux/kernels.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hypermux::kernels {
namespace {

using Index = std::ptrdiff_t;
using Complex = std::complex<double>;

std::size_t product(std::span<const std::size_t> v) {
    return std::accumulate(v.begin(), v.end(), std::size_t{1}, std::multiplies<>());
}

std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
    return s;
}

// Flat offsets of every local index over `positions`, where the local index
// enumerates digits of `local_dims` (first most significant).
std::vector<std::size_t> local_offsets(std::span<const std::size_t> local_dims,
                                       std::span<const std::size_t> positions,
                                       std::span<const std::size_t> strides) {
    const std::size_t n = product(local_dims);
    std::vector<std::size_t> out(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t rem = j;
        std::size_t off = 0;
        for (std::size_t k = local_dims.size(); k-- > 0;) {
            off += (rem % local_dims[k]) * strides[positions[k]];
            rem /= local_dims[k];
        }
        out[j] = off;
    }
    return out;
}

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> positions) {
    std::vector<char> used(n, 0);
    for (auto p : positions) {
        if (p >= n) throw std::invalid_argument("kernel: subsystem position out of range");
        if (used[p]) throw std::invalid_argument("kernel: repeated subsystem position");
        used[p] = 1;
    }
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < n; ++k)
        if (!used[k]) rest.push_back(k);
    return rest;
}

std::vector<std::size_t> pick(std::span<const std::size_t> v, std::span<const std::size_t> idx) {
    std::vector<std::size_t> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(v[i]);
    return out;
}

void check_order(std::span<const std::size_t> order, std::size_t n) {
    if (order.size() != n) throw std::invalid_argument("kernel: permutation has wrong length");
    std::vector<char> seen(n, 0);
    for (auto p : order) {
        if (p >= n || seen[p]) throw std::invalid_argument("kernel: not a permutation");
        seen[p] = 1;
    }
}

}  // namespace

CMatrix apply_local(const CMatrix& in, std::span<const std::size_t> dims,
                    std::span<const std::size_t> targets, const CMatrix& op,
                    std::span<const std::size_t> out_target_dims) {
    if (targets.size() != out_target_dims.size())
        throw std::invalid_argument("apply_local: output dims must match target count");
    const auto rest = complement(dims.size(), targets);
    const auto in_target_dims = pick(dims, targets);
    const std::size_t din = product(in_target_dims);
    const std::size_t dout = product(out_target_dims);
    if (static_cast<std::size_t>(op.cols()) != din || static_cast<std::size_t>(op.rows()) != dout)
        throw std::invalid_argument("apply_local: operator shape does not match targets");
    if (static_cast<std::size_t>(in.rows()) != product(dims))
        throw std::invalid_argument("apply_local: register size mismatch");

    std::vector<std::size_t> out_dims(dims.begin(), dims.end());
    for (std::size_t k = 0; k < targets.size(); ++k) out_dims[targets[k]] = out_target_dims[k];

    const auto in_strides = strides_of(dims);
    const auto out_strides = strides_of(out_dims);
    const auto off_in = local_offsets(in_target_dims, targets, in_strides);
    const auto off_out = local_offsets(out_target_dims, targets, out_strides);
    const auto rest_dims = pick(dims, rest);
    const auto base_in = local_offsets(rest_dims, rest, in_strides);
    const auto base_out = local_offsets(rest_dims, rest, out_strides);

    const Index n_rest = static_cast<Index>(base_in.size());
    const Index n_cols = in.cols();
    const Index work = n_rest * n_cols;
    CMatrix out = CMatrix::Zero(static_cast<Index>(product(out_dims)), n_cols);

#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(work) * din >= kParallelThreshold)
    for (Index w = 0; w < work; ++w) {
        const Index c = w / n_rest;
        const Index r = w % n_rest;
        const std::size_t bi = base_in[r];
        const std::size_t bo = base_out[r];
        for (std::size_t o = 0; o < dout; ++o) {
            Complex acc{0.0, 0.0};
            for (std::size_t j = 0; j < din; ++j) {
                const Complex m = op(static_cast<Index>(o), static_cast<Index>(j));
                if (m != Complex{0.0, 0.0}) acc += m * in(static_cast<Index>(bi + off_in[j]), c);
            }
            out(static_cast<Index>(bo + off_out[o]), c) = acc;
        }
    }
    return out;
}

CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep) {
    if (!std::is_sorted(keep.begin(), keep.end()))
        throw std::invalid_argument("partial_trace: keep positions must be ascending");
    const auto traced = complement(dims.size(), keep);
    const auto strides = strides_of(dims);
    const auto keep_dims = pick(dims, keep);
    const auto traced_dims = pick(dims, traced);
    const auto base_keep = local_offsets(keep_dims, keep, strides);
    const auto base_tr = local_offsets(traced_dims, traced, strides);
    if (static_cast<std::size_t>(rho.rows()) != product(dims) || rho.rows() != rho.cols())
        throw std::invalid_argument("partial_trace: matrix shape mismatch");

    const Index dk = static_cast<Index>(base_keep.size());
    const Index work = dk * dk;
    CMatrix out(dk, dk);
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(work) * base_tr.size() >= kParallelThreshold)
    for (Index w = 0; w < work; ++w) {
        const Index a = w / dk;
        const Index b = w % dk;
        Complex acc{0.0, 0.0};
        for (auto t : base_tr)
            acc += rho(static_cast<Index>(base_keep[a] + t), static_cast<Index>(base_keep[b] + t));
        out(a, b) = acc;
    }
    return out;
}

CMatrix permute_rows(const CMatrix& in, std::span<const std::size_t> dims,
                     std::span<const std::size_t> order) {
    check_order(order, dims.size());
    if (static_cast<std::size_t>(in.rows()) != product(dims))
        throw std::invalid_argument("permute_rows: register size mismatch");
    const auto old_strides = strides_of(dims);
    const auto new_dims = pick(dims, order);
    // Offsets in the old layout of every index in the new layout.
    const auto src = local_offsets(new_dims, order, old_strides);
    const Index rows = in.rows();
    CMatrix out(rows, in.cols());
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(rows * in.cols()) >= kParallelThreshold)
    for (Index r = 0; r < rows; ++r) out.row(r) = in.row(static_cast<Index>(src[r]));
    return out;
}

namespace reference {

namespace {

std::vector<std::size_t> decode(std::size_t flat, std::span<const std::size_t> dims) {
    std::vector<std::size_t> digits(dims.size(), 0);
    for (std::size_t k = dims.size(); k-- > 0;) {
        digits[k] = flat % dims[k];
        flat /= dims[k];
    }
    return digits;
}

std::size_t encode(std::span<const std::size_t> digits, std::span<const std::size_t> dims) {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + digits[k];
    return flat;
}

}  // namespace

CMatrix apply_local(const CMatrix& in, std::span<const std::size_t> dims,
                    std::span<const std::size_t> targets, const CMatrix& op,
                    std::span<const std::size_t> out_target_dims) {
    std::vector<std::size_t> out_dims(dims.begin(), dims.end());
    std::vector<std::size_t> in_target_dims;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        in_target_dims.push_back(dims[targets[k]]);
        out_dims[targets[k]] = out_target_dims[k];
    }
    const std::size_t din = product(in_target_dims);
    const std::size_t total_out = product(out_dims);
    CMatrix out = CMatrix::Zero(static_cast<Index>(total_out), in.cols());
    for (Index c = 0; c < in.cols(); ++c) {
        for (std::size_t flat = 0; flat < total_out; ++flat) {
            const auto out_digits = decode(flat, out_dims);
            std::vector<std::size_t> tdig;
            for (auto t : targets) tdig.push_back(out_digits[t]);
            const std::size_t o = encode(tdig, out_target_dims);
            Complex acc{0.0, 0.0};
            for (std::size_t j = 0; j < din; ++j) {
                const auto jd = decode(j, in_target_dims);
                auto in_digits = out_digits;
                for (std::size_t k = 0; k < targets.size(); ++k) in_digits[targets[k]] = jd[k];
                acc += op(static_cast<Index>(o), static_cast<Index>(j)) *
                       in(static_cast<Index>(encode(in_digits, dims)), c);
            }
            out(static_cast<Index>(flat), c) = acc;
        }
    }
    return out;
}

CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep) {
    std::vector<std::size_t> keep_dims;
    for (auto k : keep) keep_dims.push_back(dims[k]);
    const auto dk = static_cast<Index>(product(keep_dims));
    CMatrix out = CMatrix::Zero(dk, dk);
    const std::size_t total = product(dims);
    for (std::size_t i = 0; i < total; ++i) {
        const auto di = decode(i, dims);
        for (std::size_t j = 0; j < total; ++j) {
            const auto dj = decode(j, dims);
            bool traced_equal = true;
            for (std::size_t k = 0; k < dims.size() && traced_equal; ++k) {
                const bool kept = std::find(keep.begin(), keep.end(), k) != keep.end();
                if (!kept && di[k] != dj[k]) traced_equal = false;
            }
            if (!traced_equal) continue;
            std::vector<std::size_t> ki, kj;
            for (auto k : keep) {
                ki.push_back(di[k]);
                kj.push_back(dj[k]);
            }
            out(static_cast<Index>(encode(ki, keep_dims)), static_cast<Index>(encode(kj, keep_dims))) +=
                rho(static_cast<Index>(i), static_cast<Index>(j));
        }
    }
    return out;
}

CMatrix permute_rows(const CMatrix& in, std::span<const std::size_t> dims,
                     std::span<const std::size_t> order) {
    std::vector<std::size_t> new_dims;
    for (auto o : order) new_dims.push_back(dims[o]);
    CMatrix out(in.rows(), in.cols());
    for (std::size_t flat = 0; flat < product(dims); ++flat) {
        const auto d = decode(flat, dims);
        std::vector<std::size_t> nd;
        for (auto o : order) nd.push_back(d[o]);
        out.row(static_cast<Index>(encode(nd, new_dims))) = in.row(static_cast<Index>(flat));
    }
    return out;
}

}  // namespace reference

}  // namespace hypermux::kernels
