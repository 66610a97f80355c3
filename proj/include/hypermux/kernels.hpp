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
 * Dense index kernels over row-major multi-subsystem registers.
 *
 * A register with subsystem dimensions (d_0, ..., d_{n-1}) stores the basis
 * state |i_0 ... i_{n-1}> at flat index sum_k i_k * stride_k, with the first
 * subsystem most significant. Matrices passed to the kernels hold one such
 * register per column, so a state vector is a single column and a density
 * matrix is transformed column by column.
 *
 * The kernels in `hypermux::kernels` are OpenMP-parallel. The ones in
 * `hypermux::kernels::reference` are deliberately naive serial versions kept
 * as test oracles and as the benchmark baseline.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace hypermux::kernels {

using CMatrix = Eigen::MatrixXcd;

/// Registers smaller than this run serially even in the parallel kernels.
inline constexpr std::size_t kParallelThreshold = 1u << 10;

/**
 * Apply a local operator to the listed subsystems of every column of `in`.
 *
 * `op` has shape (prod out_target_dims) x (prod dims[targets]); the local
 * index of `op` enumerates target digits in the order given by `targets`
 * (first target most significant). The output register has the target
 * dimensions replaced by `out_target_dims`; all other subsystems keep their
 * position and size.
 */
CMatrix apply_local(const CMatrix& in, std::span<const std::size_t> dims,
                    std::span<const std::size_t> targets, const CMatrix& op,
                    std::span<const std::size_t> out_target_dims);

/// Reduce a square register matrix onto the subsystems at `keep` (ascending).
CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep);

/// Reorder the subsystems of every column: new subsystem k is old `order[k]`.
CMatrix permute_rows(const CMatrix& in, std::span<const std::size_t> dims,
                     std::span<const std::size_t> order);

namespace reference {

CMatrix apply_local(const CMatrix& in, std::span<const std::size_t> dims,
                    std::span<const std::size_t> targets, const CMatrix& op,
                    std::span<const std::size_t> out_target_dims);

CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep);

CMatrix permute_rows(const CMatrix& in, std::span<const std::size_t> dims,
                     std::span<const std::size_t> order);

}  // namespace reference

}  // namespace hypermux::kernels
