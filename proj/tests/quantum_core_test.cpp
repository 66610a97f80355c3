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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "hypermux/quantum_ops.hpp"

namespace hypermux {
namespace {

const double kSqrtHalf = std::sqrt(0.5);

SubsystemLabel q(const std::string& photon) { return sam(photon); }

StateVector ket(const Labels& labels, std::vector<Complex> amps) {
    CVector v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
    return StateVector(labels, v);
}

// Bell states written out by hand on (left, right).
std::vector<StateVector> bell_basis(const SubsystemLabel& l, const SubsystemLabel& r) {
    const double s = kSqrtHalf;
    return {ket({l, r}, {s, 0, 0, s}), ket({l, r}, {s, 0, 0, -s}), ket({l, r}, {0, s, s, 0}),
            ket({l, r}, {0, s, -s, 0})};
}

Operator pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return Operator(m, {2}, "X");
}

DensityMatrix random_density(const Labels& labels, Rng& rng) {
    // Partial trace of a Haar state on labels + ancilla of equal size.
    Labels all = labels;
    for (const auto& l : labels) all.push_back(SubsystemLabel("anc_" + l.photon, l.dof, l.dim));
    return reduced_state(haar_random_state(all, rng), labels);
}

KrausChannel random_channel(std::size_t d_in, std::size_t d_out, std::size_t n_ops, Rng& rng) {
    // Stinespring isometry from the first d_in columns of a Haar unitary.
    const std::size_t big = d_out * n_ops;
    const CMatrix u = haar_random_unitary(big, rng);
    std::vector<CMatrix> ops;
    for (std::size_t k = 0; k < n_ops; ++k)
        ops.push_back(u.block(static_cast<Eigen::Index>(k * d_out), 0, static_cast<Eigen::Index>(d_out),
                              static_cast<Eigen::Index>(d_in)));
    return KrausChannel(ops, "random");
}

KrausChannel qubit_erasure(double eps) {
    CMatrix k0 = CMatrix::Zero(3, 2);
    k0(0, 0) = k0(1, 1) = std::sqrt(1.0 - eps);
    CMatrix k1 = CMatrix::Zero(3, 2), k2 = CMatrix::Zero(3, 2);
    k1(2, 0) = k2(2, 1) = std::sqrt(eps);
    return KrausChannel({k0, k1, k2}, "erasure");
}

// --- labels and construction -------------------------------------------------

TEST(StateVectorTest, RejectsBadInput) {
    EXPECT_THROW(SubsystemLabel("A", Dof::sam(), 1), std::invalid_argument);
    EXPECT_THROW(ket({q("A")}, {1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(ket({q("A"), q("A")}, {1, 0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(ket({q("A")}, {1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(StateVectorTest, CanonicalOrderIsIndependentOfConstructionOrder) {
    // |0>_B |1>_A given as (B, A) equals |1>_A |0>_B.
    const auto ba = StateVector::basis({q("B"), q("A")}, {0, 1});
    const auto ab = StateVector::basis({q("A"), q("B")}, {1, 0});
    EXPECT_EQ(ba.subsystems(), ab.subsystems());
    EXPECT_EQ(ba.amplitudes(), ab.amplitudes());
    EXPECT_EQ(ba.subsystems().front().photon, "A");
}

TEST(DensityMatrixTest, ValidatesInvariants) {
    CMatrix nonherm = CMatrix::Zero(2, 2);
    nonherm(0, 0) = 1.0;
    nonherm(0, 1) = 0.3;
    EXPECT_THROW(DensityMatrix({q("A")}, nonherm), std::invalid_argument);
    EXPECT_THROW(DensityMatrix({q("A")}, CMatrix::Identity(2, 2)), std::invalid_argument);
    CMatrix neg = CMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix({q("A")}, neg), std::invalid_argument);
}

// --- tensor_product --------------------------------------------------------

TEST(TensorProductTest, BasisStatesCompose) {
    const auto r = tensor_product(StateVector::basis({q("A")}, {0}), StateVector::basis({q("B")}, {1}));
    const CVector expected = (CVector(4) << 0, 1, 0, 0).finished();
    EXPECT_EQ(r.amplitudes(), expected);
}

TEST(TensorProductTest, MaximallyMixedFactors) {
    const auto r = tensor_product(DensityMatrix::maximally_mixed({q("A")}), DensityMatrix::maximally_mixed({q("B")}));
    EXPECT_LT(max_abs(r.matrix() - CMatrix::Identity(4, 4) / 4.0), 1e-15);
}

TEST(TensorProductTest, RejectsOverlappingLabels) {
    const auto a = StateVector::basis({q("A")}, {0});
    EXPECT_THROW(tensor_product(a, a), std::invalid_argument);
}

TEST(TensorProductTest, OrderOfCompositionDoesNotMatter) {
    Rng rng(3);
    const auto a = haar_random_state({q("A"), oam("C")}, rng);
    const auto b = haar_random_state({q("B")}, rng);
    const auto ab = tensor_product(a, b);
    const auto ba = tensor_product(b, a);
    EXPECT_EQ(ab.subsystems(), ba.subsystems());
    EXPECT_LT(max_abs(ab.amplitudes() - ba.amplitudes()), 1e-15);
}

// --- partial_trace ---------------------------------------------------------

TEST(PartialTraceTest, BellReductionIsMaximallyMixed) {
    const auto phi = DensityMatrix::from_pure(bell_basis(q("A"), q("B"))[0]);
    EXPECT_LT(max_abs(partial_trace(phi, {q("A")}).matrix() - CMatrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(PartialTraceTest, ProductStatesFactorProperty) {
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        const auto ra = random_density({q("A"), oam("A")}, rng);
        const auto rb = random_density({q("B")}, rng);
        const auto r = partial_trace(tensor_product(ra, rb), {q("A"), oam("A")});
        EXPECT_LT(max_abs(r.matrix() - ra.matrix()), 1e-12);
        const auto rbb = partial_trace(tensor_product(ra, rb), {q("B")});
        EXPECT_LT(max_abs(rbb.matrix() - rb.matrix()), 1e-12);
    }
}

TEST(PartialTraceTest, PureAndMixedRoutesAgree) {
    Rng rng(6);
    const auto psi = haar_random_state({q("A"), q("B"), oam("C")}, rng);
    const auto via_pure = reduced_state(psi, {oam("C"), q("A")});
    const auto via_mixed = partial_trace(DensityMatrix::from_pure(psi), {q("A"), oam("C")});
    EXPECT_EQ(via_pure.subsystems(), via_mixed.subsystems());
    EXPECT_LT(max_abs(via_pure.matrix() - via_mixed.matrix()), 1e-14);
}

TEST(PartialTraceTest, UnknownLabelRejected) {
    const auto rho = DensityMatrix::maximally_mixed({q("A")});
    EXPECT_THROW(partial_trace(rho, {q("Z")}), std::invalid_argument);
}

// --- entropy ---------------------------------------------------------------

TEST(EntropyTest, ReferenceValues) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::from_pure(StateVector::basis({q("A")}, {1}))), 0.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed({q("A")})), 1.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed({q("A"), q("B")})), 2.0, 1e-12);
}

TEST(EntropyTest, AdditiveOnProducts) {
    Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const auto ra = random_density({q("A")}, rng);
        const auto rb = random_density({q("B"), oam("B")}, rng);
        EXPECT_NEAR(von_neumann_entropy(tensor_product(ra, rb)), von_neumann_entropy(ra) + von_neumann_entropy(rb),
                    1e-9);
        EXPECT_GE(von_neumann_entropy(ra), -1e-10);
    }
}

// --- fidelity --------------------------------------------------------------

TEST(FidelityTest, ReferenceValues) {
    Rng rng(8);
    const auto rho = random_density({q("A"), q("B")}, rng);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
    const auto zero = StateVector::basis({q("A")}, {0});
    const auto one = StateVector::basis({q("A")}, {1});
    EXPECT_NEAR(fidelity(DensityMatrix::from_pure(zero), DensityMatrix::from_pure(one)), 0.0, 1e-12);
    EXPECT_NEAR(fidelity(zero, one), 0.0, 1e-15);
    const auto mixed = DensityMatrix::maximally_mixed({q("A"), q("B")});
    for (int i = 0; i < 10; ++i) {
        const auto psi = haar_random_state({q("A"), q("B")}, rng);
        EXPECT_NEAR(fidelity(psi, mixed), 0.25, 1e-12);
        EXPECT_NEAR(fidelity(DensityMatrix::from_pure(psi), mixed), 0.25, 1e-9);
    }
}

TEST(FidelityTest, UhlmannReducesToOverlapForPureStates) {
    Rng rng(9);
    for (int i = 0; i < 10; ++i) {
        const auto psi = haar_random_state({q("A"), q("B")}, rng);
        const auto sigma = random_density({q("A"), q("B")}, rng);
        EXPECT_NEAR(fidelity(DensityMatrix::from_pure(psi), sigma), fidelity(psi, sigma), 1e-9);
    }
}

TEST(FidelityTest, DimensionMismatchRejected) {
    EXPECT_THROW(fidelity(DensityMatrix::maximally_mixed({q("A")}), DensityMatrix::maximally_mixed({q("A"), q("B")})),
                 std::invalid_argument);
}

// --- apply_operator --------------------------------------------------------

TEST(ApplyOperatorTest, PauliAndIdentity) {
    const auto one = apply_operator(StateVector::basis({q("A")}, {0}), pauli_x(), {q("A")});
    EXPECT_NEAR(std::abs(one.amplitude({1})), 1.0, 1e-15);
    Rng rng(10);
    const auto psi = haar_random_state({q("A"), q("B")}, rng);
    const auto same = apply_operator(psi, Operator(CMatrix::Identity(2, 2), {2}), {q("B")});
    EXPECT_EQ(same.amplitudes(), psi.amplitudes());
}

TEST(ApplyOperatorTest, XOnPhiPlusGivesPsiPlus) {
    const auto bells = bell_basis(q("A"), q("B"));
    const auto r = apply_operator(bells[0], pauli_x(), {q("A")});
    EXPECT_NEAR(fidelity(r, bells[2]), 1.0, 1e-15);
}

TEST(ApplyOperatorTest, UnitariesPreserveNormProperty) {
    Rng rng(14);
    for (int trial = 0; trial < 50; ++trial) {
        const auto psi = haar_random_state({q("A"), oam("A"), q("B"), SubsystemLabel("C", Dof::generic(2), 3)}, rng);
        const Operator u(haar_random_unitary(6, rng), {3, 2});
        const auto r = apply_operator(psi, u, {SubsystemLabel("C", Dof::generic(2), 3), q("A")});
        EXPECT_NEAR(r.amplitudes().squaredNorm(), 1.0, 1e-12);
    }
}

TEST(ApplyOperatorTest, DensityRouteMatchesPureRoute) {
    Rng rng(15);
    const auto psi = haar_random_state({q("A"), q("B"), q("C")}, rng);
    const Operator u(haar_random_unitary(4, rng), {2, 2});
    const auto pure = apply_operator(psi, u, {q("C"), q("A")});
    const auto mixed = apply_operator(DensityMatrix::from_pure(psi), u, {q("C"), q("A")});
    EXPECT_LT(max_abs(mixed.matrix() - DensityMatrix::from_pure(pure).matrix()), 1e-13);
}

TEST(ApplyOperatorTest, DimensionMismatchRejected) {
    const auto psi = StateVector::basis({q("A"), q("B")}, {0, 0});
    EXPECT_THROW(apply_operator(psi, Operator(CMatrix::Identity(4, 4), {2, 2}), {q("A")}), std::invalid_argument);
    EXPECT_THROW(apply_operator(psi, pauli_x(), {q("Z")}), std::invalid_argument);
    CMatrix nonunitary = CMatrix::Zero(2, 2);
    nonunitary(0, 0) = 1.0;
    EXPECT_THROW(apply_operator(psi, Operator(nonunitary, {2}), {q("A")}), std::invalid_argument);
}

// --- apply_kraus -----------------------------------------------------------

TEST(ApplyKrausTest, IdentityChannelLeavesStateUnchanged) {
    Rng rng(16);
    const auto rho = random_density({q("A"), q("B")}, rng);
    const KrausChannel id({CMatrix::Identity(2, 2)});
    EXPECT_LT(max_abs(apply_kraus(rho, id, {q("B")}).matrix() - rho.matrix()), 1e-15);
}

TEST(ApplyKrausTest, FullErasureGivesFlag) {
    Rng rng(17);
    const auto rho = random_density({q("A")}, rng);
    const auto out = apply_kraus(rho, qubit_erasure(1.0), {q("A")});
    ASSERT_EQ(out.subsystems().front().dim, 3u);
    CMatrix flag = CMatrix::Zero(3, 3);
    flag(2, 2) = 1.0;
    EXPECT_LT(max_abs(out.matrix() - flag), 1e-15);
}

TEST(ApplyKrausTest, PartialErasureMatchesSymbolicExpansion) {
    // Oracle: (1 - eps) * embed(rho) + eps * |e><e|, written directly.
    Rng rng(18);
    for (double eps : {0.0, 0.2, 0.5, 0.9}) {
        const auto rho = random_density({q("A")}, rng);
        CMatrix expected = CMatrix::Zero(3, 3);
        expected.topLeftCorner(2, 2) = (1.0 - eps) * rho.matrix();
        expected(2, 2) = eps;
        EXPECT_LT(max_abs(apply_kraus(rho, qubit_erasure(eps), {q("A")}).matrix() - expected), 1e-14);
    }
}

TEST(ApplyKrausTest, ErasureOnOneHalfOfBellPair) {
    const double eps = 0.3;
    const auto phi = DensityMatrix::from_pure(bell_basis(q("A"), q("B"))[0]);
    const auto out = apply_kraus(phi, qubit_erasure(eps), {q("B")});
    // Ordering (A, B): erased part is I/2 (x) |e><e|.
    CMatrix expected = CMatrix::Zero(6, 6);
    expected(0, 0) = expected(0, 4) = expected(4, 0) = expected(4, 4) = 0.5 * (1.0 - eps);
    expected(2, 2) = expected(5, 5) = 0.5 * eps;
    EXPECT_LT(max_abs(out.matrix() - expected), 1e-14);
}

TEST(ApplyKrausTest, PreservesTraceAndPositivityProperty) {
    Rng rng(19);
    for (int trial = 0; trial < 30; ++trial) {
        const auto rho = random_density({q("A"), q("B"), oam("B")}, rng);
        const auto ch = random_channel(4, 3, 3, rng);
        const auto out = apply_kraus(rho, ch, {oam("B"), q("A")}, SubsystemLabel("M", Dof::generic(0), 3));
        EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-10);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(out.matrix());
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
        EXPECT_EQ(out.subsystems().size(), 2u);
        EXPECT_NO_THROW(DensityMatrix(out.subsystems(), out.matrix()));
    }
}

TEST(ApplyKrausTest, InputDimensionMismatchRejected) {
    const auto rho = DensityMatrix::maximally_mixed({q("A"), q("B")});
    EXPECT_THROW(apply_kraus(rho, qubit_erasure(0.1), {q("A"), q("B")}), std::invalid_argument);
}

TEST(KrausChannelTest, RejectsNonTracePreserving) {
    EXPECT_THROW(KrausChannel({0.5 * CMatrix::Identity(2, 2)}), std::invalid_argument);
}

// --- Haar sampling ---------------------------------------------------------

TEST(HaarTest, NormalizedAndDeterministic) {
    Rng rng(20);
    for (int i = 0; i < 10000; ++i)
        ASSERT_NEAR(haar_random_state({q("A"), q("B")}, rng).amplitudes().squaredNorm(), 1.0, 1e-12);
    Rng r1(99), r2(99);
    EXPECT_EQ(haar_random_state({q("A"), q("B")}, r1).amplitudes(), haar_random_state({q("A"), q("B")}, r2).amplitudes());
}

TEST(HaarTest, MeanReducedPurityMatchesMonteCarloOracle) {
    // E[Tr rho_A^2] = (dA + dB) / (dA dB + 1) = 0.8 for two qubits.
    Rng rng(21);
    constexpr int kSamples = 100000;
    double sum = 0.0;
    for (int i = 0; i < kSamples; ++i) sum += reduced_state(haar_random_state({q("A"), q("B")}, rng), {q("A")}).purity();
    EXPECT_NEAR(sum / kSamples, 0.8, 0.01);
}

TEST(HaarTest, UnitaryIsUnitary) {
    Rng rng(22);
    for (std::size_t d : {2u, 3u, 8u}) {
        const CMatrix u = haar_random_unitary(d, rng);
        EXPECT_LT(max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())), 1e-12);
    }
}

// --- measurement -----------------------------------------------------------

TEST(MeasureTest, BellStateInBellBasisIsCertain) {
    Rng rng(23);
    const auto basis = bell_basis(q("A"), q("B"));
    const auto r = measure_in_basis(basis[0], basis, rng);
    EXPECT_EQ(r.outcome, 0u);
    EXPECT_NEAR(r.probability, 1.0, 1e-12);
    EXPECT_TRUE(r.post_state.subsystems().empty());
}

TEST(MeasureTest, ProductStateSplitsBetweenPhiPlusAndPhiMinus) {
    const auto basis = bell_basis(q("A"), q("B"));
    const auto probs = outcome_probabilities(StateVector::basis({q("A"), q("B")}, {0, 0}), basis);
    EXPECT_NEAR(probs[0], 0.5, 1e-12);
    EXPECT_NEAR(probs[1], 0.5, 1e-12);
    EXPECT_NEAR(probs[2], 0.0, 1e-12);
    EXPECT_NEAR(probs[3], 0.0, 1e-12);
}

TEST(MeasureTest, FrequenciesMatchBornProbabilities) {
    Rng rng(24);
    const auto psi = haar_random_state({q("A"), q("B"), q("C")}, rng);
    const auto basis = bell_basis(q("A"), q("C"));
    const auto probs = outcome_probabilities(psi, basis);
    double total = 0.0;
    for (double p : probs) total += p;
    EXPECT_NEAR(total, 1.0, 1e-10);

    constexpr int kShots = 10000;
    std::vector<int> counts(4, 0);
    for (int s = 0; s < kShots; ++s) ++counts[measure_in_basis(psi, basis, rng).outcome];
    for (std::size_t k = 0; k < 4; ++k) {
        const double sigma = std::sqrt(kShots * probs[k] * (1.0 - probs[k]));
        EXPECT_LE(std::abs(counts[k] - kShots * probs[k]), 3.0 * sigma + 1.0) << "outcome " << k;
    }
}

TEST(MeasureTest, PostStateIsConditionalState) {
    // Measuring A of |Phi+>_{AB} (x) |0>_C in the Z basis leaves B matching A.
    const auto psi = tensor_product(bell_basis(q("A"), q("B"))[0], StateVector::basis({q("C")}, {0}));
    const std::vector<StateVector> z = {StateVector::basis({q("A")}, {0}), StateVector::basis({q("A")}, {1})};
    const auto r = measure_in_basis(psi, z, forced_outcomes({1}));
    EXPECT_NEAR(r.probability, 0.5, 1e-12);
    EXPECT_NEAR(fidelity(r.post_state, StateVector::basis({q("B"), q("C")}, {1, 0})), 1.0, 1e-12);
}

TEST(MeasureTest, RejectsBadBasis) {
    Rng rng(25);
    const auto psi = StateVector::basis({q("A"), q("B")}, {0, 0});
    auto basis = bell_basis(q("A"), q("B"));
    basis.pop_back();
    EXPECT_THROW(measure_in_basis(psi, basis, rng), std::invalid_argument);
    auto dup = bell_basis(q("A"), q("B"));
    dup[3] = dup[0];
    EXPECT_THROW(measure_in_basis(psi, dup, rng), std::invalid_argument);
}

// --- helpers -----------------------------------------------------------------

TEST(RelabelTest, MovesDataToNewSlots) {
    const auto psi = StateVector::basis({q("A"), q("B")}, {1, 0});
    const auto r = relabel(psi, {{q("A"), q("Z")}});
    EXPECT_NEAR(std::abs(r.amplitude({0, 1})), 1.0, 1e-15);  // order now (B, Z)
}

TEST(DiscardProductFactorTest, DropsSpectatorAndRejectsEntangled) {
    Rng rng(26);
    const auto core = haar_random_state({q("A"), q("B")}, rng);
    const auto spectator = haar_random_state({q("S")}, rng);
    const auto kept = discard_product_factor(tensor_product(core, spectator), {q("S")});
    EXPECT_NEAR(fidelity(kept, core), 1.0, 1e-12);
    EXPECT_THROW(discard_product_factor(bell_basis(q("A"), q("B"))[0], {q("A")}), std::invalid_argument);
}

}  // namespace
}  // namespace hypermux
