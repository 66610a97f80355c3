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
#include "hypermux/channels.hpp"
#include "hypermux/protocol_states.hpp"

namespace hypermux {
namespace {

const std::vector<double> kGrid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

double ic_max_entangled(const KrausChannel& ch) {
    const std::size_t d = ch.input_dim();
    return coherent_information(ch, maximally_entangled_input(d), {channel_input_label(d)});
}

TEST(ErasureTest, CompletenessAndShape) {
    for (double eps : {0.0, 0.3, 0.7, 1.0}) {
        const auto ch = erasure_channel({eps, 2});
        EXPECT_LT(ch.completeness_error(), 1e-12);
        EXPECT_EQ(ch.output_dim(), 3u);
    }
    EXPECT_EQ(joint_carrier_erasure(0.1, 3).output_dim(), 9u);
    EXPECT_EQ(independent_erasure(0.1, 2).output_dim(), 9u);
    EXPECT_THROW(erasure_channel({1.5, 2}), std::invalid_argument);
    EXPECT_THROW(erasure_channel({0.1, 1}), std::invalid_argument);
}

TEST(ErasureTest, EndpointsActAsEmbeddingAndFlag) {
    Rng rng(1);
    const SubsystemLabel q = sam("Q");
    const auto psi = haar_random_state({q}, rng);
    const auto rho = DensityMatrix::from_pure(psi);

    const auto kept = apply_kraus(rho, erasure_channel({0.0, 2}), {q});
    CVector embedded = CVector::Zero(3);
    embedded.head(2) = psi.amplitudes();
    EXPECT_NEAR(fidelity(StateVector({q.with_dim(3)}, embedded), kept), 1.0, 1e-12);

    const auto lost = apply_kraus(rho, erasure_channel({1.0, 2}), {q});
    EXPECT_NEAR(lost.matrix()(2, 2).real(), 1.0, 1e-12);
    EXPECT_NEAR(lost.matrix().cwiseAbs().sum(), 1.0, 1e-12);
}

TEST(ProductChannelTest, IdentityAndDimensions) {
    const auto id = product_channel(identity_channel(2), identity_channel(3));
    ASSERT_EQ(id.kraus_ops().size(), 1u);
    EXPECT_LT(max_abs(id.kraus_ops()[0] - CMatrix::Identity(6, 6)), 1e-15);
    const auto ee = product_channel(erasure_channel({0.3, 2}), erasure_channel({0.3, 2}));
    EXPECT_EQ(ee.output_dim(), 9u);
    EXPECT_EQ(ee.input_dim(), 4u);
}

TEST(ProductChannelTest, TracePreservingProperty) {
    Rng rng(2);
    for (int i = 0; i < 10; ++i) {
        const double e1 = uniform01(rng), e2 = uniform01(rng);
        const auto ch = product_channel(erasure_channel({e1, 2}), flag_preserving_erasure({e2, 2}));
        EXPECT_LT(ch.completeness_error(), 1e-10);
    }
}

TEST(ProductChannelTest, JointLossDiffersFromIndependentLoss) {
    // On Phi+ (x) Phi+ the two models differ only in block weights: the
    // independent model puts 2 eps (1 - eps) on one-flag blocks and both
    // models disagree by eps (1 - eps) on the no-loss and two-flag blocks,
    // so the trace distance is 2 eps (1 - eps).
    const SubsystemLabel a1 = sam("A"), a2 = oam("A"), r1 = sam("R"), r2 = oam("R");
    const auto input = DensityMatrix::from_pure(
        tensor_product(bell_state(BellKind::PhiPlus, a1, r1), bell_state(BellKind::PhiPlus, a2, r2)));
    // Embeds the joint output {00, 01, 10, 11, e} into the 3 x 3 flag register.
    CMatrix v = CMatrix::Zero(9, 5);
    v(0, 0) = v(1, 1) = v(3, 2) = v(4, 3) = v(8, 4) = 1.0;
    const KrausChannel embed({v});
    const SubsystemLabel merged("A", Dof::generic(0), 9);
    for (double eps : {0.1, 0.3, 0.5, 0.9}) {
        const auto joint = apply_kraus(apply_kraus(input, joint_carrier_erasure(eps, 2), {a1, a2}, merged.with_dim(5)),
                                       embed, {merged.with_dim(5)});
        const auto indep = apply_kraus(input, independent_erasure(eps, 2), {a1, a2}, merged);
        EXPECT_NEAR(trace_distance(joint, indep), 2.0 * eps * (1.0 - eps), 1e-12) << eps;
    }
}

TEST(ComposeTest, FlaggedErasureCompounds) {
    const auto composed = compose_channels(erasure_channel({0.2, 2}), flag_preserving_erasure({0.25, 2}));
    const auto direct = erasure_channel({1.0 - 0.8 * 0.75, 2});
    Rng rng(3);
    const auto rho = DensityMatrix::from_pure(haar_random_state({sam("Q"), sam("R")}, rng));
    const auto x = apply_kraus(rho, composed, {sam("Q")});
    const auto y = apply_kraus(rho, direct, {sam("Q")});
    EXPECT_LT(trace_distance(x, y), 1e-12);
    EXPECT_THROW(compose_channels(erasure_channel({0.2, 2}), erasure_channel({0.2, 2})), std::invalid_argument);
}

TEST(CoherentInformationTest, ReferenceValues) {
    EXPECT_NEAR(ic_max_entangled(erasure_channel({0.25, 2})), 0.5, 1e-12);
    EXPECT_NEAR(ic_max_entangled(joint_carrier_erasure(0.2, 2)), 1.2, 1e-12);
    EXPECT_NEAR(ic_max_entangled(identity_channel(2)), 1.0, 1e-12);
}

TEST(CoherentInformationTest, JointCarrierMatchesNOneMinusTwoP) {
    for (std::size_t n = 1; n <= 3; ++n)
        for (double p : kGrid) {
            const double ic = ic_max_entangled(joint_carrier_erasure(p, n));
            EXPECT_NEAR(ic, static_cast<double>(n) * (1.0 - 2.0 * p), 1e-9) << n << " " << p;
            EXPECT_NEAR(erasure_capacity_formula(p, static_cast<int>(n)), std::max(0.0, ic), 1e-9);
        }
}

TEST(CoherentInformationTest, IndependentErasureAlsoGivesNOneMinusTwoP) {
    // Same value at the maximally entangled input, from a different channel.
    for (double p : {0.1, 0.3}) EXPECT_NEAR(ic_max_entangled(independent_erasure(p, 2)), 2.0 * (1.0 - 2.0 * p), 1e-9);
}

TEST(CoherentInformationTest, ComplementaryRouteAgrees) {
    Rng rng(4);
    for (int i = 0; i < 6; ++i) {
        const double p = uniform01(rng);
        const auto ch = i % 2 ? joint_carrier_erasure(p, 2) : erasure_channel({p, 2});
        const std::size_t d = ch.input_dim();
        const auto psi = haar_random_state({channel_input_label(d), reference_label(d)}, rng);
        EXPECT_NEAR(coherent_information(ch, psi, {channel_input_label(d)}),
                    coherent_information_complementary(ch, psi, {channel_input_label(d)}), 1e-9);
    }
}

TEST(CoherentInformationTest, ProductInputIsNotPositive) {
    const auto product = StateVector::basis({channel_input_label(2), reference_label(2)}, {0, 0});
    EXPECT_LE(coherent_information(erasure_channel({0.5, 2}), product, {channel_input_label(2)}), 1e-12);
    EXPECT_LE(coherent_information(erasure_channel({0.1, 2}), product, {channel_input_label(2)}), 1e-12);
}

TEST(CoherentInformationTest, BoundedByLogInputDimension) {
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i % 2);
        const auto ch = joint_carrier_erasure(uniform01(rng), n);
        const std::size_t d = ch.input_dim();
        const auto psi = haar_random_state({channel_input_label(d), reference_label(d)}, rng);
        EXPECT_LE(coherent_information(ch, psi, {channel_input_label(d)}), std::log2(static_cast<double>(d)) + 1e-12);
    }
}

TEST(CoherentInformationTest, DataProcessingGrid) {
    for (double e1 : {0.0, 0.1, 0.2, 0.3, 0.4})
        for (double extra : {0.0, 0.1, 0.3}) {
            const auto first = erasure_channel({e1, 2});
            const auto chained = compose_channels(first, flag_preserving_erasure({extra, 2}));
            EXPECT_LE(ic_max_entangled(chained), ic_max_entangled(first) + 1e-12) << e1 << " " << extra;
        }
}

TEST(CoherentInformationTest, RejectsDimensionMismatch) {
    const auto psi = maximally_entangled_input(2);
    EXPECT_THROW(coherent_information(joint_carrier_erasure(0.1, 2), psi, {channel_input_label(2)}),
                 std::invalid_argument);
    EXPECT_THROW(coherent_information(erasure_channel({0.1, 2}), psi, {sam("Z")}), std::invalid_argument);
}

TEST(CoherentInformationMaxTest, ErasureOptimumIsMaximallyEntangled) {
    EXPECT_NEAR(coherent_information_max(erasure_channel({0.1, 2})).value, 0.8, 1e-6);
    EXPECT_NEAR(coherent_information_max(erasure_channel({0.5, 2})).value, 0.0, 1e-6);
    EXPECT_NEAR(coherent_information_max(identity_channel(2)).value, 1.0, 1e-6);
    EXPECT_NEAR(coherent_information_max(joint_carrier_erasure(0.2, 2)).value, 1.2, 1e-6);
}

TEST(CoherentInformationMaxTest, RandomFamilyAloneApproachesOptimum) {
    InputFamily family;
    family.maximally_entangled = false;
    family.product = false;
    family.random_samples = 8;
    family.refine_steps = 200;
    const auto r = coherent_information_max(erasure_channel({0.1, 2}), family);
    EXPECT_LE(r.value, 0.8 + 1e-9);
    EXPECT_GT(r.value, 0.7);
}

TEST(CoherentInformationMaxTest, EmptyFamilyRejected) {
    InputFamily none;
    none.maximally_entangled = false;
    none.product = false;
    none.random_samples = 0;
    EXPECT_THROW(coherent_information_max(erasure_channel({0.1, 2}), none), std::invalid_argument);
}

TEST(CapacityFormulaTest, ValuesAndRange) {
    EXPECT_NEAR(erasure_capacity_formula(0.2, 2), 1.2, 1e-15);
    EXPECT_DOUBLE_EQ(erasure_capacity_formula(0.0, 3), 3.0);
    for (int n = 1; n <= 5; ++n) {
        EXPECT_EQ(erasure_capacity_formula(0.5, n), 0.0);
        EXPECT_EQ(erasure_capacity_formula(0.8, n), 0.0);
    }
    EXPECT_THROW(erasure_capacity_formula(-0.1, 1), std::invalid_argument);
    EXPECT_THROW(erasure_capacity_formula(0.1, 0), std::invalid_argument);
}

}  // namespace
}  // namespace hypermux
