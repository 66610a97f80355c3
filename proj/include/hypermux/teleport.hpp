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
 * Teleportation engine for multiplexing DoFs onto one photon and back.
 *
 * Multiplexing teleports N single-DoF qubits held by separate photons onto
 * the N DoFs of one carrier photon C. Demultiplexing teleports the carrier's
 * DoFs back out onto separate output photons. Each DoF is moved by an
 * independent Bell measurement plus a Pauli correction looked up in a
 * CorrectionTable that is derived, not hard-coded.
 *
 * Photon loss is simulated per run as trajectories: each configured noise
 * site erases the photon(s) currently carrying the information with
 * probability epsilon, and a lost run is scored against a maximally mixed
 * reconstruction.
 */

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypermux/protocol_states.hpp"
#include "hypermux/quantum_ops.hpp"
#include "hypermux/random.hpp"

namespace hypermux {

/// Pauli correction applied to the far end of a teleportation link.
enum class Correction { I, X, Z, XZ };

inline constexpr std::array<Correction, 4> kAllCorrections = {Correction::I, Correction::X, Correction::Z,
                                                              Correction::XZ};

std::string to_string(Correction c);
/// Matrix of the correction; XZ is the product X * Z (Z acts first).
Operator correction_operator(Correction c);

/**
 * First candidate that turns every Bell outcome branch of teleportation
 * through `resource_kind` into a perfect channel, checked by teleporting
 * half of a reference Bell pair and requiring fidelity >= 1 - 1e-9.
 */
std::optional<Correction> find_correction(const StateVector& resource_pair, BellKind outcome,
                                          std::span<const Correction> candidates = kAllCorrections);

/// (resource kind, measured kind) -> correction, verified at construction.
class CorrectionTable {
public:
    /// Throws std::runtime_error naming the entry when no candidate works.
    static CorrectionTable derive(std::span<const Correction> candidates = kAllCorrections);

    Correction lookup(BellKind resource, BellKind outcome) const;

private:
    std::array<std::array<Correction, 4>, 4> table_{};
};

enum class Stage { Multiplex, Demultiplex };
enum class NoiseSite { AfterMultiplex, AfterTransmission, AfterDemultiplex };
enum class LostPolicy { MaximallyMixed, ConditionalOnSurvival };

std::string to_string(Stage s);
std::string to_string(NoiseSite s);
std::string to_string(LostPolicy p);
std::optional<NoiseSite> parse_noise_site(const std::string& text);
std::optional<LostPolicy> parse_lost_policy(const std::string& text);

inline const std::vector<NoiseSite> kDefaultNoiseSites = {NoiseSite::AfterMultiplex, NoiseSite::AfterTransmission,
                                                          NoiseSite::AfterDemultiplex};

struct NoiseConfig {
    double epsilon = 0.0;
    std::vector<NoiseSite> sites = kDefaultNoiseSites;
    /// How lost runs enter aggregate statistics. Every run still records the
    /// fidelity of its maximally mixed reconstruction.
    LostPolicy lost_policy = LostPolicy::MaximallyMixed;

    void validate() const;
};

struct BsmRecord {
    Stage stage;
    Dof dof;
    BellKind outcome;
};

struct CorrectionRecord {
    Stage stage;
    SubsystemLabel target;
    Correction correction;
};

struct ErasureEvent {
    NoiseSite site;
    bool occurred;
};

struct ProtocolTrace {
    std::vector<BsmRecord> bsm_outcomes;
    std::vector<CorrectionRecord> corrections;
    std::vector<ErasureEvent> erasure_events;
    bool carrier_lost = false;
    double final_fidelity = 0.0;
};

/// Stable JSON rendering, used for byte-level determinism checks.
std::string to_json(const ProtocolTrace& trace);

/// One teleportation hop: Bell-measure (source, near), correct `far`.
struct TeleportLink {
    SubsystemLabel source;
    SubsystemLabel near;
    SubsystemLabel far;
    BellKind resource_kind = BellKind::PsiMinus;
};

/**
 * Photon cast and resource states for N multiplexed DoFs.
 *
 * DoF i uses SAM, OAM, then GENERIC(i). For N = 2 this is the cast
 * P1.SAM, P2.OAM -> A/B + C -> D + E.SAM, F.OAM, including the spectator
 * DoFs of A, B, E and F.
 */
struct ProtocolLayout {
    std::size_t n_dofs = 2;
    Labels sources;
    Labels carrier;
    Labels outputs;
    ResourceSpec transmitter;
    ResourceSpec receiver;

    static ProtocolLayout standard(std::size_t n_dofs = 2);

    std::vector<TeleportLink> multiplex_links() const;
    std::vector<TeleportLink> demultiplex_links() const;
};

struct BellMeasurement {
    BellKind outcome;
    StateVector post_state;
};

/// Ideal complete Bell measurement of (first, second); the pair is removed.
BellMeasurement bell_measurement(const StateVector& psi, const LabelPair& pair, const OutcomePicker& pick);
BellMeasurement bell_measurement(const StateVector& psi, const LabelPair& pair, Rng& rng);

struct TeleportStep {
    StateVector state;
    BellKind outcome;
    Correction correction;
};

/// Moves the qubit on link.source onto link.far, keeping its correlations.
TeleportStep teleport_dof(const StateVector& psi, const TeleportLink& link, const CorrectionTable& table,
                          const OutcomePicker& pick);
TeleportStep teleport_dof(const StateVector& psi, const TeleportLink& link, const CorrectionTable& table, Rng& rng);

struct StageResult {
    StateVector state;
    ProtocolTrace trace;
};

/**
 * Teleports the layout sources onto the carrier. `inputs` must hold every
 * source label (and may hold extra reference subsystems); `resource` is the
 * transmitter state. The consumed photons' spectator DoFs are discarded.
 */
StageResult multiplex(const StateVector& inputs, const StateVector& resource, const ProtocolLayout& layout,
                      const CorrectionTable& table, const OutcomePicker& pick);

/// Teleports the carrier DoFs onto the layout outputs using the receiver
/// resource; the receiver spectators are discarded afterwards.
StageResult demultiplex(const StateVector& carrier_state, const StateVector& resource, const ProtocolLayout& layout,
                        const CorrectionTable& table, const OutcomePicker& pick);

struct ProtocolRun {
    ProtocolTrace trace;
    /// Final state on the output labels plus any reference subsystems.
    DensityMatrix output;
};

/**
 * Full run: multiplex, noise sites, demultiplex. Bell outcomes come from
 * `pick`, erasure draws from `rng`. The fidelity compares `input` with the
 * output relabeled back onto the source labels.
 */
ProtocolRun execute_protocol(const StateVector& input, const NoiseConfig& noise, const ProtocolLayout& layout,
                             const CorrectionTable& table, Rng& rng, const OutcomePicker& pick);

ProtocolTrace run_protocol(const StateVector& input, const NoiseConfig& noise, const ProtocolLayout& layout,
                           const CorrectionTable& table, Rng& rng);

struct EntanglementGenerationResult {
    ProtocolTrace trace;
    DensityMatrix pairs;  // over E.SAM, F.OAM, P3.SAM, P4.OAM
    double sam_pair_fidelity;
    double oam_pair_fidelity;
    double sam_pair_entropy;
    double oam_pair_entropy;
};

/**
 * Starts from kinds on (P1.SAM, P3.SAM) and (P2.OAM, P4.OAM), multiplexes
 * P1/P2 onto C and demultiplexes C onto E/F. Noiselessly the result
 * is the same Bell pairs on (E.SAM, P3.SAM) and (F.OAM, P4.OAM).
 */
EntanglementGenerationResult entanglement_generation(BellKind sam_kind, BellKind oam_kind, const NoiseConfig& noise,
                                                     const CorrectionTable& table, Rng& rng);

}  // namespace hypermux
