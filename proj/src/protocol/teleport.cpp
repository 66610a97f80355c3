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

#include "hypermux/teleport.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace hypermux {
namespace {

constexpr double kTeleportFidelityTolerance = 1e-9;

std::size_t idx(BellKind k) { return static_cast<std::size_t>(k); }

std::string photon_name(const char* base, std::size_t i, const char* first, const char* second) {
    if (i == 0) return first;
    if (i == 1) return second;
    return std::string(base) + std::to_string(i + 1);
}

Labels spectator_labels(const ResourceSpec& spec) {
    Labels out;
    for (const auto& s : spec.spectators) out.push_back(s.label);
    return out;
}

StageResult run_links(const StateVector& joint, const std::vector<TeleportLink>& links, Stage stage,
                      const ResourceSpec& consumed, const CorrectionTable& table, const OutcomePicker& pick) {
    StateVector state = joint;
    ProtocolTrace trace;
    for (const auto& link : links) {
        auto step = teleport_dof(state, link, table, pick);
        trace.bsm_outcomes.push_back({stage, link.far.dof, step.outcome});
        trace.corrections.push_back({stage, link.far, step.correction});
        state = std::move(step.state);
    }
    const Labels spectators = spectator_labels(consumed);
    if (!spectators.empty()) state = discard_product_factor(state, spectators);
    return {std::move(state), std::move(trace)};
}

void append(ProtocolTrace& into, const ProtocolTrace& from) {
    into.bsm_outcomes.insert(into.bsm_outcomes.end(), from.bsm_outcomes.begin(), from.bsm_outcomes.end());
    into.corrections.insert(into.corrections.end(), from.corrections.begin(), from.corrections.end());
}

}  // namespace

// ---------------------------------------------------------------------------
// Corrections

std::string to_string(Correction c) {
    switch (c) {
        case Correction::I:
            return "I";
        case Correction::X:
            return "X";
        case Correction::Z:
            return "Z";
        case Correction::XZ:
            return "XZ";
    }
    return "?";
}

Operator correction_operator(Correction c) {
    switch (c) {
        case Correction::I:
            return pauli_operator(Pauli::I);
        case Correction::X:
            return pauli_operator(Pauli::X);
        case Correction::Z:
            return pauli_operator(Pauli::Z);
        case Correction::XZ:
            return Operator(pauli_matrix(Pauli::X) * pauli_matrix(Pauli::Z), {2}, "XZ");
    }
    throw std::logic_error("unknown correction");
}

std::optional<Correction> find_correction(const StateVector& resource_pair, BellKind outcome,
                                          std::span<const Correction> candidates) {
    if (resource_pair.subsystems().size() != 2 || resource_pair.dim() != 4)
        throw std::invalid_argument("find_correction: resource must be a two-qubit state");
    // resource_pair's first label (canonical) plays the near end.
    const SubsystemLabel near = resource_pair.subsystems()[0];
    const SubsystemLabel far = resource_pair.subsystems()[1];
    const SubsystemLabel source("~source", Dof::sam());
    const SubsystemLabel ref("~reference", Dof::sam());
    const StateVector joint = tensor_product(bell_state(BellKind::PhiPlus, ref, source), resource_pair);
    const auto probs = outcome_probabilities(joint, bell_basis(source, near));
    if (probs[idx(outcome)] < 1e-12) return std::nullopt;
    const auto measured = measure_in_basis(joint, bell_basis(source, near), forced_outcomes({idx(outcome)}));
    const StateVector expected = bell_state(BellKind::PhiPlus, ref, far);
    for (auto c : candidates) {
        const auto corrected = apply_operator(measured.post_state, correction_operator(c), {far});
        if (fidelity(expected, corrected) >= 1.0 - kTeleportFidelityTolerance) return c;
    }
    return std::nullopt;
}

CorrectionTable CorrectionTable::derive(std::span<const Correction> candidates) {
    CorrectionTable t;
    const SubsystemLabel near("~near", Dof::sam());
    const SubsystemLabel far("~far", Dof::sam());
    for (auto resource : kAllBellKinds) {
        const auto pair = bell_state(resource, far, near);
        for (auto outcome : kAllBellKinds) {
            const auto found = find_correction(pair, outcome, candidates);
            if (!found)
                throw std::runtime_error("correction table: no Pauli correction restores the state for resource " +
                                         to_string(resource) + ", outcome " + to_string(outcome));
            t.table_[idx(resource)][idx(outcome)] = *found;
        }
    }
    return t;
}

Correction CorrectionTable::lookup(BellKind resource, BellKind outcome) const {
    return table_[idx(resource)][idx(outcome)];
}

// ---------------------------------------------------------------------------
// Names

std::string to_string(Stage s) { return s == Stage::Multiplex ? "multiplex" : "demultiplex"; }

std::string to_string(NoiseSite s) {
    switch (s) {
        case NoiseSite::AfterMultiplex:
            return "after_multiplex";
        case NoiseSite::AfterTransmission:
            return "after_transmission";
        case NoiseSite::AfterDemultiplex:
            return "after_demultiplex";
    }
    return "?";
}

std::string to_string(LostPolicy p) {
    return p == LostPolicy::MaximallyMixed ? "maximally_mixed" : "conditional";
}

std::optional<NoiseSite> parse_noise_site(const std::string& text) {
    for (auto s : kDefaultNoiseSites)
        if (to_string(s) == text) return s;
    return std::nullopt;
}

std::optional<LostPolicy> parse_lost_policy(const std::string& text) {
    for (auto p : {LostPolicy::MaximallyMixed, LostPolicy::ConditionalOnSurvival})
        if (to_string(p) == text) return p;
    return std::nullopt;
}

void NoiseConfig::validate() const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("noise: epsilon must lie in [0, 1]");
    if (epsilon > 0.0 && sites.empty()) throw std::invalid_argument("noise: epsilon > 0 needs at least one site");
}

std::string to_json(const ProtocolTrace& trace) {
    nlohmann::ordered_json j;
    j["bsm_outcomes"] = nlohmann::ordered_json::array();
    for (const auto& b : trace.bsm_outcomes)
        j["bsm_outcomes"].push_back({{"stage", to_string(b.stage)}, {"dof", to_string(b.dof)}, {"outcome", to_string(b.outcome)}});
    j["corrections"] = nlohmann::ordered_json::array();
    for (const auto& c : trace.corrections)
        j["corrections"].push_back(
            {{"stage", to_string(c.stage)}, {"target", to_string(c.target)}, {"correction", to_string(c.correction)}});
    j["erasure_events"] = nlohmann::ordered_json::array();
    for (const auto& e : trace.erasure_events)
        j["erasure_events"].push_back({{"site", to_string(e.site)}, {"occurred", e.occurred}});
    j["carrier_lost"] = trace.carrier_lost;
    j["final_fidelity"] = trace.final_fidelity;
    return j.dump();
}

// ---------------------------------------------------------------------------
// Layout

ProtocolLayout ProtocolLayout::standard(std::size_t n_dofs) {
    if (n_dofs < 1) throw std::invalid_argument("layout: need at least one DoF");
    ProtocolLayout l;
    l.n_dofs = n_dofs;
    if (n_dofs == 2) {
        l.sources = {sam("P1"), oam("P2")};
        l.carrier = {sam("C"), oam("C")};
        l.outputs = {sam("E"), oam("F")};
        l.transmitter = transmitter_resource_spec();
        l.receiver = receiver_resource_spec();
        return l;
    }
    for (std::size_t i = 0; i < n_dofs; ++i) {
        const Dof dof = Dof::for_slot(i);
        l.sources.emplace_back("P" + std::to_string(i + 1), dof);
        l.carrier.emplace_back("C", dof);
        l.outputs.emplace_back(photon_name("E", i, "E", "F"), dof);
        l.transmitter.pairings.push_back(
            {SubsystemLabel(photon_name("A", i, "A", "B"), dof), l.carrier.back(), BellKind::PsiMinus});
        l.receiver.pairings.push_back({SubsystemLabel("D", dof), l.outputs.back(), BellKind::PsiMinus});
    }
    return l;
}

std::vector<TeleportLink> ProtocolLayout::multiplex_links() const {
    if (transmitter.pairings.size() != n_dofs) throw std::invalid_argument("layout: transmitter/DoF count mismatch");
    std::vector<TeleportLink> links;
    for (std::size_t i = 0; i < n_dofs; ++i) {
        const auto& p = transmitter.pairings[i];
        if (!p.right.same_slot(carrier[i]) || p.left.dof != sources[i].dof)
            throw std::invalid_argument("layout: transmitter pairing " + std::to_string(i) + " does not match DoF");
        links.push_back({sources[i], p.left, p.right, p.kind});
    }
    return links;
}

std::vector<TeleportLink> ProtocolLayout::demultiplex_links() const {
    if (receiver.pairings.size() != n_dofs) throw std::invalid_argument("layout: receiver/DoF count mismatch");
    std::vector<TeleportLink> links;
    for (std::size_t i = 0; i < n_dofs; ++i) {
        const auto& p = receiver.pairings[i];
        if (!p.right.same_slot(outputs[i]) || p.left.dof != carrier[i].dof)
            throw std::invalid_argument("layout: receiver pairing " + std::to_string(i) + " does not match DoF");
        links.push_back({carrier[i], p.left, p.right, p.kind});
    }
    return links;
}

// ---------------------------------------------------------------------------
// Measurement and single-DoF teleportation

BellMeasurement bell_measurement(const StateVector& psi, const LabelPair& pair, const OutcomePicker& pick) {
    auto r = measure_in_basis(psi, bell_basis(pair.first, pair.second), pick);
    return {kAllBellKinds[r.outcome], std::move(r.post_state)};
}

BellMeasurement bell_measurement(const StateVector& psi, const LabelPair& pair, Rng& rng) {
    return bell_measurement(psi, pair, sample_with(rng));
}

TeleportStep teleport_dof(const StateVector& psi, const TeleportLink& link, const CorrectionTable& table,
                          const OutcomePicker& pick) {
    if (link.source.dim != 2) throw std::invalid_argument("teleport_dof: source must be a qubit");
    const auto& labels = psi.subsystems();
    for (const auto& l : {link.source, link.near, link.far})
        if (!contains(labels, l)) throw std::invalid_argument("teleport_dof: state lacks " + to_string(l));
    auto m = bell_measurement(psi, {link.source, link.near}, pick);
    const Correction c = table.lookup(link.resource_kind, m.outcome);
    StateVector out = c == Correction::I ? std::move(m.post_state)
                                         : apply_operator(m.post_state, correction_operator(c), {link.far});
    return {std::move(out), m.outcome, c};
}

TeleportStep teleport_dof(const StateVector& psi, const TeleportLink& link, const CorrectionTable& table, Rng& rng) {
    return teleport_dof(psi, link, table, sample_with(rng));
}

// ---------------------------------------------------------------------------
// Stages

StageResult multiplex(const StateVector& inputs, const StateVector& resource, const ProtocolLayout& layout,
                      const CorrectionTable& table, const OutcomePicker& pick) {
    for (const auto& s : layout.sources)
        if (!contains(inputs.subsystems(), s))
            throw std::invalid_argument("multiplex: inputs lack source " + to_string(s));
    return run_links(tensor_product(inputs, resource), layout.multiplex_links(), Stage::Multiplex, layout.transmitter,
                     table, pick);
}

StageResult demultiplex(const StateVector& carrier_state, const StateVector& resource, const ProtocolLayout& layout,
                        const CorrectionTable& table, const OutcomePicker& pick) {
    for (const auto& c : layout.carrier)
        if (!contains(carrier_state.subsystems(), c))
            throw std::invalid_argument("demultiplex: carrier state lacks " + to_string(c));
    return run_links(tensor_product(carrier_state, resource), layout.demultiplex_links(), Stage::Demultiplex,
                     layout.receiver, table, pick);
}

ProtocolRun execute_protocol(const StateVector& input, const NoiseConfig& noise, const ProtocolLayout& layout,
                             const CorrectionTable& table, Rng& rng, const OutcomePicker& pick) {
    noise.validate();
    Labels references;
    for (const auto& l : input.subsystems())
        if (!contains(layout.sources, l)) references.push_back(l);

    ProtocolTrace trace;
    auto erased_at = [&](NoiseSite site) {
        if (trace.carrier_lost || std::find(noise.sites.begin(), noise.sites.end(), site) == noise.sites.end())
            return trace.carrier_lost;
        const bool occurred = uniform01(rng) < noise.epsilon;
        trace.erasure_events.push_back({site, occurred});
        trace.carrier_lost = occurred;
        return occurred;
    };

    std::optional<StateVector> state;
    auto mux = multiplex(input, build_resource(layout.transmitter), layout, table, pick);
    append(trace, mux.trace);
    state = std::move(mux.state);

    erased_at(NoiseSite::AfterMultiplex);
    erased_at(NoiseSite::AfterTransmission);
    if (!trace.carrier_lost) {
        auto demux = demultiplex(*state, build_resource(layout.receiver), layout, table, pick);
        append(trace, demux.trace);
        state = std::move(demux.state);
    }
    erased_at(NoiseSite::AfterDemultiplex);

    std::vector<std::pair<SubsystemLabel, SubsystemLabel>> back;
    for (std::size_t i = 0; i < layout.n_dofs; ++i) back.emplace_back(layout.outputs[i], layout.sources[i]);

    if (!trace.carrier_lost) {
        Labels keep = layout.outputs;
        keep.insert(keep.end(), references.begin(), references.end());
        Labels extra;
        for (const auto& l : state->subsystems())
            if (!contains(keep, l)) extra.push_back(l);
        const StateVector out = extra.empty() ? *state : discard_product_factor(*state, extra);
        trace.final_fidelity = fidelity(input, relabel(out, back));
        return {std::move(trace), DensityMatrix::from_pure(out)};
    }

    // Lost photon: the receiver is left with no information about the
    // sources, modeled as a maximally mixed register next to the untouched
    // references.
    DensityMatrix lost = DensityMatrix::maximally_mixed(layout.outputs);
    if (!references.empty()) lost = tensor_product(lost, reduced_state(input, references));
    trace.final_fidelity = fidelity(input, relabel(lost, back));
    return {std::move(trace), std::move(lost)};
}

ProtocolTrace run_protocol(const StateVector& input, const NoiseConfig& noise, const ProtocolLayout& layout,
                           const CorrectionTable& table, Rng& rng) {
    return execute_protocol(input, noise, layout, table, rng, sample_with(rng)).trace;
}

EntanglementGenerationResult entanglement_generation(BellKind sam_kind, BellKind oam_kind, const NoiseConfig& noise,
                                                     const CorrectionTable& table, Rng& rng) {
    const auto layout = ProtocolLayout::standard(2);
    const SubsystemLabel p3 = sam("P3"), p4 = oam("P4");
    const auto input = tensor_product(bell_state(sam_kind, layout.sources[0], p3), bell_state(oam_kind, layout.sources[1], p4));
    auto run = execute_protocol(input, noise, layout, table, rng, sample_with(rng));

    const SubsystemLabel& e = layout.outputs[0];
    const SubsystemLabel& f = layout.outputs[1];
    const auto sam_pair = partial_trace(run.output, {e, p3});
    const auto oam_pair = partial_trace(run.output, {f, p4});
    return {std::move(run.trace),
            std::move(run.output),
            fidelity(bell_state(sam_kind, e, p3), sam_pair),
            fidelity(bell_state(oam_kind, f, p4), oam_pair),
            von_neumann_entropy(partial_trace(sam_pair, {e})),
            von_neumann_entropy(partial_trace(oam_pair, {f}))};
}

}  // namespace hypermux
