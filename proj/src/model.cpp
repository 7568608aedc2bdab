#include "ragrisk/model.hpp"

#include <algorithm>
#include <regex>
#include <stdexcept>
#include <utility>

namespace ragrisk {

namespace {

template <typename E, std::size_t N>
using NameTable = std::array<std::pair<E, std::string_view>, N>;

template <typename E, std::size_t N>
std::string_view lookup_name(const NameTable<E, N>& table, E v) {
    for (const auto& [value, name] : table) {
        if (value == v) {
            return name;
        }
    }
    throw std::logic_error("enum value without a name");
}

template <typename E, std::size_t N>
std::optional<E> lookup_value(const NameTable<E, N>& table, std::string_view s) {
    for (const auto& [value, name] : table) {
        if (name == s) {
            return value;
        }
    }
    return std::nullopt;
}

constexpr NameTable<ComponentKind, 10> kComponentKinds{{
    {ComponentKind::user_interface, "user_interface"},
    {ComponentKind::ingestion_pipeline, "ingestion_pipeline"},
    {ComponentKind::embedding_model, "embedding_model"},
    {ComponentKind::vector_store, "vector_store"},
    {ComponentKind::retrieval_api, "retrieval_api"},
    {ComponentKind::generative_model, "generative_model"},
    {ComponentKind::document_source, "document_source"},
    {ComponentKind::external_source, "external_source"},
    {ComponentKind::monitoring, "monitoring"},
    {ComponentKind::other, "other"},
}};

constexpr NameTable<Exposure, 3> kExposures{{
    {Exposure::external, "external"},
    {Exposure::internal, "internal"},
    {Exposure::trusted, "trusted"},
}};

constexpr NameTable<Framework, 2> kFrameworks{{
    {Framework::ATLAS, "ATLAS"},
    {Framework::OWASP_LLM, "OWASP_LLM"},
}};

constexpr NameTable<Factor, 16> kFactors{{
    {Factor::skill_level, "skill_level"},
    {Factor::motive, "motive"},
    {Factor::opportunity, "opportunity"},
    {Factor::size, "size"},
    {Factor::ease_of_discovery, "ease_of_discovery"},
    {Factor::ease_of_exploit, "ease_of_exploit"},
    {Factor::awareness, "awareness"},
    {Factor::intrusion_detection, "intrusion_detection"},
    {Factor::loss_of_confidentiality, "loss_of_confidentiality"},
    {Factor::loss_of_integrity, "loss_of_integrity"},
    {Factor::loss_of_availability, "loss_of_availability"},
    {Factor::loss_of_accountability, "loss_of_accountability"},
    {Factor::financial_damage, "financial_damage"},
    {Factor::reputation_damage, "reputation_damage"},
    {Factor::non_compliance, "non_compliance"},
    {Factor::privacy_violation, "privacy_violation"},
}};

constexpr NameTable<ActorClass, 3> kActors{{
    {ActorClass::external, "external"},
    {ActorClass::insider, "insider"},
    {ActorClass::unwitting_insider, "unwitting_insider"},
}};

constexpr NameTable<PyramidLayer, 6> kLayers{{
    {PyramidLayer::data_integrity, "data_integrity"},
    {PyramidLayer::ai_system_performance, "ai_system_performance"},
    {PyramidLayer::adversarial_tools, "adversarial_tools"},
    {PyramidLayer::adversarial_inputs, "adversarial_inputs"},
    {PyramidLayer::data_provenance, "data_provenance"},
    {PyramidLayer::ttps, "ttps"},
}};

constexpr NameTable<PyramidLayer, 6> kLayerTitles{{
    {PyramidLayer::data_integrity, "Data Integrity"},
    {PyramidLayer::ai_system_performance, "AI System Performance"},
    {PyramidLayer::adversarial_tools, "Adversarial Tools"},
    {PyramidLayer::adversarial_inputs, "Adversarial Inputs"},
    {PyramidLayer::data_provenance, "Data Provenance"},
    {PyramidLayer::ttps, "TTPs"},
}};

void check_group(Factor f, FactorGroup expected) {
    if (group_of(f) != expected) {
        throw std::invalid_argument("factor " + std::string(to_string(f)) + " does not belong to this factor group");
    }
}

}  // namespace

const Component* SystemModel::find_component(std::string_view component_id) const {
    auto it = std::find_if(components.begin(), components.end(),
                           [&](const Component& c) { return c.id == component_id; });
    return it == components.end() ? nullptr : &*it;
}

const TechniqueRef* ThreatScenario::find_technique(std::string_view technique_id) const {
    auto it = std::find_if(techniques.begin(), techniques.end(),
                           [&](const TechniqueRef& t) { return t.technique_id == technique_id; });
    return it == techniques.end() ? nullptr : &*it;
}

const ThreatScenario* Workspace::find_threat(std::string_view threat_id) const {
    auto it = std::find_if(threats.begin(), threats.end(), [&](const ThreatScenario& t) { return t.id == threat_id; });
    return it == threats.end() ? nullptr : &*it;
}

const Control* Workspace::find_control(std::string_view control_id) const {
    auto it = std::find_if(controls.begin(), controls.end(), [&](const Control& c) { return c.id == control_id; });
    return it == controls.end() ? nullptr : &*it;
}

const AttackFlow* Workspace::find_flow(std::string_view flow_id) const {
    for (const auto& threat : threats) {
        for (const auto& flow : threat.flows) {
            if (flow.id == flow_id) {
                return &flow;
            }
        }
    }
    return nullptr;
}

bool is_valid_cwe_id(std::string_view text) {
    static const std::regex pattern(R"(CWE-[0-9]+)");
    return std::regex_match(text.begin(), text.end(), pattern);
}

bool is_valid_technique_id(Framework framework, std::string_view text) {
    static const std::regex atlas(R"(AML\.T[0-9]+(\.[0-9]+)*)");
    static const std::regex owasp(R"(LLM[0-9]{2})");
    return std::regex_match(text.begin(), text.end(), framework == Framework::ATLAS ? atlas : owasp);
}

bool is_valid_identifier(std::string_view text) {
    return !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    });
}

template <FactorGroup Group>
int& FactorVector<Group>::operator[](Factor f) {
    check_group(f, Group);
    return values[slot_of(f)];
}

template <FactorGroup Group>
int FactorVector<Group>::operator[](Factor f) const {
    check_group(f, Group);
    return values[slot_of(f)];
}

template <FactorGroup Group>
int FactorVector<Group>::sum() const {
    int total = 0;
    for (int v : values) {
        total += v;
    }
    return total;
}

template struct FactorVector<FactorGroup::likelihood>;
template struct FactorVector<FactorGroup::impact>;

std::string_view to_string(ComponentKind v) { return lookup_name(kComponentKinds, v); }
std::string_view to_string(Exposure v) { return lookup_name(kExposures, v); }
std::string_view to_string(Framework v) { return lookup_name(kFrameworks, v); }
std::string_view to_string(Factor v) { return lookup_name(kFactors, v); }
std::string_view to_string(ActorClass v) { return lookup_name(kActors, v); }
std::string_view to_string(PyramidLayer v) { return lookup_name(kLayers, v); }
std::string_view layer_title(PyramidLayer v) { return lookup_name(kLayerTitles, v); }

std::optional<ComponentKind> parse_component_kind(std::string_view s) { return lookup_value(kComponentKinds, s); }
std::optional<Exposure> parse_exposure(std::string_view s) { return lookup_value(kExposures, s); }
std::optional<Framework> parse_framework(std::string_view s) { return lookup_value(kFrameworks, s); }
std::optional<Factor> parse_factor(std::string_view s) { return lookup_value(kFactors, s); }
std::optional<ActorClass> parse_actor_class(std::string_view s) { return lookup_value(kActors, s); }
std::optional<PyramidLayer> parse_pyramid_layer(std::string_view s) { return lookup_value(kLayers, s); }

}  // namespace ragrisk
