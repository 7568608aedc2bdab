#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ragrisk {

// ---------------------------------------------------------------------------
// Architecture
// ---------------------------------------------------------------------------

enum class ComponentKind {
    user_interface,
    ingestion_pipeline,
    embedding_model,
    vector_store,
    retrieval_api,
    generative_model,
    document_source,
    external_source,
    monitoring,
    other,
};

enum class Exposure { external, internal, trusted };

struct Component {
    std::string id;
    std::string name;
    ComponentKind kind = ComponentKind::other;
    Exposure exposure = Exposure::internal;

    friend bool operator==(const Component&, const Component&) = default;
};

struct DataFlow {
    std::string id;
    std::string from;
    std::string to;
    std::string data_kind;
    bool loopback = false;  // required when from == to

    friend bool operator==(const DataFlow&, const DataFlow&) = default;
};

struct TrustBoundary {
    std::string id;
    std::string name;
    std::vector<std::string> members;  // declaration order, no duplicates

    friend bool operator==(const TrustBoundary&, const TrustBoundary&) = default;
};

struct SystemModel {
    std::string id;
    std::string name;
    std::vector<Component> components;
    std::vector<DataFlow> data_flows;
    std::vector<TrustBoundary> trust_boundaries;

    const Component* find_component(std::string_view component_id) const;

    friend bool operator==(const SystemModel&, const SystemModel&) = default;
};

// ---------------------------------------------------------------------------
// References into external catalogs (opaque identifiers)
// ---------------------------------------------------------------------------

struct WeaknessRef {
    std::string cwe_id;  // CWE-<digits>
    std::string title;
    std::optional<std::string> note;

    friend bool operator==(const WeaknessRef&, const WeaknessRef&) = default;
};

enum class Framework { ATLAS, OWASP_LLM };

struct TechniqueRef {
    Framework framework = Framework::ATLAS;
    std::string technique_id;
    std::string name;

    friend bool operator==(const TechniqueRef&, const TechniqueRef&) = default;
};

bool is_valid_cwe_id(std::string_view text);
bool is_valid_technique_id(Framework framework, std::string_view text);
bool is_valid_identifier(std::string_view text);

// ---------------------------------------------------------------------------
// OWASP factors
// ---------------------------------------------------------------------------

enum class FactorGroup { likelihood, impact };

/// The sixteen OWASP risk-rating factors. The first eight are likelihood
/// factors, the last eight impact factors; the order is the canonical field
/// order used everywhere (files, reports, JSON).
enum class Factor : std::uint8_t {
    skill_level,
    motive,
    opportunity,
    size,
    ease_of_discovery,
    ease_of_exploit,
    awareness,
    intrusion_detection,
    loss_of_confidentiality,
    loss_of_integrity,
    loss_of_availability,
    loss_of_accountability,
    financial_damage,
    reputation_damage,
    non_compliance,
    privacy_violation,
};

inline constexpr std::size_t kFactorsPerGroup = 8;
inline constexpr int kFactorMin = 0;
inline constexpr int kFactorMax = 9;
inline constexpr int kMaxDeltaMagnitude = 9;

constexpr FactorGroup group_of(Factor f) {
    return static_cast<std::size_t>(f) < kFactorsPerGroup ? FactorGroup::likelihood : FactorGroup::impact;
}

constexpr std::size_t slot_of(Factor f) { return static_cast<std::size_t>(f) % kFactorsPerGroup; }

constexpr Factor factor_at(FactorGroup g, std::size_t slot) {
    return static_cast<Factor>(slot + (g == FactorGroup::impact ? kFactorsPerGroup : 0));
}

/// Eight integer factor scores of one group.
template <FactorGroup Group>
struct FactorVector {
    static constexpr FactorGroup group = Group;

    std::array<int, kFactorsPerGroup> values{};

    /// Throws std::invalid_argument if `f` belongs to the other group.
    int& operator[](Factor f);
    int operator[](Factor f) const;

    int sum() const;

    static FactorVector uniform(int v) {
        FactorVector out;
        out.values.fill(v);
        return out;
    }

    friend bool operator==(const FactorVector&, const FactorVector&) = default;
};

using LikelihoodFactors = FactorVector<FactorGroup::likelihood>;
using ImpactFactors = FactorVector<FactorGroup::impact>;

extern template struct FactorVector<FactorGroup::likelihood>;
extern template struct FactorVector<FactorGroup::impact>;

// ---------------------------------------------------------------------------
// Threats and attack flows
// ---------------------------------------------------------------------------

enum class ActorClass { external, insider, unwitting_insider };

struct FlowStep {
    int index = 0;  // 1-based
    std::string stage;
    std::optional<std::string> technique;  // technique_id declared on the owning threat
    std::optional<std::string> target;     // component id

    friend bool operator==(const FlowStep&, const FlowStep&) = default;
};

struct AttackFlow {
    std::string id;
    std::vector<FlowStep> steps;
    std::map<ActorClass, int> entry_points;

    friend bool operator==(const AttackFlow&, const AttackFlow&) = default;
};

struct ThreatScenario {
    std::string id;
    std::string name;
    std::vector<TechniqueRef> techniques;
    std::vector<WeaknessRef> weaknesses;
    std::vector<std::string> targets;
    LikelihoodFactors inherent_likelihood;
    ImpactFactors inherent_impact;
    std::vector<AttackFlow> flows;

    const TechniqueRef* find_technique(std::string_view technique_id) const;

    friend bool operator==(const ThreatScenario&, const ThreatScenario&) = default;
};

// ---------------------------------------------------------------------------
// Controls
// ---------------------------------------------------------------------------

/// AI Security Pyramid of Pain layers, bottom (least adversary pain) to top.
enum class PyramidLayer {
    data_integrity = 1,
    ai_system_performance = 2,
    adversarial_tools = 3,
    adversarial_inputs = 4,
    data_provenance = 5,
    ttps = 6,
};

inline constexpr std::array<PyramidLayer, 6> kLayersTopDown = {
    PyramidLayer::ttps,
    PyramidLayer::data_provenance,
    PyramidLayer::adversarial_inputs,
    PyramidLayer::adversarial_tools,
    PyramidLayer::ai_system_performance,
    PyramidLayer::data_integrity,
};

struct FactorAdjustment {
    Factor factor = Factor::skill_level;
    int delta = 0;  // negative = mitigation

    friend bool operator==(const FactorAdjustment&, const FactorAdjustment&) = default;
};

struct Control {
    std::string id;
    std::string name;
    std::string description;
    std::set<PyramidLayer> layers;
    std::vector<FactorAdjustment> adjustments;

    friend bool operator==(const Control&, const Control&) = default;
};

// ---------------------------------------------------------------------------
// Workspace: everything loaded from one catalog directory
// ---------------------------------------------------------------------------

inline constexpr std::string_view kSchemaVersion = "1";

struct WorkspaceMeta {
    std::string schema_version{kSchemaVersion};
    std::string title;

    friend bool operator==(const WorkspaceMeta&, const WorkspaceMeta&) = default;
};

struct Workspace {
    WorkspaceMeta meta;
    SystemModel model;
    std::vector<ThreatScenario> threats;
    std::vector<Control> controls;

    const ThreatScenario* find_threat(std::string_view threat_id) const;
    const Control* find_control(std::string_view control_id) const;
    /// Searches the flows of every threat.
    const AttackFlow* find_flow(std::string_view flow_id) const;

    friend bool operator==(const Workspace&, const Workspace&) = default;
};

// ---------------------------------------------------------------------------
// Enum <-> text
// ---------------------------------------------------------------------------

std::string_view to_string(ComponentKind v);
std::string_view to_string(Exposure v);
std::string_view to_string(Framework v);
std::string_view to_string(Factor v);
std::string_view to_string(ActorClass v);
std::string_view to_string(PyramidLayer v);

/// Human-readable layer title, e.g. "Data Provenance".
std::string_view layer_title(PyramidLayer v);

std::optional<ComponentKind> parse_component_kind(std::string_view s);
std::optional<Exposure> parse_exposure(std::string_view s);
std::optional<Framework> parse_framework(std::string_view s);
std::optional<Factor> parse_factor(std::string_view s);
std::optional<ActorClass> parse_actor_class(std::string_view s);
std::optional<PyramidLayer> parse_pyramid_layer(std::string_view s);

}  // namespace ragrisk
