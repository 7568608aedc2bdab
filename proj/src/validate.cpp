#include "ragrisk/validate.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace ragrisk {

namespace {

namespace code = finding_code;

class FindingSink {
public:
    explicit FindingSink(std::vector<Finding>& out) : out_(out) {}

    void add(std::string_view c, std::string_view document, std::string pointer, std::string message) {
        out_.push_back(Finding{FindingSeverity::error, std::string(c), std::string(document), std::move(pointer),
                               std::move(message)});
    }

private:
    std::vector<Finding>& out_;
};

std::string at(std::string_view base, std::size_t index) { return std::string(base) + "/" + std::to_string(index); }

/// Tracks declared ids of one namespace and reports malformed or repeated ones.
class IdRegistry {
public:
    IdRegistry(FindingSink& sink, std::string_view document, std::string_view kind)
        : sink_(sink), document_(document), kind_(kind) {}

    void declare(const std::string& id, const std::string& pointer) {
        if (!is_valid_identifier(id)) {
            sink_.add(code::kInvalidId, document_, pointer + "/id",
                      std::string(kind_) + " id '" + id + "' must match [a-z0-9_-]+");
        }
        if (!seen_.insert(id).second) {
            sink_.add(code::kDuplicateId, document_, pointer + "/id",
                      "duplicate " + std::string(kind_) + " id '" + id + "'");
        }
    }

    bool contains(const std::string& id) const { return seen_.count(id) != 0; }

private:
    FindingSink& sink_;
    std::string_view document_;
    std::string_view kind_;
    std::unordered_set<std::string> seen_;
};

template <FactorGroup G>
void check_factor_range(FindingSink& sink, const FactorVector<G>& v, const std::string& pointer) {
    for (std::size_t slot = 0; slot < kFactorsPerGroup; ++slot) {
        const int value = v.values[slot];
        if (value < kFactorMin || value > kFactorMax) {
            const auto name = to_string(factor_at(G, slot));
            sink.add(code::kFactorOutOfRange, "threats", pointer + "/" + std::string(name),
                     std::string(name) + " = " + std::to_string(value) + " is outside the legal range 0-9");
        }
    }
}

void validate_model(FindingSink& sink, const SystemModel& model) {
    if (!is_valid_identifier(model.id)) {
        sink.add(code::kInvalidId, "model", "/id", "model id '" + model.id + "' must match [a-z0-9_-]+");
    }

    IdRegistry components(sink, "model", "component");
    for (std::size_t i = 0; i < model.components.size(); ++i) {
        components.declare(model.components[i].id, at("/components", i));
    }

    IdRegistry flows(sink, "model", "data flow");
    for (std::size_t i = 0; i < model.data_flows.size(); ++i) {
        const auto& flow = model.data_flows[i];
        const auto p = at("/data_flows", i);
        flows.declare(flow.id, p);
        for (const auto& [field, endpoint] : {std::pair{"from", &flow.from}, std::pair{"to", &flow.to}}) {
            if (!components.contains(*endpoint)) {
                sink.add(code::kDanglingFlowEndpoint, "model", p + "/" + field,
                         "data flow '" + flow.id + "' references unknown component '" + *endpoint + "'");
            }
        }
        if (flow.from == flow.to && !flow.loopback) {
            sink.add(code::kSelfLoop, "model", p,
                     "data flow '" + flow.id + "' has identical endpoints but is not marked loopback");
        }
    }

    IdRegistry boundaries(sink, "model", "trust boundary");
    for (std::size_t i = 0; i < model.trust_boundaries.size(); ++i) {
        const auto& boundary = model.trust_boundaries[i];
        const auto p = at("/trust_boundaries", i);
        boundaries.declare(boundary.id, p);
        if (boundary.members.empty()) {
            sink.add(code::kEmptyBoundary, "model", p + "/members",
                     "trust boundary '" + boundary.id + "' has no members");
        }
        std::unordered_set<std::string> seen;
        for (std::size_t m = 0; m < boundary.members.size(); ++m) {
            const auto& member = boundary.members[m];
            if (!components.contains(member)) {
                sink.add(code::kDanglingBoundaryMember, "model", at(p + "/members", m),
                         "trust boundary '" + boundary.id + "' references unknown component '" + member + "'");
            }
            if (!seen.insert(member).second) {
                sink.add(code::kDuplicateBoundaryMember, "model", at(p + "/members", m),
                         "component '" + member + "' listed twice in trust boundary '" + boundary.id + "'");
            }
        }
    }
}

void validate_flow(FindingSink& sink, const ThreatScenario& threat, const SystemModel& model, const AttackFlow& flow,
                   const std::string& p) {
    for (std::size_t s = 0; s < flow.steps.size(); ++s) {
        const auto& step = flow.steps[s];
        const auto sp = at(p + "/steps", s);
        if (step.index != static_cast<int>(s) + 1) {
            sink.add(code::kNonContiguousSteps, "threats", sp + "/index",
                     "step index " + std::to_string(step.index) + " should be " + std::to_string(s + 1));
        }
        if (step.technique && threat.find_technique(*step.technique) == nullptr) {
            sink.add(code::kDanglingStepTechnique, "threats", sp + "/technique",
                     "technique '" + *step.technique + "' is not declared on threat '" + threat.id + "'");
        }
        if (step.target && model.find_component(*step.target) == nullptr) {
            sink.add(code::kDanglingStepTarget, "threats", sp + "/target",
                     "step targets unknown component '" + *step.target + "'");
        }
    }
    for (const auto& [actor, index] : flow.entry_points) {
        if (index < 1 || index > static_cast<int>(flow.steps.size())) {
            sink.add(code::kDanglingEntryPoint, "threats", p + "/entry_points/" + std::string(to_string(actor)),
                     "entry point " + std::to_string(index) + " for " + std::string(to_string(actor)) +
                         " is not a step of flow '" + flow.id + "'");
        }
    }
}

void validate_threats(FindingSink& sink, const SystemModel& model, std::span<const ThreatScenario> threats) {
    IdRegistry threat_ids(sink, "threats", "threat");
    IdRegistry flow_ids(sink, "threats", "attack flow");
    for (std::size_t i = 0; i < threats.size(); ++i) {
        const auto& threat = threats[i];
        const auto p = at("/threats", i);
        threat_ids.declare(threat.id, p);

        if (threat.techniques.empty()) {
            sink.add(code::kNoTechnique, "threats", p + "/techniques",
                     "threat '" + threat.id + "' lists no technique");
        }
        std::unordered_set<std::string> techniques;
        for (std::size_t t = 0; t < threat.techniques.size(); ++t) {
            const auto& technique = threat.techniques[t];
            const auto tp = at(p + "/techniques", t);
            if (!is_valid_technique_id(technique.framework, technique.technique_id)) {
                sink.add(code::kInvalidTechniqueId, "threats", tp + "/id",
                         "'" + technique.technique_id + "' is not a valid " +
                             std::string(to_string(technique.framework)) + " technique id");
            }
            if (!techniques.insert(technique.technique_id).second) {
                sink.add(code::kDuplicateTechnique, "threats", tp + "/id",
                         "technique '" + technique.technique_id + "' listed twice");
            }
        }
        for (std::size_t w = 0; w < threat.weaknesses.size(); ++w) {
            if (!is_valid_cwe_id(threat.weaknesses[w].cwe_id)) {
                sink.add(code::kInvalidCweId, "threats", at(p + "/weaknesses", w) + "/cwe_id",
                         "'" + threat.weaknesses[w].cwe_id + "' does not match CWE-<digits>");
            }
        }
        for (std::size_t t = 0; t < threat.targets.size(); ++t) {
            if (model.find_component(threat.targets[t]) == nullptr) {
                sink.add(code::kDanglingTarget, "threats", at(p + "/targets", t),
                         "threat '" + threat.id + "' targets unknown component '" + threat.targets[t] + "'");
            }
        }
        check_factor_range(sink, threat.inherent_likelihood, p + "/likelihood");
        check_factor_range(sink, threat.inherent_impact, p + "/impact");

        for (std::size_t f = 0; f < threat.flows.size(); ++f) {
            const auto fp = at(p + "/flows", f);
            flow_ids.declare(threat.flows[f].id, fp);
            validate_flow(sink, threat, model, threat.flows[f], fp);
        }
    }
}

void validate_controls(FindingSink& sink, std::span<const Control> controls) {
    IdRegistry ids(sink, "controls", "control");
    for (std::size_t i = 0; i < controls.size(); ++i) {
        const auto& control = controls[i];
        const auto p = at("/controls", i);
        ids.declare(control.id, p);
        if (control.layers.empty()) {
            sink.add(code::kEmptyLayers, "controls", p + "/layers",
                     "control '" + control.id + "' maps to no pyramid layer");
        }
        std::set<Factor> adjusted;
        for (std::size_t a = 0; a < control.adjustments.size(); ++a) {
            const auto& adj = control.adjustments[a];
            const auto ap = at(p + "/adjustments", a);
            if (!adjusted.insert(adj.factor).second) {
                sink.add(code::kDuplicateFactorAdjustment, "controls", ap + "/factor",
                         "control '" + control.id + "' adjusts " + std::string(to_string(adj.factor)) + " twice");
            }
            if (adj.delta < -kMaxDeltaMagnitude || adj.delta > kMaxDeltaMagnitude) {
                sink.add(code::kDeltaOutOfRange, "controls", ap + "/delta",
                         "delta " + std::to_string(adj.delta) + " is outside the legal range -9..9");
            }
        }
    }
}

}  // namespace

std::string_view to_string(FindingSeverity s) { return s == FindingSeverity::error ? "error" : "warning"; }

std::vector<Finding> validate_workspace(const SystemModel& model, std::span<const ThreatScenario> threats,
                                        std::span<const Control> controls) {
    std::vector<Finding> findings;
    FindingSink sink(findings);
    validate_model(sink, model);
    validate_threats(sink, model, threats);
    validate_controls(sink, controls);
    return findings;
}

std::vector<std::string> crossing_flows(const SystemModel& model) {
    std::unordered_map<std::string, std::set<std::string>> membership;
    for (const auto& boundary : model.trust_boundaries) {
        for (const auto& member : boundary.members) {
            membership[member].insert(boundary.id);
        }
    }
    const std::set<std::string> unbounded;
    auto boundaries_of = [&](const std::string& component) -> const std::set<std::string>& {
        auto it = membership.find(component);
        return it == membership.end() ? unbounded : it->second;
    };

    std::vector<std::string> out;
    for (const auto& flow : model.data_flows) {
        const auto& from = boundaries_of(flow.from);
        const auto& to = boundaries_of(flow.to);
        if (from.empty() || to.empty() || from != to) {
            out.push_back(flow.id);
        }
    }
    return out;
}

}  // namespace ragrisk
