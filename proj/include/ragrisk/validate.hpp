#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ragrisk/model.hpp"

namespace ragrisk {

enum class FindingSeverity { error, warning };

std::string_view to_string(FindingSeverity s);

/// One structural problem in a workspace. `document` is the logical catalog
/// ("model", "threats" or "controls"); `pointer` is a JSON-pointer style path
/// inside it, e.g. "/threats/0/targets/1".
struct Finding {
    FindingSeverity severity = FindingSeverity::error;
    std::string code;
    std::string document;
    std::string pointer;
    std::string message;

    friend bool operator==(const Finding&, const Finding&) = default;
};

namespace finding_code {
inline constexpr std::string_view kInvalidId = "INVALID_ID";
inline constexpr std::string_view kDuplicateId = "DUPLICATE_ID";
inline constexpr std::string_view kDanglingFlowEndpoint = "DANGLING_FLOW_ENDPOINT";
inline constexpr std::string_view kSelfLoop = "UNMARKED_SELF_LOOP";
inline constexpr std::string_view kEmptyBoundary = "EMPTY_BOUNDARY";
inline constexpr std::string_view kDanglingBoundaryMember = "DANGLING_BOUNDARY_MEMBER";
inline constexpr std::string_view kDuplicateBoundaryMember = "DUPLICATE_BOUNDARY_MEMBER";
inline constexpr std::string_view kNoTechnique = "NO_TECHNIQUE";
inline constexpr std::string_view kInvalidTechniqueId = "INVALID_TECHNIQUE_ID";
inline constexpr std::string_view kDuplicateTechnique = "DUPLICATE_TECHNIQUE";
inline constexpr std::string_view kInvalidCweId = "INVALID_CWE_ID";
inline constexpr std::string_view kDanglingTarget = "DANGLING_TARGET";
inline constexpr std::string_view kFactorOutOfRange = "FACTOR_OUT_OF_RANGE";
inline constexpr std::string_view kNonContiguousSteps = "NONCONTIGUOUS_STEPS";
inline constexpr std::string_view kDanglingStepTarget = "DANGLING_STEP_TARGET";
inline constexpr std::string_view kDanglingStepTechnique = "DANGLING_STEP_TECHNIQUE";
inline constexpr std::string_view kDanglingEntryPoint = "DANGLING_ENTRY_POINT";
inline constexpr std::string_view kEmptyLayers = "EMPTY_LAYERS";
inline constexpr std::string_view kDuplicateFactorAdjustment = "DUPLICATE_FACTOR_ADJUSTMENT";
inline constexpr std::string_view kDeltaOutOfRange = "DELTA_OUT_OF_RANGE";
}  // namespace finding_code

/// Checks every type invariant and cross reference. Returns an empty list iff
/// the workspace is well formed. Findings are reported in document order
/// (model, threats, controls).
std::vector<Finding> validate_workspace(const SystemModel& model,
                                        std::span<const ThreatScenario> threats,
                                        std::span<const Control> controls);

inline std::vector<Finding> validate_workspace(const Workspace& ws) {
    return validate_workspace(ws.model, ws.threats, ws.controls);
}

/// Ids of data flows whose endpoints sit in different sets of trust
/// boundaries. An endpoint outside every boundary has the empty set, so with
/// no boundaries every flow crosses. Declaration order.
std::vector<std::string> crossing_flows(const SystemModel& model);

}  // namespace ragrisk
