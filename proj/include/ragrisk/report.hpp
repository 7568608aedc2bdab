#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ragrisk/model.hpp"
#include "ragrisk/pyramid.hpp"
#include "ragrisk/risk.hpp"

namespace ragrisk {

class UnknownControlId : public std::runtime_error {
public:
    explicit UnknownControlId(std::string id);
    const std::string& id() const { return id_; }

private:
    std::string id_;
};

/// Resolves control ids against the catalog. The result follows catalog
/// order, so any permutation of `ids` selects the same list.
std::vector<const Control*> select_controls(const Workspace& ws, std::span<const std::string> ids);

struct ThreatReport {
    std::string threat_id;
    std::string name;
    RiskAssessment inherent;
    RiskAssessment residual;
    Rational likelihood_delta;  // inherent - residual
    Rational impact_delta;
    Rational severity_delta;
};

struct ReportBundle {
    WorkspaceMeta meta;
    std::string model_id;
    std::string model_name;
    std::vector<std::string> enabled_controls;
    std::map<std::string, std::string> control_names;
    std::vector<ThreatReport> threats;
    std::vector<ControlPriority> priorities;
    std::vector<CoverageRow> coverage;
    std::string generated_at;  // RFC 3339, UTC
};

/// Current UTC time as RFC 3339 with second precision.
std::string now_rfc3339();

/// Throws UnknownControlId when `enabled` names a control not in the catalog.
/// An empty `generated_at` is replaced by now_rfc3339().
ReportBundle build_report(const Workspace& ws, std::span<const std::string> enabled, std::string generated_at = {});

std::string render_markdown(const ReportBundle& r);
std::string render_json(const ReportBundle& r);

// JSON views shared by the report, the CLI and the HTTP service.
namespace json_view {

using Json = nlohmann::ordered_json;

/// {"display": "10.41", "exact": {"num": 333, "den": 32}}
Json rational(const Rational& value);
Json assessment(const RiskAssessment& a);

/// {"enabled_controls": [...], "assessments": [...]} for every threat under
/// the given control set. Identical for `ragrisk assess --format json` and
/// POST /api/v1/assess.
Json assessments(const Workspace& ws, std::span<const Control* const> controls);

Json priorities(const Workspace& ws, std::span<const ControlPriority> ranked);
Json coverage(std::span<const CoverageRow> rows);

}  // namespace json_view

}  // namespace ragrisk
