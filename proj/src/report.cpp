#include "ragrisk/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>
#include <unordered_set>

namespace ragrisk {

UnknownControlId::UnknownControlId(std::string id)
    : std::runtime_error("unknown control id '" + id + "'"), id_(std::move(id)) {}

std::vector<const Control*> select_controls(const Workspace& ws, std::span<const std::string> ids) {
    std::unordered_set<std::string> wanted;
    for (const auto& id : ids) {
        if (ws.find_control(id) == nullptr) {
            throw UnknownControlId(id);
        }
        wanted.insert(id);
    }
    std::vector<const Control*> out;
    for (const auto& control : ws.controls) {
        if (wanted.count(control.id)) {
            out.push_back(&control);
        }
    }
    return out;
}

std::string now_rfc3339() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ReportBundle build_report(const Workspace& ws, std::span<const std::string> enabled, std::string generated_at) {
    const auto selected = select_controls(ws, enabled);

    ReportBundle r;
    r.meta = ws.meta;
    r.model_id = ws.model.id;
    r.model_name = ws.model.name;
    for (const auto* c : selected) {
        r.enabled_controls.push_back(c->id);
    }
    for (const auto& c : ws.controls) {
        r.control_names[c.id] = c.name;
    }
    for (const auto& threat : ws.threats) {
        ThreatReport t;
        t.threat_id = threat.id;
        t.name = threat.name;
        t.inherent = assess(threat, std::span<const Control* const>{});
        t.residual = assess(threat, selected);
        t.likelihood_delta = t.inherent.likelihood_score - t.residual.likelihood_score;
        t.impact_delta = t.inherent.impact_score - t.residual.impact_score;
        t.severity_delta = t.inherent.severity_score - t.residual.severity_score;
        r.threats.push_back(std::move(t));
    }
    r.priorities = prioritize(ws.controls, ws.threats);
    r.coverage = coverage_matrix(ws.controls);
    r.generated_at = generated_at.empty() ? now_rfc3339() : std::move(generated_at);
    return r;
}

namespace {

std::string cell(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '|') {
            out += "\\|";
        } else if (c == '\n') {
            out += ' ';
        } else {
            out += c;
        }
    }
    return out;
}

std::string with_label(const RiskAssessment& a) {
    return display_round(a.severity_score) + " (" + std::string(to_string(a.severity_label)) + ")";
}

std::string control_title(const ReportBundle& r, const std::string& id) {
    auto it = r.control_names.find(id);
    return it == r.control_names.end() ? id : it->second;
}

template <FactorGroup G>
void factor_rows(std::ostringstream& os, const FactorVector<G>& inherent, const FactorVector<G>& residual) {
    for (std::size_t slot = 0; slot < kFactorsPerGroup; ++slot) {
        os << "| " << to_string(factor_at(G, slot)) << " | " << inherent.values[slot] << " | "
           << residual.values[slot] << " |\n";
    }
}

}  // namespace

std::string render_markdown(const ReportBundle& r) {
    std::ostringstream os;
    os << "# Risk assessment report: " << r.meta.title << "\n\n";
    os << "Generated: " << r.generated_at << "\n\n";
    os << "System: " << r.model_name << " (`" << r.model_id << "`)\n\n";
    os << "Enabled controls (" << r.enabled_controls.size() << "): ";
    if (r.enabled_controls.empty()) {
        os << "none";
    }
    for (std::size_t i = 0; i < r.enabled_controls.size(); ++i) {
        os << (i ? ", " : "") << '`' << r.enabled_controls[i] << '`';
    }
    os << "\n\n";

    os << "## Summary\n\n";
    if (r.threats.empty()) {
        os << "_No threats in this workspace._\n\n";
    } else {
        os << "| Threat | Likelihood | Impact | Severity |\n|---|---|---|---|\n";
        for (const auto& t : r.threats) {
            os << "| " << cell(t.name) << " (`" << t.threat_id << "`) | "
               << display_round(t.inherent.likelihood_score) << " → " << display_round(t.residual.likelihood_score)
               << " | " << display_round(t.inherent.impact_score) << " → " << display_round(t.residual.impact_score)
               << " | " << with_label(t.inherent) << " → " << with_label(t.residual) << " |\n";
        }
        os << "\n";
    }

    os << "## Threats\n\n";
    if (r.threats.empty()) {
        os << "_No threats in this workspace._\n\n";
    }
    for (const auto& t : r.threats) {
        os << "### " << t.name << " (`" << t.threat_id << "`)\n\n";
        os << "| Measure | Inherent | Residual | Reduction |\n|---|---|---|---|\n";
        os << "| Likelihood | " << display_round(t.inherent.likelihood_score) << " | "
           << display_round(t.residual.likelihood_score) << " | " << display_signed(t.likelihood_delta) << " |\n";
        os << "| Impact | " << display_round(t.inherent.impact_score) << " | "
           << display_round(t.residual.impact_score) << " | " << display_signed(t.impact_delta) << " |\n";
        os << "| Severity | " << display_round(t.inherent.severity_score) << " | "
           << display_round(t.residual.severity_score) << " | " << display_signed(t.severity_delta) << " |\n";
        os << "| Label | " << to_string(t.inherent.severity_label) << " | " << to_string(t.residual.severity_label)
           << " | |\n\n";
        os << "| Factor | Inherent | Residual |\n|---|---|---|\n";
        factor_rows(os, t.inherent.residual_likelihood, t.residual.residual_likelihood);
        factor_rows(os, t.inherent.residual_impact, t.residual.residual_impact);
        os << "\n";
    }

    os << "## Control prioritization\n\n";
    if (r.priorities.empty()) {
        os << "_No controls in this workspace._\n\n";
    } else {
        os << "| Rank | Control | Top layer | Severity reduction |\n|---|---|---|---|\n";
        for (std::size_t i = 0; i < r.priorities.size(); ++i) {
            const auto& p = r.priorities[i];
            os << "| " << i + 1 << " | " << cell(control_title(r, p.control_id)) << " (`" << p.control_id << "`) | "
               << layer_title(p.top_layer) << " (" << p.top_layer_rank << ") | "
               << display_signed(p.severity_reduction) << " |\n";
        }
        os << "\n";
    }

    os << "## Pyramid of Pain coverage\n\n";
    os << "| Layer | Controls |\n|---|---|\n";
    for (const auto& row : r.coverage) {
        os << "| " << layer_title(row.layer) << " | ";
        if (row.control_ids.empty()) {
            os << "(none)";
        }
        for (std::size_t i = 0; i < row.control_ids.size(); ++i) {
            os << (i ? "<br>" : "") << cell(control_title(r, row.control_ids[i]));
        }
        os << " |\n";
    }
    return os.str();
}

namespace json_view {

Json rational(const Rational& value) {
    Json exact = Json::object();
    exact["num"] = value.num();
    exact["den"] = value.den();
    Json out = Json::object();
    out["display"] = display_signed(value);
    out["exact"] = std::move(exact);
    return out;
}

namespace {

template <FactorGroup G>
Json factors(const FactorVector<G>& v) {
    Json out = Json::object();
    for (std::size_t slot = 0; slot < kFactorsPerGroup; ++slot) {
        out[std::string(to_string(factor_at(G, slot)))] = v.values[slot];
    }
    return out;
}

}  // namespace

Json assessment(const RiskAssessment& a) {
    Json out = Json::object();
    out["threat_id"] = a.threat_id;
    out["enabled_controls"] = a.enabled_controls;
    out["residual_likelihood"] = factors(a.residual_likelihood);
    out["residual_impact"] = factors(a.residual_impact);
    out["likelihood_score"] = rational(a.likelihood_score);
    out["impact_score"] = rational(a.impact_score);
    out["severity_score"] = rational(a.severity_score);
    out["severity_label"] = to_string(a.severity_label);
    return out;
}

Json assessments(const Workspace& ws, std::span<const Control* const> controls) {
    Json ids = Json::array();
    for (const auto* c : controls) {
        ids.push_back(c->id);
    }
    Json list = Json::array();
    for (const auto& threat : ws.threats) {
        list.push_back(assessment(assess(threat, controls)));
    }
    Json out = Json::object();
    out["enabled_controls"] = std::move(ids);
    out["assessments"] = std::move(list);
    return out;
}

Json priorities(const Workspace& ws, std::span<const ControlPriority> ranked) {
    Json out = Json::array();
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const auto& p = ranked[i];
        const auto* control = ws.find_control(p.control_id);
        Json row = Json::object();
        row["rank"] = i + 1;
        row["control_id"] = p.control_id;
        row["name"] = control ? control->name : p.control_id;
        row["top_layer"] = to_string(p.top_layer);
        row["top_layer_rank"] = p.top_layer_rank;
        row["severity_reduction"] = rational(p.severity_reduction);
        out.push_back(std::move(row));
    }
    return out;
}

Json coverage(std::span<const CoverageRow> rows) {
    Json out = Json::array();
    for (const auto& row : rows) {
        Json r = Json::object();
        r["layer"] = to_string(row.layer);
        r["rank"] = layer_rank(row.layer);
        r["title"] = layer_title(row.layer);
        r["controls"] = row.control_ids;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace json_view

std::string render_json(const ReportBundle& r) {
    using json_view::Json;
    Json doc = Json::object();
    doc["generated_at"] = r.generated_at;
    doc["meta"] = {{"schema_version", r.meta.schema_version}, {"title", r.meta.title}};
    doc["model"] = {{"id", r.model_id}, {"name", r.model_name}};
    doc["enabled_controls"] = r.enabled_controls;

    Json threats = Json::array();
    for (const auto& t : r.threats) {
        Json entry = Json::object();
        entry["threat_id"] = t.threat_id;
        entry["name"] = t.name;
        entry["inherent"] = json_view::assessment(t.inherent);
        entry["residual"] = json_view::assessment(t.residual);
        Json delta = Json::object();
        delta["likelihood"] = json_view::rational(t.likelihood_delta);
        delta["impact"] = json_view::rational(t.impact_delta);
        delta["severity"] = json_view::rational(t.severity_delta);
        entry["delta"] = std::move(delta);
        threats.push_back(std::move(entry));
    }
    doc["threats"] = std::move(threats);

    Json priorities = Json::array();
    for (std::size_t i = 0; i < r.priorities.size(); ++i) {
        const auto& p = r.priorities[i];
        Json row = Json::object();
        row["rank"] = i + 1;
        row["control_id"] = p.control_id;
        auto it = r.control_names.find(p.control_id);
        row["name"] = it == r.control_names.end() ? p.control_id : it->second;
        row["top_layer"] = to_string(p.top_layer);
        row["top_layer_rank"] = p.top_layer_rank;
        row["severity_reduction"] = json_view::rational(p.severity_reduction);
        priorities.push_back(std::move(row));
    }
    doc["priorities"] = std::move(priorities);
    doc["coverage"] = json_view::coverage(r.coverage);
    return doc.dump(2) + "\n";
}

}  // namespace ragrisk
