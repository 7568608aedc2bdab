#include "ragrisk/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "ragrisk/attack_flow.hpp"
#include "ragrisk/catalog_io.hpp"
#include "ragrisk/pyramid.hpp"
#include "ragrisk/report.hpp"
#include "ragrisk/risk.hpp"
#include "ragrisk/service.hpp"
#include "ragrisk/validate.hpp"

namespace ragrisk::cli {

namespace {

using json_view::Json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::filesystem::path resolve_workspace(const std::string& positional) {
    if (!positional.empty()) {
        return positional;
    }
    if (const char* env = std::getenv(kWorkspaceEnv); env != nullptr && *env != '\0') {
        return env;
    }
    throw UsageError(std::string("no workspace directory given and ") + kWorkspaceEnv + " is not set");
}

std::vector<std::string> split_ids(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

/// Expands `all` / `none` / a comma separated id list into control ids.
std::vector<std::string> control_selection(const Workspace& ws, const std::string& spec) {
    if (spec == "all") {
        std::vector<std::string> ids;
        for (const auto& c : ws.controls) {
            ids.push_back(c.id);
        }
        return ids;
    }
    if (spec == "none") {
        return {};
    }
    auto ids = split_ids(spec);
    for (const auto& id : ids) {
        if (ws.find_control(id) == nullptr) {
            throw UsageError("unknown control id '" + id + "'");
        }
    }
    return ids;
}

std::string pad(const std::string& text, std::size_t width) {
    return text.size() >= width ? text : text + std::string(width - text.size(), ' ');
}

/// Column-aligned plain text table; first row is the header.
void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        widths.resize(std::max(widths.size(), row.size()));
        for (std::size_t i = 0; i < row.size(); ++i) {
            widths[i] = std::max(widths[i], row[i].size());
        }
    }
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += i + 1 == row.size() ? row[i] : pad(row[i], widths[i] + 2);
        }
        out << line << "\n";
    }
}

std::string label_of(const RiskAssessment& a) { return std::string(to_string(a.severity_label)); }

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct CommonArgs {
    std::string workspace;
    std::string format;
};

int cmd_validate(const CommonArgs& args, std::ostream& out) {
    const auto ws = parse_workspace(resolve_workspace(args.workspace));
    const auto findings = validate_workspace(ws);
    if (args.format == "json") {
        Json list = Json::array();
        for (const auto& f : findings) {
            Json item = Json::object();
            item["severity"] = to_string(f.severity);
            item["code"] = f.code;
            item["document"] = f.document;
            item["path"] = f.pointer;
            item["message"] = f.message;
            list.push_back(std::move(item));
        }
        Json doc = Json::object();
        doc["count"] = findings.size();
        doc["findings"] = std::move(list);
        out << doc.dump(2) << "\n";
    } else {
        for (const auto& f : findings) {
            out << to_string(f.severity) << " " << f.code << " " << f.document << ":" << f.pointer << " " << f.message
                << "\n";
        }
        out << findings.size() << (findings.size() == 1 ? " finding" : " findings") << "\n";
    }
    return findings.empty() ? kSuccess : kFindings;
}

int cmd_assess(const CommonArgs& args, const std::string& controls_spec, std::ostream& out) {
    const auto ws = load_workspace(resolve_workspace(args.workspace));
    const auto ids = control_selection(ws, controls_spec);
    const auto selected = select_controls(ws, ids);
    const bool inherent_only = selected.empty();

    if (args.format == "json") {
        out << json_view::assessments(ws, selected).dump(2) << "\n";
        return kSuccess;
    }

    std::vector<std::vector<std::string>> rows;
    for (const auto& threat : ws.threats) {
        const auto inherent = assess(threat, std::span<const Control* const>{});
        rows.push_back({threat.id, "inherent", display_round(inherent.likelihood_score),
                        display_round(inherent.impact_score), display_round(inherent.severity_score),
                        label_of(inherent)});
        if (!inherent_only) {
            const auto residual = assess(threat, selected);
            rows.push_back({threat.id, "residual", display_round(residual.likelihood_score),
                            display_round(residual.impact_score), display_round(residual.severity_score),
                            label_of(residual)});
        }
    }

    if (args.format == "md") {
        out << "| Threat | Stage | Likelihood | Impact | Severity | Label |\n|---|---|---|---|---|---|\n";
        for (const auto& r : rows) {
            out << "| " << r[0] << " | " << r[1] << " | " << r[2] << " | " << r[3] << " | " << r[4] << " | " << r[5]
                << " |\n";
        }
        return kSuccess;
    }
    rows.insert(rows.begin(), {"THREAT", "STAGE", "LIKELIHOOD", "IMPACT", "SEVERITY", "LABEL"});
    print_table(out, rows);
    return kSuccess;
}

int cmd_whatif(const CommonArgs& args, const std::string& base_spec, const std::string& enable_spec,
               const std::string& disable_spec, std::ostream& out) {
    const auto ws = load_workspace(resolve_workspace(args.workspace));
    const auto enable = control_selection(ws, enable_spec.empty() ? "none" : enable_spec);
    const auto disable = control_selection(ws, disable_spec.empty() ? "none" : disable_spec);
    for (const auto& id : enable) {
        if (std::find(disable.begin(), disable.end(), id) != disable.end()) {
            throw UsageError("control '" + id + "' is both enabled and disabled");
        }
    }

    std::set<std::string> chosen;
    for (const auto& id : control_selection(ws, base_spec)) {
        chosen.insert(id);
    }
    chosen.insert(enable.begin(), enable.end());
    for (const auto& id : disable) {
        chosen.erase(id);
    }
    const std::vector<std::string> chosen_ids(chosen.begin(), chosen.end());
    const auto whatif_controls = select_controls(ws, chosen_ids);
    std::vector<const Control*> all_controls;
    for (const auto& c : ws.controls) {
        all_controls.push_back(&c);
    }

    Json threats = Json::array();
    std::vector<std::vector<std::string>> rows{
        {"THREAT", "FULL SET", "WHAT-IF", "DELTA VS FULL", "NO CONTROLS", "DELTA VS NONE"}};
    for (const auto& threat : ws.threats) {
        const auto full = assess(threat, all_controls);
        const auto none = assess(threat, std::span<const Control* const>{});
        const auto whatif = assess(threat, whatif_controls);
        const Rational vs_full = whatif.severity_score - full.severity_score;
        const Rational vs_none = whatif.severity_score - none.severity_score;
        rows.push_back({threat.id, display_round(full.severity_score) + " (" + label_of(full) + ")",
                        display_round(whatif.severity_score) + " (" + label_of(whatif) + ")", display_signed(vs_full),
                        display_round(none.severity_score) + " (" + label_of(none) + ")", display_signed(vs_none)});
        Json entry = Json::object();
        entry["threat_id"] = threat.id;
        entry["full"] = json_view::rational(full.severity_score);
        entry["none"] = json_view::rational(none.severity_score);
        entry["whatif"] = json_view::assessment(whatif);
        entry["delta_vs_full"] = json_view::rational(vs_full);
        entry["delta_vs_none"] = json_view::rational(vs_none);
        threats.push_back(std::move(entry));
    }

    if (args.format == "json") {
        Json doc = Json::object();
        Json ids = Json::array();
        for (const auto* c : whatif_controls) {
            ids.push_back(c->id);
        }
        doc["enabled_controls"] = std::move(ids);
        doc["threats"] = std::move(threats);
        out << doc.dump(2) << "\n";
    } else {
        print_table(out, rows);
    }
    return kSuccess;
}

int cmd_prioritize(const CommonArgs& args, std::ostream& out) {
    const auto ws = load_workspace(resolve_workspace(args.workspace));
    const auto ranked = prioritize(ws.controls, ws.threats);
    if (args.format == "json") {
        Json doc = Json::object();
        doc["priorities"] = json_view::priorities(ws, ranked);
        doc["coverage"] = json_view::coverage(coverage_matrix(ws.controls));
        out << doc.dump(2) << "\n";
        return kSuccess;
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const auto& p = ranked[i];
        rows.push_back({std::to_string(i + 1) + ".", p.control_id,
                        std::string(to_string(p.top_layer)) + " (" + std::to_string(p.top_layer_rank) + ")",
                        display_signed(p.severity_reduction), ws.find_control(p.control_id)->name});
    }
    print_table(out, rows);
    return kSuccess;
}

int cmd_graph(const CommonArgs& args, std::ostream& out) {
    const auto ws = load_workspace(resolve_workspace(args.workspace));
    const auto graph = build_surface_graph(ws);
    if (args.format == "json") {
        Json nodes = Json::array();
        for (const auto& n : graph.nodes) {
            nodes.push_back({{"id", n.id}, {"label", n.label}, {"actor", n.is_actor}});
        }
        Json edges = Json::array();
        for (const auto& e : graph.edges) {
            Json edge = {{"from", e.from},
                         {"to", e.to},
                         {"kind", e.kind == EdgeKind::data_flow ? "data_flow" : "threat_entry"},
                         {"label", e.label}};
            if (e.kind == EdgeKind::threat_entry) {
                edge["threat_id"] = e.threat_id;
                edge["techniques"] = e.techniques;
            }
            edges.push_back(std::move(edge));
        }
        Json clusters = Json::array();
        for (const auto& c : graph.clusters) {
            clusters.push_back({{"id", c.id}, {"label", c.label}, {"members", c.members}});
        }
        Json doc = Json::object();
        doc["name"] = graph.name;
        doc["nodes"] = std::move(nodes);
        doc["edges"] = std::move(edges);
        doc["clusters"] = std::move(clusters);
        out << doc.dump(2) << "\n";
        return kSuccess;
    }
    out << export_dot(graph);
    return kSuccess;
}

int cmd_report(const CommonArgs& args, const std::string& controls_spec, const std::string& output,
               std::ostream& out) {
    const auto ws = load_workspace(resolve_workspace(args.workspace));
    const auto ids = control_selection(ws, controls_spec);
    const auto bundle = build_report(ws, ids);
    const std::string text = args.format == "json" ? render_json(bundle) : render_markdown(bundle);
    if (output.empty() || output == "-") {
        out << text;
        return kSuccess;
    }
    std::ofstream file(output, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text) || !file.flush()) {
        throw IoError("cannot write report to " + output);
    }
    return kSuccess;
}

int cmd_serve(const CommonArgs& args, const ServiceOptions& options, std::ostream& err) {
    auto ws = std::make_shared<const Workspace>(load_workspace(resolve_workspace(args.workspace)));
    err << "serving " << ws->model.id << " on http://" << options.host << ":" << options.port << "\n";
    err.flush();
    if (!serve(std::move(ws), options)) {
        err << "error: cannot listen on " << options.host << ":" << options.port << "\n";
        return kInternalError;
    }
    return kSuccess;
}

void print_findings(std::ostream& err, const std::vector<Finding>& findings) {
    for (const auto& f : findings) {
        err << "  " << f.code << " " << f.document << ":" << f.pointer << " " << f.message << "\n";
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Threat-modeling-as-code risk engine for RAG architectures", "ragrisk"};
    app.require_subcommand(1);

    CommonArgs common;
    auto add_workspace = [&](CLI::App* cmd) {
        cmd->add_option("workspace", common.workspace,
                        std::string("Workspace directory (default: $") + kWorkspaceEnv + ")");
    };

    auto* validate = app.add_subcommand("validate", "Check catalogs for schema and cross-reference problems");
    add_workspace(validate);
    validate->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->default_str("text");

    std::string controls_spec = "all";
    auto* assess_cmd = app.add_subcommand("assess", "Inherent and residual risk per threat");
    add_workspace(assess_cmd);
    assess_cmd->add_option("--controls", controls_spec, "Enabled controls: all, none or comma separated ids");
    assess_cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"table", "json", "md"}));

    std::string base_spec = "all";
    std::string enable_spec;
    std::string disable_spec;
    auto* whatif = app.add_subcommand("what-if", "Compare a modified control set against the full set");
    whatif->alias("whatif");
    add_workspace(whatif);
    whatif->add_option("--base", base_spec, "Starting control set: all, none or ids");
    whatif->add_option("--enable", enable_spec, "Comma separated control ids to add");
    whatif->add_option("--disable", disable_spec, "Comma separated control ids to remove");
    whatif->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"table", "json"}));

    auto* prioritize_cmd = app.add_subcommand("prioritize", "Rank controls by Pyramid of Pain layer");
    add_workspace(prioritize_cmd);
    prioritize_cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"table", "json"}));

    auto* graph = app.add_subcommand("graph", "Attack-surface overlay graph");
    add_workspace(graph);
    graph->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"dot", "json"}));

    std::string output;
    auto* report = app.add_subcommand("report", "Full assessment report");
    add_workspace(report);
    report->add_option("--controls", controls_spec, "Enabled controls: all, none or comma separated ids");
    report->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"md", "json"}));
    report->add_option("-o,--output", output, "Output file (default: standard output)");

    ServiceOptions service_options;
    std::string allow_origin;
    std::string ui_dir;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP JSON API");
    add_workspace(serve_cmd);
    serve_cmd->add_option("--host", service_options.host, "Listen address");
    serve_cmd->add_option("--port", service_options.port, "Listen port")->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--allow-origin", allow_origin, "Origin allowed by CORS");
    serve_cmd->add_option("--ui-dir", ui_dir, "Static dashboard assets served under /ui/");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (validate->parsed()) {
            return cmd_validate(common, out);
        }
        if (assess_cmd->parsed()) {
            return cmd_assess(common, controls_spec, out);
        }
        if (whatif->parsed()) {
            return cmd_whatif(common, base_spec, enable_spec, disable_spec, out);
        }
        if (prioritize_cmd->parsed()) {
            return cmd_prioritize(common, out);
        }
        if (graph->parsed()) {
            return cmd_graph(common, out);
        }
        if (report->parsed()) {
            return cmd_report(common, controls_spec, output, out);
        }
        if (serve_cmd->parsed()) {
            if (!allow_origin.empty()) {
                service_options.allow_origin = allow_origin;
            }
            if (!ui_dir.empty()) {
                service_options.ui_dir = ui_dir;
            }
            return cmd_serve(common, service_options, err);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const UnknownControlId& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ValidationError& e) {
        err << "error: workspace has " << e.findings().size() << " validation finding(s)\n";
        print_findings(err, e.findings());
        return kFindings;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
        return kParseError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
    return kUsageError;
}

}  // namespace ragrisk::cli
