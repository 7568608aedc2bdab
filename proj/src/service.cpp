#include "ragrisk/service.hpp"

#include <httplib.h>

#include <json.hpp>

#include "ragrisk/attack_flow.hpp"
#include "ragrisk/pyramid.hpp"
#include "ragrisk/report.hpp"

namespace ragrisk {

namespace {

using Json = json_view::Json;

constexpr const char* kJsonType = "application/json; charset=utf-8";
constexpr const char* kTextType = "text/plain; charset=utf-8";

void send_json(httplib::Response& res, const Json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(2) + "\n", kJsonType);
}

/// ApiError body: {"error": {"status", "code", "message", "path"?}}.
/// code is one of PARSE, SCHEMA, VALIDATION, UNKNOWN_ID, BAD_REQUEST.
void send_error(httplib::Response& res, int status, const char* code, const std::string& message,
                const std::optional<std::string>& path = std::nullopt) {
    Json err = Json::object();
    err["status"] = status;
    err["code"] = code;
    err["message"] = message;
    if (path) {
        err["path"] = *path;
    }
    Json body = Json::object();
    body["error"] = std::move(err);
    send_json(res, body, status);
}

Json workspace_summary(const Workspace& ws) {
    Json components = Json::array();
    for (const auto& c : ws.model.components) {
        components.push_back(
            {{"id", c.id}, {"name", c.name}, {"kind", to_string(c.kind)}, {"exposure", to_string(c.exposure)}});
    }
    Json flows = Json::array();
    for (const auto& f : ws.model.data_flows) {
        flows.push_back({{"id", f.id}, {"from", f.from}, {"to", f.to}, {"data_kind", f.data_kind}});
    }
    Json boundaries = Json::array();
    for (const auto& b : ws.model.trust_boundaries) {
        boundaries.push_back({{"id", b.id}, {"name", b.name}, {"members", b.members}});
    }
    Json threats = Json::array();
    for (const auto& t : ws.threats) {
        Json flow_ids = Json::array();
        for (const auto& f : t.flows) {
            flow_ids.push_back(f.id);
        }
        Json techniques = Json::array();
        for (const auto& tech : t.techniques) {
            techniques.push_back(tech.technique_id);
        }
        threats.push_back({{"id", t.id}, {"name", t.name}, {"techniques", techniques}, {"flows", flow_ids}});
    }
    Json controls = Json::array();
    for (const auto& c : ws.controls) {
        Json layers = Json::array();
        for (auto it = c.layers.rbegin(); it != c.layers.rend(); ++it) {
            layers.push_back(to_string(*it));
        }
        controls.push_back({{"id", c.id}, {"name", c.name}, {"layers", layers}});
    }
    Json out = Json::object();
    out["meta"] = {{"schema_version", ws.meta.schema_version}, {"title", ws.meta.title}};
    out["model"] = {{"id", ws.model.id},
                    {"name", ws.model.name},
                    {"components", components},
                    {"data_flows", flows},
                    {"trust_boundaries", boundaries}};
    out["threats"] = std::move(threats);
    out["controls"] = std::move(controls);
    return out;
}

Json step_json(const FlowStep& s, bool skipped) {
    Json out = Json::object();
    out["index"] = s.index;
    out["stage"] = s.stage;
    if (s.technique) {
        out["technique"] = *s.technique;
    }
    if (s.target) {
        out["target"] = *s.target;
    }
    out["skipped"] = skipped;
    return out;
}

Json actor_path_json(const AttackFlow& flow, const ActorPath& path) {
    Json steps = Json::array();
    for (const auto& s : flow.steps) {
        steps.push_back(step_json(s, s.index < path.entry_index));
    }
    Json out = Json::object();
    out["flow_id"] = path.flow_id;
    out["actor"] = to_string(path.actor);
    out["entry_index"] = path.entry_index;
    out["skipped_count"] = path.skipped_count;
    out["executed_count"] = path.executed_steps.size();
    out["steps"] = std::move(steps);
    return out;
}

}  // namespace

Service::Service(std::shared_ptr<const Workspace> workspace, ServiceOptions options)
    : workspace_(std::move(workspace)), options_(std::move(options)) {}

void Service::attach(httplib::Server& server) const {
    // Handlers capture the snapshot by shared_ptr; nothing below mutates it.
    auto ws = workspace_;

    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { res.set_content("ok", kTextType); });

    server.Get("/api/v1/workspace", [ws](const httplib::Request&, httplib::Response& res) {
        send_json(res, workspace_summary(*ws));
    });

    server.Post("/api/v1/assess", [ws](const httplib::Request& req, httplib::Response& res) {
        nlohmann::json body;
        try {
            body = nlohmann::json::parse(req.body);
        } catch (const nlohmann::json::parse_error& e) {
            send_error(res, 400, "PARSE", std::string("request body is not valid JSON: ") + e.what());
            return;
        }
        if (!body.is_object() || !body.contains("controls") || !body["controls"].is_array()) {
            send_error(res, 400, "SCHEMA", "expected {\"controls\": [control ids]}", "/controls");
            return;
        }
        for (const auto& [key, value] : body.items()) {
            if (key != "controls") {
                send_error(res, 400, "SCHEMA", "unknown key '" + key + "'", "/" + key);
                return;
            }
        }
        std::vector<std::string> ids;
        const auto& list = body["controls"];
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (!list[i].is_string()) {
                send_error(res, 400, "SCHEMA", "control ids must be strings", "/controls/" + std::to_string(i));
                return;
            }
            const auto id = list[i].get<std::string>();
            if (ws->find_control(id) == nullptr) {
                send_error(res, 422, "UNKNOWN_ID", "unknown control id '" + id + "'", "/controls/" + std::to_string(i));
                return;
            }
            ids.push_back(id);
        }
        send_json(res, json_view::assessments(*ws, select_controls(*ws, ids)));
    });

    server.Get("/api/v1/pyramid", [ws](const httplib::Request&, httplib::Response& res) {
        const auto ranked = prioritize(ws->controls, ws->threats);
        Json out = Json::object();
        out["priorities"] = json_view::priorities(*ws, ranked);
        out["coverage"] = json_view::coverage(coverage_matrix(ws->controls));
        send_json(res, out);
    });

    server.Get("/api/v1/graph.dot", [ws](const httplib::Request&, httplib::Response& res) {
        res.set_content(export_dot(build_surface_graph(*ws)), kTextType);
    });

    server.Get(R"(/api/v1/flows/([a-z0-9_\-]+))", [ws](const httplib::Request& req, httplib::Response& res) {
        const std::string flow_id = req.matches[1];
        const auto* flow = ws->find_flow(flow_id);
        if (flow == nullptr) {
            send_error(res, 404, "UNKNOWN_ID", "unknown attack flow '" + flow_id + "'");
            return;
        }
        if (!req.has_param("actor")) {
            send_error(res, 400, "BAD_REQUEST", "query parameter 'actor' is required");
            return;
        }
        const auto raw = req.get_param_value("actor");
        const auto actor = parse_actor_class(raw);
        if (!actor) {
            send_error(res, 422, "UNKNOWN_ID", "unknown actor class '" + raw + "'", "actor");
            return;
        }
        try {
            send_json(res, actor_path_json(*flow, actor_path(*flow, *actor)));
        } catch (const UnknownActor& e) {
            send_error(res, 422, "UNKNOWN_ID", e.what(), "actor");
        }
    });

    if (options_.ui_dir) {
        server.set_mount_point("/ui", *options_.ui_dir);
    }

    if (options_.allow_origin) {
        const std::string origin = *options_.allow_origin;
        server.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
        server.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
            res.set_header("Access-Control-Allow-Origin", origin);
            res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
            res.set_header("Vary", "Origin");
        });
    }

    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty()) {
            return httplib::Server::HandlerResponse::Unhandled;
        }
        if (res.status == 404) {
            send_error(res, 404, "BAD_REQUEST", "no route for " + req.method + " " + req.path);
        } else {
            send_error(res, res.status, "BAD_REQUEST", "request failed");
        }
        return httplib::Server::HandlerResponse::Handled;
    });

    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string message = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            message = e.what();
        } catch (...) {
        }
        send_error(res, 500, "BAD_REQUEST", message);
    });
}

bool serve(std::shared_ptr<const Workspace> workspace, const ServiceOptions& options) {
    httplib::Server server;
    Service service(std::move(workspace), options);
    service.attach(server);
    return server.listen(options.host, options.port);
}

}  // namespace ragrisk
