#include "ragrisk/attack_flow.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

namespace ragrisk {

UnknownActor::UnknownActor(ActorClass actor, const std::string& flow_id)
    : std::runtime_error("flow '" + flow_id + "' has no entry point for actor '" + std::string(to_string(actor)) +
                         "'"),
      actor_(actor) {}

ActorPath actor_path(const AttackFlow& flow, ActorClass actor) {
    auto it = flow.entry_points.find(actor);
    if (it == flow.entry_points.end() && actor == ActorClass::unwitting_insider) {
        it = flow.entry_points.find(ActorClass::insider);
    }
    if (it == flow.entry_points.end()) {
        throw UnknownActor(actor, flow.id);
    }
    const int entry = it->second;
    if (entry < 1 || entry > static_cast<int>(flow.steps.size())) {
        throw std::out_of_range("entry point " + std::to_string(entry) + " outside flow '" + flow.id + "'");
    }

    ActorPath path;
    path.actor = actor;
    path.flow_id = flow.id;
    path.entry_index = entry;
    path.skipped_count = entry - 1;
    path.executed_steps.assign(flow.steps.begin() + (entry - 1), flow.steps.end());
    return path;
}

std::string actor_node_id(ActorClass actor) { return "actor:" + std::string(to_string(actor)); }

namespace {

std::string actor_label(ActorClass actor) {
    switch (actor) {
        case ActorClass::external:
            return "External actor";
        case ActorClass::insider:
            return "Insider";
        case ActorClass::unwitting_insider:
            return "Unwitting insider";
    }
    return "Actor";
}

std::string quote(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
            case '"':
                out += "\\\"";
                break;
            case '\\':
                out += "\\\\";
                break;
            case '\n':
                out += "\\n";
                break;
            case '\r':
                break;
            default:
                out += c;
        }
    }
    out += '"';
    return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (const auto& p : parts) {
        out += (out.empty() ? "" : sep) + p;
    }
    return out;
}

}  // namespace

SurfaceGraph build_surface_graph(const Workspace& ws) {
    SurfaceGraph g;
    g.name = ws.model.id;
    for (const auto& c : ws.model.components) {
        g.nodes.push_back(SurfaceNode{c.id, c.name, false});
    }
    for (const auto& f : ws.model.data_flows) {
        g.edges.push_back(SurfaceEdge{f.from, f.to, EdgeKind::data_flow, f.data_kind, {}, {}});
    }
    for (const auto& b : ws.model.trust_boundaries) {
        g.clusters.push_back(SurfaceCluster{b.id, b.name, b.members});
    }

    std::set<ActorClass> actors;
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (const auto& threat : ws.threats) {
        std::vector<std::string> technique_ids;
        for (const auto& t : threat.techniques) {
            technique_ids.push_back(t.technique_id);
        }
        for (const auto& flow : threat.flows) {
            for (const auto& [actor, index] : flow.entry_points) {
                actors.insert(actor);
                const auto path = actor_path(flow, actor);
                const auto& first = path.executed_steps.front();
                const std::vector<std::string> targets =
                    first.target ? std::vector<std::string>{*first.target} : threat.targets;
                const auto from = actor_node_id(actor);
                for (const auto& target : targets) {
                    if (!seen.emplace(from, target, threat.id).second) {
                        continue;
                    }
                    g.edges.push_back(SurfaceEdge{from, target, EdgeKind::threat_entry, join(technique_ids, ", "),
                                                  threat.id, technique_ids});
                }
            }
        }
    }
    for (auto actor : actors) {
        g.nodes.push_back(SurfaceNode{actor_node_id(actor), actor_label(actor), true});
    }
    return g;
}

std::string export_dot(const SurfaceGraph& g) {
    std::ostringstream os;
    os << "digraph " << quote(g.name) << " {\n";
    if (g.nodes.empty() && g.edges.empty()) {
        os << "}\n";
        return os.str();
    }
    os << "  graph [rankdir=LR, fontname=\"Helvetica\"];\n";
    os << "  node [shape=box, fontname=\"Helvetica\"];\n";
    os << "  edge [fontname=\"Helvetica\", fontsize=10];\n";

    auto node_line = [](const SurfaceNode& n) {
        std::string attrs = "label=" + quote(n.label);
        if (n.is_actor) {
            attrs += ", shape=ellipse, style=filled, fillcolor=\"#f4cccc\"";
        }
        return quote(n.id) + " [" + attrs + "];";
    };

    std::unordered_set<std::string> placed;
    for (const auto& cluster : g.clusters) {
        os << "  subgraph " << quote("cluster_" + cluster.id) << " {\n";
        os << "    label=" << quote(cluster.label) << ";\n";
        os << "    style=dashed;\n";
        for (const auto& member : cluster.members) {
            auto it = std::find_if(g.nodes.begin(), g.nodes.end(),
                                   [&](const SurfaceNode& n) { return n.id == member; });
            if (it != g.nodes.end() && placed.insert(member).second) {
                os << "    " << node_line(*it) << "\n";
            }
        }
        os << "  }\n";
    }
    for (const auto& n : g.nodes) {
        if (!placed.count(n.id)) {
            os << "  " << node_line(n) << "\n";
        }
    }
    for (const auto& e : g.edges) {
        os << "  " << quote(e.from) << " -> " << quote(e.to) << " [label=" << quote(e.label);
        if (e.kind == EdgeKind::threat_entry) {
            os << ", color=\"#cc0000\", fontcolor=\"#cc0000\", style=bold, tooltip=" << quote(e.threat_id);
        }
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace ragrisk
