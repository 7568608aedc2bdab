#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ragrisk/model.hpp"

namespace ragrisk {

/// Raised when neither the requested actor nor its fallback has an entry point.
class UnknownActor : public std::runtime_error {
public:
    UnknownActor(ActorClass actor, const std::string& flow_id);
    ActorClass actor() const { return actor_; }

private:
    ActorClass actor_;
};

struct ActorPath {
    ActorClass actor = ActorClass::external;
    std::string flow_id;
    int entry_index = 1;
    std::vector<FlowStep> executed_steps;
    int skipped_count = 0;  // entry_index - 1

    friend bool operator==(const ActorPath&, const ActorPath&) = default;
};

/// Steps an actor executes: from its entry point to the end of the flow. An
/// unwitting insider without its own entry point uses the insider's.
ActorPath actor_path(const AttackFlow& flow, ActorClass actor);

enum class EdgeKind { data_flow, threat_entry };

struct SurfaceNode {
    std::string id;     // component id, or "actor:<class>" for actors
    std::string label;
    bool is_actor = false;

    friend bool operator==(const SurfaceNode&, const SurfaceNode&) = default;
};

struct SurfaceEdge {
    std::string from;
    std::string to;
    EdgeKind kind = EdgeKind::data_flow;
    std::string label;                    // data kind for data flows
    std::string threat_id;                // threat entries only
    std::vector<std::string> techniques;  // threat entries only

    friend bool operator==(const SurfaceEdge&, const SurfaceEdge&) = default;
};

struct SurfaceCluster {
    std::string id;
    std::string label;
    std::vector<std::string> members;

    friend bool operator==(const SurfaceCluster&, const SurfaceCluster&) = default;
};

/// Architecture graph with adversary entry points overlaid.
struct SurfaceGraph {
    std::string name;
    std::vector<SurfaceNode> nodes;
    std::vector<SurfaceEdge> edges;
    std::vector<SurfaceCluster> clusters;

    friend bool operator==(const SurfaceGraph&, const SurfaceGraph&) = default;
};

std::string actor_node_id(ActorClass actor);

SurfaceGraph build_surface_graph(const Workspace& ws);

/// Graphviz DOT text. Trust boundaries become `subgraph cluster_*`; a
/// component in several boundaries is drawn in the first one declaring it.
std::string export_dot(const SurfaceGraph& g);

}  // namespace ragrisk
