#pragma once

#include <memory>
#include <optional>
#include <string>

#include "ragrisk/model.hpp"

namespace httplib {
class Server;
}

namespace ragrisk {

struct ServiceOptions {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::optional<std::string> allow_origin;  // CORS origin for the dashboard
    std::optional<std::string> ui_dir;        // static assets served under /ui/
};

/// Stateless JSON API over an immutable workspace snapshot.
///
/// Routes:
///   GET  /healthz
///   GET  /api/v1/workspace
///   POST /api/v1/assess          {"controls": [ids]}
///   GET  /api/v1/pyramid
///   GET  /api/v1/graph.dot
///   GET  /api/v1/flows/{id}?actor=<external|insider|unwitting_insider>
class Service {
public:
    Service(std::shared_ptr<const Workspace> workspace, ServiceOptions options);

    /// Installs every route and the JSON error handlers on `server`.
    void attach(httplib::Server& server) const;

    const ServiceOptions& options() const { return options_; }

private:
    std::shared_ptr<const Workspace> workspace_;
    ServiceOptions options_;
};

/// Builds a server for `workspace` and blocks in listen(). Returns false if
/// the socket could not be bound.
bool serve(std::shared_ptr<const Workspace> workspace, const ServiceOptions& options);

}  // namespace ragrisk
