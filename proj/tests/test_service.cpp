#include <gtest/gtest.h>

#include <httplib.h>

#include <json.hpp>
#include <sstream>
#include <thread>

#include "ragrisk/cli.hpp"
#include "ragrisk/service.hpp"
#include "support.hpp"

using namespace ragrisk;
using json = nlohmann::json;

namespace {

/// In-process server on an ephemeral port, stopped on destruction.
class LiveServer {
public:
    explicit LiveServer(ServiceOptions options = {}) {
        auto ws = std::make_shared<const Workspace>(test::bundled());
        Service(ws, std::move(options)).attach(server_);
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~LiveServer() {
        server_.stop();
        thread_.join();
    }

    httplib::Client client() const {
        httplib::Client c("127.0.0.1", port_);
        c.set_connection_timeout(5);
        return c;
    }

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

LiveServer& shared_server() {
    static LiveServer server;
    return server;
}

httplib::Result post_assess(const std::string& body) {
    return shared_server().client().Post("/api/v1/assess", body, "application/json");
}

std::vector<std::string> all_ids() {
    std::vector<std::string> ids;
    for (const auto& c : test::bundled().controls) {
        ids.push_back(c.id);
    }
    return ids;
}

std::string cli_out(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    EXPECT_EQ(cli::run(args, out, err), 0) << err.str();
    return out.str();
}

}  // namespace

TEST(Service, Healthz) {
    const auto r = shared_server().client().Get("/healthz");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
    EXPECT_EQ(r->body, "ok");
}

TEST(Service, WorkspaceSummary) {
    const auto r = shared_server().client().Get("/api/v1/workspace");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
    EXPECT_EQ(r->get_header_value("Content-Type"), "application/json; charset=utf-8");
    const auto doc = json::parse(r->body);
    EXPECT_EQ(doc["threats"].size(), 2u);
    EXPECT_GE(doc["controls"].size(), 7u);
    EXPECT_EQ(doc["controls"][1]["id"], "adversarial_training");
    EXPECT_EQ(doc["controls"][1]["layers"][0], "ttps");
}

TEST(Service, UnknownRouteIsJson404) {
    const auto r = shared_server().client().Get("/api/v1/nope");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 404);
    EXPECT_EQ(json::parse(r->body)["error"]["code"], "BAD_REQUEST");
}

TEST(Service, AssessNoControlsGivesInherent) {
    const auto r = post_assess(R"({"controls": []})");
    ASSERT_TRUE(r);
    ASSERT_EQ(r->status, 200);
    const auto doc = json::parse(r->body)["assessments"];
    ASSERT_EQ(doc.size(), 2u);
    EXPECT_EQ(doc[0]["severity_score"]["display"], "19.50");
    EXPECT_EQ(doc[0]["severity_score"]["exact"], json({{"num", 39}, {"den", 2}}));
    EXPECT_EQ(doc[1]["severity_score"]["display"], "19.88");
    EXPECT_EQ(doc[1]["severity_score"]["exact"], json({{"num", 159}, {"den", 8}}));
}

TEST(Service, AssessAllControls) {
    const auto r = post_assess(json({{"controls", all_ids()}}).dump());
    ASSERT_TRUE(r);
    ASSERT_EQ(r->status, 200);
    const auto doc = json::parse(r->body)["assessments"];
    EXPECT_EQ(doc[0]["severity_score"]["display"], "10.41");
    EXPECT_EQ(doc[1]["severity_score"]["display"], "6.94");
    EXPECT_EQ(doc[1]["severity_label"], "Low");
}

TEST(Service, AssessUnknownIdIs422) {
    const auto r = post_assess(R"({"controls": ["data_governance", "bogus"]})");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 422);
    const auto err = json::parse(r->body)["error"];
    EXPECT_EQ(err["code"], "UNKNOWN_ID");
    EXPECT_NE(err["message"].get<std::string>().find("bogus"), std::string::npos);
    EXPECT_EQ(err["path"], "/controls/1");
}

TEST(Service, AssessMalformedBodies) {
    const auto bad_json = post_assess("{controls: ");
    ASSERT_TRUE(bad_json);
    EXPECT_EQ(bad_json->status, 400);
    EXPECT_EQ(json::parse(bad_json->body)["error"]["code"], "PARSE");
    for (const char* body : {R"([])", R"({"controls": "all"})", R"({"controls": [1]})", R"({"controls": [], "x": 1})"}) {
        const auto r = post_assess(body);
        ASSERT_TRUE(r);
        EXPECT_EQ(r->status, 400) << body;
        EXPECT_EQ(json::parse(r->body)["error"]["code"], "SCHEMA") << body;
    }
}

TEST(Service, AssessMatchesCliForManyControlSets) {
    const auto ids = all_ids();
    // every prefix of the catalog
    for (std::size_t n = 0; n <= ids.size(); ++n) {
        std::vector<std::string> subset(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n));
        std::string joined;
        for (const auto& id : subset) {
            joined += (joined.empty() ? "" : ",") + id;
        }
        const auto cli = json::parse(cli_out({"assess", test::bundled_dir().string(), "--controls",
                                              n == 0 ? "none" : joined, "--format", "json"}));
        const auto r = post_assess(json({{"controls", subset}}).dump());
        ASSERT_TRUE(r);
        // nlohmann::json sorts object keys, which normalises key order
        EXPECT_EQ(json::parse(r->body).dump(), cli.dump()) << n;
    }
}

TEST(Service, PyramidMirrorsCliPrioritize) {
    const auto r = shared_server().client().Get("/api/v1/pyramid");
    ASSERT_TRUE(r);
    const auto doc = json::parse(r->body);
    EXPECT_EQ(doc["priorities"][0]["control_id"], "adversarial_training");
    EXPECT_EQ(doc["coverage"].size(), 6u);
    const auto cli = json::parse(cli_out({"prioritize", test::bundled_dir().string(), "--format", "json"}));
    EXPECT_EQ(doc["priorities"], cli["priorities"]);
}

TEST(Service, GraphDotEqualsCli) {
    const auto r = shared_server().client().Get("/api/v1/graph.dot");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
    EXPECT_EQ(r->get_header_value("Content-Type").rfind("text/plain", 0), 0u);
    EXPECT_EQ(r->body, cli_out({"graph", test::bundled_dir().string()}));
}

TEST(Service, FlowsPerActor) {
    auto c = shared_server().client();
    const auto insider = c.Get("/api/v1/flows/poison_flow?actor=insider");
    ASSERT_TRUE(insider);
    ASSERT_EQ(insider->status, 200);
    const auto in = json::parse(insider->body);
    EXPECT_EQ(in["entry_index"], 6);
    EXPECT_EQ(in["skipped_count"], 5);
    EXPECT_EQ(in["steps"][4]["skipped"], true);
    EXPECT_EQ(in["steps"][5]["skipped"], false);
    EXPECT_EQ(in["steps"][5]["technique"], "AML.T0070");

    const auto external = c.Get("/api/v1/flows/poison_flow?actor=external");
    ASSERT_TRUE(external);
    EXPECT_EQ(json::parse(external->body)["entry_index"], 1);
}

TEST(Service, FlowErrors) {
    auto c = shared_server().client();
    const auto missing = c.Get("/api/v1/flows/no_such_flow?actor=insider");
    ASSERT_TRUE(missing);
    EXPECT_EQ(missing->status, 404);
    EXPECT_EQ(json::parse(missing->body)["error"]["code"], "UNKNOWN_ID");

    const auto bad_actor = c.Get("/api/v1/flows/poison_flow?actor=martian");
    ASSERT_TRUE(bad_actor);
    EXPECT_EQ(bad_actor->status, 422);

    const auto no_actor = c.Get("/api/v1/flows/poison_flow");
    ASSERT_TRUE(no_actor);
    EXPECT_EQ(no_actor->status, 400);
}

TEST(Service, RepeatedRequestsAreIdentical) {
    auto c = shared_server().client();
    for (const char* path : {"/api/v1/workspace", "/api/v1/pyramid", "/api/v1/graph.dot",
                             "/api/v1/flows/disclosure_flow?actor=insider"}) {
        const auto a = c.Get(path);
        const auto b = c.Get(path);
        ASSERT_TRUE(a && b);
        EXPECT_EQ(a->body, b->body) << path;
    }
}

TEST(Service, ConcurrentAssessRequests) {
    const auto expected = post_assess(json({{"controls", all_ids()}}).dump())->body;
    std::vector<std::thread> threads;
    std::vector<std::string> bodies(8);
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        threads.emplace_back([&, i] {
            auto r = post_assess(json({{"controls", all_ids()}}).dump());
            bodies[i] = r ? r->body : "";
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    for (const auto& b : bodies) {
        EXPECT_EQ(b, expected);
    }
}

TEST(Service, CorsHeadersWhenOriginConfigured) {
    ServiceOptions opts;
    opts.allow_origin = "http://localhost:5173";
    LiveServer server(opts);
    auto c = server.client();
    const auto r = c.Get("/api/v1/workspace");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "http://localhost:5173");
    const auto pre = c.Options("/api/v1/assess");
    ASSERT_TRUE(pre);
    EXPECT_EQ(pre->status, 204);
    EXPECT_NE(pre->get_header_value("Access-Control-Allow-Methods").find("POST"), std::string::npos);

    const auto plain = shared_server().client().Get("/api/v1/workspace");
    EXPECT_FALSE(plain->has_header("Access-Control-Allow-Origin"));
}
