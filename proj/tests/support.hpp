#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ragrisk/catalog_io.hpp"
#include "ragrisk/model.hpp"

namespace ragrisk::test {

inline std::filesystem::path source_dir() { return RAGRISK_SOURCE_DIR; }
inline std::filesystem::path bundled_dir() { return source_dir() / "data" / "rag-enterprise"; }
inline std::filesystem::path fixture_dir(const std::string& name) { return source_dir() / "tests" / "fixtures" / name; }
inline std::filesystem::path golden_path(const std::string& name) { return source_dir() / "tests" / "golden" / name; }

inline const Workspace& bundled() {
    static const Workspace ws = load_workspace(bundled_dir());
    return ws;
}

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("ragrisk-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// Copies the bundled catalogs into `dir`.
inline void copy_bundled(const std::filesystem::path& dir) {
    for (const char* f : {"model.yaml", "threats.yaml", "controls.yaml"}) {
        std::filesystem::copy_file(bundled_dir() / f, dir / f);
    }
}

// ---------------------------------------------------------------------------
// Random valid workspaces
// ---------------------------------------------------------------------------

class WorkspaceGenerator {
public:
    explicit WorkspaceGenerator(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return uniform(0, 1) == 1; }
    std::mt19937_64& rng() { return rng_; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
    }

    /// Free text, including characters that need quoting in YAML and JSON.
    std::string text() {
        static const std::vector<std::string> pieces = {
            "alpha", "Vector store", "ü", "日本語", "\"quoted\"", "a: b", "- dash", "#hash", "50%", "tab\there",
            "back\\slash", "{brace}", "[list]", "yes", "null", "0123", "~", "emoji 🙂", "*star", "&amp", "line\nbreak",
        };
        std::string out = pick(pieces);
        const int extra = uniform(0, 2);
        for (int i = 0; i < extra; ++i) {
            out += " " + pick(pieces);
        }
        return out;
    }

    LikelihoodFactors likelihood() {
        LikelihoodFactors f;
        for (auto& v : f.values) {
            v = uniform(kFactorMin, kFactorMax);
        }
        return f;
    }

    ImpactFactors impact() {
        ImpactFactors f;
        for (auto& v : f.values) {
            v = uniform(kFactorMin, kFactorMax);
        }
        return f;
    }

    /// A control with distinct adjustment factors and deltas in [lo, hi].
    Control control(const std::string& id, int lo = -kMaxDeltaMagnitude, int hi = kMaxDeltaMagnitude) {
        Control c;
        c.id = id;
        c.name = text();
        c.description = text();
        const int layer_count = uniform(1, 3);
        for (int i = 0; i < layer_count; ++i) {
            c.layers.insert(static_cast<PyramidLayer>(uniform(1, 6)));
        }
        std::vector<int> factors(16);
        for (int i = 0; i < 16; ++i) {
            factors[static_cast<std::size_t>(i)] = i;
        }
        std::shuffle(factors.begin(), factors.end(), rng_);
        const int count = uniform(0, 6);
        for (int i = 0; i < count; ++i) {
            c.adjustments.push_back({static_cast<Factor>(factors[static_cast<std::size_t>(i)]), uniform(lo, hi)});
        }
        return c;
    }

    Workspace workspace() {
        Workspace ws;
        ws.meta.title = text();
        ws.model.id = "model-" + std::to_string(uniform(0, 999));
        ws.model.name = text();

        const int n_components = uniform(1, 8);
        std::vector<std::string> component_ids;
        for (int i = 0; i < n_components; ++i) {
            Component c{"c" + std::to_string(i), text(), static_cast<ComponentKind>(uniform(0, 9)),
                        static_cast<Exposure>(uniform(0, 2))};
            component_ids.push_back(c.id);
            ws.model.components.push_back(std::move(c));
        }
        const int n_flows = uniform(0, 10);
        for (int i = 0; i < n_flows; ++i) {
            DataFlow f{"df" + std::to_string(i), pick(component_ids), pick(component_ids), text()};
            f.loopback = f.from == f.to;
            ws.model.data_flows.push_back(std::move(f));
        }
        const int n_boundaries = uniform(0, 3);
        for (int i = 0; i < n_boundaries; ++i) {
            TrustBoundary b{"tb" + std::to_string(i), text(), {}};
            auto ids = component_ids;
            std::shuffle(ids.begin(), ids.end(), rng_);
            ids.resize(static_cast<std::size_t>(uniform(1, static_cast<int>(ids.size()))));
            b.members = ids;
            ws.model.trust_boundaries.push_back(std::move(b));
        }

        static const std::vector<std::string> atlas = {"AML.T0000", "AML.T0003", "AML.T0024.000", "AML.T0051.000",
                                                       "AML.T0070", "AML.T0018.000"};
        static const std::vector<std::string> owasp = {"LLM01", "LLM02", "LLM04", "LLM08"};
        int flow_counter = 0;
        const int n_threats = uniform(0, 4);
        for (int t = 0; t < n_threats; ++t) {
            ThreatScenario threat;
            threat.id = "threat_" + std::to_string(t);
            threat.name = text();
            auto a = atlas;
            std::shuffle(a.begin(), a.end(), rng_);
            const int n_atlas = uniform(1, 3);
            for (int i = 0; i < n_atlas; ++i) {
                threat.techniques.push_back({Framework::ATLAS, a[static_cast<std::size_t>(i)], text()});
            }
            if (coin()) {
                threat.techniques.push_back({Framework::OWASP_LLM, pick(owasp), text()});
            }
            const int n_weak = uniform(0, 2);
            for (int i = 0; i < n_weak; ++i) {
                WeaknessRef w{"CWE-" + std::to_string(uniform(1, 1500)), text(), std::nullopt};
                if (coin()) {
                    w.note = text();
                }
                threat.weaknesses.push_back(std::move(w));
            }
            const int n_targets = uniform(0, 3);
            for (int i = 0; i < n_targets; ++i) {
                threat.targets.push_back(pick(component_ids));
            }
            threat.inherent_likelihood = likelihood();
            threat.inherent_impact = impact();
            const int n_attack_flows = uniform(0, 2);
            for (int f = 0; f < n_attack_flows; ++f) {
                AttackFlow flow;
                flow.id = "flow_" + std::to_string(flow_counter++);
                const int n_steps = uniform(1, 6);
                for (int s = 1; s <= n_steps; ++s) {
                    FlowStep step{s, text(), std::nullopt, std::nullopt};
                    if (coin()) {
                        step.technique = pick(threat.techniques).technique_id;
                    }
                    if (coin()) {
                        step.target = pick(component_ids);
                    }
                    flow.steps.push_back(std::move(step));
                }
                for (int actor = 0; actor < 3; ++actor) {
                    if (coin()) {
                        flow.entry_points[static_cast<ActorClass>(actor)] = uniform(1, n_steps);
                    }
                }
                threat.flows.push_back(std::move(flow));
            }
            ws.threats.push_back(std::move(threat));
        }

        const int n_controls = uniform(0, 6);
        for (int i = 0; i < n_controls; ++i) {
            ws.controls.push_back(control("ctl_" + std::to_string(i)));
        }
        return ws;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace ragrisk::test
