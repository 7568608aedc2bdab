#include "ragrisk/catalog_io.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <initializer_list>
#include <limits>
#include <json.hpp>
#include <regex>
#include <set>
#include <sstream>

namespace ragrisk {

namespace fs = std::filesystem;
using nlohmann::json;

std::string SourceLocation::to_string() const {
    std::ostringstream os;
    os << file.generic_string();
    if (line > 0) {
        os << ':' << line << ':' << column;
    }
    if (!pointer.empty()) {
        os << ": " << pointer;
    }
    return os.str();
}

ParseError::ParseError(SourceLocation location, const std::string& message)
    : CatalogError(location.to_string() + ": " + message), location_(std::move(location)) {}

SchemaError::SchemaError(SourceLocation location, const std::string& message)
    : CatalogError(location.to_string() + ": " + message), location_(std::move(location)) {}

namespace {

std::string describe_findings(const std::vector<Finding>& findings) {
    std::string out = std::to_string(findings.size()) + " validation finding(s)";
    for (const auto& f : findings) {
        out += "\n  " + f.code + " " + f.document + ":" + f.pointer + ": " + f.message;
    }
    return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Finding> findings)
    : CatalogError(describe_findings(findings)), findings_(std::move(findings)) {}

namespace {

// ---------------------------------------------------------------------------
// Reading
// ---------------------------------------------------------------------------

std::string child(const std::string& pointer, std::string_view key) { return pointer + "/" + std::string(key); }
std::string child(const std::string& pointer, std::size_t index) { return pointer + "/" + std::to_string(index); }

/// Strict, located access to one parsed catalog document.
class DocReader {
public:
    DocReader(fs::path file, YAML::Node root) : file_(std::move(file)), root_(std::move(root)) {}

    const YAML::Node& root() const { return root_; }

    [[noreturn]] void fail(const YAML::Node& node, const std::string& pointer, const std::string& message) const {
        SourceLocation loc{file_, 0, 0, pointer.empty() ? "/" : pointer};
        const auto mark = node.Mark();
        if (mark.line >= 0) {
            loc.line = mark.line + 1;
            loc.column = mark.column + 1;
        }
        throw SchemaError(std::move(loc), message);
    }

    void expect_map(const YAML::Node& node, const std::string& pointer) const {
        if (!node.IsMap()) {
            fail(node, pointer, "expected a mapping");
        }
    }

    /// Rejects unknown and duplicate keys, and requires every key in `required`.
    void check_keys(const YAML::Node& map, const std::string& pointer, std::initializer_list<std::string_view> required,
                    std::initializer_list<std::string_view> optional = {}) const {
        expect_map(map, pointer);
        std::set<std::string> seen;
        for (auto it = map.begin(); it != map.end(); ++it) {
            const YAML::Node& key = it->first;
            if (!key.IsScalar()) {
                fail(key, pointer, "mapping keys must be plain text");
            }
            const auto name = key.Scalar();
            const auto known = [&](std::initializer_list<std::string_view> keys) {
                for (auto k : keys) {
                    if (k == name) {
                        return true;
                    }
                }
                return false;
            };
            if (!known(required) && !known(optional)) {
                std::string allowed;
                for (auto k : required) {
                    allowed += (allowed.empty() ? "" : ", ") + std::string(k);
                }
                for (auto k : optional) {
                    allowed += (allowed.empty() ? "" : ", ") + std::string(k);
                }
                fail(key, child(pointer, name), "unknown key '" + name + "' (allowed: " + allowed + ")");
            }
            if (!seen.insert(name).second) {
                fail(key, child(pointer, name), "duplicate key '" + name + "'");
            }
        }
        for (auto k : required) {
            if (!seen.count(std::string(k))) {
                fail(map, pointer, "missing required key '" + std::string(k) + "'");
            }
        }
    }

    std::string text(const YAML::Node& node, const std::string& pointer) const {
        if (!node.IsScalar()) {
            fail(node, pointer, "expected text");
        }
        return node.Scalar();
    }

    std::string text(const YAML::Node& map, std::string_view key, const std::string& pointer) const {
        return text(map[std::string(key)], child(pointer, key));
    }

    std::optional<std::string> optional_text(const YAML::Node& map, std::string_view key,
                                             const std::string& pointer) const {
        const YAML::Node node = map[std::string(key)];
        if (!node.IsDefined()) {
            return std::nullopt;
        }
        return text(node, child(pointer, key));
    }

    int integer(const YAML::Node& node, const std::string& pointer) const {
        static const std::regex pattern(R"(-?[0-9]{1,9})");
        // quoted scalars carry the "!" tag; only plain scalars are numbers
        if (!node.IsScalar() || node.Tag() == "!" || !std::regex_match(node.Scalar(), pattern)) {
            fail(node, pointer, "expected an integer");
        }
        return std::stoi(node.Scalar());
    }

    int integer_in_range(const YAML::Node& node, const std::string& pointer, int lo, int hi) const {
        const int v = integer(node, pointer);
        if (v < lo || v > hi) {
            fail(node, pointer,
                 "value " + std::to_string(v) + " is outside the legal range " + std::to_string(lo) + "-" +
                     std::to_string(hi));
        }
        return v;
    }

    bool boolean(const YAML::Node& node, const std::string& pointer) const {
        if (node.IsScalar() && node.Tag() != "!") {
            if (node.Scalar() == "true") {
                return true;
            }
            if (node.Scalar() == "false") {
                return false;
            }
        }
        fail(node, pointer, "expected true or false");
    }

    YAML::Node sequence(const YAML::Node& map, std::string_view key, const std::string& pointer,
                        bool required = true) const {
        const YAML::Node node = map[std::string(key)];
        if (!node.IsDefined()) {
            if (required) {
                fail(map, pointer, "missing required key '" + std::string(key) + "'");
            }
            return YAML::Node(YAML::NodeType::Sequence);
        }
        if (!node.IsSequence()) {
            fail(node, child(pointer, key), "expected a list");
        }
        return node;
    }

    std::vector<std::string> text_list(const YAML::Node& map, std::string_view key, const std::string& pointer) const {
        const auto seq = sequence(map, key, pointer);
        std::vector<std::string> out;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            out.push_back(text(seq[i], child(child(pointer, key), i)));
        }
        return out;
    }

    template <typename E>
    E enumerated(const YAML::Node& node, const std::string& pointer, std::optional<E> (*parse)(std::string_view),
                 std::string_view what) const {
        const auto raw = text(node, pointer);
        const auto v = parse(raw);
        if (!v) {
            fail(node, pointer, "'" + raw + "' is not a valid " + std::string(what));
        }
        return *v;
    }

    void schema_version(const std::string& pointer = "") const {
        const YAML::Node node = root_["schema_version"];
        if (!node.IsDefined()) {
            fail(root_, pointer, "missing required key 'schema_version'");
        }
        const auto version = text(node, "/schema_version");
        if (version != kSchemaVersion) {
            fail(node, "/schema_version",
                 "unsupported schema_version '" + version + "' (expected '" + std::string(kSchemaVersion) + "')");
        }
    }

private:
    fs::path file_;
    YAML::Node root_;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(SourceLocation{path, 0, 0, ""}, "cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SourceLocation location_of_offset(const fs::path& file, const std::string& text, std::size_t byte_offset) {
    SourceLocation loc{file, 1, 1, ""};
    for (std::size_t i = 0; i < byte_offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++loc.line;
            loc.column = 1;
        } else {
            ++loc.column;
        }
    }
    return loc;
}

DocReader parse_document(const fs::path& path) {
    const std::string text = read_file(path);
    if (path.extension() == ".json") {
        try {
            [[maybe_unused]] const auto syntax_check = json::parse(text);
        } catch (const json::parse_error& e) {
            // e.byte is the 1-based offset of the offending character
            const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
            throw ParseError(location_of_offset(path, text, offset), "invalid JSON: " + std::string(e.what()));
        }
    }
    try {
        YAML::Node root = YAML::Load(text);
        if (!root.IsMap()) {
            throw SchemaError(SourceLocation{path, 1, 1, "/"}, "expected a mapping at the document root");
        }
        return DocReader(path, std::move(root));
    } catch (const YAML::ParserException& e) {
        throw ParseError(SourceLocation{path, e.mark.line + 1, e.mark.column + 1, ""}, "invalid YAML: " + e.msg);
    }
}

template <FactorGroup G>
FactorVector<G> read_factors(const DocReader& r, const YAML::Node& map, const std::string& pointer) {
    r.check_keys(map, pointer,
                 {to_string(factor_at(G, 0)), to_string(factor_at(G, 1)), to_string(factor_at(G, 2)),
                  to_string(factor_at(G, 3)), to_string(factor_at(G, 4)), to_string(factor_at(G, 5)),
                  to_string(factor_at(G, 6)), to_string(factor_at(G, 7))});
    FactorVector<G> out;
    for (std::size_t slot = 0; slot < kFactorsPerGroup; ++slot) {
        const std::string name(to_string(factor_at(G, slot)));
        out.values[slot] = r.integer_in_range(map[name], child(pointer, name), kFactorMin, kFactorMax);
    }
    return out;
}

void read_model(const DocReader& r, Workspace& ws) {
    const auto& root = r.root();
    r.check_keys(root, "", {"schema_version", "title", "id", "name", "components"},
                 {"data_flows", "trust_boundaries"});
    r.schema_version();
    ws.meta.schema_version = std::string(kSchemaVersion);
    ws.meta.title = r.text(root, "title", "");
    ws.model.id = r.text(root, "id", "");
    ws.model.name = r.text(root, "name", "");

    const auto components = r.sequence(root, "components", "");
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto p = child("/components", i);
        const YAML::Node n = components[i];
        r.check_keys(n, p, {"id", "name", "kind", "exposure"});
        ws.model.components.push_back(Component{
            r.text(n, "id", p),
            r.text(n, "name", p),
            r.enumerated<ComponentKind>(n["kind"], child(p, "kind"), parse_component_kind, "component kind"),
            r.enumerated<Exposure>(n["exposure"], child(p, "exposure"), parse_exposure, "exposure"),
        });
    }

    const auto flows = r.sequence(root, "data_flows", "", false);
    for (std::size_t i = 0; i < flows.size(); ++i) {
        const auto p = child("/data_flows", i);
        const YAML::Node n = flows[i];
        r.check_keys(n, p, {"id", "from", "to", "data_kind"}, {"loopback"});
        DataFlow flow{r.text(n, "id", p), r.text(n, "from", p), r.text(n, "to", p), r.text(n, "data_kind", p)};
        if (n["loopback"].IsDefined()) {
            flow.loopback = r.boolean(n["loopback"], child(p, "loopback"));
        }
        ws.model.data_flows.push_back(std::move(flow));
    }

    const auto boundaries = r.sequence(root, "trust_boundaries", "", false);
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        const auto p = child("/trust_boundaries", i);
        const YAML::Node n = boundaries[i];
        r.check_keys(n, p, {"id", "name", "members"});
        ws.model.trust_boundaries.push_back(
            TrustBoundary{r.text(n, "id", p), r.text(n, "name", p), r.text_list(n, "members", p)});
    }
}

TechniqueRef read_technique(const DocReader& r, const YAML::Node& n, const std::string& p) {
    r.check_keys(n, p, {"framework", "id", "name"});
    return TechniqueRef{r.enumerated<Framework>(n["framework"], child(p, "framework"), parse_framework, "framework"),
                        r.text(n, "id", p), r.text(n, "name", p)};
}

AttackFlow read_flow(const DocReader& r, const YAML::Node& n, const std::string& p) {
    r.check_keys(n, p, {"id", "steps", "entry_points"});
    AttackFlow flow;
    flow.id = r.text(n, "id", p);
    const auto steps = r.sequence(n, "steps", p);
    for (std::size_t s = 0; s < steps.size(); ++s) {
        const auto sp = child(child(p, "steps"), s);
        const YAML::Node step = steps[s];
        r.check_keys(step, sp, {"index", "stage"}, {"technique", "target"});
        flow.steps.push_back(FlowStep{r.integer(step["index"], child(sp, "index")), r.text(step, "stage", sp),
                                      r.optional_text(step, "technique", sp), r.optional_text(step, "target", sp)});
    }
    const auto ep = child(p, "entry_points");
    const YAML::Node entries = n["entry_points"];
    r.expect_map(entries, ep);
    r.check_keys(entries, ep, {}, {"external", "insider", "unwitting_insider"});
    for (auto it = entries.begin(); it != entries.end(); ++it) {
        const auto actor = *parse_actor_class(it->first.Scalar());
        flow.entry_points[actor] = r.integer(it->second, child(ep, it->first.Scalar()));
    }
    return flow;
}

void read_threats(const DocReader& r, Workspace& ws) {
    const auto& root = r.root();
    r.check_keys(root, "", {"schema_version", "threats"});
    r.schema_version();
    const auto threats = r.sequence(root, "threats", "");
    for (std::size_t i = 0; i < threats.size(); ++i) {
        const auto p = child("/threats", i);
        const YAML::Node n = threats[i];
        r.check_keys(n, p, {"id", "name", "techniques", "targets", "likelihood", "impact"}, {"weaknesses", "flows"});
        ThreatScenario threat;
        threat.id = r.text(n, "id", p);
        threat.name = r.text(n, "name", p);

        const auto techniques = r.sequence(n, "techniques", p);
        for (std::size_t t = 0; t < techniques.size(); ++t) {
            threat.techniques.push_back(read_technique(r, techniques[t], child(child(p, "techniques"), t)));
        }
        const auto weaknesses = r.sequence(n, "weaknesses", p, false);
        for (std::size_t w = 0; w < weaknesses.size(); ++w) {
            const auto wp = child(child(p, "weaknesses"), w);
            const YAML::Node wn = weaknesses[w];
            r.check_keys(wn, wp, {"cwe_id", "title"}, {"note"});
            threat.weaknesses.push_back(
                WeaknessRef{r.text(wn, "cwe_id", wp), r.text(wn, "title", wp), r.optional_text(wn, "note", wp)});
        }
        threat.targets = r.text_list(n, "targets", p);
        threat.inherent_likelihood =
            read_factors<FactorGroup::likelihood>(r, n["likelihood"], child(p, "likelihood"));
        threat.inherent_impact = read_factors<FactorGroup::impact>(r, n["impact"], child(p, "impact"));

        const auto flows = r.sequence(n, "flows", p, false);
        for (std::size_t f = 0; f < flows.size(); ++f) {
            threat.flows.push_back(read_flow(r, flows[f], child(child(p, "flows"), f)));
        }
        ws.threats.push_back(std::move(threat));
    }
}

void read_controls(const DocReader& r, Workspace& ws) {
    const auto& root = r.root();
    r.check_keys(root, "", {"schema_version", "controls"});
    r.schema_version();
    const auto controls = r.sequence(root, "controls", "");
    for (std::size_t i = 0; i < controls.size(); ++i) {
        const auto p = child("/controls", i);
        const YAML::Node n = controls[i];
        r.check_keys(n, p, {"id", "name", "description", "layers"}, {"adjustments"});
        Control control;
        control.id = r.text(n, "id", p);
        control.name = r.text(n, "name", p);
        control.description = r.text(n, "description", p);

        const auto layers = r.sequence(n, "layers", p);
        for (std::size_t l = 0; l < layers.size(); ++l) {
            const auto lp = child(child(p, "layers"), l);
            const auto layer = r.enumerated<PyramidLayer>(layers[l], lp, parse_pyramid_layer, "pyramid layer");
            if (!control.layers.insert(layer).second) {
                r.fail(layers[l], lp, "layer '" + std::string(to_string(layer)) + "' listed twice");
            }
        }

        const auto adjustments = r.sequence(n, "adjustments", p, false);
        for (std::size_t a = 0; a < adjustments.size(); ++a) {
            const auto ap = child(child(p, "adjustments"), a);
            const YAML::Node an = adjustments[a];
            r.check_keys(an, ap, {"factor", "delta"});
            control.adjustments.push_back(FactorAdjustment{
                r.enumerated<Factor>(an["factor"], child(ap, "factor"), parse_factor, "factor name"),
                r.integer_in_range(an["delta"], child(ap, "delta"), -kMaxDeltaMagnitude, kMaxDeltaMagnitude),
            });
        }
        ws.controls.push_back(std::move(control));
    }
}

fs::path locate(const fs::path& dir, const char* stem, std::vector<std::string>& missing) {
    const auto yaml = dir / (std::string(stem) + ".yaml");
    const auto jsn = dir / (std::string(stem) + ".json");
    const bool has_yaml = fs::is_regular_file(yaml);
    const bool has_json = fs::is_regular_file(jsn);
    if (has_yaml && has_json) {
        throw ParseError(SourceLocation{dir, 0, 0, ""},
                         "both " + yaml.filename().string() + " and " + jsn.filename().string() +
                             " exist; keep exactly one");
    }
    if (!has_yaml && !has_json) {
        missing.push_back(std::string(stem) + ".yaml");
        return {};
    }
    return has_yaml ? yaml : jsn;
}

// ---------------------------------------------------------------------------
// Writing: one canonical JSON tree per document, emitted as JSON or YAML
// ---------------------------------------------------------------------------

template <FactorGroup G>
json factors_doc(const FactorVector<G>& v) {
    json out = json::object();
    for (std::size_t slot = 0; slot < kFactorsPerGroup; ++slot) {
        out[std::string(to_string(factor_at(G, slot)))] = v.values[slot];
    }
    return out;
}

json model_doc(const Workspace& ws) {
    json components = json::array();
    for (const auto& c : ws.model.components) {
        components.push_back({{"id", c.id},
                              {"name", c.name},
                              {"kind", to_string(c.kind)},
                              {"exposure", to_string(c.exposure)}});
    }
    json flows = json::array();
    for (const auto& f : ws.model.data_flows) {
        json flow = {{"id", f.id}, {"from", f.from}, {"to", f.to}, {"data_kind", f.data_kind}};
        if (f.loopback) {
            flow["loopback"] = true;
        }
        flows.push_back(std::move(flow));
    }
    json boundaries = json::array();
    for (const auto& b : ws.model.trust_boundaries) {
        boundaries.push_back({{"id", b.id}, {"name", b.name}, {"members", b.members}});
    }
    return {{"schema_version", ws.meta.schema_version},
            {"title", ws.meta.title},
            {"id", ws.model.id},
            {"name", ws.model.name},
            {"components", components},
            {"data_flows", flows},
            {"trust_boundaries", boundaries}};
}

json threats_doc(const Workspace& ws) {
    json threats = json::array();
    for (const auto& t : ws.threats) {
        json techniques = json::array();
        for (const auto& tech : t.techniques) {
            techniques.push_back(
                {{"framework", to_string(tech.framework)}, {"id", tech.technique_id}, {"name", tech.name}});
        }
        json weaknesses = json::array();
        for (const auto& w : t.weaknesses) {
            json weakness = {{"cwe_id", w.cwe_id}, {"title", w.title}};
            if (w.note) {
                weakness["note"] = *w.note;
            }
            weaknesses.push_back(std::move(weakness));
        }
        json flows = json::array();
        for (const auto& f : t.flows) {
            json steps = json::array();
            for (const auto& s : f.steps) {
                json step = {{"index", s.index}, {"stage", s.stage}};
                if (s.technique) {
                    step["technique"] = *s.technique;
                }
                if (s.target) {
                    step["target"] = *s.target;
                }
                steps.push_back(std::move(step));
            }
            json entries = json::object();
            for (const auto& [actor, index] : f.entry_points) {
                entries[std::string(to_string(actor))] = index;
            }
            flows.push_back({{"id", f.id}, {"steps", steps}, {"entry_points", entries}});
        }
        threats.push_back({{"id", t.id},
                           {"name", t.name},
                           {"techniques", techniques},
                           {"weaknesses", weaknesses},
                           {"targets", t.targets},
                           {"likelihood", factors_doc(t.inherent_likelihood)},
                           {"impact", factors_doc(t.inherent_impact)},
                           {"flows", flows}});
    }
    return {{"schema_version", ws.meta.schema_version}, {"threats", threats}};
}

json controls_doc(const Workspace& ws) {
    json controls = json::array();
    for (const auto& c : ws.controls) {
        json layers = json::array();
        for (auto it = c.layers.rbegin(); it != c.layers.rend(); ++it) {
            layers.push_back(to_string(*it));
        }
        json adjustments = json::array();
        for (const auto& a : c.adjustments) {
            adjustments.push_back({{"factor", to_string(a.factor)}, {"delta", a.delta}});
        }
        controls.push_back({{"id", c.id},
                            {"name", c.name},
                            {"description", c.description},
                            {"layers", layers},
                            {"adjustments", adjustments}});
    }
    return {{"schema_version", ws.meta.schema_version}, {"controls", controls}};
}

void emit_yaml(YAML::Emitter& out, const json& node) {
    switch (node.type()) {
        case json::value_t::object:
            if (node.empty()) {
                out << YAML::Flow << YAML::BeginMap << YAML::EndMap;
                return;
            }
            out << YAML::BeginMap;
            for (const auto& [key, value] : node.items()) {
                out << YAML::Key << key << YAML::Value;
                emit_yaml(out, value);
            }
            out << YAML::EndMap;
            return;
        case json::value_t::array:
            if (node.empty()) {
                out << YAML::Flow << YAML::BeginSeq << YAML::EndSeq;
                return;
            }
            out << YAML::BeginSeq;
            for (const auto& item : node) {
                emit_yaml(out, item);
            }
            out << YAML::EndSeq;
            return;
        case json::value_t::string:
            out << YAML::DoubleQuoted << node.get<std::string>();
            return;
        case json::value_t::boolean:
            out << node.get<bool>();
            return;
        case json::value_t::number_integer:
        case json::value_t::number_unsigned:
            out << node.get<std::int64_t>();
            return;
        default:
            throw std::logic_error("unsupported value in catalog document");
    }
}

std::string render(const json& doc, Syntax syntax) {
    if (syntax == Syntax::json) {
        return doc.dump(2) + "\n";
    }
    YAML::Emitter out;
    out.SetIndent(2);
    emit_yaml(out, doc);
    return std::string(out.c_str()) + "\n";
}

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    os << contents;
    if (!os.flush()) {
        throw IoError("failed writing " + path.string());
    }
}

}  // namespace

Workspace parse_workspace(const fs::path& root_dir) {
    std::vector<std::string> missing;
    fs::path files[3];
    const char* stems[3] = {kModelFile, kThreatsFile, kControlsFile};
    for (int i = 0; i < 3; ++i) {
        files[i] = locate(root_dir, stems[i], missing);
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) {
            list += (list.empty() ? "" : ", ") + m;
        }
        throw ParseError(SourceLocation{root_dir, 0, 0, ""},
                         "missing required catalog file(s): " + list + " (.json accepted instead of .yaml)");
    }

    Workspace ws;
    read_model(parse_document(files[0]), ws);
    read_threats(parse_document(files[1]), ws);
    read_controls(parse_document(files[2]), ws);
    return ws;
}

Workspace load_workspace(const fs::path& root_dir) {
    Workspace ws = parse_workspace(root_dir);
    auto findings = validate_workspace(ws);
    if (!findings.empty()) {
        throw ValidationError(std::move(findings));
    }
    return ws;
}

std::string render_model(const Workspace& ws, Syntax syntax) { return render(model_doc(ws), syntax); }
std::string render_threats(const Workspace& ws, Syntax syntax) { return render(threats_doc(ws), syntax); }
std::string render_controls(const Workspace& ws, Syntax syntax) { return render(controls_doc(ws), syntax); }

void save_workspace(const Workspace& ws, const fs::path& root_dir, Syntax syntax) {
    const std::string ext = syntax == Syntax::yaml ? ".yaml" : ".json";
    const std::string other = syntax == Syntax::yaml ? ".json" : ".yaml";
    std::error_code ec;
    fs::create_directories(root_dir, ec);
    if (ec) {
        throw IoError("cannot create " + root_dir.string() + ": " + ec.message());
    }
    for (const char* stem : {kModelFile, kThreatsFile, kControlsFile}) {
        if (fs::exists(root_dir / (std::string(stem) + other))) {
            throw IoError("refusing to write " + std::string(stem) + ext + " next to existing " + stem + other);
        }
    }
    write_file(root_dir / (std::string(kModelFile) + ext), render_model(ws, syntax));
    write_file(root_dir / (std::string(kThreatsFile) + ext), render_threats(ws, syntax));
    write_file(root_dir / (std::string(kControlsFile) + ext), render_controls(ws, syntax));
}

}  // namespace ragrisk
