#include "ragrisk/pyramid.hpp"

#include <algorithm>

#include "ragrisk/risk.hpp"

namespace ragrisk {

int layer_rank(PyramidLayer layer) { return static_cast<int>(layer); }

std::vector<ControlPriority> prioritize(std::span<const Control> controls, std::span<const ThreatScenario> threats) {
    std::vector<Rational> inherent;
    inherent.reserve(threats.size());
    for (const auto& threat : threats) {
        inherent.push_back(assess(threat, std::span<const Control>{}).severity_score);
    }

    std::vector<ControlPriority> out;
    out.reserve(controls.size());
    for (const auto& control : controls) {
        ControlPriority p;
        p.control_id = control.id;
        if (!control.layers.empty()) {
            p.top_layer = *control.layers.rbegin();
            p.top_layer_rank = layer_rank(p.top_layer);
        } else {
            p.top_layer_rank = 0;
        }
        for (std::size_t i = 0; i < threats.size(); ++i) {
            p.severity_reduction += inherent[i] - assess(threats[i], std::span<const Control>(&control, 1)).severity_score;
        }
        out.push_back(std::move(p));
    }

    std::sort(out.begin(), out.end(), [](const ControlPriority& a, const ControlPriority& b) {
        if (a.top_layer_rank != b.top_layer_rank) {
            return a.top_layer_rank > b.top_layer_rank;
        }
        if (a.severity_reduction != b.severity_reduction) {
            return a.severity_reduction > b.severity_reduction;
        }
        return a.control_id < b.control_id;
    });
    return out;
}

std::vector<CoverageRow> coverage_matrix(std::span<const Control> controls) {
    std::vector<CoverageRow> rows;
    for (auto layer : kLayersTopDown) {
        CoverageRow row{layer, {}};
        for (const auto& control : controls) {
            if (control.layers.count(layer)) {
                row.control_ids.push_back(control.id);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ragrisk
