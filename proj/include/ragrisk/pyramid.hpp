#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ragrisk/model.hpp"
#include "ragrisk/rational.hpp"

namespace ragrisk {

/// 1 (data_integrity) .. 6 (ttps); higher means more pain for the adversary.
int layer_rank(PyramidLayer layer);

struct ControlPriority {
    std::string control_id;
    PyramidLayer top_layer = PyramidLayer::data_integrity;
    int top_layer_rank = 1;
    /// Sum over threats of (inherent severity - severity with only this
    /// control enabled).
    Rational severity_reduction;

    friend bool operator==(const ControlPriority&, const ControlPriority&) = default;
};

/// Orders controls by (top layer rank desc, severity reduction desc, id asc).
/// Controls without layers rank below every layered control.
std::vector<ControlPriority> prioritize(std::span<const Control> controls, std::span<const ThreatScenario> threats);

struct CoverageRow {
    PyramidLayer layer;
    std::vector<std::string> control_ids;  // catalog order

    friend bool operator==(const CoverageRow&, const CoverageRow&) = default;
};

/// Six rows, top layer (ttps) first; a control appears in the row of every
/// layer it declares.
std::vector<CoverageRow> coverage_matrix(std::span<const Control> controls);

}  // namespace ragrisk
