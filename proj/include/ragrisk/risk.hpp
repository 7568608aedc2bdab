#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ragrisk/model.hpp"
#include "ragrisk/rational.hpp"

namespace ragrisk {

/// Three equal-width brackets over the [0, 9] factor scale:
/// LOW = [0, 3), MEDIUM = [3, 6), HIGH = [6, 9].
enum class SeverityBracket { LOW, MEDIUM, HIGH };

enum class SeverityLabel { Note, Low, Medium, High, Critical };

std::string_view to_string(SeverityBracket b);
std::string_view to_string(SeverityLabel l);

SeverityBracket bracket_of(const Rational& score);

/// Exact mean of the eight likelihood factors.
Rational likelihood_score(const LikelihoodFactors& f);

/// Exact mean of the eight impact factors (technical and business pooled).
Rational impact_score(const ImpactFactors& f);

/// likelihood x impact on unrounded inputs; lies in [0, 81].
Rational severity_score(const Rational& likelihood, const Rational& impact);

/// OWASP 3x3 matrix over the brackets of likelihood and impact.
SeverityLabel severity_label(const Rational& likelihood, const Rational& impact);

struct ResidualFactors {
    LikelihoodFactors likelihood;
    ImpactFactors impact;

    friend bool operator==(const ResidualFactors&, const ResidualFactors&) = default;
};

/// Sums every control's delta per factor, adds it to the inherent value and
/// clamps to [0, 9]. Independent of control order.
ResidualFactors apply_controls(const LikelihoodFactors& likelihood, const ImpactFactors& impact,
                               std::span<const Control> controls);
ResidualFactors apply_controls(const LikelihoodFactors& likelihood, const ImpactFactors& impact,
                               std::span<const Control* const> controls);

struct RiskAssessment {
    std::string threat_id;
    std::vector<std::string> enabled_controls;  // in the order given
    LikelihoodFactors residual_likelihood;
    ImpactFactors residual_impact;
    Rational likelihood_score;
    Rational impact_score;
    Rational severity_score;
    SeverityLabel severity_label = SeverityLabel::Note;

    friend bool operator==(const RiskAssessment&, const RiskAssessment&) = default;
};

RiskAssessment assess(const ThreatScenario& threat, std::span<const Control> controls_enabled);
RiskAssessment assess(const ThreatScenario& threat, std::span<const Control* const> controls_enabled);

}  // namespace ragrisk
