#include "ragrisk/risk.hpp"

#include <algorithm>
#include <array>

namespace ragrisk {

namespace {

constexpr std::array<std::array<SeverityLabel, 3>, 3> kLabelMatrix{{
    // impact:  LOW                  MEDIUM                 HIGH
    {SeverityLabel::Note, SeverityLabel::Low, SeverityLabel::Medium},      // likelihood LOW
    {SeverityLabel::Low, SeverityLabel::Medium, SeverityLabel::High},      // likelihood MEDIUM
    {SeverityLabel::Medium, SeverityLabel::High, SeverityLabel::Critical}, // likelihood HIGH
}};

template <FactorGroup G>
Rational mean(const FactorVector<G>& f) {
    return Rational(f.sum(), static_cast<std::int64_t>(kFactorsPerGroup));
}

template <typename ControlRange, typename Deref>
ResidualFactors apply(const LikelihoodFactors& likelihood, const ImpactFactors& impact, const ControlRange& controls,
                      Deref deref) {
    // widen to avoid overflow when many large deltas stack up
    std::array<long long, 2 * kFactorsPerGroup> totals{};
    for (const auto& entry : controls) {
        for (const auto& adj : deref(entry).adjustments) {
            totals[static_cast<std::size_t>(adj.factor)] += adj.delta;
        }
    }
    auto clamp = [](long long v) {
        return static_cast<int>(std::clamp<long long>(v, kFactorMin, kFactorMax));
    };
    ResidualFactors out{likelihood, impact};
    for (std::size_t slot = 0; slot < kFactorsPerGroup; ++slot) {
        out.likelihood.values[slot] = clamp(likelihood.values[slot] + totals[slot]);
        out.impact.values[slot] = clamp(impact.values[slot] + totals[kFactorsPerGroup + slot]);
    }
    return out;
}

template <typename ControlRange, typename Deref>
RiskAssessment assess_impl(const ThreatScenario& threat, const ControlRange& controls, Deref deref) {
    RiskAssessment out;
    out.threat_id = threat.id;
    for (const auto& entry : controls) {
        out.enabled_controls.push_back(deref(entry).id);
    }
    auto residual = apply(threat.inherent_likelihood, threat.inherent_impact, controls, deref);
    out.residual_likelihood = residual.likelihood;
    out.residual_impact = residual.impact;
    out.likelihood_score = likelihood_score(residual.likelihood);
    out.impact_score = impact_score(residual.impact);
    out.severity_score = severity_score(out.likelihood_score, out.impact_score);
    out.severity_label = severity_label(out.likelihood_score, out.impact_score);
    return out;
}

const Control& by_value(const Control& c) { return c; }
const Control& by_pointer(const Control* c) { return *c; }

}  // namespace

std::string_view to_string(SeverityBracket b) {
    switch (b) {
        case SeverityBracket::LOW:
            return "LOW";
        case SeverityBracket::MEDIUM:
            return "MEDIUM";
        case SeverityBracket::HIGH:
            return "HIGH";
    }
    return "?";
}

std::string_view to_string(SeverityLabel l) {
    switch (l) {
        case SeverityLabel::Note:
            return "Note";
        case SeverityLabel::Low:
            return "Low";
        case SeverityLabel::Medium:
            return "Medium";
        case SeverityLabel::High:
            return "High";
        case SeverityLabel::Critical:
            return "Critical";
    }
    return "?";
}

SeverityBracket bracket_of(const Rational& score) {
    if (score < Rational(3)) {
        return SeverityBracket::LOW;
    }
    if (score < Rational(6)) {
        return SeverityBracket::MEDIUM;
    }
    return SeverityBracket::HIGH;
}

Rational likelihood_score(const LikelihoodFactors& f) { return mean(f); }

Rational impact_score(const ImpactFactors& f) { return mean(f); }

Rational severity_score(const Rational& likelihood, const Rational& impact) { return likelihood * impact; }

SeverityLabel severity_label(const Rational& likelihood, const Rational& impact) {
    return kLabelMatrix[static_cast<std::size_t>(bracket_of(likelihood))]
                       [static_cast<std::size_t>(bracket_of(impact))];
}

ResidualFactors apply_controls(const LikelihoodFactors& likelihood, const ImpactFactors& impact,
                               std::span<const Control> controls) {
    return apply(likelihood, impact, controls, by_value);
}

ResidualFactors apply_controls(const LikelihoodFactors& likelihood, const ImpactFactors& impact,
                               std::span<const Control* const> controls) {
    return apply(likelihood, impact, controls, by_pointer);
}

RiskAssessment assess(const ThreatScenario& threat, std::span<const Control> controls_enabled) {
    return assess_impl(threat, controls_enabled, by_value);
}

RiskAssessment assess(const ThreatScenario& threat, std::span<const Control* const> controls_enabled) {
    return assess_impl(threat, controls_enabled, by_pointer);
}

}  // namespace ragrisk
