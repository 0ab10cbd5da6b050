#include "greenbs/scenario.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace greenbs {

namespace {

std::string format_number(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

void check_trace(std::vector<std::string>& issues, const std::string& owner,
                 std::string_view name, const std::vector<double>& values,
                 std::size_t periods) {
    if (values.size() != periods) {
        issues.push_back("scenario '" + owner + "': " + std::string(name) + " trace has length " +
                         std::to_string(values.size()) + ", expected " + std::to_string(periods));
    }
    for (std::size_t t = 0; t < values.size(); ++t) {
        if (!std::isfinite(values[t]) || values[t] < 0.0) {
            issues.push_back("scenario '" + owner + "': " + std::string(name) + " value at t=" +
                             std::to_string(t + 1) + " is " + format_number(values[t]) +
                             " (must be finite and >= 0)");
            break;
        }
    }
}

void check_mass(std::vector<std::string>& issues, double mass) {
    if (std::abs(mass - 1.0) > kProbabilityTolerance) {
        issues.push_back("probability mass " + format_number(mass) + " != 1");
    }
}

} // namespace

std::string_view to_string(MarginalKind kind) {
    switch (kind) {
    case MarginalKind::price: return "price";
    case MarginalKind::renewable: return "renewable";
    case MarginalKind::consumption: return "consumption";
    }
    return "unknown";
}

double ScenarioSpace::total_probability() const {
    double mass = 0.0;
    for (const auto& s : scenarios) mass += s.probability;
    return mass;
}

double ScenarioSpace::mean_price() const {
    double mean = 0.0;
    for (const auto& s : scenarios) {
        if (s.price.empty()) continue;
        double sum = 0.0;
        for (double p : s.price) sum += p;
        mean += s.probability * sum / static_cast<double>(s.price.size());
    }
    return mean;
}

std::vector<double> estimate_probabilities(std::span<const double> counts) {
    if (counts.empty()) {
        throw std::invalid_argument("no scenario counts given");
    }
    double total = 0.0;
    for (double c : counts) {
        if (!std::isfinite(c) || c < 0.0) {
            throw std::invalid_argument("scenario counts must be finite and non-negative");
        }
        total += c;
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("scenario counts are all zero");
    }
    std::vector<double> probs;
    probs.reserve(counts.size());
    for (double c : counts) probs.push_back(c / total);
    return probs;
}

std::vector<std::string> validate(const MarginalSpace& space, const Horizon& horizon) {
    std::vector<std::string> issues;
    const std::string kind(to_string(space.kind));
    if (space.scenarios.empty()) {
        issues.push_back(kind + " space has no scenarios");
        return issues;
    }
    double mass = 0.0;
    for (const auto& s : space.scenarios) {
        check_trace(issues, s.label, kind, s.values, horizon.periods());
        if (!(s.probability >= 0.0 && s.probability <= 1.0)) {
            issues.push_back("scenario '" + s.label + "': probability " +
                             format_number(s.probability) + " outside [0, 1]");
        }
        mass += s.probability;
    }
    check_mass(issues, mass);
    for (auto& issue : issues) issue = kind + ": " + issue;
    return issues;
}

std::vector<std::string> validate(const ScenarioSpace& space, const Horizon& horizon) {
    std::vector<std::string> issues;
    if (space.scenarios.empty()) {
        issues.push_back("scenario space is empty");
        return issues;
    }
    for (const auto& s : space.scenarios) {
        check_trace(issues, s.label, "price", s.price, horizon.periods());
        check_trace(issues, s.label, "renewable", s.renewable, horizon.periods());
        check_trace(issues, s.label, "consumption", s.consumption, horizon.periods());
        if (!(s.probability > 0.0 && s.probability <= 1.0)) {
            issues.push_back("scenario '" + s.label + "': probability " +
                             format_number(s.probability) + " outside (0, 1]");
        }
    }
    check_mass(issues, space.total_probability());
    return issues;
}

void require_valid(const ScenarioSpace& space, const Horizon& horizon) {
    auto issues = validate(space, horizon);
    if (issues.empty()) return;
    std::string message = "invalid scenario space:";
    for (const auto& issue : issues) message += "\n  " + issue;
    throw std::invalid_argument(message);
}

ScenarioSpace compose(const MarginalSpace& price,
                      const MarginalSpace& renewable,
                      const MarginalSpace& consumption) {
    if (price.scenarios.empty() || renewable.scenarios.empty() || consumption.scenarios.empty()) {
        throw std::invalid_argument("compose: every marginal space needs at least one scenario");
    }
    const std::size_t periods = price.scenarios.front().values.size();
    if (periods < 2) {
        throw std::invalid_argument("compose: traces must cover at least 2 periods");
    }
    const Horizon horizon(periods);
    std::string message;
    for (const auto* space : {&price, &renewable, &consumption}) {
        for (const auto& issue : validate(*space, horizon)) message += "\n  " + issue;
    }
    if (!message.empty()) {
        throw std::invalid_argument("compose: invalid marginal spaces:" + message);
    }

    ScenarioSpace joint;
    joint.scenarios.reserve(price.scenarios.size() * renewable.scenarios.size() *
                            consumption.scenarios.size());
    for (const auto& p : price.scenarios) {
        for (const auto& r : renewable.scenarios) {
            for (const auto& c : consumption.scenarios) {
                const double prob = p.probability * r.probability * c.probability;
                if (prob <= 0.0) continue;
                joint.scenarios.push_back(CompositeScenario{
                    p.label + "/" + r.label + "/" + c.label, p.values, r.values, c.values, prob});
            }
        }
    }
    return joint;
}

} // namespace greenbs
