#include "fracp/json_io.hpp"

#include <cmath>

namespace fracp {

namespace {
// JSON has no infinity; serialize unbounded exponents as a string.
nlohmann::json finite_or_tag(double v) {
    if (std::isinf(v)) return "inf";
    return v;
}
}  // namespace

nlohmann::json to_json(const AdmissibilityCertificate& c) {
    return {
        {"class", class_name(c.cls)},
        {"a", c.a},
        {"r", c.r},
        {"slack", c.slack},
        {"integrability_slack", c.integrability_slack},
        {"b_or_tau", finite_or_tag(c.b_or_tau)},
        {"empirical", c.empirical},
    };
}

nlohmann::json to_json(const Refusal& r) {
    nlohmann::json j{{"admissible", false}, {"binding_constraint", r.binding_constraint}};
    if (r.beta_star) j["beta_star"] = *r.beta_star;
    return j;
}

nlohmann::json to_json(const EigenResult& r) {
    return {
        {"lambda", r.lambda},
        {"residual", r.residual},
        {"iterations", r.iterations},
        {"converged", r.converged},
        {"values", r.u.values},
    };
}

nlohmann::json to_json(const SolveResult& r) {
    nlohmann::json j{
        {"phi", r.phi},
        {"residual", std::isfinite(r.residual) ? nlohmann::json(r.residual) : nlohmann::json("inf")},
        {"method", r.method},
        {"values", r.u.values},
        {"converged", r.converged},
    };
    if (r.trivial_refusal) j["trivial_refusal"] = true;
    if (r.resonant) j["resonant"] = true;
    return j;
}

nlohmann::json to_json(const HardyReport& r) {
    return {
        {"regime", r.regime},
        {"constant", r.constant},
        {"family_size", r.family_size},
        {"ratios", r.ratios},
        {"skipped", r.skipped},
    };
}

nlohmann::json to_json(const MoserCertificate& c) {
    return {
        {"certified", c.certified},
        {"scaling", c.scaling},
        {"delta", c.delta},
        {"c0", c.c0},
        {"b", c.b},
        {"alpha", c.alpha},
        {"q", c.q},
        {"qbar", c.qbar},
        {"levels", c.levels},
        {"terminal_index", c.terminal_index},
        {"certified_bound", c.certified_bound},
        {"direct_max", c.direct_max},
        {"violation_index", c.violation_index},
    };
}

nlohmann::json to_json(const ScalingReport& r) {
    return {
        {"t_values", r.t_values},
        {"deviations", r.deviations},
        {"max_deviation", r.max_deviation},
        {"converged", r.converged},
    };
}

}  // namespace fracp
