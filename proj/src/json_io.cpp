#include "conc/json_io.hpp"

namespace conc {

using nlohmann::json;

json to_json(const SparseTrigPoly& f) {
    json coeffs = json::array();
    for (const auto& t : f.terms()) coeffs.push_back(json::array({t.freq, t.coeff}));
    return json{{"coeffs", std::move(coeffs)}, {"class", poly_class_name(f.poly_class())}};
}

SparseTrigPoly poly_from_json(const json& j) {
    if (!j.contains("coeffs") || !j.contains("class"))
        throw Error(ErrorCode::InvalidArgument, "polynomial JSON needs 'coeffs' and 'class'");
    std::vector<SparseTrigPoly::Term> terms;
    for (const auto& pair : j.at("coeffs")) {
        if (!pair.is_array() || pair.size() != 2)
            throw Error(ErrorCode::InvalidArgument, "each coeff entry must be [freq, coeff]");
        terms.push_back({pair[0].get<Frequency>(), pair[1].get<double>()});
    }
    return SparseTrigPoly::make(std::move(terms),
                                poly_class_from_name(j.at("class").get<std::string>()));
}

json to_json(const IntervalUnion& E) {
    json intervals = json::array();
    for (const auto& iv : E.intervals()) intervals.push_back(json::array({iv.left, iv.right}));
    return json{{"intervals", std::move(intervals)}, {"symmetric", E.symmetric_flag()}};
}

IntervalUnion intervals_from_json(const json& j) {
    if (!j.contains("intervals"))
        throw Error(ErrorCode::InvalidArgument, "interval JSON needs 'intervals'");
    std::vector<std::pair<double, double>> raw;
    for (const auto& pair : j.at("intervals")) {
        if (!pair.is_array() || pair.size() != 2)
            throw Error(ErrorCode::InvalidArgument, "each interval must be [left, right]");
        raw.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    const bool symmetric = j.value("symmetric", false);
    return IntervalUnion::make(raw, symmetric);
}

json to_json(const GridApproximation& g) {
    return json{{"numerator", g.numerator},
                {"q", g.q},
                {"grid", g.star ? "star" : "plain"},
                {"value", g.value},
                {"error", g.error},
                {"theta", g.theta},
                {"density", g.density},
                {"coprime_witness_numerator", g.coprime_witness_num},
                {"coprime_witness_q", g.coprime_witness_q}};
}

json to_json(const ConcentrationReport& r, bool include_coeffs) {
    json chain{{"grid_ratio", r.chain.grid_ratio_C},
               {"peak_mass", r.chain.peak_mass},
               {"epsilon_measured", 1.0 - r.chain.peak_mass},
               {"point_value_p", r.chain.point_value_p},
               {"grid_sum_p", r.chain.grid_sum_p},
               {"window_integral", r.chain.window_integral},
               {"g_hat_inner", r.chain.g_hat_inner},
               {"g_hat_full", r.chain.g_hat_full},
               {"mz_ratio", r.chain.mz_ratio},
               {"window_deficit", r.chain.window_deficit},
               {"leakage_fraction", r.chain.leakage_fraction},
               {"doubling", r.chain.doubling},
               {"certificate", r.chain.certificate}};
    json route{{"grid", r.route.star ? "star" : "plain"},
               {"paired", r.route.paired},
               {"q", r.route.q},
               {"target_numerator", r.route.target_numerator},
               {"x0", r.route.x0},
               {"r", r.route.r},
               {"nu", r.route.nu},
               {"riesz_J", r.route.riesz_J},
               {"riesz_R", r.route.riesz_R},
               {"delta", r.route.delta},
               {"escalation_rounds", r.route.escalation_rounds}};
    json config{{"p", r.config.p},
                {"target_c", r.config.target_c},
                {"gap_N", r.config.gap_N},
                {"epsilon", r.config.epsilon},
                {"delta", r.config.delta},
                {"eta", r.config.eta},
                {"theta", r.config.theta},
                {"riesz_J", r.config.riesz_J},
                {"riesz_R", r.config.riesz_R},
                {"dirichlet_L", r.config.dirichlet_L},
                {"seed", r.config.seed},
                {"q_min", r.config.q_min},
                {"q_max", r.config.q_max}};
    json out{{"schema_version", 1},
             {"kind", "concentration_report"},
             {"p", r.p},
             {"set", to_json(r.set)},
             {"polynomial",
              json{{"spectrum_size", r.spectrum_size},
                   {"degree", r.degree},
                   {"min_gap", r.min_gap}}},
             {"integral_on_set", r.integral_on_set},
             {"integral_total", r.integral_total},
             {"ratio", r.ratio},
             {"chain", std::move(chain)},
             {"route", std::move(route)},
             {"config", std::move(config)}};
    if (r.p2_ceiling > 0.0) out["p2_ceiling"] = r.p2_ceiling;
    if (include_coeffs) out["polynomial"]["coeffs"] = to_json(r.polynomial)["coeffs"];
    return out;
}

json error_json(const Error& e) {
    return json{{"error", json{{"code", error_code_name(e.code())}, {"message", e.what()}}}};
}

}  // namespace conc
