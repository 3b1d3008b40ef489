#include "json_out.hpp"

namespace sentimarket {

namespace {

nlohmann::json theta_json(const std::array<double, 4>& theta) {
    nlohmann::json j;
    for (int i = 0; i < 4; ++i) j[kParamNames[static_cast<std::size_t>(i)]] = theta[static_cast<std::size_t>(i)];
    return j;
}

}  // namespace

nlohmann::json fit_result_json(const FitResult& fit) {
    nlohmann::json starts = nlohmann::json::array();
    for (const StartRecord& s : fit.starts) {
        starts.push_back({{"initial", theta_json(s.initial)},
                          {"final", theta_json(s.final)},
                          {"loglik", s.loglik},
                          {"evaluations", s.evaluations},
                          {"usable", s.usable}});
    }
    return {{"theta", theta_json(fit.theta)},
            {"loglik", fit.loglik},
            {"gradient", theta_json(fit.gradient)},
            {"gradient_norm", fit.gradient_norm},
            {"start_agreement", fit.start_agreement},
            {"converged", fit.converged},
            {"structural",
             {{"L", fit.params.max_group_size},
              {"B0", fit.params.initial_bullishness},
              {"group_weights", fit.params.effective_weights()}}},
            {"starts", starts}};
}

nlohmann::json stylized_facts_json(const StylizedFactsReport& report) {
    nlohmann::json j{{"n", report.n},
                     {"max_lag", report.max_lag},
                     {"tail_fraction", report.tail_fraction},
                     {"band", report.band},
                     {"acf_returns", report.acf_returns},
                     {"acf_abs_returns", report.acf_abs_returns},
                     {"excess_kurtosis", report.excess_kurtosis},
                     {"hill_unstable", report.hill_unstable},
                     {"flags",
                      {{"returns_uncorrelated", report.returns_uncorrelated},
                       {"volatility_clustering", report.volatility_clustering},
                       {"fat_tails", report.fat_tails}}}};
    if (report.hill_exponent)
        j["hill_exponent"] = *report.hill_exponent;
    else
        j["hill_exponent"] = nullptr;
    return j;
}

nlohmann::json error_json(const std::string& code, const std::string& message,
                          nlohmann::json context) {
    return {{"code", code}, {"message", message}, {"context", std::move(context)}};
}

}  // namespace sentimarket
