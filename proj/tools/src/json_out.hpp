#pragma once

#include <string>

#include <json.hpp>

#include "sentimarket/estimate.hpp"
#include "sentimarket/stats.hpp"

namespace sentimarket {

nlohmann::json fit_result_json(const FitResult& fit);
nlohmann::json stylized_facts_json(const StylizedFactsReport& report);

// Machine-readable failure report: {"code": ..., "message": ..., "context": {...}}.
nlohmann::json error_json(const std::string& code, const std::string& message,
                          nlohmann::json context = nlohmann::json::object());

}  // namespace sentimarket
