#include "erw/report.hpp"

#include <chrono>
#include <cmath>

namespace erw {

Json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

Report::Report(const std::string& subcommand, const Json& config, bool with_timestamp) {
    doc_["meta"]["version"] = "1.0.0";
    doc_["meta"]["subcommand"] = subcommand;
    doc_["meta"]["config"] = config;
    if (config.contains("seed")) doc_["meta"]["seed"] = config["seed"];
    if (with_timestamp) {
        auto now = std::chrono::system_clock::now().time_since_epoch();
        doc_["meta"]["timestamp_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    }
    doc_["results"] = Json::array();
}

void Report::add(const std::string& name, double value, double error, const std::string& units,
                 const std::string& formula) {
    Json entry;
    entry["name"] = name;
    entry["value"] = json_number(value);
    entry["error"] = json_number(error);
    entry["units"] = units;
    entry["formula"] = formula;
    doc_["results"].push_back(entry);
}

void Report::add_exact(const std::string& name, const std::string& value,
                       const std::string& formula) {
    Json entry;
    entry["name"] = name;
    entry["value"] = value;
    entry["error"] = 0.0;
    entry["units"] = "exact";
    entry["formula"] = formula;
    doc_["results"].push_back(entry);
}

void Report::set_verdict(const std::string& verdict) { doc_["verdict"] = verdict; }

void Report::set_note(const std::string& note) { doc_["notes"] = note; }

}  // namespace erw
