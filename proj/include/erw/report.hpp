#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

namespace erw {

using Json = nlohmann::ordered_json;

// Machine-readable run report.  Every number carries its provenance (a short
// formula or estimator id) and an error radius / standard error, so reports
// are self-describing.  Serialization is deterministic; the timestamp is
// optional so byte-identical reruns can be asserted.
class Report {
public:
    Report(const std::string& subcommand, const Json& config, bool with_timestamp);

    void add(const std::string& name, double value, double error, const std::string& units,
             const std::string& formula);
    void add_exact(const std::string& name, const std::string& value, const std::string& formula);
    void set_verdict(const std::string& verdict);
    void set_note(const std::string& note);

    const Json& json() const { return doc_; }
    std::string serialize() const { return doc_.dump(2) + "\n"; }

private:
    Json doc_;
};

// null for non-finite values (JSON has no inf/nan).
Json json_number(double v);

}  // namespace erw
