#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pdmsoliton::cli {

enum class Bound { below, above, equal };

struct Measurement {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    Bound bound = Bound::below;

    bool passed() const noexcept;
};

struct CheckResult {
    std::string id;
    std::string title;
    std::vector<Measurement> measurements;

    bool passed() const noexcept;
};

// A tolerance override replaces the limit of every `below` measurement
// and the catalog tolerances; counts and negative controls keep theirs.
std::vector<CheckResult> run_checks(std::optional<double> tolerance = std::nullopt);

nlohmann::json to_json(const Measurement& m);
nlohmann::json to_json(const CheckResult& check);

// Catalog rows for wavenumber q, sorted by scheme/soliton.
nlohmann::json catalog_json(double q, std::optional<double> tolerance = std::nullopt);

// {"schema": 1, "passed", "checks", "catalog"}; deterministic for a given tolerance.
nlohmann::json verify_report(std::optional<double> tolerance = std::nullopt);

} // namespace pdmsoliton::cli
