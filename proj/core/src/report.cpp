#include "geoxray/report.hpp"

#include <chrono>
#include <cmath>

namespace geoxray::report {

double TransformReport::max_abs_deviation() const {
  double m = 0.0;
  for (const auto& rec : records) m = std::max(m, std::abs(rec.value - 1.0));
  return m;
}

double TransformReport::mean_abs_deviation() const {
  if (records.empty()) return 0.0;
  double s = 0.0;
  for (const auto& rec : records) s += std::abs(rec.value - 1.0);
  return s / double(records.size());
}

nlohmann::json TransformReport::to_json() const {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records)
    recs.push_back({{"parameter", r.parameter}, {"value", r.value}});
  return {
      {"schema-version", kSchemaVersion},
      {"tool-version", kToolVersion},
      {"experiment", experiment},
      {"timestamp", std::chrono::duration_cast<std::chrono::seconds>(
                        std::chrono::system_clock::now().time_since_epoch())
                        .count()},
      {"seed", seed},
      {"tolerance", tolerance},
      {"records", recs},
      {"summary",
       {{"count", records.size()},
        {"max_abs_deviation", max_abs_deviation()},
        {"mean_abs_deviation", mean_abs_deviation()}}},
  };
}

}  // namespace geoxray::report
