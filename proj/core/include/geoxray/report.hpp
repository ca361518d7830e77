#ifndef GEOXRAY_REPORT_HPP
#define GEOXRAY_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace geoxray::report {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// One verified geodesic: its parameter (turning radius or line offset) and
/// the computed integral.
struct GeodesicRecord {
  double parameter = 0.0;
  double value = 0.0;
};

struct TransformReport {
  std::string experiment;
  std::vector<GeodesicRecord> records;
  double tolerance = 0.0;
  std::uint64_t seed = 0;

  double max_abs_deviation() const;  // max |value - 1|
  double mean_abs_deviation() const;

  nlohmann::json to_json() const;
};

}  // namespace geoxray::report

#endif
