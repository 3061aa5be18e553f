#pragma once

// JSON serialization of tensors and certificates, and the report produced
// by a problem run.  Reports round-trip: report_from_json(to_json(r))
// serializes to the same document.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hamil/exterior.hpp"
#include "hamil/poisson.hpp"
#include "hamil/verify.hpp"

namespace hamil {

inline constexpr const char* kReportSchema = "hamil-report/1";
inline constexpr const char* kToolVersion = "1.0.0";

// {grade, variance, entries: [{index: [1-based], coeff}]}
template <Variance V>
nlohmann::json tensor_to_json(const Graded<V>& t);
template <Variance V>
Graded<V> tensor_from_json(const nlohmann::json& j, const ChartPtr& chart);

struct IdentityRecord {
  std::string name;
  std::string verdict;
  double residual_max = 0;
  double residual_mean = 0;
  int evaluated = 0;
  int skipped = 0;
  std::vector<double> witness;
  std::map<std::string, double> witness_params;
};

struct CertificateRecord {
  std::string claim;
  std::string verdict;
  std::optional<std::string> expected;
  std::vector<IdentityRecord> identities;
  std::optional<std::string> lambda;
  bool lambda_constant = false;
  bool lambda_numeric = false;
  std::vector<std::string> assumptions;
  std::uint64_t seed = 0;
  int samples = 0;
  double tolerance = 0;
  std::vector<std::pair<std::string, std::string>> details;
};

CertificateRecord record_of(const Certificate& c);

struct FlowRecord {
  std::string name;
  bool pass = false;
  std::vector<double> start, end;
  double dt = 0, horizon = 0;
  int steps = 0;
  bool truncated = false;
  std::string truncation_reason;
  std::vector<std::pair<std::string, double>> drift;
  std::optional<double> field_deviation;
};

FlowRecord record_of(const std::string& name, const FlowReport& r);

struct TaskReport {
  std::string name;
  std::string kind;
  std::string status;  // ok | error | expected_error
  std::string error;
  bool pass = false;
  std::optional<std::string> lambda;
  nlohmann::json objects = nlohmann::json::object();
  std::vector<CertificateRecord> certificates;
  std::optional<double> timing_ms;
};

struct Report {
  std::string schema = kReportSchema;
  std::string tool_version = kToolVersion;
  std::string problem;
  std::uint64_t seed = 0;
  int samples = 0;
  double tolerance = 0;
  std::vector<TaskReport> tasks;
  std::vector<FlowRecord> flows;
  int exit_code = 0;
};

nlohmann::json to_json(const CertificateRecord& c);
CertificateRecord certificate_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Report& r);
// Throws nlohmann::json::exception or std::invalid_argument on a schema mismatch.
Report report_from_json(const nlohmann::json& j);

}  // namespace hamil
