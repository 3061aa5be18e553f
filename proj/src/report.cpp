#include "hamil/report.hpp"

#include <stdexcept>

#include "hamil/parse.hpp"

namespace hamil {

using nlohmann::json;

template <Variance V>
json tensor_to_json(const Graded<V>& t) {
  json entries = json::array();
  for (const auto& [idx, c] : t.entries()) {
    json index = json::array();
    for (int i : idx) index.push_back(i + 1);
    entries.push_back({{"index", index}, {"coeff", to_string(c)}});
  }
  return {{"grade", t.grade()},
          {"variance", V == Variance::contravariant ? "contravariant" : "covariant"},
          {"entries", entries}};
}

template <Variance V>
Graded<V> tensor_from_json(const json& j, const ChartPtr& chart) {
  std::string want = V == Variance::contravariant ? "contravariant" : "covariant";
  if (j.at("variance").get<std::string>() != want) throw std::invalid_argument("tensor variance mismatch");
  Graded<V> t(chart, j.at("grade").get<int>());
  for (const auto& e : j.at("entries")) {
    Index idx;
    for (int i : e.at("index")) idx.push_back(i - 1);
    t.add(idx, parse(e.at("coeff").get<std::string>(), *chart));
  }
  return t;
}

template json tensor_to_json(const MultiVector&);
template json tensor_to_json(const Form&);
template MultiVector tensor_from_json(const json&, const ChartPtr&);
template Form tensor_from_json(const json&, const ChartPtr&);

CertificateRecord record_of(const Certificate& c) {
  CertificateRecord r;
  r.claim = c.claim;
  r.verdict = verdict_name(c.verdict());
  for (const auto& id : c.identities) {
    IdentityRecord ir;
    ir.name = id.name;
    ir.verdict = verdict_name(id.state.verdict);
    ir.residual_max = id.state.residual_max;
    ir.residual_mean = id.state.residual_mean;
    ir.evaluated = id.state.evaluated;
    ir.skipped = id.state.skipped;
    ir.witness = id.state.witness;
    if (!id.state.witness.empty())
      for (const auto& [k, v] : id.state.witness_params) ir.witness_params[k] = v;
    r.identities.push_back(std::move(ir));
  }
  if (c.lambda) r.lambda = to_string(*c.lambda);
  r.lambda_constant = c.lambda_constant;
  r.lambda_numeric = c.lambda_numeric;
  for (const auto& a : c.assumptions) r.assumptions.push_back(to_string(a));
  r.seed = c.sampler.seed;
  r.samples = c.sampler.samples;
  r.tolerance = c.sampler.tolerance;
  r.details = c.details;
  return r;
}

FlowRecord record_of(const std::string& name, const FlowReport& f) {
  FlowRecord r;
  r.name = name;
  r.start = f.start;
  r.end = f.end;
  r.dt = f.dt;
  r.horizon = f.horizon;
  r.steps = f.steps;
  r.truncated = f.truncated;
  r.truncation_reason = f.truncation_reason;
  r.drift = f.drift;
  r.field_deviation = f.field_deviation;
  return r;
}

namespace {

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> opt_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

json pairs(const std::vector<std::pair<std::string, std::string>>& ps) {
  json a = json::array();
  for (const auto& [k, v] : ps) a.push_back({k, v});
  return a;
}

json identity_json(const IdentityRecord& i) {
  return {{"name", i.name},
          {"verdict", i.verdict},
          {"residual_max", i.residual_max},
          {"residual_mean", i.residual_mean},
          {"evaluated", i.evaluated},
          {"skipped", i.skipped},
          {"witness", i.witness.empty() ? json(nullptr) : json(i.witness)},
          {"witness_params", i.witness_params}};
}

IdentityRecord identity_from(const json& j) {
  IdentityRecord i;
  i.name = j.at("name");
  i.verdict = j.at("verdict");
  i.residual_max = j.at("residual_max");
  i.residual_mean = j.at("residual_mean");
  i.evaluated = j.at("evaluated");
  i.skipped = j.at("skipped");
  if (!j.at("witness").is_null()) i.witness = j.at("witness").get<std::vector<double>>();
  i.witness_params = j.at("witness_params").get<std::map<std::string, double>>();
  return i;
}

json flow_json(const FlowRecord& f) {
  json drift = json::array();
  for (const auto& [k, v] : f.drift) drift.push_back({{"invariant", k}, {"max_drift", v}});
  return {{"name", f.name},
          {"pass", f.pass},
          {"start", f.start},
          {"end", f.end},
          {"dt", f.dt},
          {"T", f.horizon},
          {"steps", f.steps},
          {"truncated", f.truncated},
          {"truncation_reason", f.truncation_reason},
          {"drift", drift},
          {"field_deviation", opt(f.field_deviation)}};
}

FlowRecord flow_from(const json& j) {
  FlowRecord f;
  f.name = j.at("name");
  f.pass = j.at("pass");
  f.start = j.at("start").get<std::vector<double>>();
  f.end = j.at("end").get<std::vector<double>>();
  f.dt = j.at("dt");
  f.horizon = j.at("T");
  f.steps = j.at("steps");
  f.truncated = j.at("truncated");
  f.truncation_reason = j.at("truncation_reason");
  for (const auto& d : j.at("drift")) f.drift.emplace_back(d.at("invariant"), d.at("max_drift"));
  f.field_deviation = opt_from<double>(j, "field_deviation");
  return f;
}

}  // namespace

json to_json(const CertificateRecord& c) {
  json ids = json::array();
  for (const auto& i : c.identities) ids.push_back(identity_json(i));
  json j = {{"claim", c.claim},
            {"verdict", c.verdict},
            {"identities", ids},
            {"lambda", opt(c.lambda)},
            {"lambda_constant", c.lambda_constant},
            {"lambda_numeric", c.lambda_numeric},
            {"assumptions", c.assumptions},
            {"seed", c.seed},
            {"samples", c.samples},
            {"tolerance", c.tolerance},
            {"details", pairs(c.details)}};
  if (c.expected) j["expected"] = *c.expected;
  return j;
}

CertificateRecord certificate_from_json(const json& j) {
  CertificateRecord c;
  c.claim = j.at("claim");
  c.verdict = j.at("verdict");
  c.expected = opt_from<std::string>(j, "expected");
  for (const auto& i : j.at("identities")) c.identities.push_back(identity_from(i));
  c.lambda = opt_from<std::string>(j, "lambda");
  c.lambda_constant = j.at("lambda_constant");
  c.lambda_numeric = j.at("lambda_numeric");
  c.assumptions = j.at("assumptions").get<std::vector<std::string>>();
  c.seed = j.at("seed");
  c.samples = j.at("samples");
  c.tolerance = j.at("tolerance");
  for (const auto& d : j.at("details")) c.details.emplace_back(d.at(0), d.at(1));
  return c;
}

json to_json(const Report& r) {
  json tasks = json::array();
  for (const auto& t : r.tasks) {
    json certs = json::array();
    for (const auto& c : t.certificates) certs.push_back(to_json(c));
    json jt = {{"name", t.name},    {"kind", t.kind},         {"status", t.status},
               {"error", t.error},  {"pass", t.pass},         {"lambda", opt(t.lambda)},
               {"objects", t.objects}, {"certificates", certs}};
    if (t.timing_ms) jt["timing_ms"] = *t.timing_ms;
    tasks.push_back(std::move(jt));
  }
  json flows = json::array();
  for (const auto& f : r.flows) flows.push_back(flow_json(f));
  return {{"schema", r.schema},   {"tool_version", r.tool_version},
          {"problem", r.problem}, {"seed", r.seed},
          {"samples", r.samples}, {"tolerance", r.tolerance},
          {"tasks", tasks},       {"flows", flows},
          {"exit_code", r.exit_code}};
}

Report report_from_json(const json& j) {
  Report r;
  r.schema = j.at("schema");
  if (r.schema != kReportSchema) throw std::invalid_argument("unsupported report schema '" + r.schema + "'");
  r.tool_version = j.at("tool_version");
  r.problem = j.at("problem");
  r.seed = j.at("seed");
  r.samples = j.at("samples");
  r.tolerance = j.at("tolerance");
  for (const auto& jt : j.at("tasks")) {
    TaskReport t;
    t.name = jt.at("name");
    t.kind = jt.at("kind");
    t.status = jt.at("status");
    t.error = jt.at("error");
    t.pass = jt.at("pass");
    t.lambda = opt_from<std::string>(jt, "lambda");
    t.objects = jt.at("objects");
    for (const auto& c : jt.at("certificates")) t.certificates.push_back(certificate_from_json(c));
    t.timing_ms = opt_from<double>(jt, "timing_ms");
    r.tasks.push_back(std::move(t));
  }
  for (const auto& f : j.at("flows")) r.flows.push_back(flow_from(f));
  r.exit_code = j.at("exit_code");
  return r;
}

}  // namespace hamil
