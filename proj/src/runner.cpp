#include "hamil/runner.hpp"

#include <chrono>
#include <cmath>

#include "hamil/constructions.hpp"
#include "hamil/conventions.hpp"
#include "hamil/polynomial.hpp"
#include "hamil/tasks.hpp"

namespace hamil {

using nlohmann::json;

namespace {

struct Context {
  const ProblemSpec& spec;
  const TaskDef& task;
  const SamplerConfig& cfg;
  TaskReport& out;

  const Object* get(const std::string& role) const {
    auto it = task.inputs.find(role);
    if (it == task.inputs.end() || it->second.empty()) return nullptr;
    return &spec.object(it->second.front());
  }
  std::vector<const Object*> list(const std::string& role) const {
    std::vector<const Object*> out;
    auto it = task.inputs.find(role);
    if (it != task.inputs.end())
      for (const auto& n : it->second) out.push_back(&spec.object(n));
    return out;
  }
  VolumeForm volume() const {
    const Object* o = get("volume");
    return o ? o->volume : euclidean_volume(spec.chart);
  }

  void add(Certificate c, const std::string& prefix = "") {
    CertificateRecord r = record_of(c);
    r.claim = prefix + r.claim;
    out.certificates.push_back(std::move(r));
  }
  void add_result(const HamiltonizationResult& r, const std::string& prefix = "") {
    out.objects[prefix + "pi"] = tensor_to_json(r.pi);
    if (r.h) out.objects[prefix + "h"] = to_string(*r.h);
    if (r.lambda) {
      out.objects[prefix + "lambda"] = to_string(*r.lambda);
      if (prefix.empty()) out.lambda = to_string(*r.lambda);
    }
    for (const auto& [n, v] : r.vectors) out.objects[prefix + n] = tensor_to_json(v);
    for (const auto& [n, f] : r.forms) out.objects[prefix + n] = tensor_to_json(f);
    for (const auto& [n, e] : r.scalars) out.objects[prefix + n] = to_string(e);
    for (const auto& [n, s] : r.notes) out.objects[prefix + n] = s;
    for (const auto& c : r.certificates) add(c, prefix);
  }
};

Certificate single(const std::string& claim, const std::string& identity, TriState t, const SamplerConfig& cfg) {
  Certificate c;
  c.claim = claim;
  c.sampler = cfg;
  c.add(identity, std::move(t));
  return c;
}

void run_kind(Context& cx) {
  const std::string& kind = cx.task.kind;
  const SamplerConfig& cfg = cx.cfg;
  const ChartPtr& chart = cx.spec.chart;

  if (kind == "flaschka_ratiu") {
    std::vector<Expr> cs;
    for (const auto* o : cx.list("casimirs")) cs.push_back(o->expr);
    cx.add_result(flaschka_ratiu(cx.volume(), cs, cfg));
  } else if (kind == "integrable_family") {
    std::vector<Expr> hs;
    for (const auto* o : cx.list("integrals")) hs.push_back(o->expr);
    auto fam = integrable_family(cx.get("field")->mv, hs, cx.volume(), cfg);
    for (const auto& r : fam) cx.add_result(r, "pi" + std::to_string(*r.family_index) + "/");
  } else if (kind == "linear_fr") {
    Matrix p = cx.get("P")->matrix;
    if (p.rows() == 0) p = Matrix(chart->dim(), 0);
    cx.add_result(linear_fr(chart, p, cx.get("A")->matrix, cfg));
  } else if (kind == "primitive") {
    const Form& w = cx.get("form")->form;
    const Object* base = cx.get("base");
    Form rho = primitive(w, base ? base->point : std::vector<Rational>{});
    cx.out.objects["rho"] = tensor_to_json(rho);
    cx.add(single("primitive", "d(rho) - omega", check_zero(d(rho) - w, cfg, chart), cfg));
  } else if (kind == "integrating_factor") {
    const Form& rho = cx.get("form")->form;
    int bound = static_cast<int>(option_number(cx.task, "degree_bound").value_or(4));
    auto basis = integrating_factor(rho, bound);
    json arr = json::array();
    Certificate closed;
    closed.claim = "closed";
    closed.sampler = cfg;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      arr.push_back(to_string(basis[i]));
      closed.add("d(a" + std::to_string(i + 1) + " rho)", check_zero(d(rho.scaled(basis[i])), cfg, chart));
    }
    cx.out.objects["factors"] = arr;
    cx.add(closed);
    if (const Object* planted = cx.get("planted")) {
      if (basis.size() != 1) throw ConstructionError("planted factor: expected a one-dimensional solution space, found " +
                                                     std::to_string(basis.size()));
      Expr ratio = normalize(basis[0] / planted->expr);
      cx.out.objects["planted_ratio"] = to_string(ratio);
      cx.add(single("planted", "d(a / a0)", check_zero(differential(chart, ratio), cfg, chart), cfg));
    }
  } else if (kind == "unimodularize") {
    const MultiVector& x = cx.get("field")->mv;
    VolumeForm omega = cx.volume();
    const Object* fo = cx.get("form");
    Form rho = fo ? fo->form : primitive(interior(x, omega.form()));
    Expr a;
    if (const Object* fa = cx.get("factor")) {
      a = fa->expr;
    } else {
      int bound = static_cast<int>(option_number(cx.task, "degree_bound").value_or(4));
      auto basis = integrating_factor(rho, bound);
      if (basis.empty()) throw ConstructionError("no polynomial integrating factor up to degree " + std::to_string(bound));
      a = basis.front();
    }
    if (!fo) cx.out.objects["rho"] = tensor_to_json(rho);
    cx.out.objects["a"] = to_string(a);
    cx.add_result(unimodularize(x, omega, rho, a, cfg));
  } else if (kind == "foliated_build") {
    std::vector<Form> alpha;
    for (const auto* o : cx.list("alpha")) alpha.push_back(o->form);
    FoliatedOptions fo;
    if (const Object* f = cx.get("field")) fo.x = f->mv;
    if (const Object* h = cx.get("hamiltonian")) fo.h = h->expr;
    cx.add_result(foliated_build(cx.volume(), alpha, cx.get("beta")->form, cfg, fo));
  } else if (kind == "normal_class_check") {
    cx.add(normal_class_check(cx.get("field")->mv, cx.get("hamiltonian")->expr, cx.get("normal")->mv, cfg));
  } else if (kind == "decomposable") {
    cx.add_result(decomposable(cx.get("field")->mv, cx.get("normal")->mv, cfg));
  } else if (kind == "hojman") {
    cx.add_result(hojman(cx.get("field")->mv, cx.get("hamiltonian")->expr, cx.get("symmetry")->mv, cfg));
  } else if (kind == "metric_normal") {
    cx.add_result(metric_normal(cx.get("field")->mv, cx.get("hamiltonian")->expr, *cx.get("metric")->metric, cfg));
  } else if (kind == "torus2") {
    auto xs = cx.list("fields"), hs = cx.list("hamiltonians"), ys = cx.list("normals");
    if (xs.size() != 2 || hs.size() != 2 || ys.size() != 2)
      throw std::invalid_argument("torus2 needs two fields, two hamiltonians and two normals");
    Torus2Options o;
    o.strict = option_bool(cx.task, "strict").value_or(true);
    cx.add_result(torus2(xs[0]->mv, xs[1]->mv, hs[0]->expr, hs[1]->expr, ys[0]->mv, ys[1]->mv, cfg, o));
  } else if (kind == "check_jacobi") {
    cx.add(jacobi_check(cx.get("bivector")->mv, cfg));
  } else if (kind == "check_casimir") {
    VolumeForm v = cx.volume();
    cx.add(casimir_check(cx.get("bivector")->mv, cx.get("function")->expr, cfg, cx.get("volume") ? &v : nullptr));
  } else if (kind == "check_poisson_vf") {
    cx.add(poisson_vf_check(cx.get("bivector")->mv, cx.get("field")->mv, cfg));
  } else if (kind == "check_hamiltonian") {
    Certificate c = hamiltonization_check(cx.get("bivector")->mv, cx.get("hamiltonian")->expr, cx.get("field")->mv, cfg);
    if (c.lambda) cx.out.lambda = to_string(*c.lambda);
    cx.add(c);
  } else if (kind == "check_first_integral") {
    const MultiVector& x = cx.get("field")->mv;
    Certificate c;
    c.claim = "first_integral";
    c.sampler = cfg;
    auto names = cx.task.inputs.at("functions");
    auto fs = cx.list("functions");
    for (std::size_t i = 0; i < fs.size(); ++i)
      c.add("L_X " + names[i], is_zero(lie_derivative(x, fs[i]->expr), *chart, cfg));
    cx.add(c);
  } else if (kind == "check_divergence") {
    Expr div = divergence(cx.get("field")->mv, cx.get("volume")->volume);
    cx.out.objects["divergence"] = to_string(normalize(div));
    cx.add(single("divergence", "div_Omega X", is_zero(div, *chart, cfg), cfg));
  } else if (kind == "check_conformal") {
    cx.add(conformal_identity_check(cx.get("bivector")->mv, cx.get("function")->expr, cfg));
  } else if (kind == "check_modular") {
    MultiVector z = modular_vf(cx.get("bivector")->mv, cx.get("volume")->volume);
    cx.out.objects["modular_vf"] = tensor_to_json(z.normalized());
    if (const Object* f = cx.get("field"))
      cx.add(single("modular", "modular_vf - sigma X", check_zero(z - f->mv.scaled(conventions::kModularSign), cfg, chart), cfg));
    else
      cx.add(single("modular", "modular_vf", check_zero(z, cfg, chart), cfg));
  } else if (kind == "check_commute") {
    auto names = cx.task.inputs.at("fields");
    auto xs = cx.list("fields");
    Certificate c;
    c.claim = "commute";
    c.sampler = cfg;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = i + 1; j < xs.size(); ++j)
        c.add("[" + names[i] + "," + names[j] + "]", check_zero(lie_bracket(xs[i]->mv, xs[j]->mv), cfg, chart));
    cx.add(c);
  } else if (kind == "check_zero") {
    cx.add(single("zero", "f", is_zero(cx.get("function")->expr, *chart, cfg), cfg));
  } else {
    throw std::invalid_argument("unknown task kind '" + kind + "'");
  }
}

void judge(TaskReport& t, const TaskDef& def) {
  if (def.expect_error) {
    t.pass = t.status == "error";
    if (t.pass) t.status = "expected_error";
    return;
  }
  if (t.status != "ok") {
    t.pass = false;
    return;
  }
  t.pass = true;
  for (auto& c : t.certificates) {
    auto it = def.expect.find(c.claim);
    if (it != def.expect.end()) {
      c.expected = it->second;
      if (c.verdict != it->second) t.pass = false;
    } else if (c.verdict == "NonZero") {
      t.pass = false;
    }
  }
  if (def.expect_lambda && t.lambda != def.expect_lambda) {
    t.pass = false;
    t.error = "expected lambda " + *def.expect_lambda + ", got " + t.lambda.value_or("none");
  }
  for (const auto& [claim, v] : def.expect) {
    bool found = false;
    for (const auto& c : t.certificates) found = found || c.claim == claim;
    if (!found) {
      t.pass = false;
      t.error = "expected claim '" + claim + "' was not produced";
    }
  }
}

}  // namespace

Report run_problem(const ProblemSpec& spec, const RunOptions& opts) {
  SamplerConfig cfg = spec.sampler;
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.samples) cfg.samples = *opts.samples;
  if (opts.tolerance) cfg.tolerance = *opts.tolerance;
  cfg.validate();

  Report rep;
  rep.problem = spec.source;
  rep.seed = cfg.seed;
  rep.samples = cfg.samples;
  rep.tolerance = cfg.tolerance;
  bool failed = false;

  for (const auto& def : spec.tasks) {
    TaskReport t;
    t.name = def.name;
    t.kind = def.kind;
    t.status = "ok";
    auto t0 = std::chrono::steady_clock::now();
    try {
      Context cx{spec, def, cfg, t};
      run_kind(cx);
    } catch (const std::exception& e) {
      t.status = "error";
      t.error = e.what();
    }
    if (opts.timings)
      t.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    judge(t, def);
    failed = failed || !t.pass;
    rep.tasks.push_back(std::move(t));
    if (failed && opts.fail_fast) break;
  }

  if (!(failed && opts.fail_fast))
    for (const auto& f : spec.flows) {
      FlowInput in;
      in.x = spec.object(f.field).mv;
      for (const auto& n : f.invariants) in.invariants.emplace_back(n, spec.object(n).expr);
      if (f.bivector) {
        in.pi = spec.object(*f.bivector).mv;
        in.h = spec.object(*f.hamiltonian).expr;
      }
      in.start = f.start;
      in.horizon = f.horizon;
      in.dt = f.dt;
      in.params = f.params;
      FlowRecord r;
      try {
        r = record_of(f.name, flow_conservation(in, cfg));
        r.pass = !r.truncated;
        for (const auto& [n, dr] : r.drift) r.pass = r.pass && dr <= f.max_drift;
        if (r.field_deviation) r.pass = r.pass && *r.field_deviation <= f.max_deviation;
      } catch (const std::exception& e) {
        r.name = f.name;
        r.truncated = true;
        r.truncation_reason = e.what();
        r.pass = false;
      }
      failed = failed || !r.pass;
      rep.flows.push_back(std::move(r));
      if (failed && opts.fail_fast) break;
    }
  rep.exit_code = failed ? 1 : 0;
  return rep;
}

}  // namespace hamil
