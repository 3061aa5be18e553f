#include "hamil/tasks.hpp"

#include <sstream>
#include <stdexcept>

namespace hamil {

namespace {

using K = ObjectKind;

std::vector<TaskInfo> build_catalog() {
  std::vector<TaskInfo> c;
  c.push_back({"flaschka_ratiu", true, "pi with i_pi Omega = dc_1 ^ ... ^ dc_{m-2}",
               {{"volume", K::volume, false, false}, {"casimirs", K::function, true, false}},
               {},
               {"m - 2 functions c_i are given (none for m = 2)", "the volume density does not vanish"},
               {"jacobi", "casimir c<i>"}});
  c.push_back({"integrable_family", true, "pi_i with pi_i#dh_j = delta_ij X from m - 1 first integrals",
               {{"field", K::vector}, {"integrals", K::function, true}, {"volume", K::volume, false, false}},
               {},
               {"every h_j is a first integral of X: L_X h_j = 0",
                "dh_1, ..., dh_{m-1} are independent at every sample",
                "X = f_i psi_i#dh_i for some function f_i"},
               {"preconditions", "ratio", "jacobi", "hamiltonization", "delta", "compatibility"}});
  c.push_back({"linear_fr", true, "constant pi, leafwise symplectic form and quadratic Hamiltonian of X = Ax",
               {{"A", K::matrix}, {"P", K::matrix}},
               {},
               {"trace A = 0", "the columns of P are independent and lie in ker A^T",
                "the Casimirs are c_i(x) = v_i . x for the columns v_i of P"},
               {"jacobi", "casimir c<i>", "hamiltonization"}});
  c.push_back({"primitive", true, "radial homotopy primitive of a closed polynomial form",
               {{"form", K::form}, {"base", K::point, false, false}},
               {},
               {"polynomial coefficients", "the form is closed"},
               {"primitive"}});
  c.push_back({"integrating_factor", true, "polynomials a of bounded degree with d(a rho) = 0",
               {{"form", K::form}, {"planted", K::function, false, false}},
               {"degree_bound"},
               {"polynomial coefficients"},
               {"closed", "planted"}});
  c.push_back({"unimodularize", true, "pi with i_pi Omega = a rho and h = 1/a on {a != 0}",
               {{"field", K::vector},
                {"volume", K::volume, false, false},
                {"form", K::form, false, false},
                {"factor", K::function, false, false}},
               {"degree_bound"},
               {"i_X Omega = d rho (rho defaults to the radial primitive of i_X Omega)",
                "rho admits an integrating factor a: d(a rho) = 0 (found by integrating_factor when not given)",
                "rho has rank at most two at every sample"},
               {"preconditions", "jacobi", "hamiltonization", "modular"}});
  c.push_back({"foliated_build", true, "pi with i_pi Omega = alpha_1 ^ ... ^ alpha_k ^ beta",
               {{"volume", K::volume, false, false},
                {"alpha", K::form, true, false},
                {"beta", K::form},
                {"field", K::vector, false, false},
                {"hamiltonian", K::function, false, false}},
               {},
               {"integrability: d alpha_i ^ alpha_1 ^ ... (alpha_i omitted) ^ ... ^ alpha_k = 0",
                "alpha_1 ^ ... ^ alpha_k ^ beta is closed",
                "k + grade(beta) = m - 2"},
               {"preconditions", "closed", "jacobi", "poisson_vector_field", "hamiltonization"}});
  c.push_back({"normal_class_check", true, "normalization and invariance of the normal class of Y",
               {{"field", K::vector}, {"hamiltonian", K::function}, {"normal", K::vector}},
               {},
               {"normalization: dh(Y) X = X", "invariance: [X,Y] ^ X ^ Y = 0",
                "consequence: [X,Y] ^ X = 0"},
               {"normal_class"}});
  c.push_back({"decomposable", true, "pi = Y ^ X with [pi,pi] = 2 [X,Y] ^ X ^ Y",
               {{"field", K::vector}, {"normal", K::vector}},
               {},
               {"none; the Jacobi verdict equals the verdict of [X,Y] ^ X ^ Y = 0"},
               {"decomposable_identity", "jacobi"}});
  c.push_back({"hojman", true, "pi = (1/dh(Z)) Z ^ X from a symmetry Z and a regular first integral h",
               {{"field", K::vector}, {"hamiltonian", K::function}, {"symmetry", K::vector}},
               {},
               {"h is a first integral of X: L_X h = 0", "dh(Z) does not vanish",
                "[X,Z] = pX + qZ for some functions p, q, certified as [X,Z] ^ X ^ Z = 0"},
               {"preconditions", "jacobi", "hamiltonization"}});
  c.push_back({"metric_normal", true, "Y0 = eta#dh / eta(dh,dh) and pi = Y0 ^ X for an invariant metric",
               {{"field", K::vector}, {"hamiltonian", K::function}, {"metric", K::metric}},
               {},
               {"eta(dh,dh) does not vanish (h is regular on the chart)",
                "the metric is X-invariant: L_X g = 0 (transversal invariance alone is not checked)"},
               {"invariance", "decomposable_identity", "jacobi", "hamiltonization"}});
  c.push_back({"torus2", true, "pi = Y1 ^ X1 + Y2 ^ X2 for a 2-torus action with momentum map (h1, h2)",
               {{"fields", K::vector, true}, {"hamiltonians", K::function, true}, {"normals", K::vector, true}},
               {"strict"},
               {"[X1,X2] = 0 and [Xi,Yj] = 0", "sum_j dh_i(Y_j) X_j = X_i for i = 1, 2",
                "consequences: [pi,pi] = 2[Y1,Y2] ^ X1 ^ X2 and dh_i([Y1,Y2]) = 0"},
               {"preconditions", "torus2_identity", "momentum_brackets", "jacobi", "momentum"}});

  c.push_back({"check_jacobi", false, "[pi,pi] = 0", {{"bivector", K::multivector}}, {}, {}, {"jacobi"}});
  c.push_back({"check_casimir", false, "pi#dc = 0, and dc ^ i_pi Omega = 0 when a volume is given",
               {{"bivector", K::multivector}, {"function", K::function}, {"volume", K::volume, false, false}},
               {}, {}, {"casimir"}});
  c.push_back({"check_poisson_vf", false, "L_X pi = 0", {{"bivector", K::multivector}, {"field", K::vector}}, {}, {},
               {"poisson_vector_field"}});
  c.push_back({"check_hamiltonian", false, "pi#dh = lambda X with lambda recovered",
               {{"bivector", K::multivector}, {"hamiltonian", K::function}, {"field", K::vector}}, {}, {},
               {"hamiltonization"}});
  c.push_back({"check_first_integral", false, "L_X c = 0 for every listed function",
               {{"field", K::vector}, {"functions", K::function, true}}, {}, {}, {"first_integral"}});
  c.push_back({"check_divergence", false, "div_Omega X = 0", {{"field", K::vector}, {"volume", K::volume}}, {}, {},
               {"divergence"}});
  c.push_back({"check_conformal", false, "[f pi, f pi] + 2 f pi#df ^ pi = 0 for Poisson pi",
               {{"bivector", K::multivector}, {"function", K::function}}, {}, {}, {"conformal_identity"}});
  c.push_back({"check_modular", false, "modular_vf(pi, Omega) = sigma X (0 when no field is given)",
               {{"bivector", K::multivector}, {"volume", K::volume}, {"field", K::vector, false, false}}, {}, {},
               {"modular"}});
  c.push_back({"check_commute", false, "[X_i, X_j] = 0 for every pair of listed fields",
               {{"fields", K::vector, true}}, {}, {}, {"commute"}});
  c.push_back({"check_zero", false, "f = 0", {{"function", K::function}}, {}, {}, {"zero"}});
  return c;
}

}  // namespace

const std::vector<TaskInfo>& task_catalog() {
  static const std::vector<TaskInfo> catalog = build_catalog();
  return catalog;
}

const TaskInfo* find_task(const std::string& id) {
  for (const auto& t : task_catalog())
    if (t.id == id) return &t;
  return nullptr;
}

namespace {

std::string describe_inputs(const TaskInfo& t) {
  std::ostringstream os;
  bool first = true;
  for (const auto& in : t.inputs) {
    os << (first ? "" : ", ") << in.role << ":" << object_kind_name(in.kind) << (in.list ? "[]" : "")
       << (in.required ? "" : "?");
    first = false;
  }
  return os.str();
}

}  // namespace

std::string list_tasks_text() {
  std::ostringstream os;
  for (const auto& t : task_catalog()) os << t.id << "  " << describe_inputs(t) << "\n";
  return os.str();
}

std::string explain_text(const std::string& id) {
  const TaskInfo* t = find_task(id);
  if (!t) throw std::invalid_argument("unknown task '" + id + "'");
  std::ostringstream os;
  os << t->id << ": " << t->summary << "\n";
  os << "inputs: " << describe_inputs(*t) << "\n";
  if (!t->options.empty()) {
    os << "options:";
    for (const auto& o : t->options) os << " " << o;
    os << "\n";
  }
  if (!t->hypotheses.empty()) {
    os << "hypotheses:\n";
    for (const auto& h : t->hypotheses) os << "  [ ] " << h << "\n";
  }
  os << "claims:";
  for (const auto& c : t->claims) os << " " << c;
  os << "\n";
  return os.str();
}

}  // namespace hamil
