#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "su2m/error.hpp"
#include "su2m/groups.hpp"
#include "su2m/io.hpp"
#include "su2m/measurement.hpp"
#include "su2m/metrology.hpp"
#include "su2m/probes.hpp"
#include "su2m/su4.hpp"
#include "su2m/verify/acceptance.hpp"
#include "su2m/verify/oracles.hpp"
#include "su2m/wigner.hpp"

using nlohmann::json;
using namespace su2m;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

Vec3 parse_vec3(const std::string& s, const std::string& flag) {
  Vec3 v;
  std::stringstream ss(s);
  std::string item;
  int k = 0;
  while (std::getline(ss, item, ',')) {
    if (k == 3) throw UsageError(flag + " needs exactly three comma-separated numbers");
    try {
      std::size_t used = 0;
      v(k) = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": cannot parse '" + item + "'");
    }
    ++k;
  }
  if (k != 3) throw UsageError(flag + " needs exactly three comma-separated numbers");
  return v;
}

Vec3 parse_direction(const std::string& s) {
  const Vec3 d = parse_vec3(s, "--direction");
  if (d.norm() == 0.0) throw UsageError("--direction must be nonzero");
  return d.normalized();
}

// A CSV table checked for shape before anything is written.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }

  void validate() const {
    if (header.empty()) throw Error(ErrorCode::InvalidArgument, "csv: empty header");
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].size() != header.size())
        throw Error(ErrorCode::InvalidArgument, "csv: row " + std::to_string(i) + " has wrong width");
  }

  void write(std::ostream& os) const {
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << r[k];
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
  }
};

using Schema = std::vector<std::pair<std::string, json::value_t>>;

bool type_matches(const json& v, json::value_t t) {
  switch (t) {
    case json::value_t::number_float:
      return v.is_number() || v.is_null();  // NaN serializes as null
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
      return v.is_number_integer();
    default:
      return v.type() == t;
  }
}

void validate_json(const json& j, const Schema& schema) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "output is not a JSON object");
  for (const auto& [key, type] : schema) {
    if (!j.contains(key)) throw Error(ErrorCode::InvalidArgument, "output is missing '" + key + "'");
    if (!type_matches(j.at(key), type)) throw Error(ErrorCode::InvalidArgument, "output field '" + key + "' has wrong type");
  }
}

const Schema kStateSchema = {{"two_j", json::value_t::number_integer},
                             {"tensor", json::value_t::boolean},
                             {"amps", json::value_t::array}};
const Schema kReportSchema = {{"first_moments", json::value_t::array},
                              {"cross_moments", json::value_t::array},
                              {"variances", json::value_t::array},
                              {"target_variance", json::value_t::number_float},
                              {"max_residual", json::value_t::number_float},
                              {"weak_commutativity", json::value_t::number_float}};

void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  body(out);
}

void emit_json(const std::string& path, const json& j) {
  emit(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

void emit_csv(const std::string& path, const CsvTable& t) {
  t.validate();
  emit(path, [&](std::ostream& os) { t.write(os); });
}

json vec_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json complex_list(const CVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
  return a;
}

// ---- subcommands ----

struct ProbeArgs {
  std::string kind;
  int two_j = -1;
  double xi = std::acos(1.0 / std::sqrt(3.0));
  std::string deltas = "0,0,0";
  std::string axis = "z";
  std::uint64_t seed = 20240611;
  std::string out;
};

int run_probe(const ProbeArgs& a, double tol) {
  const SpinRep rep = build_spin_rep(a.two_j);
  ProbeState state;
  json extra = json::object();
  if (a.kind == "ghz") {
    const Axis ax = a.axis == "x" ? Axis::X : a.axis == "y" ? Axis::Y : Axis::Z;
    state = ghz_state(rep, ax);
    extra["axis"] = a.axis;
  } else if (a.kind == "compass") {
    const Vec3 d = parse_vec3(a.deltas, "--deltas");
    state = compass_state(rep, d);
    extra["deltas"] = vec_json(d);
  } else if (a.kind == "tetrahedral") {
    state = tetrahedral_state(rep);
  } else if (a.kind == "s3-prism") {
    state = s3_prism_state(rep, a.xi);
    extra["xi"] = a.xi;
  } else if (a.kind == "s3-finetuned") {
    FineTuneOptions o;
    o.seed = a.seed;
    const FineTuneResult r = fine_tune_invariant(build_group(GroupKind::S3Prism, rep), rep, o);
    state = r.state;
    extra["fine_tune"] = {{"residual", r.residual},
                          {"above_tolerance", r.above_tolerance},
                          {"coefficients", complex_list(r.coefficients)},
                          {"restart_residuals", r.restart_residuals},
                          {"seed", a.seed}};
  } else {
    state = maximally_entangled_probe(rep);
  }
  const ConditionReport report = check_conditions(rep, state);
  json j = state_to_json(state);
  validate_json(j, kStateSchema);
  j["kind"] = a.kind;
  j["conditions"] = report_to_json(report);
  validate_json(j["conditions"], kReportSchema);
  j["optimal"] = report.max_residual < tol;
  j["tolerance"] = tol;
  for (auto& [k, v] : extra.items()) j[k] = v;
  emit_json(a.out, j);
  return 0;
}

int run_check(const std::string& path, double tol) {
  const ProbeState s = read_state_file(path);
  const ConditionReport r = check_conditions(s);
  json j = report_to_json(r);
  j["two_j"] = s.two_j;
  j["tensor"] = s.tensor;
  j["tolerance"] = tol;
  j["optimal"] = r.max_residual < tol;
  validate_json(j, kReportSchema);
  emit_json("", j);
  return r.max_residual < tol ? 0 : kExitFail;
}

int run_group_info(const std::string& name, int two_j) {
  const SpinRep rep = build_spin_rep(two_j);
  const GroupKind kind = name == "a4" ? GroupKind::A4Tetrahedral : GroupKind::S3Prism;
  const FiniteGroupRep g = build_group(kind, rep);
  const TrivialIrrepData t = trivial_irrep(g);
  json basis = json::array();
  for (const CVector& b : t.basis) basis.push_back(complex_list(b));
  json j = {{"group", g.name},
            {"two_j", two_j},
            {"order", g.order()},
            {"generators", g.generator_descriptions},
            {"multiplicity", t.multiplicity},
            {"basis", basis}};
  if (kind == GroupKind::S3Prism) j["multiplicity_formula"] = s3_multiplicity_formula(two_j / 2);
  validate_json(j, {{"order", json::value_t::number_unsigned},
                    {"multiplicity", json::value_t::number_integer},
                    {"basis", json::value_t::array}});
  emit_json("", j);
  return 0;
}

struct CurveArgs {
  std::string state;
  std::string direction = "1,1,1";
  double tmin = 0.0;
  double tmax = 3.1;
  int points = 200;
  bool log = false;
  std::string scheme = "kl";
  std::string out;
};

std::vector<double> curve_grid(const CurveArgs& a) {
  if (a.points < 1) throw UsageError("--points must be positive");
  if (a.tmax < a.tmin) throw UsageError("--tmax must not be below --tmin");
  if (a.log) {
    if (a.tmin <= 0.0) throw UsageError("--log needs a positive --tmin");
    return log_grid(a.tmin, a.tmax, a.points);
  }
  return linear_grid(a.tmin, a.tmax, a.points);
}

int run_crb_curve(const CurveArgs& a) {
  const ProbeState s = read_state_file(a.state);
  const Vec3 dir = parse_direction(a.direction);
  CsvTable t{{"t", "trace_inv_qfim", "min_eig", "is_singular"}, {}};
  for (const CrbPoint& p : scalar_crb_curve(s, dir, curve_grid(a)))
    t.add({num(p.t), num(p.trace_inv), num(p.min_eig), p.singular ? "1" : "0"});
  emit_csv(a.out, t);
  return 0;
}

int run_cfi_curve(const CurveArgs& a) {
  const ProbeState s = read_state_file(a.state);
  const SpinRep rep = build_spin_rep(s.two_j);
  const Vec3 dir = parse_direction(a.direction);
  std::optional<MeasurementScheme> scheme;
  ObservableList obs;
  if (a.scheme == "kl") {
    scheme = kl_scheme(s);
    obs = observables_from_scheme(*scheme);
  } else {
    obs = parity_observables(rep, s.tensor);
  }
  MomentsOptions mo;
  mo.joint_density = !scheme.has_value();
  CsvTable t{{"t", "cfi_trace", "moments_trace", "qfim_trace"}, {}};
  for (double x : curve_grid(a)) {
    const Vec3 th = x * dir;
    double cfi = std::nan(""), mom = std::nan("");
    try {
      cfi = (scheme ? classical_fim(*scheme, s, th) : classical_fim(obs, s, th)).trace();
    } catch (const Error&) {
    }
    try {
      mom = moments_matrix(obs, s, th, mo).matrix.trace();
    } catch (const Error&) {
    }
    t.add({num(x), num(cfi), num(mom), num(qfim(rep, s, th).matrix.trace())});
  }
  emit_csv(a.out, t);
  return 0;
}

int run_compass_scan(int nmin, int nmax, bool optimize, const std::string& out) {
  if (nmax < 2) throw UsageError("--nmax must be at least 2");
  if (nmin < 2) throw UsageError("--nmin must be at least 2");
  std::vector<int> ns;
  for (int n = nmin + (nmin % 2); n <= nmax; n += 2) ns.push_back(n);
  CsvTable t;
  if (optimize) {
    t.header = {"n", "overlap", "delta_x", "delta_y", "delta_z"};
    for (int n : ns) {
      const CompassOverlap o = compass_overlap_optimized(n);
      t.add({std::to_string(n), num(o.overlap), num(o.deltas(0)), num(o.deltas(1)), num(o.deltas(2))});
    }
  } else {
    t.header = {"n", "overlap"};
    for (const CompassOverlap& o : compass_trivial_overlap_scan(ns)) t.add({std::to_string(o.n), num(o.overlap)});
  }
  emit_csv(out, t);
  return 0;
}

json relations_json(const Su4Relations& r) {
  return {{"w_cycle", r.w_cycle}, {"z_action", r.z_action}, {"w4", r.w4},
          {"z4", r.z4},           {"zw4", r.zw4},           {"zw4_central", r.zw4_central},
          {"adjoint_zw4", r.adjoint_zw4}};
}

int run_su4_check(const std::string& probe, std::uint64_t seed) {
  json j;
  const Su4Rep def = build_su4_rep(Su4RepKind::Defining);
  j["defining_relations"] = relations_json(su4_relations(def));
  j["defining_group_order"] = su4_group(def).order();
  j["probe"] = probe;

  std::array<CMatrix, 4> gens;
  CVector psi;
  double casimir = 0.0;
  if (probe == "entangled") {
    gens = su4_tensor_generators(def.generators);
    psi = su4_entangled_probe();
    casimir = def.casimir_value;
    j["space"] = "defining (x) defining, generators X_i (x) I";
  } else {
    const Su4Rep rep = build_su4_rep(Su4RepKind::SymmetricFourth);
    const FiniteGroupRep g = su4_group(rep);
    verify::Rng rng(seed);
    psi = twirl(g, verify::random_vector(rep.dim, rng));
    gens = rep.generators;
    casimir = rep.casimir_value;
    j["space"] = su4_rep_name(rep.kind);
    j["relations"] = relations_json(su4_relations(rep));
    j["group_order"] = g.order();
    j["trivial_multiplicity"] = trivial_irrep(g).multiplicity;
    j["seed"] = seed;
  }
  const Su4ConditionReport c = su4_conditions(gens, psi, casimir);
  const RMatrix f = su4_qfim(gens, psi);
  const CirculantFit fit = circulant_fit(f);
  j["conditions"] = {{"first_moments", vec_json(c.first_moments)},
                     {"squares", vec_json(c.squares)},
                     {"a", c.a},
                     {"spread", c.spread},
                     {"adjacent", vec_json(c.adjacent)},
                     {"opposite", vec_json(c.opposite)},
                     {"max_residual", c.max_residual},
                     {"a_upper_bound", c.a_upper_bound}};
  j["qfim"] = matrix_to_json(f);
  j["circulant"] = {{"a", fit.a}, {"b", fit.b}, {"c", fit.c}, {"deviation", fit.deviation}};
  validate_json(j, {{"defining_relations", json::value_t::object},
                    {"conditions", json::value_t::object},
                    {"qfim", json::value_t::array},
                    {"circulant", json::value_t::object}});
  emit_json("", j);
  return 0;
}

void write_gnuplot(const std::string& script, const std::string& csv) {
  if (csv.empty()) throw UsageError("--gnuplot needs --out so the script can reference the data file");
  std::ofstream os(script);
  if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write " + script);
  os << "set datafile separator ','\n"
     << "set xlabel 'phi'\nset ylabel 'theta'\n"
     << "set xrange [0:2*pi]\nset yrange [pi:0]\n"
     << "set view map\nset palette defined (-1 'blue', 0 'white', 1 'red')\n"
     << "splot '" << csv << "' every ::1 using 2:1:3 with points pt 5 ps 0.6 palette notitle\n";
}

int run_wigner(const std::string& state, int ntheta, int nphi, const std::string& out, const std::string& gp) {
  if (ntheta < 2 || nphi < 1) throw UsageError("--ntheta must be at least 2 and --nphi at least 1");
  const ProbeState s = read_state_file(state);
  const WignerGrid g = spin_wigner(s, ntheta, nphi);
  CsvTable t{{"theta", "phi", "w"}, {}};
  t.rows.reserve(static_cast<std::size_t>(ntheta) * nphi);
  for (int i = 0; i < ntheta; ++i)
    for (int k = 0; k < nphi; ++k) t.add({num(g.thetas(i)), num(g.phis(k)), num(g.values(i, k))});
  emit_csv(out, t);
  if (!gp.empty()) write_gnuplot(gp, out);
  return 0;
}

int run_verify_all(std::uint64_t seed, const std::vector<int>& only) {
  verify::AcceptanceOptions o;
  o.seed = seed;
  std::vector<verify::CriterionResult> results;
  if (only.empty()) {
    results = verify::run_acceptance(o, &std::cout);
  } else {
    for (int id : only) {
      results.push_back(verify::run_criterion(id, o));
      std::cout << verify::format_result(results.back()) << '\n';
    }
  }
  int failed = 0;
  for (const auto& r : results) failed += !r.passed;
  if (failed == 0) {
    std::cout << "all " << results.size() << " criteria passed\n";
    return 0;
  }
  std::cout << failed << " of " << results.size() << " criteria failed:";
  for (const auto& r : results)
    if (!r.passed) std::cout << ' ' << r.id << ' ' << r.name << ';';
  std::cout << '\n';
  return kExitFail;
}

double tolerance_from_env() {
  const char* env = std::getenv("SU2M_TOL");
  if (!env || !*env) return 1e-10;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (*end != '\0' || !(v > 0.0) || !std::isfinite(v)) throw UsageError(std::string("SU2M_TOL is not a positive number: ") + env);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SU(2) multiparameter metrology toolkit"};
  app.require_subcommand(1);

  ProbeArgs pa;
  auto* probe = app.add_subcommand("probe", "Construct a probe state and report its metrology conditions");
  probe->add_option("--kind", pa.kind, "Probe family")
      ->required()
      ->check(CLI::IsMember({"ghz", "compass", "tetrahedral", "s3-prism", "s3-finetuned", "entangled"}));
  probe->add_option("--two-j", pa.two_j, "Twice the spin, N = 2J")->required()->check(CLI::Range(0, 400));
  probe->add_option("--xi", pa.xi, "Polar angle of the seed coherent state (s3-prism)");
  probe->add_option("--deltas", pa.deltas, "Compass phases a,b,c");
  probe->add_option("--axis", pa.axis, "GHZ axis")->check(CLI::IsMember({"x", "y", "z"}));
  probe->add_option("--seed", pa.seed, "Restart seed (s3-finetuned)");
  probe->add_option("--out", pa.out, "Output JSON file (default stdout)");

  std::string check_state;
  auto* check = app.add_subcommand("check", "Print the condition report of a state file");
  check->add_option("--state", check_state, "State JSON file")->required();

  std::string group_name_arg;
  int group_two_j = 0;
  auto* ginfo = app.add_subcommand("group-info", "Order, trivial multiplicity and invariant basis");
  ginfo->add_option("--group", group_name_arg)->required()->check(CLI::IsMember({"a4", "s3"}));
  ginfo->add_option("--two-j", group_two_j)->required()->check(CLI::Range(0, 400));

  CurveArgs ca;
  auto* crb = app.add_subcommand("crb-curve", "Scalar quantum Cramer-Rao curve tr F(t n)^-1");
  crb->add_option("--state", ca.state)->required();
  crb->add_option("--direction", ca.direction, "Direction n, normalized");
  crb->add_option("--tmin", ca.tmin);
  crb->add_option("--tmax", ca.tmax);
  crb->add_option("--points", ca.points);
  crb->add_flag("--log", ca.log, "Logarithmic t grid");
  crb->add_option("--out", ca.out, "Output CSV (default stdout)");

  CurveArgs cf;
  cf.tmin = 1e-3;
  cf.tmax = 0.8;
  cf.points = 100;
  auto* cfi = app.add_subcommand("cfi-curve", "Classical Fisher and moments-matrix traces along a direction");
  cfi->add_option("--state", cf.state)->required();
  cfi->add_option("--scheme", cf.scheme)->check(CLI::IsMember({"kl", "parity"}));
  cfi->add_option("--direction", cf.direction);
  cfi->add_option("--tmin", cf.tmin);
  cfi->add_option("--tmax", cf.tmax);
  cfi->add_option("--points", cf.points);
  cfi->add_flag("--log", cf.log, "Logarithmic t grid");
  cfi->add_option("--out", cf.out, "Output CSV (default stdout)");

  int nmin = 2, nmax = 32;
  bool optimize = false;
  std::string scan_out;
  auto* scan = app.add_subcommand("compass-scan", "Overlap of compass states with the A4 trivial irrep");
  scan->add_option("--nmax", nmax)->required();
  scan->add_option("--nmin", nmin);
  scan->add_flag("--optimize-deltas", optimize, "Maximize the overlap over compass phases");
  scan->add_option("--out", scan_out);

  std::string su4_probe = "entangled";
  std::uint64_t su4_seed = 20240611;
  auto* su4 = app.add_subcommand("su4-check", "SU(4) symmetry relations, conditions and QFIM");
  su4->add_option("--probe", su4_probe)->check(CLI::IsMember({"entangled", "twirled"}));
  su4->add_option("--seed", su4_seed);

  std::string w_state, w_out, w_gp;
  int ntheta = 181, nphi = 360;
  auto* wig = app.add_subcommand("wigner", "Spin Wigner function on a theta-phi grid");
  wig->add_option("--state", w_state)->required();
  wig->add_option("--ntheta", ntheta);
  wig->add_option("--nphi", nphi);
  wig->add_option("--out", w_out, "Long-form CSV theta,phi,w (default stdout)");
  wig->add_option("--gnuplot", w_gp, "Also write a gnuplot script for the CSV");

  std::uint64_t verify_seed = 20240611;
  std::vector<int> only;
  auto* ver = app.add_subcommand("verify-all", "Run the acceptance criteria");
  ver->add_option("--seed", verify_seed);
  ver->add_option("--criterion", only, "Run only these criterion ids")->check(CLI::Range(1, 13));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const double tol = tolerance_from_env();
    if (*probe) return run_probe(pa, tol);
    if (*check) return run_check(check_state, tol);
    if (*ginfo) return run_group_info(group_name_arg, group_two_j);
    if (*crb) return run_crb_curve(ca);
    if (*cfi) return run_cfi_curve(cf);
    if (*scan) return run_compass_scan(nmin, nmax, optimize, scan_out);
    if (*su4) return run_su4_check(su4_probe, su4_seed);
    if (*wig) return run_wigner(w_state, ntheta, nphi, w_out, w_gp);
    if (*ver) return run_verify_all(verify_seed, only);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const bool bad_input = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::InvalidArgument ||
                           e.code() == ErrorCode::DimensionMismatch || e.code() == ErrorCode::NotIntegerSpin;
    return bad_input ? kExitUsage : kExitFail;
  }
  return kExitUsage;
}
