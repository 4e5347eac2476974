#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qheat/cstar_model.hpp"
#include "qheat/parallel.hpp"
#include "qheat/sampling.hpp"
#include "qheat/semigroup.hpp"
#include "qheat/sobolev.hpp"
#include "qheat/spectrum.hpp"

namespace qheat::cli {

std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

namespace {

std::string cell_text(const Cell& c, int precision) {
  struct Visitor {
    int precision;
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return format_number(v, precision); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(const Integer& v) const { return v.digits; }
  };
  return std::visit(Visitor{precision}, c);
}

nlohmann::ordered_json cell_json(const Cell& c, int precision) {
  struct Visitor {
    int precision;
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double v) const {
      if (!std::isfinite(v)) return nullptr;
      return std::strtod(format_number(v, precision).c_str(), nullptr);
    }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    // Dimensions outgrow 64 bits quickly; keep them exact as strings.
    nlohmann::ordered_json operator()(const Integer& v) const { return v.digits; }
  };
  return std::visit(Visitor{precision}, c);
}

}  // namespace

void write_csv(std::ostream& out, const Table& t, int precision) {
  out << "# schema_version=" << kSchemaVersion;
  for (const auto& [k, v] : t.meta) {
    out << ' ' << k << '=';
    if (v.find_first_of(" =\"") == std::string::npos) {
      out << v;
    } else {
      out << '"';
      for (char c : v) out << (c == '"' ? "\"\"" : std::string(1, c));
      out << '"';
    }
  }
  out << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_field(t.columns[i]);
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(cell_text(row[i], precision));
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& t, int precision) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.meta) doc["meta"][k] = v;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i], precision);
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

namespace {

// A usage-level problem detected after parsing: exit 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Result {
  Table table;
  bool ok = true;
};

struct Options {
  std::string format = "csv";
  int precision = 12;
  std::string output;

  int n = 5;
  int kmax = 10;
  double a = 1.0;
  std::string nu = "none";
  double tol = 1e-13;

  double p = 4.0;
  double D = 1.0;
  std::vector<double> t;
  std::optional<double> c;
  std::string element;
  std::string element_file;
  int random = 0;
  std::uint64_t seed = 0;

  double s = 3.0;
  std::string family = "poly:a=2";
  std::vector<double> grid;

  std::string algebra;
  std::vector<double> y;
};

std::string num(double v) { return format_number(v, 17); }

void require(bool cond, const std::string& msg) {
  if (!cond) throw UsageError(msg);
}

GeneratingFunctional functional(const Options& o) {
  GeneratingFunctional g;
  g.drift = o.a;
  if (o.nu != "none" && !o.nu.empty()) g.levy = MeasureSpec::parse(o.nu);
  g.validate(o.n);
  return g;
}

Result cmd_spectrum(const Options& o) {
  require(o.n >= 4, "spectrum: --n must be >= 4");
  require(o.kmax >= 0, "spectrum: --kmax must be >= 0");
  const GeneratingFunctional g = functional(o);
  const SpectrumTable st = spectrum_table(o.n, o.kmax, g, o.tol);
  Result r;
  r.table.meta = {{"command", "spectrum"}, {"n", std::to_string(o.n)}, {"a", num(o.a)}, {"nu", o.nu}};
  if (!st.warning.empty()) r.table.meta.emplace_back("warning", st.warning);
  r.table.columns = {"k", "lambda", "n_k", "m_k", "lower", "upper", "bounds_ok"};
  for (const auto& row : st.rows) {
    Cell ok = std::monostate{};
    if (row.bounds_ok) ok = *row.bounds_ok;
    r.table.rows.push_back({static_cast<long long>(row.k), row.lambda, Integer{row.n_k.str()}, Integer{row.m_k.str()},
                            row.lower, row.upper, ok});
  }
  r.ok = st.all_bounds_ok();
  return r;
}

Result cmd_tau(const Options& o) {
  require(o.p > 2, "tau: --p must be > 2");
  require(o.n >= 1, "tau: --n must be positive");
  require(o.D > 0, "tau: --D must be positive");
  const HyperTime h = hypercontractivity_time(o.p, o.n, o.D);
  Result r;
  r.table.meta = {{"command", "tau"}};
  r.table.columns = {"p", "n", "D", "Y", "tau", "residual", "two_to_p_time", "pass"};
  Cell tp = std::monostate{};
  if (o.p >= 4) tp = two_to_p_time(o.p, o.n, o.D);
  r.ok = h.residual < 1e-12;
  r.table.rows.push_back({o.p, static_cast<long long>(o.n), o.D, h.y, h.tau, h.residual, tp, r.ok});
  return r;
}

struct Case {
  std::string id;
  CentralElement<double> x;
};

std::vector<Case> verify_cases(const Options& o, bool positive, Table& table) {
  const int sources = int(!o.element.empty()) + int(!o.element_file.empty()) + int(o.random > 0);
  require(sources == 1, "verify: give exactly one of --element, --element-file, --random");
  std::vector<Case> cases;
  if (!o.element.empty()) {
    cases.push_back({"element", parse_element(o.n, o.element)});
  } else if (!o.element_file.empty()) {
    cases.push_back({"file", read_element(o.n, o.element_file)});
  } else {
    require(o.kmax >= 0, "verify: --kmax must be >= 0");
    Prng rng(o.seed);
    table.meta.emplace_back("prng", std::string(Prng::kName));
    table.meta.emplace_back("seed", std::to_string(o.seed));
    table.meta.emplace_back("kmax", std::to_string(o.kmax));
    for (int i = 0; i < o.random; ++i) {
      cases.push_back({"random-" + std::to_string(i),
                       positive ? random_positive_element(o.n, o.kmax, rng) : random_element(o.n, o.kmax, rng)});
    }
  }
  for (const auto& c : cases) {
    require(!c.x.is_zero(), "verify: element " + c.id + " is zero");
    if (positive) require(is_positive_reduced(c.x), "verify: element " + c.id + " is not positive");
  }
  return cases;
}

Result cmd_verify(const std::string& kind, const Options& o) {
  require(o.n >= 4, "verify: --n must be >= 4");
  require(o.D > 0, "verify: --D must be positive");
  Result r;
  r.table.meta = {{"command", "verify " + kind}, {"n", std::to_string(o.n)}};
  r.table.columns = {"case_id", "name", "lhs", "rhs", "margin", "quad_err", "pass"};
  const SemigroupSpec spec(o.n);
  const std::vector<Case> cases = verify_cases(o, kind == "lsi", r.table);

  struct Job {
    std::size_t case_index;
    double param;
    std::string id;
  };
  std::vector<Job> jobs;
  std::function<InequalityReport(const Job&)> eval;

  if (kind == "ultra") {
    const std::vector<double> ts = o.t.empty() ? std::vector<double>{0.1, 1.0, 10.0} : o.t;
    for (double t : ts) require(t > 0, "verify ultra: --t must be > 0");
    const UltraParams params = UltraParams::for_dimension(o.n, o.D);
    r.table.meta.emplace_back("alpha", num(params.alpha));
    r.table.meta.emplace_back("beta", num(params.beta));
    r.table.meta.emplace_back("gamma", num(params.gamma));
    for (std::size_t i = 0; i < cases.size(); ++i)
      for (double t : ts) jobs.push_back({i, t, cases[i].id + "@t=" + format_number(t, 6)});
    eval = [&, params](const Job& j) { return ultra_margin(cases[j.case_index].x, j.param, spec, params); };
  } else if (kind == "hyper") {
    require(o.p > 2, "verify hyper: --p must be > 2");
    std::vector<double> ts = o.t;
    if (ts.empty()) {
      ts.push_back(tau_p(o.p, o.n, o.D));
      r.table.meta.emplace_back("t_source", "tau_p");
    }
    for (double t : ts) require(t >= 0, "verify hyper: --t must be >= 0");
    r.table.meta.emplace_back("p", num(o.p));
    for (std::size_t i = 0; i < cases.size(); ++i)
      for (double t : ts) jobs.push_back({i, t, cases[i].id + "@t=" + format_number(t, 6)});
    eval = [&](const Job& j) { return hyper_margin(cases[j.case_index].x, j.param, o.p, spec); };
  } else if (kind == "lsi") {
    double c = 0;
    if (o.c) {
      c = *o.c;
      r.table.meta.emplace_back("c_source", "flag");
    } else {
      c = lsi_c_from_hyper(o.n, o.D);
      r.table.meta.emplace_back("c_source", "heuristic:tau_4");
    }
    require(c > 0, "verify lsi: --c must be positive");
    r.table.meta.emplace_back("c", num(c));
    for (std::size_t i = 0; i < cases.size(); ++i) jobs.push_back({i, c, cases[i].id});
    eval = [&](const Job& j) { return log_sobolev_defect(cases[j.case_index].x, j.param, spec); };
  } else {
    for (std::size_t i = 0; i < cases.size(); ++i) jobs.push_back({i, 0.0, cases[i].id});
    eval = [&](const Job& j) { return spectral_gap_defect(cases[j.case_index].x, spec); };
  }

  const auto reports = detail::parallel_map<InequalityReport>(jobs.size(), [&](std::size_t i) { return eval(jobs[i]); });
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& rep = reports[i];
    r.table.rows.push_back({jobs[i].id, rep.name, rep.lhs, rep.rhs, rep.margin, rep.quadrature_error, rep.pass});
    r.ok = r.ok && rep.pass;
  }
  return r;
}

Result cmd_sharpness(const std::string& kind, const Options& o) {
  require(!o.grid.empty(), "sharpness: --grid is required");
  Result r;
  r.table.meta = {{"command", "sharpness " + kind}, {"n", std::to_string(o.n)}, {"s", num(o.s)}};
  r.table.columns = {"grid", "lhs", "rhs", "ratio", "flag"};
  ScanTable scan;
  if (kind == "criterion") {
    require(o.n >= 5, "sharpness: --n must be >= 5");
    for (double t : o.grid) require(t > 0, "sharpness criterion: grid values are times t > 0");
    r.table.meta.emplace_back("rhs", "same sum with doubled truncation");
    scan = criterion_scan(o.n, o.s, o.grid, o.tol);
  } else {
    SharpnessScanConfig cfg;
    cfg.n = o.n;
    cfg.s = o.s;
    cfg.p = o.p;
    cfg.kind = kind == "hls" ? ScanKind::hls : ScanKind::hy;
    cfg.family = Family::parse(o.family);
    cfg.grid = o.grid;
    cfg.tol = o.tol;
    cfg.validate();
    r.table.meta.emplace_back("p", num(o.p));
    r.table.meta.emplace_back("family", cfg.family.to_string());
    scan = sharpness_scan(cfg);
  }
  r.table.meta.emplace_back("label", scan.label);
  r.table.meta.emplace_back("growth_exponent", format_number(scan.growth_exponent, o.precision));
  for (const auto& row : scan.rows) r.table.rows.push_back({row.grid, row.lhs, row.rhs, row.ratio, row.flag});
  return r;
}

Result cmd_delta_form(const Options& o) {
  require(!o.algebra.empty(), "algebra check-delta-form: --algebra is required");
  const AlgebraShape shape = AlgebraShape::parse(o.algebra);
  const double defect = delta_form_defect(shape);
  Result r;
  r.table.meta = {{"command", "algebra check-delta-form"}, {"convention", "m m* = dim(B) id"}};
  r.table.columns = {"algebra", "dim_b", "defect", "pass"};
  r.ok = defect < 1e-12;
  r.table.rows.push_back({shape.to_string(), static_cast<long long>(dim_b(shape)), defect, r.ok});
  return r;
}

Result cmd_series(const Options& o) {
  std::vector<double> ys = o.y;
  if (ys.empty())
    for (int i = 1; i <= 9; ++i) ys.push_back(i / 10.0);
  const double tol = o.tol > 1e-13 ? o.tol : 1e-10;
  Result r;
  r.table.meta = {{"command", "series check-identity"}};
  r.table.columns = {"Y", "partial_sum", "closed_form", "abs_err", "tail_bound", "terms", "pass"};
  for (double y : ys) {
    require(y > 0 && y < 1, "series: Y must be in (0, 1)");
    const double closed = hyper_series(y);
    // (2k+1)^2 <= 4 (1+k)^2
    long K = 1;
    while (4.0 * weighted_geometric_tail(K, y) > 1e-3 * tol) ++K;
    double sum = 0;
    for (long k = K; k >= 1; --k) sum += (2.0 * k + 1) * (2.0 * k + 1) * std::pow(y, static_cast<double>(k));
    const double tail = 4.0 * weighted_geometric_tail(K, y);
    const double err = std::abs(sum - closed);
    const bool pass = err <= tol * std::max(1.0, closed);
    r.ok = r.ok && pass;
    r.table.rows.push_back({y, sum, closed, err, tail, static_cast<long long>(K), pass});
  }
  return r;
}

// "verify gap" etc.: the leading non-option tokens name the subcommand path.
std::vector<std::string> command_path(const std::vector<std::string>& args) {
  std::vector<std::string> path;
  for (std::size_t i = 0; i < args.size() && path.size() < 2; ++i) {
    const std::string& a = args[i];
    if (a.rfind("-", 0) == 0) {
      if (a == "--config" || a == "--format" || a == "--precision" || a == "--output") ++i;
      continue;
    }
    path.push_back(a);
  }
  return path;
}

// Folds --config into the argument list: every key not given explicitly is
// appended as a flag, so the command line wins. Sections may narrow a key to
// a subcommand ("[verify.gap]"); top-level keys apply everywhere.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_config(in);
  } catch (const CLI::ParseError& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  const std::vector<std::string> cmd = command_path(args);
  auto given = [&args](const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
  };
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--" || item.name.empty()) continue;  // section markers
    bool applies = item.parents.empty() || (item.parents.size() == 1 && item.parents[0] == "default");
    if (!applies) {
      applies = item.parents.size() <= cmd.size() && std::equal(item.parents.begin(), item.parents.end(), cmd.begin());
    }
    if (!applies) continue;
    const std::string flag = "--" + item.name;
    if (given(flag)) continue;
    args.push_back(flag);
    for (const auto& v : item.inputs) args.push_back(v);
  }
  return args;
}

int env_precision() {
  const char* env = std::getenv("QHEAT_PRECISION");
  if (env == nullptr || *env == '\0') return 12;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 17) throw UsageError("QHEAT_PRECISION must be an integer in [1, 17]");
  return static_cast<int>(v);
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"qheat: heat semigroups and functional inequalities on quantum automorphism groups"};
  app.name("qheat");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  auto* precision = app.add_option("--precision", o.precision, "Significant digits (default 12, or QHEAT_PRECISION)")
                        ->check(CLI::Range(1, 17));
  app.add_option("--output", o.output, "Write the report to this file instead of stdout");
  app.add_option("--config", "INI file pre-setting any flag; explicit flags win");

  std::string leaf;
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues, dimensions and bounds per level");
  spectrum->add_option("--n", o.n, "dim B")->required();
  spectrum->add_option("--kmax", o.kmax, "Highest level");
  spectrum->add_option("--a", o.a, "Drift of the generating functional");
  spectrum->add_option("--nu", o.nu, "Levy measure: atoms=x:w,...;density=none|table:<file>");
  spectrum->add_option("--tol", o.tol, "Quadrature tolerance for the Levy part");

  auto* tau = app.add_subcommand("tau", "Hypercontractivity time tau_p");
  tau->add_option("--p", o.p)->required();
  tau->add_option("--n", o.n)->required();
  tau->add_option("--D", o.D, "Rapid decay constant");

  auto* verify = app.add_subcommand("verify", "Check a functional inequality on central elements");
  verify->require_subcommand(1);
  const std::pair<const char*, const char*> checks[] = {
      {"ultra", "Sup-norm bound for T_t"},
      {"hyper", "||T_t x||_p <= ||x||_2 at t = tau_p"},
      {"lsi", "Log-Sobolev inequality"},
      {"gap", "Spectral gap"},
  };
  for (const auto& [name, help] : checks) {
    auto* sub = verify->add_subcommand(name, help);
    sub->add_option("--n", o.n)->required();
    sub->add_option("--element", o.element, "Coefficients c0,c1,...");
    sub->add_option("--element-file", o.element_file, "One coefficient per line");
    sub->add_option("--random", o.random, "Number of seeded random elements");
    sub->add_option("--kmax", o.kmax, "Top level of random elements");
    sub->add_option("--seed", o.seed);
    sub->add_option("--t", o.t, "Times, comma separated")->delimiter(',');
    sub->add_option("--p", o.p);
    sub->add_option("--D", o.D);
    sub->add_option("--c", o.c, "Log-Sobolev constant");
    sub->callback([&leaf, name] { leaf = name; });
  }

  auto* sharp = app.add_subcommand("sharpness", "Sharpness scans (evidence, not proof)");
  sharp->require_subcommand(1);
  const std::pair<const char*, const char*> scans[] = {
      {"hls", "Hardy-Littlewood-Sobolev ratio along a family"},
      {"hy", "Hausdorff-Young ratio along a family"},
      {"criterion", "Summability criterion g(n,s,t)"},
  };
  for (const auto& [name, help] : scans) {
    auto* sub = sharp->add_subcommand(name, help);
    sub->add_option("--n", o.n);
    sub->add_option("--s", o.s)->required();
    sub->add_option("--p", o.p);
    sub->add_option("--family", o.family, "poly:a=<a> or heat");
    sub->add_option("--grid", o.grid, "N values (poly), t values (heat, criterion)")->delimiter(',')->required();
    sub->add_option("--tol", o.tol);
    sub->callback([&leaf, name] { leaf = name; });
  }

  auto* algebra = app.add_subcommand("algebra", "Finite-dimensional C*-algebra checks");
  algebra->require_subcommand(1);
  auto* delta = algebra->add_subcommand("check-delta-form", "Check m m* = dim(B) id for a block algebra");
  delta->add_option("--algebra", o.algebra, "Block sizes, e.g. 2,1 for M2 + C")->required();

  auto* series = app.add_subcommand("series", "Series identities");
  series->require_subcommand(1);
  auto* identity = series->add_subcommand("check-identity", "Closed form of sum (2k+1)^2 Y^k");
  identity->add_option("--y", o.y, "Y values in (0,1)")->delimiter(',');
  identity->add_option("--tol", o.tol);

  // The default for --p differs per command.
  bool p_defaulted = true;
  try {
    o.precision = env_precision();
    std::vector<std::string> args = apply_config(raw_args);
    p_defaulted = std::find(args.begin(), args.end(), "--p") == args.end();
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  (void)precision;

  try {
    if (sharp->parsed() && p_defaulted) o.p = 1.5;
    Result result;
    if (spectrum->parsed()) {
      result = cmd_spectrum(o);
    } else if (tau->parsed()) {
      result = cmd_tau(o);
    } else if (verify->parsed()) {
      result = cmd_verify(leaf, o);
    } else if (sharp->parsed()) {
      result = cmd_sharpness(leaf, o);
    } else if (delta->parsed()) {
      result = cmd_delta_form(o);
    } else {
      result = cmd_series(o);
    }
    for (const auto& [k, v] : result.table.meta)
      if (k == "warning") err << "warning: " << v << "\n";

    std::ofstream file;
    if (!o.output.empty()) {
      file.open(o.output, std::ios::binary);
      if (!file) throw UsageError("cannot write " + o.output);
    }
    std::ostream& sink = o.output.empty() ? out : file;
    if (o.format == "json") {
      write_json(sink, result.table, o.precision);
    } else {
      write_csv(sink, result.table, o.precision);
    }
    return result.ok ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qheat::cli
