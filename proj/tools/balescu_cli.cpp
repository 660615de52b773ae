// Command-line front end. Talks to the library only through balescu.h.
#include <array>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "balescu/balescu.h"

namespace {

struct RunConfig {
  double k0 = 1.0;
  double ell = 0.0;
  double theta = 1.0;
  double q = 1.0;
  int n = 0;  // 0: per-command default
  int m = 160;
  double rmax = 8.0;
  double dt = 0.0;
  double t_end = 5.0;
  std::uint64_t seed = 1;
  std::string out = "-";
  std::string format = "csv";
  double xmin = NAN;
  double xmax = NAN;
  std::string preset = "gaussian_bump";
  std::string summary;
  std::string suite;
  std::string manifest;
  double tol_scale = 1.0;
  int probes = 50;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LibraryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(int status, const char* what) {
  if (status != BALESCU_OK) {
    std::ostringstream os;
    os << what << ": " << balescu_status_name(status) << ": " << balescu_last_error();
    throw LibraryError(os.str());
  }
}

std::string num(double x) {
  if (x == 0.0) x = 0.0;  // no "-0" in tables
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_num(double x) { return std::isfinite(x) ? num(x) : "null"; }

// Output sink: stdout for "-", otherwise a file opened up front so that an
// unwritable path fails before any work is done.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw UsageError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_table(const Table& t, const std::string& format, std::ostream& os) {
  if (format == "csv") {
    for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << num(row[j]);
      os << '\n';
    }
  } else {
    os << "[\n";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      os << "  {";
      for (std::size_t j = 0; j < t.columns.size(); ++j)
        os << (j ? ", " : "") << '"' << t.columns[j] << "\": " << json_num(t.rows[i][j]);
      os << (i + 1 < t.rows.size() ? "},\n" : "}\n");
    }
    os << "]\n";
  }
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw UsageError("--n must be at least 2");
  if (!(a < b)) throw UsageError("range needs xmin < xmax");
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = i + 1 == n ? b : a + (b - a) * i / (n - 1);
  return xs;
}

using Context = std::unique_ptr<balescu_context, decltype(&balescu_context_destroy)>;

Context make_context(double k0) {
  balescu_context* ctx = nullptr;
  check(balescu_context_create(k0, &ctx), "context");
  return Context(ctx, &balescu_context_destroy);
}

double or_default(double v, double d) { return std::isnan(v) ? d : v; }

// J and its oracle overflow for large |x|; the table then shows inf.
double jay_or_inf(int (*f)(const balescu_context*, double, double*), const balescu_context* ctx, double x) {
  double v = 0.0;
  const int st = f(ctx, x, &v);
  if (st == BALESCU_ERR_OVERFLOW_GUARD) return INFINITY;
  check(st, "jay");
  return v;
}

Table cmd_dispersion(const RunConfig& c) {
  const Context ctx = make_context(c.k0);
  Table t{{"x", "psi_r", "psi_i", "x2_psi_r", "eps_re_at_k1", "eps_im_at_k1"}, {}};
  for (double x : linspace(or_default(c.xmin, -10.0), or_default(c.xmax, 10.0), c.n ? c.n : 201)) {
    double re = 0.0, im = 0.0, ere = 0.0, eim = 0.0;
    check(balescu_psi(ctx.get(), x, &re, &im), "psi");
    check(balescu_epsilon(ctx.get(), 1.0, x, &ere, &eim), "epsilon");
    t.rows.push_back({x, re, im, x * x * re, ere, eim});
  }
  return t;
}

Table cmd_jay(const RunConfig& c) {
  const Context ctx = make_context(c.k0);
  Table t{{"x", "J", "J_scaled", "J_oracle", "ratio_x3e"}, {}};
  for (double x : linspace(or_default(c.xmin, 0.0), or_default(c.xmax, 20.0), c.n ? c.n : 201)) {
    double js = 0.0;
    check(balescu_jay_scaled(ctx.get(), x, &js), "jay_scaled");
    t.rows.push_back({x, jay_or_inf(balescu_jay, ctx.get(), x), js, jay_or_inf(balescu_jay_oracle, ctx.get(), x),
                      x * x * x * js});
  }
  return t;
}

Table cmd_freq(const RunConfig& c) {
  const Context ctx = make_context(c.k0);
  Table t{{"r", "lambda1", "lambda2", "dlambda1", "dlambda2", "ratio_l1", "r_lambda2"}, {}};
  const double lo = or_default(c.xmin, 0.0);
  if (lo < 0.0) throw UsageError("freq needs r >= 0");
  for (double r : linspace(lo, or_default(c.xmax, 20.0), c.n ? c.n : 201)) {
    double l1 = 0.0, l2 = 0.0, d1 = 0.0, d2 = 0.0;
    check(balescu_lambda(ctx.get(), r, &l1, &l2), "lambda");
    if (r > 0.0) check(balescu_lambda_derivatives(ctx.get(), r, &d1, &d2), "lambda derivatives");
    t.rows.push_back({r, l1, l2, d1, d2, (1.0 + r * r * r) * l1 / std::log(2.0 + r), r * l2});
  }
  return t;
}

Table cmd_kernel(const RunConfig& c) {
  const Context ctx = make_context(c.k0);
  Table t{{"v1", "v2", "v3", "vs1", "vs2", "vs3", "v_r", "b11", "b12", "b13", "b22", "b23", "b33", "landau11",
           "landau12", "landau13", "landau22", "landau23", "landau33"},
          {}};
  // Landau constant that B reduces to where v_R = 0.
  double j0 = 0.0;
  check(balescu_jay(ctx.get(), 0.0, &j0), "jay");
  const double L = std::acos(-1.0) * j0 / 4.0;

  const double span = or_default(c.xmax, 3.0);
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(-span, span);
  std::vector<std::array<double, 6>> pairs = {{1, 0, 0, -1, 0, 0}};
  const int n = c.n ? c.n : 20;
  while (static_cast<int>(pairs.size()) < n) pairs.push_back({u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)});
  for (const auto& p : pairs) {
    double b[9], lk[9], vr = 0.0;
    check(balescu_kernel_B(ctx.get(), p.data(), p.data() + 3, b, nullptr, &vr), "kernel_B");
    check(balescu_landau_kernel(p.data(), p.data() + 3, L, lk), "landau_kernel");
    t.rows.push_back({p[0], p[1], p[2], p[3], p[4], p[5], vr, b[0], b[1], b[2], b[4], b[5], b[8], lk[0], lk[1], lk[2],
                      lk[4], lk[5], lk[8]});
  }
  return t;
}

std::string summary_path(const RunConfig& c) {
  if (!c.summary.empty()) return c.summary;
  if (c.out == "-") return "";
  const std::size_t dot = c.out.find_last_of('.');
  const std::size_t slash = c.out.find_last_of('/');
  const std::string stem = (dot != std::string::npos && (slash == std::string::npos || dot > slash))
                               ? c.out.substr(0, dot)
                               : c.out;
  return stem + ".summary.json";
}

int cmd_evolve(const RunConfig& c, std::ostream& os) {
  const std::string spath = summary_path(c);
  std::unique_ptr<Sink> ssink = spath.empty() ? nullptr : std::make_unique<Sink>(spath);

  const Context ctx = make_context(c.k0);
  balescu_radial* raw_op = nullptr;
  check(balescu_radial_create(ctx.get(), c.m, c.rmax, &raw_op), "radial operator");
  const std::unique_ptr<balescu_radial, decltype(&balescu_radial_destroy)> op(raw_op, &balescu_radial_destroy);
  balescu_evolution* raw_ev = nullptr;
  check(balescu_evolve(op.get(), c.preset.c_str(), c.ell, c.theta, c.q, c.dt, c.t_end, &raw_ev), "evolve");
  const std::unique_ptr<balescu_evolution, decltype(&balescu_evolution_destroy)> ev(raw_ev,
                                                                                    &balescu_evolution_destroy);

  Table t{{"t", "mass", "energy", "l2", "weighted", "sigma_norm"}, {}};
  std::size_t n = 0;
  check(balescu_evolution_size(ev.get(), &n), "evolution");
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(6);
    check(balescu_evolution_sample(ev.get(), i, &row[0], &row[1], &row[2], &row[3], &row[4], &row[5]), "sample");
    t.rows.push_back(row);
  }
  write_table(t, c.format, os);

  balescu_evolution_summary s{};
  check(balescu_evolution_get_summary(ev.get(), &s), "summary");
  char stamp[32];
  const std::time_t now = std::time(nullptr);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  std::ostream& so = ssink ? ssink->os() : std::cerr;
  so << "{\n  \"preset\": \"" << c.preset << "\",\n  \"theta\": " << json_num(c.theta)
     << ",\n  \"theta_ratio\": " << json_num(s.theta_ratio) << ",\n  \"fitted_p\": " << json_num(s.fitted_p)
     << ",\n  \"fitted_rate\": " << json_num(s.fitted_rate) << ",\n  \"max_mass_drift\": "
     << json_num(s.max_mass_drift) << ",\n  \"max_energy_drift\": " << json_num(s.max_energy_drift)
     << ",\n  \"l2_monotone\": " << (s.l2_monotone ? "true" : "false")
     << ",\n  \"weighted_monotone\": " << (s.weighted_monotone ? "true" : "false") << ",\n  \"steps\": " << s.steps
     << ",\n  \"dt\": " << json_num(s.dt) << ",\n  \"metadata\": {\"generated_at\": \"" << stamp << "\"}\n}\n";
  return 0;
}

int cmd_verify(const RunConfig& c, std::ostream& os) {
  balescu_verify_config vc;
  balescu_verify_config_default(&vc);
  vc.k0 = c.k0;
  vc.M = c.m;
  vc.r_max = c.rmax;
  if (c.n) vc.n3d = c.n;
  vc.seed = c.seed;
  vc.t_end = c.t_end;
  vc.dt = c.dt;
  vc.tol_scale = c.tol_scale;
  vc.probes = c.probes;

  std::unique_ptr<Sink> msink = c.manifest.empty() ? nullptr : std::make_unique<Sink>(c.manifest);

  balescu_report* raw = nullptr;
  check(balescu_verify_run(&vc, c.suite.c_str(), &raw), "verify");
  const std::unique_ptr<balescu_report, decltype(&balescu_report_destroy)> rep(raw, &balescu_report_destroy);

  char* text = nullptr;
  check(c.format == "csv" ? balescu_report_csv(rep.get(), &text) : balescu_report_json(rep.get(), &text), "report");
  os << text;
  balescu_string_free(text);
  if (msink) {
    check(balescu_manifest_json(&vc, &text), "manifest");
    msink->os() << text;
    balescu_string_free(text);
  }

  std::size_t n = 0;
  check(balescu_report_size(rep.get(), &n), "report");
  int failed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    double target, achieved, tol, rt;
    int pass = 0;
    check(balescu_report_check(rep.get(), i, &name, &target, &achieved, &tol, &pass, &rt), "report");
    if (!pass) {
      ++failed;
      std::cerr << "FAIL " << name << ": achieved " << num(achieved) << ", target " << num(target) << " +- "
                << num(tol) << '\n';
    }
  }
  std::cerr << "verify: " << (n - failed) << "/" << n << " checks passed\n";
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linearized Balescu-Lenard numerics"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file; command-line flags take precedence");

  RunConfig c;
  app.add_option("--k0", c.k0, "wavenumber cut-off")->check(CLI::PositiveNumber);
  app.add_option("--ell", c.ell, "weight exponent ell");
  app.add_option("--theta", c.theta, "weight exponent theta in [0, 2]");
  app.add_option("--q", c.q, "weight strength q > 0 (q < 1 when theta = 2)");
  app.add_option("--n", c.n, "rows of a table, or the 3-D grid size for verify");
  app.add_option("--m", c.m, "radial cells");
  app.add_option("--rmax", c.rmax, "radial domain size");
  app.add_option("--dt", c.dt, "time step (0: stability bound)");
  app.add_option("--t-end", c.t_end, "final time");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--out", c.out, "output path, - for stdout");
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--xmin", c.xmin, "lower end of the table range");
  app.add_option("--xmax", c.xmax, "upper end of the table range (kernel: sampling box half-width)");
  app.add_option("--preset", c.preset, "gaussian_bump, shell or hermite_mode");
  app.add_option("--summary", c.summary, "evolve summary JSON path");
  app.add_option("--suite", c.suite, "comma-separated verify suites (default: all)");
  app.add_option("--manifest", c.manifest, "write the tolerance manifest JSON here");
  app.add_option("--tol-scale", c.tol_scale, "multiply every verify tolerance");
  app.add_option("--probes", c.probes, "coercivity probes");

  for (const char* name : {"dispersion", "jay", "freq", "kernel", "evolve", "verify"}) app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    check(balescu_weight_validate(c.ell, c.theta, c.q), "weight parameters");
    const std::string cmd = app.get_subcommands().front()->get_name();
    Sink sink(c.out);
    if (cmd == "evolve") return cmd_evolve(c, sink.os());
    if (cmd == "verify") return cmd_verify(c, sink.os());
    Table t;
    if (cmd == "dispersion") t = cmd_dispersion(c);
    else if (cmd == "jay") t = cmd_jay(c);
    else if (cmd == "freq") t = cmd_freq(c);
    else t = cmd_kernel(c);
    write_table(t, c.format, sink.os());
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const LibraryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
