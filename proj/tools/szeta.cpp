// szeta: command-line front end for the zeta, zero-counting and dimension
// computations.
//
// Exit codes: 0 success, 1 domain error (JSON on stderr), 2 usage error.

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "szeta/analysis.hpp"
#include "szeta/config.hpp"
#include "szeta/error.hpp"
#include "szeta/orbits.hpp"
#include "szeta/parallel.hpp"
#include "szeta/transfer.hpp"
#include "szeta/zeta.hpp"

using namespace szeta;
using json = nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string config_path;
  double theta = 0.0;
  int num_circles = 3;
  std::string circles;
  int M = 13;
  std::string mode = "conformal";
  double newton_tol = 0.0;
  double quad_tol = 0.0;
  double power_tol = 0.0;
  std::string cache;
  std::string output;
  int threads = 1;

};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config_path, "config file, or an earlier output file to re-run");
  sub->add_option("--theta", f.theta, "arc angle of the symmetric circles (degrees)");
  sub->add_option("--num-circles,--L", f.num_circles, "number of circles");
  sub->add_option("--circles", f.circles, "explicit circles 'cx cy r; ...'");
  sub->add_option("--M", f.M, "cycle-expansion truncation order");
  sub->add_option("--mode", f.mode, "conformal or selberg");
  sub->add_option("--newton-tol", f.newton_tol, "Newton step tolerance");
  sub->add_option("--quad-tol", f.quad_tol, "quadrature panel tolerance");
  sub->add_option("--power-tol", f.power_tol, "power-method tolerance");
  sub->add_option("--cache", f.cache, "orbit-table cache file");
  sub->add_option("-o,--output", f.output, "output file (default stdout)");
  sub->add_option("--threads", f.threads, "worker threads (default SZETA_THREADS)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(fmt::format("cannot read {}", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig resolve_config(const CLI::App& sub, const CommonFlags& f) {
  auto given = [&sub](const char* name) { return sub.get_option(name)->count() > 0; };
  RunConfig config;
  config.threads = default_threads();
  if (!f.config_path.empty()) config = config_from_text(read_file(f.config_path));
  if (given("--theta") && given("--circles")) {
    throw UsageError("--theta and --circles are mutually exclusive");
  }
  if (given("--theta")) {
    config.group.angle_degrees = f.theta;
    config.group.circles.clear();
  }
  if (given("--num-circles")) config.group.num_circles = f.num_circles;
  if (given("--circles")) {
    config.group = parse_config("[group]\ncircles = " + f.circles + "\n").group;
  }
  if (given("--M")) config.M = f.M;
  if (given("--mode")) config.mode = parse_mode(f.mode);
  if ((given("--newton-tol") || (sub.get_name() == "dim" && given("--tol")))) config.tolerances.newton_tol = f.newton_tol;
  if (given("--quad-tol")) config.tolerances.quad_tol = f.quad_tol;
  if (given("--power-tol")) config.tolerances.power_tol = f.power_tol;
  if (given("--cache")) config.cache = f.cache;
  if (given("--output")) config.output = f.output;
  if (given("--threads")) config.threads = f.threads;
  check_config(config);
  return config;
}

struct Session {
  RunConfig config;
  GroupConfig group;
  std::string command;
  std::vector<std::string> warnings;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  std::shared_ptr<const OrbitTable> table() const {
    PowerOptions power;
    power.tol = config.tolerances.power_tol;
    if (!config.cache.empty()) {
      return std::make_shared<OrbitTable>(
          cached_orbit_table(group, config.M, config.cache, config.threads, power));
    }
    return std::make_shared<OrbitTable>(build_orbit_table(group, config.M, config.threads, power));
  }

  // Contour integration only needs ~1e-8, so the grid subcommands use
  // standard precision; point evaluations use extended.
  ZetaSeries series(Precision precision = Precision::Extended) const {
    return ZetaSeries(table(), config.M, config.mode, precision);
  }

  CountOptions count_options() const {
    CountOptions c;
    c.quad_tol = config.tolerances.quad_tol;
    return c;
  }

  void note_real_part(double re) {
    if (re < -0.3) {
      const auto w = fmt::format("Re s = {} < -0.3 lies outside the validated region", re);
      if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
    }
  }

  double wall_time() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  std::string timestamp() const {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
  }

  std::string csv_header(std::string_view subcommand, const std::vector<std::string>& notes) const {
    std::string h = fmt::format("# szeta {}\n# command: {}\n", subcommand, command);
    h += fmt::format("# group_fingerprint: {:016x}\n", fingerprint(group));
    h += fmt::format("# M: {}\n# mode: {}\n", config.M, mode_name(config.mode));
    h += fmt::format("# tolerances: newton_tol={} quad_tol={} power_tol={}\n",
                     config.tolerances.newton_tol, config.tolerances.quad_tol,
                     config.tolerances.power_tol);
    for (const auto& w : warnings) h += fmt::format("# warning: {}\n", w);
    for (const auto& n : notes) h += fmt::format("# note: {}\n", n);
    h += config_header_block(config);
    h += fmt::format("# timestamp: {} wall_time_s: {:.3f}\n", timestamp(), wall_time());
    return h;
  }

  json report() const {
    json r;
    r["command"] = command;
    r["group_fingerprint"] = fmt::format("{:016x}", fingerprint(group));
    r["M"] = config.M;
    r["mode"] = std::string(mode_name(config.mode));
    r["tolerances"] = {{"newton_tol", config.tolerances.newton_tol},
                       {"quad_tol", config.tolerances.quad_tol},
                       {"power_tol", config.tolerances.power_tol}};
    r["warnings"] = warnings;
    r["config"] = serialize_config(config);
    r["timestamp"] = timestamp();
    r["wall_time_s"] = wall_time();
    return r;
  }

  void emit(const std::string& text) const {
    if (config.output.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(config.output, std::ios::trunc);
    if (!out) throw UsageError(fmt::format("cannot write {}", config.output));
    out << text;
  }
};

std::string num(double v) { return fmt::format("{:.17g}", v); }
std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("{}: '{}' is not a number", flag, item));
    }
  }
  if (out.size() != expected) {
    throw UsageError(fmt::format("{} expects {} comma-separated values", flag, expected));
  }
  return out;
}

Rectangle parse_rect(const std::string& text) {
  const auto v = parse_list(text, 4, "--rect");
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical and Selberg zeta functions of symmetric Schottky reflection groups"};
  app.require_subcommand(1);

  std::string command;
  for (int i = 0; i < argc; ++i) command += (i ? " " : "") + std::string(argv[i]);
  // The program path varies between installs; echo only its name.
  if (const auto slash = command.find_last_of('/', command.find(' ')); slash != std::string::npos) {
    command = command.substr(slash + 1);
  }

  CommonFlags flags;

  auto* dim = app.add_subcommand("dim", "limit-set dimension (largest real zero / Bowen root)");
  add_common(dim, flags);
  std::string method = "newton";
  int degree = 32;
  int refinement = 2;
  dim->add_option("--method", method, "newton or bowen")->check(CLI::IsMember({"newton", "bowen"}));
  dim->add_option("--tol", flags.newton_tol, "alias of --newton-tol");
  dim->add_option("--degree", degree, "collocation degree (bowen)");
  dim->add_option("--refinement", refinement, "collocation cylinder depth (bowen)");

  auto* eval = app.add_subcommand("eval", "evaluate Z_M and Z_M' at points");
  add_common(eval, flags);
  double re = 0.0, im = 0.0;
  std::string grid;
  eval->add_option("--re", re, "Re s");
  eval->add_option("--im", im, "Im s");
  eval->add_option("--grid", grid, "x0,x1,nx,y0,y1,ny");

  auto* zeros = app.add_subcommand("zeros", "argument-principle zero count over a rectangle");
  add_common(zeros, flags);
  std::string rect;
  zeros->add_option("--rect", rect, "x0,x1,y0,y1")->required();

  auto* locate = app.add_subcommand("locate", "isolate zeros by recursive quadrisection");
  add_common(locate, flags);
  double resolution = 1e-2;
  locate->add_option("--rect", rect, "x0,x1,y0,y1")->required();
  locate->add_option("--resolution", resolution, "box diameter at which to stop");

  auto* grid_zeros = app.add_subcommand("grid-zeros", "cumulative zero counts N(y) on strips");
  add_common(grid_zeros, flags);
  double x0 = 0.1, x1 = 10.0, y0 = -0.1, y_min = 2.0, y_max = 200.0;
  int samples = 16;
  grid_zeros->add_option("--x0", x0, "left edge of the counting region");
  grid_zeros->add_option("--x1", x1, "right edge (default 10)");
  grid_zeros->add_option("--y0", y0, "lower edge (default -0.1)");
  grid_zeros->add_option("--ymin", y_min, "first grid height");
  grid_zeros->add_option("--ymax", y_max, "last grid height");
  grid_zeros->add_option("--samples", samples, "number of log-spaced heights");

  auto* grid_logz = app.add_subcommand("grid-logz", "log log|Z| / log|s| over a rectangle");
  add_common(grid_logz, flags);
  std::string logz_rect = "-0.2,1,0,1000";
  int logz_samples = 1000;
  grid_logz->add_option("--rect", logz_rect, "x0,x1,y0,y1");
  grid_logz->add_option("--samples", logz_samples, "number of points");

  auto* orbits = app.add_subcommand("orbits", "list periodic-orbit classes");
  add_common(orbits, flags);
  int orbit_n = 0;
  int orbit_max = 6;
  orbits->add_option("--n", orbit_n, "single word length");
  orbits->add_option("--max-n", orbit_max, "all lengths up to this one");

  auto* err = app.add_subcommand("err", "modified relative error between two truncations");
  add_common(err, flags);
  double err_re = 0.1, err_ymin = 0.0, err_ymax = 100.0;
  int err_samples = 200, m1 = 12, m2 = 13;
  err->add_option("--re", err_re, "Re s of the sampled line");
  err->add_option("--ymin", err_ymin, "lowest Im s");
  err->add_option("--ymax", err_ymax, "highest Im s");
  err->add_option("--samples", err_samples, "points on the line");
  err->add_option("--m1", m1, "first truncation order");
  err->add_option("--m2", m2, "second truncation order");

  auto* svd = app.add_subcommand("svd-profile", "singular values of the collocation operator");
  add_common(svd, flags);
  double s_re = 0.5, s_im = 0.0;
  int burn_in = -1;
  svd->add_option("--s-re", s_re, "Re s");
  svd->add_option("--s-im", s_im, "Im s");
  svd->add_option("--degree", degree, "collocation degree");
  svd->add_option("--refinement", refinement, "collocation cylinder depth");
  svd->add_option("--burn-in", burn_in, "indices skipped before the decay fit (default 2 per cell)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    Session session;
    session.config = resolve_config(*active, flags);
    session.group = make_group(session.config.group);
    session.command = command;
    const std::string name = active->get_name();

    if (active == dim) {
      json result;
      result["method"] = method;
      if (method == "newton") {
        DimensionOptions opts;
        opts.tol = session.config.tolerances.newton_tol;
        const auto series = session.series();
        const auto d = dimension(series, opts);
        result["delta"] = d.delta;
        result["iterations"] = d.iterations;
        result["bracket"] = {d.bracket_lo, d.bracket_hi};
        result["residual"] = d.residual;
      } else {
        CollocationOperator op(session.group, {degree, refinement});
        const auto b = bowen_dimension(op);
        result["delta"] = b.delta;
        result["iterations"] = b.iterations;
        result["degree"] = b.degree;
        result["refinement"] = b.refinement;
        result["residual"] = b.eigen_residual;
      }
      json doc;
      doc["report"] = session.report();
      doc["result"] = result;
      const std::string text = doc.dump(2) + "\n";
      session.emit(text);
      if (!session.config.output.empty()) {
        std::cout << fmt::format("delta = {:.12f}\n", result["delta"].get<double>());
      }
      return 0;
    }

    std::string body;
    std::vector<std::string> notes;

    if (active == eval) {
      const auto series = session.series();
      std::vector<complex> points;
      if (!grid.empty()) {
        const auto g = parse_list(grid, 6, "--grid");
        const int nx = static_cast<int>(g[2]);
        const int ny = static_cast<int>(g[5]);
        if (nx < 1 || ny < 1) throw UsageError("--grid needs nx, ny >= 1");
        for (int j = 0; j < ny; ++j) {
          for (int i = 0; i < nx; ++i) {
            const double x = nx == 1 ? g[0] : g[0] + (g[1] - g[0]) * i / (nx - 1);
            const double y = ny == 1 ? g[3] : g[3] + (g[4] - g[3]) * j / (ny - 1);
            points.emplace_back(x, y);
          }
        }
      } else {
        points.emplace_back(re, im);
      }
      std::vector<ZetaValue> values(points.size());
      parallel_for(points.size(), session.config.threads,
                   [&](std::size_t k) { values[k] = series.evaluate(points[k]); });
      body = "s_re,s_im,z_re,z_im,dz_re,dz_im\n";
      for (const auto& v : values) {
        session.note_real_part(v.s.real());
        body += fmt::format("{},{},{},{},{},{}\n", num(v.s.real()), num(v.s.imag()),
                            num(v.z.real()), num(v.z.imag()), num(v.dz.real()), num(v.dz.imag()));
      }
    } else if (active == zeros) {
      const auto series = session.series(Precision::Standard);
      const Rectangle r = parse_rect(rect);
      session.note_real_part(r.x0);
      const auto c = count_zeros(series, r, session.count_options());
      body = "x0,x1,y0,y1,count,integral_re,integral_im,residual,panels\n";
      body += fmt::format("{},{},{},{},{},{},{},{},{}\n", num(r.x0), num(r.x1), num(r.y0),
                          num(r.y1), c.count, num(c.integral.real()), num(c.integral.imag()),
                          num(c.residual), c.panels);
    } else if (active == locate) {
      const auto series = session.series(Precision::Standard);
      const Rectangle r = parse_rect(rect);
      session.note_real_part(r.x0);
      const auto boxes = locate_zeros(series, r, resolution, session.count_options());
      body = "x0,x1,y0,y1,count\n";
      for (const auto& b : boxes) {
        body += fmt::format("{},{},{},{},{}\n", num(b.box.x0), num(b.box.x1), num(b.box.y0),
                            num(b.box.y1), b.count);
      }
    } else if (active == grid_zeros) {
      const auto series = session.series(Precision::Standard);
      session.note_real_part(x0);
      DensityOptions opts;
      opts.x1 = x1;
      opts.y0 = y0;
      opts.y_min = y_min;
      opts.count = session.count_options();
      opts.threads = session.config.threads;
      const auto rows = density_grid(series, x0, y_max, samples, opts);
      notes.push_back(fmt::format("region [{}, {}] x [{}, y]", x0, x1, y0));
      notes.push_back("count: zeros in the one-sided rectangle up to height y");
      notes.push_back(
          "symmetric_count: zeros with |Im s| <= y, from conjugate symmetry "
          "(2 count - zeros in the box |Im s| <= -y0)");
      notes.push_back("statistic = log(count)/log(y) - 1; empty when undefined");
      body = "y,count,statistic,symmetric_count,symmetric_statistic\n";
      for (const auto& row : rows) {
        body += fmt::format("{},{},{},{},{}\n", num(row.y), row.count, opt_num(row.statistic),
                            row.symmetric_count, opt_num(row.symmetric_statistic));
      }
    } else if (active == grid_logz) {
      const auto series = session.series(Precision::Standard);
      const Rectangle r = parse_rect(logz_rect);
      session.note_real_part(r.x0);
      const auto pts = logz_grid(series, r, logz_samples, session.config.threads);
      notes.push_back("statistic = log(log|Z|)/log|s|; empty when |Z| <= 1 or |s| <= 1");
      body = "s_re,s_im,abs_s,abs_z,statistic\n";
      for (const auto& p : pts) {
        body += fmt::format("{},{},{},{},{}\n", num(p.s.real()), num(p.s.imag()),
                            num(std::abs(p.s)), num(p.abs_z), opt_num(p.statistic));
      }
    } else if (active == orbits) {
      const int lo = orbit_n > 0 ? orbit_n : 1;
      const int hi = orbit_n > 0 ? orbit_n : orbit_max;
      if (lo < 1 || hi > kMaxTruncation) throw UsageError("orbit length out of range");
      const auto maps = maps_of(to_boundary_maps(session.group));
      PowerOptions power;
      power.tol = session.config.tolerances.power_tol;
      body = "n,representative,rotation_count,primitive_period,u,m,x_fix\n";
      for (int n = lo; n <= hi; ++n) {
        const auto classes = enumerate_orbit_classes(static_cast<int>(session.group.size()), n);
        std::vector<OrbitScalars> scalars(classes.size());
        parallel_for(classes.size(), session.config.threads, [&](std::size_t i) {
          scalars[i] = multiplier(classes[i].representative, maps, power);
        });
        for (std::size_t i = 0; i < classes.size(); ++i) {
          body += fmt::format("{},{},{},{},{},{},{}\n", n, to_string(classes[i].representative),
                              classes[i].rotation_count, classes[i].primitive_period,
                              num(scalars[i].u), num(scalars[i].m), num(scalars[i].x_fix));
        }
      }
    } else if (active == err) {
      const auto series = session.series();
      session.note_real_part(err_re);
      if (err_samples < 1) throw UsageError("--samples must be >= 1");
      std::vector<double> metric(static_cast<std::size_t>(err_samples));
      std::vector<double> ys(metric.size());
      for (int k = 0; k < err_samples; ++k) {
        ys[static_cast<std::size_t>(k)] =
            err_samples == 1 ? err_ymin
                             : err_ymin + (err_ymax - err_ymin) * k / (err_samples - 1);
      }
      parallel_for(metric.size(), session.config.threads, [&](std::size_t k) {
        metric[k] = error_metric(series, complex(err_re, ys[k]), m1, m2).value;
      });
      body = fmt::format("s_re,s_im,metric_{}_{}\n", m1, m2);
      for (std::size_t k = 0; k < metric.size(); ++k) {
        body += fmt::format("{},{},{}\n", num(err_re), num(ys[k]), num(metric[k]));
      }
    } else if (active == svd) {
      CollocationOperator op(session.group, {degree, refinement});
      const auto profile = singular_value_profile(op, complex(s_re, s_im));
      const std::size_t skip =
          burn_in >= 0 ? static_cast<std::size_t>(burn_in) : 2 * op.cell_count();
      const auto fit = fit_geometric_decay(profile, skip);
      notes.push_back(fmt::format("geometric fit over l in [{}, {}]: ratio={} r_squared={}",
                                  fit.first, fit.last, num(fit.ratio), num(fit.r_squared)));
      body = "l,mu\n";
      for (std::size_t l = 0; l < profile.size(); ++l) body += fmt::format("{},{}\n", l, num(profile[l]));
    }

    session.emit(session.csv_header(name, notes) + body);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << json{{"error", std::string(e.name())}, {"message", e.what()}}.dump() << "\n";
    return e.code() == ErrorCode::ParseError ? 2 : 1;
  }
}
