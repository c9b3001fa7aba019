#include "cli.hpp"

#include <cstdint>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gini/means.hpp"
#include "gini/report_io.hpp"
#include "gini/verify.hpp"

namespace gini::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

bool parse_range(const std::string& text, Interval& iv) {
  const auto pos = text.find(':');
  if (pos == std::string::npos || pos == 0 || pos + 1 == text.size()) return false;
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, pos);
    const std::string hi = text.substr(pos + 1);
    iv.lo = std::stod(lo, &used);
    if (used != lo.size()) return false;
    iv.hi = std::stod(hi, &used);
    if (used != hi.size()) return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

/// Writes through `fn` either to `out` or to a file when path is set.
int emit(const std::string& path, std::ostream& out, std::ostream& err,
         const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(out);
    return kExitOk;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file: " << path << "\n";
    return kExitUsage;
  }
  fn(file);
  if (!file.good()) {
    err << "error: failed writing output file: " << path << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

double evaluate_quantity(const std::string& q, double r, double s,
                         const PositivePair& p, double t, const EvalConfig& cfg) {
  const ParamPair pr{r, s};
  if (q == "gini") return gini_mean({r + t, s + t}, p, cfg);
  if (q == "ln-h") return ln_gini({r + t, s + t}, p, cfg);
  if (q == "d1-ln-h") return h_jet(t, pr, p, cfg).d1;
  if (q == "d2-ln-h") return h_jet(t, pr, p, cfg).d2;
  if (q == "k") return k_value(t, pr, p, cfg);
  if (q == "d1-ln-k") return d1_ln_k(t, pr, p, cfg);
  if (q == "d2-t-ln-h") return d2_t_ln_h(t, pr, p, cfg);
  if (q == "quad-oracle") return ln_gini_quadrature({r + t, s + t}, p, cfg);
  throw DomainError("unknown quantity: " + q);
}

double evaluate_curve(const std::string& c, double t, ParamPair pr,
                      const PositivePair& p, const EvalConfig& cfg) {
  if (c == "h") return gini_mean({pr.r + t, pr.s + t}, p, cfg);
  if (c == "ln-h") return ln_gini({pr.r + t, pr.s + t}, p, cfg);
  if (c == "d1-ln-h") return h_jet(t, pr, p, cfg).d1;
  if (c == "d2-ln-h") return h_jet(t, pr, p, cfg).d2;
  if (c == "k") return k_value(t, pr, p, cfg);
  if (c == "t-ln-h") return t * ln_gini({pr.r + t, pr.s + t}, p, cfg);
  throw DomainError("unknown curve: " + c);
}

struct ScanOptions {
  std::string property = "all";
  ScanSpec spec;
  double fd_step = kDefaultFdStep;
  int threads = 1;
};

/// Loads scan settings from a JSON file whose keys mirror the flags.
bool load_scan_config(const std::string& path, ScanOptions& opt, std::ostream& err) {
  std::ifstream file(path);
  if (!file) {
    err << "error: cannot read config file: " << path << "\n";
    return false;
  }
  nlohmann::json doc;
  try {
    file >> doc;
  } catch (const std::exception& e) {
    err << "error: malformed config file: " << e.what() << "\n";
    return false;
  }
  if (!doc.is_object()) {
    err << "error: config file must hold a JSON object\n";
    return false;
  }
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "property") {
        opt.property = value.get<std::string>();
      } else if (key == "r-range" || key == "s-range" || key == "x-range" ||
                 key == "y-range" || key == "t-range") {
        Interval iv;
        if (!parse_range(value.get<std::string>(), iv)) {
          err << "error: config key " << key << " is not a range a:b\n";
          return false;
        }
        if (key == "r-range") opt.spec.r_range = iv;
        if (key == "s-range") opt.spec.s_range = iv;
        if (key == "x-range") opt.spec.x_range = iv;
        if (key == "y-range") opt.spec.y_range = iv;
        if (key == "t-range") opt.spec.t_range = iv;
      } else if (key == "grid") {
        opt.spec.grid_points_per_axis = value.get<int>();
      } else if (key == "samples") {
        opt.spec.random_samples = value.get<std::uint64_t>();
      } else if (key == "seed") {
        opt.spec.seed = value.get<std::uint64_t>();
      } else if (key == "band") {
        opt.spec.boundary_band = value.get<double>();
      } else if (key == "sign-tol") {
        opt.spec.sign_tol = value.get<double>();
      } else if (key == "fd-step") {
        opt.fd_step = value.get<double>();
      } else if (key == "threads") {
        opt.threads = value.get<int>();
      } else {
        err << "error: unknown config key: " << key << "\n";
        return false;
      }
    }
  } catch (const std::exception& e) {
    err << "error: bad config value: " << e.what() << "\n";
    return false;
  }
  return true;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Gini (sum) means: point evaluation, property scans, curve sampling"};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate one quantity at a point");
  double ev_r = 0.0, ev_s = 0.0, ev_x = 0.0, ev_y = 0.0, ev_t = 0.0;
  std::string ev_quantity = "gini";
  std::string ev_format = "json";
  std::string ev_output;
  eval_cmd->add_option("--r", ev_r, "First exponent parameter")->required();
  eval_cmd->add_option("--s", ev_s, "Second exponent parameter")->required();
  eval_cmd->add_option("--x", ev_x, "First positive variable")->required();
  eval_cmd->add_option("--y", ev_y, "Second positive variable")->required();
  eval_cmd->add_option("--t", ev_t, "Shift applied to both parameters (default 0)");
  eval_cmd->add_option("--quantity", ev_quantity, "Quantity to evaluate")
      ->check(CLI::IsMember({"gini", "ln-h", "d1-ln-h", "d2-ln-h", "k", "d1-ln-k",
                             "d2-t-ln-h", "quad-oracle"}));
  eval_cmd->add_option("--format", ev_format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  eval_cmd->add_option("--output", ev_output, "Output file (default stdout)");

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "Run property checks over a region");
  std::string sc_property = "all";
  std::string sc_r, sc_s, sc_x, sc_y, sc_t;
  int sc_grid = 0;
  std::uint64_t sc_samples = 0;
  std::uint64_t sc_seed = 0;
  double sc_band = 0.0, sc_sign_tol = 0.0, sc_fd_step = 0.0;
  int sc_threads = 0;
  std::string sc_config;
  std::string sc_format = "json";
  std::string sc_output;
  scan_cmd->add_option("--property", sc_property, "Property to check (default all)")
      ->check(CLI::IsMember({"integrand", "thm1", "thm2-h", "thm2-k", "thm3", "fd", "all"}));
  scan_cmd->add_option("--r-range", sc_r, "r interval a:b");
  scan_cmd->add_option("--s-range", sc_s, "s interval a:b");
  scan_cmd->add_option("--x-range", sc_x, "x interval a:b, positive");
  scan_cmd->add_option("--y-range", sc_y, "y interval a:b, positive");
  scan_cmd->add_option("--t-range", sc_t, "t interval a:b");
  scan_cmd->add_option("--grid", sc_grid, "Grid points per axis (default 9)");
  scan_cmd->add_option("--samples", sc_samples, "Random samples (default 1000)");
  scan_cmd->add_option("--seed", sc_seed, "Random seed (default 1)");
  scan_cmd->add_option("--band", sc_band, "Boundary exclusion band (default 1e-6)");
  scan_cmd->add_option("--sign-tol", sc_sign_tol, "Sign assertion slack (default 1e-11)");
  scan_cmd->add_option("--fd-step", sc_fd_step, "Finite difference step (default 1e-5)");
  scan_cmd->add_option("--threads", sc_threads, "Worker threads (default 1)");
  scan_cmd->add_option("--config", sc_config, "JSON config file; flags override it");
  scan_cmd->add_option("--format", sc_format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  scan_cmd->add_option("--output", sc_output, "Output file (default stdout)");

  // samples
  auto* samples_cmd = app.add_subcommand("samples", "Emit plot-ready curve samples");
  std::string sm_curve;
  double sm_r = 0.0, sm_s = 0.0, sm_x = 0.0, sm_y = 0.0;
  std::string sm_range;
  int sm_points = 201;
  std::string sm_format = "csv";
  std::string sm_output;
  samples_cmd->add_option("--curve", sm_curve, "Curve to sample")
      ->required()
      ->check(CLI::IsMember({"h", "ln-h", "d1-ln-h", "d2-ln-h", "k", "t-ln-h"}));
  samples_cmd->add_option("--r", sm_r, "First exponent parameter")->required();
  samples_cmd->add_option("--s", sm_s, "Second exponent parameter")->required();
  samples_cmd->add_option("--x", sm_x, "First positive variable")->required();
  samples_cmd->add_option("--y", sm_y, "Second positive variable")->required();
  samples_cmd->add_option("--t-range", sm_range, "t interval a:b")->required();
  samples_cmd->add_option("--points", sm_points, "Sample count (default 201)");
  samples_cmd->add_option("--format", sm_format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  samples_cmd->add_option("--output", sm_output, "Output file (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("gini");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const EvalConfig cfg;

  if (eval_cmd->parsed()) {
    try {
      const PositivePair p(ev_x, ev_y);
      const double value = evaluate_quantity(ev_quantity, ev_r, ev_s, p, ev_t, cfg);
      return emit(ev_output, out, err, [&](std::ostream& os) {
        if (ev_format == "json") {
          os << "{\"inputs\":{\"r\":" << format_double17(ev_r)
             << ",\"s\":" << format_double17(ev_s)
             << ",\"x\":" << format_double17(ev_x)
             << ",\"y\":" << format_double17(ev_y)
             << ",\"t\":" << format_double17(ev_t)
             << "},\"quantity\":\"" << ev_quantity
             << "\",\"value\":" << format_double17(value) << "}\n";
        } else {
          os << "r,s,x,y,t,quantity,value\n"
             << format_double17(ev_r) << ',' << format_double17(ev_s) << ','
             << format_double17(ev_x) << ',' << format_double17(ev_y) << ','
             << format_double17(ev_t) << ',' << ev_quantity << ','
             << format_double17(value) << "\n";
        }
      });
    } catch (const DomainError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const QuadratureError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }

  if (scan_cmd->parsed()) {
    ScanOptions opt;
    if (scan_cmd->count("--config") > 0 && !load_scan_config(sc_config, opt, err)) {
      return kExitUsage;
    }
    if (scan_cmd->count("--property") > 0) opt.property = sc_property;
    auto override_range = [&](const char* flag, const std::string& text, Interval& iv) {
      if (scan_cmd->count(flag) == 0) return true;
      if (!parse_range(text, iv)) {
        err << "error: " << flag << " must be a range a:b\n";
        return false;
      }
      return true;
    };
    if (!override_range("--r-range", sc_r, opt.spec.r_range) ||
        !override_range("--s-range", sc_s, opt.spec.s_range) ||
        !override_range("--x-range", sc_x, opt.spec.x_range) ||
        !override_range("--y-range", sc_y, opt.spec.y_range) ||
        !override_range("--t-range", sc_t, opt.spec.t_range)) {
      return kExitUsage;
    }
    if (scan_cmd->count("--grid") > 0) opt.spec.grid_points_per_axis = sc_grid;
    if (scan_cmd->count("--samples") > 0) opt.spec.random_samples = sc_samples;
    if (scan_cmd->count("--seed") > 0) opt.spec.seed = sc_seed;
    if (scan_cmd->count("--band") > 0) opt.spec.boundary_band = sc_band;
    if (scan_cmd->count("--sign-tol") > 0) opt.spec.sign_tol = sc_sign_tol;
    if (scan_cmd->count("--fd-step") > 0) opt.fd_step = sc_fd_step;
    if (scan_cmd->count("--threads") > 0) opt.threads = sc_threads;

    try {
      opt.spec.validate();
      std::vector<PropertyReport> reports;
      if (opt.property == "all") {
        for (const auto& id : registered_properties()) {
          reports.push_back(
              counterexample_search(id, opt.spec, cfg, opt.threads, opt.fd_step));
        }
      } else {
        std::string id = opt.property;
        for (auto& c : id) {
          if (c == '-') c = '_';
        }
        reports.push_back(
            counterexample_search(id, opt.spec, cfg, opt.threads, opt.fd_step));
      }
      bool all_passed = true;
      for (const auto& r : reports) all_passed = all_passed && r.passed;
      const int write_rc = emit(sc_output, out, err, [&](std::ostream& os) {
        if (sc_format == "json") {
          os << reports_to_json(reports) << "\n";
        } else {
          os << reports_to_csv(reports);
        }
      });
      if (write_rc != kExitOk) return write_rc;
      return all_passed ? kExitOk : kExitViolation;
    } catch (const UnknownPropertyError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const DomainError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const QuadratureError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }

  // samples
  try {
    Interval iv;
    if (!parse_range(sm_range, iv)) {
      err << "error: --t-range must be a range a:b\n";
      return kExitUsage;
    }
    if (iv.lo > iv.hi) {
      err << "error: --t-range lower bound exceeds upper bound\n";
      return kExitUsage;
    }
    if (sm_points < 2) {
      err << "error: --points must be at least 2\n";
      return kExitUsage;
    }
    const PositivePair p(sm_x, sm_y);
    const ParamPair pr{sm_r, sm_s};
    const double step = (iv.hi - iv.lo) / (sm_points - 1);
    std::vector<std::pair<double, double>> rows;
    rows.reserve(sm_points);
    for (int i = 0; i < sm_points; ++i) {
      const double t = i == sm_points - 1 ? iv.hi : iv.lo + step * i;
      rows.emplace_back(t, evaluate_curve(sm_curve, t, pr, p, cfg));
    }
    return emit(sm_output, out, err, [&](std::ostream& os) {
      if (sm_format == "json") {
        os << "[\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
          os << '[' << format_double17(rows[i].first) << ','
             << format_double17(rows[i].second) << (i + 1 < rows.size() ? "],\n" : "]\n");
        }
        os << "]\n";
      } else {
        os << "t,value\n";
        for (const auto& [t, v] : rows) {
          os << format_double17(t) << ',' << format_double17(v) << "\n";
        }
      }
    });
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const QuadratureError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace gini::cli
