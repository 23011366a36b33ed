// mellin: command-line front end for the Mellin convolution laboratory.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mellin/errors.hpp"
#include "mellin/function_space.hpp"
#include "mellin/mellin_ops.hpp"
#include "mellin/output.hpp"
#include "mellin/special_functions.hpp"
#include "mellin/structure_space.hpp"
#include "mellin/verification.hpp"

using namespace mellin;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Globals {
  double rel_tol = 1e-10;
  int max_depth = 12;
  std::string format;
  std::string out;
  std::uint64_t seed = 42;

  [[nodiscard]] QuadratureConfig cfg() const {
    QuadratureConfig c;
    c.rel_tol = rel_tol;
    c.max_refinement_depth = max_depth;
    return c;
  }
};

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw UsageError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

// "a,b,c" or "lo..hi" or "lo..hi:step" (inclusive, default step 1).
std::vector<double> parse_list(const std::string& spec) {
  std::vector<double> out;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const double lo = parse_double(std::string_view(spec).substr(0, dots));
    std::string rest = spec.substr(dots + 2);
    double step = 1.0;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      step = parse_double(std::string_view(rest).substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const double hi = parse_double(rest);
    if (!(step > 0.0) || hi < lo) throw UsageError("bad range '" + spec + "'");
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(lo + step * static_cast<double>(i));
    return out;
  }
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const auto end = comma == std::string::npos ? spec.size() : comma;
    out.push_back(parse_double(std::string_view(spec).substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  for (double v : parse_list(spec)) {
    if (v != std::floor(v)) throw UsageError("expected integers in '" + spec + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

// "a,b" or "a,b;c,d" pairs of (alpha, beta).
std::vector<SeminormIndex> parse_indices(const std::string& spec) {
  std::vector<SeminormIndex> out;
  std::size_t start = 0;
  while (start < spec.size()) {
    const auto semi = spec.find(';', start);
    const std::string item = spec.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    const std::vector<int> v = parse_int_list(item);
    if (v.size() != 2 || v[1] < 0) throw UsageError("index must be 'alpha,beta' with beta >= 0: '" + item + "'");
    out.push_back({v[0], v[1]});
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (out.empty()) throw UsageError("no indices given");
  return out;
}

SmoothFunction lookup(const std::string& label) {
  try {
    return catalog_function(label);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// A table that renders either as strict CSV or as JSON with a summary.
struct Result {
  CsvTable table;
  json summary = json::object();
};

void emit(const Globals& g, const Result& r, const std::string& default_format) {
  const std::string fmt = g.format.empty() ? default_format : g.format;
  if (fmt == "csv") {
    write_output(g.out, r.table.str());
    return;
  }
  json j;
  j["columns"] = r.table.header();
  json rows = json::array();
  for (const auto& cells : r.table.cells()) {
    json row = json::array();
    for (const auto& cell : cells) {
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec == std::errc() && res.ptr == cell.data() + cell.size()) {
        row.push_back(v);
      } else {
        row.push_back(cell);
      }
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  if (!r.summary.empty()) j["summary"] = r.summary;
  write_output(g.out, j.dump(2) + "\n");
}

void emit_json(const Globals& g, const json& j) {
  if (g.format == "csv") throw UsageError("this command only emits JSON");
  write_output(g.out, j.dump(2) + "\n");
}

double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
  return x.size() >= 2 ? fit_loglog_slope(x, y) : std::nan("");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mellin convolution algebra laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--rel-tol", g.rel_tol, "relative quadrature tolerance")->capture_default_str();
  app.add_option("--max-depth", g.max_depth, "quadrature refinement depth")->capture_default_str();
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out, "output path, written atomically (default stdout)");
  app.add_option("--seed", g.seed, "seed for randomized checks")->capture_default_str();

  int exit_code = 0;

  // transform
  std::string t_f = "log-gauss", t_s = "0";
  auto* transform = app.add_subcommand("transform", "Mellin transform M_f(s)");
  transform->add_option("--f", t_f, "catalog label")->capture_default_str();
  transform->add_option("--s", t_s, "list or range of s")->capture_default_str();
  transform->callback([&] {
    const SmoothFunction f = lookup(t_f);
    Result r{CsvTable({"s", "value", "error_estimate"})};
    for (double s : parse_list(t_s)) {
      const IntegralResult v = mellin_transform(f, s, g.cfg());
      r.table.add_row(std::vector<double>{s, v.value, v.error_estimate});
    }
    r.summary["function"] = f.label();
    emit(g, r, "csv");
  });

  // convolve
  std::string c_f = "log-gauss", c_g = "bump", c_x = "0.5,1,2,4";
  int c_order = 0;
  auto* convolve = app.add_subcommand("convolve", "Mellin convolution (f * g)(x)");
  convolve->add_option("--f", c_f)->capture_default_str();
  convolve->add_option("--g", c_g)->capture_default_str();
  convolve->add_option("--x", c_x, "list or range of x > 0")->capture_default_str();
  convolve->add_option("--order", c_order, "derivative order")->capture_default_str();
  convolve->callback([&] {
    const ConvolutionResult conv = mellin_convolve(lookup(c_f), lookup(c_g), g.cfg());
    Result r{CsvTable({"x", "value", "error_estimate"})};
    for (double x : parse_list(c_x)) {
      const IntegralResult v = conv.evaluate_derivative(c_order, x);
      r.table.add_row(std::vector<double>{x, v.value, v.error_estimate});
    }
    double worst = 0.0;
    for (double s : {-1.0, 0.0, 1.0, 2.0}) {
      worst = std::max(worst, convolution_theorem_residual(lookup(c_f), lookup(c_g), s, g.cfg()));
    }
    r.summary["convolution_theorem_residual"] = worst;
    emit(g, r, "csv");
  });

  // young
  std::string y_f = "log-gauss", y_g = "log-gauss", y_pq = "1,1;2,1;1.5,1.5;1.3333333333333333,2";
  auto* young = app.add_subcommand("young", "Young inequality margins in L^p(dy/y)");
  young->add_option("--f", y_f)->capture_default_str();
  young->add_option("--g", y_g)->capture_default_str();
  young->add_option("--pq", y_pq, "pairs 'p,q;p,q'")->capture_default_str();
  young->callback([&] {
    const SmoothFunction f = lookup(y_f), h = lookup(y_g);
    Result r{CsvTable({"p", "q", "r", "lhs", "rhs", "margin"})};
    double least = std::numeric_limits<double>::infinity();
    std::size_t start = 0;
    while (start < y_pq.size()) {
      const auto semi = y_pq.find(';', start);
      const std::vector<double> v = parse_list(y_pq.substr(start, semi == std::string::npos ? std::string::npos : semi - start));
      if (v.size() != 2) throw UsageError("each pair must be 'p,q'");
      const YoungCheck y = young_inequality_check(f, h, v[0], v[1], g.cfg());
      r.table.add_row(std::vector<double>{y.p, y.q, y.r, y.lhs, y.rhs, y.margin});
      least = std::min(least, y.margin);
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    r.summary["min_margin"] = least;
    emit(g, r, "csv");
  });

  // verify
  std::string v_suite = "all";
  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("--suite", v_suite)->check(CLI::IsMember(suites))->capture_default_str();
  verify->callback([&] {
    VerifyOptions opts;
    opts.cfg = g.cfg();
    opts.seed = g.seed;
    const VerificationReport rep = run_verification(v_suite, opts);
    const std::string fmt = g.format.empty() ? "json" : g.format;
    write_output(g.out, fmt == "csv" ? rep.to_csv() : rep.to_json());
    std::cerr << rep.count(CheckStatus::pass) << " passed, " << rep.count(CheckStatus::fail) << " failed, "
              << rep.count(CheckStatus::skipped) << " skipped\n";
    if (rep.any_failed()) exit_code = 1;
  });

  // experiment
  auto* experiment = app.add_subcommand("experiment", "density, nonnormability and recovery series");
  experiment->require_subcommand(1);

  std::string d_f = "log-gauss", d_n = "4,8,16,32,64";
  int d_alpha = 0, d_beta = 1;
  auto* density = experiment->add_subcommand("density", "p_{alpha,beta}(theta_n f - f) against n");
  density->add_option("--f", d_f)->capture_default_str();
  density->add_option("--alpha", d_alpha)->capture_default_str();
  density->add_option("--beta", d_beta)->capture_default_str();
  density->add_option("--n", d_n, "list or range of n >= 2")->capture_default_str();
  density->callback([&] {
    if (d_beta < 0) throw UsageError("beta must be >= 0");
    const std::vector<int> ns = parse_int_list(d_n);
    for (int n : ns) {
      if (n < 2) throw UsageError("n must be >= 2");
    }
    const auto pts = density_experiment(lookup(d_f), {d_alpha, d_beta}, ns);
    std::vector<double> x, y;
    for (const auto& p : pts) {
      x.push_back(p.n);
      y.push_back(p.error);
    }
    const double slope = slope_of(x, y);
    Result r{CsvTable({"n", "error", "fitted_slope"})};
    for (const auto& p : pts) r.table.add_row(std::vector<double>{static_cast<double>(p.n), p.error, slope});
    r.summary["fitted_slope"] = slope;
    emit(g, r, "csv");
  });

  std::string w_idx = "0,0", w_m = "2..64";
  double w_eps = 1.0;
  auto* nonnorm = experiment->add_subcommand("nonnormability", "witness sequence f_m");
  nonnorm->add_option("--indices", w_idx, "'alpha,beta;alpha,beta'")->capture_default_str();
  nonnorm->add_option("--eps", w_eps)->capture_default_str();
  nonnorm->add_option("--m", w_m, "list or range of m >= 1")->capture_default_str();
  nonnorm->callback([&] {
    const auto idx = parse_indices(w_idx);
    if (!(w_eps > 0.0)) throw UsageError("eps must be positive");
    std::vector<double> ms, blow, cons;
    int order = 0;
    for (int m : parse_int_list(w_m)) {
      if (m < 1) throw UsageError("m must be >= 1");
      const WitnessResult w = nonnormability_witness(idx, w_eps, m);
      double worst = 0.0;
      for (double v : w.constraint_sups) worst = std::max(worst, v);
      ms.push_back(m);
      cons.push_back(worst);
      blow.push_back(w.blowup_value);
      order = w.blowup_order;
    }
    const double slope = slope_of(ms, blow);
    Result r{CsvTable({"m", "max_constraint", "blowup", "fitted_slope"})};
    for (std::size_t i = 0; i < ms.size(); ++i) r.table.add_row(std::vector<double>{ms[i], cons[i], blow[i], slope});
    r.summary["blowup_index"] = {0, order};
    r.summary["fitted_slope"] = slope;
    emit(g, r, "csv");
  });

  double r_s = 1.5;
  std::string r_probes = "0.5,2,3";
  auto* recovery = experiment->add_subcommand("recovery", "recover a hidden exponent across bases");
  recovery->add_option("--s-hidden", r_s)->capture_default_str();
  recovery->add_option("--probes", r_probes)->capture_default_str();
  recovery->callback([&] {
    const std::vector<double> probes = parse_list(r_probes);
    const FunctionalOracle m = functional_ms(r_s, g.cfg());
    Result r{CsvTable({"base", "s_estimate", "abs_error", "consistency_residual"})};
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const char* base : {"log-gauss", "exp-inv", "bump"}) {
      const RecoveryReport rep = recover_exponent(m, lookup(base), probes);
      r.table.add_row(std::vector<std::string>{base, format_number(rep.s_estimate),
                                               format_number(std::abs(rep.s_estimate - r_s)),
                                               format_number(rep.consistency_residual)});
      lo = std::min(lo, rep.s_estimate);
      hi = std::max(hi, rep.s_estimate);
    }
    r.summary["cross_base_spread"] = hi - lo;
    emit(g, r, "csv");
  });

  // recover-s
  double rs_s = 1.5;
  std::string rs_base = "log-gauss", rs_probes = "0.5,2,3";
  auto* recover = app.add_subcommand("recover-s", "recover s from a hidden multiplicative functional");
  recover->add_option("--s-hidden", rs_s)->capture_default_str();
  recover->add_option("--base", rs_base)->capture_default_str();
  recover->add_option("--probes", rs_probes)->capture_default_str();
  recover->callback([&] {
    const RecoveryReport rep = recover_exponent(functional_ms(rs_s, g.cfg()), lookup(rs_base), parse_list(rs_probes));
    json j;
    j["base"] = rs_base;
    j["s_estimate"] = rep.s_estimate;
    j["base_value"] = rep.base_value;
    j["consistency_residual"] = rep.consistency_residual;
    json samples = json::array();
    for (const auto& [x, phi] : rep.phi_samples) samples.push_back({{"x", x}, {"phi", phi}});
    j["phi_samples"] = std::move(samples);
    emit_json(g, j);
  });

  // e-function
  double e_c = 0.5;
  std::string e_grid = "-2..3";
  auto* efun = app.add_subcommand("e-function", "E_c(s) on a grid of s");
  efun->add_option("--c", e_c)->capture_default_str();
  efun->add_option("--grid", e_grid)->capture_default_str();
  efun->callback([&] {
    const std::vector<double> grid = parse_list(e_grid);
    const MonotonicityCheck mc = e_monotonicity_check(e_c, grid, g.cfg());
    Result r{CsvTable({"s", "value", "error_estimate"})};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      r.table.add_row(std::vector<double>{grid[i], mc.values[i].value, mc.values[i].error_estimate});
    }
    r.summary["increasing"] = mc.increasing;
    emit(g, r, "csv");
  });

  // table
  std::string tb_what = "theta", tb_order = "0";
  int tb_points = 257;
  auto* table = app.add_subcommand("table", "samples of theta, eta or theta<n> and derivatives");
  table->add_option("--function", tb_what, "theta, eta or theta<n>")->capture_default_str();
  table->add_option("--order", tb_order, "derivative orders")->capture_default_str();
  table->add_option("--points", tb_points, "samples per order")->capture_default_str();
  table->callback([&] {
    if (tb_points < 2) throw UsageError("need at least 2 points");
    std::function<double(int, double)> fn;
    double lo = 0.0, hi = 1.0;
    if (tb_what == "theta") {
      fn = [](int k, double x) { return fabius_derivative(x, k); };
    } else if (tb_what == "eta") {
      lo = -1.0;
      fn = [](int k, double x) { return eta_derivative(x, k); };
    } else if (tb_what.rfind("theta", 0) == 0) {
      const SmoothFunction c = lookup(tb_what);
      lo = c.support()->lo;
      hi = c.support()->hi;
      fn = [c](int k, double x) { return c.derivative(k, x); };
    } else {
      throw UsageError("unknown table function '" + tb_what + "'");
    }
    Result r{CsvTable({"x", "value", "order"})};
    for (int k : parse_int_list(tb_order)) {
      for (int i = 0; i < tb_points; ++i) {
        const double x = lo + (hi - lo) * i / (tb_points - 1);
        r.table.add_row(std::vector<double>{x, fn(k, x), static_cast<double>(k)});
      }
    }
    emit(g, r, "csv");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
