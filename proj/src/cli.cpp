#include "lssem/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

namespace lssem::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(',', start);
    const std::string token =
        text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    const char* first = token.data();
    const char* last = token.data() + token.size();
    T value{};
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc() || ptr != last) {
      throw UsageError("malformed list entry '" + token + "'");
    }
    out.push_back(value);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) { return parse_list<int>(text); }

std::vector<double> parse_double_list(const std::string& text) {
  return parse_list<double>(text);
}

void validate(const RunConfig& cfg) {
  if (cfg.eps.empty()) throw UsageError("--epsilon: empty list");
  if (cfg.W.empty()) throw UsageError("--W: empty list");
  for (double e : cfg.eps) {
    if (!(e > 0.0 && e <= 1.0)) throw UsageError("--epsilon values must lie in (0, 1]");
  }
  for (std::size_t i = 1; i < cfg.eps.size(); ++i) {
    if (!(cfg.eps[i] > cfg.eps[i - 1])) {
      throw UsageError("--epsilon: sweep must be strictly increasing");
    }
  }
  for (std::size_t i = 0; i < cfg.W.size(); ++i) {
    if (cfg.W[i] < 0) throw UsageError("--W values must be non-negative");
    if (i > 0 && cfg.W[i] <= cfg.W[i - 1]) {
      throw UsageError("--W: sweep must be strictly increasing");
    }
  }
  if (!(cfg.cn > 0.0)) throw UsageError("--cn must be positive");
  if (cfg.stop != "tol" && cfg.stop != "paper") throw UsageError("--stop must be tol or paper");
  if (cfg.stop == "tol" && !(cfg.tol > 0.0)) throw UsageError("--tol must be positive");
  if (cfg.stop == "paper") {
    if (!(cfg.C > 0.0)) throw UsageError("--C must be positive");
    if (cfg.W.front() < 2) throw UsageError("--stop paper needs W >= 2");
  }
  if (cfg.max_iters < 0) throw UsageError("--max-iters must be non-negative");
  for (int W : cfg.W) {
    if (cfg.quad_order > 0 && cfg.quad_order < 2 * W + 2) {
      throw UsageError("--quad-order must be at least 2W+2");
    }
  }
  if (cfg.example == "manufactured") {
    if (!(cfg.left < cfg.right)) throw UsageError("--domain: need left < right");
  } else {
    const auto* end = std::end(kBuiltinNames);
    if (std::find(std::begin(kBuiltinNames), end, cfg.example) == end) {
      throw UsageError("unknown example '" + cfg.example + "'");
    }
  }
}

Problem make_problem(const RunConfig& cfg, double eps) {
  if (cfg.example == "manufactured") {
    return manufactured(cfg.poly, eps, cfg.convection, cfg.reaction, cfg.left, cfg.right);
  }
  return builtin(cfg.example, eps);
}

SolveOptions make_options(const RunConfig& cfg, int W) {
  SolveOptions o;
  o.W = W;
  o.N = elements_for(cfg.mode, W, cfg.cn);
  o.basis = cfg.basis;
  o.precond = cfg.precond;
  o.quad_order = cfg.quad_order;
  o.stop = cfg.stop == "paper" ? StoppingRule::paper(cfg.C, W, cfg.max_iters)
                               : StoppingRule::relative(cfg.tol, cfg.max_iters);
  return o;
}

int cmd_solve(const RunConfig& cfg, std::ostream& csv, std::ostream& log) {
  validate(cfg);
  const double eps = cfg.eps.front();
  const Problem problem = make_problem(cfg, eps);
  const SolveResult res = solve(problem, make_options(cfg, cfg.W.front()));

  constexpr int kSamples = 201;
  std::vector<double> xs(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    xs[i] = problem.left + (problem.right - problem.left) * i / (kSamples - 1);
  }
  xs.back() = problem.right;
  const auto values = eval_solution(res.solution, res.mesh, xs);

  csv << (problem.has_exact() ? "x,u_sem,u_exact,pointwise_error\n" : "x,u_sem\n");
  for (int i = 0; i < kSamples; ++i) {
    csv << format_double(xs[i]) << ',' << format_double(values[i].value);
    if (problem.has_exact()) {
      const double ue = problem.exact(xs[i]).value;
      csv << ',' << format_double(ue) << ',' << format_double(std::abs(values[i].value - ue));
    }
    csv << '\n';
  }

  log << "rel_error_pct=" << (res.rel_error_pct ? format_double(*res.rel_error_pct) : "nan")
      << " iterations=" << res.report.iterations
      << " functional=" << format_double(res.functional)
      << " stop=" << to_string(res.report.stop_reason) << '\n';
  if (!res.report.converged) {
    log << "error: PCG did not converge within the iteration limit\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

std::vector<ConvergenceRecord> run_study(const RunConfig& cfg) {
  std::vector<ConvergenceRecord> rows;
  for (double eps : cfg.eps) {
    const Problem problem = make_problem(cfg, eps);
    for (int W : cfg.W) {
      const SolveOptions opts = make_options(cfg, W);
      const SolveResult res = solve(problem, opts);
      ConvergenceRecord rec;
      rec.example = cfg.example;
      rec.mode = std::string(to_string(cfg.mode));
      rec.eps = eps;
      rec.W = W;
      rec.N = opts.N;
      rec.dof = opts.N * (W + 1);
      rec.rel_error_pct = res.rel_error_pct.value_or(std::nan(""));
      rec.pcg_iterations = res.report.iterations;
      rec.converged = res.report.converged;
      rec.wall_time_seconds = res.wall_time_seconds;
      if (cfg.kappa) rec.kappa = condition_estimate(problem, opts, 100, cfg.seed).kappa;
      rows.push_back(std::move(rec));
    }
  }
  return rows;
}

void write_study_csv(const std::vector<ConvergenceRecord>& rows, bool timing, bool kappa,
                     std::ostream& os) {
  os << "example,mode,epsilon,W,N,dof,rel_error_pct,pcg_iterations,converged";
  if (kappa) os << ",kappa";
  if (timing) os << ",wall_time_seconds";
  os << '\n';
  for (const auto& r : rows) {
    os << r.example << ',' << r.mode << ',' << format_double(r.eps) << ',' << r.W << ','
       << r.N << ',' << r.dof << ',' << format_double(r.rel_error_pct) << ','
       << r.pcg_iterations << ',' << (r.converged ? 1 : 0);
    if (kappa) os << ',' << (r.kappa ? format_double(*r.kappa) : "");
    if (timing) os << ',' << format_double(r.wall_time_seconds);
    os << '\n';
  }
}

void write_svg(const std::vector<ConvergenceRecord>& rows, std::ostream& os) {
  constexpr double kWidth = 640, kHeight = 420;
  constexpr double kLeft = 70, kRight = 150, kTop = 30, kBottom = 50;
  constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                     "#ff7f0e", "#8c564b", "#17becf"};

  std::map<double, std::vector<std::pair<int, double>>> series;
  double wmin = 1e300, wmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& r : rows) {
    const double y = std::log10(std::max(r.rel_error_pct, 1e-300));
    if (!std::isfinite(y)) continue;
    series[r.eps].emplace_back(r.W, y);
    wmin = std::min(wmin, double(r.W));
    wmax = std::max(wmax, double(r.W));
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (series.empty()) {
    wmin = 0, wmax = 1, ymin = 0, ymax = 1;
  }
  if (wmax <= wmin) wmax = wmin + 1;
  ymin = std::floor(ymin);
  ymax = std::ceil(ymax);
  if (ymax <= ymin) ymax = ymin + 1;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double w) { return kLeft + (w - wmin) / (wmax - wmin) * pw; };
  auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\""
     << ph << "\" fill=\"none\" stroke=\"black\"/>\n";

  const int ystep = std::max(1, static_cast<int>(std::ceil((ymax - ymin) / 10)));
  for (int y = static_cast<int>(ymin); y <= static_cast<int>(ymax); y += ystep) {
    os << "<line x1=\"" << kLeft << "\" y1=\"" << num(py(y)) << "\" x2=\"" << kLeft + pw
       << "\" y2=\"" << num(py(y)) << "\" stroke=\"#dddddd\"/>\n"
       << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(py(y) + 4)
       << "\" font-size=\"12\" text-anchor=\"end\">1e" << y << "</text>\n";
  }
  std::set<int> ticks;
  for (const auto& [eps, pts] : series) {
    for (const auto& pt : pts) ticks.insert(pt.first);
  }
  for (int w : ticks) {
    os << "<text x=\"" << num(px(w)) << "\" y=\"" << kTop + ph + 18
       << "\" font-size=\"12\" text-anchor=\"middle\">" << w << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10
     << "\" font-size=\"14\" text-anchor=\"middle\">polynomial order W</text>\n"
     << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" font-size=\"14\" text-anchor=\"middle\""
     << " transform=\"rotate(-90 18 " << kTop + ph / 2 << ")\">relative error (%)</text>\n";

  int idx = 0;
  for (const auto& [eps, pts] : series) {
    const char* color = kColors[idx % std::size(kColors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      os << (i ? " " : "") << num(px(pts[i].first)) << ',' << num(py(pts[i].second));
    }
    os << "\"/>\n";
    for (const auto& pt : pts) {
      os << "<circle cx=\"" << num(px(pt.first)) << "\" cy=\"" << num(py(pt.second))
         << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kTop + 20 + 20 * idx;
    os << "<line x1=\"" << kLeft + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 40
       << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << kLeft + pw + 45 << "\" y=\"" << ly + 4
       << "\" font-size=\"12\">eps=" << format_double(eps) << "</text>\n";
    ++idx;
  }
  os << "</svg>\n";
}

int cmd_study(const RunConfig& cfg, std::ostream& csv, std::ostream& log) {
  validate(cfg);
  const auto rows = run_study(cfg);
  write_study_csv(rows, cfg.timing, cfg.kappa, csv);
  if (!cfg.svg.empty()) {
    std::ofstream svg(cfg.svg);
    if (!svg) throw UsageError("cannot open --svg path '" + cfg.svg + "'");
    write_svg(rows, svg);
  }
  int status = kExitOk;
  for (const auto& r : rows) {
    log << "eps=" << format_double(r.eps) << " W=" << r.W << " N=" << r.N
        << " rel_error_pct=" << format_double(r.rel_error_pct)
        << " iterations=" << r.pcg_iterations << " time_s=" << r.wall_time_seconds << '\n';
    if (!r.converged) {
      log << "error: PCG did not converge for eps=" << format_double(r.eps) << " W=" << r.W
          << '\n';
      status = kExitNoConvergence;
    }
  }
  return status;
}

int cmd_condnum(const RunConfig& cfg, std::ostream& csv, std::ostream& log) {
  validate(cfg);
  csv << "example,mode,epsilon,W,N,precond,lambda_min,lambda_max,kappa\n";
  for (double eps : cfg.eps) {
    const Problem problem = make_problem(cfg, eps);
    for (int W : cfg.W) {
      const SolveOptions opts = make_options(cfg, W);
      const ExtremeEigenvalues est = condition_estimate(problem, opts, 100, cfg.seed);
      csv << cfg.example << ',' << to_string(cfg.mode) << ',' << format_double(eps) << ','
          << W << ',' << opts.N << ',' << to_string(cfg.precond) << ','
          << format_double(est.lambda_min) << ',' << format_double(est.lambda_max) << ','
          << format_double(est.kappa) << '\n';
      log << "eps=" << format_double(eps) << " W=" << W << " kappa=" << format_double(est.kappa)
          << '\n';
    }
  }
  return kExitOk;
}

}  // namespace lssem::cli
