// dynkclust: stream-driven dynamic k-clustering harness.
//
// Subcommands:
//   run     maintain a clustering over a stream, emit per-update metrics
//   value   maintain a k-median value estimate over a stream
//   ufl     one-shot fractional facility-location solution for a lambda
//   oracle  brute-force optimum tables for small instances
//
// DYNKCLUST_LOG = quiet | error | info | debug controls stderr verbosity.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "dynk/errors.hpp"
#include "dynk/frac_kmedian.hpp"
#include "dynk/hierarchy.hpp"
#include "dynk/numeric.hpp"
#include "dynk/objective.hpp"
#include "dynk/oracles.hpp"
#include "dynk/projection.hpp"
#include "dynk/stream_io.hpp"

using namespace dynk;

namespace {

int log_level() {
  static int lvl = [] {
    const char* env = std::getenv("DYNKCLUST_LOG");
    if (!env) return 1;
    std::string v(env);
    if (v == "quiet") return 0;
    if (v == "info") return 2;
    if (v == "debug") return 3;
    return 1;
  }();
  return lvl;
}

void log_at(int level, const std::string& msg) {
  if (log_level() >= level) std::fprintf(stderr, "dynkclust: %s\n", msg.c_str());
}

template <typename... Args>
  requires(sizeof...(Args) > 0)
void log_at(int level, const char* fmt, Args... args) {
  if (log_level() < level) return;
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  log_at(level, std::string(buf));
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity") return kPInfinity;
  int p = std::stoi(text);
  if (p < 1) throw CLI::ValidationError("--p must be >= 1 or 'inf'");
  return p;
}

long long set_diff_size(const CenterSet& a, const CenterSet& b) {
  long long n = 0;
  for (PointId x : a) n += !b.count(x);
  for (PointId x : b) n += !a.count(x);
  return n;
}

struct MetricsWriter {
  std::ofstream out;
  explicit MetricsWriter(const std::string& path) : out(path, std::ios::binary) {
    if (!out) fail(Errc::parse_error, "cannot open metrics file '" + path + "'");
    out << "update_idx,op,n_live,improper_cost,proper_cost,recourse_improper,"
           "recourse_proper,cumulative_recourse,value_estimate,elapsed_us\n";
    out.flush();
  }
  void row(std::size_t idx, const char* op, std::size_t n_live, const std::string& improper,
           const std::string& proper, const std::string& rec_i, const std::string& rec_p,
           const std::string& cum, const std::string& estimate, long long elapsed_us) {
    out << idx << ',' << op << ',' << n_live << ',' << improper << ',' << proper << ',' << rec_i
        << ',' << rec_p << ',' << cum << ',' << estimate << ',' << elapsed_us << '\n';
    out.flush();
  }
};

struct RunOptions {
  std::string stream;
  int k = 1;
  double epsilon = 0.5;
  std::string p_text = "1";
  std::uint64_t seed = 0;
  std::string metrics_out;
  bool strict = false;
  bool timing = false;
  bool oracle_compare = false;
  std::uint64_t max_iters = 0;
  bool has_max_iters = false;
};

// Logs the violation; in strict mode the run stops with exit code 2.
bool report_violation(bool strict, const std::string& what) {
  log_at(1, "invariant violation: %s", what.c_str());
  return strict;
}

int cmd_run(const RunOptions& opt) {
  StreamData data = parse_stream_file(opt.stream);
  WeightedMetricSpace space = make_space(data);

  HierarchyConfig cfg;
  cfg.k = opt.k;
  cfg.epsilon = opt.epsilon;
  cfg.p = parse_p(opt.p_text);
  cfg.search.p = cfg.p == kPInfinity ? 1 : cfg.p;  // hierarchy swaps in log n itself
  cfg.search.seed = opt.seed;
  if (opt.has_max_iters) cfg.search.max_iters_override = opt.max_iters;

  CenterHierarchy hierarchy(&space, cfg);
  DynamicProjection projection(&space);
  MetricsWriter metrics(opt.metrics_out);

  double ls_eps = cfg.search.epsilon;
  double alpha = 1.0 + 7.0 * ls_eps;
  double beta = 6.0 * (cfg.p == kPInfinity ? 1 : cfg.p) * alpha;
  double ratio_bound = 0.0;
  for (int i = 0; i <= hierarchy.levels() + 1; ++i) ratio_bound += ipow(alpha, i);
  ratio_bound *= 2.0 * beta;

  long long cumulative = 0;
  std::size_t idx = 0;
  for (const StreamEvent& ev : data.events) {
    ++idx;
    auto t0 = std::chrono::steady_clock::now();
    apply_event(space, ev);
    if (ev.kind == UpdateKind::insert)
      projection.apply_B_insert(ev.id);
    else
      projection.apply_B_delete(ev.id);

    CenterSet before = hierarchy.current_solution();
    CenterSet lambda_before = projection.proper_solution();
    const CenterSet& after = hierarchy.update(ev.kind, ev.id);
    for (PointId y : before)
      if (!after.count(y)) projection.apply_A_delete(y);
    for (PointId y : after)
      if (!before.count(y)) projection.apply_A_insert(y);
    hierarchy.collect_garbage();

    long long rec_improper = set_diff_size(before, after);
    long long rec_proper = set_diff_size(lambda_before, projection.proper_solution());
    cumulative += rec_improper + rec_proper;

    double improper_cost = hierarchy.current_cost(cfg.p);
    double proper_cost = 0.0;
    if (space.size() > 0) proper_cost = clustering_cost(space, projection.proper_solution(), cfg.p);

    try {
      hierarchy.check_invariants();
    } catch (const std::logic_error& e) {
      if (report_violation(opt.strict, e.what())) return 2;
    }
    const auto& st = hierarchy.last_stats();
    long long cap = 4 * hierarchy.slack(st.rebuilt_from - 1) + 1;
    for (int i = 0; i <= hierarchy.levels() + 1; ++i)
      if (st.layer_recourse[i] > cap) {
        if (report_violation(opt.strict, "layer " + std::to_string(i) + " recourse " +
                                             std::to_string(st.layer_recourse[i]) + " > " +
                                             std::to_string(cap)))
          return 2;
      }

    if (opt.oracle_compare && space.size() > 0) {
      double optimum = brute_opt_clustering(space, cfg.k, cfg.p).cost;
      double ratio = optimum > 0.0 ? proper_cost / optimum : 1.0;
      bool ok = ratio <= 2.0 * ratio_bound + kAbsTol;  // proper side pays another factor 2
      std::printf("compare update=%zu cost=%s opt=%s ratio=%s bound=%s %s\n", idx,
                  fmt_double(proper_cost).c_str(), fmt_double(optimum).c_str(),
                  fmt_double(ratio).c_str(), fmt_double(2.0 * ratio_bound).c_str(),
                  ok ? "ok" : "VIOLATED");
      if (!ok && report_violation(opt.strict, "approximation ratio above bound")) return 2;
    }

    auto t1 = std::chrono::steady_clock::now();
    long long us =
        opt.timing ? std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count() : 0;
    metrics.row(idx, ev.kind == UpdateKind::insert ? "insert" : "delete", space.size(),
                fmt_double(improper_cost), fmt_double(proper_cost), std::to_string(rec_improper),
                std::to_string(rec_proper), std::to_string(cumulative), "", us);
    log_at(3, "update %zu: n=%zu improper=%g proper=%g", idx, space.size(), improper_cost,
           proper_cost);
  }
  log_at(2, "processed %zu events; cumulative recourse %lld", idx, cumulative);
  return 0;
}

struct ValueOptions {
  std::string stream;
  int k = 1;
  double epsilon = 0.1;
  std::string metrics_out;
  bool strict = false;
  bool timing = false;
  bool oracle_compare = false;
};

int cmd_value(const ValueOptions& opt) {
  StreamData data = parse_stream_file(opt.stream);
  WeightedMetricSpace space = make_space(data);
  FractionalKMedian solver(&space);
  MetricsWriter metrics(opt.metrics_out);

  std::size_t idx = 0;
  for (const StreamEvent& ev : data.events) {
    ++idx;
    auto t0 = std::chrono::steady_clock::now();
    apply_event(space, ev);
    if (ev.kind == UpdateKind::insert)
      solver.on_insert(ev.id);
    else
      solver.on_delete(ev.id);
    space.collect_garbage({});

    std::string estimate_text;  // left empty while k exceeds the live size
    double estimate = 0.0;
    bool have_estimate = false;
    if (space.size() >= static_cast<std::size_t>(opt.k)) {
      auto sol = solver.solve(opt.k, opt.epsilon);
      estimate = 3.0 * sol.connection_cost;
      have_estimate = true;
      estimate_text = fmt_double(estimate);
      if (sol.linear_fallback) log_at(1, "grid binary search fell back to a linear scan");
    }

    if (opt.oracle_compare && have_estimate) {
      double optimum = brute_opt_clustering(space, opt.k, 1).cost;
      bool ok = approx_le(optimum, estimate) &&
                approx_le(estimate, 12.0 * (1.0 + opt.epsilon) * optimum);
      std::printf("compare update=%zu estimate=%s opt=%s %s\n", idx, fmt_double(estimate).c_str(),
                  fmt_double(optimum).c_str(), ok ? "ok" : "VIOLATED");
      if (!ok && report_violation(opt.strict, "value estimate outside bracket")) return 2;
    }

    auto t1 = std::chrono::steady_clock::now();
    long long us =
        opt.timing ? std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count() : 0;
    metrics.row(idx, ev.kind == UpdateKind::insert ? "insert" : "delete", space.size(), "", "", "",
                "", "", estimate_text, us);
  }
  log_at(2, "processed %zu events", idx);
  return 0;
}

int cmd_ufl(const std::string& stream, double lambda) {
  StreamData data = parse_stream_file(stream);
  WeightedMetricSpace space = make_space(data);
  for (const StreamEvent& ev : data.events) apply_event(space, ev);
  FractionalUfl ufl(&space);
  auto sol = ufl.solution(lambda);
  std::printf("n=%zu lambda=%s\n", space.size(), fmt_double(lambda).c_str());
  for (const auto& [i, yi] : sol.y)
    std::printf("y %lld %s\n", static_cast<long long>(i), fmt_double(yi).c_str());
  std::printf("open_mass %s\n", fmt_double(sol.open_mass).c_str());
  std::printf("connection_cost %s\n", fmt_double(sol.connection_cost).c_str());
  std::printf("dual_bound %s\n", fmt_double(4.0 * ufl.dual_value(lambda)).c_str());
  std::printf("lmp_value %s\n",
              fmt_double(4.0 * lambda * sol.open_mass + sol.connection_cost).c_str());
  return 0;
}

int cmd_oracle(const std::string& stream, int k, const std::string& p_text, double lambda,
               bool has_lambda) {
  StreamData data = parse_stream_file(stream);
  WeightedMetricSpace space = make_space(data);
  for (const StreamEvent& ev : data.events) apply_event(space, ev);
  int p = parse_p(p_text);
  std::printf("n=%zu\n", space.size());
  for (int kk = 1; kk <= k; ++kk) {
    auto opt = brute_opt_clustering(space, kk, p);
    std::printf("opt k=%d p=%s cost=%s centers=", kk, p_text.c_str(),
                fmt_double(opt.cost).c_str());
    bool first = true;
    for (PointId c : opt.centers) {
      std::printf(first ? "%lld" : " %lld", static_cast<long long>(c));
      first = false;
    }
    std::printf("\n");
  }
  if (has_lambda) {
    auto opt = brute_opt_ufl(space, lambda);
    std::printf("opt_ufl lambda=%s cost=%s size=%zu\n", fmt_double(lambda).c_str(),
                fmt_double(opt.cost).c_str(), opt.centers.size());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic k-clustering engine"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "maintain a clustering over a stream");
  run_cmd->add_option("--stream", run.stream, "stream file")->required();
  run_cmd->add_option("--k", run.k, "number of centers")->required();
  run_cmd->add_option("--epsilon", run.epsilon, "hierarchy accuracy parameter");
  run_cmd->add_option("--p", run.p_text, "objective exponent (or 'inf')");
  run_cmd->add_option("--seed", run.seed, "random seed");
  run_cmd->add_option("--metrics-out", run.metrics_out, "metrics CSV path")->required();
  run_cmd->add_flag("--strict", run.strict, "exit 2 on invariant violations");
  run_cmd->add_flag("--timing", run.timing, "fill elapsed_us (breaks byte determinism)");
  run_cmd->add_flag("--oracle-compare", run.oracle_compare,
                    "check each update against brute force");
  auto* mi = run_cmd->add_option("--max-iters", run.max_iters, "local search iteration override");

  ValueOptions val;
  auto* value_cmd = app.add_subcommand("value", "maintain a k-median value estimate");
  value_cmd->add_option("--stream", val.stream, "stream file")->required();
  value_cmd->add_option("--k", val.k, "number of centers")->required();
  value_cmd->add_option("--epsilon", val.epsilon, "grid accuracy parameter");
  value_cmd->add_option("--metrics-out", val.metrics_out, "metrics CSV path")->required();
  value_cmd->add_flag("--strict", val.strict, "exit 2 on bound violations");
  value_cmd->add_flag("--timing", val.timing, "fill elapsed_us (breaks byte determinism)");
  value_cmd->add_flag("--oracle-compare", val.oracle_compare, "check against brute force");

  std::string ufl_stream;
  double ufl_lambda = 1.0;
  auto* ufl_cmd = app.add_subcommand("ufl", "fractional facility location snapshot");
  ufl_cmd->add_option("--stream", ufl_stream, "stream file")->required();
  ufl_cmd->add_option("--lambda", ufl_lambda, "facility opening cost")->required();

  std::string oracle_stream, oracle_p = "1";
  int oracle_k = 1;
  double oracle_lambda = 0.0;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force optimum tables");
  oracle_cmd->add_option("--stream", oracle_stream, "stream file")->required();
  oracle_cmd->add_option("--k", oracle_k, "largest k to tabulate")->required();
  oracle_cmd->add_option("--p", oracle_p, "objective exponent (or 'inf')");
  auto* ol = oracle_cmd->add_option("--lambda", oracle_lambda, "also solve facility location");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      run.has_max_iters = mi->count() > 0;
      return cmd_run(run);
    }
    if (value_cmd->parsed()) return cmd_value(val);
    if (ufl_cmd->parsed()) return cmd_ufl(ufl_stream, ufl_lambda);
    if (oracle_cmd->parsed())
      return cmd_oracle(oracle_stream, oracle_k, oracle_p, oracle_lambda, ol->count() > 0);
  } catch (const Error& e) {
    log_at(1, "%s", e.what());
    return 1;
  } catch (const std::exception& e) {
    log_at(1, "internal error: %s", e.what());
    return 2;
  }
  return 0;
}
