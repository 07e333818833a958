#include "rrcolor/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "rrcolor/batch.hpp"
#include "rrcolor/experiments.hpp"
#include "rrcolor/graph.hpp"
#include "rrcolor/potential.hpp"
#include "rrcolor/sampler.hpp"

namespace rrcolor::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct CommonOpts {
  std::string graph_path;
  std::string generate_spec;
  int colors = 0;
  std::string seed_text = "0";
  std::string format = "json";
  std::uint64_t step_cap = 0;
  int threads = 0;
  std::uint64_t enum_cap = 10'000'000;

  std::uint64_t seed() const { return std::stoull(seed_text, nullptr, 0); }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_enum_cap, bool with_graph_source = true) {
  if (with_graph_source) {
    auto* graph = cmd->add_option("--graph", o.graph_path, "Graph file (DIMACS-like edge list)");
    auto* gen = cmd->add_option("--generate", o.generate_spec,
                                "Generator spec: cycle:N, path:N, complete:N, grid:R,C, "
                                "random_regular:N,D");
    graph->excludes(gen);
  }
  cmd->add_option("--colors", o.colors, "Number of colors k")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed_text, "64-bit seed, decimal or 0x-hex")
      ->default_val(std::string("0"))
      ->check([](const std::string& s) -> std::string {
        try {
          std::size_t pos = 0;
          std::stoull(s, &pos, 0);
          if (pos != s.size()) return "trailing characters in seed '" + s + "'";
          return {};
        } catch (const std::exception&) {
          return "not a 64-bit seed: '" + s + "'";
        }
      });
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "text", "csv"}))
      ->default_val(std::string("json"));
  cmd->add_option("--step-cap", o.step_cap, "Step budget per sample (default 1e6 * nodes)");
  cmd->add_option("--threads", o.threads, "Worker threads for sample fan-out (0 = default)");
  if (with_enum_cap) {
    cmd->add_option("--enum-cap", o.enum_cap, "Enumeration cap on k^n")->default_val(10'000'000);
  }
}

Graph load_graph(const CommonOpts& o) {
  if (o.graph_path.empty() == o.generate_spec.empty()) {
    throw CLI::ValidationError("graph source", "need exactly one of --graph or --generate");
  }
  if (!o.graph_path.empty()) return parse_graph_file(o.graph_path);
  return generate_from_spec(o.generate_spec, o.seed());
}

ordered_json graph_json(const Graph& g) {
  return ordered_json{
      {"nodes", g.node_count()}, {"edges", g.edge_count()}, {"max_degree", g.max_degree()}};
}

ordered_json chi_json(const ChiSquareResult& chi) {
  return ordered_json{{"statistic", chi.statistic}, {"df", chi.df}, {"p_value", chi.p_value}};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void warn_when_unguaranteed(const Graph& g, int k, std::ostream& err) {
  const int delta = g.max_degree();
  if (delta < 1 || guarantee_applies(k, delta)) return;
  const Rational alpha(k - 1, delta);
  err << "warning: (k-1)/max_degree = " << alpha.str()
      << " is at or below the linear-expected-time guarantee threshold "
         "(7+sqrt(57))/4 = 3.637...; the sampler stays exact but its expected "
         "running time is not guaranteed\n";
}

// ---------------------------------------------------------------------------

int cmd_sample(const CommonOpts& o, int samples, bool trace_potential, std::ostream& out,
               std::ostream& err) {
  const Graph g = load_graph(o);
  warn_when_unguaranteed(g, o.colors, err);

  std::optional<PotentialParams> params;
  if (trace_potential && g.max_degree() >= 1) {
    params = make_potential_params(o.colors, g.max_degree());
  }

  // Potential tracing forces the serial path (it hooks an observer per run);
  // plain sampling fans out.
  std::vector<SampleResult> results;
  if (!trace_potential) {
    BatchOptions bo;
    bo.step_cap = o.step_cap;
    bo.threads = o.threads;
    results = sample_batch_parallel(g, o.colors, o.seed(), samples, bo);
  } else {
    struct Tracer final : StepObserver {
      const PotentialParams* params;
      std::vector<std::pair<std::uint64_t, Rational>> trace;
      void on_start(const Coloring&, const IndexState& xs) override {
        if (params) trace.emplace_back(0, potential_value(xs, *params));
      }
      void on_step(std::uint64_t i, const StepOutcome&, const Coloring&,
                   const IndexState& xs) override {
        if (params) trace.emplace_back(i, potential_value(xs, *params));
      }
    };
    for (int i = 0; i < samples; ++i) {
      Tracer tracer;
      tracer.params = params ? &*params : nullptr;
      BitSource rng(o.seed() + static_cast<std::uint64_t>(i));
      SampleOptions so;
      so.step_cap = o.step_cap;
      so.observer = &tracer;
      SampleResult r = rr_sample(g, o.colors, rng, so);
      r.metrics.potential_trace = std::move(tracer.trace);
      results.push_back(std::move(r));
    }
  }

  const bool any_budget = std::any_of(results.begin(), results.end(), [](const auto& r) {
    return r.status == SampleStatus::BudgetExceeded;
  });

  if (o.format == "csv") {
    throw CLI::ValidationError("--format", "csv is not available for sample output");
  }
  if (o.format == "json") {
    ordered_json doc{{"schema_version", kSchemaVersion},
                     {"command", "sample"},
                     {"graph", graph_json(g)},
                     {"colors", o.colors},
                     {"seed", o.seed()},
                     {"samples", ordered_json::array()}};
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      ordered_json s{{"index", i},
                     {"seed", o.seed() + i},
                     {"status", r.status == SampleStatus::Ok ? "ok" : "budget_exceeded"}};
      if (r.status == SampleStatus::Ok) s["coloring"] = r.coloring.color;
      ordered_json m{{"total_steps", r.metrics.total_steps},
                     {"steps_by_kind",
                      ordered_json{{"remove_forbidden", r.metrics.steps_remove_forbidden},
                                   {"remove_frozen", r.metrics.steps_remove_frozen},
                                   {"remove_ignored", r.metrics.steps_remove_ignored}}},
                     {"random_bits", r.metrics.random_bits},
                     {"wall_ms", r.metrics.wall_ms}};
      if (r.metrics.min_recolor_d) m["min_recolor_d"] = *r.metrics.min_recolor_d;
      if (!r.metrics.potential_trace.empty()) {
        ordered_json trace = ordered_json::array();
        for (const auto& [step, phi] : r.metrics.potential_trace) {
          trace.push_back(ordered_json::array({step, phi.str()}));
        }
        m["potential_trace"] = std::move(trace);
      }
      s["metrics"] = std::move(m);
      doc["samples"].push_back(std::move(s));
    }
    out << doc.dump(2) << "\n";
  } else {
    out << "c graph nodes=" << g.node_count() << " edges=" << g.edge_count()
        << " max_degree=" << g.max_degree() << " colors=" << o.colors << " seed=" << o.seed()
        << "\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      out << "s " << i << " " << (r.status == SampleStatus::Ok ? "ok" : "budget_exceeded")
          << " steps=" << r.metrics.total_steps << " bits=" << r.metrics.random_bits
          << " wall_ms=" << fmt(r.metrics.wall_ms) << "\n";
      if (r.status == SampleStatus::Ok) {
        for (int v = 0; v < g.node_count(); ++v) {
          out << (v + 1) << " " << r.coloring.color[v] << "\n";
        }
      }
    }
  }
  return any_budget ? 2 : 0;
}

int cmd_enumerate(const CommonOpts& o, std::ostream& out, std::ostream&) {
  const Graph g = load_graph(o);
  const auto support = enumerate_members(IndexState::all_unrestricted(g.node_count()), g,
                                         o.colors, o.enum_cap);
  if (o.format == "csv") {
    throw CLI::ValidationError("--format", "csv is not available for enumerate output");
  }
  if (o.format == "json") {
    ordered_json doc{{"schema_version", kSchemaVersion},
                     {"command", "enumerate"},
                     {"graph", graph_json(g)},
                     {"colors", o.colors},
                     {"count", support.size()},
                     {"colorings", ordered_json::array()}};
    for (const auto& c : support) doc["colorings"].push_back(c.color);
    out << doc.dump(2) << "\n";
  } else {
    out << "count " << support.size() << "\n";
    for (const auto& c : support) {
      for (std::size_t v = 0; v < c.color.size(); ++v) {
        out << (v ? " " : "") << c.color[v];
      }
      out << "\n";
    }
  }
  return 0;
}

int cmd_verify(const CommonOpts& o, int samples, std::ostream& out, std::ostream& err) {
  const Graph g = load_graph(o);
  warn_when_unguaranteed(g, o.colors, err);
  BatchOptions bo;
  bo.step_cap = o.step_cap;
  bo.threads = o.threads;
  const UniformityReport rep =
      uniformity_test(g, o.colors, samples, o.seed(), 1e-3, o.enum_cap, bo);
  if (o.format == "json") {
    ordered_json doc{{"schema_version", kSchemaVersion},
                     {"command", "verify"},
                     {"graph", graph_json(g)},
                     {"colors", o.colors},
                     {"seed", o.seed()},
                     {"samples", rep.num_samples},
                     {"support_size", rep.support_size},
                     {"chi_square", chi_json(rep.chi)},
                     {"p_threshold", rep.p_threshold},
                     {"pass", rep.pass}};
    out << doc.dump(2) << "\n";
  } else if (o.format == "csv") {
    out << "support,samples,statistic,df,p_value,pass\n";
    out << rep.support_size << "," << rep.num_samples << "," << fmt(rep.chi.statistic) << ","
        << rep.chi.df << "," << fmt(rep.chi.p_value) << "," << (rep.pass ? 1 : 0) << "\n";
  } else {
    out << "support size      " << rep.support_size << "\n";
    out << "samples           " << rep.num_samples << "\n";
    out << "chi-square        " << fmt(rep.chi.statistic) << " (df " << rep.chi.df << ")\n";
    out << "p-value           " << fmt(rep.chi.p_value) << "\n";
    out << "uniformity        " << (rep.pass ? "PASS" : "FAIL") << " (p > "
        << fmt(rep.p_threshold) << ")\n";
  }
  return 0;
}

int cmd_drift(const CommonOpts& o, int reps, std::ostream& out, std::ostream& err) {
  const Graph g = load_graph(o);
  warn_when_unguaranteed(g, o.colors, err);
  const DriftReport rep = drift_experiment(g, o.colors, reps, o.seed());
  const char* kind_names[3] = {"remove_forbidden", "remove_frozen", "remove_ignored"};
  if (o.format == "json") {
    ordered_json doc{{"schema_version", kSchemaVersion},
                     {"command", "drift"},
                     {"graph", graph_json(g)},
                     {"colors", o.colors},
                     {"seed", o.seed()},
                     {"runs", rep.runs},
                     {"params",
                      ordered_json{{"k", rep.params.k},
                                   {"delta", rep.params.delta},
                                   {"alpha", rep.params.alpha.str()},
                                   {"epsilon", rep.params.epsilon.str()},
                                   {"w1", rep.params.w1.str()},
                                   {"w2", rep.params.w2.str()}}},
                     {"overall",
                      ordered_json{{"steps", rep.overall.steps},
                                   {"mean_dphi", rep.overall.mean},
                                   {"stderr", rep.overall.stderr_mean}}},
                     {"by_kind", ordered_json::object()},
                     {"overall_within_bound", rep.overall_within_bound},
                     {"per_kind_within_bound", rep.per_kind_within_bound},
                     {"pass", rep.overall_within_bound && rep.per_kind_within_bound}};
    for (int i = 0; i < 3; ++i) {
      doc["by_kind"][kind_names[i]] = ordered_json{{"steps", rep.by_kind[i].steps},
                                                   {"mean_dphi", rep.by_kind[i].mean},
                                                   {"stderr", rep.by_kind[i].stderr_mean}};
    }
    out << doc.dump(2) << "\n";
  } else if (o.format == "csv") {
    out << "kind,steps,mean_dphi,stderr\n";
    out << "overall," << rep.overall.steps << "," << fmt(rep.overall.mean) << ","
        << fmt(rep.overall.stderr_mean) << "\n";
    for (int i = 0; i < 3; ++i) {
      out << kind_names[i] << "," << rep.by_kind[i].steps << "," << fmt(rep.by_kind[i].mean)
          << "," << fmt(rep.by_kind[i].stderr_mean) << "\n";
    }
  } else {
    out << "epsilon           " << rep.params.epsilon.str() << " (w1 " << rep.params.w1.str()
        << ", w2 " << rep.params.w2.str() << ")\n";
    out << "runs              " << rep.runs << "\n";
    out << "steps             " << rep.overall.steps << "\n";
    out << "mean dphi         " << fmt(rep.overall.mean) << " +- " << fmt(rep.overall.stderr_mean)
        << "\n";
    for (int i = 0; i < 3; ++i) {
      out << kind_names[i] << (std::string(18 - std::string(kind_names[i]).size(), ' '))
          << fmt(rep.by_kind[i].mean) << " over " << rep.by_kind[i].steps << " steps\n";
    }
    out << "drift bound       " << (rep.overall_within_bound ? "PASS" : "FAIL")
        << " (mean <= -epsilon + 3*stderr)\n";
  }
  return 0;
}

int cmd_bench(const CommonOpts& o, const std::string& family, const std::string& sizes_text,
              int reps, std::ostream& out, std::ostream&) {
  std::vector<int> sizes;
  std::stringstream ss(sizes_text);
  std::string part;
  while (std::getline(ss, part, ',')) sizes.push_back(std::stoi(part));
  BatchOptions bo;
  bo.step_cap = o.step_cap;
  bo.threads = o.threads;
  const BenchReport rep = scaling_bench(family, sizes, o.colors, reps, o.seed(), bo);
  if (o.format == "json") {
    ordered_json doc{{"schema_version", kSchemaVersion},
                     {"command", "bench"},
                     {"family", family},
                     {"colors", o.colors},
                     {"seed", o.seed()},
                     {"reps", reps},
                     {"rows", ordered_json::array()},
                     {"trend_ok", rep.trend_ok},
                     {"all_bounds_ok", rep.all_bounds_ok}};
    for (const auto& r : rep.rows) {
      doc["rows"].push_back(ordered_json{{"family", r.family},
                                         {"n", r.n},
                                         {"k", r.k},
                                         {"delta", r.delta},
                                         {"epsilon", r.epsilon.str()},
                                         {"mean_steps", r.mean_steps},
                                         {"steps_per_node", r.steps_per_node},
                                         {"mean_bits_per_step", r.mean_bits_per_step},
                                         {"wall_ms", r.wall_ms},
                                         {"steps_bound_ok", r.steps_bound_ok},
                                         {"bits_bound_ok", r.bits_bound_ok}});
    }
    out << doc.dump(2) << "\n";
  } else if (o.format == "csv") {
    out << "family,n,k,delta,epsilon,mean_steps,steps_per_node,mean_bits_per_step,wall_ms\n";
    for (const auto& r : rep.rows) {
      out << r.family << "," << r.n << "," << r.k << "," << r.delta << "," << r.epsilon.str()
          << "," << fmt(r.mean_steps) << "," << fmt(r.steps_per_node) << ","
          << fmt(r.mean_bits_per_step) << "," << fmt(r.wall_ms) << "\n";
    }
  } else {
    out << "family " << family << ", k = " << o.colors << ", reps = " << reps << "\n";
    for (const auto& r : rep.rows) {
      out << "n " << r.n << ": steps/node " << fmt(r.steps_per_node) << ", bits/step "
          << fmt(r.mean_bits_per_step) << ", wall_ms " << fmt(r.wall_ms) << ", bound "
          << (r.steps_bound_ok ? "ok" : "EXCEEDED") << "\n";
    }
    out << "trend " << (rep.trend_ok ? "flat" : "INCREASING") << "\n";
  }
  return 0;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact uniform sampler for proper k-colorings (randomness recycler)"};
  app.require_subcommand(1);

  CommonOpts sample_o, enum_o, verify_o, drift_o, bench_o;
  int samples = 1, verify_samples = 60'000, drift_reps = 1'000, bench_reps = 5;
  bool trace_potential = false;
  std::string bench_family = "cycle", bench_sizes = "64,256,1024";

  auto* sample = app.add_subcommand("sample", "Draw exactly uniform proper colorings");
  add_common(sample, sample_o, false);
  sample->add_option("--samples", samples, "Number of independent samples")
      ->default_val(1)
      ->check(CLI::PositiveNumber);
  sample->add_flag("--trace-potential", trace_potential,
                   "Record the exact potential after every step");

  auto* enumerate = app.add_subcommand("enumerate", "List all proper colorings (desk scale)");
  add_common(enumerate, enum_o, true);

  auto* verify = app.add_subcommand("verify", "Chi-square uniformity against enumeration");
  add_common(verify, verify_o, true);
  verify->add_option("--samples", verify_samples, "Number of samples")
      ->default_val(60'000)
      ->check(CLI::PositiveNumber);

  auto* drift = app.add_subcommand("drift", "Measure per-step potential drift");
  add_common(drift, drift_o, false);
  drift->add_option("--reps", drift_reps, "Number of instrumented runs")
      ->default_val(1'000)
      ->check(CLI::PositiveNumber);

  auto* bench = app.add_subcommand("bench", "Scaling benchmark across graph sizes");
  add_common(bench, bench_o, false, /*with_graph_source=*/false);
  bench->add_option("--family", bench_family,
                    "cycle | path | complete | random_regular:<degree>")
      ->default_val(std::string("cycle"));
  bench->add_option("--sizes", bench_sizes, "Comma-separated node counts")
      ->default_val(std::string("64,256,1024"));
  bench->add_option("--reps", bench_reps, "Samples per size")
      ->default_val(5)
      ->check(CLI::NonNegativeNumber);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;  // --help and friends stay 0, everything else is usage
  }

  try {
    if (sample->parsed()) return cmd_sample(sample_o, samples, trace_potential, out, err);
    if (enumerate->parsed()) return cmd_enumerate(enum_o, out, err);
    if (verify->parsed()) return cmd_verify(verify_o, verify_samples, out, err);
    if (drift->parsed()) return cmd_drift(drift_o, drift_reps, out, err);
    if (bench->parsed()) return cmd_bench(bench_o, bench_family, bench_sizes, bench_reps, out, err);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace rrcolor::cli
