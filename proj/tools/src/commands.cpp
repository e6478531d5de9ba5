#include <algorithm>
#include <atomic>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include <nlohmann/json.hpp>

#include "tgreg/errors.hpp"
#include "tgreg/io_formats.hpp"
#include "tgreg_cli/commands.hpp"

namespace tgreg::cli {
namespace {

using nlohmann::json;

RunOptions base_options(const RunConfig& cfg, const DeblurProblem& problem) {
  RunOptions opts;
  opts.constraint = BoundConstraint{cfg.xmin};
  opts.stopping = make_stopping(cfg, problem.delta);
  opts.truth = problem.truth.pixels;
  opts.sparsity_tol = cfg.sparsity_tol;
  return opts;
}

ImageGrid as_image(const DeblurProblem& problem, const Vector& x) {
  return ImageGrid{problem.truth.rows, problem.truth.cols, x};
}

std::string rule_kind(const TruncationRule& rule) {
  const std::string d = describe(rule);
  return d.substr(0, d.find('('));
}

std::string rule_param(const TruncationRule& rule) {
  const std::string d = describe(rule);
  const auto open = d.find('(');
  if (open == std::string::npos) return "";
  std::string p = d.substr(open + 1, d.size() - open - 2);
  std::replace(p.begin(), p.end(), ',', ';');
  return p;
}

json summary_json(const std::string& command, const std::string& method,
                  const TruncationRule& rule, const RunReport& rep) {
  const auto& last = rep.history.back();
  json j{{"command", command},
         {"method", method},
         {"rule", describe(rule)},
         {"iterations", rep.iterations},
         {"stop_reason", to_string(rep.stop_reason)},
         {"sparsity", last.sparsity},
         {"rel_residual_pct", last.rel_residual_pct}};
  if (last.rel_error) j["rel_error"] = *last.rel_error;
  return j;
}

std::string summary_line(const std::string& method, const TruncationRule& rule,
                         const RunReport& rep) {
  const auto& last = rep.history.back();
  std::ostringstream os;
  os << "method=" << method << " rule=" << describe(rule)
     << " rel_error=" << (last.rel_error ? format_number(*last.rel_error) : "n/a")
     << " sparsity=" << last.sparsity << " iterations=" << rep.iterations
     << " rel_residual_pct=" << format_number(last.rel_residual_pct)
     << " stop_reason=" << to_string(rep.stop_reason);
  return os.str();
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

}  // namespace

int cmd_deblur(const RunConfig& cfg, const OutputOptions& out_opts, std::ostream& out) {
  const DeblurProblem problem = make_deblur_problem(problem_spec(cfg));
  const TruncationRule rule = make_rule(cfg, problem.op.dim_in());
  const RunReport rep = run_method(cfg.method, problem, rule, cfg, base_options(cfg, problem));

  if (!cfg.out_image.empty()) write_pgm(as_image(problem, rep.final_x), cfg.out_image);
  if (!cfg.out_csv.empty()) write_history_csv(rep, cfg.out_csv);
  if (out_opts.json_summary) {
    out << summary_json("deblur", cfg.method, rule, rep).dump() << '\n';
  } else {
    out << summary_line(cfg.method, rule, rep) << '\n';
  }
  return kOk;
}

std::string compare_csv(const RunConfig& cfg) {
  const DeblurProblem problem = make_deblur_problem(problem_spec(cfg));
  const std::size_t n = problem.op.dim_in();

  struct Cell {
    std::string method;
    TruncationRule rule;
    double xmin;
  };
  std::vector<Cell> cells;
  for (const auto& xmin_text : split_list(cfg.compare_constraints)) {
    RunConfig probe = cfg;
    set_config_value(probe, "xmin", xmin_text);
    for (const auto& method : split_list(cfg.compare_methods)) {
      if (method != "tg" && method != "landweber" && method != "nu" && method != "ista" &&
          method != "fista")
        throw ConfigError("compare_methods", "unknown method '" + method + "'");
      for (const auto& token : split_list(cfg.compare_rules)) {
        TruncationRule rule = parse_rule_token(token, cfg, n);
        validate(rule);
        cells.push_back({method, rule, probe.xmin});
      }
    }
  }

  // Cells run concurrently; rows are written back in grid order.
  std::vector<std::string> rows(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const Cell& c = cells[i];
        RunConfig local = cfg;
        local.xmin = c.xmin;
        const RunReport rep = run_method(c.method, problem, c.rule, local, base_options(local, problem));
        const auto& last = rep.history.back();
        std::ostringstream os;
        os << c.method << ',' << rule_kind(c.rule) << ',' << rule_param(c.rule) << ','
           << format_number(c.xmin) << ',' << (last.rel_error ? format_number(*last.rel_error) : "")
           << ',' << last.sparsity << ',' << rep.iterations << ',' << to_string(rep.stop_reason)
           << '\n';
        rows[i] = os.str();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t threads = cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, cells.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::string csv = "method,rule,param,constraint,rel_error,sparsity,iterations,stop_reason\n";
  for (const auto& r : rows) csv += r;
  return csv;
}

int cmd_compare(const RunConfig& cfg, const OutputOptions& out_opts, std::ostream& out) {
  const std::string csv = compare_csv(cfg);
  if (!cfg.out_csv.empty()) {
    write_text_file(cfg.out_csv, csv);
    const auto rows = std::count(csv.begin(), csv.end(), '\n') - 1;
    if (out_opts.json_summary) {
      out << json{{"command", "compare"}, {"rows", rows}, {"csv", cfg.out_csv}}.dump() << '\n';
    } else {
      out << "compare: wrote " << rows << " rows to " << cfg.out_csv << '\n';
    }
  } else {
    out << csv;
  }
  return kOk;
}

int cmd_mdp(const RunConfig& cfg, const OutputOptions& out_opts, std::ostream& out) {
  const DeblurProblem problem = make_deblur_problem(problem_spec(cfg));
  const TruncationRule rule = make_rule(cfg, problem.op.dim_in());
  const double delta = cfg.delta > 0.0 ? cfg.delta : problem.delta;

  RunOptions opts = base_options(cfg, problem);
  opts.stopping = Never{cfg.max_iters};
  opts.mdp = MdpConfig{cfg.delta_est > 0.0 ? cfg.delta_est : problem.delta, cfg.mdp_count,
                       cfg.mdp_spacing, cfg.mdp_eta};
  const RunReport rep = run_method(cfg.method, problem, rule, cfg, opts);
  const double b_norm = norm2(problem.b_noisy);

  struct Row {
    std::string label;
    double gamma;
    int m;
    double res;
    std::optional<double> err;
    std::size_t sparsity;
  };
  std::vector<Row> rows;
  for (const auto& s : rep.snapshots)
    rows.push_back({"mdp", s.gamma, s.m, s.rel_residual_pct, s.rel_error_pct, s.sparsity});

  // Classical discrepancy principle on the same trajectory: first m with ||r|| <= eta delta.
  std::optional<Row> dp_row;
  for (const auto& h : rep.history) {
    if (h.residual_norm <= cfg.eta * delta) {
      std::optional<double> err;
      if (h.rel_error) err = 100.0 * *h.rel_error;
      dp_row = Row{"dp", 100.0 * delta / b_norm, h.m, h.rel_residual_pct, err, h.sparsity};
      break;
    }
  }
  if (dp_row) rows.push_back(*dp_row);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.gamma > b.gamma; });

  std::ostringstream csv;
  csv << "label,gamma,m,rel_residual_pct,rel_error_pct,sparsity\n";
  for (const auto& r : rows) {
    csv << r.label << ',' << format_number(r.gamma) << ',' << r.m << ',' << format_number(r.res)
        << ',' << (r.err ? format_number(*r.err) : "") << ',' << r.sparsity << '\n';
  }

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    for (std::size_t i = 0; i < rep.snapshots.size(); ++i) {
      const auto& s = rep.snapshots[i];
      const auto name = "snapshot_" + std::to_string(i + 1) + "_gamma_" + format_number(s.gamma) + ".pgm";
      write_pgm(as_image(problem, s.x), std::filesystem::path(cfg.out_dir) / name);
    }
  }
  emit(out, cfg.out_csv, csv.str());

  const Snapshot* chosen = nullptr;
  if (cfg.select != "none" && !rep.snapshots.empty()) {
    const SelectPolicy policy = cfg.select == "base" ? SelectPolicy{SelectBase{}}
                                                     : SelectPolicy{SelectSparsestWithin{cfg.select_within}};
    chosen = &mdp_select(rep.snapshots, policy);
  }
  if (out_opts.json_summary) {
    json j{{"command", "mdp"},
           {"method", cfg.method},
           {"rule", describe(rule)},
           {"snapshots", rep.snapshots.size()},
           {"dp_m", dp_row ? json(dp_row->m) : json(nullptr)}};
    if (chosen) j["selected"] = json{{"gamma", chosen->gamma}, {"m", chosen->m}, {"sparsity", chosen->sparsity}};
    out << j.dump() << '\n';
  } else if (chosen) {
    out << "selected gamma=" << format_number(chosen->gamma) << " m=" << chosen->m
        << " sparsity=" << chosen->sparsity << '\n';
  }
  return kOk;
}

}  // namespace tgreg::cli
