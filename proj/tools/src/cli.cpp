#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "tgreg/errors.hpp"
#include "tgreg/io_formats.hpp"
#include "tgreg_cli/commands.hpp"

namespace tgreg::cli {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truncated-gradient iterative regularization for image deblurring"};
  app.require_subcommand(1);

  std::string config_path;
  OutputOptions out_opts;
  SelftestOptions self_opts;
  std::map<std::string, std::string> overrides;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "key = value configuration file");
    sub->add_flag("--json-summary", out_opts.json_summary, "emit one JSON summary object per run");
    for (const auto& key : config_keys())
      sub->add_option("--" + key, overrides[key], "overrides config key '" + key + "'");
  };
  auto* deblur = app.add_subcommand("deblur", "single deblurring run");
  auto* compare = app.add_subcommand("compare", "method x rule x constraint comparison table");
  auto* mdp = app.add_subcommand("mdp", "modified discrepancy principle snapshot table");
  auto* selftest = app.add_subcommand("selftest", "operator, truncation and solver self checks");
  add_common(deblur);
  add_common(compare);
  add_common(mdp);
  selftest->add_flag("--inject-adjoint-fault", self_opts.inject_adjoint_fault,
                     "test hook: corrupt one adjoint so the check must fail");

  // CLI11 expects argv order: program name first, reversed vector for parse().
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (selftest->parsed()) return cmd_selftest(self_opts, out);

    std::vector<std::string> warnings;
    RunConfig cfg = config_path.empty() ? RunConfig{} : parse_config(read_text_file(config_path), &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    for (const auto& [key, value] : overrides)
      if (!value.empty()) set_config_value(cfg, key, value);
    validate_config(cfg);

    if (deblur->parsed()) return cmd_deblur(cfg, out_opts, out);
    if (compare->parsed()) return cmd_compare(cfg, out_opts, out);
    return cmd_mdp(cfg, out_opts, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidInput& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  }
}

}  // namespace tgreg::cli
