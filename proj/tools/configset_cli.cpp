#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "configset/configset.h"

namespace {

struct Common {
  std::string spec;
  std::string expr;
  std::optional<std::size_t> radius;
  std::optional<std::size_t> verify_radius;
  std::string mode;
  std::size_t cap = 0;
  std::string pi = "compose";
  bool json = false;
  bool no_timing = false;
};

int exit_code(configset_status status) {
  switch (status) {
    case CONFIGSET_OK: return 0;
    case CONFIGSET_E_RESOURCE:
    case CONFIGSET_E_SEARCH_CAP:
    case CONFIGSET_E_SYNTHESIS: return 2;
    default: return 1;
  }
}

int fail(configset_status status) {
  std::cerr << "error [" << configset_status_name(status) << "]: " << configset_last_error() << "\n";
  return exit_code(status);
}

void add_common(CLI::App* cmd, Common& c, bool with_spec) {
  if (with_spec) {
    cmd->add_option("spec", c.spec, "spec file ('-' reads standard input)");
    cmd->add_option("-e,--expr", c.expr, "inline spec text instead of a file");
  }
  cmd->add_option("--radius", c.radius, "witness radius for ball enumeration");
  cmd->add_option("--verify-radius", c.verify_radius, "ball radius for decomposition checks");
  cmd->add_option("--mode", c.mode, "one_sided | two_sided | semigroup_left")
      ->check(CLI::IsMember({"one_sided", "two_sided", "semigroup_left", "one-sided", "two-sided", "semigroup-left"}));
  cmd->add_option("--cap", c.cap, "ball element cap");
  cmd->add_option("--pi-convention", c.pi, "normal-condition permutation convention")
      ->check(CLI::IsMember({"compose", "one-line"}));
  cmd->add_flag("--json", c.json, "emit JSON");
  cmd->add_flag("--no-timing", c.no_timing, "omit the timing section from JSON output");
}

configset_status load(const std::string& path, const std::string& expr, configset_spec** out) {
  if (!expr.empty()) return configset_spec_parse(expr.c_str(), out);
  if (path.empty() || path == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    return configset_spec_parse(text.c_str(), out);
  }
  return configset_spec_load(path.c_str(), out);
}

configset_options options_of(const Common& c, const char* analyses) {
  configset_options o;
  configset_options_init(&o);
  o.radius = c.radius.value_or(0);
  o.verify_radius = c.verify_radius.value_or(0);
  if (c.mode.rfind("one", 0) == 0) o.mode = CONFIGSET_MODE_ONE_SIDED;
  if (c.mode.rfind("two", 0) == 0) o.mode = CONFIGSET_MODE_TWO_SIDED;
  if (c.mode.rfind("semigroup", 0) == 0) o.mode = CONFIGSET_MODE_SEMIGROUP_LEFT;
  o.cap = c.cap;
  o.pi_convention = c.pi == "one-line" ? CONFIGSET_PI_ONE_LINE : CONFIGSET_PI_COMPOSE;
  o.analyses = analyses;
  return o;
}

int emit(configset_report* report, const Common& c) {
  char* text = nullptr;
  configset_status st = c.json ? configset_report_json(report, c.no_timing ? 0 : 1, 2, &text)
                               : configset_report_text(report, &text);
  if (st != CONFIGSET_OK) return fail(st);
  std::fputs(text, stdout);
  if (c.json) std::fputs("\n", stdout);
  configset_string_free(text);
  return 0;
}

int run_spec(const Common& c, const char* analyses) {
  configset_spec* spec = nullptr;
  configset_status st = load(c.spec, c.expr, &spec);
  if (st != CONFIGSET_OK) return fail(st);
  configset_options o = options_of(c, analyses);
  configset_report* report = nullptr;
  st = configset_run(spec, &o, &report);
  configset_spec_free(spec);
  if (st != CONFIGSET_OK) return fail(st);
  int rc = emit(report, c);
  configset_report_free(report);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Configuration sets, equations and paradoxical decompositions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", configset_version());

  Common con, eqs, solve, paradox, run, cmp;
  add_common(app.add_subcommand("con", "enumerate configurations"), con, true);
  add_common(app.add_subcommand("eqs", "print the configuration equations"), eqs, true);
  add_common(app.add_subcommand("solve", "decide whether a normalized solution exists"), solve, true);
  add_common(app.add_subcommand("paradox", "row reduction, paradoxical condition, decomposition and bound"), paradox,
             true);
  add_common(app.add_subcommand("run", "run the analyses listed in a spec file"), run, true);

  auto* compare_cmd = app.add_subcommand("compare", "compare the configuration sets of two specs");
  std::string spec_b;
  compare_cmd->add_option("spec_a", cmp.spec, "first spec file")->required();
  compare_cmd->add_option("spec_b", spec_b, "second spec file")->required();
  add_common(compare_cmd, cmp, false);

  auto* tarski_cmd = app.add_subcommand("tarski", "print l + l^(2l)");
  std::size_t l = 0;
  bool tarski_json = false;
  tarski_cmd->add_option("l", l, "number of configurations")->required()->check(CLI::PositiveNumber);
  tarski_cmd->add_flag("--json", tarski_json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (app.got_subcommand("con")) return run_spec(con, "enumerate");
  if (app.got_subcommand("eqs")) return run_spec(eqs, "equations");
  if (app.got_subcommand("solve")) return run_spec(solve, "solve");
  if (app.got_subcommand("paradox")) return run_spec(paradox, "paradox tarski");
  if (app.got_subcommand("run")) return run_spec(run, nullptr);

  if (app.got_subcommand("compare")) {
    configset_spec* a = nullptr;
    configset_spec* b = nullptr;
    configset_status st = configset_spec_load(cmp.spec.c_str(), &a);
    if (st != CONFIGSET_OK) return fail(st);
    st = configset_spec_load(spec_b.c_str(), &b);
    if (st != CONFIGSET_OK) {
      configset_spec_free(a);
      return fail(st);
    }
    configset_options o = options_of(cmp, nullptr);
    configset_report* report = nullptr;
    st = configset_compare(a, b, &o, &report);
    configset_spec_free(a);
    configset_spec_free(b);
    if (st != CONFIGSET_OK) return fail(st);
    int rc = emit(report, cmp);
    configset_report_free(report);
    return rc;
  }

  char* bound = nullptr;
  configset_status st = configset_tarski_bound(l, &bound);
  if (st != CONFIGSET_OK) return fail(st);
  if (tarski_json) {
    std::printf("{\"l\": %zu, \"bound\": \"%s\"}\n", l, bound);
  } else {
    std::printf("%s\n", bound);
  }
  configset_string_free(bound);
  return 0;
}
