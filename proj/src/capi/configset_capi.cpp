#include "configset/configset.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "configset/error.hpp"
#include "configset/report.hpp"

struct configset_spec {
  configset::ExperimentSpec spec;
};

struct configset_report {
  configset::Report report;
};

namespace {

thread_local std::string last_error;

configset_status status_of(configset::ErrorCode code) {
  using configset::ErrorCode;
  switch (code) {
    case ErrorCode::syntax_error: return CONFIGSET_E_SYNTAX;
    case ErrorCode::semantic_error: return CONFIGSET_E_SEMANTIC;
    case ErrorCode::kind_mismatch: return CONFIGSET_E_KIND_MISMATCH;
    case ErrorCode::index_out_of_range: return CONFIGSET_E_INDEX;
    case ErrorCode::resource_limit: return CONFIGSET_E_RESOURCE;
    case ErrorCode::shape_mismatch: return CONFIGSET_E_SHAPE;
    case ErrorCode::precondition_failed: return CONFIGSET_E_PRECONDITION;
    case ErrorCode::search_cap_exceeded: return CONFIGSET_E_SEARCH_CAP;
    case ErrorCode::synthesis_failed: return CONFIGSET_E_SYNTHESIS;
    case ErrorCode::io_error: return CONFIGSET_E_IO;
  }
  return CONFIGSET_E_INTERNAL;
}

template <typename F>
configset_status guard(F&& body) {
  try {
    last_error.clear();
    body();
    return CONFIGSET_OK;
  } catch (const configset::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CONFIGSET_E_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CONFIGSET_E_INTERNAL;
  }
}

configset_status bad_argument(const char* message) {
  last_error = message;
  return CONFIGSET_E_ARGUMENT;
}

char* duplicate(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

configset::RunOptions to_run_options(const configset_options* options) {
  configset::RunOptions out;
  if (!options) return out;
  if (options->radius) out.radius = options->radius;
  if (options->verify_radius) out.verify_radius = options->verify_radius;
  switch (options->mode) {
    case CONFIGSET_MODE_SPEC: break;
    case CONFIGSET_MODE_ONE_SIDED: out.mode = configset::Mode::one_sided; break;
    case CONFIGSET_MODE_TWO_SIDED: out.mode = configset::Mode::two_sided; break;
    case CONFIGSET_MODE_SEMIGROUP_LEFT: out.mode = configset::Mode::semigroup_left; break;
    default: throw configset::Error(configset::ErrorCode::syntax_error, "unknown mode value");
  }
  if (options->cap) out.cap = options->cap;
  out.pi_convention =
      options->pi_convention == CONFIGSET_PI_ONE_LINE ? configset::PiConvention::one_line : configset::PiConvention::compose;
  if (options->analyses) {
    std::string text(options->analyses);
    for (auto& c : text)
      if (c == ',') c = ' ';
    std::istringstream in(text);
    std::set<configset::Analysis> analyses;
    for (std::string word; in >> word;) {
      auto a = configset::parse_analysis(word);
      if (!a) throw configset::Error(configset::ErrorCode::syntax_error, "unknown analysis '" + word + "'");
      analyses.insert(*a);
    }
    out.analyses = std::move(analyses);
  }
  return out;
}

}  // namespace

extern "C" {

const char* configset_version(void) { return "1.0.0"; }

const char* configset_status_name(configset_status status) {
  switch (status) {
    case CONFIGSET_OK: return "ok";
    case CONFIGSET_E_SYNTAX: return "syntax_error";
    case CONFIGSET_E_SEMANTIC: return "semantic_error";
    case CONFIGSET_E_KIND_MISMATCH: return "kind_mismatch";
    case CONFIGSET_E_INDEX: return "index_out_of_range";
    case CONFIGSET_E_RESOURCE: return "resource_limit";
    case CONFIGSET_E_SHAPE: return "shape_mismatch";
    case CONFIGSET_E_PRECONDITION: return "precondition_failed";
    case CONFIGSET_E_SEARCH_CAP: return "search_cap_exceeded";
    case CONFIGSET_E_SYNTHESIS: return "synthesis_failed";
    case CONFIGSET_E_IO: return "io_error";
    case CONFIGSET_E_ARGUMENT: return "invalid_argument";
    case CONFIGSET_E_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* configset_last_error(void) { return last_error.c_str(); }

void configset_options_init(configset_options* options) {
  if (!options) return;
  std::memset(options, 0, sizeof(*options));
}

configset_status configset_spec_parse(const char* text, configset_spec** out) {
  if (!text || !out) return bad_argument("null argument");
  *out = nullptr;
  return guard([&] { *out = new configset_spec{configset::parse_spec(text)}; });
}

configset_status configset_spec_load(const char* path, configset_spec** out) {
  if (!path || !out) return bad_argument("null argument");
  *out = nullptr;
  return guard([&] {
    std::ifstream in(path);
    if (!in) throw configset::Error(configset::ErrorCode::io_error, std::string("cannot open ") + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    *out = new configset_spec{configset::parse_spec(buffer.str())};
  });
}

void configset_spec_free(configset_spec* spec) { delete spec; }

configset_status configset_run(const configset_spec* spec, const configset_options* options, configset_report** out) {
  if (!spec || !out) return bad_argument("null argument");
  *out = nullptr;
  return guard([&] { *out = new configset_report{configset::run(spec->spec, to_run_options(options))}; });
}

configset_status configset_compare(const configset_spec* a, const configset_spec* b, const configset_options* options,
                                   configset_report** out) {
  if (!a || !b || !out) return bad_argument("null argument");
  *out = nullptr;
  return guard([&] {
    *out = new configset_report{configset::compare_command(a->spec, b->spec, to_run_options(options))};
  });
}

void configset_report_free(configset_report* report) { delete report; }

configset_status configset_report_json(const configset_report* report, int include_timing, int indent, char** out) {
  if (!report || !out) return bad_argument("null argument");
  *out = nullptr;
  return guard([&] {
    *out = duplicate(include_timing ? configset::full_json(report->report, indent)
                                    : configset::canonical_json(report->report, indent));
  });
}

configset_status configset_report_text(const configset_report* report, char** out) {
  if (!report || !out) return bad_argument("null argument");
  *out = nullptr;
  return guard([&] { *out = duplicate(configset::render_text(report->report)); });
}

configset_status configset_tarski_bound(size_t l, char** out) {
  if (!out) return bad_argument("null argument");
  *out = nullptr;
  return guard([&] { *out = duplicate(configset::format_integer(configset::tarski_upper_bound(l))); });
}

void configset_string_free(char* text) { delete[] text; }

}  // extern "C"
