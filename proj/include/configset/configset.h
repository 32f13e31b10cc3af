#ifndef CONFIGSET_CONFIGSET_H
#define CONFIGSET_CONFIGSET_H

#include <stddef.h>

#if defined(_WIN32)
#define CONFIGSET_API __declspec(dllexport)
#else
#define CONFIGSET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct configset_spec configset_spec;
typedef struct configset_report configset_report;

typedef enum configset_status {
  CONFIGSET_OK = 0,
  CONFIGSET_E_SYNTAX = 1,
  CONFIGSET_E_SEMANTIC = 2,
  CONFIGSET_E_KIND_MISMATCH = 3,
  CONFIGSET_E_INDEX = 4,
  CONFIGSET_E_RESOURCE = 5,
  CONFIGSET_E_SHAPE = 6,
  CONFIGSET_E_PRECONDITION = 7,
  CONFIGSET_E_SEARCH_CAP = 8,
  CONFIGSET_E_SYNTHESIS = 9,
  CONFIGSET_E_IO = 10,
  CONFIGSET_E_ARGUMENT = 11,
  CONFIGSET_E_INTERNAL = 12
} configset_status;

typedef enum configset_mode {
  CONFIGSET_MODE_SPEC = 0, /* keep the spec's mode */
  CONFIGSET_MODE_ONE_SIDED = 1,
  CONFIGSET_MODE_TWO_SIDED = 2,
  CONFIGSET_MODE_SEMIGROUP_LEFT = 3
} configset_mode;

typedef enum configset_pi_convention {
  CONFIGSET_PI_COMPOSE = 0,
  CONFIGSET_PI_ONE_LINE = 1
} configset_pi_convention;

typedef struct configset_options {
  /* 0 keeps the spec value (or the default). */
  size_t radius;
  size_t verify_radius;
  configset_mode mode;
  /* Ball element cap; 0 means the library default. */
  size_t cap;
  configset_pi_convention pi_convention;
  /* Comma- or space-separated analyses replacing the spec's list; NULL keeps it. */
  const char* analyses;
} configset_options;

CONFIGSET_API const char* configset_version(void);
CONFIGSET_API const char* configset_status_name(configset_status status);

/* Message of the last failing call on this thread ("" when none). */
CONFIGSET_API const char* configset_last_error(void);

CONFIGSET_API void configset_options_init(configset_options* options);

CONFIGSET_API configset_status configset_spec_parse(const char* text, configset_spec** out);
CONFIGSET_API configset_status configset_spec_load(const char* path, configset_spec** out);
CONFIGSET_API void configset_spec_free(configset_spec* spec);

CONFIGSET_API configset_status configset_run(const configset_spec* spec, const configset_options* options,
                                             configset_report** out);
CONFIGSET_API configset_status configset_compare(const configset_spec* a, const configset_spec* b,
                                                 const configset_options* options, configset_report** out);
CONFIGSET_API void configset_report_free(configset_report* report);

/* Strings returned through char** are owned by the caller; release them with
   configset_string_free. include_timing = 0 gives the canonical body only. */
CONFIGSET_API configset_status configset_report_json(const configset_report* report, int include_timing,
                                                     int indent, char** out);
CONFIGSET_API configset_status configset_report_text(const configset_report* report, char** out);

/* l + l^(2l) in decimal. */
CONFIGSET_API configset_status configset_tarski_bound(size_t l, char** out);

CONFIGSET_API void configset_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif
