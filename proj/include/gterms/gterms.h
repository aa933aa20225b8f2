// Copyright 2026 The genderterms Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the genderterms library.
 *
 * Every fallible call returns a gterms_status. On failure the message is
 * available from gterms_last_error() on the same thread until the next call.
 * Strings returned through `char** out` parameters are owned by the caller
 * and released with gterms_free_string(). Handles are opaque; each has a
 * matching *_free function that accepts NULL.
 *
 * Corpus, lexicon, view and result handles are immutable once created and
 * may be shared between threads.
 */
#ifndef GTERMS_GTERMS_H_
#define GTERMS_GTERMS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(GTERMS_BUILDING_LIBRARY)
#define GTERMS_API __attribute__((visibility("default")))
#else
#define GTERMS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gterms_status {
  GTERMS_OK = 0,
  GTERMS_ERR_INVALID_ARGUMENT = 1,
  GTERMS_ERR_IO = 2,
  GTERMS_ERR_PARSE = 3,
  GTERMS_ERR_NOT_FOUND = 4,
  GTERMS_ERR_CONFLICT = 5,
  GTERMS_ERR_UNTESTABLE = 6,
  GTERMS_ERR_INTERNAL = 7
} gterms_status;

typedef enum gterms_gender {
  GTERMS_GENDER_UNKNOWN = 0,
  GTERMS_GENDER_FEMALE = 1,
  GTERMS_GENDER_MALE = 2
} gterms_gender;

typedef enum gterms_format {
  GTERMS_FORMAT_TEXT = 0,
  GTERMS_FORMAT_CSV = 1,
  GTERMS_FORMAT_JSON = 2
} gterms_format;

typedef struct gterms_corpus gterms_corpus;
typedef struct gterms_lexicon gterms_lexicon;
/* A corpus labelled with a lexicon and indexed for analysis. */
typedef struct gterms_view gterms_view;
typedef struct gterms_result gterms_result;
typedef struct gterms_server gterms_server;

typedef struct gterms_config {
  const double* alphas; /* strictly decreasing, 1..3 entries */
  size_t n_alphas;
  int star_threshold;
  double prefilter_critical;
  unsigned jobs; /* 0 = hardware concurrency */
} gterms_config;

GTERMS_API const char* gterms_version(void);
GTERMS_API const char* gterms_last_error(void);
GTERMS_API const char* gterms_status_name(gterms_status status);
GTERMS_API void gterms_free_string(char* s);

/* Defaults: alphas 0.05/0.01/0.001, 7 stars, critical value 3.841. */
GTERMS_API void gterms_config_default(gterms_config* config);

/* ---- corpus ---- */

/* JSONL or CSV (".csv") records filtered by a query file, deduplicated. */
GTERMS_API gterms_status gterms_corpus_ingest(const char* input_path, const char* queries_path,
                                              unsigned jobs, gterms_corpus** out);
GTERMS_API gterms_status gterms_corpus_synth(const char* spec_path, uint64_t n_posts,
                                             uint64_t seed, gterms_corpus** out);
GTERMS_API gterms_status gterms_corpus_synth_json(const char* spec_json, uint64_t n_posts,
                                                  uint64_t seed, gterms_corpus** out);
GTERMS_API gterms_status gterms_corpus_load(const char* path, gterms_corpus** out);
GTERMS_API gterms_status gterms_corpus_save(const gterms_corpus* corpus, const char* path);
GTERMS_API size_t gterms_corpus_size(const gterms_corpus* corpus);
GTERMS_API gterms_status gterms_corpus_summary_json(const gterms_corpus* corpus, char** out);
GTERMS_API void gterms_corpus_free(gterms_corpus* corpus);

/* ---- gender ---- */

/* path == NULL selects the built-in fixture lexicon. */
GTERMS_API gterms_status gterms_lexicon_load(const char* path, double threshold,
                                             gterms_lexicon** out);
GTERMS_API gterms_status gterms_classify(const gterms_lexicon* lexicon, const char* display_name,
                                         gterms_gender* out);
GTERMS_API void gterms_lexicon_free(gterms_lexicon* lexicon);

/* ---- analysis ---- */

GTERMS_API gterms_status gterms_view_create(const gterms_corpus* corpus,
                                            const gterms_lexicon* lexicon, unsigned jobs,
                                            gterms_view** out);
GTERMS_API void gterms_view_free(gterms_view* view);

/* config == NULL uses the defaults. */
GTERMS_API gterms_status gterms_analyze(const gterms_view* view, const gterms_config* config,
                                        gterms_result** out);
/* Per-day stars only, as CSV (term,stars_total,star_days,daily_included,<days>). */
GTERMS_API gterms_status gterms_daily(const gterms_view* view, const gterms_config* config,
                                      char** out);
/* term,df_female,df_male */
GTERMS_API gterms_status gterms_table_csv(const gterms_view* view, char** out);

GTERMS_API gterms_status gterms_result_load(const char* path, gterms_result** out);
GTERMS_API gterms_status gterms_result_save(const gterms_result* result, const char* path);
/* JSON: the full result document. CSV: the included-term table. */
GTERMS_API gterms_status gterms_result_export(const gterms_result* result, gterms_format format,
                                              char** out);
GTERMS_API gterms_status gterms_result_hash(const gterms_result* result, char** out);
GTERMS_API void gterms_result_free(gterms_result* result);

/* ---- exploration ---- */

/* TEXT: one bracketed line per sampled post. JSON: the sample document. */
GTERMS_API gterms_status gterms_kwic(const gterms_view* view, const char* term, size_t n,
                                     uint64_t seed, gterms_format format, char** out);
GTERMS_API gterms_status gterms_associations(const gterms_view* view, const char* term,
                                             size_t k, gterms_format format, char** out);
GTERMS_API gterms_status gterms_series(const gterms_view* view, const char* term,
                                       gterms_format format, char** out);
/* Grouped theme report (CSV or JSON) for a theme file bound to `result`. */
GTERMS_API gterms_status gterms_themes_export(const gterms_result* result,
                                              const char* themes_path, gterms_format format,
                                              char** out);

/* ---- HTTP server ---- */

/* view may be NULL (KWIC, association and series routes then return 404). */
GTERMS_API gterms_status gterms_server_create(const gterms_result* result, const gterms_view* view,
                                              const char* themes_path, const char* host, int port,
                                              const char* static_dir, gterms_server** out);
GTERMS_API gterms_status gterms_server_bind(gterms_server* server, int* port_out);
/* Blocks until gterms_server_stop() is called from another thread. */
GTERMS_API gterms_status gterms_server_run(gterms_server* server);
GTERMS_API void gterms_server_stop(gterms_server* server);
GTERMS_API void gterms_server_free(gterms_server* server);

#ifdef __cplusplus
}
#endif

#endif /* GTERMS_GTERMS_H_ */
