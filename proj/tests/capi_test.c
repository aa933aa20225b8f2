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

/* Exercises the public header from plain C. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "gterms/gterms.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static const char* kSpec =
    "{\"days\": 4, \"background\": {\"count\": 200, \"p_min\": 0.02, \"p_max\": 0.2},"
    " \"planted\": {\"count\": 3, \"p_female\": 0.2, \"p_male\": 0.02}}";

int main(void) {
  gterms_corpus* corpus = NULL;
  gterms_lexicon* lexicon = NULL;
  gterms_view* view = NULL;
  gterms_result* result = NULL;
  gterms_gender g;
  char* text = NULL;
  gterms_config cfg;
  double alphas[2] = {0.05, 0.01};
  const double bad_alphas[2] = {0.01, 0.05};

  EXPECT(strlen(gterms_version()) > 0);
  EXPECT(strcmp(gterms_status_name(GTERMS_ERR_NOT_FOUND), "not found") == 0);

  EXPECT(gterms_corpus_synth_json(kSpec, 4000, 11, &corpus) == GTERMS_OK);
  EXPECT(gterms_corpus_size(corpus) > 3900);
  EXPECT(gterms_corpus_synth_json("{\"terms\":[{\"term\":\"x\",\"p_female\":3,\"p_male\":0}]}",
                                  10, 1, &corpus) == GTERMS_ERR_INVALID_ARGUMENT);
  EXPECT(strlen(gterms_last_error()) > 0);
  EXPECT(gterms_corpus_load("/nonexistent/corpus.jsonl", &corpus) == GTERMS_ERR_IO);

  EXPECT(gterms_lexicon_load(NULL, 0.9, &lexicon) == GTERMS_OK);
  EXPECT(gterms_classify(lexicon, "MikeThompson", &g) == GTERMS_OK && g == GTERMS_GENDER_MALE);
  EXPECT(gterms_classify(lexicon, "CricketFan938624", &g) == GTERMS_OK && g == GTERMS_GENDER_UNKNOWN);
  EXPECT(gterms_lexicon_load(NULL, 0.4, &lexicon) != GTERMS_OK);

  EXPECT(gterms_view_create(corpus, lexicon, 2, &view) == GTERMS_OK);

  gterms_config_default(&cfg);
  EXPECT(cfg.n_alphas == 3 && cfg.star_threshold == 7);
  cfg.alphas = bad_alphas;
  cfg.n_alphas = 2;
  EXPECT(gterms_analyze(view, &cfg, &result) == GTERMS_ERR_INVALID_ARGUMENT);
  cfg.alphas = alphas;
  EXPECT(gterms_analyze(view, &cfg, &result) == GTERMS_OK);

  EXPECT(gterms_result_export(result, GTERMS_FORMAT_CSV, &text) == GTERMS_OK);
  EXPECT(strncmp(text, "term,direction,chi2", 19) == 0);
  EXPECT(strstr(text, "pt0,female") || strstr(text, "pt1,female") || strstr(text, "pt2,female"));
  gterms_free_string(text);

  EXPECT(gterms_result_hash(result, &text) == GTERMS_OK && strlen(text) == 16);
  gterms_free_string(text);

  EXPECT(gterms_kwic(view, "pt0", 3, 1, GTERMS_FORMAT_TEXT, &text) == GTERMS_OK);
  EXPECT(strstr(text, "[pt0]") != NULL);
  gterms_free_string(text);
  EXPECT(gterms_kwic(view, NULL, 3, 1, GTERMS_FORMAT_TEXT, &text) == GTERMS_ERR_INVALID_ARGUMENT);

  EXPECT(gterms_series(view, "pt0", GTERMS_FORMAT_CSV, &text) == GTERMS_OK);
  EXPECT(strncmp(text, "date,", 5) == 0);
  gterms_free_string(text);

  EXPECT(gterms_associations(view, "pt0", 5, GTERMS_FORMAT_JSON, &text) == GTERMS_OK);
  gterms_free_string(text);

  EXPECT(gterms_daily(view, &cfg, &text) == GTERMS_OK);
  gterms_free_string(text);
  EXPECT(gterms_table_csv(view, &text) == GTERMS_OK);
  EXPECT(strncmp(text, "term,df_female,df_male", 22) == 0);
  gterms_free_string(text);

  EXPECT(gterms_corpus_summary_json(corpus, &text) == GTERMS_OK);
  gterms_free_string(text);

  gterms_free_string(NULL);
  gterms_result_free(result);
  gterms_view_free(view);
  gterms_lexicon_free(lexicon);
  gterms_corpus_free(corpus);
  gterms_corpus_free(NULL);

  if (failures) fprintf(stderr, "%d expectation(s) failed\n", failures);
  return failures ? EXIT_FAILURE : EXIT_SUCCESS;
}
