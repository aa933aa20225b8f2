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

#include "gterms/gterms.h"

#include <cstring>
#include <memory>
#include <sstream>
#include <string>

#include <json.hpp>

#include "analysis.hpp"
#include "csv.hpp"
#include "corpus.hpp"
#include "error.hpp"
#include "explore.hpp"
#include "gender.hpp"
#include "server.hpp"
#include "synth.hpp"

struct gterms_corpus {
  gterms::Corpus corpus;
};

struct gterms_lexicon {
  gterms::NameLexicon lexicon;
  std::string source;
};

struct gterms_view {
  std::shared_ptr<const gterms::CorpusView> view;
  double lexicon_threshold;
  std::string lexicon_source;
};

struct gterms_result {
  gterms::AnalysisResult result;
};

struct gterms_server {
  std::unique_ptr<gterms::ApiServer> server;
};

namespace {

thread_local std::string g_last_error;

gterms_status to_status(gterms::ErrorCode code) {
  using gterms::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return GTERMS_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIo: return GTERMS_ERR_IO;
    case ErrorCode::kParse: return GTERMS_ERR_PARSE;
    case ErrorCode::kNotFound: return GTERMS_ERR_NOT_FOUND;
    case ErrorCode::kConflict: return GTERMS_ERR_CONFLICT;
    case ErrorCode::kUntestable: return GTERMS_ERR_UNTESTABLE;
    case ErrorCode::kInternal: break;
  }
  return GTERMS_ERR_INTERNAL;
}

template <typename Fn>
gterms_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return GTERMS_OK;
  } catch (const gterms::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return GTERMS_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return GTERMS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GTERMS_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw gterms::Error(gterms::ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

gterms::AnalysisConfig make_config(const gterms_view* view, const gterms_config* c) {
  gterms::AnalysisConfig config;
  if (c) {
    require(c->alphas != nullptr || c->n_alphas == 0, "config alphas is NULL");
    config.alphas.assign(c->alphas, c->alphas + c->n_alphas);
    config.star_threshold = c->star_threshold;
    config.prefilter_critical = c->prefilter_critical;
    config.jobs = c->jobs;
  }
  config.lexicon_threshold = view->lexicon_threshold;
  config.lexicon_source = view->lexicon_source;
  config.validate();
  return config;
}

}  // namespace

extern "C" {

const char* gterms_version(void) { return "0.1.0"; }

const char* gterms_last_error(void) { return g_last_error.c_str(); }

const char* gterms_status_name(gterms_status status) {
  switch (status) {
    case GTERMS_OK: return "ok";
    case GTERMS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GTERMS_ERR_IO: return "i/o error";
    case GTERMS_ERR_PARSE: return "parse error";
    case GTERMS_ERR_NOT_FOUND: return "not found";
    case GTERMS_ERR_CONFLICT: return "conflict";
    case GTERMS_ERR_UNTESTABLE: return "untestable";
    case GTERMS_ERR_INTERNAL: break;
  }
  return "internal error";
}

void gterms_free_string(char* s) { std::free(s); }

void gterms_config_default(gterms_config* config) {
  static const double kAlphas[] = {0.05, 0.01, 0.001};
  if (!config) return;
  config->alphas = kAlphas;
  config->n_alphas = 3;
  config->star_threshold = 7;
  config->prefilter_critical = gterms::stats::kCritical05;
  config->jobs = 0;
}

gterms_status gterms_corpus_ingest(const char* input_path, const char* queries_path,
                                   unsigned jobs, gterms_corpus** out) {
  return guarded([&] {
    require(input_path && queries_path && out, "null argument");
    auto queries = gterms::QuerySet::from_file(queries_path);
    auto c = std::make_unique<gterms_corpus>();
    c->corpus = gterms::ingest(gterms::read_records(input_path), queries, jobs);
    *out = c.release();
  });
}

gterms_status gterms_corpus_synth(const char* spec_path, uint64_t n_posts, uint64_t seed,
                                  gterms_corpus** out) {
  return guarded([&] {
    require(spec_path && out, "null argument");
    auto c = std::make_unique<gterms_corpus>();
    c->corpus = gterms::synth(gterms::SynthSpec::from_file(spec_path), n_posts, seed);
    *out = c.release();
  });
}

gterms_status gterms_corpus_synth_json(const char* spec_json, uint64_t n_posts, uint64_t seed,
                                       gterms_corpus** out) {
  return guarded([&] {
    require(spec_json && out, "null argument");
    auto j = nlohmann::json::parse(spec_json);
    auto c = std::make_unique<gterms_corpus>();
    c->corpus = gterms::synth(gterms::SynthSpec::from_json(j), n_posts, seed);
    *out = c.release();
  });
}

gterms_status gterms_corpus_load(const char* path, gterms_corpus** out) {
  return guarded([&] {
    require(path && out, "null argument");
    auto c = std::make_unique<gterms_corpus>();
    c->corpus = gterms::load_corpus(path);
    *out = c.release();
  });
}

gterms_status gterms_corpus_save(const gterms_corpus* corpus, const char* path) {
  return guarded([&] {
    require(corpus && path, "null argument");
    gterms::save_corpus(corpus->corpus, path);
  });
}

size_t gterms_corpus_size(const gterms_corpus* corpus) {
  return corpus ? corpus->corpus.posts.size() : 0;
}

gterms_status gterms_corpus_summary_json(const gterms_corpus* corpus, char** out) {
  return guarded([&] {
    require(corpus && out, "null argument");
    const auto& c = corpus->corpus;
    const auto& p = c.provenance;
    nlohmann::ordered_json j{{"posts", c.posts.size()},
                             {"source", p.source},
                             {"records_read", p.records_read},
                             {"malformed", p.malformed},
                             {"unmatched", p.unmatched},
                             {"duplicate_ids", p.duplicate_ids},
                             {"exact_duplicates", p.exact_duplicates},
                             {"near_duplicates", p.near_duplicates}};
    if (c.date_range) {
      j["date_range"] = {gterms::format_day(c.date_range->first),
                         gterms::format_day(c.date_range->last)};
    } else {
      j["date_range"] = nullptr;
    }
    *out = dup_string(j.dump());
  });
}

void gterms_corpus_free(gterms_corpus* corpus) { delete corpus; }

gterms_status gterms_lexicon_load(const char* path, double threshold, gterms_lexicon** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    if (path) {
      *out = new gterms_lexicon{gterms::NameLexicon::from_file(path, threshold), path};
    } else {
      *out = new gterms_lexicon{gterms::NameLexicon::builtin(threshold), "builtin"};
    }
  });
}

gterms_status gterms_classify(const gterms_lexicon* lexicon, const char* display_name,
                              gterms_gender* out) {
  return guarded([&] {
    require(lexicon && display_name && out, "null argument");
    *out = static_cast<gterms_gender>(gterms::classify(display_name, lexicon->lexicon));
  });
}

void gterms_lexicon_free(gterms_lexicon* lexicon) { delete lexicon; }

gterms_status gterms_view_create(const gterms_corpus* corpus, const gterms_lexicon* lexicon,
                                 unsigned jobs, gterms_view** out) {
  return guarded([&] {
    require(corpus && lexicon && out, "null argument");
    gterms::Corpus labelled = corpus->corpus;
    gterms::assign_genders(labelled, lexicon->lexicon, jobs);
    auto v = std::make_unique<gterms_view>();
    v->view = std::make_shared<const gterms::CorpusView>(std::move(labelled), jobs);
    v->lexicon_threshold = lexicon->lexicon.threshold();
    v->lexicon_source = lexicon->source;
    *out = v.release();
  });
}

void gterms_view_free(gterms_view* view) { delete view; }

gterms_status gterms_analyze(const gterms_view* view, const gterms_config* config,
                             gterms_result** out) {
  return guarded([&] {
    require(view && out, "null argument");
    auto r = std::make_unique<gterms_result>();
    r->result = gterms::analyze(*view->view, make_config(view, config));
    *out = r.release();
  });
}

gterms_status gterms_daily(const gterms_view* view, const gterms_config* config, char** out) {
  return guarded([&] {
    require(view && out, "null argument");
    const auto cfg = make_config(view, config);
    const auto daily = gterms::analyze_daily(*view->view, cfg);
    std::ostringstream os;
    os << "term,stars_total,star_days,daily_included";
    for (const auto& d : daily.days) os << ',' << gterms::format_day(d.day);
    os << '\n';
    for (const auto& [term, rec] : daily.records) {
      os << gterms::csv::escape(term) << ',' << rec.star_total << ',' << rec.days << ','
         << (rec.star_total >= cfg.star_threshold ? "true" : "false");
      for (int s : rec.stars_by_day) os << ',' << s;
      os << '\n';
    }
    *out = dup_string(os.str());
  });
}

gterms_status gterms_table_csv(const gterms_view* view, char** out) {
  return guarded([&] {
    require(view && out, "null argument");
    const auto& v = *view->view;
    std::ostringstream os;
    os << "term,df_female,df_male\n";
    for (gterms::TermId id = 0; id < v.vocab().size(); ++id) {
      const auto f = v.table().df_female[id];
      const auto m = v.table().df_male[id];
      if (f == 0 && m == 0) continue;
      os << gterms::csv::escape(v.vocab().term(id)) << ',' << f << ',' << m << '\n';
    }
    *out = dup_string(os.str());
  });
}

gterms_status gterms_result_load(const char* path, gterms_result** out) {
  return guarded([&] {
    require(path && out, "null argument");
    auto r = std::make_unique<gterms_result>();
    r->result = gterms::load_result(path);
    *out = r.release();
  });
}

gterms_status gterms_result_save(const gterms_result* result, const char* path) {
  return guarded([&] {
    require(result && path, "null argument");
    gterms::save_result(result->result, path);
  });
}

gterms_status gterms_result_export(const gterms_result* result, gterms_format format,
                                   char** out) {
  return guarded([&] {
    require(result && out, "null argument");
    std::ostringstream os;
    switch (format) {
      case GTERMS_FORMAT_JSON: os << gterms::serialize_result(result->result); break;
      case GTERMS_FORMAT_CSV: gterms::write_terms_csv(result->result, os); break;
      default: require(false, "result export supports csv or json");
    }
    *out = dup_string(os.str());
  });
}

gterms_status gterms_result_hash(const gterms_result* result, char** out) {
  return guarded([&] {
    require(result && out, "null argument");
    *out = dup_string(result->result.content_hash);
  });
}

void gterms_result_free(gterms_result* result) { delete result; }

gterms_status gterms_kwic(const gterms_view* view, const char* term, size_t n, uint64_t seed,
                          gterms_format format, char** out) {
  return guarded([&] {
    require(view && term && out, "null argument");
    const auto sample = gterms::kwic(*view->view, term, n, seed);
    std::ostringstream os;
    if (format == GTERMS_FORMAT_JSON) {
      os << gterms::kwic_to_json(sample).dump(1) << '\n';
    } else {
      gterms::write_kwic_text(sample, os);
    }
    *out = dup_string(os.str());
  });
}

gterms_status gterms_associations(const gterms_view* view, const char* term, size_t k,
                                  gterms_format format, char** out) {
  return guarded([&] {
    require(view && term && out, "null argument");
    const std::string t = gterms::unicode::lower(term);
    const auto ranked = gterms::top_associations(*view->view, t, k);
    std::ostringstream os;
    if (format == GTERMS_FORMAT_JSON) {
      nlohmann::ordered_json items = nlohmann::ordered_json::array();
      for (const auto& a : ranked) {
        items.push_back({{"word", a.word},
                         {"chi2", a.chi2},
                         {"direction", gterms::direction_name(a.direction)},
                         {"co_occurrences", a.co_occurrences},
                         {"document_frequency", a.document_frequency}});
      }
      os << nlohmann::ordered_json{{"term", t}, {"k", k}, {"associations", items}}.dump(1) << '\n';
    } else {
      os.precision(10);
      os << "word,chi2,direction,co_occurrences,document_frequency\n";
      for (const auto& a : ranked) {
        os << gterms::csv::escape(a.word) << ',' << a.chi2 << ',' << gterms::direction_name(a.direction)
           << ',' << a.co_occurrences << ',' << a.document_frequency << '\n';
      }
    }
    *out = dup_string(os.str());
  });
}

gterms_status gterms_series(const gterms_view* view, const char* term, gterms_format format,
                            char** out) {
  return guarded([&] {
    require(view && term && out, "null argument");
    const std::string t = gterms::unicode::lower(term);
    const auto series = gterms::time_series(*view->view, t);
    std::ostringstream os;
    if (format == GTERMS_FORMAT_JSON) {
      os << gterms::series_to_json(t, series).dump(1) << '\n';
    } else {
      gterms::write_series_csv(series, os);
    }
    *out = dup_string(os.str());
  });
}

gterms_status gterms_themes_export(const gterms_result* result, const char* themes_path,
                                   gterms_format format, char** out) {
  return guarded([&] {
    require(result && themes_path && out, "null argument");
    const auto store = gterms::ThemeStore::load(themes_path);
    if (store.analysis_hash() != result->result.content_hash) {
      throw gterms::Error(gterms::ErrorCode::kConflict,
                          "theme file was created for a different analysis");
    }
    std::ostringstream os;
    if (format == GTERMS_FORMAT_CSV) {
      store.export_csv(result->result, os);
    } else {
      os << store.export_json(result->result).dump(1) << '\n';
    }
    *out = dup_string(os.str());
  });
}

gterms_status gterms_server_create(const gterms_result* result, const gterms_view* view,
                                   const char* themes_path, const char* host, int port,
                                   const char* static_dir, gterms_server** out) {
  return guarded([&] {
    require(result && out, "null argument");
    require(port >= 0 && port <= 65535, "port out of range");
    gterms::ServerOptions options;
    if (host) options.host = host;
    options.port = port;
    if (themes_path) options.themes_path = themes_path;
    if (static_dir) options.static_dir = static_dir;
    auto s = std::make_unique<gterms_server>();
    s->server = std::make_unique<gterms::ApiServer>(
        result->result, view ? view->view : nullptr, std::move(options));
    *out = s.release();
  });
}

gterms_status gterms_server_bind(gterms_server* server, int* port_out) {
  return guarded([&] {
    require(server != nullptr, "null argument");
    const int port = server->server->bind();
    if (port_out) *port_out = port;
  });
}

gterms_status gterms_server_run(gterms_server* server) {
  return guarded([&] {
    require(server != nullptr, "null argument");
    server->server->run();
  });
}

void gterms_server_stop(gterms_server* server) {
  if (server) server->server->stop();
}

void gterms_server_free(gterms_server* server) { delete server; }

}  // extern "C"
