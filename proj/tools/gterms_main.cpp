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

// Command-line front end; talks to the library only through the C API.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <pthread.h>

#include <CLI11.hpp>

#include "gterms/gterms.h"

namespace {

struct Failure {
  std::string message;
};

void check(gterms_status status, const std::string& context) {
  if (status != GTERMS_OK) {
    throw Failure{context + ": " + gterms_last_error()};
  }
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using CorpusPtr = std::unique_ptr<gterms_corpus, Deleter<gterms_corpus, gterms_corpus_free>>;
using LexiconPtr = std::unique_ptr<gterms_lexicon, Deleter<gterms_lexicon, gterms_lexicon_free>>;
using ViewPtr = std::unique_ptr<gterms_view, Deleter<gterms_view, gterms_view_free>>;
using ResultPtr = std::unique_ptr<gterms_result, Deleter<gterms_result, gterms_result_free>>;
using ServerPtr = std::unique_ptr<gterms_server, Deleter<gterms_server, gterms_server_free>>;

std::string take(char* s) {
  std::string out = s ? s : "";
  gterms_free_string(s);
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{"cannot write " + out_path};
  out << text;
  if (!out) throw Failure{"failed writing " + out_path};
}

struct Common {
  unsigned jobs = 0;
};

struct LabelOptions {
  std::string corpus;
  std::string names;
  double threshold = 0.90;
};

void add_label_options(CLI::App* cmd, LabelOptions& o) {
  cmd->add_option("--corpus", o.corpus, "Corpus cache file")->required();
  cmd->add_option("--names", o.names,
                  "Name lexicon CSV (name,female_count,male_count); defaults to $GTERMS_LEXICON "
                  "or the built-in fixture");
  cmd->add_option("--threshold", o.threshold, "Minimum share of one gender for a name")
      ->check(CLI::Range(0.5, 1.0));
}

LexiconPtr open_lexicon(const LabelOptions& o) {
  std::string path = o.names;
  if (path.empty()) {
    if (const char* env = std::getenv("GTERMS_LEXICON"); env && *env) path = env;
  }
  gterms_lexicon* lex = nullptr;
  check(gterms_lexicon_load(path.empty() ? nullptr : path.c_str(), o.threshold, &lex),
        "loading lexicon");
  return LexiconPtr(lex);
}

ViewPtr open_view(const LabelOptions& o, unsigned jobs) {
  gterms_corpus* corpus = nullptr;
  check(gterms_corpus_load(o.corpus.c_str(), &corpus), "loading corpus");
  CorpusPtr corpus_ptr(corpus);
  auto lexicon = open_lexicon(o);
  gterms_view* view = nullptr;
  check(gterms_view_create(corpus, lexicon.get(), jobs, &view), "labelling corpus");
  return ViewPtr(view);
}

struct AnalysisOptions {
  std::string alphas = "0.05,0.01,0.001";
  int stars = 7;
  double critical = 3.841;
};

void add_analysis_options(CLI::App* cmd, AnalysisOptions& o) {
  cmd->add_option("--alphas", o.alphas, "Comma-separated BH levels, strictly decreasing");
  cmd->add_option("--stars", o.stars, "Star total needed for daily inclusion")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--critical", o.critical, "Prefilter critical chi-square value");
}

std::vector<double> parse_alphas(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Failure{"bad alpha value '" + item + "'"};
    }
  }
  return out;
}

gterms_config make_config(const AnalysisOptions& o, const std::vector<double>& alphas,
                          unsigned jobs) {
  gterms_config c;
  gterms_config_default(&c);
  c.alphas = alphas.data();
  c.n_alphas = alphas.size();
  c.star_threshold = o.stars;
  c.prefilter_critical = o.critical;
  c.jobs = jobs;
  return c;
}

std::thread stop_on_signal(gterms_server* server) {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  return std::thread([server, set] {
    int sig = 0;
    sigwait(&set, &sig);
    gterms_server_stop(server);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gendered term detection for timestamped short-post corpora"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--jobs", common.jobs, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.set_version_flag("--version", std::string(gterms_version()));

  // ingest
  std::string in_input, in_queries, in_out;
  auto* ingest = app.add_subcommand("ingest", "Filter, deduplicate and cache input records");
  ingest->add_option("--input", in_input, "JSONL or .csv records")->required();
  ingest->add_option("--queries", in_queries, "Query file (';' or newline separated)")
      ->required();
  ingest->add_option("--out", in_out, "Corpus cache to write")->required();

  // analyze
  LabelOptions an_label;
  AnalysisOptions an_opts;
  std::string an_out, an_table;
  auto* analyze = app.add_subcommand("analyze", "Overall and per-day gendered term detection");
  add_label_options(analyze, an_label);
  add_analysis_options(analyze, an_opts);
  analyze->add_option("--out", an_out, "Result JSON to write")->required();
  analyze->add_option("--table-out", an_table, "Also write term,df_female,df_male CSV");

  // daily
  LabelOptions da_label;
  AnalysisOptions da_opts;
  std::string da_out;
  auto* daily = app.add_subcommand("daily", "Per-day significance stars as CSV");
  add_label_options(daily, da_label);
  add_analysis_options(daily, da_opts);
  daily->add_option("--out", da_out, "Output file (default stdout)");

  // kwic
  LabelOptions kw_label;
  std::string kw_term;
  std::size_t kw_n = 10;
  std::uint64_t kw_seed = 42;
  bool kw_json = false;
  auto* kwic = app.add_subcommand("kwic", "Random sample of posts containing a term");
  add_label_options(kwic, kw_label);
  kwic->add_option("--term", kw_term, "Term to sample")->required();
  kwic->add_option("--n", kw_n, "Sample size");
  kwic->add_option("--seed", kw_seed, "Sampling seed");
  kwic->add_flag("--json", kw_json, "JSON output");

  // assoc
  LabelOptions as_label;
  std::string as_term;
  std::size_t as_k = 20;
  bool as_json = false;
  auto* assoc = app.add_subcommand("assoc", "Words most associated with a term");
  add_label_options(assoc, as_label);
  assoc->add_option("--term", as_term, "Term")->required();
  assoc->add_option("--k", as_k, "Number of words");
  assoc->add_flag("--json", as_json, "JSON output");

  // series
  LabelOptions se_label;
  std::string se_term;
  bool se_json = false;
  auto* series = app.add_subcommand("series", "Daily female/male proportions for a term");
  add_label_options(series, se_label);
  series->add_option("--term", se_term, "Term")->required();
  series->add_flag("--json", se_json, "JSON output");

  // export
  std::string ex_result, ex_format = "csv", ex_out, ex_themes;
  auto* exportc = app.add_subcommand("export", "Export a result (or a theme report) as CSV/JSON");
  exportc->add_option("--result", ex_result, "Result JSON")->required();
  exportc->add_option("--format", ex_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  exportc->add_option("--themes", ex_themes, "Theme file: export the grouped theme report")
      ;
  exportc->add_option("--out", ex_out, "Output file (default stdout)");

  // synth
  std::string sy_spec, sy_out;
  std::uint64_t sy_docs = 0, sy_seed = 1;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic planted-term corpus");
  synth->add_option("--spec", sy_spec, "Generator spec JSON")->required();
  synth->add_option("--docs", sy_docs, "Number of posts")->required();
  synth->add_option("--seed", sy_seed, "Generator seed");
  synth->add_option("--out", sy_out, "Corpus cache to write")->required();

  // serve
  std::string sv_result, sv_themes, sv_host = "127.0.0.1", sv_static;
  LabelOptions sv_label;
  int sv_port = 8080;
  auto* serve = app.add_subcommand("serve", "HTTP API and analyst UI");
  serve->add_option("--result", sv_result, "Result JSON")->required();
  serve->add_option("--corpus", sv_label.corpus, "Corpus cache")->required();
  serve->add_option("--names", sv_label.names, "Name lexicon CSV");
  serve->add_option("--threshold", sv_label.threshold, "Lexicon threshold")->check(CLI::Range(0.5, 1.0));
  serve->add_option("--themes", sv_themes, "Theme file (created if missing)")->required();
  serve->add_option("--port", sv_port, "Port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", sv_host, "Bind address");
  serve->add_option("--static", sv_static, "Directory with the UI bundle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    if (*ingest) {
      gterms_corpus* c = nullptr;
      check(gterms_corpus_ingest(in_input.c_str(), in_queries.c_str(), common.jobs, &c), "ingest");
      CorpusPtr corpus(c);
      check(gterms_corpus_save(c, in_out.c_str()), "writing corpus");
      std::cerr << take([&] {
        char* s = nullptr;
        check(gterms_corpus_summary_json(c, &s), "summary");
        return s;
      }()) << '\n';
    } else if (*analyze) {
      const auto alphas = parse_alphas(an_opts.alphas);
      auto view = open_view(an_label, common.jobs);
      const gterms_config cfg = make_config(an_opts, alphas, common.jobs);
      gterms_result* r = nullptr;
      check(gterms_analyze(view.get(), &cfg, &r), "analyze");
      ResultPtr result(r);
      check(gterms_result_save(r, an_out.c_str()), "writing result");
      if (!an_table.empty()) {
        char* table = nullptr;
        check(gterms_table_csv(view.get(), &table), "table");
        emit(take(table), an_table);
      }
      char* hash = nullptr;
      check(gterms_result_hash(r, &hash), "hash");
      std::cerr << "wrote " << an_out << " (content hash " << take(hash) << ")\n";
    } else if (*daily) {
      const auto alphas = parse_alphas(da_opts.alphas);
      auto view = open_view(da_label, common.jobs);
      const gterms_config cfg = make_config(da_opts, alphas, common.jobs);
      char* out = nullptr;
      check(gterms_daily(view.get(), &cfg, &out), "daily");
      emit(take(out), da_out);
    } else if (*kwic) {
      auto view = open_view(kw_label, common.jobs);
      char* out = nullptr;
      check(gterms_kwic(view.get(), kw_term.c_str(), kw_n, kw_seed,
                        kw_json ? GTERMS_FORMAT_JSON : GTERMS_FORMAT_TEXT, &out),
            "kwic");
      emit(take(out), "");
    } else if (*assoc) {
      auto view = open_view(as_label, common.jobs);
      char* out = nullptr;
      check(gterms_associations(view.get(), as_term.c_str(), as_k,
                                as_json ? GTERMS_FORMAT_JSON : GTERMS_FORMAT_CSV, &out),
            "assoc");
      emit(take(out), "");
    } else if (*series) {
      auto view = open_view(se_label, common.jobs);
      char* out = nullptr;
      check(gterms_series(view.get(), se_term.c_str(),
                          se_json ? GTERMS_FORMAT_JSON : GTERMS_FORMAT_CSV, &out),
            "series");
      emit(take(out), "");
    } else if (*exportc) {
      gterms_result* r = nullptr;
      check(gterms_result_load(ex_result.c_str(), &r), "loading result");
      ResultPtr result(r);
      const gterms_format fmt = ex_format == "json" ? GTERMS_FORMAT_JSON : GTERMS_FORMAT_CSV;
      char* out = nullptr;
      if (ex_themes.empty()) {
        check(gterms_result_export(r, fmt, &out), "export");
      } else {
        check(gterms_themes_export(r, ex_themes.c_str(), fmt, &out), "theme export");
      }
      emit(take(out), ex_out);
    } else if (*synth) {
      gterms_corpus* c = nullptr;
      check(gterms_corpus_synth(sy_spec.c_str(), sy_docs, sy_seed, &c), "synth");
      CorpusPtr corpus(c);
      check(gterms_corpus_save(c, sy_out.c_str()), "writing corpus");
    } else if (*serve) {
      gterms_result* r = nullptr;
      check(gterms_result_load(sv_result.c_str(), &r), "loading result");
      ResultPtr result(r);
      auto view = open_view(sv_label, common.jobs);
      gterms_server* s = nullptr;
      check(gterms_server_create(r, view.get(), sv_themes.c_str(), sv_host.c_str(), sv_port,
                                 sv_static.empty() ? nullptr : sv_static.c_str(), &s),
            "server");
      ServerPtr server(s);
      int port = 0;
      check(gterms_server_bind(s, &port), "bind");
      std::cerr << "serving on http://" << sv_host << ":" << port << "/\n";
      std::thread watcher = stop_on_signal(s);
      const gterms_status st = gterms_server_run(s);
      pthread_kill(watcher.native_handle(), SIGTERM);
      watcher.join();
      check(st, "serve");
    }
  } catch (const Failure& f) {
    std::cerr << "gterms: error: " << f.message << '\n';
    return 1;
  }
  return 0;
}
