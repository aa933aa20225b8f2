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

#include "server.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "error.hpp"
#include "explore.hpp"

namespace gterms {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kPlaceholderPage =
    "<!doctype html><html><head><meta charset=\"utf-8\"><title>genderterms</title></head>"
    "<body><h1>genderterms</h1><p>The analyst UI bundle is not installed. Start the server "
    "with <code>--static &lt;dir&gt;</code> to serve it. The JSON API is available under "
    "<a href=\"/api/meta\">/api</a>.</p></body></html>";

struct HttpError {
  int status;
  std::string code;
  std::string message;
};

std::string error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse: return "bad_request";
    default: return "internal";
  }
}

int status_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kConflict: return 409;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse: return 400;
    default: return 500;
  }
}

std::uint64_t parse_uint(const httplib::Request& req, const char* key, std::uint64_t fallback) {
  if (!req.has_param(key)) return fallback;
  const std::string v = req.get_param_value(key);
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
    throw HttpError{400, "bad_request", std::string("parameter '") + key + "' must be a non-negative integer"};
  }
  return out;
}

json parse_body(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw HttpError{400, "bad_request", "request body must be a JSON object"};
  }
  return body;
}

std::optional<std::string> optional_string(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw HttpError{400, "bad_request", std::string("'") + key + "' must be a string"};
  return it->get<std::string>();
}

std::optional<Tendency> optional_tendency(const json& body) {
  auto s = optional_string(body, "gender_tendency");
  if (!s) return std::nullopt;
  auto t = parse_tendency(*s);
  if (!t) throw HttpError{400, "bad_request", "gender_tendency must be female, male or mixed"};
  return t;
}

}  // namespace

struct ApiServer::Impl {
  AnalysisResult result;
  std::shared_ptr<const CorpusView> view;
  ServerOptions options;
  httplib::Server http;
  mutable std::shared_mutex themes_mu;
  ThemeStore themes;
  int bound_port = -1;

  Impl(AnalysisResult r, std::shared_ptr<const CorpusView> v, ServerOptions o)
      : result(std::move(r)), view(std::move(v)), options(std::move(o)) {
    if (!options.themes_path.empty() && std::filesystem::exists(options.themes_path)) {
      themes = ThemeStore::load(options.themes_path);
    } else {
      themes = ThemeStore(result.content_hash);
    }
    routes();
  }

  void send_json(httplib::Response& res, const ordered_json& body, int status = 200) const {
    res.status = status;
    res.set_header("X-Analysis-Hash", result.content_hash);
    res.set_content(body.dump(), "application/json");
  }

  void send_error(httplib::Response& res, int status, const std::string& code,
                  const std::string& message) const {
    send_json(res, ordered_json{{"content_hash", result.content_hash},
                                {"error", {{"code", code}, {"message", message}}}},
              status);
  }

  template <typename Fn>
  httplib::Server::Handler wrap(Fn fn) {
    return [this, fn](const httplib::Request& req, httplib::Response& res) {
      try {
        fn(req, res);
      } catch (const HttpError& e) {
        send_error(res, e.status, e.code, e.message);
      } catch (const Error& e) {
        send_error(res, status_for(e.code()), error_code_name(e.code()), e.what());
      } catch (const std::exception& e) {
        send_error(res, 500, "internal", e.what());
      }
    };
  }

  // A term is addressable when it is in the analysis or anywhere in the corpus.
  std::string known_term(const httplib::Request& req) const {
    const std::string term = unicode::lower(req.path_params.at("term"));
    if (!result.find(term) && !(view && view->vocab().contains(term))) {
      throw HttpError{404, "unknown_term", "unknown term '" + term + "'"};
    }
    return term;
  }

  const CorpusView& corpus() const {
    if (!view) throw HttpError{404, "no_corpus", "server was started without a corpus"};
    return *view;
  }

  bool themes_writable_locked() const {
    if (themes.analysis_hash() != result.content_hash) return false;
    if (!options.themes_path.empty() && std::filesystem::exists(options.themes_path)) {
      std::ifstream in(options.themes_path, std::ios::binary);
      json j = json::parse(in, nullptr, false);
      if (j.is_discarded() || j.value("analysis_hash", "") != result.content_hash) return false;
    }
    return true;
  }

  template <typename Fn>
  void write_themes(httplib::Response& res, Fn fn) {
    std::unique_lock lock(themes_mu);
    if (!themes_writable_locked()) {
      throw HttpError{409, "stale_themes",
                      "theme file belongs to a different analysis; reload or start a new theme file"};
    }
    ThemeStore scratch = themes;
    auto [status, body] = fn(scratch);
    if (!options.themes_path.empty()) scratch.save(options.themes_path);
    themes = std::move(scratch);
    send_json(res, body, status);
  }

  ordered_json term_row(const TermRecord& rec, const std::optional<std::string>& theme) const {
    ordered_json j = term_record_json(rec, result.config);
    j["theme"] = theme ? ordered_json(*theme) : ordered_json(nullptr);
    return j;
  }

  void routes() {
    http.Get("/api/meta", wrap([this](const httplib::Request&, httplib::Response& res) {
      ordered_json full = result_to_json(result);
      bool writable;
      {
        std::shared_lock lock(themes_mu);
        writable = themes_writable_locked();
      }
      send_json(res, ordered_json{{"content_hash", result.content_hash},
                                  {"config", full["config"]},
                                  {"corpus", full["corpus"]},
                                  {"overall", full["overall"]},
                                  {"days", full["days"]},
                                  {"included", result.included_terms.size()},
                                  {"themes_writable", writable}});
    }));

    http.Get("/api/terms", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const std::string sort = req.has_param("sort") ? req.get_param_value("sort") : "chi2";
      if (sort != "chi2" && sort != "stars" && sort != "direction" && sort != "term") {
        throw HttpError{400, "bad_request", "sort must be chi2, stars, direction or term"};
      }
      std::string dir = req.has_param("dir") ? req.get_param_value("dir")
                                             : (sort == "chi2" || sort == "stars" ? "desc" : "asc");
      if (dir != "asc" && dir != "desc") throw HttpError{400, "bad_request", "dir must be asc or desc"};
      const std::string theme = req.has_param("theme") ? req.get_param_value("theme") : "";
      const std::string q = unicode::lower(req.has_param("q") ? req.get_param_value("q") : "");
      const bool all = req.has_param("all") && req.get_param_value("all") == "1";
      const std::uint64_t page = std::max<std::uint64_t>(1, parse_uint(req, "page", 1));
      const std::uint64_t per_page = parse_uint(req, "per_page", 0);

      std::vector<std::pair<const TermRecord*, std::optional<std::string>>> rows;
      {
        std::shared_lock lock(themes_mu);
        if (!theme.empty() && theme != "unassigned" && !themes.find(theme)) {
          throw HttpError{404, "unknown_theme", "unknown theme '" + theme + "'"};
        }
        for (const auto& rec : result.terms) {
          if (!all && !rec.included) continue;
          if (!q.empty() && rec.stats.term.find(q) == std::string::npos) continue;
          auto tid = themes.theme_of(rec.stats.term);
          if (theme == "unassigned" && tid) continue;
          if (!theme.empty() && theme != "unassigned" && tid != theme) continue;
          rows.emplace_back(&rec, std::move(tid));
        }
      }
      // -1/0/1 comparison on the sort key alone.
      auto key_cmp = [&](const TermRecord* x, const TermRecord* y) -> int {
        if (sort == "chi2") return (x->stats.chi2 > y->stats.chi2) - (x->stats.chi2 < y->stats.chi2);
        if (sort == "stars") {
          return (x->daily.star_total > y->daily.star_total) - (x->daily.star_total < y->daily.star_total);
        }
        if (sort == "direction") {
          return direction_name(x->stats.direction).compare(direction_name(y->stats.direction));
        }
        return x->stats.term.compare(y->stats.term);
      };
      std::sort(rows.begin(), rows.end(), [&](const auto& x, const auto& y) {
        const int c = key_cmp(x.first, y.first);
        if (c != 0) return dir == "asc" ? c < 0 : c > 0;
        return x.first->stats.term < y.first->stats.term;
      });
      const std::size_t total = rows.size();
      std::size_t begin = 0, end = total;
      if (per_page > 0) {
        begin = std::min<std::size_t>(total, (page - 1) * per_page);
        end = std::min<std::size_t>(total, begin + per_page);
      }
      ordered_json items = ordered_json::array();
      for (std::size_t i = begin; i < end; ++i) items.push_back(term_row(*rows[i].first, rows[i].second));
      send_json(res, ordered_json{{"content_hash", result.content_hash},
                                  {"total", total},
                                  {"page", page},
                                  {"per_page", per_page},
                                  {"terms", items}});
    }));

    http.Get("/api/terms/:term", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const std::string term = unicode::lower(req.path_params.at("term"));
      const TermRecord* rec = result.find(term);
      if (!rec) throw HttpError{404, "unknown_term", "unknown term '" + term + "'"};
      std::optional<std::string> theme;
      {
        std::shared_lock lock(themes_mu);
        theme = themes.theme_of(term);
      }
      ordered_json body = term_row(*rec, theme);
      body["content_hash"] = result.content_hash;
      send_json(res, body);
    }));

    http.Get("/api/terms/:term/kwic", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const std::string term = known_term(req);
      const auto n = parse_uint(req, "n", options.default_kwic);
      const auto seed = parse_uint(req, "seed", options.default_seed);
      ordered_json body = kwic_to_json(kwic(corpus(), term, n, seed));
      body["content_hash"] = result.content_hash;
      send_json(res, body);
    }));

    http.Get("/api/terms/:term/assoc", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const std::string term = known_term(req);
      const auto k = parse_uint(req, "k", options.default_assoc);
      ordered_json items = ordered_json::array();
      for (const auto& a : top_associations(corpus(), term, k)) {
        items.push_back({{"word", a.word},
                         {"chi2", a.chi2},
                         {"direction", direction_name(a.direction)},
                         {"co_occurrences", a.co_occurrences},
                         {"document_frequency", a.document_frequency}});
      }
      ordered_json body{{"content_hash", result.content_hash},
                        {"term", term},
                        {"k", k},
                        {"associations", items}};
      if (items.empty()) body["notice"] = "no associated words at the minimum document frequency";
      send_json(res, body);
    }));

    http.Get("/api/terms/:term/series", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const std::string term = known_term(req);
      ordered_json body = series_to_json(term, time_series(corpus(), term));
      body["content_hash"] = result.content_hash;
      send_json(res, body);
    }));

    http.Get("/api/themes", wrap([this](const httplib::Request&, httplib::Response& res) {
      std::shared_lock lock(themes_mu);
      ordered_json list = ordered_json::array();
      for (const auto& t : themes.themes()) list.push_back(theme_to_json(t));
      send_json(res, ordered_json{{"content_hash", result.content_hash},
                                  {"writable", themes_writable_locked()},
                                  {"themes", list}});
    }));

    http.Get("/api/themes/:id", wrap([this](const httplib::Request& req, httplib::Response& res) {
      std::shared_lock lock(themes_mu);
      const Theme* t = themes.find(req.path_params.at("id"));
      if (!t) throw HttpError{404, "unknown_theme", "unknown theme '" + req.path_params.at("id") + "'"};
      send_json(res, theme_to_json(*t));
    }));

    http.Post("/api/themes", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const json body = parse_body(req);
      auto name = optional_string(body, "name");
      if (!name) throw HttpError{400, "bad_request", "'name' is required"};
      const Tendency tendency = optional_tendency(body).value_or(Tendency::kMixed);
      const std::string notes = optional_string(body, "notes").value_or("");
      write_themes(res, [&](ThemeStore& store) {
        return std::pair{201, theme_to_json(store.create(*name, tendency, notes))};
      });
    }));

    http.Put("/api/themes/:id", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const json body = parse_body(req);
      const std::string id = req.path_params.at("id");
      auto name = optional_string(body, "name");
      auto tendency = optional_tendency(body);
      auto notes = optional_string(body, "notes");
      write_themes(res, [&](ThemeStore& store) {
        return std::pair{200, theme_to_json(store.update(id, name, tendency, notes))};
      });
    }));

    http.Delete("/api/themes/:id", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.path_params.at("id");
      write_themes(res, [&](ThemeStore& store) {
        store.remove(id);
        return std::pair{200, ordered_json{{"deleted", id}}};
      });
    }));

    http.Post("/api/themes/:id/terms", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const json body = parse_body(req);
      auto it = body.find("terms");
      if (it == body.end() || !it->is_array()) {
        throw HttpError{400, "bad_request", "'terms' must be an array of strings"};
      }
      std::vector<std::string> terms;
      for (const auto& t : *it) {
        if (!t.is_string()) throw HttpError{400, "bad_request", "'terms' must be an array of strings"};
        terms.push_back(unicode::lower(t.get<std::string>()));
      }
      const std::string id = req.path_params.at("id");
      write_themes(res, [&](ThemeStore& store) {
        return std::pair{200, theme_to_json(store.assign(id, terms, result))};
      });
    }));

    http.Delete("/api/themes/:id/terms/:term", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.path_params.at("id");
      const std::string term = unicode::lower(req.path_params.at("term"));
      write_themes(res, [&](ThemeStore& store) {
        return std::pair{200, theme_to_json(store.unassign(id, term))};
      });
    }));

    http.Get("/api/export", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const std::string format = req.has_param("format") ? req.get_param_value("format") : "json";
      std::shared_lock lock(themes_mu);
      if (format == "json") {
        send_json(res, themes.export_json(result));
      } else if (format == "csv") {
        std::ostringstream os;
        themes.export_csv(result, os);
        res.set_header("X-Analysis-Hash", result.content_hash);
        res.set_content(os.str(), "text/csv");
      } else {
        throw HttpError{400, "bad_request", "format must be json or csv"};
      }
    }));

    if (!options.static_dir.empty()) {
      if (!http.set_mount_point("/", options.static_dir.string())) {
        throw Error(ErrorCode::kIo, "static directory not found: " + options.static_dir.string());
      }
    } else {
      http.Get("/", [this](const httplib::Request&, httplib::Response& res) {
        res.set_header("X-Analysis-Hash", result.content_hash);
        res.set_content(kPlaceholderPage, "text/html");
      });
    }
    http.set_error_handler([this](const httplib::Request&, httplib::Response& res) {
      if (res.status == 404 && res.body.empty()) {
        send_error(res, 404, "not_found", "no such route");
      }
    });
  }
};

ApiServer::ApiServer(AnalysisResult result, std::shared_ptr<const CorpusView> view,
                     ServerOptions options)
    : impl_(std::make_unique<Impl>(std::move(result), std::move(view), std::move(options))) {}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind() {
  if (impl_->bound_port >= 0) return impl_->bound_port;
  int port;
  if (impl_->options.port == 0) {
    port = impl_->http.bind_to_any_port(impl_->options.host);
  } else {
    port = impl_->http.bind_to_port(impl_->options.host, impl_->options.port)
               ? impl_->options.port
               : -1;
  }
  if (port < 0) {
    throw Error(ErrorCode::kIo, "cannot bind " + impl_->options.host + ":" +
                                    std::to_string(impl_->options.port));
  }
  impl_->bound_port = port;
  return port;
}

void ApiServer::run() {
  bind();
  impl_->http.listen_after_bind();
}

void ApiServer::stop() {
  if (impl_) impl_->http.stop();
}

}  // namespace gterms
