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

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "analysis.hpp"

namespace gterms {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path themes_path;
  std::filesystem::path static_dir;  // served at "/" when set
  std::uint64_t default_seed = 42;
  std::size_t default_kwic = 10;
  std::size_t default_assoc = 20;
};

// JSON API over one immutable analysis and its corpus. Only the theme store
// is writable; writes go through a single-writer lock and are persisted to
// options.themes_path after every change.
class ApiServer {
 public:
  ApiServer(AnalysisResult result, std::shared_ptr<const CorpusView> view, ServerOptions options);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Binds the socket and returns the bound port. Throws Error(kIo) on failure.
  int bind();
  // Serves until stop(); bind() is called first if needed.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gterms
