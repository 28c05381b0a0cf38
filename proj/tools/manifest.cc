// Copyright 2026 The qflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "manifest.h"

#include <Eigen/Core>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "qflow/core/errors.h"

namespace qflow::cli {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunManifest::RunManifest(std::string command, std::string config_path, unsigned long long seed, std::string out_dir)
    : command_(std::move(command)),
      config_path_(std::move(config_path)),
      seed_(seed),
      out_dir_(std::move(out_dir)),
      started_(utc_timestamp()) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir_, ec);
  if (ec) throw ConfigError("cannot create output directory '" + out_dir_ + "': " + ec.message());
}

std::string RunManifest::output(const std::string& name) {
  outputs_.push_back(name);
  return (std::filesystem::path(out_dir_) / name).string();
}

void RunManifest::write() {
  nlohmann::json j;
  j["command"] = command_;
  j["config"] = config_path_;
  j["seed"] = seed_;
  j["output_directory"] = out_dir_;
  j["started"] = started_;
  j["finished"] = utc_timestamp();
  j["versions"] = {{"qflow", QFLOW_VERSION},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)}};
  j["parameters"] = parameters_;
  j["outputs"] = outputs_;
  std::ofstream out(std::filesystem::path(out_dir_) / "manifest.json");
  out << j.dump(2) << "\n";
}

}  // namespace qflow::cli
