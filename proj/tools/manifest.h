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

#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace qflow::cli {

/// Run record written next to the outputs as manifest.json.
class RunManifest {
 public:
  RunManifest(std::string command, std::string config_path, unsigned long long seed, std::string out_dir);

  nlohmann::json& parameters() { return parameters_; }
  /// Full path of an output inside the output directory; the file is listed.
  std::string output(const std::string& name);
  /// Writes manifest.json with the finish timestamp.
  void write();

 private:
  std::string command_;
  std::string config_path_;
  unsigned long long seed_;
  std::string out_dir_;
  std::string started_;
  nlohmann::json parameters_ = nlohmann::json::object();
  std::vector<std::string> outputs_;
};

std::string utc_timestamp();

}  // namespace qflow::cli
