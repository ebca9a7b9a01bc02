// Copyright 2026 The STA Authors
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

#include "scenario_io.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <openssl/sha.h>

#include "error.hpp"
#include "json.hpp"

namespace sta {

namespace {

using nlohmann::json;

[[noreturn]] void SchemaError(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kSchema, path + ": " + what);
}

void RejectUnknownKeys(const json& obj, const std::string& path,
                       std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) SchemaError(path + "/" + key, "unknown key");
  }
}

double Number(const json& j, const std::string& path) {
  if (!j.is_number()) SchemaError(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) SchemaError(path, "number is not finite");
  return x;
}

Eigen::Vector2d Pair(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) SchemaError(path, "expected [x, y]");
  return {Number(j[0], path + "/0"), Number(j[1], path + "/1")};
}

Matrix Square2(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) {
    SchemaError(path, "expected [[a, b], [c, d]]");
  }
  Matrix out(2, 2);
  for (int r = 0; r < 2; ++r) {
    const auto row = Pair(j[r], path + "/" + std::to_string(r));
    out(r, 0) = row[0];
    out(r, 1) = row[1];
  }
  return out;
}

const json& Required(const json& obj, const char* key,
                     const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) SchemaError(path + "/" + key, "missing required key");
  return *it;
}

}  // namespace

std::string Sha256Hex(std::string_view data) {
  std::array<unsigned char, SHA256_DIGEST_LENGTH> digest{};
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(),
         digest.data());
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * digest.size());
  for (unsigned char b : digest) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xF]);
  }
  return out;
}

LoadedScenario ParseScenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  if (!doc.is_object()) SchemaError("", "top level must be an object");
  RejectUnknownKeys(doc, "", {"name", "tasks", "robots", "adjacency", "ut"});

  LoadedScenario out;
  out.sha256 = Sha256Hex(text);
  Scenario& s = out.scenario;

  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) SchemaError("/name", "expected a string");
    s.name = it->get<std::string>();
  }

  const json& tasks = Required(doc, "tasks", "");
  if (!tasks.is_array()) SchemaError("/tasks", "expected an array");
  s.tasks.resize(static_cast<Eigen::Index>(tasks.size()), 2);
  for (std::size_t j = 0; j < tasks.size(); ++j) {
    s.tasks.row(static_cast<Eigen::Index>(j)) =
        Pair(tasks[j], "/tasks/" + std::to_string(j)).transpose();
  }

  const json& robots = Required(doc, "robots", "");
  if (!robots.is_array()) SchemaError("/robots", "expected an array");
  for (std::size_t i = 0; i < robots.size(); ++i) {
    const std::string path = "/robots/" + std::to_string(i);
    const json& r = robots[i];
    if (!r.is_object()) SchemaError(path, "expected an object");
    RejectUnknownKeys(r, path, {"mean", "cov"});
    GaussianVector g;
    g.mean = Pair(Required(r, "mean", path), path + "/mean");
    g.cov = Square2(Required(r, "cov", path), path + "/cov");
    s.robots.push_back(std::move(g));
  }

  if (auto it = doc.find("adjacency"); it != doc.end()) {
    const json& a = *it;
    if (!a.is_array()) SchemaError("/adjacency", "expected an array of rows");
    Eigen::MatrixXi g(static_cast<Eigen::Index>(a.size()),
                      static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string path = "/adjacency/" + std::to_string(i);
      if (!a[i].is_array() || a[i].size() != a.size()) {
        SchemaError(path, "adjacency must be square");
      }
      for (std::size_t j = 0; j < a.size(); ++j) {
        const json& e = a[i][j];
        if (!e.is_number_integer() || (e.get<int>() != 0 && e.get<int>() != 1)) {
          SchemaError(path + "/" + std::to_string(j), "expected 0 or 1");
        }
        g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            e.get<int>();
      }
    }
    s.adjacency = std::move(g);
  }

  if (auto it = doc.find("ut"); it != doc.end()) {
    if (!it->is_object()) SchemaError("/ut", "expected an object");
    RejectUnknownKeys(*it, "/ut", {"alpha", "beta", "kappa"});
    if (auto a = it->find("alpha"); a != it->end()) {
      s.ut.alpha = Number(*a, "/ut/alpha");
    }
    if (auto b = it->find("beta"); b != it->end()) {
      s.ut.beta = Number(*b, "/ut/beta");
    }
    if (auto k = it->find("kappa"); k != it->end()) {
      s.ut.kappa = Number(*k, "/ut/kappa");
    }
  }

  s.Validate();
  ScenarioUtParams(s);  // rejects out-of-range UT settings early
  return out;
}

LoadedScenario LoadScenarioFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path);
  try {
    return ParseScenario(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

}  // namespace sta
