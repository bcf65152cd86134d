// Copyright 2026 The qrecon Authors
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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "qrecon/bits.hpp"

namespace qrecon::cli {

namespace {

using nlohmann::json;

void rejectUnknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown field '" + key + "' in " + where);
  }
}

const json& require(const json& obj, const std::string& key) {
  if (!obj.contains(key)) throw ConfigError("missing required field '" + key + "'");
  return obj.at(key);
}

std::uint64_t asCount(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError("'" + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

double asNumber(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError("'" + key + "' must be finite");
  return d;
}

double asTolerance(const json& v, const std::string& key) {
  const double d = asNumber(v, key);
  if (!(d > 0.0)) throw ConfigError("'" + key + "' must be positive");
  return d;
}

int asLevels(const json& v, int lo, int hi) {
  const std::uint64_t n = asCount(v, "levels");
  if (n < static_cast<std::uint64_t>(lo) || n > static_cast<std::uint64_t>(hi)) {
    throw ConfigError("'levels' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(n);
}

Axis asAxis(const json& v) {
  if (!v.is_string()) throw ConfigError("axis must be one of \"q\", \"p\", \"r\"");
  try {
    return axisFromString(v.get<std::string>());
  } catch (const std::exception&) {
    throw ConfigError("unknown axis '" + v.get<std::string>() + "'");
  }
}

void parseTomography(const json& j, TomographyConfig& c) {
  if (j.contains("truth")) {
    const json& t = j.at("truth");
    if (!t.is_object() || t.size() != 1) {
      throw ConfigError("'truth' must hold exactly one of rebitThetaQ, bloch, extended");
    }
    rejectUnknown(t, {"rebitThetaQ", "bloch", "extended"}, "truth");
    if (t.contains("rebitThetaQ")) {
      const double th = asNumber(t.at("rebitThetaQ"), "rebitThetaQ");
      if (th < 0.0 || th > std::numbers::pi) throw ConfigError("'rebitThetaQ' must lie in [0, pi]");
      c.rebitThetaQ = th;
    } else if (t.contains("bloch")) {
      const json& b = t.at("bloch");
      if (!b.is_array() || b.size() != 3) throw ConfigError("'bloch' must be [sQ, sP, sR]");
      const BlochPoint pt{asNumber(b[0], "bloch"), asNumber(b[1], "bloch"), asNumber(b[2], "bloch")};
      if (std::abs(pt.norm() - 1.0) > 1e-9) throw ConfigError("'bloch' must be a unit vector");
      c.bloch = pt;
    } else {
      const json& e = t.at("extended");
      if (!e.is_object()) throw ConfigError("'extended' must be an object");
      rejectUnknown(e, {"axis", "theta", "alpha"}, "truth.extended");
      const double th = asNumber(require(e, "theta"), "theta");
      if (th < 0.0 || th > std::numbers::pi) throw ConfigError("'theta' must lie in [0, pi]");
      c.extended = ExtendedCoords{asAxis(require(e, "axis")), th, asNumber(require(e, "alpha"), "alpha")};
    }
  }
  if (j.contains("observables")) {
    const json& o = j.at("observables");
    if (!o.is_array() || o.empty()) throw ConfigError("'observables' must be a non-empty array");
    c.observables.clear();
    for (const auto& a : o) c.observables.push_back(asAxis(a));
  }
  if (j.contains("trials")) c.trials = asCount(j.at("trials"), "trials");
  if (c.trials == 0) throw ConfigError("'trials' must be at least 1");
  if (j.contains("replicas")) c.replicas = asCount(j.at("replicas"), "replicas");
  if (c.replicas < 2) throw ConfigError("'replicas' must be at least 2");
  if (j.contains("parityTolerance")) c.parityTolerance = asTolerance(j.at("parityTolerance"), "parityTolerance");
  if (!c.rebitThetaQ && !c.bloch && !c.extended) c.rebitThetaQ = std::numbers::pi / 3;
}

void parseBench(const json& j, BenchConfig& c) {
  if (j.contains("sizes")) {
    const json& s = j.at("sizes");
    if (!s.is_array() || s.empty()) throw ConfigError("'sizes' must be a non-empty array");
    c.sizes.clear();
    for (const auto& v : s) {
      const std::uint64_t N = asCount(v, "sizes");
      if (N < 2 || !isPowerOfTwo(N) || N > 8192) {
        throw ConfigError("bench sizes must be powers of two in [2, 8192], got " + std::to_string(N));
      }
      c.sizes.push_back(N);
    }
  }
  if (j.contains("repetitions")) {
    const std::uint64_t r = asCount(j.at("repetitions"), "repetitions");
    if (r == 0 || r > 100000) throw ConfigError("'repetitions' must lie in [1, 100000]");
    c.repetitions = static_cast<int>(r);
  }
  if (j.contains("minSpeedup")) c.minSpeedup = asTolerance(j.at("minSpeedup"), "minSpeedup");
  if (j.contains("assertFrom")) c.assertFrom = asCount(j.at("assertFrom"), "assertFrom");
}

}  // namespace

std::string toString(Kind k) {
  switch (k) {
    case Kind::tomography: return "tomography";
    case Kind::metricCheck: return "metric-check";
    case Kind::fftDerive: return "fft-derive";
    case Kind::partitionAudit: return "partition-audit";
    case Kind::bench: return "bench";
  }
  return "?";
}

Kind kindFromString(const std::string& s) {
  for (Kind k : {Kind::tomography, Kind::metricCheck, Kind::fftDerive, Kind::partitionAudit, Kind::bench}) {
    if (toString(k) == s) return k;
  }
  throw ConfigError("unknown kind '" + s + "'");
}

ExperimentConfig defaultConfig(Kind kind) {
  ExperimentConfig c;
  c.kind = kind;
  if (kind == Kind::tomography) c.tomography.rebitThetaQ = std::numbers::pi / 3;
  return c;
}

ExperimentConfig parseConfig(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const json& version = require(j, "version");
  if (!version.is_number_integer() || version.get<int>() != kConfigVersion) {
    throw ConfigError("unsupported config version (expected " + std::to_string(kConfigVersion) + ")");
  }
  const json& kind = require(j, "kind");
  if (!kind.is_string()) throw ConfigError("'kind' must be a string");
  ExperimentConfig c;
  c.kind = kindFromString(kind.get<std::string>());

  std::set<std::string> allowed{"version", "kind", "seed", "out"};
  switch (c.kind) {
    case Kind::tomography:
      allowed.insert({"truth", "observables", "trials", "replicas", "parityTolerance"});
      break;
    case Kind::metricCheck:
      allowed.insert({"levels", "samples", "chartPoints", "tolerance"});
      break;
    case Kind::fftDerive:
      allowed.insert({"levels", "tolerance"});
      break;
    case Kind::partitionAudit:
      allowed.insert("levels");
      break;
    case Kind::bench:
      allowed.insert({"sizes", "repetitions", "minSpeedup", "assertFrom"});
      break;
  }
  rejectUnknown(j, allowed, "config of kind " + toString(c.kind));

  if (j.contains("seed")) c.seed = asCount(j.at("seed"), "seed");
  if (j.contains("out")) {
    if (!j.at("out").is_string()) throw ConfigError("'out' must be a string");
    c.out = j.at("out").get<std::string>();
  }

  switch (c.kind) {
    case Kind::tomography:
      parseTomography(j, c.tomography);
      break;
    case Kind::metricCheck: {
      auto& m = c.metricCheck;
      if (j.contains("levels")) m.levels = asLevels(j.at("levels"), 1, 12);
      if (j.contains("samples")) m.samples = asCount(j.at("samples"), "samples");
      if (j.contains("chartPoints")) m.chartPoints = asCount(j.at("chartPoints"), "chartPoints");
      if (m.samples == 0 || m.chartPoints == 0) throw ConfigError("sample counts must be at least 1");
      if (j.contains("tolerance")) m.tolerance = asTolerance(j.at("tolerance"), "tolerance");
      break;
    }
    case Kind::fftDerive:
      if (j.contains("levels")) c.fftDerive.levels = asLevels(j.at("levels"), 1, 12);
      if (j.contains("tolerance")) c.fftDerive.tolerance = asTolerance(j.at("tolerance"), "tolerance");
      break;
    case Kind::partitionAudit:
      if (j.contains("levels")) c.partitionAudit.levels = asLevels(j.at("levels"), 1, 4);
      break;
    case Kind::bench:
      parseBench(j, c.bench);
      break;
  }
  return c;
}

ExperimentConfig loadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parseConfig(j);
}

json toJson(const ExperimentConfig& c) {
  json j{{"version", kConfigVersion}, {"kind", toString(c.kind)}, {"seed", c.seed}};
  if (c.out) j["out"] = *c.out;
  switch (c.kind) {
    case Kind::tomography: {
      const auto& t = c.tomography;
      json truth;
      if (t.rebitThetaQ) truth["rebitThetaQ"] = *t.rebitThetaQ;
      if (t.bloch) truth["bloch"] = {t.bloch->sQ, t.bloch->sP, t.bloch->sR};
      if (t.extended) {
        truth["extended"] = {{"axis", toString(t.extended->axis)}, {"theta", t.extended->theta},
                             {"alpha", t.extended->alpha}};
      }
      json obs = json::array();
      for (Axis a : t.observables) obs.push_back(toString(a));
      j.update({{"truth", truth}, {"observables", obs}, {"trials", t.trials}, {"replicas", t.replicas},
                {"parityTolerance", t.parityTolerance}});
      break;
    }
    case Kind::metricCheck:
      j.update({{"levels", c.metricCheck.levels}, {"samples", c.metricCheck.samples},
                {"chartPoints", c.metricCheck.chartPoints}, {"tolerance", c.metricCheck.tolerance}});
      break;
    case Kind::fftDerive:
      j.update({{"levels", c.fftDerive.levels}, {"tolerance", c.fftDerive.tolerance}});
      break;
    case Kind::partitionAudit:
      j["levels"] = c.partitionAudit.levels;
      break;
    case Kind::bench:
      j.update({{"sizes", c.bench.sizes}, {"repetitions", c.bench.repetitions},
                {"minSpeedup", c.bench.minSpeedup}, {"assertFrom", c.bench.assertFrom}});
      break;
  }
  return j;
}

}  // namespace qrecon::cli
