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

#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qrecon::cli {

Check& RunReport::add(std::string id, double measured, double tolerance, Relation rel, nlohmann::json detail) {
  Check c{std::move(id), measured, tolerance, rel, false, std::move(detail)};
  // NaN fails either way
  c.pass = rel == Relation::below ? measured < tolerance : measured >= tolerance;
  checks.push_back(std::move(c));
  return checks.back();
}

void RunReport::addFlag(std::string id, bool ok, nlohmann::json detail) {
  Check c{std::move(id), ok ? 0.0 : 1.0, 1.0, Relation::below, ok, std::move(detail)};
  checks.push_back(std::move(c));
}

bool RunReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::json toJson(const RunReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json j{{"id", c.id},
                     {"measured", c.measured},
                     {"tolerance", c.tolerance},
                     {"relation", c.relation == Relation::below ? "<" : ">="},
                     {"pass", c.pass}};
    if (!c.detail.is_null()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  return nlohmann::json{{"kind", toString(r.config.kind)},
                        {"seed", r.config.seed},
                        {"config", toJson(r.config)},
                        {"checks", std::move(checks)},
                        {"measurements", r.measurements},
                        {"wallSeconds", r.wallSeconds},
                        {"pass", r.pass()}};
}

std::string toCsv(const RunReport& r) {
  if (!r.csvOverride.empty()) return r.csvOverride;
  std::ostringstream os;
  os.precision(17);
  os << "check,measured,relation,tolerance,pass\n";
  for (const auto& c : r.checks) {
    os << c.id << ',' << c.measured << ',' << (c.relation == Relation::below ? "<" : ">=") << ','
       << c.tolerance << ',' << (c.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string summary(const RunReport& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s %-28s %.6g %s %.3g\n", c.pass ? "PASS" : "FAIL", c.id.c_str(), c.measured,
                  c.relation == Relation::below ? "<" : ">=", c.tolerance);
    os << buf;
    if (!c.pass && !c.detail.is_null()) os << "     worst: " << c.detail.dump() << '\n';
  }
  os << toString(r.config.kind) << ": " << (r.pass() ? "pass" : "FAIL") << " (" << r.checks.size() << " checks, "
     << r.wallSeconds << " s)\n";
  return os.str();
}

}  // namespace qrecon::cli
