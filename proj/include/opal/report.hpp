#pragma once

#include <string>
#include <vector>

namespace opal {

// Outcome of an exhaustive axiom check: empty means every verified identity held.
struct CheckReport {
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  void fail(std::string msg) { failures.push_back(std::move(msg)); }
  void require(bool cond, const std::string& msg) {
    if (!cond) failures.push_back(msg);
  }
  void merge(const CheckReport& o, const std::string& prefix = "") {
    for (const auto& f : o.failures) failures.push_back(prefix.empty() ? f : prefix + ": " + f);
  }
  std::string str() const {
    if (ok()) return "ok";
    std::string s;
    for (const auto& f : failures) s += f + "\n";
    return s;
  }
};

}  // namespace opal
