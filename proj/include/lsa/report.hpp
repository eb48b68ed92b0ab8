#pragma once

#include <string>
#include <vector>

namespace lsa {

/// One failing identity instance: where it failed and the nonzero residual.
struct Witness {
  std::string at;
  std::string residual;
};

/// Outcome of a structural check. Carries the first failing witness (ties
/// broken by lexicographic basis-index order) plus a total failure count.
struct Report {
  std::string check;
  bool pass = true;
  int failures = 0;
  std::vector<Witness> witnesses;  // first witness only, by construction
  std::vector<std::string> notes;

  explicit Report(std::string name = "") : check(std::move(name)) {}

  void fail(const std::string& at, const std::string& residual) {
    pass = false;
    ++failures;
    if (witnesses.empty()) witnesses.push_back({at, residual});
  }

  void note(const std::string& n) { notes.push_back(n); }

  void merge(const Report& sub) {
    if (!sub.pass) {
      pass = false;
      failures += sub.failures;
      if (witnesses.empty() && !sub.witnesses.empty())
        witnesses.push_back({sub.check + " " + sub.witnesses[0].at,
                             sub.witnesses[0].residual});
    }
    for (const auto& n : sub.notes) notes.push_back(sub.check + ": " + n);
  }

  std::string summary() const {
    std::string s = check + ": " + (pass ? "pass" : "FAIL");
    if (!pass && !witnesses.empty())
      s += " at " + witnesses[0].at + ", residual " + witnesses[0].residual;
    return s;
  }
};

}  // namespace lsa
