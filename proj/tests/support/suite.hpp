#pragma once

// Randomized check suites shared by the Catch2 property tests and the
// acceptance binary. Each suite counts instances and records the first
// failure; it never throws on a failed check.

#include <sstream>
#include <string>

namespace suite {

struct Outcome {
  int instances = 0;
  int failures = 0;
  std::string first_failure;

  void fail(const std::string &why) {
    if (failures++ == 0)
      first_failure = why;
  }
  bool ok() const { return failures == 0; }

  void merge(const Outcome &o) {
    instances += o.instances;
    if (!o.ok() && ok())
      first_failure = o.first_failure;
    failures += o.failures;
  }

  std::string summary() const {
    std::ostringstream s;
    s << instances << " instances, " << failures << " failures";
    if (!ok())
      s << " (first: " << first_failure << ")";
    return s.str();
  }
};

/// Runs body(outcome, label) and turns an escaping exception into a failure.
template <class F> void guarded(Outcome &o, const std::string &label, F &&body) {
  try {
    body();
  } catch (const std::exception &e) {
    o.fail(label + ": threw " + e.what());
  }
}

} // namespace suite
