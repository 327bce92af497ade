#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace laver {

/// One counterexample from a check sweep.
struct CheckFailure {
  std::vector<std::uint64_t> input;
  std::string expected;
  std::string actual;
};

/// Outcome of one verification sweep: how many cases ran and which failed.
/// Only a bounded sample of failures is stored; failure_count is exact.
struct CheckReport {
  static constexpr std::size_t max_stored_failures = 25;

  std::string suite;
  std::uint64_t cases = 0;
  std::uint64_t failure_count = 0;
  std::vector<CheckFailure> failures;

  bool passed() const { return failure_count == 0; }

  void fail(std::vector<std::uint64_t> input, std::string expected, std::string actual) {
    ++failure_count;
    if (failures.size() < max_stored_failures)
      failures.push_back({std::move(input), std::move(expected), std::move(actual)});
  }

  void merge(const CheckReport& other) {
    cases += other.cases;
    failure_count += other.failure_count;
    for (const auto& f : other.failures) {
      if (failures.size() >= max_stored_failures) break;
      failures.push_back(f);
    }
  }

  std::string summary() const {
    std::ostringstream os;
    os << (passed() ? "pass" : "FAIL") << " " << suite << ": " << cases << " cases";
    if (!passed()) {
      os << ", " << failure_count << " failures";
      if (!failures.empty()) {
        os << "; first at (";
        for (std::size_t i = 0; i < failures[0].input.size(); ++i)
          os << (i ? "," : "") << failures[0].input[i];
        os << ") expected " << failures[0].expected << " got " << failures[0].actual;
      }
    }
    return os.str();
  }
};

}  // namespace laver
