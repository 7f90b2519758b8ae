#pragma once

// Self-check suites run by `locdens verify`. Each suite compares closed forms,
// recursions or engines against the enumeration oracle and records one entry
// per instance. Instances that do not fit the budget are skipped, not failed.

#include "locdens/oracle.hpp"
#include "locdens/padic.hpp"
#include "locdens/serialize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace locdens {

enum class CheckStatus { pass, fail, skipped, control };

std::string_view to_string(CheckStatus s);

struct CheckRecord {
  std::string suite;
  std::string instance;
  CheckStatus status = CheckStatus::pass;
  json detail;
};

struct VerifyOptions {
  EnumBudget budget{};
  std::optional<unsigned> d;
  std::optional<unsigned> n;
  std::optional<unsigned> nmax;
  std::optional<BigInt> a;
};

struct VerifyReport {
  std::vector<CheckRecord> records;

  std::size_t count(CheckStatus s) const;
  bool ok() const { return count(CheckStatus::fail) == 0; }
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite. "all" runs every suite.
VerifyReport run_verify(const std::string& suite, const VerifyOptions& options = {});

/// Records sorted by suite (generation order within a suite) plus a summary.
json report_json(const VerifyReport& report);

}  // namespace locdens
