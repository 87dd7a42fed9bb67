#pragma once

#include "tf/dsl.hpp"

#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tf::reg {

// Environment handed to a verification routine: the evaluation context, the
// x-window, and the negative-control flag (when set the routine must flip
// exactly one coefficient sign somewhere on the right-hand side, so a healthy
// identity is required to report a mismatch).
struct CheckEnv {
  Ctx c;
  long L = 0, U = 0;
  bool mutate = false;
};

using NativeCheck = std::function<std::optional<Mismatch>(const CheckEnv&)>;

constexpr long kNoWindow = LONG_MAX;

// One registered identity. Verification evaluates every lhs/rhs expression
// pair through the expression language and/or runs the native routine; all
// parts must agree for a pass. Records are immutable after registration.
struct IdentityRecord {
  std::string id;
  std::string title;
  std::string cite;
  std::string strategy;  // ENTIRE_COMPARE | WINDOWED_COMPARE | QSERIES_COMPARE | MATRIX_COMPARE
  std::vector<std::string> tags;
  bool conjectural = false;

  long order = 40;               // default truncation order (integer q-units)
  long L = kNoWindow, U = kNoWindow;  // default window; unset -> [-2N, 2N]
  long D = 1;                    // exponent denominator for evaluation

  std::vector<std::pair<std::string, std::string>> pairs;  // DSL lhs / rhs
  NativeCheck native;  // optional; may coexist with pairs

  bool hasTag(const std::string& t) const;
};

struct VerificationReport {
  std::string id;
  std::string status;  // "pass" | "fail" | "error"
  long order = 0;
  long L = 0, U = 0;
  long D = 1;
  bool conjectural = false;
  std::optional<Mismatch> mismatch;
  std::string error;  // set when status == "error"
  double millis = 0.0;

  std::string json() const;
  std::string line() const;  // one-line human-readable form
};

class Registry {
 public:
  Registry();  // loads the built-in records

  // Parses an identity file (see dsl::parseIdentityFile) and registers each
  // record; throws on a duplicate id.
  void addFromFile(const std::string& text);

  const IdentityRecord* find(const std::string& id) const;
  const std::vector<IdentityRecord>& all() const { return recs_; }
  std::vector<const IdentityRecord*> withTag(const std::string& tag) const;

  // Verifies one identity. order <= 0 and an empty window use the record's
  // defaults. Thread-safe: no shared mutable state.
  VerificationReport verify(const std::string& id, long order = 0,
                            std::optional<std::pair<long, long>> window = std::nullopt,
                            bool mutate = false) const;
  VerificationReport verify(const IdentityRecord& rec, long order = 0,
                            std::optional<std::pair<long, long>> window = std::nullopt,
                            bool mutate = false) const;

  struct Summary {
    long passed = 0, failed = 0, errored = 0;
    long conjecturalFailed = 0;  // failures of records flagged conjectural
    std::vector<VerificationReport> reports;  // in registration order
    // True when nothing failed apart from conjectural records.
    bool ok() const { return failed == 0 && errored == 0; }
  };

  // Verifies every record (optionally restricted to a tag) on a bounded
  // worker pool; reports are merged deterministically in registration order.
  Summary verifyAll(long order = 0, const std::string& tag = "",
                    unsigned workers = 0) const;

 private:
  std::vector<IdentityRecord> recs_;
  std::map<std::string, size_t> index_;
  void add(IdentityRecord r);
  void addBuiltins();
};

}  // namespace tf::reg
