#pragma once

#include <random>
#include <string>
#include <vector>

#include "u21/classify.hpp"

namespace u21 {

/// Seeded generators for the property suites.  Heights are kept small so
/// random products stay far from the precision ceiling.
class RandomSource {
 public:
  explicit RandomSource(unsigned long seed) : rng_(seed) {}

  long rint(long lo, long hi);  // inclusive

  LocalElem local_unit(const Ctx& ctx, long vlo, long vhi);
  LocalElem local_any(const Ctx& ctx, long vlo, long vhi);  // may be zero
  ExtElem ext_unit(const Ctx& ctx, long vlo, long vhi);
  ExtElem ext_any(const Ctx& ctx, long vlo, long vhi);
  ExtElem unit_scalar(const Ctx& ctx) { return ext_unit(ctx, 0, 0); }
  /// Random element of E^1 (Hilbert 90: h / conj(h)).
  ExtElem norm_one(const Ctx& ctx);
  /// Random element of E^1 in 1 + p^n.
  ExtElem norm_one_level(const Ctx& ctx, long n);

  BorelElt borel(const Ctx& ctx);
  /// Random word in the K_n generator set (verified member).
  GroupElt kn_elt(const Ctx& ctx, long n, int len = 3);

 private:
  std::mt19937_64 rng_;
};

struct CheckRecord {
  std::string name;      // canonical sort key
  std::string claim;     // the identity or property being checked
  std::string inputs;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct RunConfig {
  long p = 3;
  unsigned M = 24;
  unsigned terms = 24;
  unsigned long seed = 0;
  unsigned samples = 100;
  std::vector<std::string> suites;
  std::string out_dir;
};

struct Report {
  RunConfig config;
  std::vector<CheckRecord> records;
  long wall_ms = 0;

  size_t passed() const;
  size_t failed() const;
  /// Deterministic body: config echo, sorted records, summary.
  std::string body() const;
  /// Header with the wall clock, kept out of the deterministic body.
  std::string header() const;
};

const std::vector<std::string>& all_suite_names();

/// Runs one named suite, appending records.  DomainError on unknown names.
void run_suite(const std::string& name, const RunConfig& config,
               std::vector<CheckRecord>& out);

/// Runs config.suites (all when empty) and assembles the report.
Report run_verification(const RunConfig& config);

/// Writes header + body to <out_dir>/<file>; returns the path.
std::string write_report(const Report& report);

}  // namespace u21
