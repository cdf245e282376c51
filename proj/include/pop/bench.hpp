#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pop/multiselect.hpp"
#include "pop/poset.hpp"

namespace pop {

// One benchmark instance description, parsed from strings like
// "chain:n=8", "random:n=12,p=0.3", "selection:n=100,k=5",
// "multiselection:n=1000,ranks=100+500+900", "heap:depth=4", "gk:k=6".
struct FamilySpec {
  std::string kind;
  int n = 0;
  int k = 0;
  int depth = 0;
  double p = 0.5;
  std::vector<int> ranks;

  static FamilySpec parse(const std::string& text);
  static std::vector<FamilySpec> parse_list(const std::string& text);  // ';' separated
  std::string display() const;
};

struct BenchRow {
  std::string family;
  int n = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::int64_t comparisons = 0;
  double itlb_bits = 0.0;
  std::string itlb_kind;  // "exact" or "estimate"
  double itlb_lo_bits = 0.0;
  double itlb_hi_bits = 0.0;
  double nHP_bits = 0.0;  // n times the greedy-point entropy of the target
  double nHW_bits = 0.0;  // n times the layer entropy of the produced weak order
  double preprocess_ms = 0.0;
  double ordering_ms = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;
  static const char* csv_header();
};

struct BenchOptions {
  int trials = 3;
  std::uint64_t seed = 1;
  PivotMode mode = PivotMode::seeded_random;
  // Weak-order families above this size skip the dense pipeline and go to
  // multiselect with their defining ranks directly.
  int dense_limit = 4096;
};

BenchReport run_bench(const std::vector<FamilySpec>& specs, const BenchOptions& opts);

}  // namespace pop
