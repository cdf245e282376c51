#include "pop/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pop/entropy.hpp"
#include "pop/extension.hpp"
#include "pop/generators.hpp"

namespace pop {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = seed ^ (a * 0x9e3779b97f4a7c15ull) ^ (b * 0xc2b2ae3d27d4eb4full);
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 33;
  return x;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, '+'))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

}  // namespace

FamilySpec FamilySpec::parse(const std::string& text) {
  FamilySpec spec;
  auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (colon != std::string::npos) {
    std::istringstream is(text.substr(colon + 1));
    std::string kv;
    while (std::getline(is, kv, ',')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("family spec: expected key=value");
      std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (key == "n")
        spec.n = std::stoi(val);
      else if (key == "k")
        spec.k = std::stoi(val);
      else if (key == "depth")
        spec.depth = std::stoi(val);
      else if (key == "p")
        spec.p = std::stod(val);
      else if (key == "ranks")
        spec.ranks = parse_int_list(val);
      else
        throw std::invalid_argument("family spec: unknown key '" + key + "'");
    }
  }
  if (spec.kind.empty()) throw std::invalid_argument("family spec: missing kind");
  return spec;
}

std::vector<FamilySpec> FamilySpec::parse_list(const std::string& text) {
  std::vector<FamilySpec> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ';'))
    if (!item.empty()) out.push_back(parse(item));
  return out;
}

std::string FamilySpec::display() const {
  std::ostringstream os;
  os << kind;
  if (kind == "chain" || kind == "antichain" || kind == "random" || kind == "selection" ||
      kind == "multiselection")
    os << ":n=" << n;
  if (kind == "selection") os << ",k=" << k;
  if (kind == "gk") os << ":k=" << k;
  if (kind == "heap") os << ":depth=" << depth;
  if (kind == "random") os << ",p=" << p;
  if (kind == "multiselection") {
    os << ",ranks=";
    for (std::size_t i = 0; i < ranks.size(); ++i) os << (i ? "+" : "") << ranks[i];
  }
  return os.str();
}

const char* BenchReport::csv_header() {
  return "family,n,trial,seed,comparisons,itlb_bits,itlb_kind,itlb_lo_bits,itlb_hi_bits,"
         "nHP_bits,nHW_bits,preprocess_ms,ordering_ms";
}

void BenchReport::write_csv(std::ostream& out) const {
  out << csv_header() << "\n";
  char buf[512];
  for (const auto& r : rows) {
    // Family specs contain commas, so that field is always quoted.
    std::snprintf(buf, sizeof(buf),
                  "\"%s\",%d,%d,%llu,%lld,%.10g,%s,%.10g,%.10g,%.10g,%.10g,%.6g,%.6g",
                  r.family.c_str(), r.n, r.trial, static_cast<unsigned long long>(r.seed),
                  static_cast<long long>(r.comparisons), r.itlb_bits, r.itlb_kind.c_str(),
                  r.itlb_lo_bits, r.itlb_hi_bits, r.nHP_bits, r.nHW_bits, r.preprocess_ms,
                  r.ordering_ms);
    out << buf << "\n";
  }
}

void BenchReport::write_json(std::ostream& out) const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"family", r.family},
                   {"n", r.n},
                   {"trial", r.trial},
                   {"seed", r.seed},
                   {"comparisons", r.comparisons},
                   {"itlb_bits", r.itlb_bits},
                   {"itlb_kind", r.itlb_kind},
                   {"itlb_lo_bits", r.itlb_lo_bits},
                   {"itlb_hi_bits", r.itlb_hi_bits},
                   {"nHP_bits", r.nHP_bits},
                   {"nHW_bits", r.nHW_bits},
                   {"preprocess_ms", r.preprocess_ms},
                   {"ordering_ms", r.ordering_ms}});
  }
  out << arr.dump(2) << "\n";
}

namespace {

// Exact log2 e(P) closed forms per family where available; falls back on the
// downset oracle below the brute limit, otherwise signals an estimate.
struct ItlbInfo {
  double bits = 0.0;
  bool exact = false;
  double lo = 0.0, hi = 0.0;
};

double log2_e_heap(int depth) {
  // Rooted forest hook formula: e = n! / prod(subtree sizes).
  int n = (1 << depth) - 1;
  double bits = log2_factorial(n);
  for (int d = 1; d <= depth; ++d) {
    int count = 1 << (d - 1);          // nodes at this level
    int subtree = (1 << (depth - d + 1)) - 1;
    bits -= count * std::log2(static_cast<double>(subtree));
  }
  return bits;
}

ItlbInfo itlb_for(const FamilySpec& spec, const Poset* p, const WeakOrder* w,
                  double greedy_entropy_bits, int n) {
  ItlbInfo info;
  double log2_nf = log2_factorial(n);
  if (spec.kind == "chain") {
    info = {log2_nf, true, 0, 0};
  } else if (spec.kind == "antichain") {
    info = {0.0, true, 0, 0};
  } else if (w != nullptr) {
    info = {log2_nf - w->log2_extension_count(), true, 0, 0};
  } else if (spec.kind == "heap") {
    info = {log2_nf - log2_e_heap(spec.depth), true, 0, 0};
  } else if (p != nullptr && n <= kBruteLimit) {
    info = {itlb_bits(*p), true, 0, 0};
  } else {
    // nH upper proxy from the greedy point, with the sandwich band around it.
    double nh = n * greedy_entropy_bits;
    double band = n * std::log2(std::exp(1.0));
    info = {nh, false, std::max(0.0, nh - band), nh + band};
  }
  if (info.exact) {
    info.lo = info.bits;
    info.hi = info.bits;
  }
  return info;
}

}  // namespace

BenchReport run_bench(const std::vector<FamilySpec>& specs, const BenchOptions& opts) {
  BenchReport report;
  for (std::size_t si = 0; si < specs.size(); ++si) {
    const FamilySpec& spec = specs[si];

    // Weak-order families with known layers can skip the dense pipeline once
    // they outgrow it; the ordering phase is identical either way.
    std::optional<WeakOrder> family_weak;
    if (spec.kind == "selection")
      family_weak = weak_order_for_selection(spec.n, spec.k);
    else if (spec.kind == "multiselection")
      family_weak = weak_order_for_ranks(spec.n, spec.ranks);
    else if (spec.kind == "chain" && spec.n > opts.dense_limit) {
      std::vector<int> sizes(spec.n, 1);
      family_weak = WeakOrder::from_layer_sizes(sizes);
    } else if (spec.kind == "antichain" && spec.n > opts.dense_limit) {
      std::vector<int> sizes{spec.n};
      family_weak = WeakOrder::from_layer_sizes(sizes);
    }

    bool direct = family_weak.has_value() && spec.n > opts.dense_limit;

    std::optional<Poset> poset;
    std::optional<GreedyExtension> ext;
    double preprocess_ms = 0.0;
    int n = spec.n;
    if (!direct) {
      if (spec.kind == "chain")
        poset = gen_chain(spec.n);
      else if (spec.kind == "antichain")
        poset = gen_antichain(spec.n);
      else if (spec.kind == "selection" || spec.kind == "multiselection")
        poset = family_weak->to_poset();
      else if (spec.kind == "heap")
        poset = gen_heap(spec.depth);
      else if (spec.kind == "random")
        poset = gen_random(spec.n, spec.p, mix_seed(opts.seed, si, 0xabcd));
      else if (spec.kind == "gk")
        poset = gen_gk(spec.k).poset();
      else
        throw std::invalid_argument("unknown family kind: " + spec.kind);
      n = poset->size();
      auto t0 = Clock::now();
      ext = greedy_weak_extension(*poset);
      preprocess_ms = ms_since(t0);
    }

    const WeakOrder& weak = direct ? *family_weak : ext->weak;
    double nHW = n * weak_order_entropy_bits(weak);
    double greedy_h =
        direct ? weak_order_entropy_bits(weak) : ext->point.entropy_bits;
    ItlbInfo itlb = itlb_for(spec, poset ? &*poset : nullptr,
                             family_weak ? &*family_weak : nullptr, greedy_h, n);

    for (int trial = 0; trial < opts.trials; ++trial) {
      std::uint64_t trial_seed = mix_seed(opts.seed, si, trial);
      ComparisonOracle oracle = ComparisonOracle::from_seed(n, trial_seed);
      BenchRow row;
      row.family = spec.display();
      row.n = n;
      row.trial = trial;
      row.seed = trial_seed;
      auto t0 = Clock::now();
      if (direct) {
        MultiselectResult sel = multiselect(oracle, weak.cut_ranks(), opts.mode, trial_seed);
        (void)sel;
        row.comparisons = oracle.count();
      } else {
        Production prod = produce(*ext, oracle, opts.mode, trial_seed);
        row.comparisons = prod.comparisons;
      }
      row.ordering_ms = ms_since(t0);
      row.preprocess_ms = preprocess_ms;
      row.itlb_bits = itlb.bits;
      row.itlb_kind = itlb.exact ? "exact" : "estimate";
      row.itlb_lo_bits = itlb.lo;
      row.itlb_hi_bits = itlb.hi;
      row.nHP_bits = n * greedy_h;
      row.nHW_bits = nHW;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace pop
