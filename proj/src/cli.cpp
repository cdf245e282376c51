#include "pop/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pop/bench.hpp"
#include "pop/entropy.hpp"
#include "pop/extension.hpp"
#include "pop/generators.hpp"
#include "pop/multiselect.hpp"
#include "pop/selfcheck.hpp"

namespace pop {

namespace {

using nlohmann::ordered_json;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("POSET_PRODUCE_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::invalid_argument("cannot open output file: " + path);
  return file;
}

Poset poset_from_spec(const FamilySpec& spec, std::uint64_t seed) {
  if (spec.kind == "chain") return gen_chain(spec.n);
  if (spec.kind == "antichain") return gen_antichain(spec.n);
  if (spec.kind == "selection") return gen_selection(spec.n, spec.k);
  if (spec.kind == "multiselection") return gen_multiselection(spec.n, spec.ranks);
  if (spec.kind == "heap") return gen_heap(spec.depth);
  if (spec.kind == "random") return gen_random(spec.n, spec.p, seed);
  if (spec.kind == "gk") return gen_gk(spec.k).poset();
  throw std::invalid_argument("unknown family: " + spec.kind);
}

std::vector<int> read_permutation_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open permutation file: " + path);
  std::vector<int> perm;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int x;
    while (ls >> x) perm.push_back(x);
  }
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permutation file holds " + std::to_string(perm.size()) +
                                " entries, poset has " + std::to_string(n));
  return perm;
}

ordered_json sets_to_json(const std::vector<std::vector<int>>& sets) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : sets) arr.push_back(s);
  return arr;
}

void print_sets(std::ostream& out, const std::string& label,
                const std::vector<std::vector<int>>& sets) {
  out << label << ":";
  for (const auto& s : sets) {
    out << " {";
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
    out << "}";
  }
  out << "\n";
}

int cmd_gen(const FamilySpec& spec, std::uint64_t seed, const std::string& out_path) {
  Poset p = poset_from_spec(spec, seed);
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << "# family " << spec.display() << "\n";
  write_poset(out, p);
  return 0;
}

int cmd_entropy(const std::string& poset_path, const std::string& mode_name, double tol,
                int iters, bool as_json, const std::string& out_path) {
  Poset p = load_poset_file(poset_path);
  EntropyMode mode =
      mode_name == "complement" ? EntropyMode::complement : EntropyMode::comparability;
  auto dec = greedy_antichain_decomposition(p);
  StabPoint point = p.size() ? greedy_point(dec, p.size()) : StabPoint{};
  bool have_exact = mode == EntropyMode::complement || p.size() <= kBruteLimit;
  EntropyResult res;
  if (have_exact) res = entropy_exact(p, mode, {iters, tol, false});

  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  char buf[128];
  if (as_json) {
    ordered_json j{{"n", p.size()},
                   {"mode", mode_name},
                   {"greedy_entropy_bits", point.entropy_bits}};
    if (have_exact) {
      j["entropy_bits"] = res.value_bits;
      j["gap_bits"] = res.gap_bits;
      j["iterations"] = res.iterations;
      j["converged"] = res.converged;
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "n " << p.size() << "\n";
  std::snprintf(buf, sizeof(buf), "greedy_entropy_bits %.4f\n", point.entropy_bits);
  out << buf;
  if (have_exact) {
    std::snprintf(buf, sizeof(buf), "entropy_bits %.4f\n", res.value_bits);
    out << buf;
    std::snprintf(buf, sizeof(buf), "gap_bits %.6g\niterations %d\nconverged %s\n", res.gap_bits,
                  res.iterations, res.converged ? "true" : "false");
    out << buf;
  } else {
    out << "entropy_bits unavailable (n above the exact-oracle limit in comparability mode)\n";
  }
  return 0;
}

int cmd_extend(const std::string& poset_path, bool as_json, const std::string& out_path) {
  Poset p = load_poset_file(poset_path);
  GreedyExtension ext = greedy_weak_extension(p);
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  if (as_json) {
    ordered_json j;
    j["n"] = p.size();
    j["first_decomposition"] = sets_to_json(ext.first_dec.sets);
    j["greedy_point"] = {{"den", ext.point.den}, {"num", ext.point.num}};
    j["potential"] = {{"den", ext.potential.den},
                      {"below", ext.potential.below},
                      {"above", ext.potential.above}};
    j["interval_order"] = {{"den", ext.interval.den},
                           {"left", ext.interval.left},
                           {"right", ext.interval.right}};
    j["second_decomposition"] = sets_to_json(ext.second_dec.sets);
    j["sigma"] = ext.sigma;
    j["layers"] = sets_to_json(ext.weak.layers);
    j["weak_entropy_bits"] = weak_order_entropy_bits(ext.weak);
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "n " << p.size() << "\n";
  print_sets(out, "first_decomposition", ext.first_dec.sets);
  out << "greedy_point_den " << ext.point.den << "\n";
  print_sets(out, "second_decomposition", ext.second_dec.sets);
  out << "sigma:";
  for (int s : ext.sigma) out << ' ' << s;
  out << "\n";
  print_sets(out, "layers", ext.weak.layers);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "weak_entropy_bits %.4f\n", weak_order_entropy_bits(ext.weak));
  out << buf;
  return 0;
}

int cmd_produce(const std::string& poset_path, const std::string& hidden_path, std::uint64_t seed,
                const std::string& pivot, bool as_json, const std::string& out_path) {
  Poset p = load_poset_file(poset_path);
  ComparisonOracle oracle =
      hidden_path.empty()
          ? ComparisonOracle::from_seed(p.size(), seed)
          : ComparisonOracle(read_permutation_file(hidden_path, p.size()));
  PivotMode mode =
      pivot == "mom" ? PivotMode::median_of_medians : PivotMode::seeded_random;
  GreedyExtension ext = greedy_weak_extension(p);
  Production prod = produce(ext, oracle, mode, seed);
  bool ok = verify_production(p, oracle.hidden_ranks(), prod.pi);

  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  if (as_json) {
    ordered_json j{{"n", p.size()},
                   {"pi", prod.pi},
                   {"comparisons", prod.comparisons},
                   {"verified", ok},
                   {"layers", sets_to_json(ext.weak.layers)}};
    out << j.dump(2) << "\n";
  } else {
    out << "pi:";
    for (int t : prod.pi) out << ' ' << t;
    out << "\ncomparisons " << prod.comparisons << "\nverified " << (ok ? "true" : "false")
        << "\n";
  }
  return ok ? 0 : 2;
}

int cmd_bench(const std::string& families, int trials, std::uint64_t seed,
              const std::string& pivot, const std::string& format, const std::string& out_path) {
  auto specs = FamilySpec::parse_list(families);
  if (specs.empty()) throw std::invalid_argument("bench: no families given");
  BenchOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  opts.mode = pivot == "mom" ? PivotMode::median_of_medians : PivotMode::seeded_random;
  BenchReport report = run_bench(specs, opts);
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  if (format == "json")
    report.write_json(out);
  else
    report.write_csv(out);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"partial order production: preprocessing pipeline, multiselect ordering, "
               "entropy tools and benchmarks"};
  app.require_subcommand(1);

  std::string family_text, out_path, poset_path, hidden_path, pivot = "random";
  std::string mode_name = "comparability", format = "csv";
  std::uint64_t seed = default_seed();
  double tol = 1e-5;
  int iters = 200000, trials = 3;
  bool as_json = false, quick = false;

  auto* gen = app.add_subcommand("gen", "generate a poset file for a named family");
  gen->add_option("--family", family_text,
                  "family spec, e.g. chain:n=5 | random:n=12,p=0.3 | gk:k=4")
      ->required();
  gen->add_option("--seed", seed, "seed for random families");
  gen->add_option("--out,-o", out_path, "output path (default stdout)");

  auto* ent = app.add_subcommand("entropy", "greedy and exact entropy of a poset");
  ent->add_option("--poset", poset_path, "poset file")->required();
  ent->add_option("--mode", mode_name, "comparability | complement")
      ->check(CLI::IsMember({"comparability", "complement"}));
  ent->add_option("--tol", tol, "target gap in bits");
  ent->add_option("--iters", iters, "iteration cap");
  ent->add_flag("--json", as_json, "JSON output");
  ent->add_option("--out,-o", out_path, "output path (default stdout)");

  auto* ext = app.add_subcommand("extend", "weak order extension with the full trace");
  ext->add_option("--poset", poset_path, "poset file")->required();
  ext->add_flag("--json", as_json, "JSON output");
  ext->add_option("--out,-o", out_path, "output path (default stdout)");

  auto* prod = app.add_subcommand("produce", "order hidden data into the target poset");
  prod->add_option("--poset", poset_path, "poset file")->required();
  prod->add_option("--hidden", hidden_path, "hidden permutation file (default: from seed)");
  prod->add_option("--seed", seed, "seed for the hidden permutation and pivots");
  prod->add_option("--pivot", pivot, "random | mom")->check(CLI::IsMember({"random", "mom"}));
  prod->add_flag("--json", as_json, "JSON output");
  prod->add_option("--out,-o", out_path, "output path (default stdout)");

  auto* bench = app.add_subcommand("bench", "comparisons versus the lower bound per family");
  bench->add_option("--families", family_text, "';'-separated family specs")->required();
  bench->add_option("--trials", trials, "trials per instance");
  bench->add_option("--seed", seed, "base seed");
  bench->add_option("--pivot", pivot, "random | mom")->check(CLI::IsMember({"random", "mom"}));
  bench->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--out,-o", out_path, "output path (default stdout)");

  auto* self = app.add_subcommand("selfcheck", "run the invariant corpus");
  self->add_flag("--quick", quick, "smaller corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return cmd_gen(FamilySpec::parse(family_text), seed, out_path);
    if (ent->parsed()) return cmd_entropy(poset_path, mode_name, tol, iters, as_json, out_path);
    if (ext->parsed()) return cmd_extend(poset_path, as_json, out_path);
    if (prod->parsed())
      return cmd_produce(poset_path, hidden_path, seed, pivot, as_json, out_path);
    if (bench->parsed()) return cmd_bench(family_text, trials, seed, pivot, format, out_path);
    if (self->parsed()) return run_selfcheck(std::cout, quick) == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"pop"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace pop
