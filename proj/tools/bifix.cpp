// Command-line front-end: generation of the canonical transformation sets,
// DFA analysis, the case-map audit, the uniqueness computation, and the
// reproduction harness.
//
// Exit codes: 0 success, 1 check failure, 2 usage/parse error, 3 resource
// guard.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"

#include "bifix/conflicts.hpp"
#include "bifix/io.hpp"
#include "bifix/phi.hpp"
#include "bifix/random_dfa.hpp"
#include "bifix/semigroup.hpp"

using nlohmann::ordered_json;
using namespace bifix;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResourceGuard = 3;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit_report(const std::string& command, ordered_json inputs, ordered_json results,
                 double seconds, std::optional<std::uint64_t> seed = std::nullopt) {
  ordered_json report;
  report["command"] = command;
  report["inputs"] = std::move(inputs);
  report["results"] = std::move(results);
  report["timing_seconds"] = seconds;
  if (seed) report["seed"] = *seed;
  std::cout << report.dump(2) << "\n";
}

struct NRange {
  int lo = 0;
  int hi = 0;
};

// "7" or "4..8"
NRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  NRange range;
  if (dots == std::string::npos) {
    range.lo = range.hi = std::stoi(text);
  } else {
    range.lo = std::stoi(text.substr(0, dots));
    range.hi = std::stoi(text.substr(dots + 2));
  }
  if (range.lo > range.hi) throw CLI::ValidationError("--n", "empty range");
  return range;
}

std::optional<CacheDir> open_cache(const std::string& flag_value) {
  // The environment variable overrides the flag.
  if (const char* env = std::getenv("BIFIX_CACHE_DIR"); env && *env) {
    return CacheDir(env);
  }
  if (!flag_value.empty()) return CacheDir(flag_value);
  return std::nullopt;
}

Semigroup generate_set(const std::string& name, int n, bool force,
                       const std::optional<CacheDir>& cache) {
  if (cache) {
    if (auto hit = cache->load(name, n)) return parse_transformation_set(*hit);
  }
  Semigroup s;
  if (name == "bbf") {
    s = enumerate_bbf(n, force);
  } else if (name == "wge6") {
    s = enumerate_wge6(n);
  } else if (name == "wle5") {
    s = enumerate_wle5(n, force);
  } else if (name == "witness-letters") {
    s = Semigroup::from_elements(n, witness_dfa(n).delta);
  } else {
    throw CLI::ValidationError("set", "unknown set " + name);
  }
  if (cache) cache->store(name, n, format_transformation_set(s));
  return s;
}

ordered_json census_json(const std::vector<PairStatus>& census) {
  int colliding = 0;
  int focused = 0;
  for (const auto& st : census) {
    colliding += st.colliding() ? 1 : 0;
    focused += st.focused() ? 1 : 0;
  }
  ordered_json j;
  j["pairs"] = census.size();
  j["colliding"] = colliding;
  j["focused"] = focused;
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"verification toolkit for the syntactic complexity of bifix-free languages"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  std::string cache_flag;
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_option("--cache-dir", cache_flag,
                 "directory for cached enumerations (or BIFIX_CACHE_DIR)");

  // gen
  auto* gen = app.add_subcommand("gen", "enumerate a canonical transformation set");
  std::string gen_set;
  int gen_n = 0;
  std::string gen_out;
  bool gen_force = false;
  gen->add_option("set", gen_set, "bbf | wge6 | wle5 | witness-letters")->required();
  gen->add_option("--n", gen_n, "state count")->required();
  gen->add_option("--out", gen_out, "write the set in line format");
  gen->add_flag("--force", gen_force, "allow the large n = 8 enumerations");

  // closure
  auto* closure = app.add_subcommand("closure", "close a transformation set");
  std::string closure_in, closure_out;
  closure->add_option("--in", closure_in, "input set in line format")->required();
  closure->add_option("--out", closure_out, "write the closure in line format");

  // witness
  auto* witness = app.add_subcommand("witness", "emit the witness DFA");
  int witness_n = 0;
  std::string witness_out;
  witness->add_option("--n", witness_n, "state count")->required();
  witness->add_option("--out", witness_out, "write the DFA as JSON");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "analyze a DFA");
  std::string analyze_dfa;
  analyze->add_option("--dfa", analyze_dfa, "DFA JSON file")->required();

  // phi
  auto* phi_cmd = app.add_subcommand("phi", "classify and map transformations");
  int phi_n = 0;
  std::string phi_dfa, phi_set, phi_out;
  bool phi_audit = false;
  int phi_random = 0;
  std::uint64_t phi_seed = 0;
  phi_cmd->add_option("--n", phi_n, "state count")->required();
  phi_cmd->add_option("--dfa", phi_dfa, "DFA JSON file; uses its transition semigroup");
  phi_cmd->add_option("--set", phi_set, "transformation set in line format");
  phi_cmd->add_flag("--audit", phi_audit, "verify injectivity and codomain membership");
  phi_cmd->add_option("--random-dfas", phi_random,
                      "audit this many sampled minimal bifix-free DFAs instead");
  phi_cmd->add_option("--seed", phi_seed, "sampler seed");
  phi_cmd->add_option("--out", phi_out, "write per-element records as JSON lines");

  // uniqueness
  auto* uniq = app.add_subcommand("uniqueness", "run the conflict-graph pruning");
  int uniq_n = 0;
  std::string uniq_trace;
  bool uniq_csv = false;
  bool uniq_union = false;
  uniq->add_option("--n", uniq_n, "state count")->required();
  uniq->add_option("--trace", uniq_trace, "write the full trace as JSON");
  uniq->add_flag("--csv", uniq_csv, "print the size table as CSV");
  uniq->add_flag("--union-census", uniq_union,
                 "strengthen conflict reason (c) to the mixed colliding-or-focused census");

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "run a named check suite");
  std::string repro_target, repro_range;
  bool repro_csv = false;
  reproduce
      ->add_option("target", repro_target,
                   "prop-witness | prop-alphabet | theorem-bound | theorem-unique | small-n")
      ->required();
  reproduce->add_option("--n", repro_range, "state count or range a..b")->required();
  reproduce->add_flag("--csv", repro_csv, "print the size table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  const auto cache = open_cache(cache_flag);

  if (*gen) {
    Timer timer;
    const auto s = generate_set(gen_set, gen_n, gen_force, cache);
    if (!gen_out.empty()) write_transformation_set(gen_out, s);
    ordered_json results;
    results["count"] = s.size();
    emit_report("gen", {{"set", gen_set}, {"n", gen_n}, {"out", gen_out}},
                std::move(results), timer.seconds());
    return kExitOk;
  }

  if (*closure) {
    Timer timer;
    const auto input = read_transformation_set(closure_in);
    const auto closed = close(input.elements());
    if (!closure_out.empty()) write_transformation_set(closure_out, closed);
    ordered_json results;
    results["generators"] = input.size();
    results["count"] = closed.size();
    emit_report("closure", {{"in", closure_in}, {"out", closure_out}},
                std::move(results), timer.seconds());
    return kExitOk;
  }

  if (*witness) {
    Timer timer;
    const auto d = witness_dfa(witness_n);
    if (!witness_out.empty()) write_dfa_json(witness_out, d);
    ordered_json results;
    results["n"] = d.n;
    results["alphabet"] = d.alphabet_size();
    emit_report("witness", {{"n", witness_n}, {"out", witness_out}},
                std::move(results), timer.seconds());
    return kExitOk;
  }

  if (*analyze) {
    Timer timer;
    const auto d = read_dfa_json(analyze_dfa);
    ordered_json results;
    results["n"] = d.n;
    results["alphabet"] = d.alphabet_size();
    results["minimal"] = is_minimal(d);
    if (!results["minimal"].get<bool>()) {
      emit_report("analyze", {{"dfa", analyze_dfa}}, std::move(results),
                  timer.seconds());
      return kExitOk;
    }
    const auto report = bifix_report(d);
    results["prefix_free"] = report.prefix_free;
    results["suffix_free"] = report.suffix_free;
    results["bifix_free"] = report.bifix_free();
    auto& violations = results["structural_violations"] = ordered_json::array();
    for (const auto& violation : report.violations) {
      violations.push_back(
          {{"condition", violation.condition}, {"detail", violation.detail}});
    }
    const auto T = transition_semigroup(d);
    results["syntactic_complexity"] = T.size();
    if (d.n >= 4) {
      const auto norm = report.bifix_free() ? normalize_bifix(d) : d;
      results["pair_census"] = census_json(pair_statuses(transition_semigroup(norm)));
    }
    const std::uint64_t bound =
        d.n >= 6 ? wge6_cardinality(d.n)
                 : (d.n >= 3 ? enumerate_wle5(d.n).size() : 1);
    results["bound"] = bound;
    results["meets_bound"] = T.size() == bound;
    emit_report("analyze", {{"dfa", analyze_dfa}}, std::move(results), timer.seconds());
    return kExitOk;
  }

  if (*phi_cmd) {
    Timer timer;
    ordered_json inputs{{"n", phi_n}, {"dfa", phi_dfa}, {"set", phi_set},
                        {"audit", phi_audit}, {"random_dfas", phi_random}};
    ordered_json results;
    if (phi_n < 8) results["warning"] = "injectivity is only guaranteed for n >= 8";

    if (phi_random > 0) {
      BifixDfaSampler sampler(phi_n);
      std::mt19937_64 rng(phi_seed);
      std::uniform_int_distribution<int> letters(2, 4);
      int injective = 0;
      int with_collisions = 0;
      std::size_t max_size = 0;
      for (int i = 0; i < phi_random; ++i) {
        const auto d = sampler.sample(letters(rng), rng);
        if (!d) {
          results["error"] = "sampler exhausted the rejection budget";
          emit_report("phi", std::move(inputs), std::move(results), timer.seconds(),
                      phi_seed);
          return kExitCheckFailure;
        }
        const auto audit = audit_injectivity(transition_semigroup(*d), threads);
        injective += audit.injective ? 1 : 0;
        with_collisions += audit.has_colliding_pair ? 1 : 0;
        max_size = std::max(max_size, audit.domain_size);
      }
      results["dfas"] = phi_random;
      results["injective"] = injective;
      results["with_colliding_pair"] = with_collisions;
      results["largest_semigroup"] = max_size;
      emit_report("phi", std::move(inputs), std::move(results), timer.seconds(),
                  phi_seed);
      return injective == phi_random ? kExitOk : kExitCheckFailure;
    }

    Semigroup T;
    if (!phi_dfa.empty()) {
      T = transition_semigroup(read_dfa_json(phi_dfa));
    } else if (!phi_set.empty()) {
      T = read_transformation_set(phi_set);
    } else {
      throw CLI::ValidationError("phi", "need --dfa, --set or --random-dfas");
    }
    if (T.n() != phi_n) {
      throw CLI::ValidationError("--n", "input has n = " + std::to_string(T.n()));
    }
    std::ofstream record_file;
    std::ostream* records = &std::cout;
    if (!phi_out.empty()) {
      record_file.open(phi_out);
      records = &record_file;
    }
    std::map<std::string, std::size_t> histogram;
    for (const auto& t : T.elements()) {
      const auto cls = classify(t);
      const auto s = phi(t, cls);
      ++histogram[to_string(cls.label)];
      ordered_json record;
      record["t"] = t.to_string();
      record["label"] = to_string(cls.label);
      record["subsubcase"] = to_string(cls.sub);
      record["s"] = s.to_string();
      (*records) << record.dump() << "\n";
    }
    results["count"] = T.size();
    results["labels"] = histogram;
    if (phi_audit) {
      const auto audit = audit_injectivity(T, threads);
      ordered_json a;
      a["injective"] = audit.injective;
      a["image_in_wge6"] = audit.image_in_wge6;
      a["image_size"] = audit.image_size;
      a["collisions"] = ordered_json::array();
      for (const auto& col : audit.collisions) {
        a["collisions"].push_back({{"t1", col.a.to_string()},
                                   {"t2", col.b.to_string()},
                                   {"s", col.s.to_string()},
                                   {"label1", to_string(col.label_a)},
                                   {"label2", to_string(col.label_b)}});
      }
      a["has_colliding_pair"] = audit.has_colliding_pair;
      if (audit.strict_bound_holds) a["strict_bound_holds"] = *audit.strict_bound_holds;
      if (audit.sentinel_absent) a["sentinel_absent"] = *audit.sentinel_absent;
      results["audit"] = std::move(a);
    }
    emit_report("phi", std::move(inputs), std::move(results), timer.seconds());
    return kExitOk;
  }

  if (*uniq) {
    Timer timer;
    const auto trace = prune(uniq_n, threads, !uniq_trace.empty(), uniq_union);
    ordered_json results;
    results["n"] = trace.n;
    results["threshold"] = trace.threshold;
    results["sizes"] = trace.sizes;
    results["failed"] = trace.failed;
    if (!uniq_trace.empty()) {
      ordered_json full = results;
      auto& iters = full["iterations"] = ordered_json::array();
      for (const auto& round : trace.iterations) {
        auto& out_round = iters.emplace_back(ordered_json::array());
        for (const auto& rec : round) {
          out_round.push_back({{"t", Transformation::from_key(rec.key, trace.n).to_string()},
                               {"candidates", rec.candidates},
                               {"matching", rec.matching},
                               {"bound", rec.bound}});
        }
      }
      std::ofstream out(uniq_trace);
      out << full.dump(2) << "\n";
    }
    if (uniq_csv) {
      std::cout << "round,size\n";
      for (std::size_t i = 0; i < trace.sizes.size(); ++i) {
        std::cout << i << "," << trace.sizes[i] << "\n";
      }
    } else {
      emit_report("uniqueness", {{"n", uniq_n}, {"trace", uniq_trace}},
                  std::move(results), timer.seconds());
    }
    return trace.failed ? kExitCheckFailure : kExitOk;
  }

  if (*reproduce) {
    Timer timer;
    const auto range = parse_range(repro_range);
    ordered_json checks = ordered_json::array();
    bool all_pass = true;
    auto add = [&](int n, const std::string& what, bool pass, ordered_json detail) {
      checks.push_back({{"target", repro_target},
                        {"n", n},
                        {"check", what},
                        {"pass", pass},
                        {"detail", std::move(detail)}});
      all_pass &= pass;
    };

    for (int n = range.lo; n <= range.hi; ++n) {
      if (repro_target == "prop-witness") {
        const auto generated = close(witness_dfa(n).delta);
        const auto expected = enumerate_wge6(n);
        bool equal = generated.size() == expected.size();
        for (const auto& t : generated.elements()) equal &= expected.contains(t);
        add(n, "closure of the witness letters equals the family", equal,
            {{"count", generated.size()}});
      } else if (repro_target == "prop-alphabet") {
        const auto wge6_count = irreducible_elements(enumerate_wge6(n)).size();
        add(n, "irreducibles of the large family match the alphabet formula",
            wge6_count == witness_alphabet_size(n), {{"count", wge6_count}});
        if (n >= 5 && n <= 8) {
          std::size_t factorial = 1;
          for (int i = 2; i <= n - 2; ++i) factorial *= static_cast<std::size_t>(i);
          const auto wle5_count =
              irreducible_elements(enumerate_wle5(n, n == 8)).size();
          add(n, "irreducibles of the small family match (n-2)!",
              wle5_count == factorial, {{"count", wle5_count}});
        }
      } else if (repro_target == "theorem-bound") {
        const auto count = enumerate_wge6(n).size();
        add(n, "family cardinality equals the formula", count == wge6_cardinality(n),
            {{"count", count}, {"formula", wge6_cardinality(n)}});
      } else if (repro_target == "theorem-unique") {
        const auto trace = prune(n, threads);
        bool pass = !trace.failed && !trace.sizes.empty() && trace.sizes.back() == 0;
        ordered_json detail{{"sizes", trace.sizes}};
        if (n == 7) {
          pass &= trace.sizes.front() == 3653;
          detail["b1_expected"] = 1176;
          if (trace.sizes.size() > 1 && trace.sizes[1] != 1176) {
            detail["b1_deviation"] = trace.sizes[1];
          }
        }
        add(n, "pruning reaches the empty candidate set", pass, std::move(detail));
      } else if (repro_target == "small-n") {
        if (n <= 4) {
          const auto a = enumerate_wge6(n);
          const auto b = enumerate_wle5(n);
          bool equal = a.size() == b.size();
          for (const auto& t : a.elements()) equal &= b.contains(t);
          add(n, "the two families coincide", equal, {{"count", a.size()}});
        } else if (n == 5) {
          const auto small_count = enumerate_wle5(5).size();
          add(n, "the small family is strictly larger", small_count > wge6_cardinality(5),
              {{"wle5", small_count}, {"wge6", wge6_cardinality(5)}});
        } else {
          add(n, "the large family dominates",
              wge6_cardinality(n) >= enumerate_wle5(n, n == 8).size(),
              {{"wge6", wge6_cardinality(n)}});
        }
      } else {
        throw CLI::ValidationError("target", "unknown target " + repro_target);
      }
    }
    if (repro_csv) {
      std::cout << "target,n,check,pass\n";
      for (const auto& c : checks) {
        std::cout << c["target"].get<std::string>() << "," << c["n"] << ","
                  << '"' << c["check"].get<std::string>() << '"' << ","
                  << (c["pass"].get<bool>() ? 1 : 0) << "\n";
      }
    } else {
      ordered_json results;
      results["checks"] = std::move(checks);
      results["all_pass"] = all_pass;
      emit_report("reproduce", {{"target", repro_target}, {"n", repro_range}},
                  std::move(results), timer.seconds());
    }
    return all_pass ? kExitOk : kExitCheckFailure;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError&) {
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return kExitResourceGuard;
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
}
