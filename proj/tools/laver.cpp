#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "laver/braid.hpp"
#include "laver/checks.hpp"
#include "laver/cohomology.hpp"
#include "laver/io.hpp"
#include "laver/poset.hpp"

namespace {

constexpr const char* kSynopsis =
    "usage: laver [--max-n N] [--cache-dir DIR] [--seed S] <command> [options]\n"
    "commands:\n"
    "  table       print A_n as text or json\n"
    "  eval        apply the table: p |> q\n"
    "  period      row period of p\n"
    "  threshold   agreement length of row p with the table one order down\n"
    "  comp        composition p o q\n"
    "  poset       right-divisibility order: hasse edges, dot export, checks\n"
    "  cocycle2    emit a named 2-cocycle as csv or json\n"
    "  cocycle3    emit a named 3-cocycle as json\n"
    "  decompose   coordinates of a 2-cocycle in the elementary basis\n"
    "  cohomology  H^k of the rack complex of A_n\n"
    "  verify      run check suites; the single entry point for CI\n"
    "  braid       color a positive braid word, evaluate invariants\n"
    "run 'laver <command> --help' for the options of one command\n";

struct Config {
  unsigned max_n = 16;
  std::string cache_dir;
  std::uint64_t seed = 0x1a5e7;
};

laver::LaverTable get_table(const Config& cfg, unsigned n) {
  if (n > cfg.max_n)
    throw laver::size_limit_error("table order " + std::to_string(n) +
                                  " exceeds the cap " + std::to_string(cfg.max_n));
  if (cfg.cache_dir.empty()) return laver::LaverTable::build(n, cfg.max_n);
  namespace fs = std::filesystem;
  const fs::path file = fs::path(cfg.cache_dir) / ("a" + std::to_string(n) + ".lavr");
  if (fs::exists(file)) {
    try {
      auto t = laver::read_table(file);
      if (t.n() == n) return t;
    } catch (const std::exception&) {
      // unreadable or stale cache entry: rebuild and overwrite below
    }
  }
  auto t = laver::LaverTable::build(n, cfg.max_n);
  fs::create_directories(cfg.cache_dir);
  laver::write_table(t, file);
  return t;
}

laver::Cochain family_cochain(const laver::LaverTable& t, const std::string& family,
                              unsigned p, unsigned q) {
  auto need_q = [&] {
    if (q == 0) throw std::invalid_argument("family '" + family + "' needs --q");
  };
  if (family == "phi") return need_q(), laver::phi2(t, q);
  if (family == "psi") return need_q(), laver::psi2(t, q);
  if (family == "theta") return laver::theta(t);
  if (family == "const") return laver::const_cochain(t, 2);
  if (family == "constprime") return laver::const_prime(t);
  if (family == "const3") return laver::const_cochain(t, 3);
  if (family == "phi3" || family == "phi3prime") {
    need_q();
    if (p == 0) throw std::invalid_argument("family '" + family + "' needs --p");
    return family == "phi3" ? laver::phi3(t, p, q) : laver::phi3_prime(t, p, q);
  }
  throw std::invalid_argument("unknown family '" + family + "'");
}

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    buf << f.rdbuf();
  }
  return buf.str();
}

void emit(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  f << content;
  if (!f) throw std::runtime_error("cannot write " + path);
}

laver::Cochain cochain_from_json_text(const laver::LaverTable& t, const std::string& text) {
  laver::json j = laver::json::parse(text);
  if (!j.contains("n") || !j.contains("k") || !j.contains("values"))
    throw laver::format_error("cochain json needs the fields n, k, values");
  if (j["n"].get<unsigned>() != t.n())
    throw laver::format_error("cochain json is for another table order");
  laver::Cochain c(t.n(), j["k"].get<unsigned>());
  const auto& values = j["values"];
  if (!values.is_array() || values.size() != c.size())
    throw laver::format_error("cochain json has the wrong number of values");
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = values[i].get<std::int64_t>();
  return c;
}

std::vector<laver::LaverTable::value_type> parse_colors(const std::string& text) {
  std::istringstream in(text);
  std::vector<laver::LaverTable::value_type> out;
  std::string token;
  while (in >> token) {
    laver::LaverTable::value_type value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
      throw laver::format_error("bad color token '" + token + "'");
    out.push_back(value);
  }
  return out;
}

/// One line per report; a few failure witnesses when red.  Returns 1 on
/// failure so callers can accumulate an exit status.
int print_report(const laver::CheckReport& rep) {
  if (rep.passed()) {
    std::cout << rep.suite << ": pass (" << rep.cases << " cases)\n";
    return 0;
  }
  std::cout << rep.suite << ": FAIL (" << rep.failure_count << " of " << rep.cases
            << " cases)\n";
  std::size_t shown = 0;
  for (const auto& f : rep.failures) {
    if (shown++ == 3) {
      std::cout << "  ...\n";
      break;
    }
    std::cout << "  at (";
    for (std::size_t i = 0; i < f.input.size(); ++i)
      std::cout << (i ? ", " : "") << f.input[i];
    std::cout << "): expected " << f.expected << ", got " << f.actual << '\n';
  }
  return 1;
}

laver::BraidWord random_verify_word(std::mt19937& rng, unsigned strands,
                                    std::size_t length) {
  std::uniform_int_distribution<unsigned> letter(1, strands - 1);
  laver::BraidWord w{strands, {}};
  for (std::size_t i = 0; i < length; ++i) w.letters.push_back(letter(rng));
  return w;
}

struct SuiteSpec {
  std::string name;
  unsigned cap;
  std::function<std::vector<laver::CheckReport>(const laver::LaverTable&)> run;
};

std::vector<SuiteSpec> suite_specs(const Config& cfg, std::uint64_t samples) {
  using laver::CheckReport;
  using laver::LaverTable;
  laver::SweepBudget sweep;
  sweep.seed = cfg.seed;
  if (samples) sweep.samples = samples;
  laver::RewriteBudget rewrite_budget;
  rewrite_budget.seed = cfg.seed;
  const std::uint64_t seed = cfg.seed;

  return {
      {"ld", 16,
       [sweep](const LaverTable& t) {
         return std::vector{laver::check_selfdistributivity(t, sweep)};
       }},
      {"identities", 16,
       [sweep](const LaverTable& t) {
         std::vector<CheckReport> reps;
         for (auto s : laver::identity_suites)
           reps.push_back(laver::check_identities(t, s, sweep));
         return reps;
       }},
      {"order", 10,
       [](const LaverTable& t) {
         return std::vector{laver::DivisibilityPoset(t).check_order_axioms()};
       }},
      {"structure", 10,
       [](const LaverTable& t) { return std::vector{laver::check_structure(t)}; }},
      {"beforesym", 8,
       [](const LaverTable& t) { return std::vector{laver::beforesym_demo(t)}; }},
      {"occurrences", 8,
       [](const LaverTable& t) {
         std::vector<CheckReport> reps;
         for (LaverTable::value_type r = 1; r <= 8; ++r) {
           unsigned m = 0;
           while ((LaverTable::value_type{1} << m) <= r) ++m;
           if (m > t.n()) break;
           reps.push_back(laver::occurrence_check(t.n(), r));
         }
         return reps;
       }},
      {"cocycles", 6,
       [](const LaverTable& t) {
         CheckReport rep;
         rep.suite = "cocycle-equations";
         std::uint64_t id = 0;
         auto check = [&](const laver::Cochain& c) {
           ++rep.cases;
           ++id;
           if (!laver::is_cocycle(t, c)) rep.fail({id}, "cocycle equation", "violated");
         };
         const auto N = static_cast<LaverTable::value_type>(t.size());
         for (LaverTable::value_type q = 1; q <= N; ++q) check(laver::phi2(t, q));
         for (LaverTable::value_type q = 1; q <= N; ++q) check(laver::psi2(t, q));
         check(laver::const_cochain(t, 2));
         check(laver::const_prime(t));
         if (t.n() >= 1) check(laver::theta(t));
         if (t.n() <= 3) {
           for (LaverTable::value_type p = 1; p <= N; ++p)
             for (LaverTable::value_type q = 1; q <= N; ++q) {
               check(laver::phi3(t, p, q));
               check(laver::phi3_prime(t, p, q));
             }
           check(laver::const_cochain(t, 3));
         }
         return std::vector{rep};
       }},
      {"bicomplex", 4,
       [](const LaverTable& t) {
         std::vector<CheckReport> reps;
         for (unsigned k = 2; k <= 4; ++k) {
           auto rep = laver::bicomplex_check(t, k);
           rep.suite = "bicomplex(k=" + std::to_string(k) + ")";
           reps.push_back(std::move(rep));
         }
         return reps;
       }},
      {"rewrites", 5,
       [rewrite_budget, seed](const LaverTable& t) {
         std::vector<CheckReport> reps;
         std::mt19937 rng(static_cast<std::uint32_t>(seed));
         CheckReport arc;
         arc.suite = "rewrites(arc)";
         const auto family2 = laver::cocycle_family(t, 2);
         for (int i = 0; i < 6; ++i)
           arc.merge(laver::rewrite_check(t, random_verify_word(rng, 4, 8),
                                          laver::RewriteMode::arc, family2,
                                          rewrite_budget));
         reps.push_back(std::move(arc));
         if (t.n() <= 3) {
           CheckReport shadow;
           shadow.suite = "rewrites(shadow)";
           const auto family3 = laver::cocycle_family(t, 3);
           for (int i = 0; i < 4; ++i)
             shadow.merge(laver::rewrite_check(t, random_verify_word(rng, 3, 6),
                                               laver::RewriteMode::shadow, family3,
                                               rewrite_budget));
           reps.push_back(std::move(shadow));
         }
         return reps;
       }},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laver tables, their divisibility order, rack cocycles, and "
               "positive-braid invariants"};
  app.require_subcommand(1);

  Config cfg;
  auto* opt_max_n = app.add_option("--max-n", cfg.max_n,
                                   "largest table order allowed; given explicitly it "
                                   "also lifts the built-in kernel caps")
                        ->envname("LAVER_MAX_N")
                        ->check(CLI::Range(0u, 16u));
  app.add_option("--cache-dir", cfg.cache_dir, "directory for table cache files")
      ->envname("LAVER_CACHE_DIR");
  app.add_option("--seed", cfg.seed, "seed for sampled sweeps");

  int status = 0;

  // table
  struct {
    unsigned n = 0;
    std::string format = "text";
    bool descending = false;
  } targs;
  auto* table_cmd = app.add_subcommand("table", "print A_n");
  table_cmd->fallthrough();
  table_cmd->add_option("-n", targs.n, "table order exponent")->required();
  table_cmd->add_option("--format", targs.format)->check(CLI::IsMember({"text", "json"}));
  table_cmd->add_flag("--descending", targs.descending, "rows from 2^n down to 1");
  table_cmd->callback([&] {
    auto t = get_table(cfg, targs.n);
    if (targs.format == "json")
      std::cout << laver::table_json(t).dump() << '\n';
    else
      std::cout << laver::table_text(t, targs.descending);
  });

  // eval
  struct {
    unsigned n = 0;
    laver::LaverTable::value_type p = 0, q = 0;
  } eargs;
  auto* eval_cmd = app.add_subcommand("eval", "apply the table: p |> q");
  eval_cmd->fallthrough();
  eval_cmd->add_option("-n", eargs.n)->required();
  eval_cmd->add_option("p", eargs.p, "row element")->required();
  eval_cmd->add_option("q", eargs.q, "column element")->required();
  eval_cmd->callback(
      [&] { std::cout << get_table(cfg, eargs.n).apply(eargs.p, eargs.q) << '\n'; });

  // period
  struct {
    unsigned n = 0;
    laver::LaverTable::value_type p = 0;
    bool via_cocycle = false;
  } pargs;
  auto* period_cmd = app.add_subcommand("period", "row period of p");
  period_cmd->fallthrough();
  period_cmd->add_option("-n", pargs.n)->required();
  period_cmd->add_option("p", pargs.p)->required();
  period_cmd->add_flag("--via-cocycle", pargs.via_cocycle,
                       "read the period off the halfway aggregate cocycle");
  period_cmd->callback([&] {
    auto t = get_table(cfg, pargs.n);
    std::cout << (pargs.via_cocycle ? laver::period_from_cocycle(t, pargs.p)
                                    : t.period(pargs.p))
              << '\n';
  });

  // threshold
  struct {
    unsigned n = 0;
    laver::LaverTable::value_type p = 0;
    bool via_cocycle = false;
  } thargs;
  auto* threshold_cmd =
      app.add_subcommand("threshold", "agreement length with the order below");
  threshold_cmd->fallthrough();
  threshold_cmd->add_option("-n", thargs.n)->required();
  threshold_cmd->add_option("p", thargs.p)->required();
  threshold_cmd->add_flag("--via-cocycle", thargs.via_cocycle,
                          "read the threshold off the halfway indicator cocycle");
  threshold_cmd->callback([&] {
    auto t = get_table(cfg, thargs.n);
    std::cout << (thargs.via_cocycle ? laver::threshold_from_cocycle(t, thargs.p)
                                     : t.threshold(thargs.p))
              << '\n';
  });

  // comp
  struct {
    unsigned n = 0;
    laver::LaverTable::value_type p = 0, q = 0;
  } cargs;
  auto* comp_cmd = app.add_subcommand("comp", "composition p o q");
  comp_cmd->fallthrough();
  comp_cmd->add_option("-n", cargs.n)->required();
  comp_cmd->add_option("p", cargs.p)->required();
  comp_cmd->add_option("q", cargs.q)->required();
  comp_cmd->callback(
      [&] { std::cout << get_table(cfg, cargs.n).compose(cargs.p, cargs.q) << '\n'; });

  // poset
  struct {
    unsigned n = 0;
    std::string dot;
    bool check = false;
  } poargs;
  auto* poset_cmd = app.add_subcommand("poset", "right-divisibility order");
  poset_cmd->fallthrough();
  poset_cmd->add_option("-n", poargs.n)->required();
  poset_cmd->add_option("--dot", poargs.dot,
                        "write the hasse diagram in dot format ('-' = stdout)");
  poset_cmd->add_flag("--check", poargs.check, "run order axioms and structure checks");
  poset_cmd->callback([&] {
    auto t = get_table(cfg, poargs.n);
    laver::DivisibilityPoset poset(t);
    if (!poargs.dot.empty()) emit(poargs.dot, laver::poset_dot(poset));
    if (poargs.check) {
      int fail = print_report(poset.check_order_axioms());
      fail |= print_report(laver::check_structure(t));
      status |= fail;
    }
    if (poargs.dot.empty() && !poargs.check)
      for (const auto& [a, b] : poset.hasse()) std::cout << a << " -> " << b << '\n';
  });

  // cocycle2
  struct {
    unsigned n = 0;
    std::string family = "phi";
    unsigned q = 0;
    std::string format = "csv";
  } c2args;
  auto* cocycle2_cmd = app.add_subcommand("cocycle2", "emit a named 2-cocycle");
  cocycle2_cmd->fallthrough();
  cocycle2_cmd->add_option("-n", c2args.n)->required();
  cocycle2_cmd->add_option("--family", c2args.family)
      ->check(CLI::IsMember({"phi", "psi", "theta", "const", "constprime"}));
  cocycle2_cmd->add_option("--q", c2args.q, "column parameter of the family");
  cocycle2_cmd->add_option("--format", c2args.format)
      ->check(CLI::IsMember({"csv", "json"}));
  cocycle2_cmd->callback([&] {
    auto t = get_table(cfg, c2args.n);
    auto c = family_cochain(t, c2args.family, 0, c2args.q);
    if (c2args.format == "json")
      std::cout << laver::cochain_json(c).dump() << '\n';
    else
      std::cout << laver::cochain_csv(c);
  });

  // cocycle3
  struct {
    unsigned n = 0;
    std::string family = "phi3";
    unsigned p = 0, q = 0;
  } c3args;
  auto* cocycle3_cmd = app.add_subcommand("cocycle3", "emit a named 3-cocycle as json");
  cocycle3_cmd->fallthrough();
  cocycle3_cmd->add_option("-n", c3args.n)->required();
  cocycle3_cmd->add_option("--family", c3args.family)
      ->check(CLI::IsMember({"phi3", "phi3prime", "const3"}));
  cocycle3_cmd->add_option("--p", c3args.p, "row parameter of the family");
  cocycle3_cmd->add_option("--q", c3args.q, "column parameter of the family");
  cocycle3_cmd->callback([&] {
    auto t = get_table(cfg, c3args.n);
    std::cout << laver::cochain_json(family_cochain(t, c3args.family, c3args.p, c3args.q))
                     .dump()
              << '\n';
  });

  // decompose
  struct {
    unsigned n = 0;
    std::string family;
    unsigned q = 0;
    std::string input;
  } dargs;
  auto* decompose_cmd = app.add_subcommand(
      "decompose", "coordinates of a 2-cocycle in the elementary basis");
  decompose_cmd->fallthrough();
  decompose_cmd->add_option("-n", dargs.n)->required();
  decompose_cmd->add_option("--family", dargs.family)
      ->check(CLI::IsMember({"phi", "psi", "theta", "const", "constprime"}));
  decompose_cmd->add_option("--q", dargs.q);
  decompose_cmd->add_option("--input", dargs.input,
                            "cochain json file ('-' = stdin) instead of a family name");
  decompose_cmd->callback([&] {
    auto t = get_table(cfg, dargs.n);
    laver::Cochain c =
        !dargs.input.empty()
            ? cochain_from_json_text(t, read_input(dargs.input))
            : (dargs.family.empty()
                   ? throw std::invalid_argument("give --family or --input")
                   : family_cochain(t, dargs.family, 0, dargs.q));
    auto dec = laver::decompose2(t, c);
    laver::json j;
    j["lambda"] = dec.lambda;
    j["c"] = dec.c;
    std::cout << j.dump() << '\n';
  });

  // cohomology
  struct {
    unsigned n = 0;
    unsigned k = 2;
    std::string format = "text";
  } hargs;
  auto* cohomology_cmd = app.add_subcommand("cohomology", "H^k of the rack complex");
  cohomology_cmd->fallthrough();
  cohomology_cmd->add_option("-n", hargs.n)->required();
  cohomology_cmd->add_option("-k", hargs.k, "arity, 1 to 3")->check(CLI::Range(1u, 3u));
  cohomology_cmd->add_option("--format", hargs.format)
      ->check(CLI::IsMember({"text", "json"}));
  cohomology_cmd->callback([&] {
    auto t = get_table(cfg, hargs.n);
    // An explicit --max-n lifts the built-in kernel caps as well.
    auto group = laver::cohomology(t, hargs.k, opt_max_n->count() ? cfg.max_n : 0);
    if (hargs.format == "json") {
      laver::json j;
      j["free_rank"] = group.free_rank;
      auto torsion = laver::json::array();
      for (const auto& d : group.torsion)
        torsion.push_back(d.convert_to<std::int64_t>());
      j["torsion"] = std::move(torsion);
      std::cout << j.dump() << '\n';
    } else {
      std::cout << group.describe() << '\n';
    }
  });

  // verify
  struct {
    unsigned n = 0;
    std::string suite = "all";
    std::uint64_t samples = 0;
  } vargs;
  auto* verify_cmd = app.add_subcommand("verify", "run check suites");
  verify_cmd->fallthrough();
  verify_cmd->add_option("-n", vargs.n)->required();
  verify_cmd->add_option("--suite", vargs.suite,
                         "one of: all, ld, identities, order, structure, beforesym, "
                         "occurrences, cocycles, bicomplex, rewrites");
  verify_cmd->add_option("--samples", vargs.samples,
                         "sample count for sweeps beyond the exhaustive budget");
  verify_cmd->callback([&] {
    auto specs = suite_specs(cfg, vargs.samples);
    int fail = 0;
    if (vargs.suite == "all") {
      auto t = get_table(cfg, vargs.n);
      for (const auto& spec : specs) {
        if (vargs.n > spec.cap) {
          std::cout << spec.name << ": skip (table order above suite cap " << spec.cap
                    << ")\n";
          continue;
        }
        for (const auto& rep : spec.run(t)) fail |= print_report(rep);
      }
    } else {
      const SuiteSpec* found = nullptr;
      for (const auto& spec : specs)
        if (spec.name == vargs.suite) found = &spec;
      if (!found) throw std::invalid_argument("unknown suite '" + vargs.suite + "'");
      if (vargs.n > found->cap)
        throw std::invalid_argument("suite '" + vargs.suite + "' is capped at n <= " +
                                    std::to_string(found->cap));
      auto t = get_table(cfg, vargs.n);
      for (const auto& rep : found->run(t)) fail |= print_report(rep);
    }
    status |= fail;
  });

  // braid
  struct {
    unsigned n = 0;
    unsigned strands = 2;
    std::string word;
    std::string colors;
    laver::LaverTable::value_type top = 1;
    std::string family;
    unsigned p = 0, q = 0;
    std::string input;
    bool trace = false, invariant = false, check = false;
  } bargs;
  auto* braid_cmd =
      app.add_subcommand("braid", "color a positive braid word, evaluate invariants");
  braid_cmd->fallthrough();
  braid_cmd->add_option("-n", bargs.n)->required();
  braid_cmd->add_option("--strands", bargs.strands)->required()->check(CLI::Range(1u, 64u));
  braid_cmd->add_option("--word", bargs.word, "whitespace-separated generator indices");
  braid_cmd->add_option("--colors", bargs.colors, "initial strand colors, bottom first");
  auto* opt_top = braid_cmd->add_option("--top", bargs.top, "top region color (shadow)");
  braid_cmd->add_option("--family", bargs.family)
      ->check(CLI::IsMember(
          {"phi", "psi", "theta", "const", "constprime", "phi3", "phi3prime", "const3"}));
  braid_cmd->add_option("--p", bargs.p);
  braid_cmd->add_option("--q", bargs.q);
  braid_cmd->add_option("--input", bargs.input, "cochain json file ('-' = stdin)");
  braid_cmd->add_flag("--trace", bargs.trace, "print the coloring trace as json");
  braid_cmd->add_flag("--invariant", bargs.invariant, "print the weight sum");
  braid_cmd->add_flag("--check", bargs.check, "rewrite-invariance check of the weight");
  braid_cmd->callback([&] {
    if (int(bargs.trace) + int(bargs.invariant) + int(bargs.check) != 1)
      throw std::invalid_argument("choose exactly one of --trace, --invariant, --check");
    auto t = get_table(cfg, bargs.n);
    auto word = laver::parse_word(bargs.word, bargs.strands);

    if (bargs.trace) {
      auto colors = parse_colors(bargs.colors);
      auto trace = opt_top->count()
                       ? laver::color_propagate(t, word, std::move(colors), bargs.top)
                       : laver::color_propagate(t, word, std::move(colors));
      std::cout << laver::trace_json(trace).dump() << '\n';
      return;
    }

    laver::Cochain weight =
        !bargs.input.empty()
            ? cochain_from_json_text(t, read_input(bargs.input))
            : (bargs.family.empty()
                   ? throw std::invalid_argument("give --family or --input")
                   : family_cochain(t, bargs.family, bargs.p, bargs.q));
    if (bargs.invariant) {
      auto colors = parse_colors(bargs.colors);
      if (weight.arity() == 2)
        std::cout << laver::invariant2(t, word, std::move(colors), weight) << '\n';
      else
        std::cout << laver::invariant3(t, word, std::move(colors), bargs.top, weight)
                  << '\n';
      return;
    }
    laver::RewriteBudget budget;
    budget.seed = cfg.seed;
    const auto mode =
        weight.arity() == 2 ? laver::RewriteMode::arc : laver::RewriteMode::shadow;
    status |= print_report(laver::rewrite_check(t, word, mode, weight, budget));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    std::cerr << kSynopsis;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "laver: " << e.what() << '\n' << kSynopsis;
    return 2;
  }
  return status;
}
