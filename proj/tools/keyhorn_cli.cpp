// keyhorn command-line tool. Talks to the library only through keyhorn.h.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "keyhorn/keyhorn.h"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitVerify = 3;

// Thrown to unwind a command with an exit code; the message is printed once.
struct Exit {
  int code;
  std::string message;
};

int exit_code_for(kh_status s) {
  switch (s) {
    case KH_OK: return kExitOk;
    case KH_ERR_PARSE: return kExitParse;
    case KH_ERR_VERIFY: return kExitVerify;
    default: return kExitFailure;
  }
}

void check(kh_status s, const std::string& context) {
  if (s != KH_OK) throw Exit{exit_code_for(s), context + ": " + kh_last_error()};
}

struct FamilyDeleter {
  void operator()(kh_family* f) const { kh_family_free(f); }
};
struct FormulaDeleter {
  void operator()(kh_formula* f) const { kh_formula_free(f); }
};
struct StringDeleter {
  void operator()(char* s) const { kh_string_free(s); }
};
using Family = std::unique_ptr<kh_family, FamilyDeleter>;
using Formula = std::unique_ptr<kh_formula, FormulaDeleter>;
using String = std::unique_ptr<char, StringDeleter>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kExitParse, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Exit{kExitFailure, "cannot write '" + path + "'"};
}

Family load_family(const std::string& path, std::string* raw = nullptr) {
  std::string text = read_file(path);
  kh_family* f = nullptr;
  check(kh_family_parse(text.c_str(), &f), path);
  if (raw != nullptr) *raw = std::move(text);
  return Family(f);
}

Formula load_formula(const std::string& path) {
  std::string text = read_file(path);
  kh_formula* phi = nullptr;
  check(kh_formula_parse(text.c_str(), &phi), path);
  return Formula(phi);
}

std::string take(char* s) { return String(s).get(); }

std::vector<kh_measure> measures_from(const std::string& text) {
  if (text == "all") {
    return {KH_MEASURE_B, KH_MEASURE_BA, KH_MEASURE_TA, KH_MEASURE_C, KH_MEASURE_BC, KH_MEASURE_L};
  }
  kh_measure mu;
  if (kh_measure_parse(text.c_str(), &mu) != KH_OK) throw Exit{kExitFailure, kh_last_error()};
  return {mu};
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

std::string decimal(std::int64_t num, std::int64_t den) {
  if (den == 0) return "none";
  __extension__ typedef __int128 wide;
  wide scaled = (static_cast<wide>(num) * 2000000 + den) / (2 * static_cast<wide>(den));
  auto whole = static_cast<long long>(scaled / 1000000);
  auto frac = static_cast<long long>(scaled % 1000000);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%lld.%06lld", whole, frac);
  return buf;
}

json ratio_fields(const char* prefix, std::int64_t num, std::int64_t den) {
  json j;
  if (den != 0) {
    std::int64_t g = gcd(num, den);
    if (g == 0) g = 1;
    num /= g;
    den /= g;
  }
  j[std::string(prefix) + "_num"] = num;
  j[std::string(prefix) + "_den"] = den;
  j[std::string(prefix) + "_decimal"] = decimal(num, den);
  return j;
}

int thread_budget() {
  const char* env = std::getenv("KEYHORN_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) throw Exit{kExitFailure, "KEYHORN_THREADS must be an integer >= 1"};
  return static_cast<int>(v);
}

std::string with_measure(const std::string& path, const char* measure) {
  std::filesystem::path p(path);
  std::filesystem::path out = p.parent_path() / (p.stem().string() + "." + measure + p.extension().string());
  return out.string();
}

// ---------------------------------------------------------------------------

struct MinimizeArgs {
  std::string in, measure, out, report, strategy = "auto";
  bool timings = false;
};

int run_minimize(const MinimizeArgs& a) {
  std::string raw;
  Family family = load_family(a.in, &raw);
  std::vector<kh_measure> measures = measures_from(a.measure);
  kh_strategy strategy;
  if (kh_strategy_parse(a.strategy.c_str(), &strategy) != KH_OK || strategy == KH_STRATEGY_BEST_OF) {
    throw Exit{kExitFailure, "unknown strategy '" + a.strategy + "'"};
  }

  kh_family_stats stats;
  check(kh_family_stats_get(family.get(), &stats), a.in);

  struct Outcome {
    kh_status status = KH_OK;
    std::string error;
    kh_result_info info{};
    Formula formula;
  };
  std::vector<Outcome> outcomes(measures.size());
  const int threads = std::min<int>(thread_budget(), static_cast<int>(measures.size()));
  check(kh_set_threads(thread_budget()), "threads");
  auto work = [&](std::size_t i) {
    kh_formula* phi = nullptr;
    outcomes[i].status = kh_minimize(family.get(), measures[i], strategy, &phi, &outcomes[i].info);
    if (outcomes[i].status != KH_OK) outcomes[i].error = kh_last_error();
    outcomes[i].formula.reset(phi);
  };
  if (threads <= 1) {
    for (std::size_t i = 0; i < measures.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    std::mutex mu;
    std::size_t next = 0;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i;
          {
            std::lock_guard<std::mutex> lock(mu);
            if (next == measures.size()) return;
            i = next++;
          }
          work(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (outcomes[i].status != KH_OK) {
      throw Exit{exit_code_for(outcomes[i].status),
                 std::string("measure ") + kh_measure_name(measures[i]) + ": " + outcomes[i].error};
    }
  }

  json report;
  report["format"] = 1;
  report["tool"] = "keyhorn";
  report["version"] = kh_version();
  char* digest = nullptr;
  check(kh_digest(raw.data(), raw.size(), &digest), "digest");
  report["input"] = {{"digest", take(digest)}, {"bytes", raw.size()}};
  report["instance"] = {{"n", stats.n},
                        {"m", stats.m},
                        {"k", stats.k},
                        {"delta", stats.delta},
                        {"reduced_n", stats.reduced_n},
                        {"reduced_m", stats.reduced_m},
                        {"core_size", stats.core_size},
                        {"uncovered", stats.uncovered_size},
                        {"dropped_bodies", stats.dropped_bodies},
                        {"trivial", stats.trivial != 0}};
  report["strategy"] = a.strategy;
  json results = json::object();
  json timings = json::object();
  for (std::size_t i = 0; i < measures.size(); ++i) {
    const kh_result_info& r = outcomes[i].info;
    json entry = {{"size", r.size}, {"lower_bound", r.lower_bound}, {"strategy", kh_strategy_name(r.strategy)}};
    entry.update(ratio_fields("ratio", r.size, r.lower_bound));
    entry.update(ratio_fields("guarantee", r.guarantee_num, r.guarantee_den));
    entry["verified"] = true;
    const char* name = kh_measure_name(measures[i]);
    results[name] = entry;
    timings[name] = {{"normalize", r.normalize_ms}, {"minimize", r.minimize_ms}, {"lift", r.lift_ms},
                     {"verify", r.verify_ms}};

    if (!a.out.empty()) {
      char* text = nullptr;
      check(kh_formula_write(outcomes[i].formula.get(), &text), "write");
      write_output(measures.size() == 1 ? a.out : with_measure(a.out, name), take(text));
    }
  }
  report["results"] = results;
  if (a.timings) report["timings_ms"] = timings;
  write_output(a.report, report.dump(2) + "\n");
  return kExitOk;
}

int run_verify(const std::string& in, const std::string& formula_path) {
  Family family = load_family(in);
  Formula phi = load_formula(formula_path);
  int accepted = 0;
  char* certificate = nullptr;
  check(kh_verify(family.get(), phi.get(), &accepted, &certificate), "verify");
  if (accepted) {
    std::cout << "accept\n";
    return kExitOk;
  }
  std::cout << "reject\n" << take(certificate) << "\n";
  return kExitVerify;
}

int run_exact(const std::string& in, const std::string& measure, const std::string& out, int max_candidates,
              long long timeout_ms) {
  Family family = load_family(in);
  std::vector<kh_measure> measures = measures_from(measure);
  json report = json::object();
  for (kh_measure mu : measures) {
    kh_formula* phi = nullptr;
    kh_exact_info info{};
    check(kh_exact(family.get(), mu, max_candidates, timeout_ms, &phi, &info), "exact");
    Formula owned(phi);
    report[kh_measure_name(mu)] = {{"value", info.value}, {"optimal", info.optimal != 0}, {"nodes", info.nodes}};
    if (!out.empty()) {
      char* text = nullptr;
      check(kh_formula_write(owned.get(), &text), "write");
      write_output(measures.size() == 1 ? out : with_measure(out, kh_measure_name(mu)), take(text));
    }
  }
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

int run_bounds(const std::string& in, const std::string& measure) {
  Family family = load_family(in);
  json report = json::object();
  for (kh_measure mu : measures_from(measure)) {
    kh_bounds_info b{};
    check(kh_bounds(family.get(), mu, &b), "bounds");
    json entry = {{"basic", b.basic}, {"best", b.best}};
    entry["partition"] = b.partition >= 0 ? json(b.partition) : json(nullptr);
    report[kh_measure_name(mu)] = entry;
  }
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

int run_price(const std::string& in, const std::string& measure, const std::string& from, const std::string& to,
              bool exact, const std::string& out) {
  Family family = load_family(in);
  kh_measure mu;
  if (kh_measure_parse(measure.c_str(), &mu) != KH_OK || (mu != KH_MEASURE_C && mu != KH_MEASURE_L)) {
    throw Exit{kExitFailure, "price needs --measure C or L"};
  }
  kh_price_info p{};
  kh_formula* phi = nullptr;
  check(kh_price(family.get(), mu, from.c_str(), to.c_str(), exact ? 1 : 0, &p, out.empty() ? nullptr : &phi),
        "price");
  Formula owned(phi);
  json report = {{"measure", measure}, {"value", p.value}};
  if (exact) report["exact"] = p.exact;
  if (owned) {
    char* text = nullptr;
    check(kh_formula_write(owned.get(), &text), "write");
    write_output(out, take(text));
  }
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

void emit_family(kh_family* f, const std::string& out) {
  Family owned(f);
  char* text = nullptr;
  check(kh_family_write(owned.get(), &text), "write");
  write_output(out, take(text));
}

std::vector<int32_t> parse_edges(const std::string& text) {
  std::vector<int32_t> flat;
  std::string cleaned = text;
  for (char& c : cleaned)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream in(cleaned);
  std::string edge;
  while (in >> edge) {
    auto dash = edge.find('-');
    if (dash == std::string::npos) throw Exit{kExitFailure, "edge '" + edge + "' is not of the form u-v"};
    try {
      flat.push_back(std::stoi(edge.substr(0, dash)));
      flat.push_back(std::stoi(edge.substr(dash + 1)));
    } catch (const std::exception&) {
      throw Exit{kExitFailure, "edge '" + edge + "' is not of the form u-v"};
    }
  }
  return flat;
}

int run_mwscs(const std::string& in) {
  Family family = load_family(in);
  kh_mwscs_info r{};
  check(kh_mwscs(family.get(), &r), "mwscs");
  json report = {{"weight", r.weight},
                 {"root", r.root},
                 {"arcs", r.arcs},
                 {"entering_lower_bound", r.entering_lower_bound},
                 {"projective", r.projective != 0}};
  if (r.projective) {
    report["d"] = r.d;
    report["min_hyperplane_entering_price"] = r.min_x_entering_price;
    report["hyperplane_lower_bound"] = r.x_lower_bound;
    report["certificate"] = {{"c_size", r.certificate_c_size},
                             {"clause_terms", r.certificate_clause_terms},
                             {"verified", r.certificate_verified != 0}};
    report.update(ratio_fields("gap", r.x_lower_bound, r.certificate_c_size));
  }
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate minimum CNF representations of key Horn functions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kh_version()));
  int code = kExitOk;

  MinimizeArgs mz;
  auto* minimize = app.add_subcommand("minimize", "Normalize, minimize, lift and verify");
  minimize->add_option("--in", mz.in, "Input .bodies file")->required();
  minimize->add_option("--measure", mz.measure, "B, BA, TA, C, BC, L or all")->required();
  minimize->add_option("--out", mz.out, "Output .horn file (per-measure suffix with 'all')");
  minimize->add_option("--report", mz.report, "JSON report path (stdout by default)");
  minimize->add_option("--strategy", mz.strategy, "auto, exact, hamiltonian, procedure1, procedure2");
  minimize->add_flag("--timings", mz.timings, "Include per-phase timings in the report");
  minimize->callback([&] { code = run_minimize(mz); });

  std::string v_in, v_formula;
  auto* verify = app.add_subcommand("verify", "Check that a formula represents a body family");
  verify->add_option("--in", v_in, "Input .bodies file")->required();
  verify->add_option("--formula", v_formula, "Input .horn file")->required();
  verify->callback([&] { code = run_verify(v_in, v_formula); });

  std::string e_in, e_measure = "all", e_out;
  int e_candidates = 0;
  long long e_timeout = 0;
  auto* exact = app.add_subcommand("exact", "Exact minimum by branch and bound (small instances)");
  exact->add_option("--in", e_in, "Input .bodies file")->required();
  exact->add_option("--measure", e_measure, "B, BA, TA, C, BC, L or all");
  exact->add_option("--out", e_out, "Output .horn file");
  exact->add_option("--max-candidates", e_candidates, "Candidate clause limit (default 24)");
  exact->add_option("--timeout-ms", e_timeout, "Search time limit (default 10000)");
  exact->callback([&] { code = run_exact(e_in, e_measure, e_out, e_candidates, e_timeout); });

  std::string b_in, b_measure = "all";
  auto* bounds = app.add_subcommand("bounds", "Lower bounds on the optimum");
  bounds->add_option("--in", b_in, "Input .bodies file")->required();
  bounds->add_option("--measure", b_measure, "B, BA, TA, C, BC, L or all");
  bounds->callback([&] { code = run_bounds(b_in, b_measure); });

  std::string p_in, p_measure, p_from, p_to, p_out;
  bool p_exact = false;
  auto* price = app.add_subcommand("price", "price_C or the shortest-path estimate of price_L");
  price->add_option("--in", p_in, "Input .bodies file")->required();
  price->add_option("--measure", p_measure, "C or L")->required();
  price->add_option("--from", p_from, "Source variables, e.g. \"1 2\"")->required();
  price->add_option("--to", p_to, "Target variables")->required();
  price->add_flag("--exact", p_exact, "Also compute the exact price");
  price->add_option("--out", p_out, "Write the witnessing formula");
  price->callback([&] { code = run_price(p_in, p_measure, p_from, p_to, p_exact, p_out); });

  auto* gen = app.add_subcommand("gen", "Instance generators");
  gen->require_subcommand(1);
  int g_n = 0, g_m = 0, g_k = 0, g_d = 0;
  std::uint64_t g_seed = 1;
  std::string g_out, g_edges, g_in, g_certificate, g_summary;
  auto* random = gen->add_subcommand("random", "Seeded random normalized Sperner family");
  random->add_option("--n", g_n, "Variables")->required();
  random->add_option("--m", g_m, "Bodies")->required();
  random->add_option("--k", g_k, "Maximum body size")->required();
  random->add_option("--seed", g_seed, "Seed (default 1)");
  random->add_option("--out", g_out, "Output .bodies file");
  random->callback([&] {
    kh_family* f = nullptr;
    check(kh_gen_random(g_n, g_m, g_k, g_seed, &f), "gen random");
    emit_family(f, g_out);
  });
  auto* hydra = gen->add_subcommand("hydra", "Bodies of size two from graph edges");
  hydra->add_option("--n", g_n, "Variables")->required();
  hydra->add_option("--edges", g_edges, "Edges, e.g. \"1-2 2-3 1-3\"")->required();
  hydra->add_option("--out", g_out, "Output .bodies file");
  hydra->callback([&] {
    std::vector<int32_t> flat = parse_edges(g_edges);
    kh_family* f = nullptr;
    check(kh_gen_hydra(g_n, flat.data(), flat.size() / 2, &f), "gen hydra");
    emit_family(f, g_out);
  });
  auto* projective = gen->add_subcommand("projective", "Hyperplane and (d+1)-point shifts over PG(d,2)");
  projective->add_option("--d", g_d, "Dimension, 2..6")->required();
  projective->add_option("--out", g_out, "Output .bodies file");
  projective->add_option("--certificate", g_certificate, "Write the certificate formula");
  projective->callback([&] {
    kh_family* f = nullptr;
    kh_formula* cert = nullptr;
    check(kh_gen_projective(g_d, &f, &cert), "gen projective");
    Formula owned(cert);
    emit_family(f, g_out);
    if (!g_certificate.empty()) {
      char* text = nullptr;
      check(kh_formula_write(owned.get(), &text), "write");
      write_output(g_certificate, take(text));
    }
  });
  auto* sat3 = gen->add_subcommand("sat3", "Reduction family from a DIMACS 3-CNF");
  sat3->add_option("--in", g_in, "DIMACS 3-CNF, each variable at most 4 times")->required();
  sat3->add_option("--out", g_out, "Output .bodies file");
  sat3->add_option("--summary", g_summary, "JSON summary path (stderr by default)");
  sat3->callback([&] {
    std::string text = read_file(g_in);
    kh_family* f = nullptr;
    char* summary = nullptr;
    check(kh_gen_sat3(text.c_str(), &f, &summary), "gen sat3");
    std::string s = take(summary);
    json j = json::parse(s);
    j["note"] = "price_L on this family touches about ground_size elements per set operation";
    if (g_summary.empty()) {
      std::cerr << j.dump(2) << "\n";
    } else {
      write_output(g_summary, j.dump(2) + "\n");
    }
    emit_family(f, g_out);
  });

  std::string w_in;
  auto* mwscs = app.add_subcommand("mwscs", "2-approximate strongly connected subgraph of the price_C body graph");
  mwscs->add_option("--in", w_in, "Input .bodies file")->required();
  mwscs->callback([&] { code = run_mwscs(w_in); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  } catch (const Exit& e) {
    std::cerr << "keyhorn: " << e.message << "\n";
    return e.code;
  }
  return code;
}
