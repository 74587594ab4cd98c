#include "keyhorn/keyhorn.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <set>
#include <string>

#include <json.hpp>

#include "keyhorn/approx.hpp"
#include "keyhorn/error.hpp"
#include "keyhorn/exact.hpp"
#include "keyhorn/gen.hpp"
#include "keyhorn/graph.hpp"
#include "keyhorn/io.hpp"
#include "keyhorn/parallel.hpp"
#include "keyhorn/reduce.hpp"

struct kh_family {
  int n = 0;
  std::vector<keyhorn::VarSet> bodies;
};

struct kh_formula {
  keyhorn::HornCNF phi;
};

namespace {

using namespace keyhorn;

thread_local std::string g_last_error;

kh_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return KH_ERR_PARSE;
    case ErrorCode::InvalidArgument: return KH_ERR_INVALID;
    case ErrorCode::UniverseMismatch: return KH_ERR_UNIVERSE;
    case ErrorCode::NoBodyInSource: return KH_ERR_NO_BODY;
    case ErrorCode::LimitExceeded: return KH_ERR_LIMIT;
    case ErrorCode::Infeasible: return KH_ERR_INFEASIBLE;
    case ErrorCode::VerificationFailed: return KH_ERR_VERIFY;
    case ErrorCode::Overflow: return KH_ERR_OVERFLOW;
  }
  return KH_ERR_INTERNAL;
}

template <class F>
kh_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return KH_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return KH_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return KH_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Measure to_measure(kh_measure mu) {
  if (mu < KH_MEASURE_B || mu > KH_MEASURE_L) throw Error(ErrorCode::InvalidArgument, "unknown measure");
  return static_cast<Measure>(mu);
}

Strategy to_strategy(kh_strategy s) {
  if (s < KH_STRATEGY_AUTO || s > KH_STRATEGY_BEST_OF) throw Error(ErrorCode::InvalidArgument, "unknown strategy");
  return static_cast<Strategy>(s);
}

// Sperner-minimal family over the original variables.
KeyHornInstance minimal_instance(const kh_family* f) {
  return KeyHornInstance(f->n, sperner_minimal(f->n, f->bodies));
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

kh_family* make_family(int n, std::vector<VarSet> bodies) {
  auto* f = new kh_family;
  f->n = n;
  f->bodies = std::move(bodies);
  return f;
}

}  // namespace

extern "C" {

const char* kh_version(void) { return "0.1.0"; }

const char* kh_last_error(void) { return g_last_error.c_str(); }

void kh_string_free(char* s) { std::free(s); }

const char* kh_measure_name(kh_measure mu) {
  if (mu < KH_MEASURE_B || mu > KH_MEASURE_L) return "?";
  return to_string(static_cast<Measure>(mu)).data();
}

kh_status kh_measure_parse(const char* text, kh_measure* out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    auto mu = parse_measure(text);
    if (!mu) throw Error(ErrorCode::InvalidArgument, std::string("unknown measure '") + text + "'");
    *out = static_cast<kh_measure>(*mu);
  });
}

const char* kh_strategy_name(kh_strategy s) {
  if (s < KH_STRATEGY_AUTO || s > KH_STRATEGY_BEST_OF) return "?";
  return to_string(static_cast<Strategy>(s)).data();
}

kh_status kh_strategy_parse(const char* text, kh_strategy* out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    auto s = parse_strategy(text);
    if (!s) throw Error(ErrorCode::InvalidArgument, std::string("unknown strategy '") + text + "'");
    *out = static_cast<kh_strategy>(*s);
  });
}

kh_status kh_set_threads(int threads) {
  return guard([&] {
    if (threads < 1) throw Error(ErrorCode::InvalidArgument, "thread count must be at least 1");
    set_max_threads(threads);
  });
}

kh_status kh_digest(const char* bytes, size_t len, char** out) {
  return guard([&] {
    require(out, "out");
    if (len > 0) require(bytes, "bytes");
    *out = dup_string(fnv1a_hex(std::string_view(bytes == nullptr ? "" : bytes, len)));
  });
}

kh_status kh_family_parse(const char* text, kh_family** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    BodyFamily parsed = parse_bodies(text);
    *out = make_family(parsed.n, std::move(parsed.bodies));
  });
}

kh_status kh_family_create(int n, const int32_t* vars, const size_t* offsets, size_t m, kh_family** out) {
  return guard([&] {
    require(out, "out");
    require(offsets, "offsets");
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    if (offsets[m] > 0) require(vars, "vars");
    std::vector<VarSet> bodies;
    for (size_t i = 0; i < m; ++i) {
      if (offsets[i] > offsets[i + 1]) throw Error(ErrorCode::InvalidArgument, "offsets must be nondecreasing");
      VarSet b(n, std::span<const VarId>(vars + offsets[i], offsets[i + 1] - offsets[i]));
      if (b.empty() || b.is_full()) throw Error(ErrorCode::InvalidArgument, "body is empty or the full set");
      bodies.push_back(std::move(b));
    }
    *out = make_family(n, std::move(bodies));
  });
}

void kh_family_free(kh_family* f) { delete f; }

kh_status kh_family_write(const kh_family* f, char** out) {
  return guard([&] {
    require(f, "family");
    require(out, "out");
    *out = dup_string(write_bodies(f->n, f->bodies));
  });
}

kh_status kh_family_write_normalized(const kh_family* f, char** out) {
  return guard([&] {
    require(f, "family");
    require(out, "out");
    Normalized norm = normalize(f->n, f->bodies);
    if (norm.record.trivial()) throw Error(ErrorCode::InvalidArgument, "a single minimal body normalizes to nothing");
    *out = dup_string(write_bodies(norm.instance.n(), norm.instance.bodies()));
  });
}

kh_status kh_family_stats_get(const kh_family* f, kh_family_stats* out) {
  return guard([&] {
    require(f, "family");
    require(out, "out");
    if (f->bodies.empty()) throw Error(ErrorCode::InvalidArgument, "empty family");
    kh_family_stats s{};
    s.n = f->n;
    s.m = static_cast<int>(f->bodies.size());
    s.k = 0;
    s.delta = f->n;
    for (const auto& b : f->bodies) {
      s.k = std::max(s.k, b.size());
      s.delta = std::min(s.delta, b.size());
    }
    Normalized norm = normalize(f->n, f->bodies);
    s.trivial = norm.record.trivial() ? 1 : 0;
    s.reduced_n = s.trivial ? 0 : norm.instance.n();
    s.reduced_m = s.trivial ? 0 : norm.instance.m();
    s.core_size = norm.record.removed_core.size();
    s.uncovered_size = norm.record.uncovered.size();
    s.dropped_bodies = static_cast<int>(norm.record.dropped_bodies.size());
    *out = s;
  });
}

kh_status kh_formula_parse(const char* text, kh_formula** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new kh_formula{parse_horn(text)};
  });
}

void kh_formula_free(kh_formula* phi) { delete phi; }

kh_status kh_formula_write(const kh_formula* phi, char** out) {
  return guard([&] {
    require(phi, "formula");
    require(out, "out");
    *out = dup_string(write_horn(phi->phi));
  });
}

kh_status kh_formula_size(const kh_formula* phi, kh_measure mu, int64_t* out) {
  return guard([&] {
    require(phi, "formula");
    require(out, "out");
    *out = measure_size(phi->phi, to_measure(mu));
  });
}

kh_status kh_canonical_formula(const kh_family* f, kh_formula** out) {
  return guard([&] {
    require(f, "family");
    require(out, "out");
    *out = new kh_formula{minimal_instance(f).canonical_formula()};
  });
}

kh_status kh_minimize(const kh_family* f, kh_measure mu, kh_strategy strategy, kh_formula** out,
                      kh_result_info* info) {
  return guard([&] {
    require(f, "family");
    require(out, "out");
    const Measure measure = to_measure(mu);
    const Strategy strat = to_strategy(strategy);
    kh_result_info r{};
    r.measure = mu;

    auto t0 = std::chrono::steady_clock::now();
    Normalized norm = normalize(f->n, f->bodies);
    KeyHornInstance original(f->n, norm.record.minimal_bodies);
    r.normalize_ms = elapsed_ms(t0);

    HornCNF reduced;
    Ratio guarantee = Ratio::of(1, 1);
    Strategy tag = Strategy::Exact;
    t0 = std::chrono::steady_clock::now();
    if (!norm.record.trivial()) {
      if (strat == Strategy::Exact) {
        ExactResult ex = opt_exact(norm.instance, measure);
        if (!ex.optimal) throw Error(ErrorCode::LimitExceeded, "exact search timed out");
        reduced = std::move(ex.witness);
      } else {
        MinimizationResult res = minimize(norm.instance, measure, strat);
        reduced = std::move(res.formula);
        guarantee = res.guarantee;
        tag = res.strategy;
      }
    }
    r.minimize_ms = elapsed_ms(t0);

    t0 = std::chrono::steady_clock::now();
    HornCNF lifted = lift(reduced, norm.record);
    r.lift_ms = elapsed_ms(t0);

    t0 = std::chrono::steady_clock::now();
    VerifyResult check = verify_representation(lifted, original);
    r.verify_ms = elapsed_ms(t0);
    if (!check.accepted) {
      throw Error(ErrorCode::VerificationFailed, "emitted formula does not represent the input: " + check.describe());
    }

    r.size = measure_size(lifted, measure);
    r.lower_bound = norm.record.trivial() ? r.size : best_lower_bound(original, measure);
    if (r.lower_bound > r.size) {
      throw Error(ErrorCode::VerificationFailed, "lower bound " + std::to_string(r.lower_bound) +
                                                     " exceeds the emitted size " + std::to_string(r.size));
    }
    r.guarantee_num = guarantee.num;
    r.guarantee_den = guarantee.den;
    r.strategy = static_cast<kh_strategy>(tag);
    *out = new kh_formula{std::move(lifted)};
    if (info != nullptr) *info = r;
  });
}

kh_status kh_verify(const kh_family* f, const kh_formula* phi, int* accepted, char** certificate) {
  return guard([&] {
    require(f, "family");
    require(phi, "formula");
    require(accepted, "accepted");
    VerifyResult r = verify_representation(phi->phi, minimal_instance(f));
    *accepted = r.accepted ? 1 : 0;
    if (certificate != nullptr) *certificate = r.accepted ? nullptr : dup_string(r.describe());
  });
}

kh_status kh_equivalent(const kh_formula* a, const kh_formula* b, int* equal) {
  return guard([&] {
    require(a, "formula");
    require(b, "formula");
    require(equal, "equal");
    if (a->phi.universe() != b->phi.universe()) throw Error(ErrorCode::UniverseMismatch, "formulas over different universes");
    *equal = equivalent(a->phi, b->phi) ? 1 : 0;
  });
}

kh_status kh_exact(const kh_family* f, kh_measure mu, int max_candidates, int64_t timeout_ms, kh_formula** out,
                   kh_exact_info* info) {
  return guard([&] {
    require(f, "family");
    ExactLimits limits;
    if (max_candidates > 0) limits.max_candidates = max_candidates;
    if (timeout_ms > 0) limits.timeout = std::chrono::milliseconds(timeout_ms);
    ExactResult r = opt_exact(minimal_instance(f), to_measure(mu), limits);
    if (info != nullptr) *info = kh_exact_info{r.value, r.optimal ? 1 : 0, r.nodes};
    if (out != nullptr) *out = new kh_formula{std::move(r.witness)};
  });
}

kh_status kh_bounds(const kh_family* f, kh_measure mu, kh_bounds_info* out) {
  return guard([&] {
    require(f, "family");
    require(out, "out");
    const Measure measure = to_measure(mu);
    KeyHornInstance inst = minimal_instance(f);
    kh_bounds_info b{};
    b.basic = lower_bound(inst, measure);
    b.partition = -1;
    if (inst.m() >= 2 && (measure == Measure::C || measure == Measure::BC)) {
      b.partition = lower_bound_partition_c(inst) + (measure == Measure::BC ? inst.m() : 0);
    }
    b.best = best_lower_bound(inst, measure);
    *out = b;
  });
}

kh_status kh_price(const kh_family* f, kh_measure mu, const char* from, const char* to, int exact,
                   kh_price_info* out, kh_formula** formula) {
  return guard([&] {
    require(f, "family");
    require(from, "from");
    require(to, "to");
    require(out, "out");
    const Measure measure = to_measure(mu);
    KeyHornInstance inst = minimal_instance(f);
    VarSet s = parse_var_list(f->n, from);
    VarSet s2 = parse_var_list(f->n, to);
    kh_price_info p{};
    p.exact = -1;
    if (measure == Measure::C) {
      bool any = false;
      for (const auto& b : inst.bodies()) any = any || b.is_subset_of(s);
      if (!any) throw Error(ErrorCode::NoBodyInSource, "no body is contained in the source set");
      p.value = s2.count_minus(s);
      if (exact) p.exact = p.value;
      if (formula != nullptr) {
        const VarSet* body = nullptr;
        for (const auto& b : inst.bodies())
          if (b.is_subset_of(s) && (body == nullptr || canonical_less(b, *body))) body = &b;
        *formula = new kh_formula{HornCNF(f->n, {{*body, s2 - s}})};
      }
    } else if (measure == Measure::L) {
      LambdaFormula lf = lambda(inst, s, s2);
      p.value = lf.weight;
      if (exact) p.exact = price_l_exact(inst, s, s2);
      if (formula != nullptr) *formula = new kh_formula{std::move(lf.formula)};
    } else {
      throw Error(ErrorCode::InvalidArgument, "prices are available for measures C and L");
    }
    *out = p;
  });
}

kh_status kh_gen_random(int n, int m, int k, uint64_t seed, kh_family** out) {
  return guard([&] {
    require(out, "out");
    KeyHornInstance inst = gen_random(n, m, k, seed);
    *out = make_family(inst.n(), {inst.bodies().begin(), inst.bodies().end()});
  });
}

kh_status kh_gen_hydra(int n, const int32_t* edges, size_t count, kh_family** out) {
  return guard([&] {
    require(out, "out");
    if (count > 0) require(edges, "edges");
    std::vector<std::pair<VarId, VarId>> pairs;
    for (size_t i = 0; i < count; ++i) pairs.emplace_back(edges[2 * i], edges[2 * i + 1]);
    *out = make_family(n, hydra_bodies(pairs, n));
  });
}

kh_status kh_gen_projective(int d, kh_family** out, kh_formula** certificate) {
  return guard([&] {
    require(out, "out");
    ProjectiveInstance p = gen_projective(d);
    *out = make_family(p.n, {p.instance.bodies().begin(), p.instance.bodies().end()});
    if (certificate != nullptr) *certificate = new kh_formula{std::move(p.certificate)};
  });
}

kh_status kh_gen_sat3(const char* dimacs, kh_family** out, char** summary) {
  return guard([&] {
    require(dimacs, "dimacs");
    require(out, "out");
    Cnf3 cnf = parse_dimacs_3cnf(dimacs);
    SatReductionInstance r = gen_sat_reduction(cnf.variables, cnf.clauses);
    if (summary != nullptr) {
      nlohmann::json j;
      j["variables"] = r.variables;
      j["clauses"] = r.clauses.size();
      j["alpha"] = r.alpha;
      j["beta"] = r.beta;
      j["tau"] = r.tau;
      j["ground_size"] = r.ground_size;
      j["bodies"] = r.bodies.size();
      j["size_S"] = r.s.size();
      j["size_Z"] = r.z.size();
      j["size_T"] = r.t.size();
      j["size_M"] = r.m_set.size();
      std::vector<int> xs;
      for (const auto& x : r.x) xs.push_back(x.size());
      j["sizes_X"] = xs;
      j["source_index"] = r.source_index;
      j["target_index"] = r.target_index;
      j["relations"] = "ok";
      *summary = dup_string(j.dump());
    }
    *out = make_family(r.ground_size, std::move(r.bodies));
  });
}

kh_status kh_mwscs(const kh_family* f, kh_mwscs_info* out) {
  return guard([&] {
    require(f, "family");
    require(out, "out");
    KeyHornInstance inst = minimal_instance(f);
    if (inst.m() < 2) throw Error(ErrorCode::InvalidArgument, "strong connectivity needs at least two bodies");
    BodyGraph g = body_graph_c(inst);
    ArcSet a = mwscs_2approx(g);
    kh_mwscs_info r{};
    r.weight = a.weight;
    r.root = a.root;
    r.arcs = static_cast<int>(a.arcs.size());
    auto cheapest_into = [&](int v) {
      std::int64_t best = -1;
      for (int u = 0; u < g.size(); ++u)
        if (u != v && (best < 0 || g.weight(u, v) < best)) best = g.weight(u, v);
      return best;
    };
    for (int v = 0; v < g.size(); ++v) r.entering_lower_bound += cheapest_into(v);

    for (int d = 2; d <= 6; ++d) {
      if (f->n != (1 << (d + 1)) - 1 || inst.m() != 2 * f->n) continue;
      ProjectiveInstance p = gen_projective(d);
      auto key = [](const VarSet& s) { return s.elements(); };
      std::set<std::vector<VarId>> mine, theirs, hyperplanes;
      for (const auto& b : inst.bodies()) mine.insert(key(b));
      for (const auto& b : p.instance.bodies()) theirs.insert(key(b));
      if (mine != theirs) continue;
      for (int i = 0; i < p.n; ++i) hyperplanes.insert(key(p.instance.body(i)));
      r.projective = 1;
      r.d = d;
      r.min_x_entering_price = -1;
      for (int v = 0; v < inst.m(); ++v) {
        if (!hyperplanes.count(key(inst.body(v)))) continue;
        std::int64_t c = cheapest_into(v);
        r.x_lower_bound += c;
        if (r.min_x_entering_price < 0 || c < r.min_x_entering_price) r.min_x_entering_price = c;
      }
      r.certificate_c_size = measure_size(p.certificate, Measure::C);
      r.certificate_clause_terms = p.certificate_clause_terms;
      r.certificate_verified = verify_representation(p.certificate, inst).accepted ? 1 : 0;
      break;
    }
    *out = r;
  });
}

}  // extern "C"
