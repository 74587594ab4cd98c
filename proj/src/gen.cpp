#include "keyhorn/gen.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <random>
#include <set>

#include "keyhorn/error.hpp"

namespace keyhorn {

namespace {

bool comparable(const VarSet& a, const VarSet& b) { return a.is_subset_of(b) || b.is_subset_of(a); }

}  // namespace

KeyHornInstance gen_random(int n, int m, int k, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "random family needs n >= 2");
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "random family needs m >= 2");
  if (k < 1 || k >= n) throw Error(ErrorCode::InvalidArgument, "body size bound k must satisfy 1 <= k < n");

  std::mt19937_64 rng(seed);
  const int lo = std::min(2, k);
  const auto span = static_cast<std::uint64_t>(k - lo + 1);
  std::vector<VarId> pool(static_cast<std::size_t>(n));
  std::vector<VarSet> bodies;
  const long long budget = 2000LL * m + 20000;
  for (long long attempt = 0; attempt < budget && static_cast<int>(bodies.size()) < m; ++attempt) {
    const int size = lo + static_cast<int>(rng() % span);
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    VarSet body(n);
    for (int i = 0; i < size; ++i) {
      auto j = static_cast<std::size_t>(i) + static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n - i));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
      body.insert(pool[static_cast<std::size_t>(i)]);
    }
    bool clash = std::any_of(bodies.begin(), bodies.end(), [&](const VarSet& b) { return comparable(b, body); });
    if (!clash) bodies.push_back(std::move(body));
  }
  if (static_cast<int>(bodies.size()) < m) {
    throw Error(ErrorCode::Infeasible, "could not sample " + std::to_string(m) + " incomparable bodies of size <= " +
                                           std::to_string(k) + " over " + std::to_string(n) + " variables");
  }
  return normalize(n, bodies).instance;
}

std::vector<VarSet> hydra_bodies(std::span<const std::pair<VarId, VarId>> edges, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "hydra needs n >= 2");
  if (edges.empty()) throw Error(ErrorCode::InvalidArgument, "hydra needs at least one edge");
  std::set<std::pair<VarId, VarId>> seen;
  std::vector<VarSet> bodies;
  for (auto [u, v] : edges) {
    if (u == v) throw Error(ErrorCode::InvalidArgument, "self-loop on variable " + std::to_string(u));
    if (u < 1 || v < 1 || u > n || v > n) {
      throw Error(ErrorCode::InvalidArgument, "edge endpoint outside 1.." + std::to_string(n));
    }
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    bodies.push_back(VarSet(n, {u, v}));
  }
  return bodies;
}

Normalized gen_hydra(std::span<const std::pair<VarId, VarId>> edges, int n) {
  return normalize(n, hydra_bodies(edges, n));
}

// ---------------------------------------------------------------------------
// Projective spaces

namespace {

// Primitive polynomials of degree d + 1 for d = 2..6.
constexpr std::uint32_t kPrimitive[] = {0b1011, 0b10011, 0b100101, 0b1000011, 0b10000011};

int parity(std::uint32_t x) { return __builtin_popcount(x) & 1; }

}  // namespace

VarSet shift_points(const VarSet& s, int i) {
  const int n = s.universe();
  VarSet out(n);
  s.for_each([&](VarId v) { out.insert(static_cast<VarId>(((v - 1 + i) % n + n) % n + 1)); });
  return out;
}

ProjectiveInstance gen_projective(int d) {
  if (d < 2 || d > 6) throw Error(ErrorCode::InvalidArgument, "projective dimension must be in 2..6");
  const int deg = d + 1;
  const int n = (1 << deg) - 1;
  const std::uint32_t poly = kPrimitive[d - 2];

  // powers[i] = α^i as a bit vector over the polynomial basis.
  std::vector<std::uint32_t> powers(static_cast<std::size_t>(n));
  std::uint32_t x = 1;
  for (int i = 0; i < n; ++i) {
    powers[static_cast<std::size_t>(i)] = x;
    x <<= 1;
    if (x >> deg & 1) x ^= poly;
  }
  // Absolute trace is linear: Tr(x) = Σ x_j Tr(α^j).
  std::uint32_t trace_mask = 0;
  for (int j = 0; j < deg; ++j) {
    std::uint32_t y = powers[static_cast<std::size_t>(j)], acc = 0;
    for (int r = 0; r < deg; ++r) {
      acc ^= y;
      // y <- y^2
      std::uint32_t sq = 0, base = y, other = y;
      for (int b = 0; b < deg; ++b) {
        if (other >> b & 1) sq ^= base;
        base <<= 1;
        if (base >> deg & 1) base ^= poly;
      }
      y = sq;
    }
    if (acc & 1) trace_mask |= std::uint32_t{1} << j;
  }

  VarSet hyper(n);
  for (int i = 0; i < n; ++i)
    if (parity(powers[static_cast<std::size_t>(i)] & trace_mask) == 0) hyper.insert(i + 1);

  VarSet prefix(n);
  for (int p = 0; p < d; ++p) prefix.insert(p + 1);
  std::optional<VarSet> chosen;
  for (int s = 0; s < n; ++s) {
    VarSet cand = shift_points(hyper, s);
    if (prefix.is_subset_of(cand)) {
      if (chosen) throw Error(ErrorCode::VerificationFailed, "hyperplane through the first points is not unique");
      chosen = std::move(cand);
    }
  }
  if (!chosen) throw Error(ErrorCode::VerificationFailed, "no hyperplane contains the first points");

  ProjectiveInstance out;
  out.d = d;
  out.n = n;
  out.polynomial = poly;
  out.x = *chosen;
  out.dset = VarSet(n);
  for (int p = 0; p <= d; ++p) out.dset.insert(p + 1);

  std::vector<VarSet> bodies;
  for (int i = 0; i < n; ++i) bodies.push_back(shift_points(out.x, i));
  for (int i = 0; i < n; ++i) bodies.push_back(shift_points(out.dset, i));
  out.instance = KeyHornInstance(n, std::move(bodies));

  auto point = [n](int p) { return static_cast<VarId>((p % n + n) % n + 1); };
  std::vector<ClauseGroup> groups;
  groups.push_back({out.dset, out.dset.complement()});
  out.certificate_clause_terms = n - d - 1;
  for (int i = 0; i < n; ++i) {
    groups.push_back({shift_points(out.x, i), VarSet(n, {point(d + i)})});
    groups.push_back({shift_points(out.dset, i), VarSet(n, {point(d + 1 + i)})});
    out.certificate_clause_terms += 2;
  }
  out.certificate = HornCNF(n, std::move(groups));
  return out;
}

// ---------------------------------------------------------------------------
// 3-SAT reduction

SatParameters sat_parameters(int variables, int clauses) {
  const std::int64_t n1 = variables + 1;
  const std::int64_t m = clauses;
  const std::int64_t need = std::max(m * m, 256 * n1 + 512 * n1 * n1 + 272);
  std::int64_t alpha = 1;
  while (alpha * alpha <= need) ++alpha;
  const std::int64_t beta = 2 * alpha + 32 * n1 + 16 + 1;
  const std::int64_t tau = checked_add(checked_mul(checked_add(checked_mul(n1, beta), 17), n1 * alpha + m), 1);
  return {alpha, beta, tau};
}

SatReductionInstance gen_sat_reduction(int variables, std::span<const Clause3> clauses) {
  if (variables < 1) throw Error(ErrorCode::InvalidArgument, "3-CNF needs at least one variable");
  if (clauses.empty()) throw Error(ErrorCode::InvalidArgument, "3-CNF needs at least one clause");
  std::vector<int> occurrences(static_cast<std::size_t>(variables) + 1, 0);
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const auto& cl = clauses[c];
    for (int a = 0; a < 3; ++a) {
      const int v = std::abs(cl[static_cast<std::size_t>(a)]);
      if (v < 1 || v > variables) {
        throw Error(ErrorCode::InvalidArgument, "clause " + std::to_string(c + 1) + " has a literal outside 1.." +
                                                    std::to_string(variables));
      }
      for (int b = 0; b < a; ++b)
        if (std::abs(cl[static_cast<std::size_t>(b)]) == v) {
          throw Error(ErrorCode::InvalidArgument, "clause " + std::to_string(c + 1) + " repeats variable " +
                                                      std::to_string(v));
        }
      if (++occurrences[static_cast<std::size_t>(v)] > 4) {
        throw Error(ErrorCode::InvalidArgument, "variable " + std::to_string(v) + " occurs more than 4 times");
      }
    }
  }
  for (int v = 1; v <= variables; ++v)
    if (occurrences[static_cast<std::size_t>(v)] == 0) {
      throw Error(ErrorCode::InvalidArgument, "variable " + std::to_string(v) + " does not occur in any clause");
    }

  SatReductionInstance r;
  const int n = variables;
  const int m = static_cast<int>(clauses.size());
  r.variables = n;
  r.clauses.assign(clauses.begin(), clauses.end());
  auto params = sat_parameters(n, m);
  r.alpha = params.alpha;
  r.beta = params.beta;
  r.tau = params.tau;

  std::int64_t ground = r.tau + (n + 1) * r.beta + (n + 1) * r.alpha + 8LL * m;
  if (ground > (std::int64_t{1} << 30)) throw Error(ErrorCode::LimitExceeded, "reduction ground set too large");
  r.ground_size = static_cast<int>(ground);
  const int g = r.ground_size;

  VarId next = 1;
  auto block = [&](std::int64_t size) {
    VarSet s(g);
    for (std::int64_t i = 0; i < size; ++i) s.insert(next++);
    return s;
  };
  r.t = block(r.tau);
  for (int j = 0; j <= n; ++j) r.b_blocks.push_back(block(r.beta));
  for (int j = 1; j <= n + 1; ++j) r.a_blocks.push_back(block(r.alpha));
  // C^j_k is element first_m + 8(k-1) + j; bit b of j complements literal b.
  const VarId first_m = next;
  r.m_set = block(8LL * m);
  r.phi_set = VarSet(g);
  for (int k = 0; k < m; ++k) r.phi_set.insert(first_m + 8 * k);

  auto literal_sets = [&](int i, bool positive) {
    VarSet s(g);
    for (int k = 0; k < m; ++k) {
      for (int j = 0; j < 8; ++j) {
        for (int b = 0; b < 3; ++b) {
          int lit = r.clauses[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)];
          if (j >> b & 1) lit = -lit;
          if (lit == (positive ? i : -i)) s.insert(first_m + 8 * k + j);
        }
      }
    }
    return s;
  };
  for (int i = 0; i <= n + 1; ++i) {
    VarSet base(g);
    for (int j = i; j <= n; ++j) base |= r.b_blocks[static_cast<std::size_t>(j)];
    for (int j = 1; j <= i; ++j) base |= r.a_blocks[static_cast<std::size_t>(j - 1)];
    if (i >= 1 && i <= n) {
      r.x.push_back(base | literal_sets(i, true));
      r.y.push_back(base | literal_sets(i, false));
    } else {
      r.x.push_back(base);
      r.y.push_back(base);
    }
  }
  r.s = r.x[0];
  r.z = r.x[static_cast<std::size_t>(n + 1)] | r.phi_set;
  r.bodies = {r.s, r.z, r.t};
  for (int i = 1; i <= n; ++i) {
    r.bodies.push_back(r.x[static_cast<std::size_t>(i)]);
    r.bodies.push_back(r.y[static_cast<std::size_t>(i)]);
  }
  r.source_index = 0;
  r.target_index = 2;

  std::string problem = r.check_relations();
  if (!problem.empty()) throw Error(ErrorCode::VerificationFailed, "reduction relation violated: " + problem);
  return r;
}

std::string SatReductionInstance::check_relations() const {
  const std::int64_t n = variables;
  const std::int64_t m = static_cast<std::int64_t>(clauses.size());
  const std::int64_t n1 = n + 1;
  const Int128 a = alpha, b = beta, t = tau;

  if (!(a * a > m * m && a * a > 256 * n1 + 512 * n1 * n1 + 272)) return "alpha^2 bound";
  if (!(b > 2 * a + 32 * n1 + 16)) return "beta bound";
  if (!(t > (n1 * b + 17) * (n1 * a + m))) return "tau bound";
  if (!(b > 2 * a + 16)) return "beta > 2 alpha + 16";
  if (!((b - a - m) * t > (n1 * b + 17) * (n1 * a + m))) return "Z insertion inequality";
  if (!((b - a - 16) * a > 16 * (n1 * b + 17))) return "X/Y insertion inequality";
  if (m_set.size() != 8 * m) return "|M| = 8m";

  auto delta = [&](std::int64_t i) -> std::int64_t {
    if (i == 0 || i == n + 1) return 0;
    return (x[static_cast<std::size_t>(i)] & m_set).size();
  };
  for (std::int64_t i = 0; i <= n + 1; ++i) {
    const auto& xi = x[static_cast<std::size_t>(i)];
    const auto& yi = y[static_cast<std::size_t>(i)];
    // (i)
    if (delta(i) > 16 || (yi & m_set).size() != delta(i)) return "(i) at i=" + std::to_string(i);
    // (iii)
    const std::int64_t want = (n - i + 1) * beta + i * alpha + delta(i);
    if (xi.size() != want || yi.size() != want) return "(iii) at i=" + std::to_string(i);
  }
  // (ii)
  if (s.size() != n1 * beta || z.size() != n1 * alpha + m) return "(ii)";
  for (std::int64_t i = 0; i <= n; ++i) {
    // (iv)
    if (!(x[static_cast<std::size_t>(i)].size() > x[static_cast<std::size_t>(i + 1)].size() + alpha)) {
      return "(iv) at i=" + std::to_string(i);
    }
  }
  VarSet before(ground_size);
  for (std::int64_t i = 1; i <= n + 1; ++i) {
    before |= x[static_cast<std::size_t>(i - 1)];
    // (v)
    std::int64_t fresh = x[static_cast<std::size_t>(i)].count_minus(before);
    if (fresh < alpha || fresh > alpha + 16) return "(v) at i=" + std::to_string(i);
  }
  for (std::int64_t i = 1; i <= n; ++i) {
    const VarSet step = x[static_cast<std::size_t>(i + 1)] - x[static_cast<std::size_t>(i)];
    const VarSet allowed = x[static_cast<std::size_t>(i + 1)] & m_set;
    for (std::int64_t j = 0; j < i; ++j) {
      // (vi)
      if (!(x[static_cast<std::size_t>(j)] & step).is_subset_of(allowed)) {
        return "(vi) at i=" + std::to_string(i) + ", j=" + std::to_string(j);
      }
    }
  }
  return {};
}

}  // namespace keyhorn
