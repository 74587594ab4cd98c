#include "keyhorn/io.hpp"

#include <charconv>
#include <cstdio>

#include "keyhorn/error.hpp"

namespace keyhorn {

namespace {

struct Line {
  int number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos < text.size() || (pos == 0 && text.empty())) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++number;
    out.push_back({number, line});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto space = [](char c) { return c == ' ' || c == '\t' || c == ','; };
  while (i < s.size()) {
    while (i < s.size() && space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool blank(std::string_view s) { return tokens(s).empty(); }

bool comment(std::string_view s) { return s == "c" || s.starts_with("c ") || s.starts_with("c\t"); }

long long to_int(std::string_view tok, int line, const char* what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("expected an integer ") + what + ", got '" + std::string(tok) + "'");
  }
  return v;
}

VarSet var_list(int n, std::string_view text, int line) {
  VarSet s(n);
  for (auto tok : tokens(text)) {
    long long v = to_int(tok, line, "variable");
    if (v < 1 || v > n) {
      throw ParseError(line, "variable " + std::to_string(v) + " outside 1.." + std::to_string(n));
    }
    if (s.contains(static_cast<VarId>(v))) throw ParseError(line, "duplicate variable " + std::to_string(v));
    s.insert(static_cast<VarId>(v));
  }
  return s;
}

// Header `p <kind> <a> <b>`; returns {a, b}.
std::pair<long long, long long> header(const Line& l, std::string_view kind) {
  auto t = tokens(l.text);
  if (t.size() != 4 || t[0] != "p" || t[1] != kind) {
    throw ParseError(l.number, "malformed header, expected 'p " + std::string(kind) + " <n> <count>'");
  }
  long long a = to_int(t[2], l.number, "in header");
  long long b = to_int(t[3], l.number, "in header");
  if (a < 1 || a > (1LL << 30)) throw ParseError(l.number, "variable count must be positive");
  if (b < 0 || b > (1LL << 30)) throw ParseError(l.number, "negative or oversized count in header");
  return {a, b};
}

std::string join(const VarSet& s) { return s.to_string(); }

}  // namespace

BodyFamily parse_bodies(std::string_view text) {
  BodyFamily out;
  long long expected = -1;
  int last_line = 0;
  for (const Line& l : split_lines(text)) {
    last_line = l.number;
    if (blank(l.text) || comment(l.text)) continue;
    if (expected < 0) {
      auto [n, m] = header(l, "keyhorn");
      out.n = static_cast<int>(n);
      expected = m;
      continue;
    }
    if (static_cast<long long>(out.bodies.size()) == expected) {
      throw ParseError(l.number, "more bodies than the " + std::to_string(expected) + " declared in the header");
    }
    VarSet body = var_list(out.n, l.text, l.number);
    if (body.empty()) throw ParseError(l.number, "empty body");
    if (body.is_full()) throw ParseError(l.number, "body equals the full variable set");
    out.bodies.push_back(std::move(body));
  }
  if (expected < 0) throw ParseError(last_line, "missing 'p keyhorn <n> <m>' header");
  if (static_cast<long long>(out.bodies.size()) != expected) {
    throw ParseError(last_line, "header declares " + std::to_string(expected) + " bodies but " +
                                    std::to_string(out.bodies.size()) + " were given");
  }
  return out;
}

std::string write_bodies(int n, std::span<const VarSet> bodies) {
  std::string out = "p keyhorn " + std::to_string(n) + " " + std::to_string(bodies.size()) + "\n";
  for (const auto& b : bodies) out += join(b) + "\n";
  return out;
}

HornCNF parse_horn(std::string_view text) {
  int n = 0;
  long long expected = -1;
  int last_line = 0;
  std::vector<ClauseGroup> groups;
  for (const Line& l : split_lines(text)) {
    last_line = l.number;
    if (blank(l.text) || comment(l.text)) continue;
    if (expected < 0) {
      auto [nn, g] = header(l, "horn");
      n = static_cast<int>(nn);
      expected = g;
      continue;
    }
    if (static_cast<long long>(groups.size()) == expected) {
      throw ParseError(l.number, "more groups than the " + std::to_string(expected) + " declared in the header");
    }
    std::size_t arrow = l.text.find("->");
    if (arrow == std::string_view::npos || l.text.find("->", arrow + 2) != std::string_view::npos) {
      throw ParseError(l.number, "expected exactly one '->'");
    }
    VarSet body = var_list(n, l.text.substr(0, arrow), l.number);
    VarSet heads = var_list(n, l.text.substr(arrow + 2), l.number);
    if (body.empty()) throw ParseError(l.number, "empty body");
    if (body.is_full()) throw ParseError(l.number, "body equals the full variable set");
    if (body.intersects(heads)) throw ParseError(l.number, "head variable inside the body");
    groups.push_back({std::move(body), std::move(heads)});
  }
  if (expected < 0) throw ParseError(last_line, "missing 'p horn <n> <g>' header");
  if (static_cast<long long>(groups.size()) != expected) {
    throw ParseError(last_line, "header declares " + std::to_string(expected) + " groups but " +
                                    std::to_string(groups.size()) + " were given");
  }
  return HornCNF(n, std::move(groups));
}

std::string write_horn(const HornCNF& phi) {
  std::string out = "p horn " + std::to_string(phi.universe()) + " " + std::to_string(phi.groups().size()) + "\n";
  for (const auto& g : phi.groups()) out += join(g.body) + " -> " + join(g.heads) + "\n";
  return out;
}

VarSet parse_var_list(int n, std::string_view text) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "variable list over an empty universe");
  return var_list(n, text, 0);
}

Cnf3 parse_dimacs_3cnf(std::string_view text) {
  Cnf3 out;
  long long declared = -1;
  std::vector<int> pending;
  int last_line = 0;
  for (const Line& l : split_lines(text)) {
    last_line = l.number;
    if (blank(l.text) || comment(l.text) || l.text.starts_with('%')) continue;
    if (declared < 0) {
      auto [v, c] = header(l, "cnf");
      out.variables = static_cast<int>(v);
      declared = c;
      continue;
    }
    for (auto tok : tokens(l.text)) {
      long long lit = to_int(tok, l.number, "literal");
      if (lit == 0) {
        if (pending.size() != 3) {
          throw ParseError(l.number, "clause with " + std::to_string(pending.size()) + " literals, expected 3");
        }
        out.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      if (lit < -out.variables || lit > out.variables) {
        throw ParseError(l.number, "literal " + std::to_string(lit) + " outside the declared variables");
      }
      pending.push_back(static_cast<int>(lit));
    }
  }
  if (declared < 0) throw ParseError(last_line, "missing 'p cnf <vars> <clauses>' header");
  if (!pending.empty()) throw ParseError(last_line, "last clause is not terminated by 0");
  if (static_cast<long long>(out.clauses.size()) != declared) {
    throw ParseError(last_line, "header declares " + std::to_string(declared) + " clauses but " +
                                    std::to_string(out.clauses.size()) + " were given");
  }
  return out;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace keyhorn
