#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "keyhorn/gen.hpp"
#include "keyhorn/horn.hpp"

namespace keyhorn {

struct BodyFamily {
  int n = 0;
  std::vector<VarSet> bodies;
};

/// `.bodies` text: `c` comment lines, header `p keyhorn <n> <m>`, then m
/// lines of distinct variables. Blank lines are ignored.
BodyFamily parse_bodies(std::string_view text);
std::string write_bodies(int n, std::span<const VarSet> bodies);

/// `.horn` text: header `p horn <n> <g>`, then g lines `<body> -> <heads>`.
/// The result is canonical (equal bodies merged).
HornCNF parse_horn(std::string_view text);
std::string write_horn(const HornCNF& phi);

/// Whitespace- or comma-separated variable list over {1..n}.
VarSet parse_var_list(int n, std::string_view text);

/// DIMACS 3-CNF (`p cnf <vars> <clauses>`, zero-terminated clauses).
struct Cnf3 {
  int variables = 0;
  std::vector<Clause3> clauses;
};
Cnf3 parse_dimacs_3cnf(std::string_view text);

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace keyhorn
