#include "keyhorn/varset.hpp"

#include <algorithm>

#include "keyhorn/error.hpp"

namespace keyhorn {

namespace {

std::size_t word_count(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

}  // namespace

VarSet::VarSet(int universe) : n_(universe) {
  if (universe < 0) throw Error(ErrorCode::InvalidArgument, "negative universe size");
  words_.assign(word_count(universe), 0);
}

VarSet::VarSet(int universe, std::initializer_list<VarId> vars)
    : VarSet(universe, std::span<const VarId>(vars.begin(), vars.size())) {}

VarSet::VarSet(int universe, std::span<const VarId> vars) : VarSet(universe) {
  for (VarId v : vars) insert(v);
}

VarSet VarSet::full(int universe) {
  VarSet s(universe);
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  s.trim();
  return s;
}

void VarSet::insert(VarId v) {
  if (v < 1 || v > n_) {
    throw Error(ErrorCode::InvalidArgument,
                "variable " + std::to_string(v) + " outside universe 1.." + std::to_string(n_));
  }
  auto i = static_cast<std::size_t>(v - 1);
  words_[i >> 6] |= std::uint64_t{1} << (i & 63);
}

void VarSet::erase(VarId v) {
  if (v < 1 || v > n_) return;
  auto i = static_cast<std::size_t>(v - 1);
  words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

int VarSet::size() const noexcept {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool VarSet::empty() const noexcept {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

void VarSet::require_same_universe(const VarSet& other) const {
  if (n_ != other.n_) {
    throw Error(ErrorCode::UniverseMismatch, "set universes differ: " + std::to_string(n_) +
                                                 " vs " + std::to_string(other.n_));
  }
}

bool VarSet::is_subset_of(const VarSet& other) const {
  require_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool VarSet::intersects(const VarSet& other) const {
  require_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

int VarSet::count_minus(const VarSet& other) const {
  require_same_universe(other);
  int c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & ~other.words_[i]);
  return c;
}

int VarSet::count_minus(const VarSet& a, const VarSet& b) const {
  require_same_universe(a);
  require_same_universe(b);
  int c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i)
    c += std::popcount(words_[i] & ~(a.words_[i] | b.words_[i]));
  return c;
}

VarSet& VarSet::operator|=(const VarSet& other) {
  require_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

VarSet& VarSet::operator&=(const VarSet& other) {
  require_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

VarSet& VarSet::operator-=(const VarSet& other) {
  require_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

VarSet VarSet::complement() const {
  VarSet c(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) c.words_[i] = ~words_[i];
  c.trim();
  return c;
}

void VarSet::trim() noexcept {
  if (words_.empty()) return;
  int tail = n_ % 64;
  if (tail != 0) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

std::vector<VarId> VarSet::elements() const {
  std::vector<VarId> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](VarId v) { out.push_back(v); });
  return out;
}

VarId VarSet::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return static_cast<VarId>(w * 64 + std::countr_zero(words_[w]) + 1);
  }
  return 0;
}

std::string VarSet::to_string() const {
  std::string out;
  for_each([&](VarId v) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  });
  return out;
}

std::strong_ordering lex_compare(const VarSet& a, const VarSet& b) {
  // Walk both ascending sequences in lock step.
  auto ea = a.elements();
  auto eb = b.elements();
  return std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end());
}

bool canonical_less(const VarSet& a, const VarSet& b) {
  int sa = a.size(), sb = b.size();
  if (sa != sb) return sa < sb;
  return lex_compare(a, b) < 0;
}

}  // namespace keyhorn
