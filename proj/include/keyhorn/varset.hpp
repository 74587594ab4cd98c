#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace keyhorn {

/// Variables are dense 1-based identifiers 1..n.
using VarId = std::int32_t;

/// A subset of the universe {1..n}, stored as a packed bitset so that union,
/// difference and subset tests run in O(n / 64).
class VarSet {
 public:
  VarSet() = default;
  explicit VarSet(int universe);
  VarSet(int universe, std::initializer_list<VarId> vars);
  VarSet(int universe, std::span<const VarId> vars);

  static VarSet full(int universe);

  int universe() const noexcept { return n_; }

  bool contains(VarId v) const noexcept {
    if (v < 1 || v > n_) return false;
    auto i = static_cast<std::size_t>(v - 1);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void insert(VarId v);
  void erase(VarId v);

  int size() const noexcept;
  bool empty() const noexcept;
  bool is_full() const noexcept { return size() == n_; }

  bool is_subset_of(const VarSet& other) const;
  bool intersects(const VarSet& other) const;

  /// |*this \ other|
  int count_minus(const VarSet& other) const;
  /// |*this \ (a ∪ b)|
  int count_minus(const VarSet& a, const VarSet& b) const;

  VarSet& operator|=(const VarSet& other);
  VarSet& operator&=(const VarSet& other);
  VarSet& operator-=(const VarSet& other);

  friend VarSet operator|(VarSet a, const VarSet& b) { return a |= b; }
  friend VarSet operator&(VarSet a, const VarSet& b) { return a &= b; }
  friend VarSet operator-(VarSet a, const VarSet& b) { return a -= b; }

  /// Complement within the universe.
  VarSet complement() const;

  std::vector<VarId> elements() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        int b = std::countr_zero(bits);
        f(static_cast<VarId>(w * 64 + static_cast<std::size_t>(b) + 1));
        bits &= bits - 1;
      }
    }
  }

  /// Smallest element, 0 if empty.
  VarId first() const noexcept;

  /// Space-separated ascending element list.
  std::string to_string() const;

  friend bool operator==(const VarSet&, const VarSet&) = default;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

 private:
  void require_same_universe(const VarSet& other) const;
  void trim() noexcept;

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Lexicographic comparison of the ascending element sequences.
std::strong_ordering lex_compare(const VarSet& a, const VarSet& b);

/// Order used for canonical listings: by size, then lexicographically.
bool canonical_less(const VarSet& a, const VarSet& b);

}  // namespace keyhorn
