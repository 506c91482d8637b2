#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/container_hash/hash.hpp>

#include "errors.hpp"

namespace unirat {

class Monomial {
 public:
  using Exp = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
  Monomial(std::initializer_list<Exp> e) : e_(e.begin(), e.end()) {}
  template <class It>
  Monomial(It first, It last) : e_(first, last) {}

  static Monomial variable(std::size_t nvars, std::size_t i, Exp k = 1) {
    Monomial m(nvars);
    m.e_[i] = k;
    return m;
  }

  std::size_t size() const { return e_.size(); }
  Exp operator[](std::size_t i) const { return e_[i]; }
  Exp& operator[](std::size_t i) { return e_[i]; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (auto x : e_) d += x;
    return d;
  }
  bool is_one() const {
    return std::all_of(e_.begin(), e_.end(), [](Exp x) { return x == 0; });
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }
  bool coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] && o.e_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
    return r;
  }
  // a / b, requires b | a
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
    return r;
  }
  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
    return r;
  }
  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = std::min(a.e_[i], b.e_[i]);
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
  // Lexicographic comparison with variable 0 most significant.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.e_.size(); ++i)
      if (a.e_[i] != b.e_[i]) return a.e_[i] <=> b.e_[i];
    return std::strong_ordering::equal;
  }

  friend std::size_t hash_value(const Monomial& m) {
    return boost::hash_range(m.e_.begin(), m.e_.end());
  }

 private:
  boost::container::small_vector<Exp, 8> e_;
};

class MonomialOrder {
 public:
  enum class Kind { Lex, GrevLex, Block };
  struct Block {
    std::vector<std::size_t> vars;  // in decreasing significance
    Kind inner = Kind::GrevLex;     // Lex or GrevLex
  };

  MonomialOrder() = default;

  static MonomialOrder lex(std::size_t n) { return single(n, Kind::Lex); }
  static MonomialOrder grevlex(std::size_t n) { return single(n, Kind::GrevLex); }
  // Lex with an explicit variable precedence (first = largest).
  static MonomialOrder lex_by(std::vector<std::size_t> vars) {
    MonomialOrder o;
    o.kind_ = Kind::Lex;
    o.nvars_ = vars.size();
    o.blocks_.push_back({std::move(vars), Kind::Lex});
    o.validate();
    return o;
  }
  static MonomialOrder block(std::vector<Block> blocks) {
    MonomialOrder o;
    o.kind_ = Kind::Block;
    for (auto& b : blocks) {
      if (b.inner == Kind::Block) fail(ErrorCode::InvalidArgument, "nested block orders are not supported");
      o.nvars_ += b.vars.size();
    }
    o.blocks_ = std::move(blocks);
    o.validate();
    return o;
  }

  Kind kind() const { return kind_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  // Negative, zero, positive like a three-way comparison.
  int compare(const Monomial& a, const Monomial& b) const {
    for (const auto& blk : blocks_) {
      int c = blk.inner == Kind::Lex ? cmp_lex(blk.vars, a, b) : cmp_grevlex(blk.vars, a, b);
      if (c) return c;
    }
    return 0;
  }
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  // True when every variable in `elim` is ranked in blocks strictly ahead of
  // all variables outside it, so the order eliminates `elim`.
  bool eliminates(const std::vector<bool>& elim) const {
    bool seen_kept = false;
    for (const auto& blk : blocks_) {
      bool any_e = false, any_k = false;
      for (auto v : blk.vars) (elim[v] ? any_e : any_k) = true;
      if (any_e && seen_kept) return false;
      if (any_e && any_k) {
        if (blk.inner != Kind::Lex) return false;
        // inside a lex block the eliminated variables must come first
        bool kept = false;
        for (auto v : blk.vars) {
          if (!elim[v]) kept = true;
          else if (kept) return false;
        }
      }
      if (any_k) seen_kept = true;
    }
    return true;
  }

  std::string describe() const {
    auto nm = [](Kind k) { return k == Kind::Lex ? "lex" : "grevlex"; };
    if (kind_ != Kind::Block) return nm(kind_);
    std::string s = "block(";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (i) s += ",";
      s += nm(blocks_[i].inner);
      s += "[" + std::to_string(blocks_[i].vars.size()) + "]";
    }
    return s + ")";
  }

 private:
  static MonomialOrder single(std::size_t n, Kind k) {
    MonomialOrder o;
    o.kind_ = k;
    o.nvars_ = n;
    Block b;
    b.inner = k;
    for (std::size_t i = 0; i < n; ++i) b.vars.push_back(i);
    o.blocks_.push_back(std::move(b));
    return o;
  }
  void validate() const {
    std::vector<bool> seen(nvars_, false);
    for (const auto& b : blocks_)
      for (auto v : b.vars) {
        if (v >= nvars_ || seen[v]) fail(ErrorCode::InvalidArgument, "block order is not a partition of the universe");
        seen[v] = true;
      }
  }
  static int cmp_lex(const std::vector<std::size_t>& vars, const Monomial& a, const Monomial& b) {
    for (auto v : vars)
      if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
    return 0;
  }
  static int cmp_grevlex(const std::vector<std::size_t>& vars, const Monomial& a, const Monomial& b) {
    std::uint64_t da = 0, db = 0;
    for (auto v : vars) da += a[v], db += b[v];
    if (da != db) return da > db ? 1 : -1;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      if (a[*it] != b[*it]) return a[*it] < b[*it] ? 1 : -1;
    return 0;
  }

  Kind kind_ = Kind::Lex;
  std::size_t nvars_ = 0;
  std::vector<Block> blocks_;
};

}  // namespace unirat
