#ifndef XBIFIX_CONSTRUCTION_HPP_
#define XBIFIX_CONSTRUCTION_HPP_

#include <algorithm>  // for sort, adjacent_find
#include <cstddef>    // for size_t
#include <cstdint>    // for uint64_t
#include <map>        // for map
#include <optional>   // for optional
#include <string>     // for string, to_string
#include <vector>     // for vector

#include "code.hpp"
#include "errors.hpp"
#include "fibonacci.hpp"
#include "mpreal.hpp"
#include "word.hpp"

namespace xbifix {

// S_{k,q}(n): words starting with k zeros then a nonzero symbol, ending with
// a nonzero symbol, with no run of k zeros in positions k+2 .. n-1.
struct ConstructionParams {
  std::size_t n;
  unsigned k;
  unsigned q;

  void validate() const {
    check_alphabet(q);
    if (k < 2 || k + 2 > n) {
      throw DomainError("construction needs 2 <= k <= n-2, got n="
                        + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
};

inline constexpr std::uint64_t default_generation_limit = std::uint64_t{1} << 24;

// |S_{k,q}(n)| = (q-1)^2 F_{k,q}(n-k-2).
inline BigInt size_formula(ConstructionParams const& p) {
  p.validate();
  return BigInt((p.q - 1) * (p.q - 1)) * fib(p.k, p.q, p.n - p.k - 2);
}

namespace detail {

inline bool has_zero_run(std::span<Symbol const> s, unsigned k) {
  unsigned run = 0;
  for (Symbol x : s) {
    run = x == 0 ? run + 1 : 0;
    if (run >= k) return true;
  }
  return false;
}

inline void check_generation_size(ConstructionParams const& p,
                                  std::uint64_t limit) {
  // the direct enumeration visits (q-1)^2 q^(n-k-2) candidates
  auto space = bounded_power(p.q, p.n - p.k - 2, limit);
  std::uint64_t const ends = std::uint64_t{p.q - 1} * (p.q - 1);
  if (!space || *space > limit / ends) {
    throw CapacityError("enumerating S_{" + std::to_string(p.k) + ","
                        + std::to_string(p.q) + "}(" + std::to_string(p.n)
                        + ") exceeds the generation limit "
                        + std::to_string(limit));
  }
}

inline std::vector<Symbol> leading_block(unsigned k, Symbol first) {
  std::vector<Symbol> w(k, 0);
  w.push_back(first);
  return w;
}

}  // namespace detail

// Filters every middle section (s_{k+2}, ..., s_{n-1}) in lexicographic order.
inline Code generate_direct(ConstructionParams const& p,
                            std::uint64_t limit = default_generation_limit) {
  p.validate();
  detail::check_generation_size(p, limit);
  std::size_t const middle = p.n - p.k - 2;
  std::vector<Word> words;
  for (unsigned a = 1; a < p.q; ++a) {
    for_each_word(middle, p.q, [&](std::span<Symbol const> s) {
      if (detail::has_zero_run(s, p.k)) return true;
      for (unsigned b = 1; b < p.q; ++b) {
        std::vector<Symbol> w = detail::leading_block(p.k, static_cast<Symbol>(a));
        w.insert(w.end(), s.begin(), s.end());
        w.push_back(static_cast<Symbol>(b));
        words.emplace_back(std::move(w), p.q);
      }
      return true;
    });
  }
  return Code(p.n, p.q, std::move(words));
}

// Builds S_{k,q}(n) bottom-up from the recursion
//
//   S(m) = { (0^k, a, s, b) : a, b != 0, s in Z_q^(m-k-2) }   k+2 <= m <= 2k+1
//   S(m) = U_{l=1..k} { (s, 0^(l-1), a) : s in S(m-l), a != 0 }  m >= 2k+2
//
// and checks that the k parts of each union are pairwise disjoint.
inline Code generate_recursive(ConstructionParams const& p,
                               std::uint64_t limit = default_generation_limit) {
  p.validate();
  detail::check_generation_size(p, limit);
  std::size_t const k = p.k;
  std::size_t const base_end = std::min(p.n, 2 * k + 1);

  // levels[m] holds S(m) as raw symbol vectors
  std::vector<std::vector<std::vector<Symbol>>> levels(p.n + 1);
  for (std::size_t m = k + 2; m <= base_end; ++m) {
    for (unsigned a = 1; a < p.q; ++a) {
      for_each_word(m - k - 2, p.q, [&](std::span<Symbol const> s) {
        for (unsigned b = 1; b < p.q; ++b) {
          std::vector<Symbol> w = detail::leading_block(p.k, static_cast<Symbol>(a));
          w.insert(w.end(), s.begin(), s.end());
          w.push_back(static_cast<Symbol>(b));
          levels[m].push_back(std::move(w));
        }
        return true;
      });
    }
  }
  for (std::size_t m = 2 * k + 2; m <= p.n; ++m) {
    auto& level = levels[m];
    for (std::size_t l = 1; l <= k; ++l) {
      for (auto const& s : levels[m - l]) {
        for (unsigned a = 1; a < p.q; ++a) {
          std::vector<Symbol> w(s);
          w.insert(w.end(), l - 1, Symbol{0});
          w.push_back(static_cast<Symbol>(a));
          level.push_back(std::move(w));
        }
      }
    }
    std::sort(level.begin(), level.end());
    if (std::adjacent_find(level.begin(), level.end()) != level.end()) {
      throw std::logic_error("generate_recursive: parts T_l(" + std::to_string(m)
                             + ") overlap");
    }
    // later levels read only S(m-k+1) .. S(m)
    levels[m - k].clear();
  }

  std::vector<Word> words;
  words.reserve(levels[p.n].size());
  for (auto& w : levels[p.n]) words.emplace_back(std::move(w), p.q);
  return Code(p.n, p.q, std::move(words));
}

// S(n,q) maximized over k, with the smallest maximizing k.
struct SizeRecord {
  std::size_t n;
  unsigned q;
  std::optional<unsigned> best_k;  // none for n = 3
  BigInt size;
  std::map<unsigned, BigInt> per_k;
};

inline SizeRecord best_size(std::size_t n, unsigned q) {
  check_alphabet(q);
  if (n < 3) throw DomainError("best_size: n must be at least 3");
  if (n == 3) {
    // no k satisfies 2 <= k <= n-2; only the binary value is tabulated
    if (q != 2) {
      throw DomainError("best_size: n = 3 is defined only for q = 2");
    }
    return SizeRecord{n, q, std::nullopt, BigInt(1), {}};
  }
  SizeRecord record{n, q, std::nullopt, BigInt(0), {}};
  for (unsigned k = 2; k + 2 <= n; ++k) {
    BigInt s = size_formula({n, k, q});
    if (!record.best_k || s > record.size) {
      record.best_k = k;
      record.size = s;
    }
    record.per_k.emplace(k, std::move(s));
  }
  return record;
}

}  // namespace xbifix

#endif  // XBIFIX_CONSTRUCTION_HPP_
