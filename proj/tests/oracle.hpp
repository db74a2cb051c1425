// Naive reference implementations used only by the tests. Everything here
// works straight from the definitions on plain integer vectors and shares no
// code with the library.

#ifndef XBIFIX_TESTS_ORACLE_HPP_
#define XBIFIX_TESTS_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "xbifix/word.hpp"

namespace oracle {

using Seq = std::vector<int>;

inline Seq to_seq(xbifix::Word const& w) {
  return Seq(w.symbols().begin(), w.symbols().end());
}

inline Seq head(Seq const& s, std::size_t len) { return Seq(s.begin(), s.begin() + len); }
inline Seq tail(Seq const& s, std::size_t len) { return Seq(s.end() - len, s.end()); }

inline bool bifix_free(Seq const& s) {
  for (std::size_t len = 1; len < s.size(); ++len) {
    if (head(s, len) == tail(s, len)) return false;
  }
  return true;
}

inline bool cross_ok(Seq const& u, Seq const& v) {
  for (std::size_t len = 1; len < u.size(); ++len) {
    if (head(u, len) == tail(v, len)) return false;
    if (head(v, len) == tail(u, len)) return false;
  }
  return true;
}

// Every ordered pair, itself included.
inline bool cross_bifix_free(std::vector<Seq> const& code) {
  for (auto const& u : code) {
    for (auto const& v : code) {
      for (std::size_t len = 1; len < u.size(); ++len) {
        if (head(u, len) == tail(v, len)) return false;
      }
    }
  }
  return true;
}

inline std::vector<Seq> all_words(std::size_t n, int q) {
  std::vector<Seq> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(q);
  for (std::size_t x = 0; x < total; ++x) {
    Seq s(n);
    std::size_t y = x;
    for (std::size_t i = n; i-- > 0;) {
      s[i] = static_cast<int>(y % static_cast<std::size_t>(q));
      y /= static_cast<std::size_t>(q);
    }
    out.push_back(s);
  }
  return out;
}

// Tries every word outside the code and re-verifies the enlarged set.
inline std::optional<Seq> extension(std::vector<Seq> const& code, std::size_t n, int q) {
  for (auto const& x : all_words(n, q)) {
    bool member = false;
    for (auto const& w : code) member = member || w == x;
    if (member) continue;
    auto bigger = code;
    bigger.push_back(x);
    if (cross_bifix_free(bigger)) return x;
  }
  return std::nullopt;
}

// Plain exhaustive search for the largest set of pairwise compatible
// bifix-free words; no bounding beyond the trivial size check.
inline std::size_t max_code_size(std::size_t n, int q) {
  std::vector<Seq> verts;
  for (auto const& w : all_words(n, q)) {
    if (bifix_free(w)) verts.push_back(w);
  }
  std::size_t best = 0;
  std::vector<Seq> chosen;
  auto dfs = [&](auto&& self, std::size_t from) -> void {
    best = std::max(best, chosen.size());
    if (chosen.size() + (verts.size() - from) <= best) return;
    for (std::size_t i = from; i < verts.size(); ++i) {
      bool ok = true;
      for (auto const& c : chosen) ok = ok && cross_ok(c, verts[i]);
      if (!ok) continue;
      chosen.push_back(verts[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0);
  return best;
}

// 1-based end position of the first window equal to some codeword.
inline std::optional<std::uint64_t> first_match(std::vector<Seq> const& code,
                                                std::vector<int> const& stream) {
  std::size_t const n = code.front().size();
  for (std::size_t end = n; end <= stream.size(); ++end) {
    Seq window(stream.begin() + static_cast<std::ptrdiff_t>(end - n),
               stream.begin() + static_cast<std::ptrdiff_t>(end));
    for (auto const& w : code) {
      if (w == window) return end;
    }
  }
  return std::nullopt;
}

// F(n) straight from the recurrence, for values that fit in 128 bits.
inline unsigned __int128 fib128(int k, int q, int n) {
  std::vector<unsigned __int128> f;
  unsigned __int128 p = 1;
  for (int i = 0; i < k; ++i, p *= q) f.push_back(p);
  while (static_cast<int>(f.size()) <= n) {
    unsigned __int128 s = 0;
    for (int l = 1; l <= k; ++l) s += f[f.size() - l];
    f.push_back(s * (q - 1));
  }
  return f[n];
}

}  // namespace oracle

#endif  // XBIFIX_TESTS_ORACLE_HPP_
