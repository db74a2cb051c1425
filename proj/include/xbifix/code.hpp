#ifndef XBIFIX_CODE_HPP_
#define XBIFIX_CODE_HPP_

#include <algorithm>      // for sort, unique, binary_search
#include <cstddef>        // for size_t
#include <cstdint>        // for uint64_t
#include <optional>       // for optional
#include <string>         // for string
#include <string_view>    // for string_view
#include <unordered_map>  // for unordered_map
#include <unordered_set>  // for unordered_set
#include <utility>        // for move
#include <vector>         // for vector

#include "errors.hpp"
#include "word.hpp"

namespace xbifix {

enum class Verification { unchecked, cross_bifix_free, violated };

// A set of equal-length words over a common alphabet. Words are kept sorted
// lexicographically and deduplicated.
class Code {
 public:
  Code(std::size_t n, unsigned q) : n_(n), q_(q) {
    check_alphabet(q);
    if (n < 1) throw DomainError("code length must be at least 1");
  }

  Code(std::size_t n, unsigned q, std::vector<Word> words)
      : Code(n, q) {
    for (Word const& w : words) check_member(w);
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    words_ = std::move(words);
  }

  std::size_t length() const noexcept { return n_; }
  unsigned alphabet() const noexcept { return q_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  std::vector<Word> const& words() const noexcept { return words_; }
  Verification status() const noexcept { return status_; }

  auto begin() const noexcept { return words_.begin(); }
  auto end() const noexcept { return words_.end(); }

  bool contains(Word const& w) const {
    return std::binary_search(words_.begin(), words_.end(), w);
  }

  // Returns a copy with w added; adding a member again is a no-op.
  Code with(Word w) const {
    std::vector<Word> words(words_);
    words.push_back(std::move(w));
    return Code(n_, q_, std::move(words));
  }

  Code with_status(Verification s) const {
    Code c(*this);
    c.status_ = s;
    return c;
  }

  friend bool operator==(Code const& a, Code const& b) {
    return a.n_ == b.n_ && a.q_ == b.q_ && a.words_ == b.words_;
  }

 private:
  void check_member(Word const& w) const {
    if (w.size() != n_ || w.alphabet() != q_) {
      throw DomainError("word " + w.to_digits() + " does not lie in Z_"
                        + std::to_string(q_) + "^" + std::to_string(n_));
    }
  }

  std::size_t n_;
  unsigned q_;
  std::vector<Word> words_;
  Verification status_ = Verification::unchecked;
};

// A proper prefix of `prefix_word` of length `len` equals the suffix of
// `suffix_word` of the same length. The two words may coincide.
struct Violation {
  Word prefix_word;
  Word suffix_word;
  std::size_t len;
};

namespace detail {

// All proper prefixes (or suffixes) of the code's words, bucketed by length.
// Views point into the code's word storage.
class AffixIndex {
 public:
  AffixIndex(Code const& c, bool prefixes) : by_len_(c.length()) {
    std::size_t const n = c.length();
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::string_view b = c.words()[i].bytes();
      for (std::size_t len = 1; len < n; ++len) {
        by_len_[len].emplace(prefixes ? b.substr(0, len) : b.substr(n - len),
                             i);
      }
    }
  }

  // Index of some word carrying this affix, if any.
  std::optional<std::size_t> find(std::string_view affix) const {
    auto const& bucket = by_len_[affix.size()];
    auto it = bucket.find(affix);
    if (it == bucket.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<std::unordered_map<std::string_view, std::size_t>> by_len_;
};

}  // namespace detail

// Finds a witness that `c` is not cross-bifix-free. Equivalent to testing
// cross_pair_ok on every ordered pair (including (w, w)), but runs in
// O(|C| n^2) rather than O(|C|^2 n^2).
inline std::optional<Violation> find_violation(Code const& c) {
  if (c.empty()) throw DomainError("verify_code: empty code");
  detail::AffixIndex prefixes(c, true);
  std::size_t const n = c.length();
  for (Word const& v : c) {
    std::string_view b = v.bytes();
    for (std::size_t len = 1; len < n; ++len) {
      if (auto u = prefixes.find(b.substr(n - len))) {
        return Violation{c.words()[*u], v, len};
      }
    }
  }
  return std::nullopt;
}

inline bool verify_code(Code const& c) { return !find_violation(c); }

inline Code mark_verified(Code const& c) {
  return c.with_status(verify_code(c) ? Verification::cross_bifix_free
                                      : Verification::violated);
}

// Default guard for exhaustive passes over Z_q^n.
inline constexpr std::uint64_t max_exhaustive_space = std::uint64_t{1} << 24;

// q^n, or nullopt when it exceeds `limit`.
inline std::optional<std::uint64_t> bounded_power(unsigned q, std::size_t n,
                                                  std::uint64_t limit) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (p > limit / q) return std::nullopt;
    p *= q;
  }
  return p;
}

// Calls fn(span) for every word of Z_q^n in lexicographic order; stops early
// when fn returns false.
template <typename Fn>
void for_each_word(std::size_t n, unsigned q, Fn&& fn) {
  std::vector<Symbol> x(n, 0);
  while (true) {
    if (!fn(std::span<Symbol const>(x))) return;
    std::size_t i = n;
    while (i > 0 && x[i - 1] + 1u == q) x[--i] = 0;
    if (i == 0) return;
    ++x[i - 1];
  }
}

// A word outside `c` whose addition keeps the code cross-bifix-free, if one
// exists. Brute force over Z_q^n.
inline std::optional<Word> find_extension(
    Code const& c, std::uint64_t limit = max_exhaustive_space) {
  if (!verify_code(c)) {
    throw DomainError("nonexpandability needs a cross-bifix-free code");
  }
  std::size_t const n = c.length();
  unsigned const q = c.alphabet();
  if (!bounded_power(q, n, limit)) {
    throw CapacityError("q^n = " + std::to_string(q) + "^" + std::to_string(n)
                        + " exceeds the exhaustive-search limit "
                        + std::to_string(limit));
  }
  detail::AffixIndex prefixes(c, true);
  detail::AffixIndex suffixes(c, false);
  std::optional<Word> found;
  for_each_word(n, q, [&](std::span<Symbol const> x) {
    if (!is_bifix_free(x)) return true;
    std::string_view b(reinterpret_cast<char const*>(x.data()), n);
    for (std::size_t len = 1; len < n; ++len) {
      if (suffixes.find(b.substr(0, len))) return true;
      if (prefixes.find(b.substr(n - len))) return true;
    }
    Word w(std::vector<Symbol>(x.begin(), x.end()), q);
    // members pass every test above, so they must be skipped explicitly
    if (c.contains(w)) return true;
    found = std::move(w);
    return false;
  });
  return found;
}

inline bool is_nonexpandable(Code const& c,
                             std::uint64_t limit = max_exhaustive_space) {
  return !find_extension(c, limit);
}

}  // namespace xbifix

#endif  // XBIFIX_CODE_HPP_
