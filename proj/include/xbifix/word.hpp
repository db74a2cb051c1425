#ifndef XBIFIX_WORD_HPP_
#define XBIFIX_WORD_HPP_

#include <algorithm>    // for equal, all_of
#include <compare>      // for strong_ordering
#include <cstddef>      // for size_t
#include <cstdint>      // for uint8_t, uint64_t
#include <span>         // for span
#include <string>       // for string
#include <string_view>  // for string_view
#include <utility>      // for move
#include <vector>       // for vector

#include "errors.hpp"

namespace xbifix {

using Symbol = std::uint8_t;

// Symbols serialize as single base-36 digits, which caps the alphabet.
inline constexpr unsigned max_alphabet = 36;

inline char symbol_to_digit(Symbol s) {
  return s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + s - 10);
}

// Returns max_alphabet for characters that are not base-36 digits.
inline unsigned digit_to_symbol(char c) {
  if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
  if (c >= 'a' && c <= 'z') return static_cast<unsigned>(c - 'a') + 10;
  return max_alphabet;
}

inline void check_alphabet(unsigned q) {
  if (q < 2 || q > max_alphabet) {
    throw DomainError("alphabet size must be in [2, 36], got "
                      + std::to_string(q));
  }
}

// A fixed-length word over Z_q = {0, ..., q-1}.
class Word {
 public:
  Word(std::vector<Symbol> symbols, unsigned q)
      : symbols_(std::move(symbols)), q_(q) {
    check_alphabet(q_);
    if (symbols_.empty()) {
      throw DomainError("a word has length at least 1");
    }
    for (Symbol s : symbols_) {
      if (s >= q_) {
        throw DomainError("symbol " + std::to_string(s)
                          + " outside Z_" + std::to_string(q_));
      }
    }
  }

  // The run b^m.
  static Word run(Symbol b, std::size_t m, unsigned q) {
    return Word(std::vector<Symbol>(m, b), q);
  }

  // Parses a base-36 digit string such as "0011".
  static Word from_digits(std::string_view digits, unsigned q) {
    std::vector<Symbol> symbols;
    symbols.reserve(digits.size());
    for (char c : digits) {
      unsigned s = digit_to_symbol(c);
      if (s >= q) {
        throw DomainError(std::string("digit '") + c + "' outside Z_"
                          + std::to_string(q));
      }
      symbols.push_back(static_cast<Symbol>(s));
    }
    return Word(std::move(symbols), q);
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  unsigned alphabet() const noexcept { return q_; }
  std::span<Symbol const> symbols() const noexcept { return symbols_; }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }

  // Byte view of the symbols, used as a hash key for affix lookups.
  std::string_view bytes() const noexcept {
    return {reinterpret_cast<char const*>(symbols_.data()), symbols_.size()};
  }

  std::string to_digits() const {
    std::string out;
    out.reserve(symbols_.size());
    for (Symbol s : symbols_) out.push_back(symbol_to_digit(s));
    return out;
  }

  Word concat(Word const& other) const {
    if (other.q_ != q_) throw DomainError("concatenating different alphabets");
    std::vector<Symbol> symbols(symbols_);
    symbols.insert(symbols.end(), other.symbols_.begin(), other.symbols_.end());
    return Word(std::move(symbols), q_);
  }

  friend bool operator==(Word const&, Word const&) = default;
  friend std::strong_ordering operator<=>(Word const& a, Word const& b) {
    if (auto c = a.q_ <=> b.q_; c != 0) return c;
    return a.symbols_ <=> b.symbols_;
  }

 private:
  std::vector<Symbol> symbols_;
  unsigned q_;
};

namespace detail {

inline void check_proper_length(Word const& w, std::size_t len) {
  if (len < 1 || len + 1 > w.size()) {
    throw DomainError("proper affix length must be in [1, "
                      + std::to_string(w.size() == 0 ? 0 : w.size() - 1)
                      + "], got " + std::to_string(len));
  }
}

}  // namespace detail

// First len symbols of w; only proper prefixes (1 <= len <= n-1).
inline Word prefix(Word const& w, std::size_t len) {
  detail::check_proper_length(w, len);
  auto s = w.symbols();
  return Word(std::vector<Symbol>(s.begin(), s.begin() + len), w.alphabet());
}

// Last len symbols of w; only proper suffixes (1 <= len <= n-1).
inline Word suffix(Word const& w, std::size_t len) {
  detail::check_proper_length(w, len);
  auto s = w.symbols();
  return Word(std::vector<Symbol>(s.end() - len, s.end()), w.alphabet());
}

// Failure function: border[i] is the length of the longest proper border of
// s[0..i].
inline std::vector<std::size_t> border_array(std::span<Symbol const> s) {
  std::vector<std::size_t> border(s.size(), 0);
  std::size_t b = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    while (b > 0 && s[i] != s[b]) b = border[b - 1];
    if (s[i] == s[b]) ++b;
    border[i] = b;
  }
  return border;
}

// True iff no proper prefix of w is also a suffix of w. Length-1 words are
// bifix-free vacuously.
inline bool is_bifix_free(std::span<Symbol const> s) {
  return s.empty() || border_array(s).back() == 0;
}

inline bool is_bifix_free(Word const& w) {
  return is_bifix_free(w.symbols());
}

// True iff no proper prefix of either word is a suffix of the other.
// cross_pair_ok(u, u) == is_bifix_free(u).
inline bool cross_pair_ok(Word const& u, Word const& v) {
  if (u.size() != v.size() || u.alphabet() != v.alphabet()) {
    throw DomainError("cross_pair_ok: words differ in length or alphabet");
  }
  auto a = u.symbols();
  auto b = v.symbols();
  std::size_t const n = a.size();
  for (std::size_t len = 1; len < n; ++len) {
    if (std::equal(a.begin(), a.begin() + len, b.end() - len)) return false;
    if (std::equal(b.begin(), b.begin() + len, a.end() - len)) return false;
  }
  return true;
}

// Proper prefixes and suffixes of a word packed as base-q integers, so the
// pairwise test costs 2(n-1) integer compares. Requires q^(n-1) < 2^64.
class PackedAffixes {
 public:
  static bool fits(std::size_t n, unsigned q) {
    unsigned __int128 p = 1;
    for (std::size_t i = 1; i < n; ++i) {
      p *= q;
      if (p > UINT64_MAX) return false;
    }
    return true;
  }

  explicit PackedAffixes(Word const& w)
      : prefixes_(w.size()), suffixes_(w.size()) {
    if (!fits(w.size(), w.alphabet())) {
      throw CapacityError("word too long to pack affixes in 64 bits");
    }
    auto s = w.symbols();
    std::size_t const n = s.size();
    std::uint64_t const q = w.alphabet();
    std::uint64_t acc = 0;
    for (std::size_t len = 1; len < n; ++len) {
      acc = acc * q + s[len - 1];
      prefixes_[len] = acc;
    }
    // suffix of length len read most-significant first, like the prefix
    std::uint64_t pow = 1;
    acc = 0;
    for (std::size_t len = 1; len < n; ++len) {
      acc += pow * s[n - len];
      pow *= q;
      suffixes_[len] = acc;
    }
  }

  std::size_t size() const noexcept { return prefixes_.size(); }
  std::uint64_t prefix(std::size_t len) const { return prefixes_[len]; }
  std::uint64_t suffix(std::size_t len) const { return suffixes_[len]; }

 private:
  std::vector<std::uint64_t> prefixes_;
  std::vector<std::uint64_t> suffixes_;
};

// Same verdict as cross_pair_ok on the words the tables were built from.
inline bool cross_pair_ok(PackedAffixes const& u, PackedAffixes const& v) {
  std::size_t const n = u.size();
  for (std::size_t len = 1; len < n; ++len) {
    if (u.prefix(len) == v.suffix(len) || v.prefix(len) == u.suffix(len)) {
      return false;
    }
  }
  return true;
}

}  // namespace xbifix

#endif  // XBIFIX_WORD_HPP_
