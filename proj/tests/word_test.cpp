#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "xbifix/code.hpp"
#include "xbifix/code_io.hpp"
#include "xbifix/word.hpp"

namespace xbifix {
namespace {

Word w(char const* digits, unsigned q = 2) { return Word::from_digits(digits, q); }

TEST(Word, RejectsSymbolsOutsideAlphabet) {
  EXPECT_THROW(Word({0, 2}, 2), DomainError);
  EXPECT_THROW(Word({}, 2), DomainError);
  EXPECT_THROW(Word({0}, 1), DomainError);
  EXPECT_THROW(Word({0}, 37), DomainError);
  EXPECT_NO_THROW(Word({35}, 36));
}

TEST(Word, RunConstructor) {
  EXPECT_EQ(Word::run(0, 3, 2), w("000"));
  EXPECT_EQ(Word::run(0, 2, 2).concat(Word::run(1, 3, 2)).concat(w("01")), w("0011101"));
}

TEST(Word, PrefixAndSuffix) {
  EXPECT_EQ(prefix(w("0011101"), 2), w("00"));
  EXPECT_EQ(prefix(w("1100000"), 6), w("110000"));
  EXPECT_THROW(prefix(w("01"), 2), DomainError);
  EXPECT_EQ(suffix(w("0011101"), 1), w("1"));
  EXPECT_EQ(suffix(w("1101010"), 3), w("010"));
  EXPECT_THROW(suffix(w("01"), 0), DomainError);
}

TEST(Word, PrefixIsSlice) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + rng() % 10;
    unsigned q = 2 + rng() % 5;
    std::vector<Symbol> s(n);
    for (auto& x : s) x = static_cast<Symbol>(rng() % q);
    Word word(s, q);
    std::size_t len = 1 + rng() % (n - 1);
    Word head = prefix(word, len), tail = suffix(word, len);
    auto p = head.symbols();
    auto t = tail.symbols();
    EXPECT_TRUE(std::equal(p.begin(), p.end(), s.begin()));
    EXPECT_TRUE(std::equal(t.begin(), t.end(), s.end() - static_cast<std::ptrdiff_t>(len)));
  }
}

TEST(BifixFree, Examples) {
  EXPECT_TRUE(is_bifix_free(w("1100000")));
  EXPECT_FALSE(is_bifix_free(w("00")));
  EXPECT_TRUE(is_bifix_free(w("0")));
}

TEST(BifixFree, CountLengthFour) {
  int count = 0;
  for (auto const& s : oracle::all_words(4, 2)) count += oracle::bifix_free(s);
  EXPECT_EQ(count, 6);
  int lib = 0;
  for_each_word(4, 2, [&](std::span<Symbol const> x) {
    lib += is_bifix_free(x);
    return true;
  });
  EXPECT_EQ(lib, 6);
}

// Failure-function test agrees with the all-lengths check on every binary
// word up to length 12.
TEST(BifixFree, MatchesNaiveOracleUpToTwelve) {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (auto const& s : oracle::all_words(n, 2)) {
      std::vector<Symbol> sym(s.begin(), s.end());
      ASSERT_EQ(is_bifix_free(Word(sym, 2)), oracle::bifix_free(s)) << "n=" << n;
    }
  }
}

TEST(BifixFree, MatchesNaiveOracleTernary) {
  for (std::size_t n = 1; n <= 7; ++n) {
    for (auto const& s : oracle::all_words(n, 3)) {
      std::vector<Symbol> sym(s.begin(), s.end());
      ASSERT_EQ(is_bifix_free(Word(sym, 3)), oracle::bifix_free(s));
    }
  }
}

TEST(CrossPair, Examples) {
  EXPECT_TRUE(cross_pair_ok(w("1100000"), w("1100000")));
  EXPECT_FALSE(cross_pair_ok(w("0011"), w("1101")));
  // the naive oracle's verdict for (0,1),(0,1)
  ASSERT_TRUE(oracle::cross_ok({0, 1}, {0, 1}));
  EXPECT_TRUE(cross_pair_ok(w("01"), w("01")));
  EXPECT_THROW(cross_pair_ok(w("01"), w("011")), DomainError);
  EXPECT_THROW(cross_pair_ok(w("01", 2), w("01", 3)), DomainError);
}

TEST(CrossPair, SelfPairIsBifixFree) {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (auto const& s : oracle::all_words(n, 2)) {
      Word x(std::vector<Symbol>(s.begin(), s.end()), 2);
      ASSERT_EQ(cross_pair_ok(x, x), is_bifix_free(x));
    }
  }
}

TEST(CrossPair, PackedAgreesWithOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5000; ++trial) {
    std::size_t n = 2 + rng() % 9;
    unsigned q = 2 + rng() % 3;
    std::vector<Symbol> a(n), b(n);
    // force shared affixes often enough to hit both verdicts
    for (auto& x : a) x = static_cast<Symbol>(rng() % q);
    for (auto& x : b) x = static_cast<Symbol>(rng() % q);
    if (rng() % 2) {
      auto len = static_cast<std::ptrdiff_t>(1 + rng() % (n - 1));
      std::copy(a.begin(), a.begin() + len, b.end() - len);
    }
    Word u(a, q), v(b, q);
    bool expected = oracle::cross_ok(oracle::to_seq(u), oracle::to_seq(v));
    ASSERT_EQ(cross_pair_ok(u, v), expected);
    ASSERT_EQ(cross_pair_ok(PackedAffixes(u), PackedAffixes(v)), expected);
  }
}

TEST(Code, RejectsMixedWords) {
  EXPECT_THROW(Code(3, 2, {w("001"), w("01")}), DomainError);
  EXPECT_THROW(Code(2, 2, {w("01", 3)}), DomainError);
}

TEST(Code, SortsAndDeduplicates) {
  Code c(3, 2, {w("011"), w("001"), w("011")});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.words()[0], w("001"));
  EXPECT_EQ(c.with(w("001")), c);
}

TEST(VerifyCode, Examples) {
  Code marker(7, 2, {w("1100000"), w("1100010"), w("1101000"), w("1101010")});
  EXPECT_TRUE(verify_code(marker));
  EXPECT_EQ(mark_verified(marker).status(), Verification::cross_bifix_free);

  Code bad(2, 2, {w("01"), w("10")});
  auto v = find_violation(bad);
  ASSERT_TRUE(v);
  EXPECT_FALSE(cross_pair_ok(v->prefix_word, v->suffix_word));
  EXPECT_EQ(prefix(v->prefix_word, v->len), suffix(v->suffix_word, v->len));
  EXPECT_EQ(mark_verified(bad).status(), Verification::violated);

  EXPECT_THROW(verify_code(Code(3, 2)), DomainError);
}

// Random small codes: the affix-index verifier agrees with the naive
// all-pairs check, and neither word order nor duplicates change the verdict.
TEST(VerifyCode, MatchesOracleOnRandomCodes) {
  std::mt19937_64 rng(3);
  int accepted = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    std::size_t n = 2 + rng() % 7;
    unsigned q = 2 + rng() % 2;
    std::size_t m = 1 + rng() % 4;
    std::vector<Word> words;
    std::vector<oracle::Seq> seqs;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Symbol> s(n);
      // leading zeros bias the sample toward cross-bifix-free sets
      for (std::size_t j = 0; j < n; ++j) s[j] = j < n / 3 ? 0 : static_cast<Symbol>(rng() % q);
      words.emplace_back(s, q);
    }
    Code c(n, q, words);
    for (auto const& x : c) seqs.push_back(oracle::to_seq(x));
    bool expected = oracle::cross_bifix_free(seqs);
    accepted += expected;
    ASSERT_EQ(verify_code(c), expected);

    auto shuffled = words;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    shuffled.push_back(words.front());
    ASSERT_EQ(verify_code(Code(n, q, shuffled)), expected);
  }
  EXPECT_GT(accepted, 100);
}

TEST(Nonexpandable, SingleWordOfLengthTwo) {
  auto brute = oracle::extension({{0, 1}}, 2, 2);
  EXPECT_FALSE(brute.has_value());
  EXPECT_EQ(is_nonexpandable(Code(2, 2, {w("01")})), !brute.has_value());
}

TEST(Nonexpandable, MatchesBruteForceOnSmallCodes) {
  std::mt19937_64 rng(5);
  int expandable = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 2 + rng() % 4;
    unsigned q = 2 + rng() % 2;
    std::vector<Symbol> s(n);
    for (auto& x : s) x = static_cast<Symbol>(rng() % q);
    if (!is_bifix_free(std::span<Symbol const>(s))) continue;
    Code c(n, q, {Word(s, q)});
    auto brute = oracle::extension({oracle::Seq(s.begin(), s.end())}, n, static_cast<int>(q));
    auto lib = find_extension(c);
    ASSERT_EQ(lib.has_value(), brute.has_value());
    if (lib) {
      ++expandable;
      EXPECT_TRUE(verify_code(c.with(*lib)));
      EXPECT_FALSE(c.contains(*lib));
    }
  }
  EXPECT_GT(expandable, 0);
}

TEST(Nonexpandable, Guards) {
  EXPECT_THROW(is_nonexpandable(Code(2, 2, {w("01"), w("10")})), DomainError);
  Code big(25, 2, {Word::run(0, 24, 2).concat(w("1"))});
  EXPECT_THROW(is_nonexpandable(big), CapacityError);
}

TEST(CodeIo, FormatIsExact) {
  Code c(4, 3, {Word::from_digits("0021", 3), Word::from_digits("0011", 3)});
  EXPECT_EQ(format_code(c), "# xbifix code n=4 q=3\n0011\n0021\n");
}

TEST(CodeIo, RoundTripIsBitExact) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 8;
    unsigned q = 2 + rng() % 35;
    std::vector<Word> words;
    for (std::size_t i = 0, m = 1 + rng() % 6; i < m; ++i) {
      std::vector<Symbol> s(n);
      for (auto& x : s) x = static_cast<Symbol>(rng() % q);
      words.emplace_back(s, q);
    }
    Code c(n, q, words);
    std::string text = format_code(c);
    Code back = parse_code(text);
    ASSERT_EQ(back, c);
    ASSERT_EQ(format_code(back), text);
  }
}

TEST(CodeIo, ParseErrorsCarryLineNumbers) {
  try {
    parse_code(std::string("# xbifix code n=3 q=2\n001\n0x1\n"));
    FAIL();
  } catch (ParseError const& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_code(std::string("# xbifix code n=3 q=2\n001\n01\n"));
    FAIL();
  } catch (ParseError const& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_code(std::string("# xbifix code n=3 q=2\n002\n"));
    FAIL();
  } catch (ParseError const& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_code(std::string("xbifix n=3 q=2\n")), ParseError);
  EXPECT_THROW(parse_code(std::string("# xbifix code n=3 q=40\n")), ParseError);
  EXPECT_THROW(parse_code(std::string("")), ParseError);
}

}  // namespace
}  // namespace xbifix
