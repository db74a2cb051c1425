#ifndef XBIFIX_SYNC_SIM_HPP_
#define XBIFIX_SYNC_SIM_HPP_

#include <algorithm>      // for min, max
#include <bit>            // for has_single_bit, countr_zero
#include <cstddef>        // for size_t
#include <cstdint>        // for uint64_t
#include <limits>         // for numeric_limits
#include <optional>       // for optional
#include <thread>         // for thread
#include <unordered_set>  // for unordered_set
#include <vector>         // for vector

#include "code.hpp"
#include "errors.hpp"
#include "word.hpp"

namespace xbifix {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// I.i.d. uniform symbols of Z_q for one trial. Block j of trial t is
// splitmix64(key(seed, t) + j * golden), so a trial's stream depends only on
// (seed, t) and trials can be replayed in any order.
class SymbolStream {
 public:
  SymbolStream(std::uint64_t seed, std::uint64_t trial, unsigned q)
      : key_(splitmix64(seed ^ splitmix64(trial ^ 0x5851f42d4c957f2dULL))), q_(q) {
    check_alphabet(q);
    if (std::has_single_bit(q)) bits_ = static_cast<unsigned>(std::countr_zero(q));
  }

  Symbol operator()() {
    if (bits_ != 0) {
      if (left_ < bits_) {
        pool_ = block();
        left_ = 64;
      }
      Symbol s = static_cast<Symbol>(pool_ & (q_ - 1));
      pool_ >>= bits_;
      left_ -= bits_;
      return s;
    }
    // Lemire's multiply-shift with rejection
    std::uint64_t const threshold = (0 - std::uint64_t{q_}) % q_;
    while (true) {
      unsigned __int128 m = static_cast<unsigned __int128>(block()) * q_;
      if (static_cast<std::uint64_t>(m) >= threshold) {
        return static_cast<Symbol>(m >> 64);
      }
    }
  }

 private:
  std::uint64_t block() noexcept {
    return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * counter_++);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::uint64_t pool_ = 0;
  unsigned left_ = 0;
  unsigned bits_ = 0;
  unsigned q_;
};

// Multi-pattern matcher for equal-length words: the last n symbols are kept
// as a base-q integer and looked up in a table of codeword values.
class WindowMatcher {
 public:
  explicit WindowMatcher(Code const& code) : n_(code.length()), q_(code.alphabet()) {
    if (!PackedAffixes::fits(n_ + 1, q_)) {
      throw CapacityError("WindowMatcher: q^n does not fit in 64 bits");
    }
    top_ = 1;
    for (std::size_t i = 1; i < n_; ++i) top_ *= q_;
    auto dense = bounded_power(q_, n_, std::uint64_t{1} << 26);
    if (dense) dense_.assign(*dense, false);
    for (Word const& w : code) {
      std::uint64_t v = 0;
      for (Symbol s : w.symbols()) v = v * q_ + s;
      if (dense) {
        dense_[v] = true;
      } else {
        sparse_.insert(v);
      }
    }
  }

  std::size_t length() const noexcept { return n_; }
  unsigned alphabet() const noexcept { return q_; }

  // Window value after appending s to a window holding `value`.
  std::uint64_t shift(std::uint64_t value, Symbol s) const noexcept {
    return (value % top_) * q_ + s;
  }

  bool matches(std::uint64_t value) const {
    return dense_.empty() ? sparse_.count(value) != 0 : dense_[value];
  }

 private:
  std::size_t n_;
  unsigned q_;
  std::uint64_t top_;  // q^(n-1)
  std::vector<bool> dense_;
  std::unordered_set<std::uint64_t> sparse_;
};

// 1-based index of the last symbol of the first window that equals a
// codeword, or nullopt if none occurs within `cap` symbols.
template <typename Source>
std::optional<std::uint64_t> first_match_time(WindowMatcher const& m,
                                              Source&& next_symbol,
                                              std::uint64_t cap) {
  std::uint64_t window = 0;
  for (std::uint64_t t = 1; t <= cap; ++t) {
    window = m.shift(window, next_symbol());
    if (t >= m.length() && m.matches(window)) return t;
  }
  return std::nullopt;
}

struct SimConfig {
  Code code;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::uint64_t max_stream = std::uint64_t{1} << 32;
  unsigned threads = 1;
};

struct SyncStats {
  std::uint64_t samples = 0;
  double mean = 0;
  double variance = 0;  // unbiased
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  std::uint64_t truncated = 0;  // trials that hit max_stream
};

inline void check_sim_config(SimConfig const& cfg) {
  if (cfg.trials < 1) throw DomainError("run_sim: trials must be at least 1");
  if (cfg.code.length() < 2) {
    throw DomainError("run_sim: codes of length 1 always match at the first symbol");
  }
  if (cfg.code.empty() || !verify_code(cfg.code)) {
    throw DomainError("run_sim: code is not cross-bifix-free");
  }
  if (cfg.threads < 1) throw DomainError("run_sim: threads must be at least 1");
}

// Statistics are accumulated in trial order, so any thread count gives the
// same result for a given seed.
inline SyncStats run_sim(SimConfig const& cfg) {
  check_sim_config(cfg);
  WindowMatcher matcher(cfg.code);
  unsigned const q = cfg.code.alphabet();
  constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> times(cfg.trials, none);

  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      SymbolStream stream(cfg.seed, t, q);
      if (auto hit = first_match_time(matcher, stream, cfg.max_stream)) times[t] = *hit;
    }
  };
  unsigned const threads =
      static_cast<unsigned>(std::min<std::uint64_t>(cfg.threads, cfg.trials));
  if (threads == 1) {
    work(0, cfg.trials);
  } else {
    std::vector<std::thread> pool;
    std::uint64_t const chunk = (cfg.trials + threads - 1) / threads;
    for (unsigned i = 0; i < threads; ++i) {
      std::uint64_t b = i * chunk;
      std::uint64_t e = std::min(cfg.trials, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }

  // Welford
  SyncStats s;
  double m2 = 0;
  for (std::uint64_t x : times) {
    if (x == none) {
      ++s.truncated;
      continue;
    }
    ++s.samples;
    if (s.samples == 1) {
      s.min = s.max = x;
    } else {
      s.min = std::min(s.min, x);
      s.max = std::max(s.max, x);
    }
    double const d = static_cast<double>(x) - s.mean;
    s.mean += d / static_cast<double>(s.samples);
    m2 += d * (static_cast<double>(x) - s.mean);
  }
  s.variance = s.samples > 1 ? m2 / static_cast<double>(s.samples - 1) : 0.0;
  return s;
}

}  // namespace xbifix

#endif  // XBIFIX_SYNC_SIM_HPP_
