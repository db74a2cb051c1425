#ifndef XBIFIX_CLIQUE_HPP_
#define XBIFIX_CLIQUE_HPP_

#include <algorithm>  // for sort, stable_sort
#include <bit>        // for popcount, countr_zero
#include <chrono>     // for steady_clock, duration
#include <cstddef>    // for size_t
#include <cstdint>    // for uint64_t
#include <numeric>    // for iota
#include <optional>   // for optional
#include <string>     // for to_string
#include <vector>     // for vector

#include "code.hpp"
#include "construction.hpp"
#include "errors.hpp"
#include "word.hpp"

namespace xbifix {

namespace detail {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : blocks_((bits + 63) / 64, 0), bits_(bits) {}

  std::size_t size() const noexcept { return bits_; }

  void set(std::size_t i) noexcept { blocks_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) noexcept { blocks_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const noexcept { return (blocks_[i / 64] >> (i % 64)) & 1u; }

  bool none() const noexcept {
    for (auto b : blocks_) {
      if (b) return false;
    }
    return true;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
    return c;
  }

  // Index of the lowest set bit, or size() when empty.
  std::size_t first() const noexcept {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (blocks_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(blocks_[i]));
    }
    return bits_;
  }

  void assign_and(Bitset const& a, Bitset const& b) noexcept {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] = a.blocks_[i] & b.blocks_[i];
  }

  void and_not(Bitset const& b) noexcept {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= ~b.blocks_[i];
  }

 private:
  std::vector<std::uint64_t> blocks_;
  std::size_t bits_ = 0;
};

}  // namespace detail

// Vertices: the bifix-free words of Z_q^n, sorted. Edge (u, v) iff u and v
// are mutually cross-bifix-free. No self-loops are stored.
class CompatGraph {
 public:
  CompatGraph(std::size_t n, unsigned q, std::vector<Word> vertices,
              std::vector<detail::Bitset> adjacency)
      : n_(n), q_(q), vertices_(std::move(vertices)), adjacency_(std::move(adjacency)) {}

  std::size_t length() const noexcept { return n_; }
  unsigned alphabet() const noexcept { return q_; }
  std::size_t order() const noexcept { return vertices_.size(); }
  std::vector<Word> const& vertices() const noexcept { return vertices_; }
  bool adjacent(std::size_t u, std::size_t v) const { return adjacency_[u].test(v); }
  std::size_t degree(std::size_t u) const { return adjacency_[u].count(); }
  detail::Bitset const& neighbours(std::size_t u) const { return adjacency_[u]; }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (auto const& row : adjacency_) twice += row.count();
    return twice / 2;
  }

  std::optional<std::size_t> index_of(Word const& w) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), w);
    if (it == vertices_.end() || !(*it == w)) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

 private:
  std::size_t n_;
  unsigned q_;
  std::vector<Word> vertices_;
  std::vector<detail::Bitset> adjacency_;
};

inline constexpr std::size_t default_vertex_cap = std::size_t{1} << 16;

inline CompatGraph build_graph(std::size_t n, unsigned q,
                               std::size_t vertex_cap = default_vertex_cap) {
  check_alphabet(q);
  if (n < 2) throw DomainError("build_graph: n must be at least 2");
  if (!bounded_power(q, n, max_exhaustive_space)) {
    throw CapacityError("build_graph: q^n exceeds the exhaustive-search limit");
  }
  std::vector<Word> vertices;
  for_each_word(n, q, [&](std::span<Symbol const> x) {
    if (is_bifix_free(x)) {
      if (vertices.size() == vertex_cap) {
        throw CapacityError("build_graph: more than " + std::to_string(vertex_cap)
                            + " bifix-free words");
      }
      vertices.emplace_back(std::vector<Symbol>(x.begin(), x.end()), q);
    }
    return true;
  });

  std::size_t const v = vertices.size();
  std::vector<PackedAffixes> packed;
  packed.reserve(v);
  for (auto const& w : vertices) packed.emplace_back(w);
  std::vector<detail::Bitset> adjacency(v, detail::Bitset(v));
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = i + 1; j < v; ++j) {
      if (cross_pair_ok(packed[i], packed[j])) {
        adjacency[i].set(j);
        adjacency[j].set(i);
      }
    }
  }
  return CompatGraph(n, q, std::move(vertices), std::move(adjacency));
}

enum class CliqueStatus {
  optimal,     // search completed, size is C(n,q)
  lower_bound  // budget ran out, size is only a lower bound
};

struct CliqueResult {
  std::size_t size;
  Code witness;
  std::uint64_t nodes_explored;
  std::chrono::duration<double> wall_time;
  CliqueStatus status;
};

namespace detail {

// Branch and bound over candidate bitsets with greedy-colouring bounds, in
// the style of MCQ/MaxCliqueDyn. Vertices are renumbered by non-increasing
// degree; colouring always picks the lowest-numbered candidate.
class CliqueSearch {
 public:
  CliqueSearch(CompatGraph const& g, std::chrono::duration<double> budget)
      : budget_(budget), start_(std::chrono::steady_clock::now()) {
    std::size_t const v = g.order();
    perm_.resize(v);
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    std::vector<std::size_t> deg(v);
    for (std::size_t i = 0; i < v; ++i) deg[i] = g.degree(i);
    std::stable_sort(perm_.begin(), perm_.end(),
                     [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
    adj_.assign(v, Bitset(v));
    for (std::size_t i = 0; i < v; ++i) {
      for (std::size_t j = 0; j < v; ++j) {
        if (g.adjacent(perm_[i], perm_[j])) adj_[i].set(j);
      }
    }
  }

  // Seeds the incumbent with a known clique (original vertex indices).
  void seed(std::vector<std::size_t> clique_original) {
    if (clique_original.size() <= best_.size()) return;
    std::vector<std::size_t> rank(perm_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) rank[perm_[i]] = i;
    best_.clear();
    for (auto u : clique_original) best_.push_back(rank[u]);
  }

  bool run() {
    std::size_t const v = adj_.size();
    Bitset candidates(v);
    for (std::size_t i = 0; i < v; ++i) candidates.set(i);
    if (v > 0 && best_.empty()) best_.push_back(0);
    expand(candidates);
    return !timed_out_;
  }

  std::vector<std::size_t> best_original() const {
    std::vector<std::size_t> out;
    for (auto u : best_) out.push_back(perm_[u]);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  void expand(Bitset candidates) {
    if (timed_out_) return;
    if ((++nodes_ & 1023) == 0
        && std::chrono::steady_clock::now() - start_ > budget_) {
      timed_out_ = true;
      return;
    }
    // greedy colouring; only vertices whose colour can still improve the
    // incumbent are kept as branching candidates
    std::vector<std::size_t> order;
    std::vector<std::size_t> colour;
    std::size_t const need = best_.size() + 1 > current_.size()
                                 ? best_.size() + 1 - current_.size()
                                 : 1;
    Bitset uncoloured = candidates;
    Bitset klass(adj_.size());
    std::size_t k = 0;
    while (!uncoloured.none()) {
      ++k;
      klass = uncoloured;
      while (!klass.none()) {
        std::size_t u = klass.first();
        klass.reset(u);
        uncoloured.reset(u);
        klass.and_not(adj_[u]);
        if (k >= need) {
          order.push_back(u);
          colour.push_back(k);
        }
      }
    }

    Bitset next(adj_.size());
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current_.size() + colour[i] <= best_.size()) return;
      std::size_t u = order[i];
      current_.push_back(u);
      next.assign_and(candidates, adj_[u]);
      if (next.none()) {
        if (current_.size() > best_.size()) best_ = current_;
      } else {
        expand(next);
        if (timed_out_) return;
      }
      current_.pop_back();
      candidates.reset(u);
    }
  }

  std::vector<Bitset> adj_;
  std::vector<std::size_t> perm_;  // new index -> original index
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
  std::chrono::duration<double> budget_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// Exact maximum clique within `budget`; on timeout the best clique found is
// returned with status lower_bound. `seed` may supply a known clique.
inline CliqueResult max_clique(CompatGraph const& g,
                               std::chrono::duration<double> budget,
                               std::optional<Code> const& seed = std::nullopt) {
  if (!(budget.count() > 0)) throw DomainError("max_clique: budget must be positive");
  auto const start = std::chrono::steady_clock::now();
  detail::CliqueSearch search(g, budget);
  if (seed) {
    std::vector<std::size_t> idx;
    for (Word const& w : *seed) {
      auto i = g.index_of(w);
      if (!i) throw DomainError("max_clique: seed word " + w.to_digits() + " is not a vertex");
      idx.push_back(*i);
    }
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        if (!g.adjacent(idx[a], idx[b])) throw DomainError("max_clique: seed is not a clique");
      }
    }
    search.seed(std::move(idx));
  }
  bool const complete = search.run();
  std::vector<Word> words;
  for (auto i : search.best_original()) words.push_back(g.vertices()[i]);
  Code witness(g.length(), g.alphabet(), std::move(words));
  std::size_t const size = witness.size();
  return CliqueResult{size,
                      mark_verified(witness),
                      search.nodes(),
                      std::chrono::steady_clock::now() - start,
                      complete ? CliqueStatus::optimal : CliqueStatus::lower_bound};
}

struct RowCertificate {
  std::size_t optimum;  // C(n,q) when result.status is optimal
  BigInt construction;  // S(n,q)
  bool matches_construction;
  CliqueResult result;
};

// C(n,q) by exhaustive search, compared with the best construction. The
// construction code seeds the incumbent.
inline RowCertificate certify_optimal_row(std::size_t n, unsigned q,
                                          std::chrono::duration<double> budget,
                                          std::size_t vertex_cap = default_vertex_cap) {
  SizeRecord best = best_size(n, q);
  CompatGraph g = build_graph(n, q, vertex_cap);
  std::optional<Code> seed;
  if (best.best_k) seed = generate_direct({n, *best.best_k, q});
  CliqueResult r = max_clique(g, budget, seed);
  bool const matches = BigInt(static_cast<unsigned long>(r.size)) == best.size;
  return RowCertificate{r.size, best.size, matches, std::move(r)};
}

}  // namespace xbifix

#endif  // XBIFIX_CLIQUE_HPP_
