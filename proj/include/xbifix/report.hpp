#ifndef XBIFIX_REPORT_HPP_
#define XBIFIX_REPORT_HPP_

#include <chrono>    // for system_clock
#include <cstddef>   // for size_t
#include <cstdint>   // for uint64_t
#include <ctime>     // for gmtime_r, strftime
#include <map>       // for map
#include <optional>  // for optional
#include <sstream>   // for ostringstream
#include <string>    // for string
#include <vector>    // for vector

#include "json.hpp"

#include "bounds.hpp"
#include "clique.hpp"
#include "code.hpp"
#include "construction.hpp"
#include "fibonacci.hpp"
#include "sync_sim.hpp"

namespace xbifix {

inline constexpr char const* version = "1.0.0";

using Json = nlohmann::ordered_json;

// Big integers travel as decimal strings.
inline std::string dec(BigInt const& z) { return z.get_str(10); }

inline Json to_json(SizeRecord const& r) {
  Json per_k = Json::object();
  for (auto const& [k, s] : r.per_k) per_k[std::to_string(k)] = dec(s);
  return Json{{"n", r.n},
              {"q", r.q},
              {"best_k", r.best_k ? Json(*r.best_k) : Json(nullptr)},
              {"size", dec(r.size)},
              {"per_k", per_k}};
}

inline SizeRecord size_record_from_json(Json const& j) {
  SizeRecord r{j.at("n").get<std::size_t>(), j.at("q").get<unsigned>(), std::nullopt,
               BigInt(j.at("size").get<std::string>()), {}};
  if (!j.at("best_k").is_null()) r.best_k = j.at("best_k").get<unsigned>();
  for (auto const& [k, s] : j.at("per_k").items()) {
    r.per_k.emplace(static_cast<unsigned>(std::stoul(k)), BigInt(s.get<std::string>()));
  }
  return r;
}

inline Json to_json(RootEstimate const& r, std::size_t digits) {
  return Json{{"alpha", r.alpha.to_string(digits)},
              {"bracket", {r.lo.to_string(digits), r.hi.to_string(digits)}},
              {"precision_bits", r.precision_bits}};
}

inline Json to_json(SyncStats const& s) {
  return Json{{"samples", s.samples}, {"mean", s.mean}, {"variance", s.variance},
              {"min", s.min},         {"max", s.max},   {"truncated", s.truncated}};
}

// ---- C(n,q) cache ---------------------------------------------------------

// Completed clique runs keyed by (n, q); only optimal results are stored.
using CliqueCache = std::map<std::pair<std::size_t, unsigned>, std::size_t>;

inline Json to_json(CliqueCache const& cache) {
  Json arr = Json::array();
  for (auto const& [key, size] : cache) {
    arr.push_back(Json{{"n", key.first}, {"q", key.second}, {"size", size}});
  }
  return arr;
}

inline CliqueCache clique_cache_from_json(Json const& j) {
  CliqueCache cache;
  for (auto const& e : j) {
    cache[{e.at("n").get<std::size_t>(), e.at("q").get<unsigned>()}] =
        e.at("size").get<std::size_t>();
  }
  return cache;
}

// ---- table ----------------------------------------------------------------

struct TableRow {
  std::size_t n;
  std::optional<BigInt> bilotta;  // q = 2 only
  BigInt size;
  std::optional<unsigned> best_k;
  BigInt upper_floor;
  std::optional<std::size_t> optimal;
};

inline std::vector<TableRow> make_table(unsigned q, std::size_t n_max,
                                        CliqueCache const& cache = {}) {
  std::vector<TableRow> rows;
  // n = 3 has no construction parameter and is tabulated only for q = 2
  for (std::size_t n = q == 2 ? 3 : 4; n <= n_max; ++n) {
    SizeRecord s = best_size(n, q);
    TableRow row{n, std::nullopt, s.size, s.best_k, floor_of(upper_bound(n, q)), std::nullopt};
    if (q == 2) row.bilotta = bilotta_size(n);
    if (auto it = cache.find({n, q}); it != cache.end()) row.optimal = it->second;
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json table_json(unsigned q, std::vector<TableRow> const& rows) {
  Json arr = Json::array();
  for (auto const& r : rows) {
    arr.push_back(Json{{"n", r.n},
                       {"bilotta", r.bilotta ? Json(dec(*r.bilotta)) : Json(nullptr)},
                       {"size", dec(r.size)},
                       {"best_k", r.best_k ? Json(*r.best_k) : Json(nullptr)},
                       {"upper_bound_floor", dec(r.upper_floor)},
                       {"optimal", r.optimal ? Json(*r.optimal) : Json(nullptr)}});
  }
  return Json{{"q", q}, {"rows", arr}};
}

inline std::vector<TableRow> table_from_json(Json const& j) {
  std::vector<TableRow> rows;
  for (auto const& e : j.at("rows")) {
    TableRow r{e.at("n").get<std::size_t>(), std::nullopt, BigInt(e.at("size").get<std::string>()),
               std::nullopt, BigInt(e.at("upper_bound_floor").get<std::string>()), std::nullopt};
    if (!e.at("bilotta").is_null()) r.bilotta = BigInt(e.at("bilotta").get<std::string>());
    if (!e.at("best_k").is_null()) r.best_k = e.at("best_k").get<unsigned>();
    if (!e.at("optimal").is_null()) r.optimal = e.at("optimal").get<std::size_t>();
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::string table_markdown(unsigned q, std::vector<TableRow> const& rows) {
  std::ostringstream out;
  out << "| n | " << (q == 2 ? "B(n) | " : "") << "S(n," << q << ") | k | floor(q^n/(2n-1)) | C(n,"
      << q << ") |\n";
  out << "|---|" << (q == 2 ? "---|" : "") << "---|---|---|---|\n";
  for (auto const& r : rows) {
    out << "| " << r.n << " | ";
    if (q == 2) out << dec(*r.bilotta) << " | ";
    out << dec(r.size) << " | " << (r.best_k ? std::to_string(*r.best_k) : "-") << " | "
        << dec(r.upper_floor) << " | " << (r.optimal ? std::to_string(*r.optimal) : "") << " |\n";
  }
  return out.str();
}

// ---- verify ---------------------------------------------------------------

struct VerifyReport {
  bool cross_bifix_free;
  std::optional<Violation> violation;
  std::optional<bool> nonexpandable;  // unset when q^n is over the limit
  std::optional<Word> extension;      // a word that could be added
  bool capacity_exceeded = false;
};

inline VerifyReport verify_report(Code const& c,
                                  std::uint64_t limit = max_exhaustive_space) {
  VerifyReport r{true, find_violation(c), std::nullopt, std::nullopt};
  r.cross_bifix_free = !r.violation;
  if (!r.cross_bifix_free) return r;
  try {
    r.extension = find_extension(c, limit);
    r.nonexpandable = !r.extension;
  } catch (CapacityError const&) {
    r.capacity_exceeded = true;
  }
  return r;
}

inline std::string format_verify_report(VerifyReport const& r) {
  std::ostringstream out;
  if (!r.cross_bifix_free) {
    auto const& v = *r.violation;
    out << "cross-bifix-free: no; prefix of length " << v.len << " of "
        << v.prefix_word.to_digits() << " equals the suffix of " << v.suffix_word.to_digits();
    return out.str();
  }
  out << "cross-bifix-free: yes; nonexpandable: ";
  if (r.capacity_exceeded) {
    out << "not checked (q^n over the exhaustive-search limit)";
  } else if (*r.nonexpandable) {
    out << "yes";
  } else {
    out << "no (" << r.extension->to_digits() << " can be added)";
  }
  return out.str();
}

// ---- manifest -------------------------------------------------------------

inline std::uint64_t fnv1a64(std::string_view data) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 15];
  return s;
}

// Enough to rerun a command and check its outputs byte for byte.
struct RunManifest {
  std::string command;
  Json parameters = Json::object();
  std::string tool_version = version;
  std::vector<std::uint64_t> seeds;
  std::string timestamp;
  std::map<std::string, std::string> output_digests;  // name -> fnv1a64 hex

  void add_output(std::string const& name, std::string_view contents) {
    output_digests[name] = "fnv1a64:" + hex64(fnv1a64(contents));
  }
};

inline std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline Json to_json(RunManifest const& m) {
  Json digests = Json::object();
  for (auto const& [k, v] : m.output_digests) digests[k] = v;
  return Json{{"command", m.command},   {"parameters", m.parameters},
              {"tool_version", m.tool_version}, {"seeds", m.seeds},
              {"timestamp", m.timestamp}, {"output_digests", digests}};
}

}  // namespace xbifix

#endif  // XBIFIX_REPORT_HPP_
