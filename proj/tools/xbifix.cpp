// xbifix: construct, verify, count and bound cross-bifix-free codes.
//
// Exit codes: 0 success, 1 property violated, 2 usage or parse error,
// 3 capacity or budget exhausted.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "xbifix/code_io.hpp"
#include "xbifix/report.hpp"
#include "xbifix/xbifix.hpp"

namespace {

using namespace xbifix;

enum Exit { ok = 0, violated = 1, usage = 2, capacity = 3 };

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  double budget = 600;
  std::string manifest;
  long bits = 128;
};

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, 0);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(std::string const& path, std::string const& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

// Prints `text` to stdout and records it in the manifest (if requested).
class Emitter {
 public:
  Emitter(Globals const& g, std::string command) : g_(g) {
    m_.command = std::move(command);
    m_.timestamp = utc_timestamp();
  }

  RunManifest& manifest() { return m_; }

  void out(std::string const& text) {
    std::cout << text;
    stdout_ += text;
  }

  // Saves an artifact and its manifest next to it.
  void artifact(std::string const& path, std::string const& contents) {
    write_file(path, contents);
    m_.add_output(path, contents);
    RunManifest side = m_;
    write_file(path + ".manifest.json", to_json(side).dump(2) + "\n");
  }

  void finish() {
    if (g_.manifest.empty()) return;
    m_.add_output("stdout", stdout_);
    write_file(g_.manifest, to_json(m_).dump(2) + "\n");
  }

 private:
  Globals const& g_;
  RunManifest m_;
  std::string stdout_;
};

int cmd_gen(Globals const& g, std::size_t n, unsigned k, unsigned q, std::string const& out) {
  Emitter e(g, "gen");
  e.manifest().parameters = {{"n", n}, {"k", k}, {"q", q}};
  Code c = generate_direct({n, k, q});
  std::string text = format_code(c);
  if (out.empty()) {
    e.out(text);
  } else {
    e.artifact(out, text);
    std::cerr << "wrote " << c.size() << " words to " << out << "\n";
  }
  e.finish();
  return ok;
}

int cmd_best(Globals const& g, std::size_t n, unsigned q) {
  Emitter e(g, "best");
  e.manifest().parameters = {{"n", n}, {"q", q}};
  SizeRecord r = best_size(n, q);
  if (g.json) {
    e.out(to_json(r).dump(2) + "\n");
  } else {
    std::ostringstream s;
    s << "S(" << n << "," << q << ") = " << dec(r.size) << "  best k = "
      << (r.best_k ? std::to_string(*r.best_k) : "-") << "\n";
    for (auto const& [k, v] : r.per_k) s << "  k=" << k << ": " << dec(v) << "\n";
    e.out(s.str());
  }
  e.finish();
  return ok;
}

int cmd_fib(Globals const& g, unsigned k, unsigned q, std::size_t n) {
  Emitter e(g, "fib");
  e.manifest().parameters = {{"k", k}, {"q", q}, {"n", n}};
  BigInt v = fib(k, q, n);
  if (g.json) {
    e.out(Json{{"k", k}, {"q", q}, {"n", n}, {"value", dec(v)}}.dump(2) + "\n");
  } else {
    e.out(dec(v) + "\n");
  }
  e.finish();
  return ok;
}

int cmd_alpha(Globals const& g, unsigned k, unsigned q, long bits) {
  Emitter e(g, "alpha");
  e.manifest().parameters = {{"k", k}, {"q", q}, {"bits", bits}};
  RootEstimate r = find_alpha(k, q, bits);
  auto const digits = static_cast<std::size_t>(std::floor(r.precision_bits * 0.30103)) - 2;
  if (g.json) {
    e.out(to_json(r, digits).dump(2) + "\n");
  } else {
    e.out("alpha(" + std::to_string(k) + "," + std::to_string(q) + ") = "
          + r.alpha.to_string(digits) + "\n  bracket [" + r.lo.to_string(digits) + ", "
          + r.hi.to_string(digits) + "]\n  precision " + std::to_string(r.precision_bits)
          + " bits\n");
  }
  e.finish();
  return ok;
}

CliqueCache load_cache(std::string const& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) return {};
  return clique_cache_from_json(Json::parse(in));
}

int cmd_table(Globals const& g, unsigned q, std::size_t n_max, bool markdown,
              std::string const& cache_path) {
  Emitter e(g, "table");
  e.manifest().parameters = {{"q", q}, {"n_max", n_max}, {"cache", cache_path}};
  auto rows = make_table(q, n_max, load_cache(cache_path));
  if (g.json) {
    e.out(table_json(q, rows).dump(2) + "\n");
  } else if (markdown) {
    e.out(table_markdown(q, rows));
  } else {
    std::ostringstream s;
    for (auto const& r : rows) {
      s << r.n << "\t" << (r.bilotta ? dec(*r.bilotta) : "-") << "\t" << dec(r.size) << "\t"
        << (r.best_k ? std::to_string(*r.best_k) : "-") << "\t" << dec(r.upper_floor) << "\t"
        << (r.optimal ? std::to_string(*r.optimal) : "-") << "\n";
    }
    e.out("n\tB(n)\tS(n,q)\tk\tfloor(ub)\tC(n,q)\n" + s.str());
  }
  e.finish();
  return ok;
}

int cmd_probe(Globals const& g, unsigned q, unsigned k_min, unsigned k_max, double c) {
  Emitter e(g, "probe");
  if (c <= 0) c = default_probe_constant(q);
  e.manifest().parameters = {{"q", q}, {"k_min", k_min}, {"k_max", k_max}, {"c", c}};
  ProbeResult p = asymptotic_probe(q, k_min, k_max, c);
  if (g.json) {
    Json rows = Json::array();
    for (auto const& r : p.rows) {
      rows.push_back(Json{{"k", r.k}, {"n", r.n}, {"alpha", r.alpha}, {"size", dec(r.size)},
                          {"ratio", r.ratio}});
    }
    e.out(Json{{"q", q}, {"c", c}, {"target", p.target}, {"upper_limit", upper_ratio_limit},
               {"rows", rows}}
              .dump(2)
          + "\n");
  } else {
    std::ostringstream s;
    s.precision(8);
    s << "target (q-1)/(qe) = " << p.target << ", upper limit 0.5\nk\tn(k)\tratio\n";
    for (auto const& r : p.rows) s << r.k << "\t" << r.n << "\t" << r.ratio << "\n";
    e.out(s.str());
  }
  e.finish();
  return ok;
}

int cmd_clique(Globals const& g, std::size_t n, unsigned q, bool long_run,
               std::string const& witness_out, std::string const& cache_path) {
  Emitter e(g, "clique");
  e.manifest().parameters = {{"n", n}, {"q", q}, {"budget", g.budget}, {"long", long_run}};
  // 2^12 words is where the search stops being instant
  if (!bounded_power(q, n, std::uint64_t{1} << 12) && !long_run) {
    std::cerr << "clique: n=" << n << " q=" << q
              << " can take hours or days; rerun with --long to proceed\n";
    return usage;
  }
  if (long_run) {
    std::cerr << "clique: long run, no runtime guarantee (budget " << g.budget << " s)\n";
  }
  RowCertificate cert = certify_optimal_row(n, q, std::chrono::duration<double>(g.budget));
  bool const optimal = cert.result.status == CliqueStatus::optimal;
  if (!cache_path.empty() && optimal) {
    CliqueCache cache = load_cache(cache_path);
    cache[{n, q}] = cert.optimum;
    write_file(cache_path, to_json(cache).dump(2) + "\n");
  }
  if (!witness_out.empty()) e.artifact(witness_out, format_code(cert.result.witness));
  if (g.json) {
    e.out(Json{{"n", n},
               {"q", q},
               {"size", cert.optimum},
               {"status", optimal ? "optimal" : "lower_bound"},
               {"construction", dec(cert.construction)},
               {"matches_construction", cert.matches_construction},
               {"nodes_explored", cert.result.nodes_explored},
               {"wall_time_s", cert.result.wall_time.count()}}
              .dump(2)
          + "\n");
  } else {
    std::ostringstream s;
    s << "C(" << n << "," << q << ") " << (optimal ? "= " : ">= ")
      << cert.optimum << (optimal ? "" : "  (budget exhausted, lower bound only)")
      << "\nS(" << n << "," << q << ") = " << dec(cert.construction)
      << (cert.matches_construction ? "  (construction is optimal)" : "") << "\nnodes "
      << cert.result.nodes_explored << ", " << cert.result.wall_time.count() << " s\n";
    e.out(s.str());
  }
  e.finish();
  return optimal ? ok : capacity;
}

int cmd_sim(Globals const& g, std::string const& path, std::uint64_t trials, unsigned threads,
            std::uint64_t max_stream) {
  Emitter e(g, "sim");
  std::string const text = read_file(path);
  Code code = parse_code(text);
  e.manifest().parameters = {{"code", path}, {"trials", trials}, {"threads", threads},
                             {"max_stream", max_stream}};
  e.manifest().seeds = {g.seed};
  e.manifest().add_output("input:" + path, text);
  SyncStats s = run_sim({code, trials, g.seed, max_stream, threads});
  double const predicted = variance_formula(code.length(), code.alphabet(), code.size());
  double const rel = std::abs(s.variance - predicted) / predicted;
  if (g.json) {
    Json j = to_json(s);
    j["predicted_variance"] = predicted;
    j["relative_error"] = rel;
    j["n"] = code.length();
    j["q"] = code.alphabet();
    j["M"] = code.size();
    j["seed"] = g.seed;
    e.out(j.dump(2) + "\n");
  } else {
    std::ostringstream o;
    o.precision(10);
    o << "samples " << s.samples << " (truncated " << s.truncated << ")\nmean " << s.mean
      << "\nvariance " << s.variance << "\npredicted " << predicted << "\nrelative error "
      << rel << "\nmin " << s.min << " max " << s.max << "\n";
    e.out(o.str());
  }
  e.finish();
  return s.truncated ? capacity : ok;
}

int cmd_verify(Globals const& g, std::string const& path) {
  Emitter e(g, "verify");
  std::string const text = read_file(path);
  e.manifest().add_output("input:" + path, text);
  Code code = parse_code(text);
  VerifyReport r = verify_report(code);
  if (g.json) {
    Json j{{"cross_bifix_free", r.cross_bifix_free},
           {"nonexpandable", r.nonexpandable ? Json(*r.nonexpandable) : Json(nullptr)}};
    if (r.violation) {
      j["violation"] = {{"prefix_word", r.violation->prefix_word.to_digits()},
                        {"suffix_word", r.violation->suffix_word.to_digits()},
                        {"length", r.violation->len}};
    }
    if (r.extension) j["extension"] = r.extension->to_digits();
    e.out(j.dump(2) + "\n");
  } else {
    e.out(format_verify_report(r) + "\n");
  }
  e.finish();
  if (!r.cross_bifix_free) return violated;
  return r.capacity_exceeded ? capacity : ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-bifix-free codes: construction, verification, counting and bounds"};
  app.set_version_flag("--version", std::string(xbifix::version));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  if (char const* env = std::getenv("XBIFIX_PRECISION_BITS")) {
    try {
      g.bits = std::stol(env);
    } catch (...) {
      std::cerr << "XBIFIX_PRECISION_BITS must be an integer\n";
      return usage;
    }
  }
  app.add_flag("--json", g.json, "JSON output");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--budget", g.budget, "Time budget in seconds")->check(CLI::PositiveNumber);
  app.add_option("--manifest", g.manifest, "Write a run manifest to this file");

  std::size_t n = 0;
  unsigned k = 0, q = 2;

  auto* gen = app.add_subcommand("gen", "Generate S_{k,q}(n) in the code file format");
  std::string out;
  gen->add_option("--n", n)->required();
  gen->add_option("--k", k)->required();
  gen->add_option("--q", q)->required();
  gen->add_option("--out", out, "Output file (default stdout)");

  auto* best = app.add_subcommand("best", "S(n,q) maximized over k");
  best->add_option("--n", n)->required();
  best->add_option("--q", q)->required();

  auto* fibc = app.add_subcommand("fib", "(q-1)-weighted k-generalized Fibonacci number");
  fibc->add_option("--k", k)->required();
  fibc->add_option("--q", q)->required();
  fibc->add_option("--n", n)->required();

  auto* alpha = app.add_subcommand("alpha", "Dominant root of the characteristic polynomial");
  long bits = 0;
  alpha->add_option("--k", k)->required();
  alpha->add_option("--q", q)->required();
  alpha->add_option("--bits", bits, "Working precision (default $XBIFIX_PRECISION_BITS or 128)");

  auto* table = app.add_subcommand("table", "Sizes, comparison sizes and upper bounds");
  std::size_t n_max = 30;
  bool markdown = false;
  std::string cache;
  table->add_option("--q", q);
  table->add_option("--n-max", n_max);
  table->add_flag("--markdown", markdown);
  table->add_option("--clique-cache", cache, "C(n,q) values from earlier clique runs");

  auto* probe = app.add_subcommand("probe", "Growth of S(n,q) n / q^n along n = ceil(c alpha^k)");
  unsigned k_min = 2, k_max = 12;
  double c = 0;
  probe->add_option("--q", q)->required();
  probe->add_option("--k-min", k_min);
  probe->add_option("--k-max", k_max)->required();
  probe->add_option("--c", c, "Scale constant (default q/(q-1))");

  auto* clique = app.add_subcommand("clique", "Exact C(n,q) by maximum-clique search");
  bool long_run = false;
  std::string witness;
  clique->add_option("--n", n)->required();
  clique->add_option("--q", q)->required();
  clique->add_flag("--long", long_run, "Allow instances without a runtime guarantee");
  clique->add_option("--witness-out", witness, "Write the clique as a code file");
  clique->add_option("--cache", cache, "Record optimal results in this cache file");

  auto* sim = app.add_subcommand("sim", "First-match time statistics by simulation");
  std::string code_path;
  std::uint64_t trials = 100000, max_stream = std::uint64_t{1} << 32;
  unsigned threads = 1;
  sim->add_option("--code", code_path)->required()->check(CLI::ExistingFile);
  sim->add_option("--trials", trials)->check(CLI::PositiveNumber);
  sim->add_option("--threads", threads)->check(CLI::PositiveNumber);
  sim->add_option("--max-stream", max_stream)->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Check a code file");
  std::string verify_path;
  verify->add_option("file", verify_path)->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*gen) return cmd_gen(g, n, k, q, out);
    if (*best) return cmd_best(g, n, q);
    if (*fibc) return cmd_fib(g, k, q, n);
    if (*alpha) return cmd_alpha(g, k, q, bits > 0 ? bits : g.bits);
    if (*table) return cmd_table(g, q, n_max, markdown, cache);
    if (*probe) return cmd_probe(g, q, k_min, k_max, c);
    if (*clique) return cmd_clique(g, n, q, long_run, witness, cache);
    if (*sim) return cmd_sim(g, code_path, trials, threads, max_stream);
    if (*verify) return cmd_verify(g, verify_path);
  } catch (ParseError const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return usage;
  } catch (DomainError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (CapacityError const& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return capacity;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return violated;
  }
  return usage;
}
