#ifndef XBIFIX_CODE_IO_HPP_
#define XBIFIX_CODE_IO_HPP_

#include <cstddef>      // for size_t
#include <fstream>      // for ifstream, ofstream
#include <istream>      // for istream
#include <sstream>      // for ostringstream
#include <string>       // for string, getline
#include <string_view>  // for string_view
#include <vector>       // for vector

#include "code.hpp"
#include "errors.hpp"
#include "word.hpp"

namespace xbifix {

// Text format:
//
//   # xbifix code n=<n> q=<q>
//   <word as base-36 digits>
//   ...
//
// Words sorted lexicographically, one per line, every line LF-terminated.
inline std::string format_code(Code const& c) {
  std::string out = "# xbifix code n=" + std::to_string(c.length())
                    + " q=" + std::to_string(c.alphabet()) + "\n";
  out.reserve(out.size() + c.size() * (c.length() + 1));
  for (Word const& w : c) {
    out += w.to_digits();
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::size_t parse_header_field(std::string_view token,
                                      std::string_view key) {
  if (token.substr(0, key.size()) != key || token.size() == key.size()) {
    throw ParseError("malformed header field, expected " + std::string(key)
                     + "<integer>", 1);
  }
  std::size_t value = 0;
  for (char ch : token.substr(key.size())) {
    if (ch < '0' || ch > '9') {
      throw ParseError("malformed header field '" + std::string(token) + "'",
                       1);
    }
    value = value * 10 + static_cast<std::size_t>(ch - '0');
    if (value > 1'000'000) throw ParseError("header value too large", 1);
  }
  return value;
}

}  // namespace detail

inline Code parse_code(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  std::string_view const magic = "# xbifix code ";
  std::string_view header(line);
  if (header.substr(0, magic.size()) != magic) {
    throw ParseError("expected header '# xbifix code n=<n> q=<q>'", 1);
  }
  header.remove_prefix(magic.size());
  auto space = header.find(' ');
  if (space == std::string_view::npos) {
    throw ParseError("header needs both n= and q=", 1);
  }
  std::size_t const n = detail::parse_header_field(header.substr(0, space), "n=");
  std::size_t const q_raw =
      detail::parse_header_field(header.substr(space + 1), "q=");
  if (n < 1) throw ParseError("n must be at least 1", 1);
  if (q_raw < 2 || q_raw > max_alphabet) {
    throw ParseError("q must be in [2, 36]", 1);
  }
  unsigned const q = static_cast<unsigned>(q_raw);

  std::vector<Word> words;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.size() != n) {
      throw ParseError("word '" + line + "' has length "
                       + std::to_string(line.size()) + ", expected "
                       + std::to_string(n), lineno);
    }
    std::vector<Symbol> symbols;
    symbols.reserve(n);
    for (std::size_t i = 0; i < line.size(); ++i) {
      unsigned s = digit_to_symbol(line[i]);
      if (s >= q) {
        throw ParseError("invalid digit '" + std::string(1, line[i])
                         + "' at column " + std::to_string(i + 1)
                         + " for q=" + std::to_string(q), lineno);
      }
      symbols.push_back(static_cast<Symbol>(s));
    }
    words.emplace_back(std::move(symbols), q);
  }
  return Code(n, q, std::move(words));
}

inline Code parse_code(std::string const& text) {
  std::istringstream in(text);
  return parse_code(in);
}

inline Code read_code_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, 0);
  return parse_code(in);
}

inline void write_code_file(std::string const& path, Code const& c) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << format_code(c);
}

}  // namespace xbifix

#endif  // XBIFIX_CODE_IO_HPP_
