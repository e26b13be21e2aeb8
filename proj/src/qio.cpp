#include "eoa/qio.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace eoa {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::optional<Token> next() {
    skip();
    if (pos_ >= src_.size()) return std::nullopt;
    const std::size_t start = pos_;
    const Token t{{}, line_, col_};
    while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '#') advance();
    return Token{src_.substr(start, pos_ - start), t.line, t.column};
  }

  // Position just past the last character, for "unexpected end" errors.
  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < src_.size()) {
      if (is_space(src_[pos_])) {
        advance();
      } else if (src_[pos_] == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Reader {
 public:
  explicit Reader(std::string_view src) : lex_(src) {}

  Token take(const char* expected) {
    auto t = lex_.next();
    if (!t) throw ParseError(std::string("unexpected end of input, expected ") + expected, lex_.line(), lex_.column());
    return *t;
  }

  void keyword(std::string_view word) {
    const Token t = take(std::string(word).c_str());
    if (t.text != word)
      throw ParseError("expected '" + std::string(word) + "', found '" + std::string(t.text) + "'", t.line, t.column);
  }

  std::size_t count(const char* what) {
    const Token t = take(what);
    std::size_t v = 0;
    const auto* end = t.text.data() + t.text.size();
    const auto [ptr, ec] = std::from_chars(t.text.data(), end, v);
    if (ec != std::errc{} || ptr != end || v == 0)
      throw ParseError(std::string("expected a positive integer for ") + what + ", found '" + std::string(t.text) + "'",
                       t.line, t.column);
    return v;
  }

  double real(const char* what, std::size_t expected_total, std::size_t read_so_far) {
    auto t = lex_.next();
    if (!t)
      throw DimensionMismatchError("dimension mismatch: expected " + std::to_string(expected_total) +
                                       " numbers, found " + std::to_string(read_so_far),
                                   lex_.line(), lex_.column());
    return parse_real(*t, what);
  }

  static double parse_real(const Token& t, const char* what) {
    double v = 0.0;
    const char* first = t.text.data();
    const char* end = first + t.text.size();
    if (first != end && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v))
      throw ParseError(std::string("expected a finite number for ") + what + ", found '" + std::string(t.text) + "'",
                       t.line, t.column);
    return v;
  }

  void expect_end(std::size_t expected_total) {
    if (auto t = lex_.next()) {
      // A surplus number is a count problem; anything else is syntax.
      double dummy = 0.0;
      const auto [ptr, ec] = std::from_chars(t->text.data(), t->text.data() + t->text.size(), dummy);
      if (ec == std::errc{} && ptr == t->text.data() + t->text.size())
        throw DimensionMismatchError("dimension mismatch: more than the expected " + std::to_string(expected_total) +
                                         " numbers",
                                     t->line, t->column);
      throw ParseError("unexpected trailing token '" + std::string(t->text) + "'", t->line, t->column);
    }
  }

 private:
  Lexer lex_;
};

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_dims(std::ostringstream& os, BipartiteDims dims) { os << "dims " << dims.a << ' ' << dims.b << '\n'; }

}  // namespace

DensityMatrix parse_qdm(std::string_view text) {
  Reader r(text);
  r.keyword("qdm");
  r.keyword("1");
  r.keyword("dims");
  const std::size_t da = r.count("d_a");
  const std::size_t db = r.count("d_b");
  const std::size_t n = da * db;
  const std::size_t total = 2 * n * n;
  std::vector<Complex> entries(n * n);
  std::size_t read = 0;
  for (auto& z : entries) {
    const double re = r.real("real part", total, read++);
    const double im = r.real("imaginary part", total, read++);
    z = {re, im};
  }
  r.expect_end(total);
  return DensityMatrix({da, db}, Matrix(n, n, std::move(entries)));
}

std::string write_qdm(const DensityMatrix& rho) {
  std::ostringstream os;
  os << "qdm 1\n";
  write_dims(os, rho.dims());
  const Matrix& m = rho.mat();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << "  ";
      os << fmt17(m(i, j).real()) << ' ' << fmt17(m(i, j).imag());
    }
    os << '\n';
  }
  return os.str();
}

Ensemble parse_qens(std::string_view text) {
  Reader r(text);
  r.keyword("qens");
  r.keyword("1");
  r.keyword("dims");
  const std::size_t da = r.count("d_a");
  const std::size_t db = r.count("d_b");
  r.keyword("states");
  const std::size_t k = r.count("states");
  const std::size_t n = da * db;
  std::vector<EnsembleMember> members;
  members.reserve(k);
  for (std::size_t s = 0; s < k; ++s) {
    r.keyword("state");
    const Token pt = r.take("probability");
    const double p = Reader::parse_real(pt, "probability");
    std::vector<Complex> v(n);
    std::size_t read = 0;
    for (auto& z : v) {
      const double re = r.real("real part", 2 * n, read++);
      const double im = r.real("imaginary part", 2 * n, read++);
      z = {re, im};
    }
    members.push_back({p, PureState({da, db}, std::move(v))});
  }
  r.expect_end(2 * n);
  return Ensemble({da, db}, std::move(members));
}

std::string write_qens(const Ensemble& e) {
  std::ostringstream os;
  os << "qens 1\n";
  write_dims(os, e.dims());
  os << "states " << e.size() << '\n';
  for (const auto& m : e.members()) {
    os << "state " << fmt17(m.p) << '\n';
    const auto v = m.state.vec();
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) os << "  ";
      os << fmt17(v[k].real()) << ' ' << fmt17(v[k].imag());
    }
    os << '\n';
  }
  return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

}  // namespace eoa
