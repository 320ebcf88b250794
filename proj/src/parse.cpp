#include "grasslab/parse.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

#include "grasslab/error.hpp"

namespace grasslab {
namespace {

class Parser {
 public:
  Parser(const std::string& text, int n, const Field& field)
      : text_(text), n_(n), field_(field) {}

  Multivector run() {
    Multivector v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError,
                what + " at position " + std::to_string(pos_ + 1));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t')) {
      ++pos_;
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  Multivector expr() {
    Multivector v = term();
    while (true) {
      skip_ws();
      if (eat('+')) {
        v = v + term();
      } else if (eat('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  Multivector term() {
    Multivector v = factor();
    while (true) {
      skip_ws();
      if (eat('^') || eat('*')) {
        v = wedge(v, factor());
      } else {
        return v;
      }
    }
  }

  Multivector factor() {
    skip_ws();
    if (eat('-')) return -factor();
    if (eat('(')) {
      Multivector v = expr();
      expect(')');
      return v;
    }
    if (eat('[')) {
      Multivector a = expr();
      expect(',');
      Multivector b = expr();
      expect(']');
      return commutator(a, b);
    }
    if (peek() == 'e') return generator_ref();
    if (std::isdigit(static_cast<unsigned char>(peek()))) return literal();
    fail("expected a literal, a generator, '(', '[' or '-'");
  }

  int index() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      fail("expected a generator index");
    }
    long value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (text_[pos_++] - '0');
      if (value > kDefaultGeneratorCap * 100) break;  // plenty to overflow n
    }
    if (value < 1 || value > n_) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "generator index " + std::to_string(value) +
                      " outside 1..n with n=" + std::to_string(n_));
    }
    return static_cast<int>(value);
  }

  Multivector generator_ref() {
    ++pos_;  // 'e'
    if (eat('{')) {
      std::uint32_t mask = 0;
      int last = 0;
      do {
        int idx = index();
        if (idx <= last) fail("blade indices must be strictly increasing");
        last = idx;
        mask |= std::uint32_t(1) << (idx - 1);
      } while (skip_ws(), eat(','));
      expect('}');
      return Multivector::blade(n_, field_, mask);
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      fail("expected a generator index after 'e'");
    }
    return Multivector::generator(n_, field_, index());
  }

  BigInt digits() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      fail("expected digits");
    }
    std::string run;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      run += text_[pos_++];
    }
    return BigInt(run);
  }

  Multivector literal() {
    BigInt num = digits();
    if (skip_ws(), eat('/')) {
      BigInt den = digits();
      if (den == 0) {
        throw Error(ErrorKind::DivisionByZero, "literal denominator is zero");
      }
      return Multivector::scalar(
          n_, field_, Scalar::from_rational(field_, Rational(num, den)));
    }
    return Multivector::scalar(n_, field_,
                               Scalar::from_rational(field_, Rational(num)));
  }

  const std::string& text_;
  int n_;
  Field field_;
  std::size_t pos_ = 0;
};

std::string blade_text(std::uint32_t mask) {
  std::ostringstream out;
  out << "e{";
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if ((mask >> i) & 1) {
      if (!first) out << ',';
      out << (i + 1);
      first = false;
    }
  }
  out << '}';
  return out.str();
}

std::string trimmed(const std::string& line) {
  std::size_t begin = line.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = line.find_last_not_of(" \t\r");
  return line.substr(begin, end - begin + 1);
}

}  // namespace

Multivector parse_expression(const std::string& text, int n,
                             const Field& field) {
  check_generator_count(n);
  return Parser(text, n, field).run();
}

Field parse_field(const std::string& text) {
  std::string s = trimmed(text);
  if (s == "Q" || s == "q") return Field::rationals();
  std::int64_t p = 0;
  if (s.rfind("GF:", 0) == 0) {
    p = std::strtoll(s.c_str() + 3, nullptr, 10);
  } else if (s.rfind("GF(", 0) == 0 && s.back() == ')') {
    p = std::strtoll(s.c_str() + 3, nullptr, 10);
  } else {
    throw Error(ErrorKind::InvalidField,
                "expected Q, GF:p or GF(p), got \"" + s + "\"");
  }
  return Field::gf(p);
}

std::string format_scalar(const Scalar& c) { return c.str(); }

std::string format_multivector(const Multivector& a) {
  if (a.is_zero()) return "0";
  std::vector<std::pair<std::uint32_t, Scalar>> terms(a.terms().begin(),
                                                      a.terms().end());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& x, const auto& y) {
                     int gx = std::popcount(x.first);
                     int gy = std::popcount(y.first);
                     return gx != gy ? gx < gy : x.first < y.first;
                   });
  std::ostringstream out;
  bool first = true;
  for (const auto& [mask, coeff] : terms) {
    Scalar c = coeff;
    bool negative = c.field().is_rationals() && c.value() < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (mask == 0) {
      out << c.str();
    } else {
      if (!c.is_one()) out << c.str() << '*';
      out << blade_text(mask);
    }
  }
  return out.str();
}

std::string format_map(const AlgebraMap& m) {
  std::ostringstream out;
  for (int i = 1; i <= m.generators(); ++i) {
    if (i > 1) out << "; ";
    out << 'e' << i << " -> " << format_multivector(m.image(i));
  }
  return out.str();
}

SubspaceFile read_subspace_file(std::istream& in) {
  SubspaceFile file;
  std::string line;
  bool have_header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trimmed(line);
    if (body.empty()) continue;
    if (!have_header) {
      std::istringstream header(body);
      std::string n_tok, field_tok;
      header >> n_tok >> field_tok;
      if (n_tok.rfind("n=", 0) != 0 || field_tok.rfind("field=", 0) != 0) {
        throw Error(ErrorKind::IoError,
                    "expected header \"n=<int> field=Q|GF(<p>)\", got \"" +
                        body + "\"");
      }
      file.n = static_cast<int>(std::strtol(n_tok.c_str() + 2, nullptr, 10));
      check_generator_count(file.n);
      file.field = parse_field(field_tok.substr(6));
      have_header = true;
      continue;
    }
    try {
      file.basis.push_back(parse_expression(body, file.n, file.field));
    } catch (const Error& e) {
      throw Error(e.kind(),
                  "line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  if (!have_header) {
    throw Error(ErrorKind::IoError, "missing subspace file header");
  }
  return file;
}

SubspaceFile parse_subspace_file(const std::string& text) {
  std::istringstream in(text);
  return read_subspace_file(in);
}

Subspace to_subspace(const SubspaceFile& file) {
  std::vector<CoordVector> rows;
  rows.reserve(file.basis.size());
  for (const Multivector& v : file.basis) rows.push_back(to_coords(v));
  return rref(file.n, file.field, std::move(rows));
}

void write_subspace_file(std::ostream& out, const Subspace& B) {
  out << "n=" << B.generators() << " field=" << B.field().str() << '\n';
  for (const CoordVector& row : B.rows()) {
    out << format_multivector(from_coords(row)) << '\n';
  }
}

std::string format_subspace_file(const Subspace& B) {
  std::ostringstream out;
  write_subspace_file(out, B);
  return out.str();
}

}  // namespace grasslab
