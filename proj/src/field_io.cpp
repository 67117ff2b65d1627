#include "gplab/field_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gplab {
namespace {

struct LineReader {
  std::istream& in;
  std::size_t number = 0;

  std::istringstream next(const char* what) {
    std::string line;
    if (!std::getline(in, line)) fail(std::string("unexpected end of input, expected ") + what);
    ++number;
    return std::istringstream(line);
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw std::runtime_error("field record line " + std::to_string(number) + ": " + message);
  }

  template <class T>
  T take(std::istringstream& line, const char* what) {
    T value{};
    if (!(line >> value)) fail(std::string("cannot parse ") + what);
    return value;
  }

  void expect_end(std::istringstream& line) {
    std::string rest;
    if (line >> rest) fail("trailing characters '" + rest + "'");
  }

  void expect_word(std::istringstream& line, const std::string& word) {
    if (take<std::string>(line, "keyword") != word) fail("expected '" + word + "'");
  }
};

}  // namespace

void write_field(std::ostream& out, const Field& f) {
  const auto precision = out.precision(17);
  out << "gplab-field 1\n";
  out << "L " << f.grid().half_length << '\n';
  out << "N " << f.grid().n_points << '\n';
  if (const auto* c = std::get_if<ConstantBackground>(&f.background())) {
    out << "background constant " << c->value.real() << ' ' << c->value.imag() << '\n';
  } else {
    const auto& p = std::get<SolitonParams>(f.background());
    out << "background soliton " << p.speed << ' ' << p.shift << ' ' << p.phase << '\n';
  }
  out << "samples\n";
  for (const auto& z : f.perturbation()) out << z.real() << ' ' << z.imag() << '\n';
  out.precision(precision);
}

Field read_field(std::istream& in) {
  LineReader r{in};
  {
    auto line = r.next("header");
    r.expect_word(line, "gplab-field");
    if (r.take<int>(line, "version") != 1) r.fail("unsupported version");
    r.expect_end(line);
  }
  double half_length = 0.0;
  {
    auto line = r.next("L");
    r.expect_word(line, "L");
    half_length = r.take<double>(line, "L");
    r.expect_end(line);
  }
  std::size_t n = 0;
  {
    auto line = r.next("N");
    r.expect_word(line, "N");
    const auto signed_n = r.take<long long>(line, "N");
    if (signed_n <= 0) r.fail("N must be positive");
    n = static_cast<std::size_t>(signed_n);
    r.expect_end(line);
  }
  GridSpec grid;
  try {
    grid = GridSpec::make(half_length, n);
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }

  Background background;
  {
    auto line = r.next("background");
    r.expect_word(line, "background");
    const auto kind = r.take<std::string>(line, "background kind");
    if (kind == "constant") {
      const double re = r.take<double>(line, "real part");
      const double im = r.take<double>(line, "imaginary part");
      background = ConstantBackground{cplx(re, im)};
    } else if (kind == "soliton") {
      SolitonParams p;
      p.speed = r.take<double>(line, "speed");
      p.shift = r.take<double>(line, "shift");
      p.phase = r.take<double>(line, "phase");
      background = p;
    } else {
      r.fail("unknown background kind '" + kind + "'");
    }
    r.expect_end(line);
  }
  {
    auto line = r.next("samples");
    r.expect_word(line, "samples");
    r.expect_end(line);
  }
  std::vector<cplx> w(n);
  for (auto& z : w) {
    auto line = r.next("sample");
    const double re = r.take<double>(line, "real part");
    const double im = r.take<double>(line, "imaginary part");
    r.expect_end(line);
    z = cplx(re, im);
  }
  try {
    return Field(grid, background, std::move(w));
  } catch (const std::exception& e) {
    r.fail(e.what());
  }
}

}  // namespace gplab
