#include "rankone/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstdio>

#include "rankone/errors.hpp"

namespace rankone {

cdouble ExtComplex::value() const {
  if (infinite_) throw Error(ErrorCode::kInvalidInput, "value() of infinity");
  return value_;
}

bool near(const ExtComplex& a, const ExtComplex& b, double tol) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
  const cdouble x = a.value();
  const cdouble y = b.value();
  const double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= tol * scale;
}

namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  // Prefer the shortest representation that round-trips.
  for (int precision = 1; precision <= 17; ++precision) {
    char shorter[64];
    std::snprintf(shorter, sizeof(shorter), "%.*g", precision, x);
    if (std::strtod(shorter, nullptr) == x) return shorter;
  }
  return buf;
}

}  // namespace

std::string to_string(cdouble z) {
  const double re = z.real();
  const double im = z.imag();
  if (im == 0.0) return format_double(re);
  std::string imag_part;
  if (im == 1.0) {
    imag_part = "i";
  } else if (im == -1.0) {
    imag_part = "-i";
  } else {
    imag_part = format_double(im) + "i";
  }
  if (re == 0.0) return imag_part;
  if (imag_part.front() != '-') imag_part = "+" + imag_part;
  return format_double(re) + imag_part;
}

std::string to_string(const ExtComplex& z) {
  return z.is_infinite() ? std::string("inf") : to_string(z.value());
}

ExtComplex parse_ext_complex(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  }
  if (text == "inf" || text == "Inf" || text == "INF" || text == "∞" || text == "+inf") {
    return ExtComplex::infinity();
  }
  if (text.empty()) throw Error(ErrorCode::kInvalidInput, "empty complex literal");

  auto parse_real = [&](const std::string& s) -> double {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(s, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidInput, "bad complex literal '" + raw + "'");
    }
    if (used != s.size()) {
      throw Error(ErrorCode::kInvalidInput, "bad complex literal '" + raw + "'");
    }
    return value;
  };

  if (text.back() != 'i' && text.back() != 'j') {
    return ExtComplex(cdouble(parse_real(text), 0.0));
  }
  const std::string body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not part of an exponent and not leading.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return ExtComplex(cdouble(0.0, parse_real(body)));
  return ExtComplex(cdouble(parse_real(body.substr(0, split)), parse_real(body.substr(split))));
}

}  // namespace rankone
