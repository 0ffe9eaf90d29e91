#include "latinpat/rational.hpp"

#include "latinpat/error.hpp"

#include <cctype>

namespace latinpat {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NotSquare: return "NotSquare";
    case Errc::SymbolOutOfRange: return "SymbolOutOfRange";
    case Errc::DuplicateInRow: return "DuplicateInRow";
    case Errc::DuplicateInColumn: return "DuplicateInColumn";
    case Errc::InvalidPattern: return "InvalidPattern";
    case Errc::TooLarge: return "TooLarge";
    case Errc::IdOutOfRange: return "IdOutOfRange";
    case Errc::ZeroSamples: return "ZeroSamples";
    case Errc::UnbalancedClassVector: return "UnbalancedClassVector";
    case Errc::QuadrantLengthNotDivisibleBy4: return "QuadrantLengthNotDivisibleBy4";
    case Errc::InvalidLatinon: return "InvalidLatinon";
    case Errc::EnumerationBoundExceeded: return "EnumerationBoundExceeded";
    case Errc::MissingPattern: return "MissingPattern";
    case Errc::NotEliminable: return "NotEliminable";
    case Errc::Parse: return "Parse";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(Errc::InvalidArgument, "rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(std::int64_t num, std::int64_t den)
    : Rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den))) {}

namespace {

bool is_integer_token(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt to_bigint(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return BigInt(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_token(num)) {
    throw Error(Errc::Parse, "malformed rational '" + std::string(text) + "'");
  }
  if (slash == std::string_view::npos) return Rational(to_bigint(num), BigInt(1));
  const std::string_view den = text.substr(slash + 1);
  if (!is_integer_token(den) || den.front() == '-') {
    throw Error(Errc::Parse, "malformed rational '" + std::string(text) + "'");
  }
  const BigInt d = to_bigint(den);
  if (d == 0) throw Error(Errc::Parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(to_bigint(num), d);
}

std::string Rational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(Errc::InvalidArgument, "division by zero");
  value_ /= o.value_;
  return *this;
}

Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

BigInt binomial(unsigned n, unsigned k) {
  BigInt out;
  if (k > n) return BigInt(0);
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigInt factorial(unsigned n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace latinpat
