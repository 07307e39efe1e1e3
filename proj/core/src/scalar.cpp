#include "phasekit/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "phasekit/error.hpp"

namespace phasekit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::DegenerateHessian: return "DegenerateHessian";
    case ErrorCode::DegenerateFP: return "DegenerateFP";
    case ErrorCode::DegenerateSlice: return "DegenerateSlice";
    case ErrorCode::DegenerateRestriction: return "DegenerateRestriction";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::MissingTensor: return "MissingTensor";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::NotGaugeInvariant: return "NotGaugeInvariant";
    case ErrorCode::BadStructureConstants: return "BadStructureConstants";
    case ErrorCode::CMEViolation: return "CMEViolation";
    case ErrorCode::SplitNotSymplectic: return "SplitNotSymplectic";
    case ErrorCode::NotTrivalent: return "NotTrivalent";
    case ErrorCode::HasLeaves: return "HasLeaves";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Schema: return "Schema";
  }
  return "Unknown";
}

namespace {

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw Error(ErrorCode::Schema, "empty rational");
  if (t[0] == '+') t = t.substr(1);
  // decimal literals such as "0.25" are accepted and converted exactly
  auto dot = t.find('.');
  if (dot != std::string::npos && t.find('/') == std::string::npos) {
    bool neg = !t.empty() && t[0] == '-';
    std::string body = neg ? t.substr(1) : t;
    dot = body.find('.');
    std::string digits = body.substr(0, dot) + body.substr(dot + 1);
    size_t frac = body.size() - dot - 1;
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error(ErrorCode::Schema, "bad rational '" + text + "'");
    }
    Rational q(mpz_class(digits.empty() ? "0" : digits),
               mpz_class("1" + std::string(frac, '0')));
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  Rational q;
  if (q.set_str(t, 10) != 0)
    throw Error(ErrorCode::Schema, "bad rational '" + text + "'");
  if (q.get_den() == 0) throw Error(ErrorCode::Schema, "zero denominator");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.re_ * o.re_ + o.im_ * o.im_;
  Scalar c = o.conj();
  *this *= c;
  re_ /= n;
  im_ /= n;
  return *this;
}

Scalar Scalar::pow(int e) const {
  if (e < 0) return Scalar(1) / pow(-e);
  Scalar result(1);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Scalar Scalar::parse(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw Error(ErrorCode::Schema, "empty scalar");
  if (t.back() != 'i') return Scalar(parse_rational(t));
  t.pop_back();
  // split at the last sign that is not the leading one
  size_t split = std::string::npos;
  for (size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e') {
      split = k;
      break;
    }
  }
  auto parse_im = [](const std::string& s) -> Rational {
    if (s.empty() || s == "+") return Rational(1);
    if (s == "-") return Rational(-1);
    return parse_rational(s);
  };
  if (split == std::string::npos) return Scalar(Rational(0), parse_im(t));
  return Scalar(parse_rational(t.substr(0, split)), parse_im(t.substr(split)));
}

std::string Scalar::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string im_part;
  if (im_ == 1) im_part = "i";
  else if (im_ == -1) im_part = "-i";
  else im_part = im_.get_str() + "i";
  if (sgn(re_) == 0) return im_part;
  if (im_part[0] != '-') im_part = "+" + im_part;
  return re_.get_str() + im_part;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.to_string();
}

Scalar i_pow(int k) {
  int m = ((k % 4) + 4) % 4;
  switch (m) {
    case 0: return Scalar(1);
    case 1: return Scalar(Rational(0), Rational(1));
    case 2: return Scalar(-1);
    default: return Scalar(Rational(0), Rational(-1));
  }
}

HbarSeries HbarSeries::hbar_over_i(int m) { return monomial(m, i_pow(-m)); }

HbarSeries HbarSeries::minus_i_hbar(int m) {
  return monomial(m, Scalar(-1).pow(m) * i_pow(m));
}

void HbarSeries::add_term(int power, const Scalar& coeff) {
  if (coeff.is_zero()) return;
  auto it = terms_.find(power);
  if (it == terms_.end()) {
    terms_.emplace(power, coeff);
    return;
  }
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

Scalar HbarSeries::coeff(int power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? Scalar(0) : it->second;
}

int HbarSeries::min_power() const {
  return terms_.empty() ? 0 : terms_.begin()->first;
}

int HbarSeries::max_power() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first;
}

HbarSeries HbarSeries::truncated(int max_power) const {
  HbarSeries out;
  for (const auto& [p, c] : terms_)
    if (p <= max_power) out.terms_.emplace(p, c);
  return out;
}

HbarSeries& HbarSeries::operator+=(const HbarSeries& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, c);
  return *this;
}

HbarSeries& HbarSeries::operator-=(const HbarSeries& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, -c);
  return *this;
}

HbarSeries& HbarSeries::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, v] : terms_) v *= c;
  return *this;
}

HbarSeries operator*(const HbarSeries& a, const HbarSeries& b) {
  HbarSeries out;
  for (const auto& [pa, ca] : a.terms_)
    for (const auto& [pb, cb] : b.terms_) out.add_term(pa + pb, ca * cb);
  return out;
}

std::complex<double> HbarSeries::evaluate(double hbar) const {
  std::complex<double> acc = 0;
  for (const auto& [p, c] : terms_) acc += c.to_complex() * std::pow(hbar, p);
  return acc;
}

std::string HbarSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    if (p == 1) os << "*hbar";
    else if (p != 0) os << "*hbar^" << p;
  }
  return os.str();
}

}  // namespace phasekit
