#include "supergerbe/number.hpp"

#include "supergerbe/error.hpp"

namespace supergerbe {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::NonTerminatingReduction: return "NonTerminatingReduction";
    case ErrorKind::NonConfluentRelations: return "NonConfluentRelations";
    case ErrorKind::DerivationMismatch: return "DerivationMismatch";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::GeneratorMismatch: return "GeneratorMismatch";
    case ErrorKind::NonNilpotentArgument: return "NonNilpotentArgument";
    case ErrorKind::ParityMismatch: return "ParityMismatch";
    case ErrorKind::RelationViolation: return "RelationViolation";
    case ErrorKind::MissingComponent: return "MissingComponent";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::SubstitutionFailure: return "SubstitutionFailure";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NonPolynomialBody: return "NonPolynomialBody";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::NotDescended: return "NotDescended";
    case ErrorKind::CoverMismatch: return "CoverMismatch";
    case ErrorKind::OddParity: return "OddParity";
    case ErrorKind::ObstructionNonzero: return "ObstructionNonzero";
    case ErrorKind::UnsupportedBodyData: return "UnsupportedBodyData";
    case ErrorKind::SoulContamination: return "SoulContamination";
    case ErrorKind::NotPureSoul: return "NotPureSoul";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

void raise(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0)
    raise(ErrorKind::ParseError, "not an exact rational: '" + text + "'");
  q.canonicalize();
  return q;
}

Gaussian Gaussian::inverse() const {
  Rational n = norm();
  if (sgn(n) == 0) raise(ErrorKind::NotAUnit, "division by zero");
  return Gaussian(re_ / n, -im_ / n);
}

Gaussian& Gaussian::operator+=(const Gaussian& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = r;
  im_ = i;
  return *this;
}

Gaussian& Gaussian::operator/=(const Gaussian& o) { return *this *= o.inverse(); }

std::string Gaussian::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1)
    imag = "i";
  else if (im_ == -1)
    imag = "-i";
  else
    imag = im_.get_str() + "*i";
  if (sgn(re_) == 0) return imag;
  std::string out = "(" + re_.get_str();
  if (imag[0] != '-') out += "+";
  return out + imag + ")";
}

}  // namespace supergerbe
