#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace jetcurv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Base class for everything this library throws on purpose.
struct SymbolicError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Division by exact zero, ln of a non-positive constant, and friends.
// `subject` holds the printed form of the offending subexpression.
struct DomainError : SymbolicError {
  std::string subject;
  DomainError(const std::string& msg, std::string subj)
      : SymbolicError(msg), subject(std::move(subj)) {}
};

inline std::string to_string(const Rational& q) {
  return q.str();
}

// Exact q^k for integer k; throws DomainError for 0^negative.
Rational rational_pow(const Rational& q, long long k);

}  // namespace jetcurv
