#pragma once

#include <stdexcept>
#include <string>

namespace psigrh {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};

struct NotFundamental : DomainError {
  explicit NotFundamental(long long D)
      : DomainError("not a fundamental discriminant: " + std::to_string(D)), D(D) {}
  long long D;
};

struct SingularSystem : Error {
  using Error::Error;
};

struct SignPatternViolation : Error {
  explicit SignPatternViolation(const std::string& what, long long n = -1, int pair_index = -1)
      : Error(what), n(n), pair_index(pair_index) {}
  long long n;     // offending n, or -1 if a pair condition failed
  int pair_index;  // 1-based odd index of the offending pair, or -1
};

struct IndexDivisorUnknown : Error {
  explicit IndexDivisorUnknown(long long p)
      : Error("prime " + std::to_string(p) +
              " divides the index and no override shape was supplied"),
        p(p) {}
  long long p;
};

struct CutoffTooLarge : DomainError {
  explicit CutoffTooLarge(double x, double guard)
      : DomainError("cutoff " + std::to_string(x) + " exceeds the enumeration guard " +
                    std::to_string(guard)) {}
};

}  // namespace psigrh
