#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace projprod {

/// Malformed or out-of-contract caller input (bad shape, NaN, wrong file).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operator failed the product-of-two-projections test.
class ClassificationError : public std::runtime_error {
 public:
  ClassificationError(const std::string& what, double crimmins_residual)
      : std::runtime_error(what), crimmins_residual_(crimmins_residual) {}
  double crimmins_residual() const noexcept { return crimmins_residual_; }

 private:
  double crimmins_residual_;
};

/// Two independent computations of the same object disagreed beyond tolerance.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Evaluation at a pole or outside the closed disc.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The Hardy-space truncation order is too small for the inner functions in play.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, std::size_t suggested_order)
      : std::runtime_error(what), suggested_order_(suggested_order) {}
  std::size_t suggested_order() const noexcept { return suggested_order_; }

 private:
  std::size_t suggested_order_;
};

/// No nonzero shift-invariant subspace fits inside the requested subspace
/// (the family of inner functions φ with φH² inside it is empty).
class EmptyInvariantFamily : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace projprod
