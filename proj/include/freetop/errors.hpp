#pragma once

#include <stdexcept>
#include <string>

namespace freetop {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed word text, chain id, group id, JSON document, or Cayley table.
class ParseError : public Error {
public:
  using Error::Error;
};

/// A chain handed to the finite Birkhoff-Kakutani checker fails its
/// hypotheses (symmetry or the squaring containment).
class HypothesisViolation : public Error {
public:
  using Error::Error;
};

/// A sampled post-hoc check contradicted a bound the oracle promised.
class OracleUnsound : public Error {
public:
  using Error::Error;
};

/// A scale translation ran past the depth of the refined basis.
class DepthExceeded : public Error {
public:
  using Error::Error;
};

/// Evaluation requested at a point outside the sample set.
class UnknownPoint : public Error {
public:
  using Error::Error;
};

/// The requested group element is not inside the computed neighborhood V;
/// the caller has to shrink it.
class BNotInV : public Error {
public:
  using Error::Error;
};

/// Piecewise maps over different sample sets cannot be combined.
class SampleSetMismatch : public Error {
public:
  using Error::Error;
};

/// Certificate transformations require compatible subbasic specs.
class SpecMismatch : public Error {
public:
  using Error::Error;
};

}  // namespace freetop
