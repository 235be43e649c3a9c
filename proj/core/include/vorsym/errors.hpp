#pragma once

#include <stdexcept>
#include <string>

namespace vorsym {

/// Problem with user-supplied parameters (bad space descriptor, non-squarefree m, ...).
class InvalidParameter : public std::runtime_error {
public:
  explicit InvalidParameter(const std::string& what) : std::runtime_error(what) {}
};

/// Linear system has too small a span.
class RankDeficient : public std::runtime_error {
public:
  explicit RankDeficient(const std::string& what) : std::runtime_error(what) {}
};

/// Linear system is inconsistent.
class NoSolution : public std::runtime_error {
public:
  explicit NoSolution(const std::string& what) : std::runtime_error(what) {}
};

/// A point that must lie in the open cone does not.
class NotInCone : public std::runtime_error {
public:
  explicit NotInCone(const std::string& what) : std::runtime_error(what) {}
};

/// Matrix expected to generate a lattice automorphism fails the determinant test.
class NonUnimodular : public std::runtime_error {
public:
  explicit NonUnimodular(const std::string& what) : std::runtime_error(what) {}
};

class DivisionByZero : public std::runtime_error {
public:
  explicit DivisionByZero(const std::string& what) : std::runtime_error(what) {}
};

/// Degenerate input to a hull computation (all points coincide).
class DegenerateInput : public std::runtime_error {
public:
  explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

/// Expanding search for a seed vector ran past its bound.  Carries the bound used.
class SeedSearchExhausted : public std::runtime_error {
public:
  explicit SeedSearchExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// A recomputed minimal-vector set contradicts perfection.  Signals an arithmetic bug.
class PerfectionFailure : public std::logic_error {
public:
  explicit PerfectionFailure(const std::string& what) : std::logic_error(what) {}
};

/// Symbol handed to edge rewriting was not Voronoi-reduced.
class NotReduced : public std::runtime_error {
public:
  explicit NotReduced(const std::string& what) : std::runtime_error(what) {}
};

/// Relation-space construction requested for a space of rank > 1.
class UnsupportedRank : public std::runtime_error {
public:
  explicit UnsupportedRank(const std::string& what) : std::runtime_error(what) {}
};

/// Hecke coset matrix is singular in a way the action cannot use.
class BadCoset : public std::runtime_error {
public:
  explicit BadCoset(const std::string& what) : std::runtime_error(what) {}
};

/// A configurable resource guard tripped (dimension, enumeration bound, rep count).
class ResourceGuard : public std::runtime_error {
public:
  explicit ResourceGuard(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vorsym
