#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mqcrb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape or basis contract broken: grid mismatch, non-orthonormal basis, wrong mode count.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class RankDeficiencyError : public Error {
 public:
  RankDeficiencyError(std::size_t index, double pivot)
      : Error("mode " + std::to_string(index) + " is linearly dependent on its predecessors (pivot norm " +
              std::to_string(pivot) + ")"),
        index_(index),
        pivot_(pivot) {}

  std::size_t index() const noexcept { return index_; }
  double pivot() const noexcept { return pivot_; }

 private:
  std::size_t index_;
  double pivot_;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

class CutoffError : public Error {
 public:
  CutoffError(const std::string& what, int suggested) : Error(what), suggested_(suggested) {}
  int suggested_cutoff() const noexcept { return suggested_; }

 private:
  int suggested_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public Error {
 public:
  using Error::Error;
};

}  // namespace mqcrb
