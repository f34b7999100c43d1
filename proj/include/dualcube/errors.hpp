#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dualcube/label.hpp"

namespace dualcube {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violations: bad order, malformed labels, out-of-range counts.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A constructor was asked for an order it does not cover.
class UnsupportedOrder : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Fewer disjoint paths exist than were requested. `achieved` is the maximum
// count; `separator` is a minimum vertex separator witnessing it (empty when
// the endpoints are adjacent and no vertex set separates them).
class NotEnoughConnectivity : public Error {
 public:
  NotEnoughConnectivity(const std::string& what, int achieved,
                        std::vector<Vertex> separator)
      : Error(what), achieved_(achieved), separator_(std::move(separator)) {}

  int achieved() const { return achieved_; }
  const std::vector<Vertex>& separator() const { return separator_; }

 private:
  int achieved_;
  std::vector<Vertex> separator_;
};

// Connector clusters ran out. Never expected for n >= 4; treated as a bug.
class ReservationExhausted : public Error {
 public:
  using Error::Error;
};

// A search-based constructor could not certify the requested number of trees.
class SearchIncomplete : public Error {
 public:
  using Error::Error;
};

// An exhaustive oracle refused to start because its instance exceeds the budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace dualcube
