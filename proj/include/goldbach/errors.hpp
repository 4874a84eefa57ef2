#pragma once

#include <stdexcept>

namespace goldbach {

// Argument outside an operation's mathematical domain (odd n, n too small, ...).
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Query beyond the range a table was built for.
class table_range_error : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Request would exceed a documented memory guard.
class capacity_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Too few usable points to run a fit.
class insufficient_data_error : public domain_error {
 public:
  using domain_error::domain_error;
};

}  // namespace goldbach
