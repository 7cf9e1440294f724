#pragma once

#include <stdexcept>
#include <string>

namespace sptlab {

/// Operands live in different coefficient rings.
class ring_mismatch : public std::invalid_argument {
 public:
  explicit ring_mismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A coefficient was requested at or beyond the known precision.
class precision_error : public std::out_of_range {
 public:
  explicit precision_error(const std::string& what) : std::out_of_range(what) {}
};

/// Series inversion (or exact division) needs a unit that is not there.
class not_a_unit : public std::domain_error {
 public:
  explicit not_a_unit(const std::string& what) : std::domain_error(what) {}
};

/// A precomputed table does not reach the index an operation needs.
class table_too_short : public std::out_of_range {
 public:
  explicit table_too_short(const std::string& what) : std::out_of_range(what) {}
};

}  // namespace sptlab
