#pragma once

// Check results and their JSON / TSV / human renderings, plus the generic
// coefficientwise identity comparison every named check ends in.

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sptlab/errors.hpp"
#include "sptlab/ring.hpp"
#include "sptlab/series.hpp"

namespace sptlab {

enum class Status { pass, fail, skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

struct FirstFailure {
  std::int64_t index = 0;  // q-index n or exponent, as documented by the check
  mpz_class value;         // offending difference (residue when a modulus is set)
};

struct Report {
  std::string check;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::uint64_t modulus = 0;  // 0: exact comparison
  std::int64_t depth = 0;
  Status status = Status::pass;
  std::optional<FirstFailure> first_failure;
  double seconds = 0.0;

  bool passed() const { return status == Status::pass; }
};

namespace detail {

inline nlohmann::ordered_json integer_json(const mpz_class& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

}  // namespace detail

/// {"check", "params", "modulus", "depth", "status", "first_failure", "seconds"}.
inline nlohmann::ordered_json to_json(const Report& r, bool with_timing = true) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["params"] = r.params;
  j["modulus"] = r.modulus;
  j["depth"] = r.depth;
  j["status"] = to_string(r.status);
  if (r.first_failure)
    j["first_failure"] = {{"index", r.first_failure->index}, {"value", detail::integer_json(r.first_failure->value)}};
  else
    j["first_failure"] = nullptr;
  j["seconds"] = with_timing ? r.seconds : 0.0;
  return j;
}

inline std::string tsv_header() { return "check\tparams\tmodulus\tdepth\tstatus\tfailure_index\tfailure_value\tseconds"; }

inline std::string to_tsv(const Report& r, bool with_timing = true) {
  std::ostringstream os;
  os << r.check << '\t' << r.params.dump() << '\t' << r.modulus << '\t' << r.depth << '\t' << to_string(r.status) << '\t';
  if (r.first_failure) os << r.first_failure->index << '\t' << r.first_failure->value.get_str();
  else os << "-\t-";
  os << '\t';
  if (with_timing) {
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(3);
    t << r.seconds;
    os << t.str();
  } else {
    os << "0.000";
  }
  return os.str();
}

inline std::string to_human(const Report& r, bool with_timing = true) {
  std::ostringstream os;
  os << to_string(r.status) << "  " << r.check;
  if (!r.params.empty()) os << ' ' << r.params.dump();
  os << "  depth=" << r.depth << "  " << (r.modulus ? "mod " + std::to_string(r.modulus) : std::string("exact"));
  if (r.first_failure) os << "  first failure at " << r.first_failure->index << " (" << r.first_failure->value.get_str() << ")";
  if (with_timing) {
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(2);
    t << r.seconds;
    os << "  " << t.str() << "s";
  }
  return os.str();
}

/// Wall-clock stopwatch for report timing.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

namespace detail {

template <class Ring>
std::optional<FirstFailure> compare_series(const QSeries<Ring>& lhs, const QSeries<Ring>& rhs, std::int64_t bound) {
  const auto e = first_mismatch(lhs, rhs, bound);
  if (!e) return std::nullopt;
  const Ring& ring = lhs.ring();
  return FirstFailure{*e, ring.to_integer(ring.sub(lhs.coeff_at(*e), rhs.coeff_at(*e)))};
}

}  // namespace detail

/// Compares lhs and rhs at every exponent up to and including q^depth,
/// modulo `modulus` when given. The failure index is the exponent in 1/24 units.
template <class Ring>
Report check_identity(const QSeries<Ring>& lhs, const QSeries<Ring>& rhs, std::optional<std::uint64_t> modulus,
                      std::int64_t depth, std::string name = "identity") {
  Stopwatch sw;
  Report r;
  r.check = std::move(name);
  r.depth = depth;
  const std::int64_t bound = through_q(depth);
  if (lhs.precision() < bound || rhs.precision() < bound)
    throw precision_error("identity to q^" + std::to_string(depth) + " needs precision " + std::to_string(bound) +
                          ", operands know " + std::to_string(lhs.precision()) + " and " +
                          std::to_string(rhs.precision()));
  if (modulus) {
    r.modulus = *modulus;
    r.first_failure = detail::compare_series(reduce_mod(lhs, *modulus), reduce_mod(rhs, *modulus), bound);
  } else {
    if constexpr (std::is_same_v<Ring, ResidueRing>) r.modulus = lhs.ring().modulus();
    r.first_failure = detail::compare_series(lhs, rhs, bound);
  }
  r.status = r.first_failure ? Status::fail : Status::pass;
  r.seconds = sw.seconds();
  return r;
}

}  // namespace sptlab
