#pragma once

// Plain-text coefficient cache:
//   # name=<id> ring=<Z|Zmod:m> min_exp=<int> precision=<int> unit=24
// followed by one decimal coefficient per line, for every exponent
// min_exp, min_exp+1, ..., precision-1 (1/24 units).

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sptlab/ring.hpp"
#include "sptlab/series.hpp"

namespace sptlab {

class cache_format_error : public std::runtime_error {
 public:
  explicit cache_format_error(const std::string& what) : std::runtime_error(what) {}
};

/// A cache file as read from disk, before being bound to a ring type.
struct CachedSeries {
  std::string name;
  CoeffRing ring;
  std::int64_t min_exp = 0;
  std::int64_t precision = 0;
  std::vector<mpz_class> coeffs;  // dense, one per 1/24 step

  template <class Ring>
  QSeries<Ring> bind(const Ring& r) const {
    if (!(r.descriptor() == ring))
      throw ring_mismatch("cache ring " + ring.to_string() + " does not match " + r.descriptor().to_string());
    std::vector<typename Ring::value_type> v;
    v.reserve(coeffs.size());
    for (const auto& c : coeffs) v.push_back(r.from_mpz(c));
    return QSeries<Ring>(r, min_exp, 1, precision, std::move(v)).compacted();
  }
};

template <class Ring>
void write_series_cache(std::ostream& out, const std::string& name, const QSeries<Ring>& f) {
  const Ring& ring = f.ring();
  out << "# name=" << name << " ring=" << ring.descriptor().to_string() << " min_exp=" << f.min_exp()
      << " precision=" << f.precision() << " unit=" << kUnit << '\n';
  for (std::int64_t e = f.min_exp(); e < f.precision(); ++e) out << ring.to_string(f.coeff_at(e)) << '\n';
}

inline CachedSeries read_series_cache(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("# ", 0) != 0) throw cache_format_error("missing cache header");
  std::map<std::string, std::string> fields;
  std::istringstream hs(header.substr(2));
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw cache_format_error("malformed header field: " + tok);
    fields[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  for (const char* key : {"name", "ring", "min_exp", "precision", "unit"})
    if (!fields.count(key)) throw cache_format_error(std::string("header lacks ") + key);
  if (fields["unit"] != std::to_string(kUnit)) throw cache_format_error("unsupported unit " + fields["unit"]);

  CachedSeries c;
  c.name = fields["name"];
  try {
    c.ring = CoeffRing::parse(fields["ring"]);
    c.min_exp = std::stoll(fields["min_exp"]);
    c.precision = std::stoll(fields["precision"]);
  } catch (const std::exception& e) {
    throw cache_format_error(std::string("bad header value: ") + e.what());
  }
  if (c.min_exp > c.precision) throw cache_format_error("min_exp exceeds precision");
  const auto expected = static_cast<std::size_t>(c.precision - c.min_exp);
  c.coeffs.reserve(expected);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    mpz_class v;
    if (v.set_str(line, 10) != 0) throw cache_format_error("bad coefficient line: " + line);
    if (c.ring.kind == CoeffRing::Kind::residue && (v < 0 || v >= mpz_class(static_cast<unsigned long>(c.ring.modulus))))
      throw cache_format_error("residue out of canonical range: " + line);
    c.coeffs.push_back(std::move(v));
  }
  if (c.coeffs.size() != expected)
    throw cache_format_error("expected " + std::to_string(expected) + " coefficients, found " +
                             std::to_string(c.coeffs.size()));
  return c;
}

}  // namespace sptlab
