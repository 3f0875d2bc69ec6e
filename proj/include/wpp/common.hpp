#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wpp {

using Integer = mpz_class;
using Rational = mpq_class;

/// Bitmask over the ground set; bit (k-1) stands for element k.
using Mask = std::uint32_t;

inline Mask bit(int element) { return Mask{1} << (element - 1); }

/// Caller violated a precondition (mismatched ground sets, non-covers, bad trees, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured enumeration cap would be exceeded. Never silently truncated.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(std::string cap, long long limit, long long requested)
      : std::runtime_error("resource cap '" + cap + "' exceeded: limit " + std::to_string(limit) +
                           ", requested " + std::to_string(requested)),
        cap_(std::move(cap)),
        limit_(limit),
        requested_(requested) {}

  const std::string& cap() const { return cap_; }
  long long limit() const { return limit_; }
  long long requested() const { return requested_; }

 private:
  std::string cap_;
  long long limit_;
  long long requested_;
};

/// A mathematical guarantee failed at run time (non-terminating rewrite, cyclic order, ...).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Caps {
  int max_poset_n = 9;       // poset construction
  int max_mobius_n = 6;      // Möbius tables
  int max_tree_n = 9;        // rooted-tree enumeration
  int max_bicolored_n = 6;   // unrestricted bicolored tree enumeration
  int max_forest_n = 7;      // rooted-forest enumeration ((n+1)^n parent maps)
  long long max_elements = 400000;
  long long max_chains = 5000000;
};

inline void require_cap(const char* cap, long long limit, long long requested) {
  if (requested > limit) throw ResourceError(cap, limit, requested);
}

}  // namespace wpp
