#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace opal {

using Q = mpq_class;

// Parses "p/q" or "p"; throws on malformed input or zero denominator.
inline Q parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Q q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline std::string rational_str(const Q& q) { return q.get_str(); }

}  // namespace opal
