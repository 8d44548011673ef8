#include "wulffkit/report.hpp"

#include <algorithm>
#include <cmath>

namespace wulffkit {

InequalityReport make_report(std::string name, double lhs, double rhs, Sense sense, double eq_tol) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = sense == Sense::AtMost ? rhs - lhs : lhs - rhs;
  r.eq_tol = eq_tol;
  r.equality = std::abs(r.gap) <= eq_tol * std::max(std::abs(lhs), std::abs(rhs));
  return r;
}

}  // namespace wulffkit
