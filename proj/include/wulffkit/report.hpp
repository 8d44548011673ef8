#pragma once

#include <map>
#include <string>

namespace wulffkit {

/// Which way an inequality points. For AtMost the claim is lhs ≤ rhs, for
/// AtLeast it is lhs ≥ rhs; in both cases a nonnegative gap means it holds.
enum class Sense { AtMost, AtLeast };

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  bool equality = false;
  double eq_tol = 0.0;
  std::map<std::string, double> meta;

  bool holds(double slack = 0.0) const { return gap >= -slack; }
};

InequalityReport make_report(std::string name, double lhs, double rhs, Sense sense, double eq_tol);

}  // namespace wulffkit
