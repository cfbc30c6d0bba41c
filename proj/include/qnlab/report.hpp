#pragma once

// Inequality audit record: pass iff lhs <= constant * rhs * (1 + 1e-9).

#include <string>

namespace qnlab {

struct NormReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double fitted_constant = 1.0;
  bool pass = false;
};

inline NormReport make_report(std::string name, double lhs, double rhs,
                              double constant) {
  NormReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.fitted_constant = constant;
  r.pass = lhs <= constant * rhs * (1.0 + 1e-9);
  return r;
}

}  // namespace qnlab
