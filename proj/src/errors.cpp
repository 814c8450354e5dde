#include "powex/errors.hpp"

#include <cmath>
#include <cstdio>

namespace powex {

namespace {

std::string support_message(double x, double x_min) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "x = %.17g is outside the support: c*x + d must be > 0, i.e. x > x_min = %.17g",
                x, x_min);
  return buf;
}

}  // namespace

OutOfSupport::OutOfSupport(double x, double x_min)
    : DomainError(support_message(x, x_min)), x_(x), x_min_(x_min) {}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite");
  }
}

}  // namespace powex
