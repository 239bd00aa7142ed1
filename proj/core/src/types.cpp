#include "dyft/types.hpp"

#include <string>

namespace dyft {

FractalOrder::FractalOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("fractal order must lie in (0, 1], got " +
                      std::to_string(alpha));
  }
}

std::string_view to_string(KernelConvention c) noexcept {
  switch (c) {
    case KernelConvention::ConjugatePair:
      return "conjugate-pair";
    case KernelConvention::NegatedPrincipal:
      return "negated-principal";
  }
  return "unknown";
}

std::string_view to_string(Direction d) noexcept {
  return d == Direction::Forward ? "forward" : "inverse";
}

KernelConvention parse_convention(std::string_view text) {
  if (text == "conjugate-pair") return KernelConvention::ConjugatePair;
  if (text == "negated-principal") return KernelConvention::NegatedPrincipal;
  throw DomainError("unknown kernel convention '" + std::string(text) +
                    "' (expected conjugate-pair or negated-principal)");
}

void MLConfig::validate() const {
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
    throw DomainError("rel_tol must be positive and finite");
  }
  if (max_terms < 1) throw DomainError("max_terms must be at least 1");
  if (!(magnitude_guard > 0.0)) {
    throw DomainError("magnitude_guard must be positive");
  }
  if (max_precision_bits < 64) {
    throw DomainError("max_precision_bits must be at least 64");
  }
}

}  // namespace dyft
