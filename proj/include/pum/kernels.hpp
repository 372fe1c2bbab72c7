#pragma once

#include <cctype>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "pum/errors.hpp"

namespace pum {

enum class KernelFamily {
  gaussian,
  wendland0,
  wendland2,
  wendland4,
  matern0,
  matern2,
  matern4,
};

/// One member of a radial function family. Evaluation computes phi(shape * r)
/// from the family's closed form, normalized so that the value at r = 0 is 1.
/// The Wendland families have compact support: they vanish for shape * r >= 1.
struct RadialKernel {
  KernelFamily family = KernelFamily::wendland2;
  double shape = 1.0;

  double operator()(double r) const {
    if (!(r >= 0.0) || !std::isfinite(r))
      throw InputError("radial kernel: argument must be finite and nonnegative");
    const double t = shape * r;
    switch (family) {
      case KernelFamily::gaussian:
        return std::exp(-t * t);
      case KernelFamily::wendland0: {
        const double u = 1.0 - t;
        return u > 0.0 ? u * u : 0.0;
      }
      case KernelFamily::wendland2: {
        // (1-t)^4 (4t+1), Horner in u = 1-t
        const double u = 1.0 - t;
        if (u <= 0.0) return 0.0;
        const double u2 = u * u;
        return u2 * u2 * (5.0 - 4.0 * u);
      }
      case KernelFamily::wendland4: {
        // (1-t)^6 (35t^2+18t+3) / 3, Horner in u = 1-t
        const double u = 1.0 - t;
        if (u <= 0.0) return 0.0;
        const double u3 = u * u * u;
        return u3 * u3 * (56.0 + u * (-88.0 + 35.0 * u)) / 3.0;
      }
      case KernelFamily::matern0:
        return std::exp(-t);
      case KernelFamily::matern2:
        return (1.0 + t) * std::exp(-t);
      case KernelFamily::matern4:
        return (3.0 + t * (3.0 + t)) * std::exp(-t) / 3.0;
    }
    return 0.0;  // unreachable
  }

  bool compact_support() const {
    switch (family) {
      case KernelFamily::wendland0:
      case KernelFamily::wendland2:
      case KernelFamily::wendland4:
        return true;
      default:
        return false;
    }
  }

  /// Radius beyond which the kernel vanishes (infinite for global families).
  double support_radius() const {
    return compact_support() ? 1.0 / shape : std::numeric_limits<double>::infinity();
  }

  /// Smoothness class C^k of the family; nullopt means C-infinity.
  std::optional<int> smoothness() const {
    switch (family) {
      case KernelFamily::gaussian:
        return std::nullopt;
      case KernelFamily::wendland0:
      case KernelFamily::matern0:
        return 0;
      case KernelFamily::wendland2:
      case KernelFamily::matern2:
        return 2;
      case KernelFamily::wendland4:
      case KernelFamily::matern4:
        return 4;
    }
    return 0;  // unreachable
  }
};

inline std::string_view family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::gaussian:
      return "gaussian";
    case KernelFamily::wendland0:
      return "wendland0";
    case KernelFamily::wendland2:
      return "wendland2";
    case KernelFamily::wendland4:
      return "wendland4";
    case KernelFamily::matern0:
      return "matern0";
    case KernelFamily::matern2:
      return "matern2";
    case KernelFamily::matern4:
      return "matern4";
  }
  return "?";
}

/// Case-insensitive family lookup for config files and CLI flags.
inline KernelFamily family_from_name(std::string_view name) {
  std::string lower;
  lower.reserve(name.size());
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (KernelFamily f : {KernelFamily::gaussian, KernelFamily::wendland0, KernelFamily::wendland2,
                         KernelFamily::wendland4, KernelFamily::matern0, KernelFamily::matern2,
                         KernelFamily::matern4}) {
    if (lower == family_name(f)) return f;
  }
  throw InputError("unknown kernel family: \"" + std::string(name) + "\"");
}

inline RadialKernel make_kernel(KernelFamily family, double shape = 1.0) {
  if (!(shape > 0.0) || !std::isfinite(shape))
    throw InputError("kernel shape must be positive and finite");
  return RadialKernel{family, shape};
}

inline RadialKernel make_kernel(std::string_view name, double shape = 1.0) {
  return make_kernel(family_from_name(name), shape);
}

}  // namespace pum
