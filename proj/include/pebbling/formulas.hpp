#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace pebbling::formulas {

// Exact integer arithmetic throughout; callers stay below n = 60 so all
// values fit in a signed 64-bit integer.

inline long long pow2(int k) {
  if (k < 0 || k > 62) throw std::out_of_range("2^k out of 64-bit range");
  return 1LL << k;
}

/// Sum_{k=0}^{m} 2^k.
inline long long geometric_sum(int m) { return pow2(m + 1) - 1; }

inline long long psi_ns_middle_path(int n) {
  if (n < 2) throw std::invalid_argument("psi_ns_middle_path requires n >= 2");
  return pow2(n + 1) - 3;
}

inline long long psi_ns_middle_cycle(int n) {
  if (n < 3) throw std::invalid_argument("psi_ns_middle_cycle requires n >= 3");
  if (n % 2 == 1) {
    // 2 * sum_{k=0}^{ceil(n/2)} 2^k - 8
    return 2 * geometric_sum((n + 1) / 2) - 8;
  }
  // sum_{k=1}^{floor(n/2)+1} 2^k - 8 + sum_{k=1}^{floor(n/2)} 2^k,
  // both sums taken literally from k = 1.
  const int h = n / 2;
  return (geometric_sum(h + 1) - 1) - 8 + (geometric_sum(h) - 1);
}

inline long long psi_ns_middle_wheel(int n) {
  if (n < 4) throw std::invalid_argument("psi_ns_middle_wheel requires n >= 4");
  return 8LL * (n / 2) + (n % 2 == 1 ? 6 : 10);
}

inline long long psi_ns_middle_fan(int n) {
  if (n < 3) throw std::invalid_argument("psi_ns_middle_fan requires n >= 3");
  if (n % 2 == 1) return 8LL * ((n + 1) / 2 - 1) + 6;
  return 8LL * (n / 2 - 2) + 6;
}

enum class ValueKind { Nsdcp, Dcp, Cover, GammaNs };

inline const char* to_string(ValueKind k) {
  switch (k) {
    case ValueKind::Nsdcp: return "nsdcp";
    case ValueKind::Dcp: return "dcp";
    case ValueKind::Cover: return "cover";
    case ValueKind::GammaNs: return "gamma-ns";
  }
  return "?";
}

struct KnownValue {
  std::string family;
  ValueKind kind;
  int n;
  long long value;
  std::string note;
};

/// Closed-form value table for the families this library tracks; absent
/// when no closed form is recorded or n is outside the recorded validity
/// range. Path/cycle gamma-ns forms are recorded from n >= 4 only; smaller
/// instances disagree with them and are left to the oracle.
inline std::optional<KnownValue> known_value(const std::string& family,
                                             ValueKind kind, int n) {
  auto make = [&](long long v, const char* note) {
    return KnownValue{family, kind, n, v, note};
  };
  if (kind == ValueKind::GammaNs) {
    if (family == "complete" && n >= 1) return make(1, "gamma-ns complete");
    if (family == "wheel" && n >= 4) return make(1, "gamma-ns wheel");
    if (family == "path" && n >= 4) return make(n - 2, "gamma-ns path");
    if (family == "cycle" && n >= 4) return make(n - 2, "gamma-ns cycle");
    return std::nullopt;
  }
  if (kind == ValueKind::Nsdcp) {
    if (family == "complete" && n >= 1) return make(1, "nsdcp complete");
    if (family == "wheel" && n >= 4)
      return make(n - 2, "nsdcp wheel (equals dcp wheel)");
    if (family == "middle_path" && n >= 2)
      return make(psi_ns_middle_path(n), "nsdcp middle path closed form");
    if (family == "middle_cycle" && n >= 3)
      return make(psi_ns_middle_cycle(n), "nsdcp middle cycle closed form");
    if (family == "middle_wheel" && n >= 4)
      return make(psi_ns_middle_wheel(n), "nsdcp middle wheel closed form");
    if (family == "middle_fan" && n >= 3)
      return make(psi_ns_middle_fan(n), "nsdcp middle fan closed form");
    return std::nullopt;
  }
  if (kind == ValueKind::Dcp) {
    if (family == "wheel" && n >= 4) return make(n - 2, "dcp wheel");
    return std::nullopt;
  }
  if (kind == ValueKind::Cover) {
    if (family == "path" && n >= 1 && n <= 60)
      return make(pow2(n) - 1, "cover path");
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace pebbling::formulas
