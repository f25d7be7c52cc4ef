#pragma once

#include <cmath>

namespace nomaee {

// Power conversions between logarithmic and linear scale. Everything
// past the config boundary is in Watts.
template <typename Scalar>
constexpr Scalar dbm_to_watts(Scalar dbm) {
  using std::pow;
  return pow(Scalar(10), (dbm - Scalar(30)) / Scalar(10));
}

template <typename Scalar>
constexpr Scalar watts_to_dbm(Scalar watts) {
  using std::log10;
  return Scalar(10) * log10(watts) + Scalar(30);
}

template <typename Scalar>
constexpr Scalar db_to_linear(Scalar db) {
  using std::pow;
  return pow(Scalar(10), db / Scalar(10));
}

}  // namespace nomaee
