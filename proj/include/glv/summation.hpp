// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

namespace glv {

/// Kahan-Babuska (Neumaier) compensated accumulator. Results depend only on
/// the order of `add` calls.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    T t = sum_ + x;
    if (abs_(sum_) >= abs_(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  static auto abs_(T v) { return v < 0 ? -v : v; }
  T sum_{0};
  T comp_{0};
};

template <typename T>
class CompensatedSum<std::complex<T>> {
 public:
  void add(std::complex<T> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<T> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<T> re_;
  CompensatedSum<T> im_;
};

}  // namespace glv
