#pragma once

#include <cmath>

namespace beurling::detail {

// Neumaier compensated accumulator. Order of add() calls fixes the result.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(Scalar x) noexcept {
    const Scalar t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  Scalar value() const noexcept { return sum_ + carry_; }

 private:
  Scalar sum_{0};
  Scalar carry_{0};
};

}  // namespace beurling::detail
