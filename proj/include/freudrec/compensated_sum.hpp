#pragma once

namespace freudrec {

// Neumaier's variant of Kahan summation. The running compensation also
// captures the low-order bits lost when the addend is larger than the sum,
// which happens every time the centered sums change sign.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double start) : sum_(start) {}

  CompensatedSum& operator+=(double x) {
    const double t = sum_ + x;
    if (abs_(sum_) >= abs_(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  double value() const { return sum_ + comp_; }
  double raw_sum() const { return sum_; }
  double compensation() const { return comp_; }

 private:
  static constexpr double abs_(double v) { return v < 0 ? -v : v; }

  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace freudrec
