#pragma once

#include <vector>

namespace horncrit {

// Monotone cubic Hermite interpolant (Fritsch-Carlson slopes). Preserves
// monotonicity of the data, which tabulated f and its inner integral need.
class PchipCurve {
  public:
    PchipCurve() = default;
    PchipCurve(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }
    bool empty() const { return x_.empty(); }
    const std::vector<double>& xs() const { return x_; }
    const std::vector<double>& ys() const { return y_; }

  private:
    std::size_t segment(double x) const;
    std::vector<double> x_, y_, slope_;
};

}  // namespace horncrit
