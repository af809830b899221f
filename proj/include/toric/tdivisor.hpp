#ifndef TORIC_TDIVISOR_HPP
#define TORIC_TDIVISOR_HPP

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "toric/cones_fans.hpp"

namespace toric {

// T-invariant divisor sum_i a_i D_i, one coefficient per ray of its fan.
class TDivisor {
 public:
  TDivisor(std::shared_ptr<const Fan> fan, std::vector<Int> coefficients)
      : fan_(std::move(fan)), a_(std::move(coefficients)) {
    if (!fan_) throw ValidationError("divisor: missing fan");
    if (a_.size() != fan_->rays().size())
      throw ValidationError("divisor: expected one coefficient per ray");
  }

  static TDivisor zero(std::shared_ptr<const Fan> fan) {
    std::vector<Int> a(fan->rays().size());
    return TDivisor(std::move(fan), std::move(a));
  }

  // The invariant prime divisor of ray i.
  static TDivisor elementary(std::shared_ptr<const Fan> fan, std::size_t i) {
    TDivisor d = zero(std::move(fan));
    d.a_.at(i) = 1;
    return d;
  }

  // div(χ^m): coefficient <m, u_i> on ray i.
  static TDivisor principal(std::shared_ptr<const Fan> fan, const DualVector& m) {
    std::vector<Int> a;
    for (const auto& u : fan->rays()) a.push_back(pairing(m, u));
    return TDivisor(std::move(fan), std::move(a));
  }

  const Fan& fan() const { return *fan_; }
  const std::shared_ptr<const Fan>& fan_ptr() const { return fan_; }
  const std::vector<Int>& coefficients() const { return a_; }
  const Int& operator[](std::size_t i) const { return a_[i]; }

  TDivisor& operator+=(const TDivisor& o) {
    if (o.fan_ != fan_ && !(*o.fan_ == *fan_))
      throw ValidationError("divisor sum: divisors live on different fans");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  friend TDivisor operator+(TDivisor a, const TDivisor& b) { return a += b; }
  friend TDivisor operator*(const Int& k, TDivisor d) {
    for (auto& x : d.a_) x *= k;
    return d;
  }
  friend bool operator==(const TDivisor& a, const TDivisor& b) {
    return a.a_ == b.a_ && (a.fan_ == b.fan_ || *a.fan_ == *b.fan_);
  }

 private:
  std::shared_ptr<const Fan> fan_;
  std::vector<Int> a_;
};

}  // namespace toric

#endif  // TORIC_TDIVISOR_HPP
