#pragma once

// Test functions f with known, real and even Fourier transforms
// fhat(xi) = int f(x) e^{i xi x} dx, and the band-limited cosine transforms
// used to split the occupation functional.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace levyaf {

class TestKernel {
 public:
  using Fn = std::function<double(double)>;

  /// Rejects transforms that are not even on a probe grid.
  TestKernel(std::string label, Fn f, Fn fhat, std::optional<double> support_radius = {},
             std::vector<double> breakpoints = {});

  double f(double x) const { return f_(x); }
  double fhat(double xi) const { return fhat_(xi); }
  double fhat_at_zero() const noexcept { return fhat_at_zero_; }
  std::optional<double> support_radius_of_fhat() const noexcept { return support_; }
  /// Abscissae (xi > 0) where fhat is not smooth.
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::string& label() const noexcept { return label_; }

  const Fn& f_fn() const noexcept { return f_; }
  const Fn& fhat_fn() const noexcept { return fhat_; }

 private:
  std::string label_;
  Fn f_;
  Fn fhat_;
  double fhat_at_zero_;
  std::optional<double> support_;
  std::vector<double> breakpoints_;
};

/// f(x) = (2 pi)^{-1/2} e^{-x^2/2}, fhat(xi) = e^{-xi^2/2}.
TestKernel gaussian_kernel();

/// Jackson–de la Vallée Poussin kernel f(x) = (12/pi)(sin(x/2)/x)^4 with a
/// piecewise-cubic transform supported on [-2, 2].
TestKernel jvp_kernel();

/// f(x) = (1 - x^2)(2 pi)^{-1/2} e^{-x^2/2}, fhat(xi) = xi^2 e^{-xi^2/2}; fhat(0) = 0.
TestKernel centered_hermite_kernel();

/// Transform = product of transforms; f is the numeric convolution a * b.
TestKernel convolve(const TestKernel& a, const TestKernel& b);

/// "gaussian", "jvp", "hermite2", or "a*b" of those.
TestKernel kernel_by_label(const std::string& label);

struct IntegralVerdict {
  enum class Status { Finite, Diverged, Inconclusive };
  Status status = Status::Inconclusive;
  double value = 0.0;  // tail-corrected when finite, last truncation otherwise

  bool finite() const noexcept { return status == Status::Finite; }
};

const char* to_string(IntegralVerdict::Status s) noexcept;

struct ClassDReport {
  bool c0 = false;
  double l1_norm = 0.0;
  double sup_norm = 0.0;
  IntegralVerdict c1;  // int |fhat|
  IntegralVerdict c2;  // int |fhat(x) - fhat(0)| / x^2
  double c2_inner = 0.0;  // the |x| <= 1 part

  bool member() const noexcept { return c0 && c1.finite() && c2.finite(); }
};

ClassDReport check_class_D(const TestKernel& k);

struct BandTransform {
  double full = 0.0;      // int_{|x|<=delta} fhat(x) cos(x y) dx
  double centered = 0.0;  // int_{|x|<=delta} (fhat(x) - fhat(0)) cos(x y) dx
  int panels = 0;
  bool saturated = false;
};

struct BandSettings {
  int max_panels = 4096;
};

BandTransform band_transform(const TestKernel& k, double delta, double y,
                             const BandSettings& settings = {});

/// int_{|x|<=delta} e^{i x y} dx = 2 sin(delta y)/y, with the y -> 0 limit.
double band_indicator_transform(double delta, double y);

}  // namespace levyaf
