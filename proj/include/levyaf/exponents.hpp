#pragma once

// Symmetric characteristic exponents Psi with E[exp(-i x X_s)] = exp(-s Psi(x)),
// their small-|x| curvature constant ell = lim Psi(x)/x^2, the envelope
// functions inf/sup of Psi(x)/x^2 on (0, delta], and numeric classifiers for
// the three standing conditions (finite curvature, Hartman–Wintner growth,
// integrability of 1/(1+Psi)).

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace levyaf {

/// Parameters of the exponentially tempered (alpha/2)-stable Levy measure
///   mu(ds) = (alpha/2)/Gamma(1-alpha/2) * exp(-m^{2/alpha} s) s^{-1-alpha/2} ds,
/// whose Bernstein function is (lambda + m^{2/alpha})^{alpha/2} - m.
struct TemperedStableParams {
  double m;
  double alpha;
};

/// A Bernstein function phi(lambda) = int_0^inf (1 - e^{-lambda s}) mu(ds)
/// given through the density of mu.
struct BernsteinSpec {
  std::string label;
  std::function<double(double)> mu_density;
  std::optional<double> closed_form_first_moment;  // int s mu(ds)
  std::optional<TemperedStableParams> tempered;    // enables exact sampling
};

BernsteinSpec tempered_stable_measure(double m, double alpha);
/// mu(ds) = a e^{-b s} / s ds, phi(lambda) = a log(1 + lambda / b).
BernsteinSpec gamma_measure(double a, double b);

/// phi(lambda) by quadrature of the integral representation.
double bernstein_phi(const BernsteinSpec& spec, double lambda);

struct IntegrabilityWitness {
  double small_jump_mass = 0.0;  // int (s ^ 1) mu(ds)
  double first_moment = 0.0;     // int s mu(ds), +inf when it does not settle
  bool stable = false;           // truncated integral settles under doubling
};

/// Truncated integrals over (0, R] with R doubled until the (s ^ 1)-weighted
/// mass changes by less than 1e-6 relative.
IntegrabilityWitness integrability_witness(const BernsteinSpec& spec);

struct Brownian {
  double c;  // Psi(x) = c x^2
};
struct SymmetricStable {
  double alpha;  // Psi(x) = |x|^alpha, alpha in (0, 2]
};
struct Relativistic {
  double m;
  double alpha;  // Psi(x) = (x^2 + m^{2/alpha})^{alpha/2} - m, alpha in (1, 2)
};
struct SubordinatedBM {
  BernsteinSpec bernstein;  // Psi(x) = phi(x^2)
};

class CharacteristicExponent {
 public:
  using Kind = std::variant<Brownian, SymmetricStable, Relativistic, SubordinatedBM>;

  static CharacteristicExponent brownian(double c);
  static CharacteristicExponent symmetric_stable(double alpha);
  static CharacteristicExponent relativistic(double m, double alpha);
  static CharacteristicExponent subordinated(BernsteinSpec spec);

  const Kind& kind() const noexcept { return kind_; }
  std::optional<double> closed_form_ell() const noexcept { return closed_form_ell_; }

  /// Short identifier used in reports, e.g. "relativistic(m=1,alpha=1.5)".
  const std::string& tag() const noexcept { return tag_; }

  double operator()(double x) const;

 private:
  CharacteristicExponent(Kind kind, std::optional<double> ell, std::string tag)
      : kind_(std::move(kind)), closed_form_ell_(ell), tag_(std::move(tag)) {}

  Kind kind_;
  std::optional<double> closed_form_ell_;
  std::string tag_;
};

/// Psi(x); always evaluated at |x|.
double evaluate(const CharacteristicExponent& psi, double x);

struct CurvatureSettings {
  double x0 = 0.1;
  int levels = 20;
  double growth_limit = 1.10;   // successive ratio growth that signals divergence
  double stabilize_rel = 1e-6;  // last two Richardson values must agree this well
};

/// ell = lim_{x->0} Psi(x)/x^2. Uses the closed form when one is known.
/// Throws ErrorKind::Divergence when the ratio does not settle.
double curvature_limit(const CharacteristicExponent& psi);

/// Richardson-extrapolated limit of Psi(x)/x^2 along x0 2^{-j}.
double curvature_limit_numeric(const CharacteristicExponent& psi,
                               const CurvatureSettings& settings = {});

struct Envelope {
  double lower;  // inf_{0<|x|<=delta} Psi(x)/x^2
  double upper;  // sup_{0<|x|<=delta} Psi(x)/x^2, +inf if unbounded near 0
};

Envelope envelope(const CharacteristicExponent& psi, double delta);

struct HartmanWintnerEvidence {
  bool satisfied = false;
  std::array<double, 8> ratios{};  // Psi(10^j)/log(10^j + 1), j = 1..8
};

HartmanWintnerEvidence hartman_wintner(const CharacteristicExponent& psi);

struct LocalTimeIntegral {
  enum class Status { Finite, Diverged, Inconclusive };
  Status status = Status::Inconclusive;
  double value = 0.0;   // tail-corrected estimate (Finite) or last truncation
  int doublings = 0;
  double last_increment = 0.0;

  bool finite() const noexcept { return status == Status::Finite; }
};

const char* to_string(LocalTimeIntegral::Status s) noexcept;

struct ConditionReport {
  std::optional<double> ell;
  bool hartman_wintner = false;
  LocalTimeIntegral local_time;
  std::vector<std::string> notes;

  bool eligible() const noexcept {
    return ell.has_value() && hartman_wintner && local_time.finite();
  }
};

ConditionReport classify_conditions(const CharacteristicExponent& psi);

/// ell recovered from the Levy measure as int_0^inf s mu(ds).
double second_moment_split(const Relativistic& model);

/// int_0^inf (s ^ 1) mu(ds) for the relativistic Levy measure.
double small_jump_mass(const Relativistic& model);

}  // namespace levyaf
