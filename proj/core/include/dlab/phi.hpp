#pragma once

#include <functional>
#include <vector>

#include "dlab/field.hpp"

namespace dlab {

/// Concave increasing majorant Phi with Phi(0) = 0, either tabulated from the
/// eta-bar integral or the closed-form logarithmic variant.
class PhiFunction {
  public:
    enum class Kind { kIntegralForm, kLogForm };

    Kind kind() const { return kind_; }
    double constant() const { return C_; }
    double poincare_constant() const { return C_P_; }
    double log_matching_factor() const { return L_; }

    const std::vector<double>& table_x() const { return xs_; }
    const std::vector<double>& table_y() const { return ys_; }

    double operator()(double x) const;

    // Inverse by monotone bisection on the table with local refinement to
    // 1e-10 relative tolerance. Throws outside the table range.
    double inverse(double y) const;

    friend PhiFunction build_phi_integral(const std::function<double(double)>& eta_bar, double C);
    friend PhiFunction build_phi_log(double C, double C_P);

  private:
    PhiFunction() = default;

    Kind kind_ = Kind::kIntegralForm;
    double C_ = 0.0;
    double C_P_ = 0.0;
    double L_ = 0.0;
    // log-form extension on [0, e^2]: a x - b x^2
    double ext_a_ = 0.0;
    double ext_b_ = 0.0;
    // integral form only: the tabulated integrand, used to evaluate exactly
    // between table nodes instead of interpolating
    std::function<double(double)> integrand_;
    std::vector<double> xs_;
    std::vector<double> ys_;
};

// Phi(x) = int_0^x C sqrt(eta_bar(pi y^{-1/4})) dy, tabulated on a log-spaced
// grid (64 points per decade over [1e-6, 1e12]) by adaptive quadrature.
PhiFunction build_phi_integral(const std::function<double(double)>& eta_bar, double C);

// Phi1(x) = C x / (log x)^{1/4} on (e^2, inf), extended C^1-concavely by
// a x - b x^2 on [0, e^2]; L = Phi2(e^2)/Phi1(e^2) with Phi2 = C_P x^2;
// Phi = (L+1) Phi1.
PhiFunction build_phi_log(double C, double C_P);

// Upsilon(x) = (Phi^{-1})^2(x): convex, increasing, superquadratic.
std::function<double(double)> build_upsilon(const PhiFunction& phi);

}  // namespace dlab
