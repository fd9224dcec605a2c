#pragma once

#include <map>
#include <string>

#include "dlab/concentration.hpp"
#include "dlab/field.hpp"

namespace dlab {

/// Two sides of one inequality instance: ratio = lhs / rhs_without_constant.
struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs_without_constant = 0.0;
    double ratio = 0.0;
    std::map<std::string, double> params;
    int resolution = 0;

    static InequalityReport make(std::string name, double lhs, double rhs,
                                 std::map<std::string, double> params, int resolution);
    std::string to_json() const;
};

// ||f * g||_2 <= sqrt(||f||_1 sup_{|B|=|B*|} ||f||_{L1(B)}) ||g||_2, for g
// supported in a disk of the given radius. g is masked to the disk first.
InequalityReport check_convolution_bound(const SpectralField& f, const SpectralField& g,
                                         double ball_radius);

// ||f||_2^2 vs N^2 ||f||_1 (conc_inf(f, eps^alpha) + ||f||_1/(N eps^alpha))
//            + ||grad f||_2^2 / N^2,  with l_inf squares for the concentration.
InequalityReport check_refined_projection(const SpectralField& f, double alpha, double epsilon,
                                          int N);

// Named epsilon presets reproducing the proofs' substitutions.
enum class EpsilonPreset {
    kLogGrad,  // eps* = 1/(||grad f|| (log ||grad f||^2)^{1/4})
    kEtaGrad,  // eps* = sqrt(eta(||grad f||^{-1/4})) / ||grad f||
};
InequalityReport check_refined_projection_preset(const SpectralField& f, double alpha,
                                                 EpsilonPreset preset, const EtaFunction* eta);

// ||f||_2^2 vs (K^2+1) ||grad f||_2 sqrt(eta(||grad f||_2^{-1/4})); requires
// ||grad f||_2 > 1. K is the eta profile's mass bound.
InequalityReport check_refined_nash(const SpectralField& f, const EtaFunction& eta);

// ||f||_2^2 vs [||f||_1(||mu||_{H^-1} + ||w||_{L^p} + ||f||_1) + 1]
//            * ||grad f||_2 / (log ||grad f||_2)^{1/4};  ||grad f||_2 > e^2.
InequalityReport check_measure_refined(const MeasureDecomposition& dec);

// ||f||_2^4 / (||f||_1^2 ||grad f||_2^2), reported not asserted.
double classical_nash_ratio(const SpectralField& f);

}  // namespace dlab
