#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dlab/field.hpp"

namespace dlab {

// sup over grid centers z of sum of |f| * cell_area over cells whose centers
// lie in the open Euclidean disk of radius r about z (periodic distance).
double concentration(const SpectralField& f, double r);

// Same with open l_inf squares |z-y|_inf < half_width; used by the refined
// projection checker. Equivalent to the disk version up to sqrt(2) in radius.
double concentration_linf(const SpectralField& f, double half_width);

// Trapezoid-in-time average of concentration(., r) over stored snapshots.
double concentration_time_avg(const std::vector<std::pair<double, SpectralField>>& trajectory,
                              double r, double t1, double t2);

/// Tabulated r -> sup-disk-mass data for a family of fields.
struct ConcentrationProfile {
    std::vector<double> radii;   // increasing, in (0, pi]
    std::vector<double> values;  // sup over the family of concentration(f, r)
    double mass_bound = 0.0;     // K, the family's uniform L1 bound

    void validate() const;
};

// Builds the profile of a family on a given radius grid.
ConcentrationProfile profile_family(const std::vector<SpectralField>& family,
                                    const std::vector<double>& radii);

/// eta(r) = max{ values(r)/K, r/pi } on [0,pi], extended by 1 beyond pi.
/// Piecewise-linear in the tabulated sup-values; nondecreasing, <= 1.
class EtaFunction {
  public:
    explicit EtaFunction(ConcentrationProfile profile);

    double operator()(double r) const;  // eta-bar on [0, infinity)
    double mass_bound() const { return profile_.mass_bound; }
    const ConcentrationProfile& profile() const { return profile_; }

  private:
    ConcentrationProfile profile_;
};

inline EtaFunction build_eta(ConcentrationProfile profile) {
    return EtaFunction(std::move(profile));
}

// Rearrangement-invariant maximal function: sup over sets E of area s of
// int_E |f|. Sort-and-accumulate with the last cell pro-rated.
double maximal_function(const SpectralField& f, double s);

// concentration(mu, rho) * sqrt(|log rho|) / ||mu||_{H^-1}; 0 < rho < 1/2.
double disk_mass_log_ratio(const SpectralField& mu, double rho);

/// f = mu + w with mu a mollified nonnegative measure and w in L^p.
struct MeasureDecomposition {
    SpectralField mu;
    SpectralField w;
    double p = 2.0;
    double mu_l1 = 0.0;      // BM-proxy norm of mu
    double mu_hminus1 = 0.0;
    double w_lp = 0.0;

    static MeasureDecomposition make(SpectralField mu, SpectralField w, double p);
    SpectralField sum() const { return mu + w; }
};

// CSV emission: header "# <id>, n=<resolution>" then rows r_or_s,value.
void write_profile_csv(const std::string& path, const std::string& id, int resolution,
                       const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace dlab
