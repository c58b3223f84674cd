#pragma once
// Meridian profile of a solid of revolution about the x3 axis.
//
// The boundary is rho(theta) * (sin t cos p, sin t sin p, cos t) for
// theta in [0,pi]. rho must be even, 2pi-periodic, smooth, strictly positive,
// and the meridian must be strictly convex: the expression
//     rho*rho'' - 2*rho'^2 - rho^2
// must keep one sign (it is -1 for the unit sphere). validate_profile checks
// both conditions on a grid and is the gate every consumer goes through.

#include <cstddef>
#include <string>
#include <vector>

namespace latdisc {

enum class profile_kind { sphere, spheroid, fourier_cosine };

struct profile_eval {
    double rho;
    double d1;  // drho/dtheta
    double d2;  // d2rho/dtheta2
};

class revolution_profile {
  public:
    // Unit sphere: rho == 1.
    static revolution_profile make_sphere();
    // Equatorial semi-axis a, polar semi-axis b (both > 0).
    static revolution_profile make_spheroid(double a, double b);
    // rho(theta) = c[0] + sum_j c[j] * cos(2*j*theta); even harmonics only so
    // the profile is even about both theta = 0 and theta = pi/2.
    static revolution_profile make_fourier(std::vector<double> coeffs);

    profile_kind kind() const { return kind_; }
    double spheroid_a() const { return a_; }
    double spheroid_b() const { return b_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    double rho(double theta) const;
    profile_eval eval(double theta) const;  // rho with both derivatives

    // rho*rho'' - 2*rho'^2 - rho^2 at theta (negative on convex profiles).
    double curvature_expr(double theta) const;

    std::string describe() const;

  private:
    revolution_profile() = default;
    profile_kind kind_ = profile_kind::sphere;
    double a_ = 1.0, b_ = 1.0;
    std::vector<double> coeffs_;
};

struct profile_validation {
    bool accepted = false;
    double min_rho = 0.0;
    double min_rho_theta = 0.0;
    double min_curv_abs = 0.0;     // grid min of |rho rho'' - 2 rho'^2 - rho^2|
    double min_curv_theta = 0.0;
    int curv_sign = 0;             // sign of the expression on the grid
    bool sign_change = false;
    std::size_t grid_size = 0;
    std::string reason;            // empty when accepted
};

// Grid scan over [0,pi]; rejects when min rho or min |curvature expr| falls
// below tol, or when the curvature expression changes sign.
profile_validation validate_profile(const revolution_profile& p,
                                    std::size_t grid_size = 4096,
                                    double tol = 1e-6);

}  // namespace latdisc
