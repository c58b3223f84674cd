#pragma once
// Geometry of a validated solid of revolution: support function, horizontal
// slice radius, volume, boundary curvatures, and the admissible frequency
// rectangle used by the resonance construction.
//
// Rotational symmetry reduces every support query to the meridian half-plane:
//   H(w1,w2,w3) = H(sqrt(w1^2+w2^2), 0, w3)
// and the reduced query is a 1-D maximization over theta in [0,pi].

#include <cstdint>

#include "latdisc/profile.hpp"

namespace latdisc {

struct curvature_pair {
    double meridian;  // |rho rho'' - 2 rho'^2 - rho^2| / (rho^2+rho'^2)^(3/2)
    double gauss;     // product curvature; positive on convex bodies
};

// Axis-aligned rectangle [a1,a2] x [a3,a4] in the (w_r, w_3) quarter-plane.
struct freq_rect {
    double a1, a2, a3, a4;
};

class body_geometry {
  public:
    // Validates the profile (throws std::invalid_argument with the validation
    // reason on rejection) and precomputes volume, support-radius extremes,
    // z-range and the frequency rectangle.
    static body_geometry analyze(const revolution_profile& p);

    const revolution_profile& profile() const { return profile_; }
    double volume() const { return volume_; }
    double c1() const { return c1_; }  // min_w H(w)/|w| = min rho
    double c2() const { return c2_; }  // max_w H(w)/|w| = max rho
    double z_min() const { return z_min_; }
    double z_max() const { return z_max_; }
    const freq_rect& rect() const { return rect_; }

    // Support function of the body in the meridian plane; w_r >= 0.
    // Golden-section bracket to 1e-6 then Newton polish on the stationarity
    // condition; absolute accuracy ~1e-10.
    double support(double w_r, double w3) const;
    // Full 3-D direction, reduced via rotational symmetry.
    double support3(double w1, double w2, double w3) const;

    // Radius of the slice {x3 = z}; exact 0 at the poles (|z - z_pole| <=
    // pole_snap). Bisection on the monotone axial coordinate to theta
    // tolerance xtol.
    double slice_radius(double z, double xtol = 1e-12,
                        double pole_snap = 1e-12) const;

    // Principal curvature data at an interior meridian point; poles rejected.
    curvature_pair curvatures(double theta) const;

    // Gauss curvature limit at the poles (theta -> 0 or pi); used for the
    // axis frequency classes where curvatures() is undefined.
    double gauss_curvature_pole(bool north) const;

  private:
    explicit body_geometry(const revolution_profile& p) : profile_(p) {}
    revolution_profile profile_;
    double volume_ = 0.0;
    double c1_ = 0.0, c2_ = 0.0;
    double z_min_ = 0.0, z_max_ = 0.0;
    freq_rect rect_{0, 0, 0, 0};
};

// Rectangle construction: centered on the diagonal direction (1,0,1)/sqrt(2),
// initial radial span [0.55,1.45]/H(unit diagonal), shrunk about its center
// until every corner w satisfies 1/2 <= H(w) <= 3/2. Exposed for tests.
freq_rect find_rect(const body_geometry& g, int max_shrink = 200);

}  // namespace latdisc
