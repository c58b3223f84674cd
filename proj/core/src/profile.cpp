#include "latdisc/profile.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace latdisc {

revolution_profile revolution_profile::make_sphere() {
    revolution_profile p;
    p.kind_ = profile_kind::sphere;
    return p;
}

revolution_profile revolution_profile::make_spheroid(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("spheroid: semi-axes must be positive");
    revolution_profile p;
    p.kind_ = profile_kind::spheroid;
    p.a_ = a;
    p.b_ = b;
    return p;
}

revolution_profile revolution_profile::make_fourier(std::vector<double> coeffs) {
    if (coeffs.empty())
        throw std::invalid_argument("fourier profile: need at least c0");
    revolution_profile p;
    p.kind_ = profile_kind::fourier_cosine;
    p.coeffs_ = std::move(coeffs);
    return p;
}

profile_eval revolution_profile::eval(double theta) const {
    switch (kind_) {
        case profile_kind::sphere:
            return {1.0, 0.0, 0.0};
        case profile_kind::spheroid: {
            // rho = a*b / sqrt(D), D = b^2 sin^2 + a^2 cos^2
            const double s = std::sin(theta);
            const double c = std::cos(theta);
            const double b2 = b_ * b_;
            const double a2 = a_ * a_;
            const double D = b2 * s * s + a2 * c * c;
            const double D1 = (b2 - a2) * std::sin(2.0 * theta);
            const double D2 = 2.0 * (b2 - a2) * std::cos(2.0 * theta);
            const double ab = a_ * b_;
            const double Dm12 = 1.0 / std::sqrt(D);
            const double Dm32 = Dm12 / D;
            const double Dm52 = Dm32 / D;
            profile_eval e;
            e.rho = ab * Dm12;
            e.d1 = -0.5 * ab * Dm32 * D1;
            e.d2 = 0.75 * ab * Dm52 * D1 * D1 - 0.5 * ab * Dm32 * D2;
            return e;
        }
        case profile_kind::fourier_cosine: {
            profile_eval e{coeffs_[0], 0.0, 0.0};
            for (std::size_t j = 1; j < coeffs_.size(); ++j) {
                const double w = 2.0 * static_cast<double>(j);
                const double cj = coeffs_[j];
                e.rho += cj * std::cos(w * theta);
                e.d1 -= cj * w * std::sin(w * theta);
                e.d2 -= cj * w * w * std::cos(w * theta);
            }
            return e;
        }
    }
    throw std::logic_error("unreachable profile kind");
}

double revolution_profile::rho(double theta) const {
    switch (kind_) {
        case profile_kind::sphere:
            return 1.0;
        case profile_kind::spheroid: {
            const double s = std::sin(theta);
            const double c = std::cos(theta);
            return a_ * b_ / std::sqrt(b_ * b_ * s * s + a_ * a_ * c * c);
        }
        case profile_kind::fourier_cosine: {
            double r = coeffs_[0];
            for (std::size_t j = 1; j < coeffs_.size(); ++j)
                r += coeffs_[j] * std::cos(2.0 * j * theta);
            return r;
        }
    }
    throw std::logic_error("unreachable profile kind");
}

double revolution_profile::curvature_expr(double theta) const {
    const profile_eval e = eval(theta);
    return e.rho * e.d2 - 2.0 * e.d1 * e.d1 - e.rho * e.rho;
}

std::string revolution_profile::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case profile_kind::sphere:
            os << "sphere";
            break;
        case profile_kind::spheroid:
            os << "spheroid(a=" << a_ << ",b=" << b_ << ")";
            break;
        case profile_kind::fourier_cosine:
            os << "fourier(";
            for (std::size_t j = 0; j < coeffs_.size(); ++j)
                os << (j ? "," : "") << coeffs_[j];
            os << ")";
            break;
    }
    return os.str();
}

profile_validation validate_profile(const revolution_profile& p,
                                    std::size_t grid_size, double tol) {
    if (grid_size < 64)
        throw std::invalid_argument("validate_profile: grid_size >= 64");
    const double pi = 3.14159265358979323846;
    profile_validation v;
    v.grid_size = grid_size;
    v.min_rho = std::numeric_limits<double>::infinity();
    v.min_curv_abs = std::numeric_limits<double>::infinity();
    int first_sign = 0;
    for (std::size_t i = 0; i <= grid_size; ++i) {
        const double theta = pi * static_cast<double>(i) / grid_size;
        const profile_eval e = p.eval(theta);
        const double expr = e.rho * e.d2 - 2.0 * e.d1 * e.d1 - e.rho * e.rho;
        if (e.rho < v.min_rho) {
            v.min_rho = e.rho;
            v.min_rho_theta = theta;
        }
        if (std::abs(expr) < v.min_curv_abs) {
            v.min_curv_abs = std::abs(expr);
            v.min_curv_theta = theta;
        }
        const int s = expr > 0.0 ? 1 : (expr < 0.0 ? -1 : 0);
        if (first_sign == 0) first_sign = s;
        if (s != 0 && first_sign != 0 && s != first_sign) v.sign_change = true;
        if (s == 0) v.sign_change = true;  // exact zero on the grid
    }
    v.curv_sign = first_sign;
    std::ostringstream why;
    if (v.min_rho < tol)
        why << "min rho " << v.min_rho << " below tol at theta=" << v.min_rho_theta
            << "; ";
    if (v.min_curv_abs < tol)
        why << "curvature expression magnitude " << v.min_curv_abs
            << " below tol at theta=" << v.min_curv_theta << "; ";
    if (v.sign_change) why << "curvature expression changes sign; ";
    v.reason = why.str();
    v.accepted = v.reason.empty();
    return v;
}

}  // namespace latdisc
