#include "steklov/fourier_shape.hpp"
#include "steklov/errors.hpp"

#include <cmath>
#include <numbers>

namespace steklov {

namespace {
constexpr double kPi = std::numbers::pi;
}

FourierShape::FourierShape() : a_(Eigen::VectorXd::Ones(1)), b_(Eigen::VectorXd::Zero(0)) {}

FourierShape::FourierShape(Eigen::VectorXd a, Eigen::VectorXd b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.size() == 0) throw SteklovError("FourierShape: cosine coefficient vector must not be empty");
    if (b_.size() == 0) {
        b_ = Eigen::VectorXd::Zero(a_.size() - 1);
    } else if (b_.size() != a_.size() - 1) {
        throw SteklovError("FourierShape: expected b_1..b_m, so b.size() must be a.size()-1");
    }
    if (!a_.allFinite() || !b_.allFinite())
        throw SteklovError("FourierShape: coefficients must be finite");
}

FourierShape FourierShape::disk(double radius) {
    Eigen::VectorXd a(1);
    a << radius;
    return FourierShape(a);
}

RadiusJet FourierShape::radius(double theta) const {
    RadiusJet jet{a_[0], 0.0, 0.0};
    for (int k = 1; k <= max_mode(); ++k) {
        const double c = std::cos(k * theta);
        const double s = std::sin(k * theta);
        const double ak = a_[k];
        const double bk = b_[k - 1];
        jet.rho += ak * c + bk * s;
        jet.drho += k * (bk * c - ak * s);
        jet.ddrho -= k * k * (ak * c + bk * s);
    }
    return jet;
}

double FourierShape::min_radius() const {
    const int samples = std::max(16 * max_mode(), 64);
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        lo = std::min(lo, radius(2.0 * kPi * i / samples).rho);
    }
    return lo;
}

void FourierShape::validate() const {
    if (min_radius() <= 0.0)
        throw NonpositiveRadius("FourierShape: boundary radius must be strictly positive");
}

double FourierShape::area() const {
    double sum = 0.0;
    for (int k = 1; k <= max_mode(); ++k) sum += a_[k] * a_[k] + b_[k - 1] * b_[k - 1];
    return kPi * a_[0] * a_[0] + 0.5 * kPi * sum;
}

double FourierShape::area_derivative_cos(int k) const {
    return k == 0 ? 2.0 * kPi * a_[0] : kPi * (k <= max_mode() ? a_[k] : 0.0);
}

double FourierShape::area_derivative_sin(int k) const {
    return kPi * (k >= 1 && k <= max_mode() ? b_[k - 1] : 0.0);
}

FourierShape FourierShape::scaled(double t) const {
    if (!(t > 0.0)) throw SteklovError("FourierShape::scaled: factor must be positive");
    return FourierShape(t * a_, t * b_);
}

FourierShape FourierShape::rotated(double alpha) const {
    Eigen::VectorXd a = a_;
    Eigen::VectorXd b = b_;
    for (int k = 1; k <= max_mode(); ++k) {
        const double c = std::cos(k * alpha);
        const double s = std::sin(k * alpha);
        a[k] = a_[k] * c - b_[k - 1] * s;
        b[k - 1] = a_[k] * s + b_[k - 1] * c;
    }
    return FourierShape(std::move(a), std::move(b));
}

FourierShape FourierShape::reflected() const {
    return FourierShape(a_, -b_);
}

FourierShape FourierShape::with_area(double target) const {
    if (!(target > 0.0)) throw SteklovError("FourierShape::with_area: target must be positive");
    return scaled(std::sqrt(target / area()));
}

} // namespace steklov
