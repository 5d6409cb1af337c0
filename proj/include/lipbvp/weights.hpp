#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lipbvp/geometry.hpp"
#include "lipbvp/quadrature.hpp"

namespace lipbvp {

class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class Weight;

struct WeightFactor;

/// Boundary weight. Symbolic kinds are functions of |x| (radial about 0) and carry a
/// positive scale coefficient; sampled and custom kinds are evaluated pointwise.
class Weight {
public:
    enum class Kind { Power, PowerLog, LogCap, Product, Sampled, Custom };

    /// scale * |x|^beta
    static Weight power(double beta, double scale = 1.0);
    /// scale * |x|^beta / (1 + log_+(1/|x|^inner))
    static Weight power_log(double beta, double inner = 1.0, double scale = 1.0);
    /// scale * max(1, inner * log(1/|x|))
    static Weight log_cap(double inner = 1.0, double scale = 1.0);
    /// scale * prod w_i^{e_i}
    static Weight product(std::vector<WeightFactor> factors, double scale = 1.0);
    /// Piecewise-linear interpolation of positive samples, constant beyond the grid.
    static Weight sampled(std::vector<double> grid, std::vector<double> values);
    /// Pointwise density; `radial` declares w(x) = w(|x|).
    static Weight custom(std::function<double(double)> density, std::vector<double> singular_points,
                         bool radial = false, std::string label = "custom");
    static Weight one() { return power(0.0); }

    Kind kind() const { return kind_; }
    double beta() const { return beta_; }
    double inner() const { return inner_; }
    double scale() const { return scale_; }
    const std::vector<WeightFactor>& factors() const;
    const std::string& label() const { return label_; }

    double operator()(double x) const;
    /// log w(x); -inf where w vanishes.
    double log_value(double x) const;
    /// log w at |x| = e^s. Only for radial weights.
    double log_abs(double s) const;
    bool radial() const;
    /// Evaluation on the boundary curve: radial weights use |xi|, others Re xi.
    double on_curve(cplx xi) const;
    /// Points where the density may be singular or vanish.
    std::vector<double> singular_points() const;
    /// Exponent when the weight is a (product of) pure power(s).
    std::optional<double> power_exponent() const;

    Weight pow(double e) const;
    Weight scaled(double c) const;
    std::string describe() const;

private:
    Kind kind_ = Kind::Power;
    double beta_ = 0.0;
    double inner_ = 1.0;
    double scale_ = 1.0;
    std::shared_ptr<const std::vector<WeightFactor>> factors_;
    std::shared_ptr<const std::vector<double>> grid_;
    std::shared_ptr<const std::vector<double>> values_;
    std::function<double(double)> fn_;
    std::vector<double> singular_;
    bool custom_radial_ = false;
    std::string label_;
};

struct WeightFactor {
    Weight weight;
    double exponent = 1.0;
};

/// Product with simplification of power and power-log pairs.
Weight multiply(const Weight& a, const Weight& b);

/// log of the integral of w^power over [a, b]; non-finite when the integral diverges.
quad::LogIntegral log_integral(const Weight& w, double a, double b, double power = 1.0);

/// log of the integral of w^power over [0, e^{log_h}] (or [-e^{log_h}, 0] when side < 0).
/// Allows scales far below the double range of lengths.
quad::LogIntegral log_integral_origin(const Weight& w, double log_h, double power = 1.0,
                                      int side = 1);

/// Integral of w^power over [a, b] (infinity when divergent).
double integral(const Weight& w, double a, double b, double power = 1.0);

/// |Phi'| as a weight on R.
Weight derivative_modulus(const ConformalMap& map);

/// nu o Phi on R.
Weight compose(const Weight& nu, const ConformalMap& map);

/// Phi(nu) = (nu o Phi)|Phi'|.
Weight pushforward(const Weight& nu, const ConformalMap& map);

}  // namespace lipbvp
