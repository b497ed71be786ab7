#pragma once

#include <string>
#include <vector>

namespace idde {

/// Which one-sided limit to take at a discontinuity.
enum class Side { left, right };

/// A linear segment y(t) = value_at_a + slope * (t - a) valid on [a, b].
struct LinearPiece {
    double a = 0.0;
    double b = 0.0;
    double value_at_a = 0.0;
    double slope = 0.0;

    double at(double t) const { return value_at_a + slope * (t - a); }
};

/// Scalar function of time given by a constant, a piecewise-constant step
/// function, or a table with linear interpolation.  Piecewise-constant values
/// are right-continuous; tables are clamped to their boundary value outside
/// the sampled range.
class FunctionDescriptor {
public:
    enum class Kind { constant, piecewise_constant, table };

    FunctionDescriptor() = default;  // constant zero

    static FunctionDescriptor constant(double value);
    /// values[i] holds on [breakpoints[i-1], breakpoints[i]); values has one
    /// more entry than breakpoints.
    static FunctionDescriptor piecewise_constant(std::vector<double> breakpoints,
                                                 std::vector<double> values);
    static FunctionDescriptor table(std::vector<double> abscissae,
                                    std::vector<double> ordinates);

    double operator()(double t, Side side = Side::right) const;

    Kind kind() const { return kind_; }
    bool is_constant() const { return kind_ == Kind::constant; }
    bool is_constant_zero() const { return kind_ == Kind::constant && values_[0] == 0.0; }

    /// Interior knots where the value or the slope may jump.
    const std::vector<double>& breakpoints() const { return knots_; }
    const std::vector<double>& values() const { return values_; }

    /// Decomposition of [a, b] into maximal linear segments.
    std::vector<LinearPiece> pieces_on(double a, double b) const;

    /// Structural invariant violations ("" label omits the prefix).
    std::vector<std::string> invariant_errors(const std::string& label) const;

private:
    Kind kind_ = Kind::constant;
    std::vector<double> knots_;            // breakpoints / table abscissae
    std::vector<double> values_{0.0};
};

/// Deviated argument h(t) <= t: either a constant lag h(t) = t - d or a table
/// of (t, h(t)) samples with linear interpolation.  Outside the table the
/// deviation extends with the boundary lag held constant, so h stays <= t.
class DeviationDescriptor {
public:
    enum class Kind { constant_lag, table };

    DeviationDescriptor() = default;  // zero lag, h(t) = t

    static DeviationDescriptor constant_lag(double lag);
    static DeviationDescriptor table(std::vector<double> abscissae,
                                     std::vector<double> values);

    double operator()(double t) const;

    Kind kind() const { return kind_; }
    bool is_zero_lag() const { return kind_ == Kind::constant_lag && lag_ == 0.0; }
    double lag() const { return lag_; }  // constant-lag case only

    const std::vector<double>& breakpoints() const { return knots_; }

    /// Largest ξ in [lo, hi] is not needed: returns some ξ with h(ξ) = target,
    /// or NaN when no solution lies in [lo, hi].  Closed form for constant
    /// lags, bisection otherwise (tables are validated non-decreasing).
    double preimage(double target, double lo, double hi) const;

    /// sup of t - h(t) over [a, b] (attained at piece endpoints).
    double max_lag_on(double a, double b) const;

    std::vector<std::string> invariant_errors(const std::string& label) const;

private:
    Kind kind_ = Kind::constant_lag;
    double lag_ = 0.0;
    std::vector<double> knots_;
    std::vector<double> values_;
};

/// ∫_a^b f(s) ds, exact for the piecewise-linear descriptor classes.
double integrate(const FunctionDescriptor& f, double a, double b);
/// ∫_a^b max(f(s), 0) ds, exact (splits linear pieces at sign changes).
double integrate_pos(const FunctionDescriptor& f, double a, double b);
/// ∫_a^b |f(s)| ds, exact.
double integrate_abs(const FunctionDescriptor& f, double a, double b);

}  // namespace idde
