#include "idde/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace idde {

namespace {

bool strictly_increasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return true;
}

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](double x) { return std::isfinite(x); });
}

std::string prefixed(const std::string& label, const std::string& msg) {
    return label.empty() ? msg : label + ": " + msg;
}

}  // namespace

FunctionDescriptor FunctionDescriptor::constant(double value) {
    FunctionDescriptor d;
    d.kind_ = Kind::constant;
    d.values_ = {value};
    return d;
}

FunctionDescriptor FunctionDescriptor::piecewise_constant(
    std::vector<double> breakpoints, std::vector<double> values) {
    FunctionDescriptor d;
    d.kind_ = Kind::piecewise_constant;
    d.knots_ = std::move(breakpoints);
    d.values_ = std::move(values);
    return d;
}

FunctionDescriptor FunctionDescriptor::table(std::vector<double> abscissae,
                                             std::vector<double> ordinates) {
    FunctionDescriptor d;
    d.kind_ = Kind::table;
    d.knots_ = std::move(abscissae);
    d.values_ = std::move(ordinates);
    return d;
}

double FunctionDescriptor::operator()(double t, Side side) const {
    switch (kind_) {
        case Kind::constant:
            return values_[0];
        case Kind::piecewise_constant: {
            // values_[i] holds on [knots_[i-1], knots_[i]); right-continuous.
            auto it = (side == Side::right)
                          ? std::upper_bound(knots_.begin(), knots_.end(), t)
                          : std::lower_bound(knots_.begin(), knots_.end(), t);
            return values_[static_cast<std::size_t>(it - knots_.begin())];
        }
        case Kind::table: {
            if (t <= knots_.front()) return values_.front();
            if (t >= knots_.back()) return values_.back();
            auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
            std::size_t i = static_cast<std::size_t>(it - knots_.begin());
            double t0 = knots_[i - 1], t1 = knots_[i];
            double w = (t - t0) / (t1 - t0);
            return values_[i - 1] + w * (values_[i] - values_[i - 1]);
        }
    }
    return 0.0;
}

std::vector<LinearPiece> FunctionDescriptor::pieces_on(double a,
                                                       double b) const {
    std::vector<LinearPiece> pieces;
    if (!(b > a)) return pieces;
    switch (kind_) {
        case Kind::constant:
            pieces.push_back({a, b, values_[0], 0.0});
            break;
        case Kind::piecewise_constant: {
            double lo = a;
            for (std::size_t i = 0; i <= knots_.size(); ++i) {
                double hi = (i < knots_.size()) ? knots_[i] : b;
                if (hi > b) hi = b;
                if (hi > lo) {
                    pieces.push_back({lo, hi, values_[i], 0.0});
                    lo = hi;
                }
                if (lo >= b) break;
            }
            if (lo < b)  // a beyond the last knot
                pieces.push_back({lo, b, values_.back(), 0.0});
            break;
        }
        case Kind::table: {
            double lo = a;
            if (lo < knots_.front()) {
                double hi = std::min(b, knots_.front());
                pieces.push_back({lo, hi, values_.front(), 0.0});
                lo = hi;
            }
            for (std::size_t i = 1; i < knots_.size() && lo < b; ++i) {
                if (knots_[i] <= lo) continue;
                double t0 = knots_[i - 1], t1 = knots_[i];
                double slope = (values_[i] - values_[i - 1]) / (t1 - t0);
                double hi = std::min(b, t1);
                double start = std::max(lo, t0);
                pieces.push_back(
                    {start, hi, values_[i - 1] + slope * (start - t0), slope});
                lo = hi;
            }
            if (lo < b) pieces.push_back({lo, b, values_.back(), 0.0});
            break;
        }
    }
    return pieces;
}

std::vector<std::string> FunctionDescriptor::invariant_errors(
    const std::string& label) const {
    std::vector<std::string> errors;
    if (!all_finite(values_) || !all_finite(knots_))
        errors.push_back(prefixed(label, "non-finite entry"));
    switch (kind_) {
        case Kind::constant:
            if (values_.size() != 1)
                errors.push_back(prefixed(label, "constant needs one value"));
            break;
        case Kind::piecewise_constant:
            if (values_.size() != knots_.size() + 1)
                errors.push_back(prefixed(
                    label, "piecewise-constant needs one more value than "
                           "breakpoints"));
            if (!strictly_increasing(knots_))
                errors.push_back(
                    prefixed(label, "breakpoints not strictly increasing"));
            break;
        case Kind::table:
            if (knots_.size() < 2)
                errors.push_back(prefixed(label, "table needs two samples"));
            if (values_.size() != knots_.size())
                errors.push_back(
                    prefixed(label, "table abscissae/ordinates length mismatch"));
            if (!strictly_increasing(knots_))
                errors.push_back(
                    prefixed(label, "table abscissae not strictly increasing"));
            break;
    }
    return errors;
}

DeviationDescriptor DeviationDescriptor::constant_lag(double lag) {
    DeviationDescriptor d;
    d.kind_ = Kind::constant_lag;
    d.lag_ = lag;
    return d;
}

DeviationDescriptor DeviationDescriptor::table(std::vector<double> abscissae,
                                               std::vector<double> values) {
    DeviationDescriptor d;
    d.kind_ = Kind::table;
    d.knots_ = std::move(abscissae);
    d.values_ = std::move(values);
    return d;
}

double DeviationDescriptor::operator()(double t) const {
    if (kind_ == Kind::constant_lag) return t - lag_;
    // Outside the table the boundary lag is held constant.
    if (t <= knots_.front()) return t - (knots_.front() - values_.front());
    if (t >= knots_.back()) return t - (knots_.back() - values_.back());
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - knots_.begin());
    double t0 = knots_[i - 1], t1 = knots_[i];
    double w = (t - t0) / (t1 - t0);
    return values_[i - 1] + w * (values_[i] - values_[i - 1]);
}

double DeviationDescriptor::preimage(double target, double lo,
                                     double hi) const {
    if (kind_ == Kind::constant_lag) {
        double xi = target + lag_;
        if (xi < lo || xi > hi) return std::nan("");
        return xi;
    }
    const auto& h = *this;
    double hlo = h(lo), hhi = h(hi);
    if (target < hlo || target > hhi) return std::nan("");
    // h is continuous and non-decreasing (validated); plain bisection.
    double a = lo, b = hi;
    for (int iter = 0; iter < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(b));
         ++iter) {
        double mid = 0.5 * (a + b);
        if (h(mid) < target)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

double DeviationDescriptor::max_lag_on(double a, double b) const {
    if (kind_ == Kind::constant_lag) return lag_;
    // t - h(t) is piecewise linear; extrema sit at knots or window ends.
    double m = std::max(a - (*this)(a), b - (*this)(b));
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        double t = knots_[i];
        if (t >= a && t <= b) m = std::max(m, t - values_[i]);
    }
    return m;
}

std::vector<std::string> DeviationDescriptor::invariant_errors(
    const std::string& label) const {
    std::vector<std::string> errors;
    if (kind_ == Kind::constant_lag) {
        if (!std::isfinite(lag_) || lag_ < 0.0)
            errors.push_back(
                prefixed(label, "constant lag must be finite and >= 0"));
        return errors;
    }
    if (!all_finite(values_) || !all_finite(knots_))
        errors.push_back(prefixed(label, "non-finite entry"));
    if (knots_.size() < 2)
        errors.push_back(prefixed(label, "deviation table needs two samples"));
    if (values_.size() != knots_.size())
        errors.push_back(
            prefixed(label, "deviation table length mismatch"));
    if (!strictly_increasing(knots_))
        errors.push_back(
            prefixed(label, "deviation abscissae not strictly increasing"));
    for (std::size_t i = 0; i < std::min(values_.size(), knots_.size()); ++i)
        if (values_[i] > knots_[i])
            errors.push_back(
                prefixed(label, "deviation value above the identity: h(t) > t"));
    for (std::size_t i = 1; i < values_.size(); ++i)
        if (values_[i] < values_[i - 1])
            errors.push_back(prefixed(
                label, "deviation values must be non-decreasing"));
    return errors;
}

namespace {

// ∫ of one linear piece, mapped through `transform` (identity, positive part,
// absolute value).  Linear pieces are split at the sign change.
enum class PieceMap { identity, positive_part, absolute };

double integrate_piece(const LinearPiece& p, double lo, double hi,
                       PieceMap map) {
    auto raw = [&](double a, double b) {
        double va = p.at(a), vb = p.at(b);
        return 0.5 * (va + vb) * (b - a);
    };
    if (map == PieceMap::identity) return raw(lo, hi);
    double vlo = p.at(lo), vhi = p.at(hi);
    if (vlo >= 0.0 && vhi >= 0.0) return raw(lo, hi);
    if (vlo <= 0.0 && vhi <= 0.0)
        return map == PieceMap::absolute ? -raw(lo, hi) : 0.0;
    double root = lo - vlo / p.slope;  // slope != 0 when signs differ
    double pos_part = vlo > 0.0 ? raw(lo, root) : raw(root, hi);
    if (map == PieceMap::positive_part) return pos_part;
    double neg_part = vlo > 0.0 ? -raw(root, hi) : -raw(lo, root);
    return pos_part + neg_part;
}

double integrate_mapped(const FunctionDescriptor& f, double a, double b,
                        PieceMap map) {
    if (!(b > a)) return 0.0;
    double total = 0.0;
    for (const auto& piece : f.pieces_on(a, b))
        total += integrate_piece(piece, piece.a, piece.b, map);
    return total;
}

}  // namespace

double integrate(const FunctionDescriptor& f, double a, double b) {
    return integrate_mapped(f, a, b, PieceMap::identity);
}

double integrate_pos(const FunctionDescriptor& f, double a, double b) {
    return integrate_mapped(f, a, b, PieceMap::positive_part);
}

double integrate_abs(const FunctionDescriptor& f, double a, double b) {
    return integrate_mapped(f, a, b, PieceMap::absolute);
}

}  // namespace idde
