#pragma once

#include <vector>

#include "idde/descriptor.hpp"
#include "idde/mesh.hpp"

namespace idde {

/// A solution sampled on a breakpoint-aligned mesh.  Values are
/// right-continuous; pre-jump left limits are kept separately at impulse
/// nodes.  Between nodes the solution is evaluated with the cubic Hermite
/// interpolant built from the stored one-sided endpoint derivatives, never
/// across an impulse node.  Queries left of the start time delegate to the
/// history function (identically zero for fundamental-function columns).
class PiecewiseSolution {
public:
    PiecewiseSolution(Mesh mesh, std::vector<double> values,
                      std::vector<double> left_values,
                      std::vector<double> deriv_right,
                      std::vector<double> deriv_left,
                      FunctionDescriptor history, bool zero_history);

    double start_time() const { return mesh_.start(); }
    double end_time() const { return mesh_.end(); }
    const Mesh& mesh() const { return mesh_; }

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& left_values() const { return left_values_; }
    double value(std::size_t node) const { return values_[node]; }
    double left_value(std::size_t node) const { return left_values_[node]; }
    double deriv_right(std::size_t node) const { return deriv_right_[node]; }
    double deriv_left(std::size_t node) const { return deriv_left_[node]; }

    /// Value at time t.  Side picks the one-sided limit when t is a node with
    /// a jump; history (or zero) left of start_time.  Throws std::out_of_range
    /// beyond end_time.
    double operator()(double t, Side side = Side::right) const;

    bool is_impulse_node(std::size_t node) const {
        return mesh_.impulse_index[node] >= 0;
    }

private:
    Mesh mesh_;
    std::vector<double> values_;       // right-continuous node values
    std::vector<double> left_values_;  // pre-jump limits (== values off impulses)
    std::vector<double> deriv_right_;
    std::vector<double> deriv_left_;
    FunctionDescriptor history_;
    bool zero_history_ = false;
};

struct SignChange {
    double lo = 0.0;   // value(lo) and value(hi) have opposite signs
    double hi = 0.0;
};

/// Sign changes of the solution over [start, end], each refined by bisection
/// on the interpolant until hi - lo <= width.  Jumps through zero at impulse
/// nodes are reported as zero-width brackets at the node.
std::vector<SignChange> sign_changes(const PiecewiseSolution& sol,
                                     double width = 1e-9);

}  // namespace idde
