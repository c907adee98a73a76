#pragma once

namespace fmacomp {

/// Plane rotation [c s; -s c] that maps [f, g] onto [h, 0]. c carries the sign of f
/// and s the sign of g.
struct GivensRotation {
    double c = 1.0;
    double s = 0.0;

    friend bool operator==(const GivensRotation&, const GivensRotation&) = default;
};

} // namespace fmacomp
