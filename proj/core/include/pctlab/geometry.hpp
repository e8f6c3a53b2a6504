#pragma once

#include "pctlab/rational.hpp"

#include <compare>

namespace pctlab {

/// A point of the plane with exact rational coordinates.
struct Vec2 {
    Rat x1;
    Rat x2;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

enum class OrbitMap { Tau, Sigma };

/// The parameter block of the construction: the branching probability q,
/// its discriminant root sqrt(4q-3), the anchor point kappa, and the
/// auxiliary weight gamma. Instances are validated on creation; every
/// geometric operation below takes the block as context.
class GeometryConstants {
public:
    /// Validates and builds a parameter block. Requirements:
    ///   q in (3/4,1); sqrt_disc > 0 with sqrt_disc^2 = 4q-3;
    ///   kappa.x1 inside the open interval (iq_lower, iq_upper);
    ///   kappa.x2 > 0; kappa.x1 + kappa.x2 < q - 1/2;
    ///   gamma in ((1-q)*kappa.x2, 3/4 - (5/4)q + q^2/2).
    /// Throws InputError naming the violated constraint.
    static GeometryConstants make(const Rat& q, const Rat& sqrt_disc,
                                  const Vec2& kappa, const Rat& gamma);

    /// The canonical instance: q = 13/16, sqrt_disc = 1/2,
    /// kappa = (17/64, 1/32), gamma = 3/50.
    static const GeometryConstants& defaults();

    const Rat& q() const { return q_; }
    const Rat& sqrt_disc() const { return sqrt_disc_; }
    const Vec2& kappa() const { return kappa_; }
    const Rat& gamma() const { return gamma_; }

    /// Endpoints of the open interval I_q = ((1-sqrt_disc)/2, (1+sqrt_disc)/2).
    const Rat& iq_lower() const { return iq_lower_; }
    const Rat& iq_upper() const { return iq_upper_; }

private:
    GeometryConstants() = default;

    Rat q_;
    Rat sqrt_disc_;
    Vec2 kappa_;
    Rat gamma_;
    Rat iq_lower_;
    Rat iq_upper_;
};

/// Membership in the strip W = I_q x [0, infinity); the first coordinate
/// is constrained to the open interval, the second to be nonnegative.
bool in_W(const GeometryConstants& c, const Vec2& v);

/// The expanding map tau(v) = ((q-1+v1)/v1, v2/v1). Requires v in W.
Vec2 tau(const GeometryConstants& c, const Vec2& v);

/// The contracting map sigma(v) = ((1-q)/(1-v1), v2(1-q)/(1-v1)), the
/// two-sided inverse of tau on W. Requires v in W.
Vec2 sigma(const GeometryConstants& c, const Vec2& v);

/// n-fold application of tau or sigma starting at v. Requires v in W;
/// the orbit stays in W.
Vec2 iterate(const GeometryConstants& c, OrbitMap f, Vec2 v, unsigned n);

/// Slope of the segment from v to u. Throws InputError when the segment
/// is vertical.
Rat slope(const Vec2& v, const Vec2& u);

/// Whether w lies on the half-open segment {lambda*u + (1-lambda)*tau(u) :
/// lambda in (0,1]}: u itself is included, tau(u) is excluded. Requires
/// u in W.
bool segment_contains(const GeometryConstants& c, const Vec2& u, const Vec2& w);

/// Whether w lies in the closed half-plane bounded by the line through
/// u and tau(u) on the side above it. Requires u in W.
bool halfspace_contains(const GeometryConstants& c, const Vec2& u, const Vec2& w);

/// Whether v lies in the polyhedral approximation of the feasible area:
/// the intersection of W with the half-planes anchored at the forward
/// (tau) and backward (sigma) orbit points of kappa, up to the given
/// iteration depth per direction.
bool area_contains(const GeometryConstants& c, const Vec2& v, unsigned depth = 64);

/// For v in W with v.x1 <= kappa.x1 and v outside the depth-64 area,
/// returns the unique backward orbit anchor u with u.x1 = sigma^k(kappa).x1
/// whose segment sweep covers v: segment_contains(c, u, result) holds for
/// the returned point. Throws InputError on precondition violation and
/// InvariantError if the anchor search exceeds its iteration cap.
Vec2 find_segment_origin(const GeometryConstants& c, const Vec2& v);

/// The horizontal distance sigma^k(kappa).x1 - iq_lower, the gap the
/// backward orbit still has to close after k steps. Strictly decreasing
/// in k with limit zero.
Rat sigma_limit_gap(const GeometryConstants& c, unsigned k);

} // namespace pctlab
