#include "pctlab/geometry.hpp"

#include "pctlab/errors.hpp"

namespace pctlab {

namespace {

void require_in_W(const GeometryConstants& c, const Vec2& v, const char* op) {
    if (!in_W(c, v)) {
        throw InputError(std::string(op) + ": (" + format_rational(v.x1) + ", " +
                         format_rational(v.x2) + ") outside W");
    }
}

} // namespace

GeometryConstants GeometryConstants::make(const Rat& q, const Rat& sqrt_disc,
                                          const Vec2& kappa, const Rat& gamma) {
    if (!(q > Rat(3, 4) && q < 1)) {
        throw InputError("q out of (3/4,1)");
    }
    if (!(sqrt_disc > 0 && sqrt_disc * sqrt_disc == 4 * q - 3)) {
        throw InputError("sqrt_disc is not the positive root of 4q-3");
    }
    GeometryConstants c;
    c.q_ = q;
    c.sqrt_disc_ = sqrt_disc;
    c.kappa_ = kappa;
    c.gamma_ = gamma;
    c.iq_lower_ = (1 - sqrt_disc) / 2;
    c.iq_upper_ = (1 + sqrt_disc) / 2;
    if (!(kappa.x1 > c.iq_lower_ && kappa.x1 < c.iq_upper_)) {
        throw InputError("kappa.x1 out of I_q");
    }
    if (!(kappa.x2 > 0)) {
        throw InputError("kappa.x2 must be positive");
    }
    if (!(kappa.x1 + kappa.x2 < q - Rat(1, 2))) {
        throw InputError("kappa.x1 + kappa.x2 must stay below q - 1/2");
    }
    const Rat gamma_lower = (1 - q) * kappa.x2;
    const Rat gamma_upper = Rat(3, 4) - Rat(5, 4) * q + q * q / 2;
    if (!(gamma > gamma_lower && gamma < gamma_upper)) {
        throw InputError("gamma out of ((1-q)*kappa.x2, 3/4 - (5/4)q + q^2/2)");
    }
    return c;
}

const GeometryConstants& GeometryConstants::defaults() {
    static const GeometryConstants c = make(Rat(13, 16), Rat(1, 2),
                                            Vec2{Rat(17, 64), Rat(1, 32)}, Rat(3, 50));
    return c;
}

bool in_W(const GeometryConstants& c, const Vec2& v) {
    return v.x1 > c.iq_lower() && v.x1 < c.iq_upper() && v.x2 >= 0;
}

Vec2 tau(const GeometryConstants& c, const Vec2& v) {
    require_in_W(c, v, "tau");
    return Vec2{(c.q() - 1 + v.x1) / v.x1, v.x2 / v.x1};
}

Vec2 sigma(const GeometryConstants& c, const Vec2& v) {
    require_in_W(c, v, "sigma");
    const Rat d = 1 - v.x1;
    return Vec2{(1 - c.q()) / d, v.x2 * (1 - c.q()) / d};
}

Vec2 iterate(const GeometryConstants& c, OrbitMap f, Vec2 v, unsigned n) {
    require_in_W(c, v, "iterate");
    for (unsigned i = 0; i < n; ++i) {
        v = f == OrbitMap::Tau ? tau(c, v) : sigma(c, v);
    }
    return v;
}

Rat slope(const Vec2& v, const Vec2& u) {
    if (u.x1 == v.x1) {
        throw InputError("slope: vertical segment");
    }
    return (u.x2 - v.x2) / (u.x1 - v.x1);
}

bool segment_contains(const GeometryConstants& c, const Vec2& u, const Vec2& w) {
    require_in_W(c, u, "segment_contains");
    const Vec2 t = tau(c, u);
    const Rat lambda = (t.x1 - w.x1) / (t.x1 - u.x1);
    if (!(lambda > 0 && lambda <= 1)) {
        return false;
    }
    return w.x2 == lambda * u.x2 + (1 - lambda) * t.x2;
}

bool halfspace_contains(const GeometryConstants& c, const Vec2& u, const Vec2& w) {
    require_in_W(c, u, "halfspace_contains");
    const Vec2 t = tau(c, u);
    const Rat dot = (t.x2 - u.x2) * (w.x1 - u.x1) + (u.x1 - t.x1) * (w.x2 - u.x2);
    return dot <= 0;
}

bool area_contains(const GeometryConstants& c, const Vec2& v, unsigned depth) {
    if (!in_W(c, v)) {
        return false;
    }
    Vec2 p = c.kappa();
    for (unsigned k = 0; k <= depth; ++k) {
        if (!halfspace_contains(c, p, v)) {
            return false;
        }
        p = tau(c, p);
    }
    p = c.kappa();
    for (unsigned k = 1; k <= depth; ++k) {
        p = sigma(c, p);
        if (!halfspace_contains(c, p, v)) {
            return false;
        }
    }
    return true;
}

Vec2 find_segment_origin(const GeometryConstants& c, const Vec2& v) {
    constexpr unsigned kSearchCap = 4096;
    constexpr unsigned kAreaDepth = 64;
    require_in_W(c, v, "find_segment_origin");
    if (v.x1 > c.kappa().x1) {
        throw InputError("find_segment_origin: v.x1 exceeds kappa.x1");
    }
    if (area_contains(c, v, kAreaDepth)) {
        throw InputError("find_segment_origin: v lies inside the area");
    }
    Vec2 p = c.kappa();
    unsigned k = 0;
    while (p.x1 > v.x1) {
        if (++k > kSearchCap) {
            throw InvariantError("find_segment_origin: anchor search cap exceeded");
        }
        p = sigma(c, p);
    }
    // The anchor keeps the backward-orbit abscissa; its height is the one
    // making v collinear with the anchor and its tau image.
    const Rat u1 = p.x1;
    const Rat rise = c.q() - 1 + u1 * (1 - u1);
    const Rat den = v.x1 * (1 - u1) + c.q() - 1;
    return Vec2{u1, v.x2 * rise / den};
}

Rat sigma_limit_gap(const GeometryConstants& c, unsigned k) {
    return iterate(c, OrbitMap::Sigma, c.kappa(), k).x1 - c.iq_lower();
}

} // namespace pctlab
