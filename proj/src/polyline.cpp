#include "siegel/polyline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace siegel {

namespace {

double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

std::vector<Complex> convex_hull(std::span<const Complex> pts) {
    std::vector<Complex> p(pts.begin(), pts.end());
    std::sort(p.begin(), p.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.size() < 3) return p;
    std::vector<Complex> hull(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
        hull[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
        hull[k++] = p[i];
    }
    hull.resize(k - 1);
    return hull;
}

double segment_distance(Complex p, Complex a, Complex b) {
    Complex ab = b - a;
    double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
    double d1 = cross(c, d, a);
    double d2 = cross(c, d, b);
    double d3 = cross(a, b, c);
    double d4 = cross(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    return false;
}

} // namespace

double polyline_diameter(std::span<const Complex> poly) {
    if (poly.size() < 2) return 0.0;
    std::vector<Complex> hull = convex_hull(poly);
    if (hull.size() < 2) return 0.0;
    if (hull.size() == 2) return std::abs(hull[0] - hull[1]);
    // rotating calipers
    double best = 0.0;
    std::size_t n = hull.size();
    std::size_t j = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Complex edge = hull[(i + 1) % n] - hull[i];
        while (true) {
            std::size_t jn = (j + 1) % n;
            double adv = cross(Complex{0, 0}, edge, hull[jn] - hull[j]);
            if (adv > 0)
                j = jn;
            else
                break;
        }
        best = std::max(best, std::abs(hull[i] - hull[j]));
        best = std::max(best, std::abs(hull[(i + 1) % n] - hull[j]));
    }
    return best;
}

double distance_to_polyline(Complex p, std::span<const Complex> poly) {
    if (poly.empty()) throw std::invalid_argument("empty polyline");
    if (poly.size() == 1) return std::abs(p - poly[0]);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        Complex a = poly[i];
        Complex b = poly[(i + 1) % poly.size()];
        best = std::min(best, segment_distance(p, a, b));
    }
    return best;
}

int winding_number(std::span<const Complex> poly, Complex p) {
    int wn = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        Complex a = poly[i];
        Complex b = poly[(i + 1) % poly.size()];
        if (a.imag() <= p.imag()) {
            if (b.imag() > p.imag() && cross(a, b, p) > 0) ++wn;
        } else {
            if (b.imag() <= p.imag() && cross(a, b, p) < 0) --wn;
        }
    }
    return wn;
}

bool polyline_is_simple(std::span<const Complex> poly) {
    const std::size_t n = poly.size();
    if (n < 4) return true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue; // wrap-adjacent
            if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j],
                                   poly[(j + 1) % n]))
                return false;
        }
    }
    return true;
}

double bounded_turning_constant(std::span<const Complex> poly) {
    std::vector<Complex> pts(poly.begin(), poly.end());
    if (pts.size() < 16)
        throw std::invalid_argument("bounded turning needs at least 16 vertices");
    // keep the O(n^2) arc-diameter table affordable
    constexpr std::size_t kMaxVertices = 768;
    if (pts.size() > kMaxVertices) {
        std::vector<Complex> dec;
        dec.reserve(kMaxVertices);
        double stride = static_cast<double>(pts.size()) / kMaxVertices;
        for (std::size_t k = 0; k < kMaxVertices; ++k)
            dec.push_back(pts[static_cast<std::size_t>(k * stride)]);
        pts.swap(dec);
    }
    const std::size_t n = pts.size();
    const double scale = polyline_diameter(pts);
    if (scale == 0.0) throw std::invalid_argument("degenerate polyline");

    // diam[i*n+j] = diameter of the forward arc i -> j (endpoints included)
    std::vector<double> diam(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double d = 0.0;
        for (std::size_t s = 1; s < n; ++s) {
            std::size_t j = (i + s) % n;
            for (std::size_t q = 0; q <= s; ++q) {
                std::size_t m = (i + q) % n;
                d = std::max(d, std::abs(pts[j] - pts[m]));
            }
            diam[i * n + j] = d;
        }
    }
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t s = 1; s < n; ++s) {
            std::size_t j = (i + s) % n;
            double chord = std::abs(pts[j] - pts[i]);
            if (chord < 1e-12 * scale)
                throw std::invalid_argument("repeated vertices in polyline");
            double smaller = std::min(diam[i * n + j], diam[j * n + i]);
            best = std::max(best, smaller / chord);
        }
    }
    return best;
}

} // namespace siegel
