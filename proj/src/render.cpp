#include "siegel/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <png.h>

#include "siegel/polyline.hpp"
#include "siegel/thread_pool.hpp"

namespace siegel {

namespace {

using Rgb = std::array<std::uint8_t, 3>;

enum class SampleClass { Capture, Cycle, Escape, Unresolved };

const char* class_key(SampleClass c) {
    switch (c) {
        case SampleClass::Capture: return "capture";
        case SampleClass::Cycle: return "cycle";
        case SampleClass::Escape: return "escape";
        case SampleClass::Unresolved: return "unresolved";
    }
    return "unresolved";
}

Rgb lerp(const Rgb& a, const Rgb& b, double t) {
    t = std::clamp(t, 0.0, 1.0);
    Rgb out;
    for (int k = 0; k < 3; ++k)
        out[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(std::lround(
            a[static_cast<std::size_t>(k)] +
            t * (b[static_cast<std::size_t>(k)] - a[static_cast<std::size_t>(k)])));
    return out;
}

// Smoothed escape-time shade (log-log normalized iteration count).
Rgb escape_shade(const Palette& pal, int step, double modulus, double radius) {
    double nu = step;
    if (modulus > 1.0 && radius > 1.0) {
        double l = std::log(std::max(modulus, 1.000001)) / std::log(radius);
        nu = step + 1.0 - std::log(std::max(l, 1e-12)) / std::log(3.0);
    }
    double t = std::exp(-nu / 28.0);
    return lerp(pal.escape_near, pal.escape_far, t);
}

struct Sample {
    SampleClass cls;
    Rgb color;
};

SampleClass param_class(const ParamClass& pc) {
    if (pc.in_capture_set()) return SampleClass::Capture;
    auto is = [&](PointClass::Tag t) {
        return pc.free_orbit.tag == t || pc.other_orbit.tag == t;
    };
    if (is(PointClass::Tag::AttractedCycle)) return SampleClass::Cycle;
    if (is(PointClass::Tag::Escapes)) return SampleClass::Escape;
    return SampleClass::Unresolved;
}

const PointClass* escaping_orbit(const ParamClass& pc) {
    if (pc.free_orbit.tag == PointClass::Tag::Escapes) return &pc.free_orbit;
    if (pc.other_orbit.tag == PointClass::Tag::Escapes) return &pc.other_orbit;
    return nullptr;
}

// Escape-only quick pass: classifies the pixel without a linearization when
// both critical orbits leave the escape radius.
std::optional<Sample> escape_fast_path(const CubicSiegelMap& map,
                                       const RenderJob& job) {
    int first_step = 0;
    double first_mod = 0.0;
    for (Complex crit : map.critical_points()) {
        Complex z = crit;
        bool escaped = false;
        for (int n = 1; n <= job.budgets.n_max; ++n) {
            z = map.evaluate(z);
            if (!is_finite(z) || std::abs(z) > job.budgets.escape_radius) {
                escaped = true;
                if (first_step == 0 || n < first_step) {
                    first_step = n;
                    first_mod = is_finite(z) ? std::abs(z) : job.budgets.escape_radius;
                }
                break;
            }
        }
        if (!escaped) return std::nullopt;
    }
    return Sample{SampleClass::Escape,
                  escape_shade(job.palette, first_step, first_mod,
                               job.budgets.escape_radius)};
}

Sample classify_c_sample(Complex c, const RenderJob& job) {
    if (c == Complex{0.0, 0.0} || !is_finite(c))
        return {SampleClass::Unresolved, job.palette.unresolved};
    CubicSiegelMap map = CubicSiegelMap::c_plane(c, job.rot);
    if (auto fast = escape_fast_path(map, job)) return *fast;
    ParamClass pc = classify_parameter_c(c, job.rot, job.budgets);
    SampleClass cls = param_class(pc);
    switch (cls) {
        case SampleClass::Capture: return {cls, job.palette.capture};
        case SampleClass::Cycle: return {cls, job.palette.cycle};
        case SampleClass::Escape: {
            const PointClass* e = escaping_orbit(pc);
            return {cls, escape_shade(job.palette, e->step, e->escape_modulus,
                                      job.budgets.escape_radius)};
        }
        default: return {cls, job.palette.unresolved};
    }
}

Sample classify_a_sample(Complex a, const RenderJob& job) {
    auto [c0, c1] = a_to_c(a, job.rot);
    Complex primary = std::abs(c0) >= std::abs(c1) ? c0 : c1;
    Complex mirror = std::abs(c0) >= std::abs(c1) ? c1 : c0;
    Sample s = classify_c_sample(primary, job);
    if (s.cls == SampleClass::Unresolved && std::abs(mirror - primary) > 1e-12)
        s = classify_c_sample(mirror, job);
    return s;
}

void rasterize_polyline(ImageBuffer& buf, std::span<const Complex> poly,
                        Complex center, double scale, const Rgb& color) {
    auto plot = [&](Complex z) {
        double px = (z.real() - center.real()) / scale + buf.width / 2.0;
        double py = buf.height / 2.0 - (z.imag() - center.imag()) / scale;
        int ix = static_cast<int>(std::floor(px));
        int iy = static_cast<int>(std::floor(py));
        if (ix < 0 || iy < 0 || ix >= buf.width || iy >= buf.height) return;
        std::size_t off = 3 * (static_cast<std::size_t>(iy) * buf.width + ix);
        buf.rgb[off] = color[0];
        buf.rgb[off + 1] = color[1];
        buf.rgb[off + 2] = color[2];
    };
    for (std::size_t i = 0; i < poly.size(); ++i) {
        Complex a = poly[i];
        Complex b = poly[(i + 1) % poly.size()];
        double len_px = std::abs(b - a) / scale;
        int steps = std::max(1, static_cast<int>(std::ceil(2.0 * len_px)));
        for (int s = 0; s <= steps; ++s)
            plot(a + (b - a) * (static_cast<double>(s) / steps));
    }
}

template <typename SampleFn>
ImageBuffer render_grid(const RenderJob& job, const SampleFn& sample_at) {
    if (job.res_x < 1 || job.res_y < 1)
        throw std::invalid_argument("render resolution must be at least 1x1");
    if (job.width <= 0.0) throw std::invalid_argument("render window width must be > 0");
    if (job.supersample != 1 && job.supersample != 2 && job.supersample != 4)
        throw std::invalid_argument("supersampling must be 1, 2 or 4 per axis");

    ImageBuffer buf;
    buf.width = job.res_x;
    buf.height = job.res_y;
    buf.rgb.assign(3 * static_cast<std::size_t>(job.res_x) * job.res_y, 0);
    const double scale = job.width / job.res_x;
    const int ss = job.supersample;

    constexpr int kRowsPerTile = 4;
    const int n_tiles = (job.res_y + kRowsPerTile - 1) / kRowsPerTile;
    std::vector<std::map<std::string, std::uint64_t>> tile_hist(
        static_cast<std::size_t>(n_tiles));

    parallel_for(n_tiles, job.threads, [&](int tile) {
        auto& hist = tile_hist[static_cast<std::size_t>(tile)];
        const int y0 = tile * kRowsPerTile;
        const int y1 = std::min(job.res_y, y0 + kRowsPerTile);
        for (int y = y0; y < y1; ++y) {
            for (int x = 0; x < job.res_x; ++x) {
                int acc[3] = {0, 0, 0};
                for (int sy = 0; sy < ss; ++sy) {
                    for (int sx = 0; sx < ss; ++sx) {
                        double px = x + (sx + 0.5) / ss;
                        double py = y + (sy + 0.5) / ss;
                        Complex z{job.center.real() + (px - job.res_x / 2.0) * scale,
                                  job.center.imag() + (job.res_y / 2.0 - py) * scale};
                        Sample s = sample_at(z);
                        ++hist[class_key(s.cls)];
                        for (int k = 0; k < 3; ++k)
                            acc[k] += s.color[static_cast<std::size_t>(k)];
                    }
                }
                std::size_t off = 3 * (static_cast<std::size_t>(y) * job.res_x + x);
                for (int k = 0; k < 3; ++k)
                    buf.rgb[off + static_cast<std::size_t>(k)] =
                        static_cast<std::uint8_t>(acc[k] / (ss * ss));
            }
        }
    });
    for (const auto& h : tile_hist)
        for (const auto& [key, count] : h) buf.histogram[key] += count;
    for (const char* key : {"capture", "cycle", "escape", "unresolved"})
        buf.histogram.try_emplace(key, 0);
    return buf;
}

// Immutable shared linearizations keyed by map identity.
class LinearizationCache {
  public:
    std::shared_ptr<const LinearizationData> get(const CubicSiegelMap& map,
                                                 const LinearizationOptions& opts) {
        std::ostringstream key;
        key.precision(17);
        key << static_cast<int>(map.slice()) << '|' << map.parameter().real() << '|'
            << map.parameter().imag() << '|' << map.rotation().text() << '|'
            << opts.series_terms << '|' << opts.boundary_samples;
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = entries_.find(key.str());
        if (it != entries_.end()) return it->second;
        auto lin = std::make_shared<const LinearizationData>(
            LinearizationData::build(map, opts));
        entries_.emplace(key.str(), lin);
        return lin;
    }

  private:
    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<const LinearizationData>> entries_;
};

LinearizationCache& lin_cache() {
    static LinearizationCache cache;
    return cache;
}

} // namespace

ImageBuffer render_parameter_plane(const RenderJob& job) {
    if (job.plane == PlaneKind::Dynamical)
        throw std::invalid_argument("parameter render got a dynamical job");
    if (job.plane == PlaneKind::ParamC)
        return render_grid(job, [&](Complex c) { return classify_c_sample(c, job); });
    return render_grid(job, [&](Complex a) { return classify_a_sample(a, job); });
}

ImageBuffer render_dynamical_plane(const RenderJob& job) {
    if (job.plane != PlaneKind::Dynamical)
        throw std::invalid_argument("dynamical render got a parameter job");
    CubicSiegelMap map = job.dyn_slice == Slice::ParamC
                             ? CubicSiegelMap::c_plane(job.dyn_parameter, job.rot)
                             : CubicSiegelMap::a_plane(job.dyn_parameter, job.rot);
    auto lin = lin_cache().get(map, job.budgets.lin);

    ImageBuffer buf = render_grid(job, [&](Complex z) -> Sample {
        PointClass pc = classify_orbit(map, *lin, z, job.budgets.n_max, job.budgets);
        switch (pc.tag) {
            case PointClass::Tag::CaptureSiegel: {
                if (pc.step > 0) return {SampleClass::Capture, job.palette.capture};
                // Siegel interior: |phi| level-set banding
                double v = 0.0;
                try {
                    v = std::abs(lin->phi(z));
                } catch (const std::exception&) {
                    v = 0.0;
                }
                double band = 0.62 + 0.38 * std::cos(2.0 * std::numbers::pi * 6.0 * v);
                Rgb base = job.palette.interior;
                Rgb shaded;
                for (int k = 0; k < 3; ++k)
                    shaded[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(
                        std::lround(base[static_cast<std::size_t>(k)] * band));
                return {SampleClass::Capture, shaded};
            }
            case PointClass::Tag::AttractedCycle:
                return {SampleClass::Cycle, job.palette.cycle};
            case PointClass::Tag::Escapes:
                return {SampleClass::Escape,
                        escape_shade(job.palette, pc.step, pc.escape_modulus,
                                     job.budgets.escape_radius)};
            default:
                return {SampleClass::Unresolved, job.palette.unresolved};
        }
    });
    if (job.overlay_boundary)
        rasterize_polyline(buf, lin->boundary(), job.center, job.width / job.res_x,
                           job.palette.overlay);
    return buf;
}

void write_image(const ImageBuffer& buf, const std::string& path, ImageFormat fmt) {
    if (buf.width < 1 || buf.height < 1 ||
        buf.rgb.size() != 3u * static_cast<std::size_t>(buf.width) * buf.height)
        throw std::invalid_argument("write_image: inconsistent buffer");
    if (fmt == ImageFormat::Ppm) {
        std::FILE* f = std::fopen(path.c_str(), "wb");
        if (!f) throw std::runtime_error("cannot open for writing: " + path);
        std::fprintf(f, "P6\n%d %d\n255\n", buf.width, buf.height);
        std::size_t n = std::fwrite(buf.rgb.data(), 1, buf.rgb.size(), f);
        bool ok = (n == buf.rgb.size()) && std::fclose(f) == 0;
        if (!ok) throw std::runtime_error("short write: " + path);
        return;
    }
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                              nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info || setjmp(png_jmpbuf(png))) {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        std::fclose(f);
        throw std::runtime_error("png encode failed: " + path);
    }
    png_init_io(png, f);
    png_set_IHDR(png, info, static_cast<png_uint_32>(buf.width),
                 static_cast<png_uint_32>(buf.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < buf.height; ++y)
        png_write_row(png, const_cast<png_bytep>(
                               buf.rgb.data() + 3 * static_cast<std::size_t>(y) *
                                                    buf.width));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    if (std::fclose(f) != 0) throw std::runtime_error("close failed: " + path);
}

ImageBuffer read_ppm(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("cannot open: " + path);
    ImageBuffer buf;
    int maxval = 0;
    if (std::fscanf(f, "P6 %d %d %d", &buf.width, &buf.height, &maxval) != 3 ||
        maxval != 255 || std::fgetc(f) == EOF) {
        std::fclose(f);
        throw std::runtime_error("not a P6/255 ppm: " + path);
    }
    buf.rgb.resize(3u * static_cast<std::size_t>(buf.width) * buf.height);
    std::size_t n = std::fread(buf.rgb.data(), 1, buf.rgb.size(), f);
    std::fclose(f);
    if (n != buf.rgb.size()) throw std::runtime_error("truncated ppm: " + path);
    return buf;
}

std::string render_sidecar(const RenderJob& job, const ImageBuffer& buf,
                           double seconds) {
    nlohmann::json j;
    const char* plane = job.plane == PlaneKind::ParamC   ? "param-c"
                        : job.plane == PlaneKind::ParamA ? "param-a"
                                                         : "dynamical";
    j["plane"] = plane;
    j["theta"] = job.rot.text();
    if (job.plane == PlaneKind::Dynamical) {
        j["parameter"] = {job.dyn_parameter.real(), job.dyn_parameter.imag()};
        j["slice"] = job.dyn_slice == Slice::ParamC ? "c" : "a";
    }
    j["center"] = {job.center.real(), job.center.imag()};
    j["width"] = job.width;
    j["resolution"] = {job.res_x, job.res_y};
    j["supersample"] = job.supersample;
    j["threads"] = job.threads == 0 ? hardware_threads() : job.threads;
    j["budgets"] = {{"n_max", job.budgets.n_max},
                    {"series_terms", job.budgets.lin.series_terms},
                    {"boundary_samples", job.budgets.lin.boundary_samples},
                    {"escape_radius", job.budgets.escape_radius}};
    j["histogram"] = buf.histogram;
    j["seconds"] = seconds;
    return j.dump(2);
}

} // namespace siegel
