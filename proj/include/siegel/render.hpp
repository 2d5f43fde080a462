#ifndef SIEGEL_RENDER_HPP
#define SIEGEL_RENDER_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "siegel/classify.hpp"

namespace siegel {

enum class PlaneKind { ParamC, ParamA, Dynamical };
enum class ImageFormat { Ppm, Png };

struct Palette {
    std::array<std::uint8_t, 3> capture{0, 255, 255};
    std::array<std::uint8_t, 3> cycle{255, 224, 0};
    std::array<std::uint8_t, 3> unresolved{24, 24, 32};
    std::array<std::uint8_t, 3> interior{70, 130, 220};
    std::array<std::uint8_t, 3> overlay{255, 255, 255};
    std::array<std::uint8_t, 3> escape_near{10, 14, 48};
    std::array<std::uint8_t, 3> escape_far{228, 234, 250};
};

struct RenderJob {
    explicit RenderJob(const RotationNumber& rotation) : rot(rotation) {}

    PlaneKind plane = PlaneKind::ParamC;
    RotationNumber rot;
    Slice dyn_slice = Slice::ParamC; // Dynamical: which family the parameter is in
    Complex dyn_parameter{3.0, 0.0};
    Complex center{0.0, 0.0};
    double width = 8.0;          // window width in plane units; height from aspect
    int res_x = 512;
    int res_y = 512;
    int supersample = 1;         // samples per axis: 1 | 2 | 4
    int threads = 0;             // 0 = logical cores
    bool overlay_boundary = true;
    ClassifyBudgets budgets{600, 1e4, 1e-9, 0.99, 5e-3, {96, 1024}};
    Palette palette;
};

struct ImageBuffer {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb; // row-major, top-to-bottom, 3 bytes per pixel
    std::map<std::string, std::uint64_t> histogram; // per-sample class counts

    bool operator==(const ImageBuffer& other) const {
        return width == other.width && height == other.height && rgb == other.rgb;
    }
};

/// Tiled classification render of the c-plane or a-plane.
ImageBuffer render_parameter_plane(const RenderJob& job);

/// Dynamical plane of one map: orbit classes, Siegel interior shaded by
/// |phi| level sets, boundary polyline overlay.
ImageBuffer render_dynamical_plane(const RenderJob& job);

/// PPM is binary P6, maxval 255, row-major top-to-bottom (bit-exact);
/// PNG is 8-bit truecolor. I/O failures carry the path in the message.
void write_image(const ImageBuffer& buf, const std::string& path, ImageFormat fmt);

/// Reads back a binary P6 file written by write_image.
ImageBuffer read_ppm(const std::string& path);

/// Sidecar metadata: job parameters, class histogram, wall time.
std::string render_sidecar(const RenderJob& job, const ImageBuffer& buf,
                           double seconds);

} // namespace siegel

#endif
