#ifndef SIEGEL_COMPLEX_UTIL_HPP
#define SIEGEL_COMPLEX_UTIL_HPP

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace siegel {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Formats as "RE+IMi" / "RE-IMi", the grammar the CLI accepts back.
inline std::string format_complex(Complex z, int precision = 12) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.*g%+.*gi", precision, z.real(),
                  precision, z.imag());
    return buf;
}

/// Parses "RE+IMi", "RE-IMi", "RE" or "IMi". Throws std::invalid_argument.
inline Complex parse_complex(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    const bool has_i = s.back() == 'i' || s.back() == 'I';
    if (!has_i) {
        char* end = nullptr;
        double re = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0')
            throw std::invalid_argument("bad complex literal: " + s);
        return {re, 0.0};
    }
    s.pop_back();
    if (s.empty() || s == "+" || s == "-")
        return {0.0, s == "-" ? -1.0 : 1.0};
    // split at the sign that starts the imaginary part (not an exponent sign)
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    char* end = nullptr;
    if (split == std::string::npos) {
        double im = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0')
            throw std::invalid_argument("bad complex literal: " + s + "i");
        return {0.0, im};
    }
    std::string re_part = s.substr(0, split);
    std::string im_part = s.substr(split);
    double re = std::strtod(re_part.c_str(), &end);
    if (end == re_part.c_str() || *end != '\0')
        throw std::invalid_argument("bad complex literal: " + s + "i");
    if (im_part == "+" || im_part == "-") im_part += "1";
    double im = std::strtod(im_part.c_str(), &end);
    if (end == im_part.c_str() || *end != '\0')
        throw std::invalid_argument("bad complex literal: " + s + "i");
    return {re, im};
}

} // namespace siegel

#endif
