#include "siegel/rotation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace siegel {

namespace {

constexpr int kUnrolledQuotients = 64;

std::vector<int> parse_digit_list(std::string_view body, bool& saw_period,
                                  std::vector<int>& period) {
    std::vector<int> pre;
    std::string token;
    bool in_period = false;
    auto flush = [&](bool closing) {
        if (token.empty()) {
            if (closing) return;
            throw std::invalid_argument("empty quotient in rotation literal");
        }
        for (char ch : token)
            if (ch < '0' || ch > '9')
                throw std::invalid_argument(
                    "rotation quotients must be positive integers, got '" + token + "'");
        long v = std::stol(token);
        if (v < 1)
            throw std::invalid_argument("rotation quotients must be >= 1, got " + token);
        (in_period ? period : pre).push_back(static_cast<int>(v));
        token.clear();
    };
    for (char ch : body) {
        switch (ch) {
            case ',':
                flush(false);
                break;
            case '(':
                if (in_period || saw_period)
                    throw std::invalid_argument("nested periodic block");
                if (!token.empty())
                    throw std::invalid_argument("missing ',' before periodic block");
                in_period = true;
                break;
            case ')':
                if (!in_period)
                    throw std::invalid_argument("unmatched ')' in rotation literal");
                flush(false);
                in_period = false;
                saw_period = true;
                break;
            case ' ':
                break;
            default:
                token += ch;
        }
    }
    if (in_period) throw std::invalid_argument("unterminated periodic block");
    flush(true);
    return pre;
}

} // namespace

RotationNumber::RotationNumber(std::vector<int> pre, std::vector<int> per)
    : preperiod_(std::move(pre)), period_(std::move(per)) {
    if (period_.empty())
        throw std::invalid_argument("rotation number needs an explicit periodic block");
    // Unroll 64 quotients and evaluate the continued fraction backwards.
    std::vector<int> digits = preperiod_;
    while (static_cast<int>(digits.size()) < kUnrolledQuotients)
        for (int d : period_) digits.push_back(d);
    digits.resize(kUnrolledQuotients);
    double v = 0.0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) v = 1.0 / (*it + v);
    value_ = v;
    multiplier_ = std::polar(1.0, 2.0 * std::numbers::pi * value_);
}

RotationNumber RotationNumber::parse(std::string_view spec) {
    if (spec == "golden") return RotationNumber({}, {1});
    if (spec.size() < 5 || spec.substr(0, 3) != "[0;" || spec.back() != ']')
        throw std::invalid_argument(
            "rotation spec must be \"golden\" or \"[0;d1,...,(p1,...)]\", got '" +
            std::string(spec) + "'");
    std::string_view body = spec.substr(3, spec.size() - 4);
    bool saw_period = false;
    std::vector<int> period;
    std::vector<int> pre = parse_digit_list(body, saw_period, period);
    if (!saw_period)
        throw std::invalid_argument(
            "rotation literal needs a parenthesized periodic block");
    return RotationNumber(std::move(pre), std::move(period));
}

std::string RotationNumber::text() const {
    std::ostringstream out;
    out << "[0;";
    for (std::size_t i = 0; i < preperiod_.size(); ++i) {
        if (i) out << ',';
        out << preperiod_[i];
    }
    if (!preperiod_.empty()) out << ',';
    out << '(';
    for (std::size_t i = 0; i < period_.size(); ++i) {
        if (i) out << ',';
        out << period_[i];
    }
    out << ")]";
    return out.str();
}

double RotationNumber::denominator_gap(int n) const {
    return std::abs(std::pow(multiplier_, n) - multiplier_);
}

} // namespace siegel
