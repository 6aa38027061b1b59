#ifndef FUZZY_KLASSEN_MEMBERSHIP_HPP_
#define FUZZY_KLASSEN_MEMBERSHIP_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace fuzzy_klassen
{

enum class MfKind { ramp_down, ramp_up, triangle, trapezoid };

inline std::string_view to_string(MfKind kind)
{
    switch (kind) {
    case MfKind::ramp_down: return "ramp-down";
    case MfKind::ramp_up: return "ramp-up";
    case MfKind::triangle: return "triangle";
    case MfKind::trapezoid: return "trapezoid";
    }
    return "unknown";
}

inline constexpr std::size_t breakpoint_count(MfKind kind)
{
    switch (kind) {
    case MfKind::ramp_down:
    case MfKind::ramp_up: return 2;
    case MfKind::triangle: return 3;
    case MfKind::trapezoid: return 4;
    }
    return 0;
}

/**
 * Piecewise-linear membership function.
 *
 * ramp-down(a,b) is 1 up to a and 0 from b on; ramp-up(a,b) is its mirror.
 * triangle(a,b,c) peaks at b and is 0 outside (a,c). trapezoid(a,b,c,d)
 * has its plateau on [b,c]. Breakpoints are checked on construction, so an
 * instance always evaluates to a degree in [0,1].
 */
class MembershipFunction
{
public:
    MembershipFunction(MfKind kind, std::span<const double> breakpoints) : kind_(kind)
    {
        const std::size_t n = breakpoint_count(kind);
        if (breakpoints.size() != n)
            throw Error(Errc::invalid_input, std::string(to_string(kind)) + " needs " + std::to_string(n) +
                                                 " breakpoints, got " + std::to_string(breakpoints.size()));
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(breakpoints[i]))
                throw Error(Errc::invalid_input, "non-finite breakpoint");
            bp_[i] = breakpoints[i];
        }
        for (std::size_t i = 1; i < n; ++i) {
            // the trapezoid plateau may collapse to a point (b == c)
            const bool plateau = kind == MfKind::trapezoid && i == 2;
            if (plateau ? bp_[i] < bp_[i - 1] : bp_[i] <= bp_[i - 1])
                throw Error(Errc::invalid_input, std::string(to_string(kind)) + " breakpoints must be increasing");
        }
    }

    static MembershipFunction ramp_down(double a, double b) { return {MfKind::ramp_down, std::array{a, b}}; }
    static MembershipFunction ramp_up(double a, double b) { return {MfKind::ramp_up, std::array{a, b}}; }
    static MembershipFunction triangle(double a, double b, double c)
    {
        return {MfKind::triangle, std::array{a, b, c}};
    }
    static MembershipFunction trapezoid(double a, double b, double c, double d)
    {
        return {MfKind::trapezoid, std::array{a, b, c, d}};
    }

    MfKind kind() const noexcept { return kind_; }
    std::span<const double> breakpoints() const noexcept { return {bp_.data(), breakpoint_count(kind_)}; }
    double first_breakpoint() const noexcept { return bp_[0]; }
    double last_breakpoint() const noexcept { return bp_[breakpoint_count(kind_) - 1]; }

    double operator()(double x) const noexcept
    {
        switch (kind_) {
        case MfKind::ramp_down:
            if (x <= bp_[0]) return 1.0;
            if (x >= bp_[1]) return 0.0;
            return (bp_[1] - x) / (bp_[1] - bp_[0]);
        case MfKind::ramp_up:
            if (x <= bp_[0]) return 0.0;
            if (x >= bp_[1]) return 1.0;
            return (x - bp_[0]) / (bp_[1] - bp_[0]);
        case MfKind::triangle:
            if (x <= bp_[0] || x >= bp_[2]) return 0.0;
            if (x == bp_[1]) return 1.0;
            if (x < bp_[1]) return (x - bp_[0]) / (bp_[1] - bp_[0]);
            return (bp_[2] - x) / (bp_[2] - bp_[1]);
        case MfKind::trapezoid:
            if (x <= bp_[0] || x >= bp_[3]) return 0.0;
            if (x >= bp_[1] && x <= bp_[2]) return 1.0;
            if (x < bp_[1]) return (x - bp_[0]) / (bp_[1] - bp_[0]);
            return (bp_[3] - x) / (bp_[3] - bp_[2]);
        }
        return 0.0;
    }

    bool operator==(const MembershipFunction& other) const noexcept
    {
        return kind_ == other.kind_ && bp_ == other.bp_;
    }

private:
    MfKind kind_;
    std::array<double, 4> bp_{};
};

inline double eval_mf(const MembershipFunction& mf, double x) noexcept { return mf(x); }

} // namespace fuzzy_klassen

#endif
