#pragma once

#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace mnc {

// A value in [0, +inf].  Addition absorbs infinity; scaling by zero yields
// zero even for the infinite value (the convention 0 * inf = 0, which is the
// right one for measures: scaling a set by zero collapses it to a point).
class ExtendedNonNegReal {
public:
    ExtendedNonNegReal() : v_(0.0) {}

    static ExtendedNonNegReal finite(double v) {
        if (!(v >= 0.0) || v == std::numeric_limits<double>::infinity())
            throw std::invalid_argument("ExtendedNonNegReal: finite value must be >= 0 and finite");
        return ExtendedNonNegReal(v);
    }
    static ExtendedNonNegReal infinity() {
        return ExtendedNonNegReal(std::numeric_limits<double>::infinity());
    }

    bool is_infinite() const { return v_ == std::numeric_limits<double>::infinity(); }
    // Finite numeric value; throws on the infinite element.
    double value() const {
        if (is_infinite()) throw std::logic_error("ExtendedNonNegReal: value() on infinity");
        return v_;
    }
    // Raw double, +inf for the infinite element.  Handy for comparisons.
    double raw() const { return v_; }

    ExtendedNonNegReal operator+(const ExtendedNonNegReal& o) const {
        if (is_infinite() || o.is_infinite()) return infinity();
        return finite(v_ + o.v_);
    }
    ExtendedNonNegReal scaled(double lambda) const {
        double a = lambda < 0 ? -lambda : lambda;
        if (a == 0.0) return finite(0.0);
        if (is_infinite()) return infinity();
        return finite(v_ * a);
    }

    friend bool operator==(const ExtendedNonNegReal& a, const ExtendedNonNegReal& b) {
        return a.v_ == b.v_;
    }
    friend bool operator<=(const ExtendedNonNegReal& a, const ExtendedNonNegReal& b) {
        return a.v_ <= b.v_;
    }
    friend bool operator<(const ExtendedNonNegReal& a, const ExtendedNonNegReal& b) {
        return a.v_ < b.v_;
    }

    // "inf" or a plain decimal rendering; used by the CSV emitter.
    std::string str() const;

private:
    explicit ExtendedNonNegReal(double v) : v_(v) {}
    double v_;
};

inline std::string ExtendedNonNegReal::str() const {
    if (is_infinite()) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v_);
    return buf;
}

}
