#include "mvent/rational.hpp"

#include <charconv>
#include <limits>

#include "mvent/error.hpp"

namespace mvent {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(__int128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational Rational::make(__int128 num, __int128 den) {
    if (den == 0) throw Error(ErrorCode::kInvalidArgument, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (!fits(num) || !fits(den)) throw Error(ErrorCode::kInvalidArgument, "rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

Rational::Rational(std::int64_t num, std::int64_t den) { *this = make(num, den); }

bool Rational::parse(std::string_view text, Rational& out) {
    if (text.empty()) return false;
    bool neg = false;
    std::string_view body = text;
    if (body.front() == '-' || body.front() == '+') {
        neg = body.front() == '-';
        body.remove_prefix(1);
    }
    auto digits = [](std::string_view s, std::int64_t& v) {
        if (s.empty() || s.size() > 18) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        return res.ec == std::errc() && res.ptr == s.data() + s.size();
    };
    try {
        if (auto slash = body.find('/'); slash != std::string_view::npos) {
            std::int64_t a = 0, b = 0;
            if (!digits(body.substr(0, slash), a) || !digits(body.substr(slash + 1), b) || b == 0) return false;
            out = Rational(neg ? -a : a, b);
            return true;
        }
        if (auto dot = body.find('.'); dot != std::string_view::npos) {
            std::string_view ip = body.substr(0, dot), fp = body.substr(dot + 1);
            if (ip.empty() && fp.empty()) return false;
            if (ip.size() + fp.size() > 18) return false;
            std::int64_t a = 0, b = 0;
            if (!ip.empty() && !digits(ip, a)) return false;
            if (!fp.empty() && !digits(fp, b)) return false;
            std::int64_t scale = 1;
            for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
            Rational r = make(static_cast<__int128>(a) * scale + b, scale);
            out = neg ? -r : r;
            return true;
        }
        std::int64_t a = 0;
        if (!digits(body, a)) return false;
        out = Rational(neg ? -a : a);
        return true;
    } catch (const Error&) {
        return false;
    }
}

std::string Rational::to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t Rational::floor() const {
    std::int64_t q = num_ / den_;
    return (num_ % den_ != 0 && num_ < 0) ? q - 1 : q;
}

std::int64_t Rational::ceil() const {
    std::int64_t q = num_ / den_;
    return (num_ % den_ != 0 && num_ > 0) ? q + 1 : q;
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational::make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                          static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    return Rational::make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    return Rational::make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
}

}  // namespace mvent
