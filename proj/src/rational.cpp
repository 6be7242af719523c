#include "normlog/rational.hpp"

#include "normlog/error.hpp"

#include <cctype>
#include <limits>

namespace normlog {
namespace {

using Wide = __int128;

Wide gcd_wide(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t narrow(Wide v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw Error(ErrorCode::ArithmeticOverflow, "rational arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
}

Rational make(Wide num, Wide den) {
    if (den == 0) throw Error(ErrorCode::ArithmeticOverflow, "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide g = gcd_wide(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw Error(ErrorCode::ArithmeticOverflow, "zero denominator");
    if (den_ < 0) {
        num_ = narrow(-static_cast<Wide>(num_));
        den_ = narrow(-static_cast<Wide>(den_));
    }
    auto g = static_cast<std::int64_t>(gcd_wide(num_, den_));
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

bool Rational::parse(std::string_view text, Rational& out) {
    if (text.empty()) return false;
    bool negative = false;
    std::size_t i = 0;
    if (text[0] == '-') {
        negative = true;
        i = 1;
    }
    Wide num = 0;
    Wide den = 1;
    bool digits = false;
    bool fraction = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.' && !fraction) {
            fraction = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        digits = true;
        num = num * 10 + (c - '0');
        if (fraction) den *= 10;
        if (num > std::numeric_limits<std::int64_t>::max() || den > std::numeric_limits<std::int64_t>::max()) {
            return false;
        }
    }
    if (!digits || (fraction && text.back() == '.')) return false;
    out = make(negative ? -num : num, den);
    return true;
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    // Terminating decimal iff the denominator has no prime factors besides 2 and 5.
    std::int64_t d = den_;
    int twos = 0;
    int fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
    int places = twos > fives ? twos : fives;
    Wide scaled = static_cast<Wide>(num_);
    Wide scale_den = den_;
    Wide pow10 = 1;
    for (int k = 0; k < places; ++k) pow10 *= 10;
    scaled = scaled * (pow10 / scale_den);
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    Wide int_part = scaled / pow10;
    Wide frac_part = scaled % pow10;
    std::string frac = std::to_string(static_cast<long long>(frac_part));
    while (static_cast<int>(frac.size()) < places) frac.insert(frac.begin(), '0');
    std::string out = negative ? "-" : "";
    out += std::to_string(static_cast<long long>(int_part));
    out += '.';
    out += frac;
    return out;
}

Rational operator+(const Rational& a, const Rational& b) {
    return make(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
                static_cast<Wide>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return make(static_cast<Wide>(a.num_) * b.den_ - static_cast<Wide>(b.num_) * a.den_,
                static_cast<Wide>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return make(static_cast<Wide>(a.num_) * b.num_, static_cast<Wide>(a.den_) * b.den_);
}

Rational Rational::operator-() const { return make(-static_cast<Wide>(num_), den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    Wide lhs = static_cast<Wide>(a.num_) * b.den_;
    Wide rhs = static_cast<Wide>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace normlog
